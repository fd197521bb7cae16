#include "flashpolar/polar.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "flashpolar/llr_engine.hpp"
#include "flashpolar/math_util.hpp"
#include "flashpolar/rng.hpp"

namespace flashpolar {

namespace {

bool power_of_two(int n) { return n >= 2 && std::has_single_bit(static_cast<unsigned>(n)); }

int log2_int(int n) { return std::countr_zero(static_cast<unsigned>(n)); }

// Per-level LLR buffers for the SC recursion; level d holds N >> d values.
struct ScWork {
  std::vector<std::vector<double>> level;
  std::vector<std::uint8_t> x;  // partial-sum layer, ends up as the re-encoded codeword
  std::vector<std::uint8_t> u;

  explicit ScWork(int n) : x(n), u(n) {
    level.resize(log2_int(n) + 1);
    for (int d = 1; d < static_cast<int>(level.size()); ++d) level[d].resize(n >> d);
  }
};

// leaf(source_index, llr) -> decided bit. Pairs position i with i + len/2, the
// schedule matching the natural-order generator.
template <class Leaf>
void sc_recurse(const double* llr, int len, int depth, int base, std::uint8_t* x, ScWork& w,
                PeCounters* pe, Leaf&& leaf) {
  if (len == 1) {
    x[0] = leaf(base, llr[0]);
    return;
  }
  const int half = len / 2;
  double* child = w.level[depth + 1].data();
  for (int i = 0; i < half; ++i) child[i] = f_node(llr[i], llr[i + half]);
  if (pe) pe->type2 += static_cast<std::uint64_t>(half);
  sc_recurse(child, half, depth + 1, base, x, w, pe, leaf);
  for (int i = 0; i < half; ++i) child[i] = g_node(llr[i], llr[i + half], x[i]);
  if (pe) pe->type1 += static_cast<std::uint64_t>(half);
  sc_recurse(child, half, depth + 1, base + half, x + half, w, pe, leaf);
  for (int i = 0; i < half; ++i) x[i] ^= x[i + half];
}

}  // namespace

std::vector<int> PolarCode::frozen_positions() const {
  std::vector<int> out;
  for (int i = 0; i < block_length; ++i)
    if (frozen[i]) out.push_back(i);
  return out;
}

std::vector<int> PolarCode::info_positions() const {
  std::vector<int> out;
  for (int i = 0; i < block_length; ++i)
    if (!frozen[i]) out.push_back(i);
  return out;
}

void PolarCode::validate() const {
  if (!power_of_two(block_length)) throw std::invalid_argument("polar code: N must be a power of two >= 2");
  if (info_length < 0 || info_length > block_length)
    throw std::invalid_argument("polar code: K out of range");
  if (static_cast<int>(frozen.size()) != block_length)
    throw std::invalid_argument("polar code: frozen mask size mismatch");
  int frozen_count = 0;
  for (auto f : frozen) frozen_count += f ? 1 : 0;
  if (frozen_count != block_length - info_length)
    throw std::invalid_argument("polar code: frozen count does not match N - K");
}

PolarCode code_from_frozen(int block_length, const std::vector<int>& frozen_positions) {
  PolarCode code;
  code.block_length = block_length;
  code.frozen.assign(block_length, 0);
  for (int p : frozen_positions) {
    if (p < 0 || p >= block_length) throw std::invalid_argument("polar code: frozen index out of range");
    if (code.frozen[p]) throw std::invalid_argument("polar code: duplicate frozen index");
    code.frozen[p] = 1;
  }
  code.info_length = block_length - static_cast<int>(frozen_positions.size());
  code.validate();
  return code;
}

std::vector<std::uint8_t> polar_transform(std::vector<std::uint8_t> bits) {
  const int n = static_cast<int>(bits.size());
  if (!power_of_two(n) && n != 1) throw std::invalid_argument("polar_transform: length must be a power of two");
  for (int len = 1; len < n; len <<= 1)
    for (int i = 0; i < n; i += 2 * len)
      for (int j = i; j < i + len; ++j) bits[j] ^= bits[j + len];
  return bits;
}

std::vector<std::uint8_t> encode(const std::vector<std::uint8_t>& u, const PolarCode& code) {
  code.validate();
  if (static_cast<int>(u.size()) != code.block_length)
    throw std::invalid_argument("encode: source length mismatch");
  for (int i = 0; i < code.block_length; ++i)
    if (code.frozen[i] && u[i]) throw std::invalid_argument("encode: nonzero value on frozen position");
  return polar_transform(u);
}

ScResult sc_decode(const std::vector<double>& channel_llrs, const PolarCode& code,
                   PeCounters* counters) {
  code.validate();
  if (static_cast<int>(channel_llrs.size()) != code.block_length)
    throw std::invalid_argument("sc_decode: LLR length mismatch");
  ScWork w(code.block_length);
  auto leaf = [&](int index, double llr) -> std::uint8_t {
    std::uint8_t bit = code.frozen[index] ? 0 : (llr >= 0.0 ? 0 : 1);
    w.u[index] = bit;
    return bit;
  };
  sc_recurse(channel_llrs.data(), code.block_length, 0, 0, w.x.data(), w, counters, leaf);
  return {std::move(w.u), std::move(w.x)};
}

PolarCode construct_code(int block_length, int info_length, const FlashModel& design_model,
                         const MappingScheme& mapping, long trials, std::uint64_t seed) {
  if (!power_of_two(block_length)) throw std::invalid_argument("construct: N must be a power of two >= 2");
  if (info_length < 0 || info_length > block_length)
    throw std::invalid_argument("construct: K out of range");
  if (trials < 10000) throw std::invalid_argument("construct: need at least 1e4 trials");
  design_model.validate();
  mapping.validate();

  const int n = block_length;
  const int cells = n / 2;
  std::vector<std::uint64_t> errors(n, 0);
  std::vector<std::uint8_t> u(n), x(n);
  std::vector<double> llr(n);
  ScWork w(n);

  for (long t = 0; t < trials; ++t) {
    std::mt19937_64 rng(derive_seed(seed, 0xC0115717u, static_cast<std::uint64_t>(t)));
    for (int i = 0; i < n; ++i) u[i] = static_cast<std::uint8_t>(rng() & 1u);
    x = u;
    x = polar_transform(std::move(x));
    for (int c = 0; c < cells; ++c) {
      std::uint8_t sym = static_cast<std::uint8_t>((x[2 * c] << 1) | x[2 * c + 1]);
      int state = mapping.state_of(sym);
      double v = program_cell(state, design_model, rng);
      auto [msb, lsb] = pure_soft_llr(v, design_model, mapping);
      llr[2 * c] = msb;
      llr[2 * c + 1] = lsb;
    }
    auto leaf = [&](int index, double value) -> std::uint8_t {
      std::uint8_t decided = value >= 0.0 ? 0 : 1;
      if (decided != u[index]) ++errors[index];
      return u[index];  // genie: continue from the transmitted bit
    };
    sc_recurse(llr.data(), n, 0, 0, w.x.data(), w, nullptr, leaf);
  }

  std::uint64_t total = std::accumulate(errors.begin(), errors.end(), std::uint64_t{0});
  if (total == 0 && info_length > 0 && info_length < n)
    throw std::runtime_error("construct: no decision errors observed; channel too clean or too few trials");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return errors[a] > errors[b]; });
  std::vector<int> frozen(order.begin(), order.begin() + (n - info_length));
  std::sort(frozen.begin(), frozen.end());
  return code_from_frozen(n, frozen);
}

void save_frozen_set(const PolarCode& code, const std::string& path) {
  code.validate();
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  for (int p : code.frozen_positions()) out << p << '\n';
}

PolarCode load_frozen_set(int block_length, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<int> positions;
  int p;
  while (in >> p) positions.push_back(p);
  if (!std::is_sorted(positions.begin(), positions.end()))
    throw std::runtime_error("frozen set file must list positions in ascending order");
  return code_from_frozen(block_length, positions);
}

}  // namespace flashpolar
