#include "flashpolar/binary_sc.hpp"

#include <ostream>
#include <stdexcept>

namespace flashpolar {

namespace {

inline void check_valid(Tc2 v, const char* who) {
  if (v.raw() == 0b10) throw std::invalid_argument(std::string(who) + ": invalid Tc2 pattern 10");
}

void dump(std::ostream& out, const char* stage, int depth, int base, const Tc2* vals, int len) {
  out << stage << " depth=" << depth << " base=" << base << " :";
  for (int i = 0; i < len; ++i) out << ' ' << vals[i].value();
  out << '\n';
}

}  // namespace

Tc2 Tc2::from_bits(int msb, int lsb) {
  if (msb == 1 && lsb == 0) throw std::invalid_argument("Tc2: pattern 10 is not representable");
  if ((msb & ~1) || (lsb & ~1)) throw std::invalid_argument("Tc2: bits must be 0 or 1");
  return Tc2(static_cast<std::uint8_t>((msb << 1) | lsb));
}

Tc2 Tc2::from_value(int v) {
  switch (v) {
    case 0: return zero();
    case 1: return plus_one();
    case -1: return minus_one();
    default: throw std::invalid_argument("Tc2: value out of range");
  }
}

Tc2 type1_pe(int u_prev, Tc2 x, Tc2 y) {
  check_valid(x, "type1_pe");
  check_valid(y, "type1_pe");
  if (u_prev != 0 && u_prev != 1) throw std::invalid_argument("type1_pe: u_prev must be 0 or 1");
  const int xm = x.msb(), xl = x.lsb(), ym = y.msb(), yl = y.lsb();
  int zm, zl;
  if (u_prev == 0) {
    // Z = X + Y saturated.
    zm = (xm & ym) | (xm & (yl ^ 1)) | ((xl ^ 1) & ym);
    zl = ((xl ^ 1) & yl) | (xl & (yl ^ 1)) | (xl & yl & ((xm ^ ym) ^ 1));
  } else {
    // Z = -X + Y saturated.
    zm = ((xm ^ 1) & xl & (yl ^ 1)) | ((xm ^ 1) & ym);
    zl = ((xl ^ 1) & yl) | ((xm ^ 1) & ym) | (xl & (yl ^ 1)) | (xm & (ym ^ 1));
  }
  return Tc2::from_bits(zm, zl);
}

Tc2 type1_pe_lut(int u_prev, Tc2 x, Tc2 y) {
  check_valid(x, "type1_pe_lut");
  check_valid(y, "type1_pe_lut");
  if (u_prev != 0 && u_prev != 1) throw std::invalid_argument("type1_pe_lut: u_prev must be 0 or 1");
  // Rows indexed by (u, X, Y) over the value order (-1, 0, +1).
  static constexpr int table[2][3][3] = {
      // u = 0: X + Y
      {{-1, -1, 0}, {-1, 0, 1}, {0, 1, 1}},
      // u = 1: -X + Y
      {{0, 1, 1}, {-1, 0, 1}, {-1, -1, 0}},
  };
  return Tc2::from_value(table[u_prev][x.value() + 1][y.value() + 1]);
}

Tc2 type2_pe(Tc2 x, Tc2 y) {
  check_valid(x, "type2_pe");
  check_valid(y, "type2_pe");
  // Zero absorbs; otherwise the sign product with magnitude one.
  const int zl = x.lsb() & y.lsb();
  const int zm = (x.msb() ^ y.msb()) & zl;
  return Tc2::from_bits(zm, zl);
}

Tc2 type2_pe_lut(Tc2 x, Tc2 y) {
  check_valid(x, "type2_pe_lut");
  check_valid(y, "type2_pe_lut");
  static constexpr int table[3][3] = {{1, 0, -1}, {0, 0, 0}, {-1, 0, 1}};
  return Tc2::from_value(table[x.value() + 1][y.value() + 1]);
}

namespace {

struct BscWork {
  std::vector<std::vector<Tc2>> level;
  std::vector<std::uint8_t> x;
  std::vector<std::uint8_t> u;

  explicit BscWork(int n) : x(n), u(n) {
    int levels = 0;
    for (int m = n; m > 1; m >>= 1) ++levels;
    level.resize(levels + 1);
    for (int d = 1; d <= levels; ++d) level[d].resize(n >> d);
  }
};

void bsc_recurse(const Tc2* llr, int len, int depth, int base, std::uint8_t* x, BscWork& w,
                 const PolarCode& code, PeCounters* pe, std::ostream* trace) {
  if (len == 1) {
    std::uint8_t bit;
    if (code.frozen[base]) {
      bit = 0;
    } else {
      bit = llr[0].value() < 0 ? 1 : 0;  // 0 and +1 decide bit 0
    }
    w.u[base] = bit;
    x[0] = bit;
    return;
  }
  const int half = len / 2;
  Tc2* child = w.level[depth + 1].data();
  for (int i = 0; i < half; ++i) child[i] = type2_pe(llr[i], llr[i + half]);
  if (pe) pe->type2 += static_cast<std::uint64_t>(half);
  if (trace) dump(*trace, "type2", depth, base, child, half);
  bsc_recurse(child, half, depth + 1, base, x, w, code, pe, trace);
  for (int i = 0; i < half; ++i) child[i] = type1_pe(x[i], llr[i], llr[i + half]);
  if (pe) pe->type1 += static_cast<std::uint64_t>(half);
  if (trace) dump(*trace, "type1", depth, base, child, half);
  bsc_recurse(child, half, depth + 1, base + half, x + half, w, code, pe, trace);
  for (int i = 0; i < half; ++i) x[i] ^= x[i + half];
}

}  // namespace

std::vector<std::uint8_t> binary_sc_decode(const std::vector<Tc2>& channel_llrs,
                                           const PolarCode& code, PeCounters* counters,
                                           std::ostream* trace) {
  code.validate();
  if (static_cast<int>(channel_llrs.size()) != code.block_length)
    throw std::invalid_argument("binary_sc_decode: LLR length mismatch");
  for (Tc2 v : channel_llrs) check_valid(v, "binary_sc_decode");
  BscWork w(code.block_length);
  bsc_recurse(channel_llrs.data(), code.block_length, 0, 0, w.x.data(), w, code, counters, trace);
  return w.u;
}

}  // namespace flashpolar
