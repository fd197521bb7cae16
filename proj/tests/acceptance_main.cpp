// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Every tolerance and seed is pinned here; the checks lean on the
// independent reference implementations in oracles.hpp where cross-checking
// matters. Expected runtime a few minutes on one core.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "flashpolar/binary_sc.hpp"
#include "flashpolar/boundary_opt.hpp"
#include "flashpolar/complexity.hpp"
#include "flashpolar/flash_model.hpp"
#include "flashpolar/ldpc.hpp"
#include "flashpolar/llr_engine.hpp"
#include "flashpolar/mapping.hpp"
#include "flashpolar/math_util.hpp"
#include "flashpolar/polar.hpp"
#include "flashpolar/precheck.hpp"
#include "flashpolar/rng.hpp"
#include "flashpolar/simulator.hpp"
#include "oracles.hpp"

using namespace flashpolar;

namespace {

constexpr std::uint64_t kMasterSeed = 20250815ull;   // simulation sweeps
constexpr std::uint64_t kBalanceSeed = 28ull;        // codeword-balance frames
constexpr std::uint64_t kChannelSeed = 424242ull;    // channel-model cells

FlashModel reference_model(double base_sigma) {
  return scaled_model({0.0, 3.25, 4.55, 6.5}, {2.0, 1.0, 1.0, 1.4}, base_sigma);
}

struct Check {
  bool pass = true;
  std::ostringstream detail;
  void expect(bool ok) { pass = pass && ok; }
};

// ---------------------------------------------------------------------------
// 1. Processing-element truth tables: 18 Type I and 9 Type II cases, exact.

bool crit_pe_tables(Check& c) {
  struct Row1 {
    int u, x, y, z;
  };
  // Hardware truth table: u = 0 adds, u = 1 subtracts the first operand,
  // sums saturate to +/-1.
  const Row1 t1[18] = {
      {0, -1, -1, -1}, {0, -1, 0, -1}, {0, -1, 1, 0},
      {0, 0, -1, -1},  {0, 0, 0, 0},   {0, 0, 1, 1},
      {0, 1, -1, 0},   {0, 1, 0, 1},   {0, 1, 1, 1},
      {1, -1, -1, 0},  {1, -1, 0, 1},  {1, -1, 1, 1},
      {1, 0, -1, -1},  {1, 0, 0, 0},   {1, 0, 1, 1},
      {1, 1, -1, -1},  {1, 1, 0, -1},  {1, 1, 1, 0},
  };
  // The same rows as 2-bit two's-complement patterns.
  const std::uint8_t t1_bits[18] = {0b11, 0b11, 0b00, 0b11, 0b00, 0b01, 0b00, 0b01, 0b01,
                                    0b00, 0b01, 0b01, 0b11, 0b00, 0b01, 0b11, 0b11, 0b00};
  int exact = 0;
  for (int i = 0; i < 18; ++i) {
    Tc2 z = type1_pe(t1[i].u, Tc2::from_value(t1[i].x), Tc2::from_value(t1[i].y));
    Tc2 zl = type1_pe_lut(t1[i].u, Tc2::from_value(t1[i].x), Tc2::from_value(t1[i].y));
    bool ok = z.value() == t1[i].z && z.raw() == t1_bits[i] && zl == z;
    c.expect(ok);
    exact += ok;
  }
  // Sign product with zero absorption; the four nonzero rows have MSB equal
  // to the XOR of the operand MSBs and LSB pinned to 1.
  for (int xv = -1; xv <= 1; ++xv) {
    for (int yv = -1; yv <= 1; ++yv) {
      Tc2 x = Tc2::from_value(xv), y = Tc2::from_value(yv);
      Tc2 z = type2_pe(x, y);
      int want = (xv == 0 || yv == 0) ? 0 : xv * yv;
      bool ok = z.value() == want && type2_pe_lut(x, y) == z;
      if (want != 0) ok = ok && z.msb() == (x.msb() ^ y.msb()) && z.lsb() == 1;
      c.expect(ok);
      exact += ok;
    }
  }
  c.detail << exact << "/27 rows exact";
  return c.pass;
}

// ---------------------------------------------------------------------------
// 2. Tc2 decoder vs the saturated +/-1 min-sum reference, 1e4 frames per N.

bool crit_binary_oracle(Check& c) {
  for (int n : {64, 256, 1024}) {
    std::mt19937_64 rng(derive_seed(kMasterSeed, 2, static_cast<std::uint64_t>(n)));
    long mismatches = 0;
    for (int frame = 0; frame < 10000; ++frame) {
      std::vector<int> perm(n);
      for (int i = 0; i < n; ++i) perm[i] = i;
      for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng() % (i + 1)]);
      int k = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n - 1));
      std::vector<int> frozen(perm.begin(), perm.begin() + (n - k));
      std::sort(frozen.begin(), frozen.end());
      PolarCode code = code_from_frozen(n, frozen);

      std::vector<Tc2> llrs(n);
      std::vector<int> ints(n);
      std::vector<std::uint8_t> fmask(n, 0);
      for (int f : frozen) fmask[f] = 1;
      for (int i = 0; i < n; ++i) {
        int v = static_cast<int>(rng() % 3) - 1;
        llrs[i] = Tc2::from_value(v);
        ints[i] = v;
      }
      auto got = binary_sc_decode(llrs, code);
      auto want = oracle::saturated_sc(ints, fmask);
      mismatches += got != want;
    }
    c.detail << "N=" << n << ": " << mismatches << " mismatches  ";
    c.expect(mismatches == 0);
  }
  return c.pass;
}

// ---------------------------------------------------------------------------
// 3. Mapping enumeration: 24 schemes, 8 Gray with change count 3, and every
//    non-Gray scheme strictly worse on the (0.01, 0.02, 0.01) profile.

bool crit_mapping_enumeration(Check& c) {
  auto schemes = enumerate_schemes();
  c.expect(schemes.size() == 24);
  const RegionErrorProfile prof{0.01, 0.02, 0.01};
  const double n_gray = prof.p1 + prof.p2 + prof.p3;
  int gray_count = 0, worse = 0;
  for (const auto& [scheme, changes] : schemes) {
    double expected = expected_raw_bit_errors(scheme, prof);
    if (changes == 3) {
      ++gray_count;
      c.expect(scheme.is_gray());
      c.expect(std::abs(expected - n_gray) < 1e-15);
    } else {
      c.expect(!scheme.is_gray());
      c.expect(expected > n_gray);
      ++worse;
    }
  }
  c.expect(gray_count == 8);
  c.detail << schemes.size() << " schemes, " << gray_count << " Gray, " << worse
           << " non-Gray all above " << n_gray;
  return c.pass;
}

// ---------------------------------------------------------------------------
// 4. Codeword balance: each position's 1-frequency within 0.5 +/- 3 binomial
//    sigma over 1e5 random frames at (1024, 512).

bool crit_codeword_balance(Check& c) {
  const long frames = 100000;
  PolarCode code =
      construct_code(1024, 512, reference_model(0.70), gray_scheme(), 20000, kMasterSeed);
  auto info = code.info_positions();
  std::vector<long> ones(1024, 0);
  for (long f = 0; f < frames; ++f) {
    std::mt19937_64 rng(derive_seed(kBalanceSeed, 0, static_cast<std::uint64_t>(f)));
    std::vector<std::uint8_t> u(1024, 0);
    for (int p : info) u[p] = static_cast<std::uint8_t>(rng() & 1);
    auto x = encode(u, code);
    for (int j = 0; j < 1024; ++j) ones[j] += x[j];
  }
  const double band = 3.0 * std::sqrt(0.25 / static_cast<double>(frames));
  double worst = 0.0;
  int outliers = 0;
  for (int j = 0; j < 1024; ++j) {
    double dev = std::abs(static_cast<double>(ones[j]) / frames - 0.5);
    worst = std::max(worst, dev);
    outliers += dev > band;
  }
  c.expect(outliers == 0);
  c.detail << "max |freq-0.5| " << worst << " vs band " << band << ", " << outliers
           << " outliers";
  return c.pass;
}

// ---------------------------------------------------------------------------
// 5. Complexity model: frozen per-frame operation counts at N=8192 plus
//    instrumented processing-element counters.

bool crit_complexity(Check& c) {
  auto sc = sc_ops(8192);
  auto bin = binary_sc_ops(8192);
  auto lbp = lbp_ops(8192, 7372, 4, 30, 20);
  auto flip = bitflip_ops(8192, 20);
  c.expect(sc.additions == 106496);
  c.expect(bin.additions == 53248 && bin.xors == 53248);
  c.expect(lbp.additions == 2311120 && lbp.per_iteration.value_or(0) == 115556);
  c.expect(flip.additions == 163820 && flip.per_iteration.value_or(0) == 8191);

  PolarCode all_info = code_from_frozen(8192, {});
  PeCounters soft{}, hard{};
  sc_decode(std::vector<double>(8192, 0.0), all_info, &soft);
  binary_sc_decode(std::vector<Tc2>(8192), all_info, &hard);
  const std::uint64_t per_type = 8192ull / 2 * 13;  // N/2 log2 N
  c.expect(soft.type1 == per_type && soft.type2 == per_type);
  c.expect(hard.type1 == per_type && hard.type2 == per_type);
  c.detail << "sc " << sc.additions << ", binary " << bin.additions << "+" << bin.xors
           << "x, lbp " << lbp.additions << ", bit-flip " << flip.additions << ", counters "
           << soft.type1 << "/" << per_type;
  return c.pass;
}

// ---------------------------------------------------------------------------
// 6. Boundary quality: per-bit mutual information SMMI >= constant-ratio
//    {2,4,8} >= hard across a 5-sigma sweep, and SMMI references within one
//    1e-3 V grid step of a brute-force grid search.

struct GridBest {
  double x = 0.0, y = 0.0, mi = -1.0;
};

template <typename F>
GridBest grid_argmax(F&& f, double xlo, double xhi, double ylo, double yhi) {
  // Same boxes the optimizer searches, on a fixed 1e-3 V lattice.
  const double step = 1e-3;
  GridBest best;
  int nx = static_cast<int>((xhi - xlo) / step) + 1;
  int ny = static_cast<int>((yhi - ylo) / step) + 1;
  for (int ix = 0; ix <= nx; ++ix) {
    double x = std::min(xlo + ix * step, xhi);
    for (int iy = 0; iy <= ny; ++iy) {
      double y = std::min(ylo + iy * step, yhi);
      double v = f(x, y);
      if (v > best.mi) best = {x, y, v};
    }
  }
  return best;
}

bool crit_boundary_quality(Check& c) {
  const MappingScheme map = gray_scheme();
  const double margin = 1e-9;  // box inset used by the optimizer
  const double step_tol = 1e-3 + 1e-9;
  double worst_step = 0.0;
  for (double sigma : {0.36, 0.42, 0.48, 0.54, 0.60}) {
    FlashModel m = reference_model(sigma);
    Boundaries b = practical_smmi(m, map);
    const auto& h = b.hard_refs;
    double q1 = b.soft_refs[0], q2 = b.soft_refs[1], q3 = b.soft_refs[2];
    double q4 = b.soft_refs[3], q5 = b.soft_refs[4], q6 = b.soft_refs[5];

    double lsb_opt = mutual_information(practical_lsb_channel(m, map, h[1], q3, q4));
    double msb_opt = mutual_information(practical_msb_channel(m, map, h[0], h[2], q1, q2, q5, q6));
    double lsb_hard = mutual_information(hard_lsb_channel(m, map));
    double msb_hard = mutual_information(hard_msb_channel(m, map));
    for (double ratio : {2.0, 4.0, 8.0}) {
      auto [c3, c4] = constant_ratio_boundaries(m, 1, ratio);
      auto [c1, c2] = constant_ratio_boundaries(m, 0, ratio);
      auto [c5, c6] = constant_ratio_boundaries(m, 2, ratio);
      double lsb_cr = mutual_information(practical_lsb_channel(m, map, h[1], c3, c4));
      double msb_cr = mutual_information(practical_msb_channel(m, map, h[0], h[2], c1, c2, c5, c6));
      c.expect(lsb_opt >= lsb_cr - 1e-12 && lsb_cr >= lsb_hard - 1e-12);
      c.expect(msb_opt >= msb_cr - 1e-12 && msb_cr >= msb_hard - 1e-12);
    }

    auto lsb_mi = [&](double a, double bq) {
      return mutual_information(practical_lsb_channel(m, map, h[1], a, bq));
    };
    GridBest gl = grid_argmax(lsb_mi, m.states[1].mean + margin, h[1] - margin, h[1] + margin,
                              m.states[2].mean - margin);
    c.expect(std::abs(q3 - gl.x) <= step_tol && std::abs(q4 - gl.y) <= step_tol);
    c.expect(lsb_opt >= gl.mi - 1e-9);
    worst_step = std::max({worst_step, std::abs(q3 - gl.x), std::abs(q4 - gl.y)});

    // The outer pairs couple only through the shared tail output, so grid
    // each pair with the other held at the optimizer's answer.
    auto msb_lo = [&](double a, double bq) {
      return mutual_information(practical_msb_channel(m, map, h[0], h[2], a, bq, q5, q6));
    };
    GridBest g1 = grid_argmax(msb_lo, m.states[0].mean + margin, h[0] - margin, h[0] + margin,
                              m.states[1].mean - margin);
    c.expect(std::abs(q1 - g1.x) <= step_tol && std::abs(q2 - g1.y) <= step_tol);
    c.expect(msb_opt >= g1.mi - 1e-9);
    worst_step = std::max({worst_step, std::abs(q1 - g1.x), std::abs(q2 - g1.y)});

    auto msb_hi = [&](double a, double bq) {
      return mutual_information(practical_msb_channel(m, map, h[0], h[2], q1, q2, a, bq));
    };
    GridBest g5 = grid_argmax(msb_hi, m.states[2].mean + margin, h[2] - margin, h[2] + margin,
                              m.states[3].mean - margin);
    c.expect(std::abs(q5 - g5.x) <= step_tol && std::abs(q6 - g5.y) <= step_tol);
    c.expect(msb_opt >= g5.mi - 1e-9);
    worst_step = std::max({worst_step, std::abs(q5 - g5.x), std::abs(q6 - g5.y)});
  }
  c.detail << "5 sigmas, worst grid offset " << worst_step << " V";
  return c.pass;
}

// ---------------------------------------------------------------------------
// 7. Constant-ratio boundaries: substituted PDF ratios equal R within 1e-6
//    relative, equal-sigma closed form within 1e-9 V.

bool crit_constant_ratio(Check& c) {
  double worst_rel = 0.0, worst_abs = 0.0;
  for (double sigma : {0.36, 0.42, 0.48, 0.54, 0.60}) {
    FlashModel m = reference_model(sigma);
    for (double ratio : {2.0, 4.0, 8.0}) {
      for (int region = 0; region < 3; ++region) {
        auto [l, r] = constant_ratio_boundaries(m, region, ratio);
        double rl = m.pdf(region, l) / m.pdf(region + 1, l);
        double rr = m.pdf(region, r) / m.pdf(region + 1, r);
        worst_rel = std::max({worst_rel, std::abs(rl - ratio) / ratio,
                              std::abs(rr - 1.0 / ratio) * ratio});
        c.expect(std::abs(rl - ratio) <= 1e-6 * ratio);
        c.expect(std::abs(rr - 1.0 / ratio) <= 1e-6 / ratio);
      }
      // States 1 and 2 share sigma: boundaries sit at the midpoint shifted
      // by sigma^2 ln(R) / delta on each side.
      auto [l1, r1] = constant_ratio_boundaries(m, 1, ratio);
      double mid = 0.5 * (m.states[1].mean + m.states[2].mean);
      double shift = sigma * sigma * std::log(ratio) / (m.states[2].mean - m.states[1].mean);
      worst_abs = std::max({worst_abs, std::abs(l1 - (mid - shift)), std::abs(r1 - (mid + shift))});
      c.expect(std::abs(l1 - (mid - shift)) <= 1e-9);
      c.expect(std::abs(r1 - (mid + shift)) <= 1e-9);
    }
  }
  c.detail << "worst ratio rel err " << worst_rel << ", closed form off by " << worst_abs << " V";
  return c.pass;
}

// ---------------------------------------------------------------------------
// 8. Frame-error-rate ordering at (1024, 896) plus the LDPC baseline.

SimConfig sweep_config(int n, int k, const char* decoder, const char* scheme, const char* mapping,
                       std::vector<double> sigmas, long trials) {
  SimConfig cfg;
  cfg.n = n;
  cfg.k = k;
  cfg.decoder = decoder;
  cfg.boundary_scheme = scheme;
  cfg.mapping = mapping;
  cfg.sigma_sweep = std::move(sigmas);
  cfg.trials = trials;
  cfg.max_frame_errors = trials;  // no early stop: every run sees paired frames
  cfg.construct_trials = 20000;
  cfg.master_seed = kMasterSeed;
  return cfg;
}

bool crit_fer_ordering(Check& c) {
  const std::vector<double> sigmas{0.34, 0.36, 0.38, 0.40, 0.42};
  const long trials = 20000;
  SimResult pure = run_sweep(sweep_config(1024, 896, "pure", "smmi", "gray", sigmas, trials));
  SimResult quant = run_sweep(sweep_config(1024, 896, "quantized", "smmi", "gray", sigmas, trials));
  SimResult bin = run_sweep(sweep_config(1024, 896, "binary", "hard", "gray", sigmas, trials));
  SimResult ldpc = run_sweep(sweep_config(1024, 896, "ldpc-bf", "hard", "gray", sigmas, trials));

  bool chain_point = false, ldpc_strict = false;
  for (std::size_t i = 0; i < sigmas.size(); ++i) {
    const auto& p = pure.points[i];
    const auto& q = quant.points[i];
    const auto& b = bin.points[i];
    const auto& l = ldpc.points[i];
    if (p.frame_errors >= 100 && q.frame_errors >= 100) c.expect(p.fer <= q.fer);
    if (q.frame_errors >= 100 && b.frame_errors >= 100) c.expect(q.fer <= b.fer);
    if (b.frame_errors >= 100 && l.frame_errors >= 100) {
      c.expect(b.fer <= l.fer);
      if (b.fer < l.fer && l.fer < 1.0) ldpc_strict = true;
    }
    if (p.frame_errors >= 100 && q.frame_errors >= 100 && b.frame_errors >= 100) {
      auto [plo, phi] = oracle::wilson95(p.frame_errors, p.frames);
      auto [qlo, qhi] = oracle::wilson95(q.frame_errors, q.frames);
      auto [blo, bhi] = oracle::wilson95(b.frame_errors, b.frames);
      (void)plo;
      (void)bhi;
      if (phi < qlo && qhi < blo) chain_point = true;
    }
    c.detail << "s" << p.sigma << ": " << p.fer << "/" << q.fer << "/" << b.fer << "/" << l.fer
             << "  ";
  }
  c.expect(chain_point);
  c.expect(ldpc_strict);
  if (!chain_point) c.detail << "[no separated point] ";
  return c.pass;
}

// ---------------------------------------------------------------------------
// 9. Gray gain at (1024, 512), binary-input decoding, per-mapping codes.

bool crit_gray_gain(Check& c) {
  const std::vector<double> sigmas{0.50, 0.55, 0.60, 0.65, 0.70};
  const long trials = 4000;
  SimResult gray = run_sweep(sweep_config(1024, 512, "binary", "hard", "gray", sigmas, trials));
  SimResult direct = run_sweep(sweep_config(1024, 512, "binary", "hard", "direct", sigmas, trials));
  for (std::size_t i = 0; i < sigmas.size(); ++i) {
    const auto& g = gray.points[i];
    const auto& d = direct.points[i];
    long gbits = std::lround(g.ber * static_cast<double>(g.frames) * 512.0);
    long dbits = std::lround(d.ber * static_cast<double>(d.frames) * 512.0);
    if (gbits >= 100 && dbits >= 100) c.expect(g.ber < d.ber);
    c.detail << "s" << g.sigma << ": " << g.ber << "<" << d.ber << "  ";
  }
  return c.pass;
}

// ---------------------------------------------------------------------------
// 10. Channel model: Monte Carlo state-error frequency within 3 binomial
//     sigma of the analytic rate at three sigma settings.

bool crit_channel_model(Check& c) {
  for (double sigma : {0.35, 0.5, 0.7}) {
    FlashModel m = reference_model(sigma);
    auto refs = hard_boundaries(m);
    double expect = raw_error_probability(m).state_error_rate;
    const long cells = 1000000;
    std::mt19937_64 rng(derive_seed(kChannelSeed, 0x10AD, static_cast<std::uint64_t>(sigma * 1000)));
    long errors = 0;
    for (long cell = 0; cell < cells; ++cell) {
      int state = static_cast<int>(rng() & 3);
      double v = program_cell(state, m, rng);
      errors += sense_region(v, refs) != state;
    }
    double freq = static_cast<double>(errors) / static_cast<double>(cells);
    double sd = std::sqrt(expect * (1.0 - expect) / static_cast<double>(cells));
    c.expect(std::abs(freq - expect) <= 3.0 * sd);
    c.detail << "s" << sigma << ": " << (freq - expect) / sd << " sd  ";
  }
  return c.pass;
}

// ---------------------------------------------------------------------------
// 11. Determinism: serial and OpenMP runs emit byte-identical CSV once the
//     execution-mode echo line is masked.

std::string masked_csv(const SimResult& result) {
  std::ostringstream out;
  write_csv(result, out, false);
  std::istringstream in(out.str());
  std::ostringstream kept;
  std::string line;
  while (std::getline(in, line))
    if (line.rfind("# parallel", 0) != 0) kept << line << '\n';
  return kept.str();
}

bool crit_determinism(Check& c) {
  SimConfig cfg = sweep_config(1024, 896, "binary", "hard", "gray", {0.38, 0.42}, 2000);
  cfg.parallel = false;
  SimResult serial = run_sweep(cfg);
  cfg.parallel = true;
  SimResult parallel = run_sweep(cfg);
  std::string a = masked_csv(serial), b = masked_csv(parallel);
  c.expect(!a.empty() && a == b);
  c.detail << a.size() << " bytes, serial == parallel: " << (a == b ? "yes" : "NO");
  return c.pass;
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    bool (*fn)(Check&);
  };
  const Entry entries[] = {
      {"pe-truth-tables", crit_pe_tables},
      {"binary-sc-oracle", crit_binary_oracle},
      {"mapping-enumeration", crit_mapping_enumeration},
      {"codeword-balance", crit_codeword_balance},
      {"complexity-model", crit_complexity},
      {"boundary-quality", crit_boundary_quality},
      {"constant-ratio", crit_constant_ratio},
      {"fer-ordering", crit_fer_ordering},
      {"gray-gain", crit_gray_gain},
      {"channel-model", crit_channel_model},
      {"determinism", crit_determinism},
  };
  int failures = 0;
  int idx = 0;
  for (const auto& e : entries) {
    ++idx;
    Check c;
    bool ok = false;
    std::string detail;
    try {
      ok = e.fn(c);
      detail = c.detail.str();
    } catch (const std::exception& ex) {
      ok = false;
      detail = std::string("exception: ") + ex.what();
    }
    std::printf("[%2d] %s %-20s %s\n", idx, ok ? "PASS" : "FAIL", e.name, detail.c_str());
    std::fflush(stdout);
    failures += !ok;
  }
  std::printf("%d/11 criteria passed\n", 11 - failures);
  return failures == 0 ? 0 : 1;
}
