#include "flashpolar/boundary_opt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace flashpolar {

std::vector<double> Boundaries::merged() const {
  std::vector<double> refs(hard_refs.begin(), hard_refs.end());
  refs.insert(refs.end(), soft_refs.begin(), soft_refs.end());
  std::sort(refs.begin(), refs.end());
  for (std::size_t i = 1; i < refs.size(); ++i)
    if (!(refs[i - 1] < refs[i]))
      throw std::invalid_argument("boundaries: references must be strictly increasing");
  return refs;
}

void DiscreteChannel::validate() const {
  if (rows.size() != 2) throw std::invalid_argument("channel: expected two input rows");
  if (rows[0].size() != rows[1].size() || rows[0].empty())
    throw std::invalid_argument("channel: rows must be nonempty and equally sized");
  for (const auto& row : rows) {
    double sum = 0.0;
    for (double p : row) {
      if (!(p >= 0.0)) throw std::invalid_argument("channel: negative transition probability");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw std::invalid_argument("channel: row does not sum to one");
  }
}

double entropy_bits(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw std::invalid_argument("entropy: negative probability");
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

double mutual_information(const DiscreteChannel& ch) {
  ch.validate();
  std::vector<double> out(ch.rows[0].size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = 0.5 * (ch.rows[0][j] + ch.rows[1][j]);
  double mi = entropy_bits(out) - 0.5 * entropy_bits(ch.rows[0]) - 0.5 * entropy_bits(ch.rows[1]);
  return std::max(mi, 0.0);
}

std::pair<double, double> constant_ratio_boundaries(const FlashModel& model, int region,
                                                    double ratio) {
  model.validate();
  if (region < 0 || region > 2) throw std::out_of_range("constant_ratio_boundaries: region");
  if (!(ratio > 0.0)) throw std::invalid_argument("constant_ratio_boundaries: ratio must be > 0");
  const auto& lo = model.states[region];
  const auto& hi = model.states[region + 1];
  double left = pdf_ratio_boundary(lo, hi, std::log(ratio));
  double right = pdf_ratio_boundary(lo, hi, -std::log(ratio));
  if (left > right) std::swap(left, right);
  return {left, right};
}

Boundaries hard_only_boundaries(const FlashModel& model) {
  Boundaries b;
  b.hard_refs = hard_boundaries(model);
  return b;
}

Boundaries constant_ratio_layout(const FlashModel& model, double ratio) {
  Boundaries b = hard_only_boundaries(model);
  for (int region = 0; region < 3; ++region) {
    auto [left, right] = constant_ratio_boundaries(model, region, ratio);
    b.soft_refs.push_back(left);
    b.soft_refs.push_back(right);
  }
  b.merged();  // ordering check
  return b;
}

namespace {

// Transition rows over sensed regions collapsed through out_of_region, for the
// per-bit channel with equiprobable states. refs must be strictly increasing
// and out_of_region one entry longer.
DiscreteChannel region_channel(const FlashModel& model, const MappingScheme& mapping, bool use_msb,
                               const std::vector<double>& refs,
                               const std::vector<int>& out_of_region, int n_out) {
  const double inf = std::numeric_limits<double>::infinity();
  DiscreteChannel ch;
  ch.rows.assign(2, std::vector<double>(n_out, 0.0));
  for (int s = 0; s < 4; ++s) {
    int bit = use_msb ? mapping.msb_of(s) : mapping.lsb_of(s);
    for (std::size_t r = 0; r < out_of_region.size(); ++r) {
      double lo = r == 0 ? -inf : refs[r - 1];
      double hi = r == refs.size() ? inf : refs[r];
      ch.rows[bit][out_of_region[r]] += gaussian_region_mass(model.states[s], lo, hi);
    }
  }
  for (auto& row : ch.rows)
    for (double& p : row) p *= 0.5;  // two states per bit value
  return ch;
}

void require_increasing(std::initializer_list<double> refs, const char* what) {
  double prev = -std::numeric_limits<double>::infinity();
  for (double r : refs) {
    if (!(prev < r)) throw std::invalid_argument(std::string(what) + ": references out of order");
    prev = r;
  }
}

// The soft layouts assume the LSB changes only across the middle boundary and
// the MSB only across the outer ones.
void require_middle_split(const MappingScheme& m) {
  if (m.lsb_of(0) != m.lsb_of(1) || m.lsb_of(2) != m.lsb_of(3) || m.lsb_of(0) == m.lsb_of(2))
    throw std::invalid_argument("lsb channel: mapping does not split the LSB at the middle boundary");
}

void require_outer_split(const MappingScheme& m) {
  if (m.msb_of(0) != m.msb_of(3) || m.msb_of(1) != m.msb_of(2) || m.msb_of(0) == m.msb_of(1))
    throw std::invalid_argument("msb channel: mapping does not split the MSB at the outer boundaries");
}

}  // namespace

DiscreteChannel hard_lsb_channel(const FlashModel& model, const MappingScheme& mapping) {
  model.validate();
  mapping.validate();
  auto hard = hard_boundaries(model);
  std::vector<int> out(4);
  for (int r = 0; r < 4; ++r) out[r] = mapping.lsb_of(r);
  return region_channel(model, mapping, false, {hard[0], hard[1], hard[2]}, out, 2);
}

DiscreteChannel hard_msb_channel(const FlashModel& model, const MappingScheme& mapping) {
  model.validate();
  mapping.validate();
  auto hard = hard_boundaries(model);
  std::vector<int> out(4);
  for (int r = 0; r < 4; ++r) out[r] = mapping.msb_of(r);
  return region_channel(model, mapping, true, {hard[0], hard[1], hard[2]}, out, 2);
}

DiscreteChannel lsb_channel(const FlashModel& model, const MappingScheme& mapping, double q3,
                            double q4) {
  model.validate();
  mapping.validate();
  require_middle_split(mapping);
  require_increasing({q3, q4}, "lsb channel");
  return region_channel(model, mapping, false, {q3, q4}, {0, 1, 2}, 3);
}

DiscreteChannel practical_lsb_channel(const FlashModel& model, const MappingScheme& mapping,
                                      double hard_mid, double q3, double q4) {
  model.validate();
  mapping.validate();
  require_middle_split(mapping);
  require_increasing({q3, hard_mid, q4}, "practical lsb channel");
  return region_channel(model, mapping, false, {q3, hard_mid, q4}, {0, 1, 2, 3}, 4);
}

DiscreteChannel msb_channel(const FlashModel& model, const MappingScheme& mapping, double q1,
                            double q2, double q5, double q6) {
  model.validate();
  mapping.validate();
  require_outer_split(mapping);
  require_increasing({q1, q2, q5, q6}, "msb channel");
  // Both tails carry the same (outer) bit, so they share output 0.
  return region_channel(model, mapping, true, {q1, q2, q5, q6}, {0, 1, 2, 3, 0}, 4);
}

DiscreteChannel practical_msb_channel(const FlashModel& model, const MappingScheme& mapping,
                                      double hard_lo, double hard_hi, double q1, double q2,
                                      double q5, double q6) {
  model.validate();
  mapping.validate();
  require_outer_split(mapping);
  require_increasing({q1, hard_lo, q2, q5, hard_hi, q6}, "practical msb channel");
  return region_channel(model, mapping, true, {q1, hard_lo, q2, q5, hard_hi, q6},
                        {0, 1, 2, 3, 4, 5, 0}, 6);
}

namespace {

constexpr double kInvPhi = 0.6180339887498949;
constexpr double kBoxMargin = 1e-9;  // keeps soft references off the means and hard references
constexpr double kGridStep = 1e-2;
constexpr double kGoldenTol = 1e-7;
constexpr double kMoveTol = 1e-6;
constexpr int kMaxCycles = 200;

struct Box {
  double lo, hi;
};

// Golden-section maximization on [lo, hi]; g is assumed unimodal there.
template <typename G>
std::pair<double, double> golden_max(G&& g, double lo, double hi, double xtol) {
  double a = lo, b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = g(x1), f2 = g(x2);
  while (b - a > xtol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = g(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = g(x1);
    }
  }
  return f1 >= f2 ? std::pair<double, double>{x1, f1} : std::pair<double, double>{x2, f2};
}

struct PairResult {
  double x, y, value;
};

// Deterministic 2-D maximization: optional coarse grid scan, then cyclic
// per-coordinate golden sections. Never returns a value below f(init).
template <typename F2>
PairResult optimize_pair(F2&& f, Box bx, Box by, double init_x, double init_y, bool grid_scan) {
  if (!(bx.lo < bx.hi) || !(by.lo < by.hi))
    throw std::invalid_argument("optimize_pair: empty search box");
  double cx = std::clamp(init_x, bx.lo, bx.hi);
  double cy = std::clamp(init_y, by.lo, by.hi);
  double best = f(cx, cy);
  if (grid_scan) {
    int nx = static_cast<int>((bx.hi - bx.lo) / kGridStep) + 1;
    int ny = static_cast<int>((by.hi - by.lo) / kGridStep) + 1;
    for (int ix = 0; ix <= nx; ++ix) {
      double x = std::min(bx.lo + ix * kGridStep, bx.hi);
      for (int iy = 0; iy <= ny; ++iy) {
        double y = std::min(by.lo + iy * kGridStep, by.hi);
        double v = f(x, y);
        if (v > best) {
          best = v;
          cx = x;
          cy = y;
        }
      }
    }
  }
  for (int cycle = 0; cycle < kMaxCycles; ++cycle) {
    double moved = 0.0;
    auto [x, fx] = golden_max([&](double t) { return f(t, cy); }, bx.lo, bx.hi, kGoldenTol);
    if (fx >= best) {
      moved = std::max(moved, std::abs(x - cx));
      best = fx;
      cx = x;
    }
    auto [y, fy] = golden_max([&](double t) { return f(cx, t); }, by.lo, by.hi, kGoldenTol);
    if (fy >= best) {
      moved = std::max(moved, std::abs(y - cy));
      best = fy;
      cy = y;
    }
    if (moved < kMoveTol) break;
  }
  return {cx, cy, best};
}

// Search boxes for the soft pair straddling hard reference `hard` inside
// overlap region `region` (between states region and region+1).
std::pair<Box, Box> straddle_boxes(const FlashModel& model, int region, double hard) {
  double lo_mean = model.states[region].mean;
  double hi_mean = model.states[region + 1].mean;
  Box left{lo_mean + kBoxMargin, hard - kBoxMargin};
  Box right{hard + kBoxMargin, hi_mean - kBoxMargin};
  return {left, right};
}

// Constant-ratio pairs make good multi-start candidates; skip any that fall
// outside the search boxes (possible at large sigma).
struct RatioCandidate {
  double ratio, left, right;
};

std::vector<RatioCandidate> ratio_candidates(const FlashModel& model, int region, const Box& bl,
                                             const Box& br) {
  std::vector<RatioCandidate> out;
  for (double ratio : {2.0, 4.0, 8.0}) {
    try {
      auto [l, r] = constant_ratio_boundaries(model, region, ratio);
      if (l > bl.lo && l < bl.hi && r > br.lo && r < br.hi) out.push_back({ratio, l, r});
    } catch (const std::domain_error&) {
    }
  }
  return out;
}

template <typename F2>
PairResult optimize_soft_pair(F2&& f, const FlashModel& model, int region, double hard) {
  auto [bl, br] = straddle_boxes(model, region, hard);
  double cx = 0.5 * (bl.lo + bl.hi);
  double cy = 0.5 * (br.lo + br.hi);
  double best = f(cx, cy);
  for (const auto& c : ratio_candidates(model, region, bl, br)) {
    double v = f(c.left, c.right);
    if (v > best) {
      best = v;
      cx = c.left;
      cy = c.right;
    }
  }
  return optimize_pair(f, bl, br, cx, cy, true);
}

// Seed a four-reference MSB search with same-ratio pairs in both overlap
// regions, keeping whichever candidate scores best under `mi`.
template <typename F4>
void seed_msb(F4&& mi, const FlashModel& model, const Box& b1, const Box& b2, const Box& b5,
              const Box& b6, double& q1, double& q2, double& q5, double& q6) {
  double best = mi(q1, q2, q5, q6);
  auto lower = ratio_candidates(model, 0, b1, b2);
  auto upper = ratio_candidates(model, 2, b5, b6);
  for (const auto& lo : lower) {
    for (const auto& up : upper) {
      if (lo.ratio != up.ratio) continue;
      double v = mi(lo.left, lo.right, up.left, up.right);
      if (v > best) {
        best = v;
        q1 = lo.left;
        q2 = lo.right;
        q5 = up.left;
        q6 = up.right;
      }
    }
  }
}

// Alternate golden-section refinement between the two overlap regions until
// every reference settles.
template <typename F4>
void refine_msb(F4&& mi, const Box& b1, const Box& b2, const Box& b5, const Box& b6, double& q1,
                double& q2, double& q5, double& q6) {
  for (int round = 0; round < kMaxCycles; ++round) {
    PairResult low = optimize_pair([&](double a, double b) { return mi(a, b, q5, q6); }, b1, b2,
                                   q1, q2, round == 0);
    double moved = std::max(std::abs(low.x - q1), std::abs(low.y - q2));
    q1 = low.x;
    q2 = low.y;
    PairResult up = optimize_pair([&](double c, double d) { return mi(q1, q2, c, d); }, b5, b6,
                                  q5, q6, round == 0);
    moved = std::max({moved, std::abs(up.x - q5), std::abs(up.y - q6)});
    q5 = up.x;
    q6 = up.y;
    if (moved < kMoveTol) break;
  }
}

}  // namespace

std::pair<double, double> smmi_lsb(const FlashModel& model, const MappingScheme& mapping) {
  model.validate();
  mapping.validate();
  require_middle_split(mapping);
  auto hard = hard_boundaries(model);
  auto objective = [&](double q3, double q4) {
    return mutual_information(lsb_channel(model, mapping, q3, q4));
  };
  PairResult r = optimize_soft_pair(objective, model, 1, hard[1]);
  return {r.x, r.y};
}

std::array<double, 4> smmi_msb(const FlashModel& model, const MappingScheme& mapping) {
  model.validate();
  mapping.validate();
  require_outer_split(mapping);
  auto hard = hard_boundaries(model);
  auto [b1, b2] = straddle_boxes(model, 0, hard[0]);
  auto [b5, b6] = straddle_boxes(model, 2, hard[2]);

  double q1 = 0.5 * (b1.lo + b1.hi), q2 = 0.5 * (b2.lo + b2.hi);
  double q5 = 0.5 * (b5.lo + b5.hi), q6 = 0.5 * (b6.lo + b6.hi);
  auto mi = [&](double a, double b, double c, double d) {
    return mutual_information(msb_channel(model, mapping, a, b, c, d));
  };
  seed_msb(mi, model, b1, b2, b5, b6, q1, q2, q5, q6);
  refine_msb(mi, b1, b2, b5, b6, q1, q2, q5, q6);
  return {q1, q2, q5, q6};
}

Boundaries practical_smmi(const FlashModel& model, const MappingScheme& mapping) {
  model.validate();
  mapping.validate();
  require_middle_split(mapping);
  require_outer_split(mapping);
  Boundaries out = hard_only_boundaries(model);
  const auto& hard = out.hard_refs;

  auto lsb_obj = [&](double q3, double q4) {
    return mutual_information(practical_lsb_channel(model, mapping, hard[1], q3, q4));
  };
  PairResult lsb = optimize_soft_pair(lsb_obj, model, 1, hard[1]);

  auto [b1, b2] = straddle_boxes(model, 0, hard[0]);
  auto [b5, b6] = straddle_boxes(model, 2, hard[2]);
  double q1 = 0.5 * (b1.lo + b1.hi), q2 = 0.5 * (b2.lo + b2.hi);
  double q5 = 0.5 * (b5.lo + b5.hi), q6 = 0.5 * (b6.lo + b6.hi);
  auto mi = [&](double a, double b, double c, double d) {
    return mutual_information(practical_msb_channel(model, mapping, hard[0], hard[2], a, b, c, d));
  };
  seed_msb(mi, model, b1, b2, b5, b6, q1, q2, q5, q6);
  refine_msb(mi, b1, b2, b5, b6, q1, q2, q5, q6);

  out.soft_refs = {q1, q2, lsb.x, lsb.y, q5, q6};
  out.merged();  // ordering check
  return out;
}

}  // namespace flashpolar
