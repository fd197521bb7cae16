#include "flashpolar/flash_model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "flashpolar/math_util.hpp"

namespace flashpolar {

namespace {
constexpr double kLogSqrt2Pi = 0.91893853320467274178;  // log(sqrt(2*pi))
}

double FlashModel::pdf(int state, double v) const {
  const auto& s = states[state];
  double z = (v - s.mean) / s.sigma;
  return std::exp(-0.5 * z * z) / (s.sigma * std::sqrt(2.0 * M_PI));
}

double FlashModel::log_pdf(int state, double v) const {
  const auto& s = states[state];
  double z = (v - s.mean) / s.sigma;
  return -0.5 * z * z - std::log(s.sigma) - kLogSqrt2Pi;
}

void FlashModel::validate() const {
  for (int i = 0; i < 4; ++i) {
    if (states[i].state_index != i) throw std::invalid_argument("flash model: bad state index");
    if (!(states[i].sigma > 0.0)) throw std::invalid_argument("flash model: sigma must be > 0");
  }
  for (int i = 0; i < 3; ++i)
    if (!(states[i].mean < states[i + 1].mean))
      throw std::invalid_argument("flash model: means must be strictly increasing");
}

FlashModel make_model(const std::array<double, 4>& means, const std::array<double, 4>& sigmas,
                      std::string label) {
  FlashModel m;
  for (int i = 0; i < 4; ++i) m.states[i] = {means[i], sigmas[i], i};
  m.label = std::move(label);
  m.validate();
  return m;
}

FlashModel scaled_model(const std::array<double, 4>& means,
                        const std::array<double, 4>& sigma_multipliers, double base_sigma,
                        std::string label) {
  std::array<double, 4> sigmas;
  for (int i = 0; i < 4; ++i) sigmas[i] = sigma_multipliers[i] * base_sigma;
  return make_model(means, sigmas, std::move(label));
}

void WearState::validate() const {
  if (pe_cycles < 0) throw std::invalid_argument("wear: negative cycle count");
  if (snr_decay_db_per_kilocycle < 0.0) throw std::invalid_argument("wear: negative decay rate");
}

double program_cell(int state, const FlashModel& model, std::mt19937_64& rng) {
  if (state < 0 || state > 3) throw std::invalid_argument("program_cell: state out of range");
  // Draw unconditionally so the rng stream does not depend on sigma; the
  // sigma -> 0 limit then lands exactly on the mean.
  double z = std::normal_distribution<double>{0.0, 1.0}(rng);
  const auto& s = model.states[state];
  return s.mean + s.sigma * z;
}

double pdf_ratio_boundary(const GaussianState& lo, const GaussianState& hi, double log_ratio) {
  if (!(lo.mean < hi.mean))
    throw std::domain_error("pdf_ratio_boundary: degenerate model, means must increase");
  if (!(lo.sigma > 0.0) || !(hi.sigma > 0.0))
    throw std::domain_error("pdf_ratio_boundary: sigma must be > 0");

  const double s2l = lo.sigma * lo.sigma;
  const double s2h = hi.sigma * hi.sigma;
  // log(p_lo/p_hi) = log(s_hi/s_lo) - (x-m_lo)^2/(2 s2l) + (x-m_hi)^2/(2 s2h),
  // strictly decreasing between the means. Multiplying by 2 s2l s2h gives
  //   s2l (x-m_hi)^2 - s2h (x-m_lo)^2 = 2 s2l s2h (log_ratio - log(s_hi/s_lo)).
  const double rhs = 2.0 * s2l * s2h * (log_ratio - std::log(hi.sigma / lo.sigma));
  const double a = s2l - s2h;
  const double b = -2.0 * (s2l * hi.mean - s2h * lo.mean);
  const double c = s2l * hi.mean * hi.mean - s2h * lo.mean * lo.mean - rhs;

  auto in_range = [&](double x) { return x > lo.mean && x < hi.mean; };
  if (std::abs(a) < 1e-14 * (s2l + s2h)) {
    if (b == 0.0) throw std::domain_error("pdf_ratio_boundary: degenerate quadratic");
    double x = -c / b;
    if (!in_range(x)) throw std::domain_error("pdf_ratio_boundary: no crossing between the means");
    return x;
  }
  double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) throw std::domain_error("pdf_ratio_boundary: no crossing between the means");
  double sq = std::sqrt(disc);
  double r1 = (-b - sq) / (2.0 * a);
  double r2 = (-b + sq) / (2.0 * a);
  bool ok1 = in_range(r1), ok2 = in_range(r2);
  // Monotonicity on the open interval admits at most one root there; both
  // flags only fire in the near-tangent case where the roots coincide.
  if (ok1 && ok2) {
    auto resid = [&](double x) {
      return std::abs(std::log(hi.sigma / lo.sigma) - (x - lo.mean) * (x - lo.mean) / (2.0 * s2l) +
                      (x - hi.mean) * (x - hi.mean) / (2.0 * s2h) - log_ratio);
    };
    return resid(r1) <= resid(r2) ? r1 : r2;
  }
  if (ok1) return r1;
  if (ok2) return r2;
  throw std::domain_error("pdf_ratio_boundary: no crossing between the means");
}

std::array<double, 3> hard_boundaries(const FlashModel& model) {
  std::array<double, 3> refs;
  for (int i = 0; i < 3; ++i) {
    const auto& lo = model.states[i];
    const auto& hi = model.states[i + 1];
    if (!(lo.mean < hi.mean)) throw std::domain_error("hard_boundaries: degenerate model");
    if (lo.sigma == hi.sigma) {
      refs[i] = 0.5 * (lo.mean + hi.mean);
    } else {
      refs[i] = pdf_ratio_boundary(lo, hi, 0.0);
    }
  }
  return refs;
}

double gaussian_region_mass(const GaussianState& s, double lo, double hi) {
  double zl = (lo - s.mean) / s.sigma;
  double zh = (hi - s.mean) / s.sigma;
  // Evaluate through whichever tail keeps both Q arguments nonnegative; the
  // one-sided form cancels catastrophically for regions left of the mean,
  // where both Q values round to 1.
  double mass = zh <= 0.0 ? q_func(-zh) - q_func(-zl) : q_func(zl) - q_func(zh);
  return std::max(mass, 0.0);
}

RawErrorReport raw_error_probability(const FlashModel& model) {
  auto refs = hard_boundaries(model);
  RawErrorReport rep;
  auto tail = [&](int state, double ref) {
    const auto& s = model.states[state];
    return q_func(std::abs(ref - s.mean) / s.sigma);
  };
  rep.per_state[0] = tail(0, refs[0]);
  rep.per_state[1] = tail(1, refs[0]) + tail(1, refs[1]);
  rep.per_state[2] = tail(2, refs[1]) + tail(2, refs[2]);
  rep.per_state[3] = tail(3, refs[2]);
  double sum = 0.0;
  for (double p : rep.per_state) sum += p;
  rep.state_error_rate = 0.25 * sum;
  return rep;
}

RawErrorReport raw_error_probability(const FlashModel& model, const MappingScheme& mapping) {
  RawErrorReport rep = raw_error_probability(model);
  auto refs = hard_boundaries(model);
  const double inf = std::numeric_limits<double>::infinity();
  std::array<double, 5> edges{-inf, refs[0], refs[1], refs[2], inf};
  // Exact accounting over the four sensed regions: each misdetection flips the
  // Hamming distance between the programmed and sensed symbols.
  double bit_errors = 0.0;
  for (int s = 0; s < 4; ++s) {
    for (int r = 0; r < 4; ++r) {
      if (r == s) continue;
      double mass = gaussian_region_mass(model.states[s], edges[r], edges[r + 1]);
      bit_errors += mass * hamming2(mapping.symbols[s], mapping.symbols[r]);
    }
  }
  rep.bit_error_rate = bit_errors / (4.0 * 2.0);  // equiprobable states, two bits per cell
  return rep;
}

FlashModel degrade(const FlashModel& model, const WearState& wear) {
  wear.validate();
  double db = wear.snr_decay_db_per_kilocycle * static_cast<double>(wear.pe_cycles) / 1000.0;
  double factor = std::pow(10.0, db / 20.0);
  FlashModel out = model;
  for (auto& s : out.states) s.sigma *= factor;
  return out;
}

}  // namespace flashpolar
