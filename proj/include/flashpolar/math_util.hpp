#pragma once
#include <algorithm>
#include <cmath>

namespace flashpolar {

// Soft LLR magnitudes are clamped to this before decoding.
inline constexpr double kLlrClamp = 1.0e3;

// Upper tail of the standard normal, Q(x) = P(Z >= x).
inline double q_func(double x) { return 0.5 * std::erfc(x * 0.70710678118654752440); }

inline double clamp_llr(double v) { return std::clamp(v, -kLlrClamp, kLlrClamp); }

// log(exp(a) + exp(b)) without overflow; tolerates -inf inputs.
inline double log_sum_exp(double a, double b) {
  if (a < b) std::swap(a, b);
  if (std::isinf(a) && a < 0) return a;
  return a + std::log1p(std::exp(b - a));
}

inline int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace flashpolar
