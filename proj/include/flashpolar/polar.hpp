#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "flashpolar/flash_model.hpp"
#include "flashpolar/mapping.hpp"

namespace flashpolar {

// Polar code over the natural-order generator F^{(x)n} (no bit-reversal).
// frozen[i] == 1 marks a frozen source position; frozen values are all zero.
struct PolarCode {
  int block_length = 0;  // N, power of two
  int info_length = 0;   // K
  std::vector<std::uint8_t> frozen;

  std::vector<int> frozen_positions() const;
  std::vector<int> info_positions() const;
  void validate() const;
};

PolarCode code_from_frozen(int block_length, const std::vector<int>& frozen_positions);

// Genie-aided Monte Carlo construction on the flash channel: random frames are
// pushed through program/pure-soft-LLR/SC with every decision corrected to the
// transmitted bit, and the N-K positions with the most decision errors are
// frozen. Deterministic for a given seed. Throws if the trials produce no
// errors at all (nothing to order) while 0 < K < N.
PolarCode construct_code(int block_length, int info_length, const FlashModel& design_model,
                         const MappingScheme& mapping, long trials, std::uint64_t seed);

// One frozen position index per line, ascending.
void save_frozen_set(const PolarCode& code, const std::string& path);
PolarCode load_frozen_set(int block_length, const std::string& path);

// x = u * F^{(x)n} over GF(2); involution.
std::vector<std::uint8_t> polar_transform(std::vector<std::uint8_t> bits);

// Validates frozen positions are zero in u, then applies the transform.
std::vector<std::uint8_t> encode(const std::vector<std::uint8_t>& u, const PolarCode& code);

// Min-sum check node; sign(0) = 0, so a zero input pins the output to zero.
inline double f_node(double a, double b) {
  double s = static_cast<double>(((a > 0) - (a < 0)) * ((b > 0) - (b < 0)));
  return s * std::min(std::abs(a), std::abs(b));
}

// Variable node: the partial sum u_prev flips the first branch.
inline double g_node(double a, double b, int u_prev) {
  return (u_prev ? -a : a) + b;
}

struct PeCounters {
  std::uint64_t type1 = 0;  // g-side activations
  std::uint64_t type2 = 0;  // f-side activations
};

struct ScResult {
  std::vector<std::uint8_t> u_hat;  // decoded source word (frozen positions zero)
  std::vector<std::uint8_t> x_hat;  // its re-encoded codeword
};

// Successive cancellation with min-sum updates; LLR >= 0 decides bit 0.
ScResult sc_decode(const std::vector<double>& channel_llrs, const PolarCode& code,
                   PeCounters* counters = nullptr);

}  // namespace flashpolar
