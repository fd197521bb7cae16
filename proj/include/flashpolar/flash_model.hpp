#pragma once
#include <array>
#include <optional>
#include <random>
#include <string>

#include "flashpolar/mapping.hpp"

namespace flashpolar {

struct GaussianState {
  double mean = 0.0;
  double sigma = 0.0;
  int state_index = 0;
};

// Four-level cell: one Gaussian threshold-voltage distribution per state,
// means strictly increasing with state index.
struct FlashModel {
  std::array<GaussianState, 4> states;
  std::string label;

  double pdf(int state, double v) const;
  double log_pdf(int state, double v) const;
  void validate() const;
};

FlashModel make_model(const std::array<double, 4>& means, const std::array<double, 4>& sigmas,
                      std::string label = "");

// sigma_k = multiplier_k * base_sigma.
FlashModel scaled_model(const std::array<double, 4>& means,
                        const std::array<double, 4>& sigma_multipliers, double base_sigma,
                        std::string label = "");

struct WearState {
  long pe_cycles = 0;
  double snr_decay_db_per_kilocycle = 0.13;
  void validate() const;
};

// Draws the threshold voltage of a cell programmed to `state`.
double program_cell(int state, const FlashModel& model, std::mt19937_64& rng);

// Hard read reference between each adjacent state pair, placed at the PDF
// intersection (midpoint for equal sigmas).
std::array<double, 3> hard_boundaries(const FlashModel& model);

// Solves p_lo(x) / p_hi(x) = exp(log_ratio) for x strictly between the two
// means. log_ratio = 0 gives the PDF intersection. Throws std::domain_error
// when no such crossing exists in the interval.
double pdf_ratio_boundary(const GaussianState& lo, const GaussianState& hi, double log_ratio);

// P(X in [lo, hi)) for the state's Gaussian; accepts infinite limits.
double gaussian_region_mass(const GaussianState& s, double lo, double hi);

struct RawErrorReport {
  // Probability that a cell programmed to state k crosses an adjacent hard
  // boundary (one tail for outer states, two for middle states).
  std::array<double, 4> per_state{};
  double state_error_rate = 0.0;             // mean over equiprobable states
  std::optional<double> bit_error_rate;      // set when a mapping was supplied
};

RawErrorReport raw_error_probability(const FlashModel& model);
RawErrorReport raw_error_probability(const FlashModel& model, const MappingScheme& mapping);

// Widens every sigma by the wear-induced SNR loss; means are unchanged.
FlashModel degrade(const FlashModel& model, const WearState& wear);

// Single sense op: 1 when the cell voltage is at or above the reference.
inline int sense_compare(double voltage, double reference) {
  return voltage >= reference ? 1 : 0;
}

}  // namespace flashpolar
