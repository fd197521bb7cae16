#pragma once
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "flashpolar/boundary_opt.hpp"
#include "flashpolar/flash_model.hpp"
#include "flashpolar/polar.hpp"

namespace flashpolar {

enum class DecoderKind { BinaryInput, QuantizedSoft, PureSoft };

std::string to_string(DecoderKind kind);

// Raw-error thresholds below which the cheaper front-ends are trusted.
struct PrecheckThresholds {
  double t_binary_max = 0.0;
  double t_quantized_max = 0.0;
  void validate() const;  // 0 < t_binary_max < t_quantized_max < 1
};

// Predicted raw state-error probability of the worn channel.
double estimate_pe(const FlashModel& model, const WearState& wear);

// Cheapest decoder whose operating region covers p_e; ties go to the cheaper
// side.
DecoderKind select_decoder(double p_e, const PrecheckThresholds& thresholds);

struct PageDecodeResult {
  std::vector<std::uint8_t> u_hat;
  DecoderKind used = DecoderKind::BinaryInput;
  long sense_ops = 0;  // pure-soft reads count 1 per cell
};

// Full page pipeline: estimate wear, pick the decoder, sense accordingly and
// run SC. Cell j carries codeword bits (2j, 2j+1) = (msb, lsb).
PageDecodeResult decode_page(std::span<const double> voltages, const FlashModel& model,
                             const WearState& wear, const PrecheckThresholds& thresholds,
                             const PolarCode& code, const Boundaries& boundaries,
                             const MappingScheme& mapping);

// Same pipeline with the decoder choice forced; `channel_model` is the
// (already degraded) model the voltages came from.
PageDecodeResult decode_page_with(DecoderKind kind, std::span<const double> voltages,
                                  const FlashModel& channel_model, const PolarCode& code,
                                  const Boundaries& boundaries, const MappingScheme& mapping);

}  // namespace flashpolar
