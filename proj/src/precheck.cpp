#include "flashpolar/precheck.hpp"

#include <stdexcept>

#include "flashpolar/llr_engine.hpp"

namespace flashpolar {

std::string to_string(DecoderKind kind) {
  switch (kind) {
    case DecoderKind::BinaryInput:
      return "binary";
    case DecoderKind::QuantizedSoft:
      return "quantized";
    case DecoderKind::PureSoft:
      return "pure";
  }
  throw std::invalid_argument("unknown decoder kind");
}

void PrecheckThresholds::validate() const {
  if (!(0.0 < t_binary_max && t_binary_max < t_quantized_max && t_quantized_max < 1.0))
    throw std::invalid_argument("precheck thresholds: need 0 < binary < quantized < 1");
}

double estimate_pe(const FlashModel& model, const WearState& wear) {
  return raw_error_probability(degrade(model, wear)).state_error_rate;
}

DecoderKind select_decoder(double p_e, const PrecheckThresholds& thresholds) {
  thresholds.validate();
  if (!(p_e >= 0.0 && p_e <= 1.0))
    throw std::invalid_argument("select_decoder: p_e outside [0, 1]");
  if (p_e <= thresholds.t_binary_max) return DecoderKind::BinaryInput;
  if (p_e <= thresholds.t_quantized_max) return DecoderKind::QuantizedSoft;
  return DecoderKind::PureSoft;
}

PageDecodeResult decode_page_with(DecoderKind kind, std::span<const double> voltages,
                                  const FlashModel& channel_model, const PolarCode& code,
                                  const Boundaries& boundaries, const MappingScheme& mapping) {
  code.validate();
  channel_model.validate();
  mapping.validate();
  const int n = code.block_length;
  if (static_cast<int>(voltages.size()) * 2 != n)
    throw std::invalid_argument("decode_page: need one cell voltage per two codeword bits");

  PageDecodeResult res;
  res.used = kind;
  switch (kind) {
    case DecoderKind::BinaryInput: {
      std::vector<Tc2> chan(n);
      for (int j = 0; j < n / 2; ++j) {
        auto [msb, lsb] = binary_llrs(voltages[j], boundaries.hard_refs, mapping, &res.sense_ops);
        chan[2 * j] = msb;
        chan[2 * j + 1] = lsb;
      }
      res.u_hat = binary_sc_decode(chan, code);
      break;
    }
    case DecoderKind::QuantizedSoft: {
      QuantizedLlrTable table = quantized_llr_table(boundaries, channel_model, mapping);
      std::vector<double> llrs(n);
      for (int j = 0; j < n / 2; ++j) {
        int region = sense_region(voltages[j], table.refs, &res.sense_ops);
        auto [msb, lsb] = table.lookup(region);
        llrs[2 * j] = msb;
        llrs[2 * j + 1] = lsb;
      }
      res.u_hat = sc_decode(llrs, code).u_hat;
      break;
    }
    case DecoderKind::PureSoft: {
      std::vector<double> llrs(n);
      for (int j = 0; j < n / 2; ++j) {
        auto [msb, lsb] = pure_soft_llr(voltages[j], channel_model, mapping);
        llrs[2 * j] = msb;
        llrs[2 * j + 1] = lsb;
        ++res.sense_ops;  // one exact read per cell
      }
      res.u_hat = sc_decode(llrs, code).u_hat;
      break;
    }
  }
  return res;
}

PageDecodeResult decode_page(std::span<const double> voltages, const FlashModel& model,
                             const WearState& wear, const PrecheckThresholds& thresholds,
                             const PolarCode& code, const Boundaries& boundaries,
                             const MappingScheme& mapping) {
  FlashModel worn = degrade(model, wear);
  DecoderKind kind = select_decoder(raw_error_probability(worn).state_error_rate, thresholds);
  return decode_page_with(kind, voltages, worn, code, boundaries, mapping);
}

}  // namespace flashpolar
