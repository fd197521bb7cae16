#include "flashpolar/llr_engine.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "flashpolar/math_util.hpp"

namespace flashpolar {

BitRoleSets bit_role_sets(const MappingScheme& mapping) {
  mapping.validate();
  BitRoleSets roles;
  for (int s = 0; s < 4; ++s) {
    (mapping.msb_of(s) ? roles.msb_ones : roles.msb_zeros).push_back(s);
    (mapping.lsb_of(s) ? roles.lsb_ones : roles.lsb_zeros).push_back(s);
  }
  return roles;
}

std::pair<double, double> pure_soft_llr(double voltage, const FlashModel& model,
                                        const MappingScheme& mapping) {
  const double ninf = -std::numeric_limits<double>::infinity();
  double lp[4];
  for (int s = 0; s < 4; ++s) lp[s] = model.log_pdf(s, voltage);
  double msb_z = ninf, msb_o = ninf, lsb_z = ninf, lsb_o = ninf;
  for (int s = 0; s < 4; ++s) {
    double& m = mapping.msb_of(s) ? msb_o : msb_z;
    double& l = mapping.lsb_of(s) ? lsb_o : lsb_z;
    m = log_sum_exp(m, lp[s]);
    l = log_sum_exp(l, lp[s]);
  }
  return {clamp_llr(msb_z - msb_o), clamp_llr(lsb_z - lsb_o)};
}

std::pair<double, double> QuantizedLlrTable::lookup(int region) const {
  if (region < 0 || region >= static_cast<int>(region_llr.size()))
    throw std::out_of_range("llr table: region index out of range");
  return region_llr[region];
}

void QuantizedLlrTable::write_csv(std::ostream& out) const {
  out << "region_lo,region_hi,llr_msb,llr_lsb\n";
  const double inf = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < region_llr.size(); ++r) {
    double lo = r == 0 ? -inf : refs[r - 1];
    double hi = r == refs.size() ? inf : refs[r];
    out << lo << ',' << hi << ',' << region_llr[r].first << ',' << region_llr[r].second << '\n';
  }
}

QuantizedLlrTable quantized_llr_table(const Boundaries& boundaries, const FlashModel& model,
                                      const MappingScheme& mapping) {
  model.validate();
  QuantizedLlrTable table;
  table.refs = boundaries.merged();
  const double inf = std::numeric_limits<double>::infinity();
  const int regions = static_cast<int>(table.refs.size()) + 1;
  table.region_llr.reserve(regions);
  for (int r = 0; r < regions; ++r) {
    double lo = r == 0 ? -inf : table.refs[r - 1];
    double hi = r == regions - 1 ? inf : table.refs[r];
    double mass[4];
    for (int s = 0; s < 4; ++s) mass[s] = gaussian_region_mass(model.states[s], lo, hi);
    auto bit_llr = [&](auto bit_of) {
      double z = 0.0, o = 0.0;
      for (int s = 0; s < 4; ++s) (bit_of(s) ? o : z) += mass[s];
      if (z == 0.0 && o == 0.0) return 0.0;  // both underflow: no information
      if (o == 0.0) return kLlrClamp;
      if (z == 0.0) return -kLlrClamp;
      return clamp_llr(std::log(z / o));
    };
    table.region_llr.emplace_back(bit_llr([&](int s) { return mapping.msb_of(s); }),
                                  bit_llr([&](int s) { return mapping.lsb_of(s); }));
  }
  return table;
}

int sense_region(double voltage, std::span<const double> refs, long* sense_ops) {
  int region = 0;
  for (double ref : refs) {
    if (sense_ops) ++*sense_ops;
    if (!sense_compare(voltage, ref)) break;
    ++region;
  }
  return region;
}

std::pair<Tc2, Tc2> binary_llrs(double voltage, const std::array<double, 3>& hard_refs,
                                const MappingScheme& mapping, long* sense_ops) {
  auto cmp = [&](double ref) {
    if (sense_ops) ++*sense_ops;
    return sense_compare(voltage, ref);
  };
  // Middle reference first, then the one bracketing the surviving pair.
  int state;
  if (cmp(hard_refs[1]))
    state = cmp(hard_refs[2]) ? 3 : 2;
  else
    state = cmp(hard_refs[0]) ? 1 : 0;
  std::uint8_t sym = mapping.symbols[state];
  Tc2 msb = (sym & 0b10) ? Tc2::minus_one() : Tc2::plus_one();
  Tc2 lsb = (sym & 0b01) ? Tc2::minus_one() : Tc2::plus_one();
  return {msb, lsb};
}

}  // namespace flashpolar
