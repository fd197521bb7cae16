#pragma once
#include <array>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "flashpolar/binary_sc.hpp"
#include "flashpolar/boundary_opt.hpp"
#include "flashpolar/flash_model.hpp"
#include "flashpolar/mapping.hpp"

namespace flashpolar {

// For each bit of the cell symbol, the states where that bit is 0 (Z set) and
// 1 (O set) under a mapping.
struct BitRoleSets {
  std::vector<int> msb_zeros, msb_ones;
  std::vector<int> lsb_zeros, lsb_ones;
};
BitRoleSets bit_role_sets(const MappingScheme& mapping);

// Exact-read LLRs (msb, lsb) from the full PDFs, log(P(bit=0)/P(bit=1)),
// clamped to +/-1e3.
std::pair<double, double> pure_soft_llr(double voltage, const FlashModel& model,
                                        const MappingScheme& mapping);

// Per-region LLR pairs for a reference layout: region r spans
// [refs[r-1], refs[r]) with infinite outer limits. Regions where both bit-0
// and bit-1 masses underflow get LLR 0.
struct QuantizedLlrTable {
  std::vector<double> refs;
  std::vector<std::pair<double, double>> region_llr;  // (msb, lsb), refs.size()+1 entries

  std::pair<double, double> lookup(int region) const;
  void write_csv(std::ostream& out) const;
};

QuantizedLlrTable quantized_llr_table(const Boundaries& boundaries, const FlashModel& model,
                                      const MappingScheme& mapping);

// Sequential thresholding from the lowest reference, stopping at the first
// reference above the voltage; returns the half-open region index. Each
// consulted reference is one sense_compare (worst case all of them).
int sense_region(double voltage, std::span<const double> refs, long* sense_ops = nullptr);

// Two-step binary detection: middle hard reference first (decides the Gray
// LSB), then the lower or upper one. Exactly two sense ops per cell; outputs
// are +/-1, never zero.
std::pair<Tc2, Tc2> binary_llrs(double voltage, const std::array<double, 3>& hard_refs,
                                const MappingScheme& mapping, long* sense_ops = nullptr);

}  // namespace flashpolar
