#pragma once
#include <array>
#include <span>
#include <utility>
#include <vector>

#include "flashpolar/flash_model.hpp"
#include "flashpolar/mapping.hpp"

namespace flashpolar {

// Read-reference layout: the three hard references plus any soft references.
// merged() returns the full strictly-increasing list the sensing circuit
// would sweep.
struct Boundaries {
  std::array<double, 3> hard_refs{};
  std::vector<double> soft_refs;

  std::vector<double> merged() const;  // throws unless strictly increasing
};

// Binary-input discrete memoryless channel, rows = P(Y | X = 0/1).
struct DiscreteChannel {
  std::vector<std::vector<double>> rows;
  void validate() const;  // two rows, entries >= 0, each summing to 1 (1e-9)
};

// Shannon entropy in bits; 0 log 0 = 0, entries must be >= 0.
double entropy_bits(std::span<const double> probs);

// I(X;Y) for equiprobable binary input.
double mutual_information(const DiscreteChannel& ch);

// Soft boundary pair (B_l, B_r) around overlap region k (between states k and
// k+1) where the adjacent-state PDF ratio equals `ratio` on each side.
std::pair<double, double> constant_ratio_boundaries(const FlashModel& model, int region,
                                                    double ratio);

Boundaries hard_only_boundaries(const FlashModel& model);
// Hard references plus the constant-ratio pair of every overlap region.
Boundaries constant_ratio_layout(const FlashModel& model, double ratio);

// --- per-bit quantized channel models -------------------------------------
// Valid for mappings where the LSB splits only across the middle boundary and
// the MSB only across the outer boundaries (Gray and its relabelings).

// Hard-decision per-bit channels: sense with the three hard references only,
// output the mapped bit. Two outputs; defined for every mapping.
DiscreteChannel hard_lsb_channel(const FlashModel& model, const MappingScheme& mapping);
DiscreteChannel hard_msb_channel(const FlashModel& model, const MappingScheme& mapping);

// LSB with two soft references, outputs {0, erased, 1}.
DiscreteChannel lsb_channel(const FlashModel& model, const MappingScheme& mapping, double q3,
                            double q4);
// LSB in the practical layout: soft pair straddling the middle hard reference,
// outputs {strong 0, weak 0, weak 1, strong 1}.
DiscreteChannel practical_lsb_channel(const FlashModel& model, const MappingScheme& mapping,
                                      double hard_mid, double q3, double q4);
// MSB with a soft pair per outer overlap region, outputs
// {strong 0 (both tails), weak lower, strong 1, weak upper}.
DiscreteChannel msb_channel(const FlashModel& model, const MappingScheme& mapping, double q1,
                            double q2, double q5, double q6);
// MSB in the practical layout: the hard references subdivide both weak zones,
// six outputs.
DiscreteChannel practical_msb_channel(const FlashModel& model, const MappingScheme& mapping,
                                      double hard_lo, double hard_hi, double q1, double q2,
                                      double q5, double q6);

// --- per-bit mutual-information maximization -------------------------------
// Deterministic search: coarse grid then cyclic golden-section refinement,
// each soft reference confined between the adjacent state means.

// (q3, q4) maximizing the LSB erasure-channel MI.
std::pair<double, double> smmi_lsb(const FlashModel& model, const MappingScheme& mapping);
// (q1, q2, q5, q6) maximizing the MSB channel MI, optimized per overlap
// region (two 2-D problems, alternated).
std::array<double, 4> smmi_msb(const FlashModel& model, const MappingScheme& mapping);
// Full practical layout: hard references fixed at the PDF intersections, six
// soft references maximizing the practical per-bit channel MIs.
Boundaries practical_smmi(const FlashModel& model, const MappingScheme& mapping);

}  // namespace flashpolar
