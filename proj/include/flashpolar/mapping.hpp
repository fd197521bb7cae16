#pragma once
#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace flashpolar {

// Assignment of 2-bit symbols to the four cell states, state 0 = lowest
// voltage. symbols[s] packs the pair as (msb << 1) | lsb.
struct MappingScheme {
  std::array<std::uint8_t, 4> symbols;

  int msb_of(int state) const { return (symbols[state] >> 1) & 1; }
  int lsb_of(int state) const { return symbols[state] & 1; }
  int state_of(std::uint8_t symbol) const;

  // True when every adjacent state pair differs in exactly one bit.
  bool is_gray() const;

  // Letter code, one of the 24 permutations of ABCD where
  // A=00, B=10, C=11, D=01 in (msb, lsb) order.
  std::string name() const;

  void validate() const;  // throws unless symbols are a permutation of {0..3}

  bool operator==(const MappingScheme&) const = default;
};

// States (0,1,2,3) -> (00, 10, 11, 01): adjacent states differ in one bit.
MappingScheme gray_scheme();
// States (0,1,2,3) -> (00, 01, 10, 11): binary counting order.
MappingScheme direct_scheme();

int hamming2(std::uint8_t a, std::uint8_t b);

// Sum over both bit rows of the number of adjacent-state bit changes.
int count_changes(const MappingScheme& scheme);

// All 24 symbol permutations with their change counts.
std::vector<std::pair<MappingScheme, int>> enumerate_schemes();

// Probability that a cell programmed to state k is sensed as state k+1 or
// vice versa, one entry per overlap region between adjacent states.
struct RegionErrorProfile {
  double p1 = 0.0, p2 = 0.0, p3 = 0.0;
};

// Expected raw bit errors per cell: sum of region probability times the
// Hamming distance between the adjacent states' symbols.
double expected_raw_bit_errors(const MappingScheme& scheme, const RegionErrorProfile& profile);

}  // namespace flashpolar
