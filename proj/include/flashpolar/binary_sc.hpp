#pragma once
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "flashpolar/polar.hpp"

namespace flashpolar {

// 2-bit two's-complement message alphabet {0, +1, -1}: 00, 01, 11.
// The -2 pattern (10) never occurs; arithmetic saturates to +/-1 first.
class Tc2 {
 public:
  constexpr Tc2() : bits_(0) {}

  static constexpr Tc2 zero() { return Tc2(0b00); }
  static constexpr Tc2 plus_one() { return Tc2(0b01); }
  static constexpr Tc2 minus_one() { return Tc2(0b11); }
  static Tc2 from_bits(int msb, int lsb);  // rejects the 10 pattern
  static Tc2 from_value(int v);            // v in {-1, 0, +1}

  int msb() const { return (bits_ >> 1) & 1; }
  int lsb() const { return bits_ & 1; }
  std::uint8_t raw() const { return bits_; }
  int value() const { return lsb() ? (msb() ? -1 : 1) : 0; }

  bool operator==(const Tc2&) const = default;

 private:
  explicit constexpr Tc2(std::uint8_t bits) : bits_(bits) {}
  std::uint8_t bits_;
};

// Type I processing element: Z = X + Y (u_prev = 0) or -X + Y (u_prev = 1),
// saturated to +/-1. Boolean-equation implementation.
Tc2 type1_pe(int u_prev, Tc2 x, Tc2 y);
// Same element as a direct truth-table lookup.
Tc2 type1_pe_lut(int u_prev, Tc2 x, Tc2 y);

// Type II processing element: zero if either input is zero, else the sign
// product (MSB xor, LSB forced to 1). Boolean-equation implementation.
Tc2 type2_pe(Tc2 x, Tc2 y);
Tc2 type2_pe_lut(Tc2 x, Tc2 y);

// SC decoding on the Tc2 alphabet: the schedule of sc_decode with f/g replaced
// by the Type II/Type I elements. Root value -1 decides bit 1; 0 and +1 decide
// bit 0. Optional trace stream logs every stage's values for one frame.
std::vector<std::uint8_t> binary_sc_decode(const std::vector<Tc2>& channel_llrs,
                                           const PolarCode& code, PeCounters* counters = nullptr,
                                           std::ostream* trace = nullptr);

}  // namespace flashpolar
