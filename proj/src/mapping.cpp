#include "flashpolar/mapping.hpp"

#include <algorithm>
#include <stdexcept>

namespace flashpolar {

int MappingScheme::state_of(std::uint8_t symbol) const {
  for (int s = 0; s < 4; ++s)
    if (symbols[s] == symbol) return s;
  throw std::invalid_argument("mapping: symbol out of range");
}

bool MappingScheme::is_gray() const {
  for (int s = 0; s < 3; ++s)
    if (hamming2(symbols[s], symbols[s + 1]) != 1) return false;
  return true;
}

std::string MappingScheme::name() const {
  // Column vectors (msb, lsb): A=00, B=10, C=11, D=01.
  static constexpr char letter[4] = {'A', 'D', 'B', 'C'};
  std::string out;
  for (int s = 0; s < 4; ++s) out += letter[symbols[s]];
  return out;
}

void MappingScheme::validate() const {
  std::array<bool, 4> seen{};
  for (auto sym : symbols) {
    if (sym > 3) throw std::invalid_argument("mapping: symbol out of range");
    if (seen[sym]) throw std::invalid_argument("mapping: duplicate symbol");
    seen[sym] = true;
  }
}

MappingScheme gray_scheme() { return MappingScheme{{0b00, 0b10, 0b11, 0b01}}; }

MappingScheme direct_scheme() { return MappingScheme{{0b00, 0b01, 0b10, 0b11}}; }

int hamming2(std::uint8_t a, std::uint8_t b) {
  std::uint8_t d = a ^ b;
  return ((d >> 1) & 1) + (d & 1);
}

int count_changes(const MappingScheme& scheme) {
  int changes = 0;
  for (int s = 0; s < 3; ++s) changes += hamming2(scheme.symbols[s], scheme.symbols[s + 1]);
  return changes;
}

std::vector<std::pair<MappingScheme, int>> enumerate_schemes() {
  std::array<std::uint8_t, 4> perm{0, 1, 2, 3};
  std::vector<std::pair<MappingScheme, int>> out;
  do {
    MappingScheme scheme{{perm[0], perm[1], perm[2], perm[3]}};
    out.emplace_back(scheme, count_changes(scheme));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

double expected_raw_bit_errors(const MappingScheme& scheme, const RegionErrorProfile& profile) {
  if (profile.p1 < 0.0 || profile.p2 < 0.0 || profile.p3 < 0.0)
    throw std::invalid_argument("region error profile: negative probability");
  const double p[3] = {profile.p1, profile.p2, profile.p3};
  double errors = 0.0;
  for (int s = 0; s < 3; ++s) errors += p[s] * hamming2(scheme.symbols[s], scheme.symbols[s + 1]);
  return errors;
}

}  // namespace flashpolar
