#pragma once
#include <cstdint>
#include <string>
#include <vector>

namespace flashpolar {

// Quasi-cyclic LDPC code from a masked array-style prototype: block_rows x
// block_cols blocks of size `circulant`, each either zero (-1) or a cyclic
// shift. Every block column holds exactly dv nonzero blocks and every block
// row dc of them.
struct QcLdpcCode {
  int n = 0;
  int k = 0;
  int circulant = 0;
  int dv = 0;
  int dc = 0;
  std::vector<std::vector<int>> prototype;  // shift value or -1 per block

  // Expanded Tanner graph.
  std::vector<std::vector<int>> check_neighbors;  // per check row, bit indices
  std::vector<std::vector<int>> bit_neighbors;    // per bit, check indices

  // Encoder state from Gaussian elimination of H.
  int rank = 0;
  std::vector<int> message_positions;              // K free columns carrying the message
  std::vector<int> pivot_positions;                // one per reduced row
  std::vector<std::vector<std::uint64_t>> reduced_rows;  // RREF rows, bit-packed

  void validate() const;
};

// Deterministic for a given seed: the mask and shifts are drawn from the seed,
// then 4-cycles are repaired by min-conflicts resampling where possible.
QcLdpcCode construct_qc(int n, int k, int circulant, int dv, std::uint64_t seed);

// True when the expanded Tanner graph has no length-4 cycle (girth >= 6).
bool four_cycle_free(const QcLdpcCode& code);

// Text form of the prototype: one row per line, -1 for zero blocks.
void save_prototype(const QcLdpcCode& code, const std::string& path);
std::vector<std::vector<int>> load_prototype(const std::string& path);

// Systematic encoding: message bits on the free columns, parities solved so
// H x = 0 exactly. Surplus free columns stay zero.
std::vector<std::uint8_t> encode_ldpc(const std::vector<std::uint8_t>& message,
                                      const QcLdpcCode& code);

struct BitFlipResult {
  std::vector<std::uint8_t> codeword;
  bool converged = false;
  int iterations = 0;
};

// Gallager-style single-bit flipping: each iteration flips the bit with the
// most unsatisfied checks (lowest index on ties) until the syndrome clears or
// max_iter is reached.
BitFlipResult bitflip_decode(const std::vector<std::uint8_t>& received, const QcLdpcCode& code,
                             int max_iter = 15);

}  // namespace flashpolar
