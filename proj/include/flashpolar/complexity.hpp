#pragma once
#include <cstdint>
#include <optional>
#include <string>

namespace flashpolar {

// Analytic operation counts per decoded frame.
struct OpCount {
  std::string label;
  long long additions = 0;
  long long xors = 0;
  std::optional<long long> per_iteration;
};

// Soft min-sum SC: N log2 N add/compare operations.
OpCount sc_ops(int block_length);

// Tc2 SC: half the processing elements are Type I (adders), half Type II
// (XOR-class logic).
OpCount binary_sc_ops(int block_length);

// Layered belief propagation, per iteration (n-k)(2 dc + 1) additions for the
// check/variable updates plus 2 n dv for message accumulation.
OpCount lbp_ops(int n, int k, int dv, int dc, int iterations);

// Bit flipping: one flip decision over n-1 compares per iteration.
OpCount bitflip_ops(int n, int iterations);

}  // namespace flashpolar
