#include "flashpolar/complexity.hpp"

#include <bit>
#include <stdexcept>

namespace flashpolar {

namespace {

int log2_exact(int n) {
  if (n < 2 || !std::has_single_bit(static_cast<unsigned>(n)))
    throw std::invalid_argument("complexity: block length must be a power of two >= 2");
  return std::countr_zero(static_cast<unsigned>(n));
}

}  // namespace

OpCount sc_ops(int block_length) {
  const long long n = block_length;
  const long long stages = log2_exact(block_length);
  return {"sc", n * stages, 0, std::nullopt};
}

OpCount binary_sc_ops(int block_length) {
  const long long n = block_length;
  const long long stages = log2_exact(block_length);
  // N/2 processing elements per stage of each type: Type I saturating adders,
  // Type II XOR-class logic.
  return {"binary-sc", n / 2 * stages, n / 2 * stages, std::nullopt};
}

OpCount lbp_ops(int n, int k, int dv, int dc, int iterations) {
  if (n <= 0 || k <= 0 || k >= n || dv <= 0 || dc <= 0 || iterations <= 0)
    throw std::invalid_argument("lbp_ops: parameters must be positive with k < n");
  const long long per_iter =
      static_cast<long long>(n - k) * (2 * dc + 1) + 2LL * n * dv;
  return {"lbp", per_iter * iterations, 0, per_iter};
}

OpCount bitflip_ops(int n, int iterations) {
  if (n <= 1 || iterations <= 0)
    throw std::invalid_argument("bitflip_ops: need n > 1 and positive iterations");
  const long long per_iter = n - 1;  // one argmax sweep per flip decision
  return {"bit-flip", per_iter * iterations, 0, per_iter};
}

}  // namespace flashpolar
