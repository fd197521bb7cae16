#include "flashpolar/ldpc.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace flashpolar {

namespace {

int positive_mod(int v, int q) { return ((v % q) + q) % q; }

struct MaskInfo {
  int block_rows = 0, block_cols = 0;
  std::vector<std::vector<int>> rows_of_col;        // sorted block rows per column
  std::vector<std::vector<int>> cols_of_row_pair;   // indexed r1 * block_rows + r2, r1 < r2
};

// Round-robin placement: column c occupies dv consecutive block rows starting
// at c*dv mod block_rows. Distinct rows per column, exactly dc per row.
MaskInfo build_mask(int block_rows, int block_cols, int dv) {
  MaskInfo m;
  m.block_rows = block_rows;
  m.block_cols = block_cols;
  m.rows_of_col.assign(block_cols, {});
  m.cols_of_row_pair.assign(block_rows * block_rows, {});
  for (int c = 0; c < block_cols; ++c) {
    for (int j = 0; j < dv; ++j) m.rows_of_col[c].push_back((c * dv + j) % block_rows);
    std::sort(m.rows_of_col[c].begin(), m.rows_of_col[c].end());
    const auto& rows = m.rows_of_col[c];
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = i + 1; j < rows.size(); ++j)
        m.cols_of_row_pair[rows[i] * block_rows + rows[j]].push_back(c);
  }
  return m;
}

// Number of expanded 4-cycles block (r, c) would join with shift s: one per
// other column sharing a row pair with equal shift difference.
long block_conflicts(const MaskInfo& mask, const std::vector<std::vector<int>>& shifts, int q,
                     int r, int c, int s) {
  long count = 0;
  for (int r2 : mask.rows_of_col[c]) {
    if (r2 == r) continue;
    int a = std::min(r, r2), b = std::max(r, r2);
    int d = r == a ? positive_mod(s - shifts[b][c], q) : positive_mod(shifts[a][c] - s, q);
    for (int c2 : mask.cols_of_row_pair[a * mask.block_rows + b]) {
      if (c2 == c) continue;
      if (positive_mod(shifts[a][c2] - shifts[b][c2], q) == d) ++count;
    }
  }
  return count;
}

long total_conflicts(const MaskInfo& mask, const std::vector<std::vector<int>>& shifts, int q) {
  long total = 0;
  std::vector<long> diff_count(q);
  for (int a = 0; a < mask.block_rows; ++a) {
    for (int b = a + 1; b < mask.block_rows; ++b) {
      const auto& cols = mask.cols_of_row_pair[a * mask.block_rows + b];
      if (cols.size() < 2) continue;
      std::fill(diff_count.begin(), diff_count.end(), 0);
      for (int c : cols) ++diff_count[positive_mod(shifts[a][c] - shifts[b][c], q)];
      for (long m : diff_count) total += m * (m - 1) / 2;
    }
  }
  return total;
}

}  // namespace

void QcLdpcCode::validate() const {
  if (n <= 0 || k <= 0 || k >= n || circulant <= 0 || dv <= 0 || dc <= 0)
    throw std::invalid_argument("qc ldpc: bad dimensions");
  if (n % circulant != 0 || (n - k) % circulant != 0)
    throw std::invalid_argument("qc ldpc: circulant must divide n and n-k");
  const int block_rows = (n - k) / circulant;
  const int block_cols = n / circulant;
  if (static_cast<int>(prototype.size()) != block_rows)
    throw std::invalid_argument("qc ldpc: prototype row count");
  std::vector<int> row_deg(block_rows, 0);
  for (int r = 0; r < block_rows; ++r) {
    if (static_cast<int>(prototype[r].size()) != block_cols)
      throw std::invalid_argument("qc ldpc: prototype column count");
    for (int c = 0; c < block_cols; ++c) {
      int s = prototype[r][c];
      if (s < -1 || s >= circulant) throw std::invalid_argument("qc ldpc: shift out of range");
      if (s >= 0) ++row_deg[r];
    }
  }
  for (int deg : row_deg)
    if (deg != dc) throw std::invalid_argument("qc ldpc: block row degree != dc");
  for (int c = 0; c < block_cols; ++c) {
    int deg = 0;
    for (int r = 0; r < block_rows; ++r)
      if (prototype[r][c] >= 0) ++deg;
    if (deg != dv) throw std::invalid_argument("qc ldpc: block column degree != dv");
  }
  if (static_cast<int>(check_neighbors.size()) != n - k ||
      static_cast<int>(bit_neighbors.size()) != n)
    throw std::invalid_argument("qc ldpc: tanner graph size");
  for (const auto& row : check_neighbors)
    if (static_cast<int>(row.size()) != dc)
      throw std::invalid_argument("qc ldpc: check degree != dc");
  for (const auto& col : bit_neighbors)
    if (static_cast<int>(col.size()) != dv)
      throw std::invalid_argument("qc ldpc: bit degree != dv");
  if (rank <= 0 || rank > n - k) throw std::invalid_argument("qc ldpc: rank out of range");
  if (static_cast<int>(message_positions.size()) != k)
    throw std::invalid_argument("qc ldpc: message position count");
  if (static_cast<int>(pivot_positions.size()) != rank ||
      static_cast<int>(reduced_rows.size()) != rank)
    throw std::invalid_argument("qc ldpc: encoder state size");
}

QcLdpcCode construct_qc(int n, int k, int circulant, int dv, std::uint64_t seed) {
  if (n <= 0 || k <= 0 || k >= n) throw std::invalid_argument("construct_qc: bad n, k");
  if (circulant <= 0 || n % circulant != 0 || (n - k) % circulant != 0)
    throw std::invalid_argument("construct_qc: circulant must divide n and n-k");
  const int block_rows = (n - k) / circulant;
  const int block_cols = n / circulant;
  if (dv <= 0 || dv > block_rows)
    throw std::invalid_argument("construct_qc: need 0 < dv <= (n-k)/circulant");
  if ((dv * block_cols) % block_rows != 0)
    throw std::invalid_argument("construct_qc: dv * block_cols must divide evenly into rows");
  const int dc = dv * block_cols / block_rows;
  if (dc > block_cols) throw std::invalid_argument("construct_qc: dc exceeds block columns");

  QcLdpcCode code;
  code.n = n;
  code.k = k;
  code.circulant = circulant;
  code.dv = dv;
  code.dc = dc;

  MaskInfo mask = build_mask(block_rows, block_cols, dv);
  std::mt19937_64 rng(seed);
  std::vector<std::vector<int>> shifts(block_rows, std::vector<int>(block_cols, 0));
  for (int c = 0; c < block_cols; ++c)
    for (int r : mask.rows_of_col[c]) shifts[r][c] = static_cast<int>(rng() % circulant);

  // Iterated min-conflicts on the shift of every nonzero block; keeps the
  // best assignment seen. Zero conflicts means girth >= 6; larger instances
  // may bottom out above zero, which bit flipping tolerates.
  auto best_shifts = shifts;
  long best_total = total_conflicts(mask, shifts, circulant);
  for (int pass = 0; pass < 50 && best_total > 0; ++pass) {
    bool changed = false;
    for (int c = 0; c < block_cols; ++c) {
      for (int r : mask.rows_of_col[c]) {
        long cur = block_conflicts(mask, shifts, circulant, r, c, shifts[r][c]);
        if (cur == 0) continue;
        int best_s = shifts[r][c];
        long best_c = cur;
        for (int s = 0; s < circulant; ++s) {
          long v = block_conflicts(mask, shifts, circulant, r, c, s);
          if (v < best_c) {
            best_c = v;
            best_s = s;
          }
        }
        if (best_s != shifts[r][c]) {
          shifts[r][c] = best_s;
          changed = true;
        }
      }
    }
    long t = total_conflicts(mask, shifts, circulant);
    if (t < best_total) {
      best_total = t;
      best_shifts = shifts;
    }
    if (!changed) break;
  }

  code.prototype.assign(block_rows, std::vector<int>(block_cols, -1));
  for (int c = 0; c < block_cols; ++c)
    for (int r : mask.rows_of_col[c]) code.prototype[r][c] = best_shifts[r][c];

  // Expand the Tanner graph: shift s connects check r*Q+i to bit c*Q+(i+s)%Q.
  code.check_neighbors.assign(n - k, {});
  code.bit_neighbors.assign(n, {});
  for (int r = 0; r < block_rows; ++r) {
    for (int c = 0; c < block_cols; ++c) {
      int s = code.prototype[r][c];
      if (s < 0) continue;
      for (int i = 0; i < circulant; ++i) {
        int check = r * circulant + i;
        int bit = c * circulant + (i + s) % circulant;
        code.check_neighbors[check].push_back(bit);
        code.bit_neighbors[bit].push_back(check);
      }
    }
  }
  for (auto& row : code.check_neighbors) std::sort(row.begin(), row.end());
  for (auto& col : code.bit_neighbors) std::sort(col.begin(), col.end());

  // Reduce H to RREF for the encoder; even dv forces rank < n-k (all rows sum
  // to zero), so surplus free columns beyond the k message slots stay zero.
  const int m = n - k;
  const int words = (n + 63) / 64;
  std::vector<std::vector<std::uint64_t>> rows(m, std::vector<std::uint64_t>(words, 0));
  for (int r = 0; r < m; ++r)
    for (int b : code.check_neighbors[r]) rows[r][b >> 6] |= std::uint64_t{1} << (b & 63);
  int rank = 0;
  std::vector<int> pivots;
  for (int col = 0; col < n && rank < m; ++col) {
    int sel = -1;
    for (int r = rank; r < m; ++r) {
      if ((rows[r][col >> 6] >> (col & 63)) & 1) {
        sel = r;
        break;
      }
    }
    if (sel < 0) continue;
    std::swap(rows[rank], rows[sel]);
    for (int r = 0; r < m; ++r) {
      if (r == rank || !((rows[r][col >> 6] >> (col & 63)) & 1)) continue;
      for (int w = 0; w < words; ++w) rows[r][w] ^= rows[rank][w];
    }
    pivots.push_back(col);
    ++rank;
  }
  rows.resize(rank);
  code.rank = rank;
  code.pivot_positions = pivots;
  code.reduced_rows = std::move(rows);
  std::vector<char> is_pivot(n, 0);
  for (int p : pivots) is_pivot[p] = 1;
  for (int col = 0; col < n && static_cast<int>(code.message_positions.size()) < k; ++col)
    if (!is_pivot[col]) code.message_positions.push_back(col);
  if (static_cast<int>(code.message_positions.size()) < k)
    throw std::runtime_error("construct_qc: fewer than k free columns");

  code.validate();
  return code;
}

bool four_cycle_free(const QcLdpcCode& code) {
  // Two checks sharing two bits form a length-4 cycle, which is the same as
  // one unordered bit pair appearing in two checks.
  std::vector<std::uint64_t> keys;
  for (const auto& row : code.check_neighbors) {
    for (std::size_t i = 0; i < row.size(); ++i)
      for (std::size_t j = i + 1; j < row.size(); ++j)
        keys.push_back(static_cast<std::uint64_t>(row[i]) * code.n + row[j]);
  }
  std::sort(keys.begin(), keys.end());
  return std::adjacent_find(keys.begin(), keys.end()) == keys.end();
}

void save_prototype(const QcLdpcCode& code, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_prototype: cannot open " + path);
  for (const auto& row : code.prototype) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? " " : "") << row[c];
    out << '\n';
  }
  if (!out) throw std::runtime_error("save_prototype: write failed for " + path);
}

std::vector<std::vector<int>> load_prototype(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_prototype: cannot open " + path);
  std::vector<std::vector<int>> proto;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::vector<int> vals;
    int v;
    while (row >> v) vals.push_back(v);
    if (!row.eof()) throw std::runtime_error("load_prototype: non-integer token in " + path);
    proto.push_back(std::move(vals));
  }
  if (proto.empty()) throw std::runtime_error("load_prototype: empty file " + path);
  for (const auto& row : proto)
    if (row.size() != proto[0].size())
      throw std::runtime_error("load_prototype: ragged rows in " + path);
  return proto;
}

std::vector<std::uint8_t> encode_ldpc(const std::vector<std::uint8_t>& message,
                                      const QcLdpcCode& code) {
  code.validate();
  if (static_cast<int>(message.size()) != code.k)
    throw std::invalid_argument("encode_ldpc: message length != k");
  for (auto b : message)
    if (b > 1) throw std::invalid_argument("encode_ldpc: message bits must be 0/1");
  std::vector<std::uint8_t> x(code.n, 0);
  for (int i = 0; i < code.k; ++i) x[code.message_positions[i]] = message[i];
  for (int r = 0; r < code.rank; ++r) {
    const int pivot = code.pivot_positions[r];
    std::uint8_t acc = 0;
    for (std::size_t w = 0; w < code.reduced_rows[r].size(); ++w) {
      std::uint64_t word = code.reduced_rows[r][w];
      while (word) {
        int bit = static_cast<int>(w) * 64 + std::countr_zero(word);
        if (bit != pivot) acc ^= x[bit];
        word &= word - 1;
      }
    }
    x[pivot] = acc;
  }
  return x;
}

BitFlipResult bitflip_decode(const std::vector<std::uint8_t>& received, const QcLdpcCode& code,
                             int max_iter) {
  code.validate();
  if (static_cast<int>(received.size()) != code.n)
    throw std::invalid_argument("bitflip_decode: received length != n");
  if (max_iter < 0) throw std::invalid_argument("bitflip_decode: negative max_iter");
  BitFlipResult res;
  res.codeword = received;
  for (auto& b : res.codeword)
    if (b > 1) throw std::invalid_argument("bitflip_decode: received bits must be 0/1");

  const int m = code.n - code.k;
  std::vector<std::uint8_t> unsat(m, 0);
  std::vector<int> votes(code.n, 0);
  int unsat_total = 0;
  for (int c = 0; c < m; ++c) {
    std::uint8_t s = 0;
    for (int b : code.check_neighbors[c]) s ^= res.codeword[b];
    unsat[c] = s;
    if (s) {
      ++unsat_total;
      for (int b : code.check_neighbors[c]) ++votes[b];
    }
  }

  while (res.iterations < max_iter && unsat_total > 0) {
    int flip = 0;
    for (int b = 1; b < code.n; ++b)
      if (votes[b] > votes[flip]) flip = b;
    res.codeword[flip] ^= 1;
    ++res.iterations;
    for (int c : code.bit_neighbors[flip]) {
      int delta = unsat[c] ? -1 : 1;  // toggling the bit toggles this check
      unsat[c] ^= 1;
      unsat_total += delta;
      for (int b : code.check_neighbors[c]) votes[b] += delta;
    }
  }
  res.converged = unsat_total == 0;
  return res;
}

}  // namespace flashpolar
