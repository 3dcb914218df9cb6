#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "gtlab/bitvec.hpp"

namespace gtlab {

enum class RecoveryMode { kFull, kPartial };

/// Binary pooling design: N test rows, t item columns, and a constant number
/// of ones per column. Bits are stored row-major; column masks are
/// materialized on demand.
class TestMatrix {
 public:
  int rows() const { return rows_; }             // N, number of tests
  int cols() const { return cols_; }             // t, number of items
  int column_weight() const { return weight_; }  // ones per column
  double relative_weight() const { return rel_weight_; }
  std::uint64_t seed() const { return seed_; }

  bool bit(int row, int col) const {
    return bits_[static_cast<std::size_t>(row) * cols_ + col] != 0;
  }

  /// Column as a length-N bit mask.
  BitVec column(int col) const;
  /// All columns at once (the decoder iterates these).
  std::vector<BitVec> columns() const;

  /// Ones per column implied by a relative weight: clamp(round(w*N), 1, N-1).
  static int resolve_weight(int rows, double relative_weight);

  /// Assemble a matrix from explicit row-major bits. Every column must carry
  /// exactly resolve_weight(rows, relative_weight) ones.
  static TestMatrix from_bits(int rows, int cols, double relative_weight,
                              std::uint64_t seed, std::vector<std::uint8_t> bits);

  /// Text format v1. Header, parameter line, then one '0'/'1' row per line.
  void save(std::ostream& out) const;
  static TestMatrix load(std::istream& in);

 private:
  TestMatrix() = default;
  friend TestMatrix gen_matrix(int, int, double, std::uint64_t);

  int rows_ = 0;
  int cols_ = 0;
  int weight_ = 0;
  double rel_weight_ = 0.0;
  std::uint64_t seed_ = 0;
  std::vector<std::uint8_t> bits_;  // row-major, rows_ * cols_
};

/// Draw an N x t matrix whose columns are independent and uniform over all
/// columns of weight resolve_weight(rows, w). Column j depends only on
/// (seed, j), so regeneration is bit-identical and order-independent.
TestMatrix gen_matrix(int rows, int cols, double relative_weight, std::uint64_t seed);

/// The per-column sampling primitive behind gen_matrix: a uniform random
/// weight-`weight` column of length `rows` for stream (seed, column_index).
BitVec sample_column(int rows, int weight, std::uint64_t seed, std::uint64_t column_index);

/// Relative column weight recommended for the first stage. Full mode with
/// s = 2 has a closed form; full mode with s > 2 takes the numerically
/// optimized weight of the rate-bound engine; partial mode is 1 - 2^{-1/s}.
double recommended_weight(int defectives, RecoveryMode mode);

}  // namespace gtlab
