#pragma once

#include <map>
#include <optional>
#include <vector>

#include "webcat/core.hpp"

namespace webcat::linalg {

/// Sparse matrix with exact rational entries, stored row-wise.
class SparseMat {
 public:
  SparseMat() = default;
  SparseMat(int rows, int cols) : rows_(rows), cols_(cols),
                                  data_(static_cast<size_t>(rows)) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const std::map<int, Rat>& row(int i) const {
    return data_[static_cast<size_t>(i)];
  }

  Rat at(int i, int j) const;
  void add(int i, int j, const Rat& v);
  void set(int i, int j, const Rat& v);

  SparseMat operator*(const SparseMat& o) const;
  SparseMat operator+(const SparseMat& o) const;
  SparseMat operator-(const SparseMat& o) const;
  SparseMat scaled(const Rat& c) const;
  bool operator==(const SparseMat& o) const;
  bool is_zero() const;

  static SparseMat identity(int n);
  /// Kronecker-style block action: this acting on the left block slot,
  /// other on the right slot of a tensor product basis (row-major pairing).
  SparseMat kron(const SparseMat& o) const;

  std::vector<Rat> apply(const std::vector<Rat>& v) const;

  size_t nonzeros() const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<std::map<int, Rat>> data_;
};

/// Dense exact elimination kernel used by the solvers below. Works on
/// integer matrices via fraction-free (Bareiss) elimination; rational
/// inputs are scaled row-wise to integers first.
class Eliminator {
 public:
  /// Rank of the row span.
  static int rank(std::vector<std::vector<Rat>> rows);

  /// Solves sum_j x_j * cols[j] = rhs exactly. Returns nullopt when the
  /// system is inconsistent; throws internal_error when the solution is
  /// not unique (columns dependent) and require_unique is set.
  static std::optional<std::vector<Rat>> solve(
      std::vector<std::vector<Rat>> cols, std::vector<Rat> rhs,
      bool require_unique = true);
};

/// Incremental rank accumulator over sparse vectors (exact arithmetic).
class RankAccumulator {
 public:
  /// Returns true when the vector enlarged the span.
  bool insert(std::map<int, Rat> v);
  int rank() const { return static_cast<int>(basis_.size()); }

 private:
  std::vector<std::map<int, Rat>> basis_;  // echelonized, keyed by pivot
};

}  // namespace webcat::linalg
