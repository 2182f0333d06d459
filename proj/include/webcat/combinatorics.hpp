#pragma once

#include <optional>
#include <vector>

#include "webcat/core.hpp"

namespace webcat::comb {

/// Strict composition: a finite sequence of positive integers. The empty
/// sequence is the monoidal unit and is allowed everywhere.
class Composition {
 public:
  Composition() = default;
  explicit Composition(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  int weight() const { return weight_; }
  int length() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }
  int operator[](int i) const { return parts_[static_cast<size_t>(i)]; }

  bool operator==(const Composition& o) const { return parts_ == o.parts_; }
  bool operator!=(const Composition& o) const { return parts_ != o.parts_; }
  bool operator<(const Composition& o) const { return parts_ < o.parts_; }

  std::string to_string() const;

 private:
  std::vector<int> parts_;
  int weight_ = 0;
};

/// Integer partition: weakly decreasing positive parts. Empty allowed.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts);  // sorts decreasing, checks > 0

  const std::vector<int>& parts() const { return parts_; }
  int weight() const { return weight_; }
  int length() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }
  int max_part() const { return parts_.empty() ? 0 : parts_.front(); }

  Partition with_part(int r) const;          // insert one part, keep sorted
  Partition concat(const Partition& o) const;  // multiset union

  bool operator==(const Partition& o) const { return parts_ == o.parts_; }
  bool operator!=(const Partition& o) const { return parts_ != o.parts_; }

  std::string to_string() const;

 private:
  std::vector<int> parts_;
  int weight_ = 0;
};

/// Graded-lexicographic order: first by weight, then lexicographically with
/// the larger first part earlier, so (2) precedes (1,1).
bool graded_lex_less(const Partition& a, const Partition& b);

struct PartitionGradedLess {
  bool operator()(const Partition& a, const Partition& b) const {
    return graded_lex_less(a, b);
  }
};

/// Non-negative integer matrix with cached margins.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int at(int i, int j) const { return data_[static_cast<size_t>(i * cols_ + j)]; }
  void set(int i, int j, int v);

  Composition row_sums() const;
  Composition col_sums() const;
  IntMatrix transposed() const;

  bool operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  /// Row-major lexicographic comparison of the flattened entries.
  bool operator<(const IntMatrix& o) const;

  std::string to_string() const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<int> data_;
};

/// All matrices with row sums lambda and column sums mu, each exactly once,
/// in ascending row-major lexicographic order. Throws invalid_input when the
/// weights differ.
std::vector<IntMatrix> enumerate_contingency(const Composition& lambda,
                                             const Composition& mu);

/// All partitions with parts <= max_part, length <= max_len (nullopt for
/// unbounded) and weight <= max_weight, in graded-lex order starting with
/// the empty partition.
std::vector<Partition> enumerate_bounded_partitions(int max_part,
                                                    std::optional<int> max_len,
                                                    int max_weight);

Int factorial(int n);
Int binomial(int n, int k);  // zero outside 0 <= k <= n (n >= 0 expected)

/// Exponent vector -> coefficient map for polynomials in a fixed number of
/// commuting variables.
using Monomial = std::vector<int>;

struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

class IntPoly {
 public:
  explicit IntPoly(int num_vars = 0) : num_vars_(num_vars) {}
  static IntPoly constant(int num_vars, Int c);
  static IntPoly variable(int num_vars, int idx);

  int num_vars() const { return num_vars_; }
  const std::vector<std::pair<Monomial, Int>>& terms() const { return terms_; }

  void add_term(const Monomial& m, const Int& c);
  IntPoly operator+(const IntPoly& o) const;
  IntPoly operator*(const IntPoly& o) const;
  IntPoly scaled(const Int& c) const;

  int total_degree() const;
  bool is_zero() const { return terms_.empty(); }
  bool operator==(const IntPoly& o) const;

  /// Apply a permutation of the variables.
  IntPoly permuted_vars(const std::vector<int>& perm) const;

  std::string to_string() const;

 private:
  void normalize();
  int num_vars_;
  std::vector<std::pair<Monomial, Int>> terms_;  // sorted by MonomialLess
};

/// e_nu(x_1..x_m) = product over parts r of nu of the r-th elementary
/// symmetric polynomial. Throws invalid_input when a part exceeds num_vars.
IntPoly elementary_symmetric(const Partition& nu, int num_vars);
IntPoly elementary_symmetric_single(int r, int num_vars);

}  // namespace webcat::comb
