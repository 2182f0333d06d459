#include "webcat/combinatorics.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace webcat::comb {

Composition::Composition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (int p : parts_)
    if (p < 1) throw invalid_input("composition parts must be >= 1");
  weight_ = std::accumulate(parts_.begin(), parts_.end(), 0);
}

std::string Composition::to_string() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < parts_.size(); ++i) {
    if (i) os << ",";
    os << parts_[i];
  }
  os << ")";
  return os.str();
}

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (int p : parts_)
    if (p < 1) throw invalid_input("partition parts must be >= 1");
  std::sort(parts_.begin(), parts_.end(), std::greater<int>());
  weight_ = std::accumulate(parts_.begin(), parts_.end(), 0);
}

Partition Partition::with_part(int r) const {
  if (r == 0) return *this;
  std::vector<int> p = parts_;
  p.push_back(r);
  return Partition(std::move(p));
}

Partition Partition::concat(const Partition& o) const {
  std::vector<int> p = parts_;
  p.insert(p.end(), o.parts_.begin(), o.parts_.end());
  return Partition(std::move(p));
}

std::string Partition::to_string() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < parts_.size(); ++i) {
    if (i) os << ",";
    os << parts_[i];
  }
  os << ")";
  return os.str();
}

bool graded_lex_less(const Partition& a, const Partition& b) {
  if (a.weight() != b.weight()) return a.weight() < b.weight();
  // Within a weight class the larger first part comes first: (2) < (1,1).
  return a.parts() > b.parts();
}

IntMatrix::IntMatrix(int rows, int cols)
    : rows_(rows), cols_(cols),
      data_(static_cast<size_t>(rows) * static_cast<size_t>(cols), 0) {}

void IntMatrix::set(int i, int j, int v) {
  data_[static_cast<size_t>(i * cols_ + j)] = v;
}

Composition IntMatrix::row_sums() const {
  std::vector<int> s(static_cast<size_t>(rows_), 0);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) s[static_cast<size_t>(i)] += at(i, j);
  return Composition(std::move(s));
}

Composition IntMatrix::col_sums() const {
  std::vector<int> s(static_cast<size_t>(cols_), 0);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) s[static_cast<size_t>(j)] += at(i, j);
  return Composition(std::move(s));
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.set(j, i, at(i, j));
  return t;
}

bool IntMatrix::operator<(const IntMatrix& o) const {
  if (rows_ != o.rows_) return rows_ < o.rows_;
  if (cols_ != o.cols_) return cols_ < o.cols_;
  return data_ < o.data_;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < rows_; ++i) {
    if (i) os << ",";
    os << "[";
    for (int j = 0; j < cols_; ++j) {
      if (j) os << ",";
      os << at(i, j);
    }
    os << "]";
  }
  os << "]";
  return os.str();
}

std::vector<IntMatrix> enumerate_contingency(const Composition& lambda,
                                             const Composition& mu) {
  if (lambda.weight() != mu.weight())
    throw invalid_input("contingency margins have different weights: " +
                        lambda.to_string() + " vs " + mu.to_string());
  const int h = lambda.length(), t = mu.length();
  std::vector<IntMatrix> out;
  if (h == 0 || t == 0) {
    if (lambda.weight() == 0) out.emplace_back(h, t);
    return out;
  }
  IntMatrix work(h, t);
  std::vector<int> row_rem(lambda.parts().begin(), lambda.parts().end());
  std::vector<int> col_rem(mu.parts().begin(), mu.parts().end());

  // Fill entries in row-major order; ascending loop gives ascending
  // lexicographic output.
  std::function<void(int)> rec = [&](int pos) {
    if (pos == h * t) {
      out.push_back(work);
      return;
    }
    const int i = pos / t, j = pos % t;
    const bool last_in_row = (j == t - 1);
    const bool last_row = (i == h - 1);
    int lo = 0, hi = std::min(row_rem[static_cast<size_t>(i)],
                              col_rem[static_cast<size_t>(j)]);
    if (last_in_row) lo = hi = row_rem[static_cast<size_t>(i)];
    if (last_row) lo = hi = col_rem[static_cast<size_t>(j)];
    if (lo > std::min(row_rem[static_cast<size_t>(i)],
                      col_rem[static_cast<size_t>(j)]))
      return;
    for (int v = lo; v <= hi; ++v) {
      work.set(i, j, v);
      row_rem[static_cast<size_t>(i)] -= v;
      col_rem[static_cast<size_t>(j)] -= v;
      rec(pos + 1);
      row_rem[static_cast<size_t>(i)] += v;
      col_rem[static_cast<size_t>(j)] += v;
      work.set(i, j, 0);
    }
  };
  rec(0);
  return out;
}

std::vector<Partition> enumerate_bounded_partitions(int max_part,
                                                    std::optional<int> max_len,
                                                    int max_weight) {
  if (max_part < 0 || max_weight < 0)
    throw invalid_input("negative bound in partition enumeration");
  std::vector<Partition> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int largest, int rem) {
    out.emplace_back(std::vector<int>(cur));
    if (max_len && static_cast<int>(cur.size()) >= *max_len) return;
    for (int p = std::min(largest, rem); p >= 1; --p) {
      cur.push_back(p);
      rec(p, rem - p);
      cur.pop_back();
    }
  };
  rec(max_part, max_weight);
  std::sort(out.begin(), out.end(), graded_lex_less);
  return out;
}

Int factorial(int n) {
  if (n < 0) throw invalid_input("factorial of negative argument");
  Int r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

Int binomial(int n, int k) {
  if (k < 0 || k > n || n < 0) return 0;
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return r;
}

bool MonomialLess::operator()(const Monomial& a, const Monomial& b) const {
  int da = std::accumulate(a.begin(), a.end(), 0);
  int db = std::accumulate(b.begin(), b.end(), 0);
  if (da != db) return da < db;
  return a < b;
}

IntPoly IntPoly::constant(int num_vars, Int c) {
  IntPoly p(num_vars);
  p.add_term(Monomial(static_cast<size_t>(num_vars), 0), c);
  return p;
}

IntPoly IntPoly::variable(int num_vars, int idx) {
  IntPoly p(num_vars);
  Monomial m(static_cast<size_t>(num_vars), 0);
  m[static_cast<size_t>(idx)] = 1;
  p.add_term(m, 1);
  return p;
}

void IntPoly::add_term(const Monomial& m, const Int& c) {
  if (c == 0) return;
  terms_.emplace_back(m, c);
  normalize();
}

void IntPoly::normalize() {
  std::map<Monomial, Int, MonomialLess> acc;
  for (auto& [m, c] : terms_) acc[m] += c;
  terms_.clear();
  for (auto& [m, c] : acc)
    if (c != 0) terms_.emplace_back(m, c);
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
  IntPoly r(num_vars_);
  r.terms_ = terms_;
  r.terms_.insert(r.terms_.end(), o.terms_.begin(), o.terms_.end());
  r.normalize();
  return r;
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
  IntPoly r(num_vars_);
  for (auto& [m1, c1] : terms_)
    for (auto& [m2, c2] : o.terms_) {
      Monomial m = m1;
      for (size_t i = 0; i < m.size(); ++i) m[i] += m2[i];
      r.terms_.emplace_back(std::move(m), c1 * c2);
    }
  r.normalize();
  return r;
}

IntPoly IntPoly::scaled(const Int& c) const {
  IntPoly r(num_vars_);
  if (c == 0) return r;
  for (auto& [m, t] : terms_) r.terms_.emplace_back(m, t * c);
  return r;
}

int IntPoly::total_degree() const {
  int d = 0;
  for (auto& [m, c] : terms_)
    d = std::max(d, std::accumulate(m.begin(), m.end(), 0));
  return d;
}

bool IntPoly::operator==(const IntPoly& o) const { return terms_ == o.terms_; }

IntPoly IntPoly::permuted_vars(const std::vector<int>& perm) const {
  IntPoly r(num_vars_);
  for (auto& [m, c] : terms_) {
    Monomial pm(m.size(), 0);
    for (size_t i = 0; i < m.size(); ++i)
      pm[static_cast<size_t>(perm[i])] = m[i];
    r.terms_.emplace_back(std::move(pm), c);
  }
  r.normalize();
  return r;
}

std::string IntPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.get_str();
    for (size_t i = 0; i < m.size(); ++i)
      if (m[i]) {
        os << "*x" << (i + 1);
        if (m[i] > 1) os << "^" << m[i];
      }
  }
  return os.str();
}

IntPoly elementary_symmetric_single(int r, int num_vars) {
  if (r < 0 || r > num_vars)
    throw invalid_input("elementary symmetric index out of range");
  IntPoly p(num_vars);
  std::vector<int> idx;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(idx.size()) == r) {
      Monomial m(static_cast<size_t>(num_vars), 0);
      for (int i : idx) m[static_cast<size_t>(i)] = 1;
      p.add_term(m, 1);
      return;
    }
    for (int i = start; i < num_vars; ++i) {
      idx.push_back(i);
      rec(i + 1);
      idx.pop_back();
    }
  };
  rec(0);
  return p;
}

IntPoly elementary_symmetric(const Partition& nu, int num_vars) {
  IntPoly p = IntPoly::constant(num_vars, 1);
  for (int r : nu.parts()) {
    if (r > num_vars)
      throw invalid_input("partition part exceeds variable count");
    p = p * elementary_symmetric_single(r, num_vars);
  }
  return p;
}

}  // namespace webcat::comb
