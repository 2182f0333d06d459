#include "webcat/linalg.hpp"

#include <algorithm>

namespace webcat::linalg {

Rat SparseMat::at(int i, int j) const {
  const auto& r = data_[static_cast<size_t>(i)];
  auto it = r.find(j);
  return it == r.end() ? Rat(0) : it->second;
}

void SparseMat::add(int i, int j, const Rat& v) {
  if (v == 0) return;
  auto& r = data_[static_cast<size_t>(i)];
  auto it = r.find(j);
  if (it == r.end()) {
    r.emplace(j, v);
  } else {
    it->second += v;
    if (it->second == 0) r.erase(it);
  }
}

void SparseMat::set(int i, int j, const Rat& v) {
  auto& r = data_[static_cast<size_t>(i)];
  if (v == 0)
    r.erase(j);
  else
    r[j] = v;
}

SparseMat SparseMat::operator*(const SparseMat& o) const {
  if (cols_ != o.rows_) throw internal_error("matrix product shape mismatch");
  SparseMat r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (auto& [k, a] : data_[static_cast<size_t>(i)])
      for (auto& [j, b] : o.data_[static_cast<size_t>(k)])
        r.add(i, j, a * b);
  return r;
}

SparseMat SparseMat::operator+(const SparseMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw internal_error("matrix sum shape mismatch");
  SparseMat r = *this;
  for (int i = 0; i < rows_; ++i)
    for (auto& [j, v] : o.data_[static_cast<size_t>(i)]) r.add(i, j, v);
  return r;
}

SparseMat SparseMat::operator-(const SparseMat& o) const {
  return *this + o.scaled(-1);
}

SparseMat SparseMat::scaled(const Rat& c) const {
  SparseMat r(rows_, cols_);
  if (c == 0) return r;
  for (int i = 0; i < rows_; ++i)
    for (auto& [j, v] : data_[static_cast<size_t>(i)])
      r.data_[static_cast<size_t>(i)].emplace(j, v * c);
  return r;
}

bool SparseMat::operator==(const SparseMat& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

bool SparseMat::is_zero() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const auto& r) { return r.empty(); });
}

SparseMat SparseMat::identity(int n) {
  SparseMat r(n, n);
  for (int i = 0; i < n; ++i) r.set(i, i, 1);
  return r;
}

SparseMat SparseMat::kron(const SparseMat& o) const {
  SparseMat r(rows_ * o.rows_, cols_ * o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (auto& [j, a] : data_[static_cast<size_t>(i)])
      for (int p = 0; p < o.rows_; ++p)
        for (auto& [q, b] : o.data_[static_cast<size_t>(p)])
          r.add(i * o.rows_ + p, j * o.cols_ + q, a * b);
  return r;
}

std::vector<Rat> SparseMat::apply(const std::vector<Rat>& v) const {
  std::vector<Rat> out(static_cast<size_t>(rows_), Rat(0));
  for (int i = 0; i < rows_; ++i)
    for (auto& [j, a] : data_[static_cast<size_t>(i)])
      out[static_cast<size_t>(i)] += a * v[static_cast<size_t>(j)];
  return out;
}

size_t SparseMat::nonzeros() const {
  size_t n = 0;
  for (auto& r : data_) n += r.size();
  return n;
}

namespace {

// Clears denominators of one row, returning an integer row.
std::vector<Int> clear_row(const std::vector<Rat>& row) {
  Int lcm = 1;
  for (const Rat& q : row)
    if (q != 0) {
      Int d = q.get_den();
      Int g;
      mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), d.get_mpz_t());
      lcm = lcm / g * d;
    }
  std::vector<Int> out;
  out.reserve(row.size());
  for (const Rat& q : row) {
    Rat v = q * Rat(lcm);
    out.push_back(v.get_num());
  }
  return out;
}

// Fraction-free (Bareiss) elimination. Returns the echelonized integer
// matrix together with pivot column indices.
std::pair<std::vector<std::vector<Int>>, std::vector<int>> bareiss(
    std::vector<std::vector<Int>> m) {
  std::vector<int> pivots;
  if (m.empty()) return {m, pivots};
  const size_t cols = m[0].size();
  Int prev = 1;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < m.size(); ++c) {
    size_t pr = r;
    while (pr < m.size() && m[pr][c] == 0) ++pr;
    if (pr == m.size()) continue;
    std::swap(m[r], m[pr]);
    for (size_t i = r + 1; i < m.size(); ++i) {
      for (size_t j = c + 1; j < cols; ++j) {
        Int t = m[i][j] * m[r][c] - m[i][c] * m[r][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m[i][j] = t;
      }
      m[i][c] = 0;
    }
    prev = m[r][c];
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  return {m, pivots};
}

}  // namespace

int Eliminator::rank(std::vector<std::vector<Rat>> rows) {
  std::vector<std::vector<Int>> im;
  im.reserve(rows.size());
  for (auto& r : rows) im.push_back(clear_row(r));
  auto [m, pivots] = bareiss(std::move(im));
  return static_cast<int>(pivots.size());
}

std::optional<std::vector<Rat>> Eliminator::solve(
    std::vector<std::vector<Rat>> cols, std::vector<Rat> rhs,
    bool require_unique) {
  const size_t n = cols.size();
  const size_t m = rhs.size();
  for (auto& c : cols)
    if (c.size() != m) throw internal_error("solve: ragged columns");

  // Augmented system in row form: [A | rhs], A has n unknown columns.
  std::vector<std::vector<Rat>> rows(m, std::vector<Rat>(n + 1, Rat(0)));
  for (size_t j = 0; j < n; ++j)
    for (size_t i = 0; i < m; ++i) rows[i][j] = cols[j][i];
  for (size_t i = 0; i < m; ++i) rows[i][n] = rhs[i];

  std::vector<std::vector<Int>> im;
  im.reserve(m);
  for (auto& r : rows) im.push_back(clear_row(r));
  auto [ech, pivots] = bareiss(std::move(im));

  // Inconsistent when a pivot lands in the rhs column.
  for (int p : pivots)
    if (p == static_cast<int>(n)) return std::nullopt;
  if (require_unique && pivots.size() != n)
    throw internal_error("solve: system is underdetermined");

  // Back substitution over the rationals.
  std::vector<Rat> x(n, Rat(0));
  for (int k = static_cast<int>(pivots.size()) - 1; k >= 0; --k) {
    size_t pc = static_cast<size_t>(pivots[static_cast<size_t>(k)]);
    Rat acc(ech[static_cast<size_t>(k)][n]);
    for (size_t j = pc + 1; j < n; ++j)
      acc -= Rat(ech[static_cast<size_t>(k)][j]) * x[j];
    Rat piv(ech[static_cast<size_t>(k)][pc]);
    x[pc] = acc / piv;
  }
  return x;
}

bool RankAccumulator::insert(std::map<int, Rat> v) {
  for (const auto& b : basis_) {
    if (v.empty()) break;
    auto pivot = b.begin();
    auto it = v.find(pivot->first);
    if (it == v.end()) continue;
    Rat f = it->second / pivot->second;
    for (auto& [j, val] : b) {
      auto vit = v.find(j);
      if (vit == v.end()) {
        v.emplace(j, -f * val);
      } else {
        vit->second -= f * val;
        if (vit->second == 0) v.erase(vit);
      }
    }
  }
  if (v.empty()) return false;
  basis_.push_back(std::move(v));
  std::sort(basis_.begin(), basis_.end(),
            [](const auto& a, const auto& b) {
              return a.begin()->first < b.begin()->first;
            });
  return true;
}

}  // namespace webcat::linalg
