#include "webcat/hecke.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace webcat::hecke {

using diag::m_cross;
using diag::m_dot;
using diag::m_id;
using diag::Morphism;
using diag::tensor;

Morphism x_generator(int m, int j) {
  if (j < 1 || j > m) throw invalid_input("dot position out of range");
  Morphism r = m_id(comb::Composition());
  for (int k = 1; k <= m; ++k)
    r = tensor(r, k == j ? m_dot(1) : m_id(1));
  return r;
}

Morphism s_generator(int m, int i) {
  if (i < 1 || i >= m) throw invalid_input("crossing position out of range");
  Morphism r = m_id(comb::Composition());
  for (int k = 1; k <= m; ++k) {
    if (k == i) {
      r = tensor(r, m_cross(1, 1));
      ++k;
    } else {
      r = tensor(r, m_id(1));
    }
  }
  return r;
}

std::string HeckeBasisElement::to_string() const {
  std::ostringstream os;
  os << "w=(";
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) os << ",";
    os << w[i] + 1;
  }
  os << ") k=(";
  for (size_t i = 0; i < exponents.size(); ++i) {
    if (i) os << ",";
    os << exponents[i];
  }
  os << ")";
  return os.str();
}

std::vector<HeckeBasisElement> hecke_basis(int m, int ell) {
  std::vector<HeckeBasisElement> out;
  std::vector<int> perm(static_cast<size_t>(m));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<int> expo(static_cast<size_t>(m), 0);
    while (true) {
      out.push_back({perm, expo});
      int k = 0;
      for (; k < m; ++k) {
        if (++expo[static_cast<size_t>(k)] < ell) break;
        expo[static_cast<size_t>(k)] = 0;
      }
      if (k == m) break;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

namespace {

// Plain tensor power workspace.
struct TensorSpace {
  int m, N;
  long dim;
  TensorSpace(int m_, int N_) : m(m_), N(N_) {
    dim = 1;
    for (int i = 0; i < m; ++i) dim *= N;
  }
  std::vector<int> word(long idx) const {
    std::vector<int> w(static_cast<size_t>(m));
    for (int i = m; i-- > 0;) {
      w[static_cast<size_t>(i)] = static_cast<int>(idx % N);
      idx /= N;
    }
    return w;
  }
  long index(const std::vector<int>& w) const {
    long idx = 0;
    for (int v : w) idx = idx * N + v;
    return idx;
  }
};

int parity(std::vector<int> w) {
  int p = 0;
  for (size_t i = 0; i < w.size(); ++i)
    for (size_t j = i + 1; j < w.size(); ++j)
      if (w[i] > w[j]) ++p;
  return p % 2;
}

// Signed place action of one permutation: v_word -> sgn(w) v_{word after w}.
SparseMat place_action(const std::vector<int>& w, const TensorSpace& ts) {
  SparseMat out(static_cast<int>(ts.dim), static_cast<int>(ts.dim));
  const Rat sgn = parity(w) ? Rat(-1) : Rat(1);
  for (long i = 0; i < ts.dim; ++i) {
    auto word = ts.word(i);
    std::vector<int> nw(word.size());
    for (size_t p = 0; p < word.size(); ++p)
      nw[p] = word[static_cast<size_t>(w[p])];
    out.add(static_cast<int>(ts.index(nw)), static_cast<int>(i), sgn);
  }
  return out;
}

SparseMat dot_action(int pos, const TensorSpace& ts, const RepParams& params) {
  SparseMat out(static_cast<int>(ts.dim), static_cast<int>(ts.dim));
  for (long i = 0; i < ts.dim; ++i)
    for (auto& [nw, c] : rep::tensor_dot_image(ts.word(i), pos, params))
      out.add(static_cast<int>(ts.index(nw)), static_cast<int>(i), c);
  return out;
}

void subgroup_perms(const Composition& mu,
                    std::vector<std::vector<int>>& out) {
  const int m = mu.weight();
  std::vector<std::pair<int, int>> blocks;
  int off = 0;
  for (int j = 0; j < mu.length(); ++j) {
    blocks.emplace_back(off, mu[j]);
    off += mu[j];
  }
  std::vector<int> id(static_cast<size_t>(m));
  std::iota(id.begin(), id.end(), 0);
  std::vector<std::vector<int>> acc{id};
  for (auto& [start, len] : blocks) {
    std::vector<int> local(static_cast<size_t>(len));
    std::iota(local.begin(), local.end(), 0);
    std::vector<std::vector<int>> next;
    do {
      for (auto w : acc) {
        for (int k = 0; k < len; ++k)
          w[static_cast<size_t>(start + k)] = start + local[static_cast<size_t>(k)];
        next.push_back(w);
      }
    } while (std::next_permutation(local.begin(), local.end()));
    acc = std::move(next);
  }
  out = std::move(acc);
}

}  // namespace

SparseMat hecke_action_matrix(const HeckeBasisElement& h, int m,
                              const RepParams& params) {
  TensorSpace ts(m, params.N);
  SparseMat acc = place_action(h.w, ts);
  for (int pos = 0; pos < m; ++pos)
    for (int k = 0; k < h.exponents[static_cast<size_t>(pos)]; ++k)
      acc = dot_action(pos, ts, params) * acc;
  return acc;
}

SparseMat young_symmetrizer_action(const Composition& mu, int m,
                                   const RepParams& params) {
  if (mu.weight() != m)
    throw invalid_input("symmetrizer composition must have weight m");
  TensorSpace ts(m, params.N);
  SparseMat acc(static_cast<int>(ts.dim), static_cast<int>(ts.dim));
  std::vector<std::vector<int>> perms;
  subgroup_perms(mu, perms);
  for (auto& w : perms) acc = acc + place_action(w, ts);
  return acc;
}

std::vector<Composition> IdempotentTableau::column_reading(
    const RepParams& params) const {
  std::vector<Composition> out;
  for (int j = 0; j < params.ell; ++j) {
    std::vector<int> parts;
    for (int i = 0; i < params.n; ++i)
      if (params.shape[i] == j + 1 && last_entry[static_cast<size_t>(i)] > 0)
        parts.push_back(last_entry[static_cast<size_t>(i)]);
    out.emplace_back(parts);
  }
  return out;
}

std::vector<int> IdempotentTableau::index_word(const RepParams& params) const {
  std::vector<int> word;
  int box = 0;
  for (int i = 0; i < params.n; ++i)
    for (int j = 0; j < params.shape[i]; ++j, ++box)
      if (j == params.shape[i] - 1)
        for (int k = 0; k < last_entry[static_cast<size_t>(i)]; ++k)
          word.push_back(box);
  return word;
}

std::string IdempotentTableau::to_string() const {
  std::ostringstream os;
  os << "rows(";
  for (size_t i = 0; i < last_entry.size(); ++i) {
    if (i) os << ",";
    os << last_entry[i];
  }
  os << ")";
  return os.str();
}

std::vector<IdempotentTableau> enumerate_idempotent_tableaux(
    const RepParams& params, int m) {
  std::vector<IdempotentTableau> out;
  std::vector<int> cur(static_cast<size_t>(params.n), 0);
  std::function<void(int, int)> rec = [&](int row, int rem) {
    if (row == params.n) {
      if (rem == 0) out.push_back({cur});
      return;
    }
    for (int v = 0; v <= rem; ++v) {
      cur[static_cast<size_t>(row)] = v;
      rec(row + 1, rem - v);
    }
    cur[static_cast<size_t>(row)] = 0;
  };
  rec(0, m);
  return out;
}

std::vector<IdempotentTableau> enumerate_last_column_tableaux(
    const RepParams& params, int m) {
  std::vector<IdempotentTableau> out;
  for (auto& t : enumerate_idempotent_tableaux(params, m)) {
    bool ok = true;
    for (int i = 0; i < params.n; ++i)
      if (t.last_entry[static_cast<size_t>(i)] > 0 &&
          params.shape[i] != params.ell)
        ok = false;
    if (ok) out.push_back(t);
  }
  return out;
}

SparseMat idempotent_matrix(const IdempotentTableau& A, int m,
                            const RepParams& params) {
  TensorSpace ts(m, params.N);
  // Sorted row multiset of the tableau word.
  std::vector<int> target;
  for (int b : A.index_word(params))
    target.push_back(params.box_row[static_cast<size_t>(b)]);
  std::sort(target.begin(), target.end());
  if (static_cast<int>(target.size()) != m)
    throw invalid_input("tableau weight does not match m");
  SparseMat out(static_cast<int>(ts.dim), static_cast<int>(ts.dim));
  for (long i = 0; i < ts.dim; ++i) {
    std::vector<int> rows;
    for (int v : ts.word(i)) rows.push_back(params.box_row[static_cast<size_t>(v)]);
    std::sort(rows.begin(), rows.end());
    if (rows == target) out.set(static_cast<int>(i), static_cast<int>(i), 1);
  }
  return out;
}

int perm_module_hom_dim(const Composition& mu, const Composition& nu,
                        const nf::LevelParams& L, const RepParams& params) {
  const int m = mu.weight();
  if (nu.weight() != m) throw invalid_input("hom dim needs equal weights");
  if (params.u != L.u)
    throw invalid_input("level parameters do not match the representation");
  int lastcol = 0;
  for (int i = 0; i < params.n; ++i)
    if (params.shape[i] == params.ell) ++lastcol;
  if (m > lastcol)
    throw invalid_input("hom dim precondition: weight exceeds last column");

  TensorSpace ts(m, params.N);
  SparseMat xmu = young_symmetrizer_action(mu, m, params);
  SparseMat xnu = young_symmetrizer_action(nu, m, params);
  linalg::RankAccumulator acc;
  for (const auto& b : hecke_basis(m, L.ell)) {
    SparseMat op = xmu * (hecke_action_matrix(b, m, params) * xnu);
    // flatten: v . (x_mu b x_nu) applied as matrices on columns
    std::map<int, Rat> flat;
    for (int i = 0; i < op.rows(); ++i)
      for (auto& [j, c] : op.row(i)) flat[i * op.cols() + j] = c;
    acc.insert(std::move(flat));
  }
  return acc.rank();
}

WSchurReport wschur_dim_check(const Composition& lambda, const Composition& mu,
                              const nf::LevelParams& L, int shape_rows) {
  WSchurReport r;
  r.web_side = static_cast<long>(
      nf::enumerate_parmat(mu, lambda, L.ell, std::nullopt).size());
  std::vector<Rat> negu;
  for (const Rat& v : L.u) negu.push_back(-v);
  RepParams params = RepParams::rectangle(shape_rows, L.ell, negu);
  nf::LevelParams Lneg(L.ell, negu);
  r.schur_side = perm_module_hom_dim(mu, lambda, Lneg, params);
  return r;
}

}  // namespace webcat::hecke
