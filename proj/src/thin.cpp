#include "webcat/thin.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "webcat/linalg.hpp"

namespace webcat::thin {

using comb::PartitionGradedLess;

Perm perm_identity(int m) {
  Perm p(static_cast<size_t>(m));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Perm perm_compose(const Perm& upper, const Perm& lower) {
  Perm r(lower.size());
  for (size_t i = 0; i < lower.size(); ++i)
    r[i] = upper[static_cast<size_t>(lower[i])];
  return r;
}

Perm perm_transposition(int m, int j) {
  Perm p = perm_identity(m);
  std::swap(p[static_cast<size_t>(j)], p[static_cast<size_t>(j) + 1]);
  return p;
}

Elem Elem::one(int m) {
  Elem e(m);
  e.add(perm_identity(m), Monomial(static_cast<size_t>(m), 0), 1);
  return e;
}

Elem Elem::from_poly(const IntPoly& p) {
  Elem e(p.num_vars());
  Perm id = perm_identity(p.num_vars());
  for (auto& [m, c] : p.terms()) e.add(id, m, Rat(c));
  return e;
}

void Elem::add(const Perm& w, const Monomial& k, const Rat& c) {
  if (c == 0) return;
  auto key = std::make_pair(w, k);
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(std::move(key), c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Elem Elem::operator+(const Elem& o) const {
  Elem r = *this;
  for (auto& [k, c] : o.terms_) r.add(k.first, k.second, c);
  return r;
}

Elem Elem::operator-(const Elem& o) const { return *this + o.scaled(-1); }

Elem Elem::scaled(const Rat& c) const {
  Elem r(m_);
  if (c == 0) return r;
  for (auto& [k, v] : terms_) r.terms_.emplace(k, v * c);
  return r;
}

namespace {

// Straightening data for x_j^p x_{j+1}^q stacked over a swap of (j, j+1):
// the result is a sum of terms (swap present?, p', q', coefficient).
struct PairTerm {
  bool swapped;
  int p, q;
  Int coeff;
};

const std::vector<PairTerm>& straighten_pair(int p, int q) {
  static std::map<std::pair<int, int>, std::vector<PairTerm>> memo;
  auto key = std::make_pair(p, q);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;

  std::vector<PairTerm> out;
  if (p == 0 && q == 0) {
    out.push_back({true, 0, 0, 1});
  } else if (p > 0) {
    // x_j (over the swap) = swap then x_{j+1}, plus the identity term.
    for (const PairTerm& t : straighten_pair(p - 1, q))
      out.push_back({t.swapped, t.p, t.q + 1, t.coeff});
    out.push_back({false, p - 1, q, 1});
  } else {
    // x_{j+1} (over the swap) = swap then x_j, minus the identity term.
    for (const PairTerm& t : straighten_pair(p, q - 1))
      out.push_back({t.swapped, t.p + 1, t.q, t.coeff});
    out.push_back({false, p, q - 1, -1});
  }
  // Merge duplicates.
  std::map<std::tuple<bool, int, int>, Int> acc;
  for (auto& t : out) acc[{t.swapped, t.p, t.q}] += t.coeff;
  std::vector<PairTerm> merged;
  for (auto& [k, c] : acc)
    if (c != 0)
      merged.push_back({std::get<0>(k), std::get<1>(k), std::get<2>(k), c});
  return memo.emplace(key, std::move(merged)).first->second;
}

}  // namespace

Elem Elem::after_swap(int j) const {
  Elem r(m_);
  const Perm sj = perm_transposition(m_, j);
  for (auto& [key, c] : terms_) {
    const Perm& w = key.first;
    const Monomial& mono = key.second;
    for (const PairTerm& t :
         straighten_pair(mono[static_cast<size_t>(j)],
                         mono[static_cast<size_t>(j) + 1])) {
      Monomial nm = mono;
      nm[static_cast<size_t>(j)] = t.p;
      nm[static_cast<size_t>(j) + 1] = t.q;
      Perm nw = t.swapped ? perm_compose(w, sj) : w;
      r.add(nw, nm, c * Rat(t.coeff));
    }
  }
  return r;
}

Elem Elem::after_dot(int i) const {
  Elem r(m_);
  for (auto& [key, c] : terms_) {
    Monomial nm = key.second;
    ++nm[static_cast<size_t>(i)];
    r.add(key.first, nm, c);
  }
  return r;
}

Elem Elem::after_perm(const Perm& w) const {
  // Factor w into adjacent swaps; the factor closest to this element is
  // applied first.
  std::vector<int> word;
  Perm v = w;
  const Perm id = perm_identity(m_);
  while (v != id) {
    bool found = false;
    for (int j = 0; j + 1 < m_; ++j) {
      if (v[static_cast<size_t>(j)] > v[static_cast<size_t>(j) + 1]) {
        v = perm_compose(v, perm_transposition(m_, j));
        word.push_back(j);
        found = true;
        break;
      }
    }
    if (!found) throw internal_error("permutation factorization stuck");
  }
  Elem r = *this;
  for (auto it = word.rbegin(); it != word.rend(); ++it) r = r.after_swap(*it);
  return r;
}

Elem Elem::compose(const Elem& o) const {
  Elem r(m_);
  for (auto& [key, c] : o.terms_) {
    Elem piece = this->after_perm(key.first);
    for (size_t i = 0; i < key.second.size(); ++i)
      for (int t = 0; t < key.second[i]; ++t)
        piece = piece.after_dot(static_cast<int>(i));
    r = r + piece.scaled(c);
  }
  return r;
}

Elem Elem::tensor(const Elem& left, const Elem& right) {
  Elem r(left.m_ + right.m_);
  for (auto& [kl, cl] : left.terms_)
    for (auto& [kr, cr] : right.terms_) {
      Perm w = kl.first;
      for (int v : kr.first) w.push_back(v + left.m_);
      Monomial m = kl.second;
      m.insert(m.end(), kr.second.begin(), kr.second.end());
      r.add(w, m, cl * cr);
    }
  return r;
}

std::map<Monomial, Rat> Elem::collapse() const {
  std::map<Monomial, Rat> out;
  for (auto& [key, c] : terms_) {
    auto it = out.find(key.second);
    if (it == out.end()) {
      out.emplace(key.second, c);
    } else {
      it->second += c;
      if (it->second == 0) out.erase(it);
    }
  }
  return out;
}

Elem digon(int a, int b) {
  if (a == 0 || b == 0) return Elem::one(a + b);
  static std::map<std::pair<int, int>, Elem> memo;
  auto key = std::make_pair(a, b);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;

  const int m = a + b;
  Elem r(m);
  for (int p = 0; p <= std::min(a, b); ++p) {
    Elem inner = Elem::tensor(digon(a - p, p), digon(p, b - p));
    if (p == 0) {
      r = r + inner;
      continue;
    }
    // Block swap of the two middle p-blocks, embedded at offset a-p.
    Perm w = perm_identity(m);
    for (int i = 0; i < p; ++i) {
      w[static_cast<size_t>(a - p + i)] = a + i;
      w[static_cast<size_t>(a + i)] = a - p + i;
    }
    Elem crossed(m);
    for (auto& [k, c] : inner.terms())
      crossed.add(perm_compose(w, k.first), k.second, c);
    r = r + crossed;
  }
  return memo.emplace(key, std::move(r)).first->second;
}

IntPoly hpoly(int a, int r) {
  static std::map<std::pair<int, int>, IntPoly> memo;
  if (r < 0 || r > a) return IntPoly(a);
  if (r == 0) return IntPoly::constant(a, 1);
  auto key = std::make_pair(a, r);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;

  IntPoly result(a);
  if (a == 1) {
    result = IntPoly::variable(1, 0);
  } else {
    auto widen = [a](const IntPoly& p) {
      IntPoly q(a);
      for (auto& [m, c] : p.terms()) {
        Monomial wm = m;
        wm.resize(static_cast<size_t>(a), 0);
        q.add_term(wm, c);
      }
      return q;
    };
    IntPoly lower = widen(hpoly(a - 1, r));
    IntPoly lower1 = widen(hpoly(a - 1, r - 1));
    IntPoly last = IntPoly::variable(a, a - 1) +
                   IntPoly::constant(a, Int(a - r));
    result = lower + lower1 * last;
  }
  return memo.emplace(key, std::move(result)).first->second;
}

IntPoly hpoly(int a, const Partition& nu) {
  IntPoly p = IntPoly::constant(a, 1);
  for (int r : nu.parts()) p = p * hpoly(a, r);
  return p;
}

namespace {

// Shifts a polynomial in `vars` variables into `total` variables starting
// at `offset`.
IntPoly shift_vars(const IntPoly& p, int total, int offset) {
  IntPoly q(total);
  for (auto& [m, c] : p.terms()) {
    Monomial nm(static_cast<size_t>(total), 0);
    for (size_t i = 0; i < m.size(); ++i)
      nm[static_cast<size_t>(offset) + i] = m[i];
    q.add_term(nm, c);
  }
  return q;
}

// Solves target = sum_nu c_nu * h_nu over the given candidates; exact and
// unique by the linear independence of the h-family.
std::vector<Rat> solve_against_h(const std::map<Monomial, Rat>& target,
                                 const std::vector<Partition>& candidates,
                                 int nvars) {
  std::map<Monomial, int, comb::MonomialLess> coord;
  auto touch = [&coord](const Monomial& m) {
    coord.emplace(m, static_cast<int>(coord.size()));
  };
  std::vector<IntPoly> hs;
  hs.reserve(candidates.size());
  for (const Partition& nu : candidates) {
    hs.push_back(hpoly(nvars, nu));
    for (auto& [m, c] : hs.back().terms()) touch(m);
  }
  for (auto& [m, c] : target) touch(m);

  const size_t dim = coord.size();
  std::vector<std::vector<Rat>> cols;
  cols.reserve(candidates.size());
  for (const IntPoly& h : hs) {
    std::vector<Rat> col(dim, Rat(0));
    for (auto& [m, c] : h.terms()) col[static_cast<size_t>(coord[m])] = Rat(c);
    cols.push_back(std::move(col));
  }
  std::vector<Rat> rhs(dim, Rat(0));
  for (auto& [m, c] : target) rhs[static_cast<size_t>(coord[m])] = c;

  auto sol = linalg::Eliminator::solve(std::move(cols), std::move(rhs));
  if (!sol)
    throw internal_error("balloon expansion left the decoration span");
  return *sol;
}

}  // namespace

std::map<Partition, Int, PartitionGradedLess> balloon_expand_core(
    const Partition& eta, const Partition& tau, int a, int b) {
  if (eta.max_part() > a || tau.max_part() > b)
    throw invalid_input("balloon decoration part exceeds leg thickness");
  using Key = std::tuple<std::vector<int>, std::vector<int>, int, int>;
  static std::map<Key, std::map<Partition, Int, PartitionGradedLess>> memo;
  Key key{eta.parts(), tau.parts(), a, b};
  auto mit = memo.find(key);
  if (mit != memo.end()) return mit->second;

  const int m = a + b;
  IntPoly p = shift_vars(hpoly(a, eta), m, 0) * shift_vars(hpoly(b, tau), m, a);
  Elem H = Elem::from_poly(p).compose(digon(a, b));
  auto target = H.collapse();

  std::vector<Partition> candidates;
  for (const Partition& nu :
       comb::enumerate_bounded_partitions(m, std::nullopt,
                                          eta.weight() + tau.weight()))
    candidates.push_back(nu);

  auto sol = solve_against_h(target, candidates, m);

  std::map<Partition, Int, PartitionGradedLess> out;
  const int lbound = std::max(eta.length(), tau.length());
  for (size_t i = 0; i < candidates.size(); ++i) {
    if (sol[i] == 0) continue;
    if (!is_integer(sol[i]))
      throw internal_error("balloon expansion produced a non-integer");
    if (candidates[i].length() > std::max(lbound, 0) &&
        candidates[i].length() > lbound)
      throw internal_error("balloon expansion violated the row bound");
    out.emplace(candidates[i], sol[i].get_num());
  }
  return memo.emplace(std::move(key), std::move(out)).first->second;
}

namespace {

// Substitution polynomial for the leftmost dot: x^ell equals rep[0] + rep[1] x
// + ... + rep[ell-1] x^{ell-1} in the quotient.
std::vector<Rat> minimal_poly_replacement(const Level& L) {
  std::vector<Rat> poly{Rat(1)};
  for (const Rat& u : L.u) {
    std::vector<Rat> next(poly.size() + 1, Rat(0));
    for (size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] -= u * poly[i];
    }
    poly = std::move(next);
  }
  std::vector<Rat> rep(static_cast<size_t>(L.ell), Rat(0));
  for (int k = 0; k < L.ell; ++k) rep[static_cast<size_t>(k)] = -poly[static_cast<size_t>(k)];
  return rep;
}

// upper o x_p^k o lower, with the power pile carried as a factor. The pile
// is walked to the leftmost strand by conjugation and shortened there with
// the defining relation; the result is flat and of strictly smaller total
// degree whenever k >= ell.
Elem reduce_pile(const Elem& upper, int p, int k, const Elem& lower,
                 const Level& L, const std::vector<Rat>& rep) {
  const int m = upper.strands();
  if (k < L.ell) {
    Elem flat = upper;
    for (int t = 0; t < k; ++t) flat = flat.after_dot(p);
    return flat.compose(lower);
  }
  if (p == 0) {
    Elem out(m);
    for (int j = 0; j < L.ell; ++j) {
      if (rep[static_cast<size_t>(j)] == 0) continue;
      out = out + reduce_pile(upper, 0, k - L.ell + j, lower, L, rep)
                      .scaled(rep[static_cast<size_t>(j)]);
    }
    return out;
  }
  // x_p^k = s o x_{p-1}^k o s - sum_t x_p^t x_{p-1}^{k-1-t} o s, s = s_{p-1}.
  Elem out = reduce_pile(upper.after_swap(p - 1), p - 1, k,
                         Elem::one(m).after_swap(p - 1).compose(lower), L, rep);
  for (int t = 0; t <= k - 1; ++t) {
    Elem piece = upper;
    for (int z = 0; z < t; ++z) piece = piece.after_dot(p);
    for (int z = 0; z < k - 1 - t; ++z) piece = piece.after_dot(p - 1);
    piece = piece.after_swap(p - 1).compose(lower);
    out = out - piece;
  }
  return out;
}

}  // namespace

Elem cyclotomic_reduce(Elem e, const Level& L) {
  const int ell = L.ell;
  const int m = e.strands();
  const std::vector<Rat> rep = minimal_poly_replacement(L);

  Elem done(m);
  std::vector<std::tuple<Perm, Monomial, Rat>> queue;
  for (auto& [k, c] : e.terms()) queue.emplace_back(k.first, k.second, c);

  long guard = 0;
  while (!queue.empty()) {
    if (++guard > 2000000)
      throw internal_error("cyclotomic straightening did not terminate");
    auto [w, mono, c] = queue.back();
    queue.pop_back();
    int bad = -1;
    for (int i = 0; i < m; ++i)
      if (mono[static_cast<size_t>(i)] >= ell) {
        bad = i;
        break;
      }
    if (bad < 0) {
      done.add(w, mono, c);
      continue;
    }
    int total = 0;
    for (int x : mono) total += x;
    const int pile = mono[static_cast<size_t>(bad)];
    Monomial rest = mono;
    rest[static_cast<size_t>(bad)] = 0;
    Elem upper(m);
    upper.add(w, rest, Rat(1));
    Elem replaced = reduce_pile(upper, bad, pile, Elem::one(m), L, rep);
    for (auto& [key, v] : replaced.terms()) {
      int ntotal = 0;
      for (int x : key.second) ntotal += x;
      if (ntotal >= total)
        throw internal_error("cyclotomic straightening failed its measure");
      queue.emplace_back(key.first, key.second, v * c);
    }
  }
  return done;
}

std::map<Partition, Rat, PartitionGradedLess> cyclotomic_reduce_packet(
    int a, const Partition& nu, const Level& L) {
  using Key = std::tuple<int, std::vector<int>, int, std::vector<Rat>>;
  static std::map<Key, std::map<Partition, Rat, PartitionGradedLess>> memo;
  Key key{a, nu.parts(), L.ell, L.u};
  auto mit = memo.find(key);
  if (mit != memo.end()) return mit->second;

  Elem target = cyclotomic_reduce(Elem::from_poly(hpoly(a, nu)), L);
  auto target_poly = target.collapse();

  std::vector<Partition> candidates;
  for (const Partition& k :
       comb::enumerate_bounded_partitions(a, L.ell - 1, nu.weight()))
    candidates.push_back(k);

  // Coordinates: reduced monomials (exponents < ell).
  std::map<Monomial, int, comb::MonomialLess> coord;
  auto touch = [&coord](const Monomial& m) {
    coord.emplace(m, static_cast<int>(coord.size()));
  };
  std::vector<std::map<Monomial, Rat>> images;
  for (const Partition& k : candidates) {
    images.push_back(
        cyclotomic_reduce(Elem::from_poly(hpoly(a, k)), L).collapse());
    for (auto& [mo, c] : images.back()) touch(mo);
  }
  for (auto& [mo, c] : target_poly) touch(mo);

  const size_t dim = coord.size();
  std::vector<std::vector<Rat>> cols;
  for (auto& img : images) {
    std::vector<Rat> col(dim, Rat(0));
    for (auto& [mo, c] : img) col[static_cast<size_t>(coord[mo])] = c;
    cols.push_back(std::move(col));
  }
  std::vector<Rat> rhs(dim, Rat(0));
  for (auto& [mo, c] : target_poly) rhs[static_cast<size_t>(coord[mo])] = c;

  auto sol = linalg::Eliminator::solve(std::move(cols), std::move(rhs));
  if (!sol)
    throw internal_error("level reduction left the short-decoration span");

  std::map<Partition, Rat, PartitionGradedLess> out;
  for (size_t i = 0; i < candidates.size(); ++i)
    if ((*sol)[i] != 0) out.emplace(candidates[i], (*sol)[i]);
  return memo.emplace(std::move(key), std::move(out)).first->second;
}

}  // namespace webcat::thin
