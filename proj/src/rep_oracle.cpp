#include "webcat/rep_oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <random>

namespace webcat::rep {

using diag::Atom;
using diag::AtomKind;
using diag::Layer;

// ---------------------------------------------------------------------------
// Parameters
// ---------------------------------------------------------------------------

RepParams RepParams::make(const Composition& shape, std::vector<Rat> c) {
  RepParams p;
  p.shape = shape;
  p.n = shape.length();
  p.N = shape.weight();
  for (int i = 0; i + 1 < p.n; ++i)
    if (shape[i] > shape[i + 1])
      throw invalid_input("shape rows must be weakly increasing");
  p.ell = p.n ? shape[p.n - 1] : 0;
  if (static_cast<int>(c.size()) != p.ell)
    throw invalid_input("twist length must equal the number of columns");
  p.c = std::move(c);
  for (int i = 0; i < p.n; ++i)
    for (int j = 0; j < shape[i]; ++j) {
      p.box_row.push_back(i);
      p.box_col.push_back(j);
      p.left_of.push_back(j == 0 ? -1 : static_cast<int>(p.box_row.size()) - 2);
    }
  // u_j = c_j + (column height) - n, per column j.
  for (int j = 0; j < p.ell; ++j) {
    int colheight = 0;
    for (int i = 0; i < p.n; ++i)
      if (shape[i] > j) ++colheight;
    p.u.push_back(p.c[static_cast<size_t>(j)] + colheight - p.n);
  }
  return p;
}

RepParams RepParams::rectangle(int n, int ell, std::vector<Rat> c) {
  return make(Composition(std::vector<int>(static_cast<size_t>(n), ell)),
              std::move(c));
}

std::vector<Rat> RepParams::default_twist(int ell) {
  std::vector<Rat> c;
  for (int i = 1; i <= ell; ++i) c.emplace_back(1000 * i);
  return c;
}

// ---------------------------------------------------------------------------
// Wedge bases
// ---------------------------------------------------------------------------

namespace {

void enumerate_increasing(int N, int k, std::vector<std::vector<int>>& out) {
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int v = start; v < N; ++v) {
      cur.push_back(v);
      rec(v + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

}  // namespace

WedgeSpace::WedgeSpace(const Composition& blocks, int N)
    : blocks_(blocks), N_(N) {
  dim_ = 1;
  for (int j = 0; j < blocks_.length(); ++j) {
    std::vector<std::vector<int>> basis;
    enumerate_increasing(N, blocks_[j], basis);
    radix_.push_back(static_cast<long>(basis.size()));
    dim_ *= static_cast<long>(basis.size());
    block_basis_.push_back(std::move(basis));
  }
}

std::vector<std::vector<int>> WedgeSpace::tuple(long index) const {
  std::vector<std::vector<int>> t(block_basis_.size());
  for (size_t j = block_basis_.size(); j-- > 0;) {
    long r = radix_[j];
    t[j] = block_basis_[j][static_cast<size_t>(index % r)];
    index /= r;
  }
  return t;
}

long WedgeSpace::index(const std::vector<std::vector<int>>& tuple) const {
  long idx = 0;
  for (size_t j = 0; j < block_basis_.size(); ++j) {
    const auto& basis = block_basis_[j];
    auto it = std::lower_bound(basis.begin(), basis.end(), tuple[j]);
    if (it == basis.end() || *it != tuple[j])
      throw internal_error("wedge tuple not in basis");
    idx = idx * radix_[j] + static_cast<long>(it - basis.begin());
  }
  return idx;
}

// ---------------------------------------------------------------------------
// Generator actions
// ---------------------------------------------------------------------------

namespace {

// Sorts a concatenation of strictly increasing runs; returns nullopt on a
// repeated index, otherwise the sorted list and the sign of the sort.
std::optional<std::pair<std::vector<int>, int>> sort_signed(
    std::vector<int> v) {
  int sign = 1;
  for (size_t i = 1; i < v.size(); ++i)
    for (size_t k = i; k > 0 && v[k - 1] >= v[k]; --k) {
      if (v[k - 1] == v[k]) return std::nullopt;
      std::swap(v[k - 1], v[k]);
      sign = -sign;
    }
  return std::make_pair(std::move(v), sign);
}

using ImageFn = std::function<std::map<long, Rat>(long)>;

// Image of one basis vector under a single non-dot atom in context.
std::map<long, Rat> web_atom_image(const Atom& atom, const WedgeSpace& src,
                                   const WedgeSpace& dst, int pos, long idx) {
  auto t = src.tuple(idx);
  std::map<long, Rat> out;
  switch (atom.kind) {
    case AtomKind::Merge: {
      std::vector<int> joined = t[static_cast<size_t>(pos)];
      joined.insert(joined.end(), t[static_cast<size_t>(pos) + 1].begin(),
                    t[static_cast<size_t>(pos) + 1].end());
      auto sorted = sort_signed(joined);
      if (!sorted) return out;
      std::vector<std::vector<int>> nt;
      for (int j = 0; j < static_cast<int>(t.size()); ++j) {
        if (j == pos) {
          nt.push_back(sorted->first);
        } else if (j != pos + 1) {
          nt.push_back(t[static_cast<size_t>(j)]);
        }
      }
      out[dst.index(nt)] = Rat(sorted->second);
      return out;
    }
    case AtomKind::Split: {
      const std::vector<int>& whole = t[static_cast<size_t>(pos)];
      const int a = atom.a;
      const int total = static_cast<int>(whole.size());
      std::vector<int> sel(static_cast<size_t>(a));
      std::function<void(int, int)> rec = [&](int start, int chosen) {
        if (chosen == a) {
          std::vector<int> left, right;
          std::vector<bool> used(static_cast<size_t>(total), false);
          for (int k = 0; k < a; ++k)
            used[static_cast<size_t>(sel[static_cast<size_t>(k)])] = true;
          // Shuffle sign: inversions between chosen and unchosen positions.
          int inv = 0;
          int seen_unchosen = 0;
          for (int k = 0; k < total; ++k) {
            if (used[static_cast<size_t>(k)]) {
              left.push_back(whole[static_cast<size_t>(k)]);
              inv += seen_unchosen;
            } else {
              right.push_back(whole[static_cast<size_t>(k)]);
              ++seen_unchosen;
            }
          }
          std::vector<std::vector<int>> nt;
          for (int j = 0; j < static_cast<int>(t.size()); ++j) {
            if (j == pos) {
              nt.push_back(left);
              nt.push_back(right);
            } else {
              nt.push_back(t[static_cast<size_t>(j)]);
            }
          }
          Rat sgn = (inv % 2 == 0) ? Rat(1) : Rat(-1);
          long di = dst.index(nt);
          auto it = out.find(di);
          if (it == out.end())
            out.emplace(di, sgn);
          else {
            it->second += sgn;
            if (it->second == 0) out.erase(it);
          }
          return;
        }
        for (int v = start; v <= total - (a - chosen); ++v) {
          sel[static_cast<size_t>(chosen)] = v;
          rec(v + 1, chosen + 1);
        }
      };
      if (a <= total) rec(0, 0);
      return out;
    }
    case AtomKind::Cross: {
      std::vector<std::vector<int>> nt = t;
      std::swap(nt[static_cast<size_t>(pos)], nt[static_cast<size_t>(pos) + 1]);
      Rat sgn = ((atom.a * atom.b) % 2 == 0) ? Rat(1) : Rat(-1);
      out[dst.index(nt)] = sgn;
      return out;
    }
    default:
      throw internal_error("web atom image on a dot");
  }
}

// Tensor-word workspace for dot actions: maps words to coefficients.
using Word = std::vector<int>;

Composition apply_atom_to_columns(const Atom& atom, const Composition& boundary,
                                  int pos, const RepParams& params,
                                  std::vector<std::map<long, Rat>>& cols);

void word_add(std::map<Word, Rat>& m, const Word& w, const Rat& c) {
  if (c == 0) return;
  auto it = m.find(w);
  if (it == m.end()) {
    m.emplace(w, c);
  } else {
    it->second += c;
    if (it->second == 0) m.erase(it);
  }
}

// One dot at word position k, following the twisted tensor action.
std::map<Word, Rat> dot_on_word(const Word& w, int k, const RepParams& p) {
  std::map<Word, Rat> out;
  const int ik = w[static_cast<size_t>(k)];
  if (p.left_of[static_cast<size_t>(ik)] >= 0) {
    Word nw = w;
    nw[static_cast<size_t>(k)] = p.left_of[static_cast<size_t>(ik)];
    word_add(out, nw, 1);
  }
  word_add(out, w, p.u[static_cast<size_t>(p.box_col[static_cast<size_t>(ik)])]);
  const int colk = p.box_col[static_cast<size_t>(ik)];
  for (int j = 0; j < static_cast<int>(w.size()); ++j) {
    if (j == k) continue;
    const int colj = p.box_col[static_cast<size_t>(w[static_cast<size_t>(j)])];
    Word nw = w;
    std::swap(nw[static_cast<size_t>(j)], nw[static_cast<size_t>(k)]);
    if (j < k && colj >= colk) {
      word_add(out, nw, 1);
    } else if (j > k && colj < colk) {
      word_add(out, nw, -1);
    }
  }
  return out;
}

// Embedding of a wedge tuple into the tensor power: the alternating sum
// over per-block arrangements.
std::map<Word, Rat> embed(const std::vector<std::vector<int>>& t) {
  std::map<Word, Rat> acc;
  acc.emplace(Word{}, Rat(1));
  for (const auto& block : t) {
    std::map<Word, Rat> next;
    std::vector<int> perm = block;
    std::sort(perm.begin(), perm.end());
    do {
      // sign of the arrangement relative to the sorted block
      int inv = 0;
      for (size_t x = 0; x < perm.size(); ++x)
        for (size_t y = x + 1; y < perm.size(); ++y)
          if (perm[x] > perm[y]) ++inv;
      Rat sgn = (inv % 2 == 0) ? Rat(1) : Rat(-1);
      for (auto& [w, c] : acc) {
        Word nw = w;
        nw.insert(nw.end(), perm.begin(), perm.end());
        word_add(next, nw, c * sgn);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    acc = std::move(next);
  }
  return acc;
}

// Collects the coefficients of blockwise strictly increasing words.
std::map<long, Rat> project(const std::map<Word, Rat>& words,
                            const WedgeSpace& space) {
  std::map<long, Rat> out;
  const auto& blocks = space.blocks();
  for (auto& [w, c] : words) {
    bool sorted = true;
    size_t off = 0;
    std::vector<std::vector<int>> t;
    for (int j = 0; j < blocks.length() && sorted; ++j) {
      std::vector<int> b(w.begin() + static_cast<long>(off),
                         w.begin() + static_cast<long>(off) + blocks[j]);
      for (size_t x = 0; x + 1 < b.size(); ++x)
        if (b[x] >= b[x + 1]) sorted = false;
      t.push_back(std::move(b));
      off += static_cast<size_t>(blocks[j]);
    }
    if (!sorted) continue;
    long idx = space.index(t);
    auto it = out.find(idx);
    if (it == out.end())
      out.emplace(idx, c);
    else {
      it->second += c;
      if (it->second == 0) out.erase(it);
    }
  }
  return out;
}

// Image of one basis vector under the full decoration on block pos: the
// product of the commuting dot operators on the embedded tensor factors.
std::map<long, Rat> full_dot_image(const WedgeSpace& space, int pos,
                                   const RepParams& p, long idx) {
  auto t = space.tuple(idx);
  auto words = embed(t);
  int off = 0;
  for (int j = 0; j < pos; ++j) off += space.blocks()[j];
  const int a = space.blocks()[pos];
  for (int q = 0; q < a; ++q) {
    std::map<Word, Rat> next;
    for (auto& [w, c] : words)
      for (auto& [nw, nc] : dot_on_word(w, off + q, p))
        word_add(next, nw, c * nc);
    words = std::move(next);
  }
  return project(words, space);
}

}  // namespace

std::map<std::vector<int>, Rat> tensor_dot_image(const std::vector<int>& word,
                                                 int k,
                                                 const RepParams& params) {
  return dot_on_word(word, k, params);
}

SparseMat act_web_generator(const Atom& atom, const Composition& boundary,
                            int pos, const RepParams& params) {
  WedgeSpace src(boundary, params.N);
  Layer layer;
  for (int j = 0; j < boundary.length(); ++j) {
    if (j == pos) {
      layer.push_back(atom);
      j += static_cast<int>(atom.source().size()) - 1;
    } else {
      layer.push_back(Atom::id(boundary[j]));
    }
  }
  WedgeSpace dst(Composition(diag::layer_target(layer)), params.N);
  if (src.dim() == 0 || dst.dim() == 0)
    return SparseMat(static_cast<int>(dst.dim()), static_cast<int>(src.dim()));
  SparseMat m(static_cast<int>(dst.dim()), static_cast<int>(src.dim()));
  for (long i = 0; i < src.dim(); ++i)
    for (auto& [j, c] : web_atom_image(atom, src, dst, pos, i))
      m.add(static_cast<int>(j), static_cast<int>(i), c);
  return m;
}

SparseMat act_dot(const Composition& boundary, int pos,
                  const RepParams& params) {
  if (boundary[pos] != 1)
    throw invalid_input("single-dot action requires a thickness-one strand");
  return act_packet(1, 1, boundary, pos, params);
}

SparseMat act_packet(int a, int r, const Composition& boundary, int pos,
                     const RepParams& params) {
  if (boundary[pos] != a)
    throw invalid_input("decoration thickness does not match the strand");
  if (r < 0 || r > a)
    throw invalid_input("decoration index out of range");
  WedgeSpace space(boundary, params.N);
  if (r == 0)
    return SparseMat::identity(static_cast<int>(space.dim()));
  std::vector<std::map<long, Rat>> cols;
  for (long i = 0; i < space.dim(); ++i) cols.push_back({{i, Rat(1)}});
  if (r == a) {
    apply_atom_to_columns(Atom::dot(a), boundary, pos, params, cols);
  } else {
    apply_atom_to_columns(Atom::wdot(a, r), boundary, pos, params, cols);
  }
  SparseMat m(static_cast<int>(space.dim()), static_cast<int>(space.dim()));
  for (size_t k = 0; k < cols.size(); ++k)
    for (auto& [i, c] : cols[k])
      m.add(static_cast<int>(i), static_cast<int>(k), c);
  return m;
}

// ---------------------------------------------------------------------------
// Morphism evaluation
// ---------------------------------------------------------------------------

namespace {

// Applies one atom at block position pos to a bundle of column vectors
// living in the space over `boundary`; returns the new boundary.
Composition apply_atom_to_columns(const Atom& atom, const Composition& boundary,
                                  int pos, const RepParams& params,
                                  std::vector<std::map<long, Rat>>& cols) {
  std::vector<int> nb;
  for (int j = 0; j < boundary.length(); ++j) {
    if (j == pos) {
      auto tgt = atom.target();
      nb.insert(nb.end(), tgt.begin(), tgt.end());
      j += static_cast<int>(atom.source().size()) - 1;
    } else {
      nb.push_back(boundary[j]);
    }
  }
  Composition nboundary(nb);
  WedgeSpace src(boundary, params.N);
  WedgeSpace dst(nboundary, params.N);

  std::map<long, std::map<long, Rat>> image_cache;
  auto image = [&](long i) -> const std::map<long, Rat>& {
    auto it = image_cache.find(i);
    if (it != image_cache.end()) return it->second;
    std::map<long, Rat> img;
    if (dst.dim() != 0) {
      if (atom.kind == AtomKind::Dot)
        img = full_dot_image(src, pos, params, i);
      else
        img = web_atom_image(atom, src, dst, pos, i);
    }
    return image_cache.emplace(i, std::move(img)).first->second;
  };
  if (atom.kind == AtomKind::WDot) {
    // The thinner decoration is the split / full dot / merge composite.
    Composition b1 = apply_atom_to_columns(
        Atom::split(atom.b, atom.a - atom.b), boundary, pos, params, cols);
    Composition b2 =
        apply_atom_to_columns(Atom::dot(atom.b), b1, pos, params, cols);
    return apply_atom_to_columns(Atom::merge(atom.b, atom.a - atom.b), b2, pos,
                                 params, cols);
  }

  for (auto& col : cols) {
    std::map<long, Rat> ncol;
    for (auto& [i, c] : col)
      for (auto& [j, v] : image(i)) {
        auto it = ncol.find(j);
        if (it == ncol.end())
          ncol.emplace(j, c * v);
        else {
          it->second += c * v;
          if (it->second == 0) ncol.erase(it);
        }
      }
    col = std::move(ncol);
  }
  return nboundary;
}

std::vector<std::map<long, Rat>> apply_diagram(const diag::Diagram& d,
                                               const RepParams& params,
                                               std::vector<std::map<long, Rat>> cols) {
  Composition boundary = d.source();
  for (const Layer& layer : d.layers()) {
    int pos = 0;
    for (const Atom& atom : layer) {
      if (atom.kind == AtomKind::Id) {
        pos += 1;
        continue;
      }
      boundary = apply_atom_to_columns(atom, boundary, pos, params, cols);
      pos += static_cast<int>(atom.target().size());
    }
  }
  return cols;
}

}  // namespace

SparseMat evaluate_on_columns(const Morphism& m, const RepParams& params,
                              const std::vector<long>& columns) {
  WedgeSpace src(m.source(), params.N);
  WedgeSpace dst(m.target(), params.N);
  SparseMat out(static_cast<int>(dst.dim()),
                static_cast<int>(columns.size()));
  for (auto& [d, c] : m.terms()) {
    std::vector<std::map<long, Rat>> cols;
    for (long idx : columns) cols.push_back({{idx, Rat(1)}});
    cols = apply_diagram(d, params, std::move(cols));
    for (size_t k = 0; k < cols.size(); ++k)
      for (auto& [i, v] : cols[k])
        out.add(static_cast<int>(i), static_cast<int>(k), v * c);
  }
  return out;
}

SparseMat evaluate(const Morphism& m, const RepParams& params) {
  WedgeSpace src(m.source(), params.N);
  std::vector<long> all;
  for (long i = 0; i < src.dim(); ++i) all.push_back(i);
  return evaluate_on_columns(m, params, all);
}

// ---------------------------------------------------------------------------
// Oracle normalization and Hom ranks
// ---------------------------------------------------------------------------

namespace {

struct OracleCacheEntry {
  RepParams params{};
  std::vector<long> probes;
  std::vector<nf::ElementaryCFD> basis;
  std::vector<std::vector<Rat>> cols;  // flattened basis images
};

std::vector<Rat> flatten_mat(const SparseMat& m2) {
  std::vector<Rat> v(static_cast<size_t>(m2.rows()) *
                         static_cast<size_t>(m2.cols()),
                     Rat(0));
  for (int i = 0; i < m2.rows(); ++i)
    for (auto& [j, c] : m2.row(i))
      v[static_cast<size_t>(i) * static_cast<size_t>(m2.cols()) +
        static_cast<size_t>(j)] = c;
  return v;
}

}  // namespace

nf::NormalForm oracle_normalize(const Morphism& m,
                                std::optional<int> degree_bound,
                                uint64_t seed) {
  const int d = degree_bound ? *degree_bound
                             : std::max(diag::degree(m), 0);
  const int weight = m.source().weight();
  const int ell = d + 1;

  using Key = std::tuple<std::vector<int>, std::vector<int>, int, uint64_t>;
  static std::map<Key, OracleCacheEntry> cache;
  static std::mutex cache_mu;
  Key key{m.source().parts(), m.target().parts(), d, seed};
  std::unique_lock<std::mutex> lock(cache_mu);
  auto cit = cache.find(key);
  if (cit == cache.end()) {
    OracleCacheEntry entry;
    entry.params = RepParams::rectangle(std::max(weight, 1), ell,
                                        RepParams::default_twist(ell));
    entry.basis =
        nf::enumerate_parmat(m.source(), m.target(), std::nullopt, d);
    WedgeSpace src0(m.source(), entry.params.N);
    WedgeSpace dst0(m.target(), entry.params.N);
    const long full = src0.dim() * dst0.dim();
    std::mt19937_64 prng(seed ^ 0x9e3779b97f4a7c15ull);
    if (full > 5000 &&
        src0.dim() > static_cast<long>(entry.basis.size()) + 8) {
      std::vector<long> all(static_cast<size_t>(src0.dim()));
      for (long i = 0; i < src0.dim(); ++i) all[static_cast<size_t>(i)] = i;
      std::shuffle(all.begin(), all.end(), prng);
      const long want =
          std::min<long>(src0.dim(), static_cast<long>(entry.basis.size()) + 8);
      entry.probes.assign(all.begin(), all.begin() + want);
      std::sort(entry.probes.begin(), entry.probes.end());
    } else {
      for (long i = 0; i < src0.dim(); ++i) entry.probes.push_back(i);
    }
    for (const auto& e : entry.basis)
      entry.cols.push_back(flatten_mat(evaluate_on_columns(
          diag::Morphism::single(nf::cfd_to_diagram(e)), entry.params,
          entry.probes)));
    cit = cache.emplace(std::move(key), std::move(entry)).first;
  }
  RepParams params = cit->second.params;
  auto basis = cit->second.basis;
  std::vector<long> probes = cit->second.probes;
  std::vector<std::vector<Rat>> cached_cols = cit->second.cols;
  lock.unlock();

  WedgeSpace src(m.source(), params.N);
  std::mt19937_64 rng(seed);
  auto flatten = flatten_mat;

  for (int attempt = 0;; ++attempt) {
    std::vector<std::vector<Rat>> cols;
    if (attempt == 0) {
      cols = cached_cols;
    } else {
      for (const auto& e : basis)
        cols.push_back(flatten(evaluate_on_columns(
            diag::Morphism::single(nf::cfd_to_diagram(e)), params, probes)));
    }
    std::vector<Rat> rhs = flatten(evaluate_on_columns(m, params, probes));
    std::optional<std::vector<Rat>> sol;
    bool unique = true;
    try {
      sol = linalg::Eliminator::solve(cols, rhs, true);
    } catch (const internal_error&) {
      unique = false;
    }
    if (unique && sol) {
      nf::NormalForm out(m.source(), m.target());
      for (size_t k = 0; k < basis.size(); ++k)
        out.add(basis[k], (*sol)[k]);
      // Verification columns.
      if (static_cast<long>(probes.size()) < src.dim()) {
        std::vector<long> extra;
        std::uniform_int_distribution<long> pick(0, src.dim() - 1);
        while (extra.size() < 3)
          extra.push_back(pick(rng));
        std::sort(extra.begin(), extra.end());
        extra.erase(std::unique(extra.begin(), extra.end()), extra.end());
        SparseMat lhs = evaluate_on_columns(m, params, extra);
        SparseMat rhs2 = evaluate_on_columns(nf::to_morphism(out), params,
                                             extra);
        if (!(lhs == rhs2))
          throw internal_error("probe-verified oracle expression failed");
      }
      return out;
    }
    if (!sol && unique)
      throw internal_error("oracle system inconsistent: basis does not span");
    // Underdetermined: widen the probe set and retry.
    if (static_cast<long>(probes.size()) == src.dim())
      throw internal_error("oracle system underdetermined at full rank");
    std::vector<long> all(static_cast<size_t>(src.dim()));
    for (long i = 0; i < src.dim(); ++i) all[static_cast<size_t>(i)] = i;
    std::shuffle(all.begin(), all.end(), rng);
    const long want =
        std::min<long>(src.dim(), static_cast<long>(probes.size()) * 2 + 8);
    probes.assign(all.begin(), all.begin() + want);
    std::sort(probes.begin(), probes.end());
    if (attempt > 8)
      throw internal_error("oracle probe escalation did not converge");
  }
}

int hom_rank(const Composition& mu, const Composition& nu,
             const nf::LevelParams& L, const RepParams& params) {
  if (mu.weight() != nu.weight())
    throw invalid_input("hom rank needs equal weights");
  int colheight = 0;
  for (int i = 0; i < params.n; ++i)
    if (params.shape[i] >= params.ell) ++colheight;
  if (mu.weight() > colheight)
    throw invalid_input("hom rank precondition: weight exceeds last column");
  auto basis = nf::enumerate_parmat(mu, nu, L.ell, std::nullopt);
  linalg::RankAccumulator acc;
  for (const auto& e : basis) {
    SparseMat m =
        evaluate(diag::Morphism::single(nf::cfd_to_diagram(e)), params);
    std::map<int, Rat> flat;
    for (int i = 0; i < m.rows(); ++i)
      for (auto& [j, c] : m.row(i)) flat[i * m.cols() + j] = c;
    acc.insert(std::move(flat));
  }
  return acc.rank();
}

}  // namespace webcat::rep
