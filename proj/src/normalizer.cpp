#include "webcat/normalizer.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <mutex>
#include <numeric>
#include <sstream>

namespace webcat::nf {

using comb::binomial;
using comb::factorial;
using diag::Atom;
using diag::AtomKind;
using diag::Layer;

// ---------------------------------------------------------------------------
// ElementaryCFD
// ---------------------------------------------------------------------------

ElementaryCFD ElementaryCFD::identity(const Composition& c) {
  const int n = c.length();
  IntMatrix a(n, n);
  std::vector<std::vector<Partition>> p(
      static_cast<size_t>(n), std::vector<Partition>(static_cast<size_t>(n)));
  for (int i = 0; i < n; ++i) a.set(i, i, c[i]);
  return make(c, c, std::move(a), std::move(p));
}

ElementaryCFD ElementaryCFD::make(Composition source, Composition target,
                                  IntMatrix A,
                                  std::vector<std::vector<Partition>> P) {
  if (A.rows() != target.length() || A.cols() != source.length())
    throw internal_error("cfd: matrix shape does not match margins");
  if (!(A.row_sums() == target) || !(A.col_sums() == source))
    throw internal_error("cfd: margins inconsistent with matrix");
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) {
      const Partition& nu = P[static_cast<size_t>(i)][static_cast<size_t>(j)];
      if (nu.max_part() > A.at(i, j))
        throw internal_error("cfd: decoration part exceeds cell entry");
      if (A.at(i, j) == 0 && !nu.empty())
        throw internal_error("cfd: decoration on an absent leg");
    }
  ElementaryCFD e;
  e.source = std::move(source);
  e.target = std::move(target);
  e.A = std::move(A);
  e.P = std::move(P);
  return e;
}

int ElementaryCFD::dot_degree() const {
  int d = 0;
  for (auto& row : P)
    for (auto& nu : row) d += nu.weight();
  return d;
}

bool ElementaryCFD::operator==(const ElementaryCFD& o) const {
  return source == o.source && target == o.target && A == o.A && P == o.P;
}

bool ElementaryCFD::operator<(const ElementaryCFD& o) const {
  if (source != o.source) return source < o.source;
  if (target != o.target) return target < o.target;
  if (!(A == o.A)) return A < o.A;
  for (size_t i = 0; i < P.size(); ++i)
    for (size_t j = 0; j < P[i].size(); ++j) {
      const Partition& x = P[i][j];
      const Partition& y = o.P[i][j];
      if (!(x == y)) return comb::graded_lex_less(x, y);
    }
  return false;
}

std::string ElementaryCFD::to_string() const {
  std::ostringstream os;
  os << "A=" << A.to_string() << " P=[";
  for (size_t i = 0; i < P.size(); ++i) {
    if (i) os << ",";
    os << "[";
    for (size_t j = 0; j < P[i].size(); ++j) {
      if (j) os << ",";
      os << P[i][j].to_string();
    }
    os << "]";
  }
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------------------
// NormalForm
// ---------------------------------------------------------------------------

void NormalForm::add(const ElementaryCFD& e, const Rat& c) {
  if (c == 0) return;
  if (e.source != source_ || e.target != target_)
    throw composition_error("normal form term boundary mismatch");
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

NormalForm NormalForm::operator+(const NormalForm& o) const {
  NormalForm r = *this;
  for (auto& [e, c] : o.terms_) r.add(e, c);
  return r;
}

NormalForm NormalForm::operator-(const NormalForm& o) const {
  return *this + o.scaled(-1);
}

NormalForm NormalForm::scaled(const Rat& c) const {
  NormalForm r(source_, target_);
  if (c == 0) return r;
  for (auto& [e, t] : terms_) r.terms_.emplace(e, t * c);
  return r;
}

bool NormalForm::operator==(const NormalForm& o) const {
  return source_ == o.source_ && target_ == o.target_ && terms_ == o.terms_;
}

int NormalForm::max_degree() const {
  int d = INT_MIN;
  for (auto& [e, c] : terms_) d = std::max(d, e.dot_degree());
  return d;
}

std::string NormalForm::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << rat_to_string(c) << " * " << e.to_string();
  }
  return os.str();
}

LevelParams::LevelParams(int ell_, std::vector<Rat> u_)
    : ell(ell_), u(std::move(u_)) {
  if (ell < 1 || static_cast<int>(u.size()) != ell)
    throw invalid_input("level parameters need ell >= 1 values");
}

// ---------------------------------------------------------------------------
// Layered realization of a CFD
// ---------------------------------------------------------------------------

namespace {

struct LegRef {
  int row, col, thick;
};

std::vector<LegRef> legs_bottom_order(const ElementaryCFD& e) {
  std::vector<LegRef> legs;
  for (int j = 0; j < e.A.cols(); ++j)
    for (int i = 0; i < e.A.rows(); ++i)
      if (e.A.at(i, j) > 0) legs.push_back({i, j, e.A.at(i, j)});
  return legs;  // sorted by (col, row)
}

// Adjacent-swap realization of the routing from bottom order (col, row) to
// top order (row, col). orders[k] lists leg indices below event k.
struct MiddleRealization {
  std::vector<LegRef> legs;                // bottom order
  std::vector<int> events;                 // positions of adjacent swaps
  std::vector<std::vector<int>> orders;    // orders[0] bottom ... orders[K] top
};

MiddleRealization middle_realization(const ElementaryCFD& e) {
  MiddleRealization m;
  m.legs = legs_bottom_order(e);
  const int n = static_cast<int>(m.legs.size());
  std::vector<int> seq(static_cast<size_t>(n));
  std::iota(seq.begin(), seq.end(), 0);
  auto toprank_less = [&](int x, int y) {
    const LegRef& a = m.legs[static_cast<size_t>(x)];
    const LegRef& b = m.legs[static_cast<size_t>(y)];
    return std::make_pair(a.row, a.col) < std::make_pair(b.row, b.col);
  };
  m.orders.push_back(seq);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int q = 0; q + 1 < n; ++q) {
      if (toprank_less(seq[static_cast<size_t>(q) + 1],
                       seq[static_cast<size_t>(q)])) {
        std::swap(seq[static_cast<size_t>(q)], seq[static_cast<size_t>(q) + 1]);
        m.events.push_back(q);
        m.orders.push_back(seq);
        changed = true;
      }
    }
  }
  return m;
}

// Layer construction helper: a full layer over `cur` with a replacement atom
// list starting at strand `pos`; the number of consumed strands is derived
// from the atoms.
Layer make_layer(const std::vector<int>& cur, int pos,
                 const std::vector<Atom>& atoms) {
  int consumed = 0;
  for (const Atom& a : atoms)
    consumed += static_cast<int>(a.source().size());
  Layer l;
  for (int s = 0; s < pos; ++s) l.push_back(Atom::id(cur[static_cast<size_t>(s)]));
  for (const Atom& a : atoms) l.push_back(a);
  for (size_t s = static_cast<size_t>(pos + consumed); s < cur.size(); ++s)
    l.push_back(Atom::id(cur[s]));
  return l;
}

std::vector<int> apply_layer(const std::vector<int>& cur, const Layer& l) {
  return diag::layer_target(l);
}

// Appends the canonical decoration layers for partition nu on strand pos.
void append_packet_layers(std::vector<Layer>& layers, std::vector<int>& cur,
                          int pos, const Partition& nu) {
  for (int part : nu.parts()) {
    Atom w = Atom::wdot(cur[static_cast<size_t>(pos)], part);
    layers.push_back(make_layer(cur, pos, {w}));
  }
}

// Bottom split layers of a CFD, leaving `cur` as the leg thickness sequence
// in bottom order. Decoration layers are NOT included.
void append_bottom_layers(const ElementaryCFD& e, std::vector<Layer>& layers,
                          std::vector<int>& cur) {
  cur = e.source.parts();
  int pos = 0;  // strand position of the current column remainder
  for (int j = 0; j < e.A.cols(); ++j) {
    std::vector<int> thick;
    for (int i = 0; i < e.A.rows(); ++i)
      if (e.A.at(i, j) > 0) thick.push_back(e.A.at(i, j));
    int rest = e.source[j];
    for (size_t k = 0; k + 1 < thick.size(); ++k) {
      layers.push_back(make_layer(
          cur, pos + static_cast<int>(k),
          {Atom::split(thick[k], rest - thick[k])}));
      cur = apply_layer(cur, layers.back());
      rest -= thick[k];
    }
    pos += static_cast<int>(thick.size());
  }
}

void append_middle_layers(const MiddleRealization& m,
                          std::vector<Layer>& layers, std::vector<int>& cur) {
  for (size_t k = 0; k < m.events.size(); ++k) {
    const int q = m.events[k];
    const auto& below = m.orders[k];
    int a = m.legs[static_cast<size_t>(below[static_cast<size_t>(q)])].thick;
    int b =
        m.legs[static_cast<size_t>(below[static_cast<size_t>(q) + 1])].thick;
    layers.push_back(make_layer(cur, q, {Atom::cross(a, b)}));
    cur = apply_layer(cur, layers.back());
  }
}

void append_top_layers(const ElementaryCFD& e, std::vector<Layer>& layers,
                       std::vector<int>& cur) {
  int pos = 0;
  for (int i = 0; i < e.A.rows(); ++i) {
    std::vector<int> thick;
    for (int j = 0; j < e.A.cols(); ++j)
      if (e.A.at(i, j) > 0) thick.push_back(e.A.at(i, j));
    int acc = thick.empty() ? 0 : thick[0];
    for (size_t k = 1; k < thick.size(); ++k) {
      layers.push_back(make_layer(cur, pos, {Atom::merge(acc, thick[k])}));
      cur = apply_layer(cur, layers.back());
      acc += thick[k];
    }
    pos += 1;
  }
}

}  // namespace

Diagram cfd_to_diagram(const ElementaryCFD& e) {
  std::vector<Layer> layers;
  std::vector<int> cur;
  append_bottom_layers(e, layers, cur);
  const auto legs = legs_bottom_order(e);
  for (size_t q = 0; q < legs.size(); ++q)
    append_packet_layers(
        layers, cur, static_cast<int>(q),
        e.P[static_cast<size_t>(legs[q].row)][static_cast<size_t>(legs[q].col)]);
  MiddleRealization m = middle_realization(e);
  append_middle_layers(m, layers, cur);
  append_top_layers(e, layers, cur);
  Diagram d(e.source, std::move(layers));
  if (d.target() != e.target)
    throw internal_error("cfd realization produced a wrong boundary");
  return d;
}

Morphism to_morphism(const NormalForm& f) {
  Morphism m(f.source(), f.target());
  for (auto& [e, c] : f.terms()) m.add(cfd_to_diagram(e), c);
  return m;
}

// ---------------------------------------------------------------------------
// Balloon expansion and the g elements
// ---------------------------------------------------------------------------

NormalForm balloon_expand(const Partition& eta, const Partition& tau, int a,
                          int b) {
  auto coeffs = thin::balloon_expand_core(eta, tau, a, b);
  Composition boundary({a + b});
  NormalForm out(boundary, boundary);
  for (auto& [nu, c] : coeffs) {
    IntMatrix A(1, 1);
    A.set(0, 0, a + b);
    out.add(ElementaryCFD::make(boundary, boundary, A, {{nu}}), Rat(c));
  }
  return out;
}

Morphism g_element(int r, const Rat& u) {
  if (r < 1) throw invalid_input("g element needs thickness >= 1");
  Morphism m = diag::m_wdot(r, r).scaled(0);  // typed zero on End(r)
  Rat rising = 1;
  for (int i = 0; i <= r; ++i) {
    Rat coeff = (i % 2 == 0) ? rising : -rising;
    m = m + diag::m_wdot(r, r - i).scaled(coeff);
    rising *= (u + i);
  }
  return m;
}

// ---------------------------------------------------------------------------
// The fold
// ---------------------------------------------------------------------------

namespace {

using TermMap = std::map<ElementaryCFD, Rat>;

void term_add(TermMap& m, const ElementaryCFD& e, const Rat& c) {
  if (c == 0) return;
  auto it = m.find(e);
  if (it == m.end()) {
    m.emplace(e, c);
  } else {
    it->second += c;
    if (it->second == 0) m.erase(it);
  }
}

class Normalizer {
 public:
  NormalForm run(const Diagram& d);

 private:
  TermMap fold_diagram(const Diagram& d);
  TermMap compose_atom(const Atom& atom, int pos, const ElementaryCFD& e);
  TermMap apply_cross(int pos, const ElementaryCFD& e);
  TermMap apply_merge(const Atom& atom, int pos, const ElementaryCFD& e);
  TermMap apply_split(const Atom& atom, int pos, const ElementaryCFD& e);
  TermMap apply_packet(int r, int pos, const ElementaryCFD& e);

  // Distributes a packet index over the merge tree of one row.
  void distribute_over_legs(const std::vector<int>& thick, int r,
                            std::vector<int>& parts, const Int& coeff,
                            std::vector<std::pair<std::vector<int>, Int>>& out);

  // Packet descent through the routing region, with correction requeue.
  TermMap descend_parts(const ElementaryCFD& e, int row,
                        const std::vector<std::pair<int, int>>& pending,
                        int budget);

  Diagram materialize_correction(const ElementaryCFD& e,
                                 const MiddleRealization& mid, size_t event_idx,
                                 bool leg_left_above, int r0, int t, int row,
                                 const std::vector<std::pair<int, int>>& rest);

  std::map<Diagram, NormalForm> cache_;
  int depth_ = 0;
};

NormalForm Normalizer::run(const Diagram& d) {
  auto it = cache_.find(d);
  if (it != cache_.end()) return it->second;
  if (++depth_ > 64) throw internal_error("normalization recursion too deep");
  TermMap acc = fold_diagram(d);
  --depth_;
  NormalForm nf(d.source(), d.target());
  for (auto& [e, c] : acc) nf.add(e, c);
  cache_.emplace(d, nf);
  return nf;
}

TermMap Normalizer::fold_diagram(const Diagram& d) {
  TermMap acc;
  acc.emplace(ElementaryCFD::identity(d.source()), Rat(1));
  for (const Layer& layer : d.layers()) {
    int produced = 0;
    for (const Atom& atom : layer) {
      if (atom.kind == AtomKind::Id) {
        produced += 1;
        continue;
      }
      TermMap next;
      for (auto& [e, c] : acc) {
        TermMap piece = compose_atom(atom, produced, e);
        for (auto& [ne, nc] : piece) term_add(next, ne, nc * c);
      }
      acc = std::move(next);
      produced += static_cast<int>(atom.target().size());
    }
  }
  return acc;
}

TermMap Normalizer::compose_atom(const Atom& atom, int pos,
                                 const ElementaryCFD& e) {
  switch (atom.kind) {
    case AtomKind::Cross:
      return apply_cross(pos, e);
    case AtomKind::Merge:
      return apply_merge(atom, pos, e);
    case AtomKind::Split:
      return apply_split(atom, pos, e);
    case AtomKind::Dot:
      return apply_packet(atom.a, pos, e);
    case AtomKind::WDot:
      return apply_packet(atom.b, pos, e);
    case AtomKind::Id:
      break;
  }
  TermMap r;
  term_add(r, e, 1);
  return r;
}

TermMap Normalizer::apply_cross(int pos, const ElementaryCFD& e) {
  const int rows = e.A.rows(), cols = e.A.cols();
  IntMatrix A(rows, cols);
  auto P = e.P;
  std::vector<int> tparts = e.target.parts();
  std::swap(tparts[static_cast<size_t>(pos)],
            tparts[static_cast<size_t>(pos) + 1]);
  std::swap(P[static_cast<size_t>(pos)], P[static_cast<size_t>(pos) + 1]);
  for (int i = 0; i < rows; ++i) {
    int src = i;
    if (i == pos) src = pos + 1;
    else if (i == pos + 1) src = pos;
    for (int j = 0; j < cols; ++j) A.set(i, j, e.A.at(src, j));
  }
  TermMap r;
  term_add(r,
           ElementaryCFD::make(e.source, Composition(tparts), std::move(A),
                               std::move(P)),
           1);
  return r;
}

TermMap Normalizer::apply_merge(const Atom& atom, int pos,
                                const ElementaryCFD& e) {
  const int rows = e.A.rows(), cols = e.A.cols();
  if (e.target[pos] != atom.a || e.target[pos + 1] != atom.b)
    throw internal_error("merge labels do not match the working boundary");

  // Per-column choices: either a plain carry or a balloon expansion.
  struct Choice {
    Partition nu;
    Rat coeff;
  };
  std::vector<std::vector<Choice>> options(static_cast<size_t>(cols));
  for (int j = 0; j < cols; ++j) {
    const int la = e.A.at(pos, j), lb = e.A.at(pos + 1, j);
    const Partition& pa = e.P[static_cast<size_t>(pos)][static_cast<size_t>(j)];
    const Partition& pb =
        e.P[static_cast<size_t>(pos) + 1][static_cast<size_t>(j)];
    auto& opt = options[static_cast<size_t>(j)];
    if (la == 0 && lb == 0) {
      opt.push_back({Partition(), 1});
    } else if (la == 0) {
      opt.push_back({pb, 1});
    } else if (lb == 0) {
      opt.push_back({pa, 1});
    } else {
      for (auto& [nu, c] : thin::balloon_expand_core(pa, pb, la, lb))
        opt.push_back({nu, Rat(c)});
    }
  }

  std::vector<int> tparts;
  for (int i = 0; i < rows; ++i) {
    if (i == pos) {
      tparts.push_back(e.target[pos] + e.target[pos + 1]);
    } else if (i != pos + 1) {
      tparts.push_back(e.target[i]);
    }
  }
  Composition target(tparts);

  TermMap out;
  std::vector<size_t> pick(static_cast<size_t>(cols), 0);
  while (true) {
    Rat coeff = 1;
    for (int j = 0; j < cols; ++j)
      coeff *= options[static_cast<size_t>(j)][pick[static_cast<size_t>(j)]].coeff;
    IntMatrix A(rows - 1, cols);
    std::vector<std::vector<Partition>> P(
        static_cast<size_t>(rows - 1),
        std::vector<Partition>(static_cast<size_t>(cols)));
    int oi = 0;
    for (int i = 0; i < rows; ++i) {
      if (i == pos + 1) continue;
      for (int j = 0; j < cols; ++j) {
        if (i == pos) {
          A.set(oi, j, e.A.at(pos, j) + e.A.at(pos + 1, j));
          P[static_cast<size_t>(oi)][static_cast<size_t>(j)] =
              options[static_cast<size_t>(j)][pick[static_cast<size_t>(j)]].nu;
        } else {
          A.set(oi, j, e.A.at(i, j));
          P[static_cast<size_t>(oi)][static_cast<size_t>(j)] =
              e.P[static_cast<size_t>(i)][static_cast<size_t>(j)];
        }
      }
      ++oi;
    }
    term_add(out, ElementaryCFD::make(e.source, target, std::move(A),
                                      std::move(P)),
             coeff);
    // Advance the mixed-radix pick.
    int j = 0;
    for (; j < cols; ++j) {
      if (++pick[static_cast<size_t>(j)] <
          options[static_cast<size_t>(j)].size())
        break;
      pick[static_cast<size_t>(j)] = 0;
    }
    if (j == cols) break;
  }
  return out;
}

namespace {

// Distribution of one packet part over a new split (left, right): returns
// (left decoration, right decoration, coefficient) triples.
std::vector<std::tuple<Partition, Partition, Int>> distribute_over_split(
    const Partition& nu, int left, int right) {
  std::vector<std::tuple<Partition, Partition, Int>> acc{
      {Partition(), Partition(), 1}};
  for (int part : nu.parts()) {
    std::vector<std::tuple<Partition, Partition, Int>> next;
    for (int cc = 0; cc <= part; ++cc)
      for (int dd = 0; cc + dd <= part; ++dd) {
        const int ee = part - cc - dd;
        Int coeff = factorial(ee) * binomial(left - cc, ee) *
                    binomial(right - dd, ee);
        if (coeff == 0) continue;
        if (cc > left || dd > right) continue;
        for (auto& [l, r, c] : acc)
          next.emplace_back(cc ? l.with_part(cc) : l, dd ? r.with_part(dd) : r,
                            c * coeff);
      }
    std::map<std::pair<std::vector<int>, std::vector<int>>, Int> merged;
    for (auto& [l, r, c] : next) merged[{l.parts(), r.parts()}] += c;
    acc.clear();
    for (auto& [k, c] : merged)
      if (c != 0)
        acc.emplace_back(Partition(k.first), Partition(k.second), c);
  }
  return acc;
}

}  // namespace

TermMap Normalizer::apply_split(const Atom& atom, int pos,
                                const ElementaryCFD& e) {
  const int rows = e.A.rows(), cols = e.A.cols();
  const int b = atom.a, c_thick = atom.b;
  if (e.target[pos] != b + c_thick)
    throw internal_error("split labels do not match the working boundary");

  std::vector<int> legcols, legthick;
  for (int j = 0; j < cols; ++j)
    if (e.A.at(pos, j) > 0) {
      legcols.push_back(j);
      legthick.push_back(e.A.at(pos, j));
    }

  std::vector<int> tparts;
  for (int i = 0; i < rows; ++i) {
    if (i == pos) {
      tparts.push_back(b);
      tparts.push_back(c_thick);
    } else {
      tparts.push_back(e.target[i]);
    }
  }
  Composition target(tparts);

  TermMap out;
  const int nlegs = static_cast<int>(legcols.size());
  std::vector<int> s(static_cast<size_t>(nlegs), 0);
  std::function<void(int, int)> rec = [&](int idx, int remaining) {
    if (idx == nlegs) {
      if (remaining != 0) return;
      // Distribute each leg decoration over its (s_j, thick_j - s_j) split.
      std::vector<std::vector<std::tuple<Partition, Partition, Int>>> dists;
      for (int k = 0; k < nlegs; ++k)
        dists.push_back(distribute_over_split(
            e.P[static_cast<size_t>(pos)]
               [static_cast<size_t>(legcols[static_cast<size_t>(k)])],
            s[static_cast<size_t>(k)],
            legthick[static_cast<size_t>(k)] - s[static_cast<size_t>(k)]));
      std::vector<size_t> pick(static_cast<size_t>(nlegs), 0);
      while (true) {
        Int coeff = 1;
        for (int k = 0; k < nlegs; ++k)
          coeff *= std::get<2>(dists[static_cast<size_t>(k)]
                                    [pick[static_cast<size_t>(k)]]);
        IntMatrix A(rows + 1, cols);
        std::vector<std::vector<Partition>> P(
            static_cast<size_t>(rows + 1),
            std::vector<Partition>(static_cast<size_t>(cols)));
        int oi = 0;
        for (int i = 0; i < rows; ++i) {
          if (i == pos) {
            for (int k = 0; k < nlegs; ++k) {
              const int j = legcols[static_cast<size_t>(k)];
              const auto& d =
                  dists[static_cast<size_t>(k)][pick[static_cast<size_t>(k)]];
              A.set(oi, j, s[static_cast<size_t>(k)]);
              A.set(oi + 1, j,
                    legthick[static_cast<size_t>(k)] - s[static_cast<size_t>(k)]);
              P[static_cast<size_t>(oi)][static_cast<size_t>(j)] =
                  std::get<0>(d);
              P[static_cast<size_t>(oi) + 1][static_cast<size_t>(j)] =
                  std::get<1>(d);
            }
            ++oi;
          } else {
            for (int j = 0; j < cols; ++j) {
              A.set(oi, j, e.A.at(i, j));
              P[static_cast<size_t>(oi)][static_cast<size_t>(j)] =
                  e.P[static_cast<size_t>(i)][static_cast<size_t>(j)];
            }
          }
          ++oi;
        }
        term_add(out, ElementaryCFD::make(e.source, target, std::move(A),
                                          std::move(P)),
                 Rat(coeff));
        int k = 0;
        for (; k < nlegs; ++k) {
          if (++pick[static_cast<size_t>(k)] <
              dists[static_cast<size_t>(k)].size())
            break;
          pick[static_cast<size_t>(k)] = 0;
        }
        if (k == nlegs) break;
      }
      return;
    }
    const int cap = std::min(legthick[static_cast<size_t>(idx)], remaining);
    for (int v = 0; v <= cap; ++v) {
      s[static_cast<size_t>(idx)] = v;
      rec(idx + 1, remaining - v);
    }
  };
  rec(0, b);
  return out;
}

void Normalizer::distribute_over_legs(
    const std::vector<int>& thick, int r, std::vector<int>& parts,
    const Int& coeff, std::vector<std::pair<std::vector<int>, Int>>& out) {
  const int h = static_cast<int>(thick.size());
  if (h == 1) {
    if (r <= thick[0]) {
      parts[0] = r;
      out.emplace_back(parts, coeff);
      parts[0] = 0;
    }
    return;
  }
  int S = 0;
  for (int k = 0; k + 1 < h; ++k) S += thick[static_cast<size_t>(k)];
  const int last = thick[static_cast<size_t>(h) - 1];
  std::vector<int> subthick(thick.begin(), thick.end() - 1);
  for (int cc = 0; cc <= std::min(r, S); ++cc)
    for (int dd = 0; cc + dd <= r; ++dd) {
      const int ee = r - cc - dd;
      if (dd > last) continue;
      Int c2 = factorial(ee) * binomial(S - cc, ee) * binomial(last - dd, ee);
      if (c2 == 0) continue;
      std::vector<int> subparts(subthick.size(), 0);
      std::vector<std::pair<std::vector<int>, Int>> sub;
      distribute_over_legs(subthick, cc, subparts, coeff * c2, sub);
      for (auto& [sp, sc] : sub) {
        std::vector<int> full = sp;
        full.push_back(dd);
        out.emplace_back(std::move(full), sc);
      }
    }
}

TermMap Normalizer::apply_packet(int r, int pos, const ElementaryCFD& e) {
  if (r == 0) {
    TermMap out;
    term_add(out, e, 1);
    return out;
  }
  std::vector<int> legcols, thick;
  for (int j = 0; j < e.A.cols(); ++j)
    if (e.A.at(pos, j) > 0) {
      legcols.push_back(j);
      thick.push_back(e.A.at(pos, j));
    }
  std::vector<std::pair<std::vector<int>, Int>> assignments;
  std::vector<int> scratch(thick.size(), 0);
  distribute_over_legs(thick, r, scratch, 1, assignments);

  TermMap out;
  for (auto& [parts, coeff] : assignments) {
    std::vector<std::pair<int, int>> pending;  // (column, part)
    for (size_t k = 0; k < parts.size(); ++k)
      if (parts[k] > 0) pending.emplace_back(legcols[k], parts[k]);
    TermMap piece = descend_parts(e, pos, pending, e.dot_degree() + r);
    for (auto& [ne, nc] : piece) term_add(out, ne, nc * Rat(coeff));
  }
  return out;
}

TermMap Normalizer::descend_parts(
    const ElementaryCFD& e, int row,
    const std::vector<std::pair<int, int>>& pending, int budget) {
  if (pending.empty()) {
    TermMap out;
    term_add(out, e, 1);
    return out;
  }
  const auto [col, r0] = pending.front();
  std::vector<std::pair<int, int>> rest(pending.begin() + 1, pending.end());

  MiddleRealization mid = middle_realization(e);
  int legidx = -1;
  for (size_t q = 0; q < mid.legs.size(); ++q)
    if (mid.legs[q].row == row && mid.legs[q].col == col)
      legidx = static_cast<int>(q);
  if (legidx < 0) throw internal_error("descent on an absent leg");
  const int L = mid.legs[static_cast<size_t>(legidx)].thick;

  TermMap out;
  // Walk the crossings top-down along this leg, spilling corrections.
  const auto& top = mid.orders.back();
  int posn = static_cast<int>(
      std::find(top.begin(), top.end(), legidx) - top.begin());
  for (size_t k = mid.events.size(); k-- > 0;) {
    const int q = mid.events[k];
    if (posn != q && posn != q + 1) continue;
    const bool left_above = (posn == q);
    const auto& above = mid.orders[k + 1];
    const int other = above[static_cast<size_t>(left_above ? q + 1 : q)];
    const int Lp = mid.legs[static_cast<size_t>(other)].thick;
    for (int t = 1; t <= std::min({L, Lp, r0}); ++t) {
      Diagram corr =
          materialize_correction(e, mid, k, left_above, r0, t, row, rest);
      if (corr.dot_degree() >= budget)
        throw internal_error("descent correction failed the degree measure");
      Rat sign = left_above ? Rat(1) : Rat(-1);
      NormalForm sub = run(corr);
      for (auto& [ne, nc] : sub.terms())
        term_add(out, ne, nc * sign * Rat(factorial(t)));
    }
    posn = left_above ? q + 1 : q;
  }
  if (mid.orders.front()[static_cast<size_t>(posn)] != legidx)
    throw internal_error("descent lost track of its leg");

  // Main path: the part joins the decoration at the leg base.
  ElementaryCFD e2 = e;
  e2.P[static_cast<size_t>(row)][static_cast<size_t>(col)] =
      e2.P[static_cast<size_t>(row)][static_cast<size_t>(col)].with_part(r0);
  TermMap tail = descend_parts(e2, row, rest, budget);
  for (auto& [ne, nc] : tail) term_add(out, ne, nc);
  return out;
}

namespace {

// Zero-tolerant atom builders for gadget layers.
void push_split(std::vector<Atom>& v, int a, int b) {
  if (a > 0 && b > 0) v.push_back(Atom::split(a, b));
  else if (a + b > 0) v.push_back(Atom::id(a + b));
}
void push_merge(std::vector<Atom>& v, int a, int b) {
  if (a > 0 && b > 0) v.push_back(Atom::merge(a, b));
  else if (a + b > 0) v.push_back(Atom::id(a + b));
}
void push_cross(std::vector<Atom>& v, int a, int b) {
  if (a > 0 && b > 0) v.push_back(Atom::cross(a, b));
  else if (a > 0) v.push_back(Atom::id(a));
  else if (b > 0) v.push_back(Atom::id(b));
}
void push_wdot(std::vector<Atom>& v, int a, int r) {
  if (a == 0) return;
  v.push_back(Atom::wdot(a, r));
}

}  // namespace

Diagram Normalizer::materialize_correction(
    const ElementaryCFD& e, const MiddleRealization& mid, size_t event_idx,
    bool leg_left_above, int r0, int t, int row,
    const std::vector<std::pair<int, int>>& rest) {
  std::vector<Layer> layers;
  std::vector<int> cur;
  append_bottom_layers(e, layers, cur);
  for (size_t q = 0; q < mid.legs.size(); ++q)
    append_packet_layers(layers, cur, static_cast<int>(q),
                         e.P[static_cast<size_t>(mid.legs[q].row)]
                            [static_cast<size_t>(mid.legs[q].col)]);
  auto cross_layer = [&](size_t k) {
    const int q = mid.events[k];
    const auto& below = mid.orders[k];
    int a = mid.legs[static_cast<size_t>(below[static_cast<size_t>(q)])].thick;
    int b =
        mid.legs[static_cast<size_t>(below[static_cast<size_t>(q) + 1])].thick;
    layers.push_back(make_layer(cur, q, {Atom::cross(a, b)}));
    cur = apply_layer(cur, layers.back());
  };
  for (size_t k = 0; k < event_idx; ++k) cross_layer(k);

  // The gadget replacing the crossing at event_idx on strands (q, q+1).
  const int q = mid.events[event_idx];
  const auto& below = mid.orders[event_idx];
  const int tl =
      mid.legs[static_cast<size_t>(below[static_cast<size_t>(q)])].thick;
  const int tr =
      mid.legs[static_cast<size_t>(below[static_cast<size_t>(q) + 1])].thick;
  auto gadget_layer = [&](const std::vector<Atom>& atoms) {
    if (atoms.empty()) return;
    layers.push_back(make_layer(cur, q, atoms));
    cur = apply_layer(cur, layers.back());
  };
  auto id_if = [](std::vector<Atom>& v, int x) {
    if (x > 0) v.push_back(Atom::id(x));
  };
  if (leg_left_above) {
    // The decorated leg enters from the right strand below; the decoration
    // sits under the crossing.
    const int a = tl, b = tr;
    if (b - t == 0 && r0 - t != 0)
      throw internal_error("descent gadget lost its decoration");
    std::vector<Atom> l1;
    push_split(l1, t, a - t);
    push_split(l1, b - t, t);
    gadget_layer(l1);
    std::vector<Atom> l2;
    id_if(l2, t);
    id_if(l2, a - t);
    if (b - t > 0) push_wdot(l2, b - t, r0 - t);
    id_if(l2, t);
    gadget_layer(l2);
    std::vector<Atom> l3;
    id_if(l3, t);
    push_cross(l3, a - t, b - t);
    id_if(l3, t);
    gadget_layer(l3);
    std::vector<Atom> l4;
    push_merge(l4, t, b - t);
    push_merge(l4, a - t, t);
    gadget_layer(l4);
  } else {
    // The decorated leg enters from the left strand below; the decoration
    // sits above the crossing.
    const int b = tl, a = tr;
    if (b - t == 0 && r0 - t != 0)
      throw internal_error("descent gadget lost its decoration");
    std::vector<Atom> l1;
    push_split(l1, t, b - t);
    push_split(l1, a - t, t);
    gadget_layer(l1);
    std::vector<Atom> l2;
    id_if(l2, t);
    push_cross(l2, b - t, a - t);
    id_if(l2, t);
    gadget_layer(l2);
    std::vector<Atom> l3;
    id_if(l3, t);
    id_if(l3, a - t);
    if (b - t > 0) push_wdot(l3, b - t, r0 - t);
    id_if(l3, t);
    gadget_layer(l3);
    std::vector<Atom> l4;
    push_merge(l4, t, a - t);
    push_merge(l4, b - t, t);
    gadget_layer(l4);
  }
  for (size_t k = event_idx + 1; k < mid.events.size(); ++k) cross_layer(k);

  // Remaining pending parts at their top-order positions.
  const auto& top = mid.orders.back();
  for (auto& [pcol, ppart] : rest) {
    bool placed = false;
    for (size_t z = 0; z < top.size(); ++z) {
      const LegRef& lr = mid.legs[static_cast<size_t>(top[z])];
      if (lr.row == row && lr.col == pcol) {
        layers.push_back(make_layer(cur, static_cast<int>(z),
                                    {Atom::wdot(lr.thick, ppart)}));
        cur = apply_layer(cur, layers.back());
        placed = true;
        break;
      }
    }
    if (!placed) throw internal_error("pending decoration lost its leg");
  }
  append_top_layers(e, layers, cur);
  return Diagram(e.source, std::move(layers));
}

}  // namespace

NormalForm normalize(const Morphism& m, Ring ring) {
  if (ring == Ring::Z)
    for (auto& [d, c] : m.terms())
      if (!is_integer(c))
        throw ring_error("integral mode requires integral coefficients");
  static Normalizer shared;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  NormalForm out(m.source(), m.target());
  for (auto& [d, c] : m.terms()) out = out + shared.run(d).scaled(c);
  if (ring == Ring::Z)
    for (auto& [e, c] : out.terms())
      if (!is_integer(c))
        throw internal_error("integral input produced a rational normal form");
  return out;
}

NormalForm multiply_normal(const NormalForm& f, const NormalForm& g,
                           Ring ring) {
  return normalize(diag::compose(to_morphism(f), to_morphism(g)), ring);
}

// ---------------------------------------------------------------------------
// Level reduction
// ---------------------------------------------------------------------------

namespace {

// Correction stacks produced while conveying a decoration stack across the
// neighbouring strand on its left. Layers are relative to the full leg
// boundary `cur`; the packet strand sits at position q with thickness a and
// its left neighbour has thickness bp.
struct MoveCorrection {
  std::vector<Layer> layers;
  Rat coeff;
};

void append_wdot_layers(std::vector<Layer>& layers, std::vector<int>& cur,
                        int pos, const std::vector<int>& parts) {
  for (int p : parts) {
    layers.push_back(
        make_layer(cur, pos, {Atom::wdot(cur[static_cast<size_t>(pos)], p)}));
    cur = apply_layer(cur, layers.back());
  }
}

std::vector<MoveCorrection> move_stack_corrections(
    const std::vector<int>& stack, int a, int bp, int q,
    const std::vector<int>& cur) {
  std::vector<MoveCorrection> out;
  if (stack.empty()) return out;
  const int p = stack.front();
  std::vector<int> rest(stack.begin() + 1, stack.end());

  // Corrections from the bottom part itself, conjugated around the rest.
  for (int t = 1; t <= std::min({a, bp, p}); ++t) {
    MoveCorrection mc;
    mc.coeff = -Rat(factorial(t));
    std::vector<int> c = cur;
    auto layer = [&](const std::vector<Atom>& atoms, int pos) {
      mc.layers.push_back(make_layer(c, pos, atoms));
      c = apply_layer(c, mc.layers.back());
    };
    auto id_if = [](std::vector<Atom>& v, int x) {
      if (x > 0) v.push_back(Atom::id(x));
    };
    layer({Atom::cross(bp, a)}, q - 1);
    {
      std::vector<Atom> l1;
      push_split(l1, t, a - t);
      push_split(l1, bp - t, t);
      if (!l1.empty()) layer(l1, q - 1);
    }
    {
      std::vector<Atom> l2;
      id_if(l2, t);
      push_cross(l2, a - t, bp - t);
      id_if(l2, t);
      if (!l2.empty()) layer(l2, q - 1);
    }
    {
      std::vector<Atom> l3;
      id_if(l3, t);
      id_if(l3, bp - t);
      if (a - t > 0) push_wdot(l3, a - t, p - t);
      if (a - t == 0 && p - t != 0)
        throw internal_error("level move lost its decoration");
      id_if(l3, t);
      if (!l3.empty()) layer(l3, q - 1);
    }
    {
      std::vector<Atom> l4;
      push_merge(l4, t, bp - t);
      push_merge(l4, a - t, t);
      if (!l4.empty()) layer(l4, q - 1);
    }
    layer({Atom::cross(bp, a)}, q - 1);
    append_wdot_layers(mc.layers, c, q - 1, rest);
    layer({Atom::cross(a, bp)}, q - 1);
    out.push_back(std::move(mc));
  }
  // Corrections from the rest of the stack, below which the bottom part
  // stays put on the right strand.
  for (MoveCorrection sub : move_stack_corrections(rest, a, bp, q, cur)) {
    MoveCorrection mc;
    mc.coeff = sub.coeff;
    std::vector<int> c = cur;
    mc.layers.push_back(make_layer(c, q, {Atom::wdot(a, p)}));
    mc.layers.insert(mc.layers.end(), sub.layers.begin(), sub.layers.end());
    out.push_back(std::move(mc));
  }
  return out;
}

// Expands one term whose cell (row, col) has a decoration with >= ell rows
// into diagrams; every output either drops in degree or shortens the cell.
std::vector<std::pair<Diagram, Rat>> level_reduce_term(
    const ElementaryCFD& e, int row, int col, const LevelParams& L) {
  const int a = e.A.at(row, col);
  const Partition nu =
      e.P[static_cast<size_t>(row)][static_cast<size_t>(col)];

  ElementaryCFD hollow = e;
  hollow.P[static_cast<size_t>(row)][static_cast<size_t>(col)] = Partition();

  std::vector<Layer> base_layers;
  std::vector<int> cur;
  append_bottom_layers(hollow, base_layers, cur);
  MiddleRealization mid = middle_realization(hollow);
  for (size_t z = 0; z < mid.legs.size(); ++z)
    append_packet_layers(base_layers, cur, static_cast<int>(z),
                         hollow.P[static_cast<size_t>(mid.legs[z].row)]
                                 [static_cast<size_t>(mid.legs[z].col)]);
  int q0 = -1;
  for (size_t z = 0; z < mid.legs.size(); ++z)
    if (mid.legs[z].row == row && mid.legs[z].col == col)
      q0 = static_cast<int>(z);
  if (q0 < 0) throw internal_error("level reduction on an absent leg");

  // Convey the decoration to the leftmost strand, spilling corrections.
  std::vector<std::pair<Diagram, Rat>> out;
  std::vector<Layer> prefix, inv;  // inv recorded move by move
  std::vector<int> curk = cur;
  int q = q0;
  auto finish = [&](std::vector<Layer> middle, const Rat& coeff) {
    std::vector<Layer> layers = base_layers;
    layers.insert(layers.end(), middle.begin(), middle.end());
    std::vector<int> c2 = e.source.parts();
    for (const Layer& l : layers) c2 = diag::layer_target(l);
    std::vector<int> boundary = cur;
    append_middle_layers(mid, layers, boundary);
    append_top_layers(hollow, layers, boundary);
    out.emplace_back(Diagram(e.source, std::move(layers)), coeff);
  };

  while (q > 0) {
    const int bp = curk[static_cast<size_t>(q) - 1];
    for (MoveCorrection& mc :
         move_stack_corrections(nu.parts(), a, bp, q, curk)) {
      std::vector<Layer> middle = prefix;
      middle.insert(middle.end(), mc.layers.begin(), mc.layers.end());
      for (auto it = inv.rbegin(); it != inv.rend(); ++it)
        middle.push_back(*it);
      finish(std::move(middle), mc.coeff);
    }
    prefix.push_back(make_layer(curk, q - 1, {Atom::cross(bp, a)}));
    std::swap(curk[static_cast<size_t>(q) - 1], curk[static_cast<size_t>(q)]);
    inv.push_back(make_layer(curk, q - 1, {Atom::cross(a, bp)}));
    --q;
  }

  for (auto& [kappa, ck] :
       thin::cyclotomic_reduce_packet(a, nu, L.thin_level())) {
    std::vector<Layer> middle = prefix;
    std::vector<int> ck2 = curk;
    append_wdot_layers(middle, ck2, 0, kappa.parts());
    for (auto it = inv.rbegin(); it != inv.rend(); ++it) middle.push_back(*it);
    finish(std::move(middle), ck);
  }
  return out;
}

}  // namespace

NormalForm cyclotomic_reduce(const NormalForm& f, const LevelParams& L,
                             Ring ring) {
  NormalForm work = f;
  const int ell = L.ell;
  while (true) {
    const ElementaryCFD* victim = nullptr;
    int vrow = -1, vcol = -1;
    Rat vcoeff;
    for (auto& [e, c] : work.terms()) {
      // lexicographically last long cell in row-major order
      for (int i = 0; i < e.A.rows(); ++i)
        for (int j = 0; j < e.A.cols(); ++j)
          if (e.P[static_cast<size_t>(i)][static_cast<size_t>(j)].length() >=
              ell) {
            victim = &e;
            vrow = i;
            vcol = j;
            vcoeff = c;
          }
      if (victim) break;
    }
    if (!victim) break;
    ElementaryCFD e = *victim;
    const int deg = e.dot_degree();
    int longcells = 0;
    for (auto& rowp : e.P)
      for (auto& nu : rowp)
        if (nu.length() >= ell) ++longcells;

    work.add(e, -vcoeff);
    for (auto& [d, c] : level_reduce_term(e, vrow, vcol, L)) {
      NormalForm piece = normalize(diag::Morphism::single(d), Ring::Q);
      for (auto& [ne, nc] : piece.terms()) {
        int nlong = 0;
        for (auto& rowp : ne.P)
          for (auto& nu : rowp)
            if (nu.length() >= ell) ++nlong;
        const int ndeg = ne.dot_degree();
        if (ndeg > deg || (ndeg == deg && nlong >= longcells))
          throw internal_error("level reduction failed its measure");
        work.add(ne, nc * c * vcoeff);
      }
    }
  }
  if (ring == Ring::Z)
    for (auto& [e, c] : work.terms())
      if (!is_integer(c))
        throw ring_error(
            "level reduction produced rational coefficients in integral mode");
  return work;
}

NormalForm cyclotomic_normalize(const Morphism& m, const LevelParams& L,
                                Ring ring) {
  return cyclotomic_reduce(normalize(m, Ring::Q), L, ring);
}

// ---------------------------------------------------------------------------
// Basis enumeration
// ---------------------------------------------------------------------------

std::vector<ElementaryCFD> enumerate_parmat(const Composition& mu,
                                            const Composition& lambda,
                                            std::optional<int> level,
                                            std::optional<int> max_degree) {
  if (mu.weight() != lambda.weight())
    throw invalid_input("basis enumeration needs equal weights");
  if (!level && !max_degree)
    throw invalid_input("basis enumeration needs a level or a degree bound");
  std::vector<ElementaryCFD> out;
  for (const IntMatrix& A : comb::enumerate_contingency(lambda, mu)) {
    std::vector<std::pair<int, int>> cells;
    for (int i = 0; i < A.rows(); ++i)
      for (int j = 0; j < A.cols(); ++j)
        if (A.at(i, j) > 0) cells.emplace_back(i, j);
    std::vector<std::vector<Partition>> choices;
    for (auto& [i, j] : cells) {
      std::optional<int> len;
      if (level) len = *level - 1;
      int cap = max_degree ? *max_degree
                           : A.at(i, j) * (*level - 1);
      choices.push_back(comb::enumerate_bounded_partitions(A.at(i, j), len, cap));
    }
    std::vector<size_t> pick(cells.size(), 0);
    while (true) {
      int total = 0;
      for (size_t k = 0; k < cells.size(); ++k)
        total += choices[k][pick[k]].weight();
      if (!max_degree || total <= *max_degree) {
        std::vector<std::vector<Partition>> P(
            static_cast<size_t>(A.rows()),
            std::vector<Partition>(static_cast<size_t>(A.cols())));
        for (size_t k = 0; k < cells.size(); ++k)
          P[static_cast<size_t>(cells[k].first)]
           [static_cast<size_t>(cells[k].second)] = choices[k][pick[k]];
        out.push_back(ElementaryCFD::make(mu, lambda, A, std::move(P)));
      }
      size_t k = 0;
      for (; k < cells.size(); ++k) {
        if (++pick[k] < choices[k].size()) break;
        pick[k] = 0;
      }
      if (k == cells.size()) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<long> graded_dimension(const Composition& mu,
                                   const Composition& lambda, int max_degree,
                                   std::optional<int> level) {
  std::vector<long> counts(static_cast<size_t>(max_degree) + 1, 0);
  for (const ElementaryCFD& e :
       enumerate_parmat(mu, lambda, level, max_degree))
    ++counts[static_cast<size_t>(e.dot_degree())];
  return counts;
}

}  // namespace webcat::nf
