#include "webcat/diagram.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

namespace webcat::diag {

Atom Atom::id(int a) {
  if (a < 1) throw invalid_input("id thickness must be >= 1");
  return Atom{AtomKind::Id, a, 0};
}
Atom Atom::merge(int a, int b) {
  if (a < 1 || b < 1) throw invalid_input("merge labels must be >= 1");
  return Atom{AtomKind::Merge, a, b};
}
Atom Atom::split(int a, int b) {
  if (a < 1 || b < 1) throw invalid_input("split labels must be >= 1");
  return Atom{AtomKind::Split, a, b};
}
Atom Atom::cross(int a, int b) {
  if (a < 1 || b < 1) throw invalid_input("cross labels must be >= 1");
  return Atom{AtomKind::Cross, a, b};
}
Atom Atom::dot(int a) {
  if (a < 1) throw invalid_input("dot thickness must be >= 1");
  return Atom{AtomKind::Dot, a, 0};
}
Atom Atom::wdot(int a, int r) {
  if (a < 1 || r < 0 || r > a)
    throw invalid_input("wdot labels out of range");
  if (r == 0) return id(a);
  if (r == a) return dot(a);
  return Atom{AtomKind::WDot, a, r};
}

std::vector<int> Atom::source() const {
  switch (kind) {
    case AtomKind::Merge: return {a, b};
    case AtomKind::Cross: return {a, b};
    case AtomKind::Split: return {a + b};
    default: return {a};
  }
}

std::vector<int> Atom::target() const {
  switch (kind) {
    case AtomKind::Merge: return {a + b};
    case AtomKind::Cross: return {b, a};
    case AtomKind::Split: return {a, b};
    default: return {a};
  }
}

int Atom::dot_degree() const {
  if (kind == AtomKind::Dot) return a;
  if (kind == AtomKind::WDot) return b;
  return 0;
}

std::string Atom::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case AtomKind::Id: os << "id(" << a << ")"; break;
    case AtomKind::Merge: os << "merge(" << a << "," << b << ")"; break;
    case AtomKind::Split: os << "split(" << a << "," << b << ")"; break;
    case AtomKind::Cross: os << "cross(" << a << "," << b << ")"; break;
    case AtomKind::Dot: os << "dot(" << a << ")"; break;
    case AtomKind::WDot: os << "wdot(" << a << "," << b << ")"; break;
  }
  return os.str();
}

std::vector<int> layer_source(const Layer& l) {
  std::vector<int> s;
  for (const Atom& at : l) {
    auto v = at.source();
    s.insert(s.end(), v.begin(), v.end());
  }
  return s;
}

std::vector<int> layer_target(const Layer& l) {
  std::vector<int> t;
  for (const Atom& at : l) {
    auto v = at.target();
    t.insert(t.end(), v.begin(), v.end());
  }
  return t;
}

static bool layer_is_identity(const Layer& l) {
  return std::all_of(l.begin(), l.end(),
                     [](const Atom& a) { return a.kind == AtomKind::Id; });
}

Diagram Diagram::identity(const Composition& c) {
  Diagram d;
  d.source_ = c;
  d.target_ = c;
  return d;
}

Diagram::Diagram(Composition source, std::vector<Layer> layers)
    : source_(std::move(source)) {
  // Canonical form: every atom is pushed down to the earliest layer where
  // all of its input wires exist. This makes structural equality respect
  // the interchange law and the tensor padding convention.
  struct Wire {
    int thickness;
    int ready;  // first layer index at which the wire may be consumed
    long id;
  };
  struct Placement {
    Atom atom;
    int level;
    std::vector<long> inputs;
    std::vector<long> outputs;
  };
  long next_id = 0;
  std::vector<Wire> wires;
  for (int p : source_.parts()) wires.push_back({p, 0, next_id++});
  std::vector<Placement> placements;
  int max_level = 0;
  for (const Layer& l : layers) {
    {
      std::vector<int> expect = layer_source(l);
      std::vector<int> have;
      for (const Wire& w : wires) have.push_back(w.thickness);
      if (expect != have) {
        std::ostringstream os;
        os << "layer boundary mismatch: expected "
           << Composition(have).to_string();
        throw composition_error(os.str());
      }
    }
    size_t pos = 0;
    std::vector<Wire> next_wires;
    for (const Atom& a : l) {
      const size_t nin = a.source().size();
      if (a.kind == AtomKind::Id) {
        next_wires.push_back(wires[pos]);
        ++pos;
        continue;
      }
      int level = 0;
      std::vector<long> inputs;
      for (size_t k = 0; k < nin; ++k) {
        level = std::max(level, wires[pos + k].ready);
        inputs.push_back(wires[pos + k].id);
      }
      std::vector<long> outputs;
      for (int th : a.target()) {
        next_wires.push_back({th, level + 1, next_id});
        outputs.push_back(next_id++);
      }
      placements.push_back({a, level, std::move(inputs), std::move(outputs)});
      max_level = std::max(max_level, level);
      pos += nin;
    }
    for (size_t k = pos; k < wires.size(); ++k) next_wires.push_back(wires[k]);
    if (pos > wires.size())
      throw composition_error("layer consumes more strands than available");
    wires = std::move(next_wires);
  }
  std::vector<int> tparts;
  for (const Wire& w : wires) tparts.push_back(w.thickness);
  target_ = Composition(tparts);

  // Rebuild layer by layer, scanning wires left to right. An atom is
  // emitted once its level is reached and its input wires are adjacent;
  // otherwise it waits for the blocking atoms to clear.
  std::map<long, const Placement*> by_first_input;
  for (const Placement& p : placements) by_first_input[p.inputs[0]] = &p;
  std::vector<std::pair<int, long>> cur;  // (thickness, id)
  {
    size_t k = 0;
    for (int p : source_.parts()) cur.emplace_back(p, static_cast<long>(k++));
  }
  size_t remaining = placements.size();
  for (int level = 0; remaining > 0; ++level) {
    if (level > max_level + static_cast<int>(placements.size()) + 1)
      throw internal_error("diagram canonicalization failed to converge");
    Layer out;
    std::vector<std::pair<int, long>> next;
    bool nontrivial = false;
    for (size_t k = 0; k < cur.size();) {
      auto it = by_first_input.find(cur[k].second);
      bool placeable = false;
      if (it != by_first_input.end() && it->second->level <= level) {
        const Placement& p = *it->second;
        placeable = p.inputs.size() + k <= cur.size();
        for (size_t z = 0; placeable && z < p.inputs.size(); ++z)
          if (cur[k + z].second != p.inputs[z]) placeable = false;
      }
      if (placeable) {
        const Placement& p = *it->second;
        out.push_back(p.atom);
        auto tgt = p.atom.target();
        for (size_t z = 0; z < tgt.size(); ++z)
          next.emplace_back(tgt[z], p.outputs[z]);
        k += p.inputs.size();
        by_first_input.erase(it);
        --remaining;
        nontrivial = true;
      } else {
        out.push_back(Atom::id(cur[k].first));
        next.push_back(cur[k]);
        ++k;
      }
    }
    if (nontrivial) layers_.push_back(std::move(out));
    cur = std::move(next);
  }
}

int Diagram::dot_degree() const {
  int d = 0;
  for (const Layer& l : layers_)
    for (const Atom& a : l) d += a.dot_degree();
  return d;
}

Diagram Diagram::reflected() const {
  std::vector<Layer> out;
  for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) {
    Layer nl;
    for (const Atom& a : *it) {
      switch (a.kind) {
        case AtomKind::Merge: nl.push_back(Atom::split(a.a, a.b)); break;
        case AtomKind::Split: nl.push_back(Atom::merge(a.a, a.b)); break;
        case AtomKind::Cross: nl.push_back(Atom::cross(a.b, a.a)); break;
        default: nl.push_back(a);
      }
    }
    out.push_back(std::move(nl));
  }
  return Diagram(target_, std::move(out));
}

bool Diagram::operator<(const Diagram& o) const {
  if (source_ != o.source_) return source_ < o.source_;
  return layers_ < o.layers_;
}

std::string Diagram::to_string() const {
  if (layers_.empty()) {
    std::ostringstream os;
    bool first = true;
    for (int p : source_.parts()) {
      if (!first) os << " @ ";
      first = false;
      os << "id(" << p << ")";
    }
    if (first) os << "id(0)";  // unit object; not parseable, display only
    return os.str();
  }
  std::ostringstream os;
  bool first_layer = true;
  for (const Layer& l : layers_) {
    if (!first_layer) os << " ; ";
    first_layer = false;
    bool first = true;
    for (const Atom& a : l) {
      if (!first) os << " @ ";
      first = false;
      os << a.to_string();
    }
  }
  return os.str();
}

Morphism Morphism::single(Diagram d, Rat coeff) {
  Morphism m(d.source(), d.target());
  m.add(d, coeff);
  return m;
}

void Morphism::add(const Diagram& d, const Rat& c) {
  if (c == 0) return;
  if (d.source() != source_ || d.target() != target_)
    throw composition_error("term boundary differs from morphism boundary");
  auto it = terms_.find(d);
  if (it == terms_.end()) {
    terms_.emplace(d, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Morphism Morphism::operator+(const Morphism& o) const {
  if (source_ != o.source_ || target_ != o.target_)
    throw composition_error("adding morphisms with different boundaries");
  Morphism r = *this;
  for (auto& [d, c] : o.terms_) r.add(d, c);
  return r;
}

Morphism Morphism::operator-(const Morphism& o) const {
  return *this + o.scaled(-1);
}

Morphism Morphism::scaled(const Rat& c) const {
  Morphism r(source_, target_);
  if (c == 0) return r;
  for (auto& [d, t] : terms_) r.terms_.emplace(d, t * c);
  return r;
}

bool Morphism::operator==(const Morphism& o) const {
  return source_ == o.source_ && target_ == o.target_ && terms_ == o.terms_;
}

std::string Morphism::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [d, c] : terms_) {
    Rat cc = c;
    if (first) {
      if (cc < 0) {
        os << "-";
        cc = -cc;
      }
    } else {
      os << (cc < 0 ? " - " : " + ");
      if (cc < 0) cc = -cc;
    }
    first = false;
    if (cc != 1) os << rat_to_string(cc) << " * ";
    os << d.to_string();
  }
  return os.str();
}

Morphism compose(const Morphism& upper, const Morphism& lower) {
  if (upper.source() != lower.target())
    throw composition_error("composition boundary mismatch: lower target " +
                            lower.target().to_string() + " vs upper source " +
                            upper.source().to_string());
  Morphism r(lower.source(), upper.target());
  for (auto& [du, cu] : upper.terms())
    for (auto& [dl, cl] : lower.terms()) {
      std::vector<Layer> layers = dl.layers();
      layers.insert(layers.end(), du.layers().begin(), du.layers().end());
      r.add(Diagram(dl.source(), std::move(layers)), cu * cl);
    }
  return r;
}

static Layer identity_layer(const Composition& c) {
  Layer l;
  for (int p : c.parts()) l.push_back(Atom::id(p));
  return l;
}

Morphism tensor(const Morphism& left, const Morphism& right) {
  std::vector<int> sp = left.source().parts();
  auto rs = right.source().parts();
  sp.insert(sp.end(), rs.begin(), rs.end());
  std::vector<int> tp = left.target().parts();
  auto rt = right.target().parts();
  tp.insert(tp.end(), rt.begin(), rt.end());
  Morphism r{Composition(sp), Composition(tp)};
  for (auto& [dl, cl] : left.terms())
    for (auto& [dr, cr] : right.terms()) {
      const size_t n = std::max(dl.layers().size(), dr.layers().size());
      std::vector<Layer> layers;
      std::vector<int> lcur = dl.source().parts();
      std::vector<int> rcur = dr.source().parts();
      for (size_t k = 0; k < n; ++k) {
        Layer lay;
        if (k < dl.layers().size()) {
          lay = dl.layers()[k];
          lcur = layer_target(lay);
        } else {
          lay = identity_layer(Composition(lcur));
        }
        Layer rl;
        if (k < dr.layers().size()) {
          rl = dr.layers()[k];
          rcur = layer_target(rl);
        } else {
          rl = identity_layer(Composition(rcur));
        }
        lay.insert(lay.end(), rl.begin(), rl.end());
        layers.push_back(std::move(lay));
      }
      r.add(Diagram(Composition(sp), std::move(layers)), cl * cr);
    }
  return r;
}

int degree(const Morphism& m) {
  if (m.is_zero()) return INT_MIN;
  int d = INT_MIN;
  for (auto& [diag, c] : m.terms()) d = std::max(d, diag.dot_degree());
  return d;
}

Morphism expand_sugar(const Morphism& m) {
  Morphism r(m.source(), m.target());
  for (auto& [d, c] : m.terms()) {
    Morphism acc = m_id(d.source());
    for (const Layer& l : d.layers()) {
      Morphism layer_m;
      bool first = true;
      for (const Atom& a : l) {
        Morphism am;
        if (a.kind == AtomKind::WDot) {
          am = compose(m_merge(a.b, a.a - a.b),
                       compose(tensor(m_dot(a.b), m_id(a.a - a.b)),
                               m_split(a.b, a.a - a.b)));
        } else {
          am = Morphism::single(
              Diagram(Composition(a.source()), {Layer{a}}));
        }
        layer_m = first ? am : tensor(layer_m, am);
        first = false;
      }
      acc = compose(layer_m, acc);
    }
    r = r + acc.scaled(c);
  }
  return r;
}

Morphism reflect(const Morphism& m) {
  Morphism r(m.target(), m.source());
  for (auto& [d, c] : m.terms()) r.add(d.reflected(), c);
  return r;
}

Morphism m_id(const Composition& c) {
  return Morphism::single(Diagram::identity(c));
}
Morphism m_id(int a) { return m_id(Composition({a})); }

static Morphism atom_morphism(Atom a) {
  return Morphism::single(Diagram(Composition(a.source()), {Layer{a}}));
}

Morphism m_merge(int a, int b) { return atom_morphism(Atom::merge(a, b)); }
Morphism m_split(int a, int b) { return atom_morphism(Atom::split(a, b)); }
Morphism m_cross(int a, int b) { return atom_morphism(Atom::cross(a, b)); }
Morphism m_dot(int a) { return atom_morphism(Atom::dot(a)); }

Morphism m_wdot(int a, int r) {
  Atom at = Atom::wdot(a, r);
  if (at.kind == AtomKind::Id) return m_id(a);
  return atom_morphism(at);
}

Morphism m_packet(int a, const Partition& nu) {
  Morphism m = m_id(a);
  for (int p : nu.parts()) m = compose(m_wdot(a, p), m);
  return m;
}

}  // namespace webcat::diag
