#pragma once

#include <map>
#include <string>
#include <vector>

#include "webcat/combinatorics.hpp"
#include "webcat/core.hpp"

namespace webcat::diag {

using comb::Composition;
using comb::Partition;

enum class AtomKind : uint8_t { Id, Merge, Split, Cross, Dot, WDot };

/// One generator occupying consecutive strands of a layer. Dot is the full
/// dot on a strand of thickness a; WDot(a,r) the thinner decoration with
/// 0 < r < a (r = 0 collapses to Id, r = a to Dot at construction).
struct Atom {
  AtomKind kind = AtomKind::Id;
  int a = 1;  // first label (thickness)
  int b = 0;  // second label: Merge/Split/Cross partner, WDot index

  static Atom id(int a);
  static Atom merge(int a, int b);
  static Atom split(int a, int b);
  static Atom cross(int a, int b);
  static Atom dot(int a);
  static Atom wdot(int a, int r);

  std::vector<int> source() const;  // strand thicknesses consumed below
  std::vector<int> target() const;  // strand thicknesses produced above
  int dot_degree() const;

  bool operator==(const Atom& o) const {
    return kind == o.kind && a == o.a && b == o.b;
  }
  auto operator<=>(const Atom& o) const = default;

  std::string to_string() const;
};

using Layer = std::vector<Atom>;

/// A dotted web diagram: layers of atoms read bottom to top, each layer
/// read left to right. Canonical form drops layers made entirely of Id
/// atoms, so the identity diagram has no layers at all.
class Diagram {
 public:
  Diagram() = default;
  static Diagram identity(const Composition& c);
  /// Builds from layers; validates inner boundaries and canonicalizes.
  Diagram(Composition source, std::vector<Layer> layers);

  const Composition& source() const { return source_; }
  const Composition& target() const { return target_; }
  const std::vector<Layer>& layers() const { return layers_; }

  int dot_degree() const;
  Diagram reflected() const;

  bool operator==(const Diagram& o) const {
    return source_ == o.source_ && layers_ == o.layers_;
  }
  bool operator<(const Diagram& o) const;

  std::string to_string() const;

 private:
  Composition source_, target_;
  std::vector<Layer> layers_;
};

std::vector<int> layer_source(const Layer& l);
std::vector<int> layer_target(const Layer& l);

/// Finite linear combination of diagrams sharing one source and target,
/// over exact rational scalars. Zero coefficients are never stored.
class Morphism {
 public:
  Morphism() = default;
  Morphism(Composition source, Composition target)
      : source_(std::move(source)), target_(std::move(target)) {}
  static Morphism zero(const Composition& s, const Composition& t) {
    return Morphism(s, t);
  }
  static Morphism single(Diagram d, Rat coeff = 1);

  const Composition& source() const { return source_; }
  const Composition& target() const { return target_; }
  const std::map<Diagram, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(const Diagram& d, const Rat& c);
  Morphism operator+(const Morphism& o) const;
  Morphism operator-(const Morphism& o) const;
  Morphism scaled(const Rat& c) const;
  bool operator==(const Morphism& o) const;

  std::string to_string() const;

 private:
  Composition source_, target_;
  std::map<Diagram, Rat> terms_;
};

/// Vertical composite: upper stacked on top of lower. Throws
/// composition_error when target(lower) != source(upper).
Morphism compose(const Morphism& upper, const Morphism& lower);

/// Horizontal juxtaposition; the operand with fewer layers is padded with
/// identity layers at the top.
Morphism tensor(const Morphism& left, const Morphism& right);

/// Maximal dot degree over the terms; INT_MIN for the zero morphism.
int degree(const Morphism& m);

/// Replace every WDot(a,r) by split(r,a-r); dot(r) (x) id(a-r); merge.
Morphism expand_sugar(const Morphism& m);

/// Reflection along a horizontal axis: swaps merges and splits, reverses
/// layers, fixes dots, exchanges source and target.
Morphism reflect(const Morphism& m);

// Convenience builders (single-diagram morphisms).
Morphism m_id(const Composition& c);
Morphism m_id(int a);
Morphism m_merge(int a, int b);
Morphism m_split(int a, int b);
Morphism m_cross(int a, int b);
Morphism m_dot(int a);
Morphism m_wdot(int a, int r);
/// Stacked packet on one strand: parts applied bottom-to-top in decreasing
/// order.
Morphism m_packet(int a, const Partition& nu);

}  // namespace webcat::diag
