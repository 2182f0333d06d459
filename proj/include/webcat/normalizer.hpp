#pragma once

#include <map>
#include <optional>
#include <vector>

#include "webcat/diagram.hpp"
#include "webcat/thin.hpp"

namespace webcat::nf {

using comb::Composition;
using comb::IntMatrix;
using comb::Partition;
using diag::Diagram;
using diag::Morphism;

/// Basis datum of the normal form: a matrix A with prescribed margins and a
/// matrix P of partitions, one per cell, with parts bounded by the entry.
/// Encodes the diagram that splits every source strand into legs, decorates
/// each leg at its base, routes legs with minimal crossings, and merges them
/// into the target strands.
struct ElementaryCFD {
  Composition source;  // column margins
  Composition target;  // row margins
  IntMatrix A;         // rows = target parts, cols = source parts
  std::vector<std::vector<Partition>> P;

  static ElementaryCFD identity(const Composition& c);
  /// Validates margins and cell bounds.
  static ElementaryCFD make(Composition source, Composition target, IntMatrix A,
                            std::vector<std::vector<Partition>> P);

  int dot_degree() const;
  bool operator==(const ElementaryCFD& o) const;
  bool operator<(const ElementaryCFD& o) const;  // A row-major, then P graded
  std::string to_string() const;
};

/// Linear combination of elementary diagrams with a common boundary.
class NormalForm {
 public:
  NormalForm() = default;
  NormalForm(Composition source, Composition target)
      : source_(std::move(source)), target_(std::move(target)) {}

  const Composition& source() const { return source_; }
  const Composition& target() const { return target_; }
  const std::map<ElementaryCFD, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(const ElementaryCFD& e, const Rat& c);
  NormalForm operator+(const NormalForm& o) const;
  NormalForm operator-(const NormalForm& o) const;
  NormalForm scaled(const Rat& c) const;
  bool operator==(const NormalForm& o) const;

  int max_degree() const;  // INT_MIN when zero
  std::string to_string() const;

 private:
  Composition source_, target_;
  std::map<ElementaryCFD, Rat> terms_;
};

struct LevelParams {
  int ell = 1;
  std::vector<Rat> u;
  LevelParams() = default;
  LevelParams(int ell_, std::vector<Rat> u_);
  thin::Level thin_level() const { return thin::Level{ell, u}; }
};

/// Canonical layered realization of a basis element.
Diagram cfd_to_diagram(const ElementaryCFD& e);

/// Sum of realizations of all terms.
Morphism to_morphism(const NormalForm& f);

/// Rewrites an arbitrary morphism onto the elementary-diagram basis by
/// folding its layers bottom to top onto an accumulated normal form,
/// re-normalizing lower-degree correction terms recursively. Ring::Z
/// requires integral input coefficients and certifies integral output.
NormalForm normalize(const Morphism& m, Ring ring = Ring::Z);

/// normalize(compose(f, g)) computed through the diagram realizations.
NormalForm multiply_normal(const NormalForm& f, const NormalForm& g,
                           Ring ring = Ring::Z);

/// The two-leg balloon with decorations eta and tau expanded in the
/// decoration basis of End(a+b).
NormalForm balloon_expand(const Partition& eta, const Partition& tau, int a,
                          int b);

/// sum_i (-1)^i u(u+1)...(u+i-1) times the (r-i)-decoration on one strand.
Morphism g_element(int r, const Rat& u);

/// Rewrites onto the level-restricted basis: every cell partition of every
/// term ends with fewer than ell rows. Packets are conveyed to the leftmost
/// strand before the defining relation of the quotient is applied.
NormalForm cyclotomic_normalize(const Morphism& m, const LevelParams& L,
                                Ring ring = Ring::Q);
NormalForm cyclotomic_reduce(const NormalForm& f, const LevelParams& L,
                             Ring ring = Ring::Q);

/// All basis elements between the boundaries, optionally level-restricted
/// and degree-bounded, in canonical order.
std::vector<ElementaryCFD> enumerate_parmat(const Composition& mu,
                                            const Composition& lambda,
                                            std::optional<int> level,
                                            std::optional<int> max_degree);

/// Basis counts by total decoration degree 0..max_degree.
std::vector<long> graded_dimension(const Composition& mu,
                                   const Composition& lambda, int max_degree,
                                   std::optional<int> level);

}  // namespace webcat::nf
