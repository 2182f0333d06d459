#pragma once

#include <map>
#include <vector>

#include "webcat/combinatorics.hpp"
#include "webcat/core.hpp"

namespace webcat::thin {

using comb::IntPoly;
using comb::Monomial;
using comb::Partition;

/// Permutation of thin strands as a bottom-to-top map: the strand entering
/// at position i leaves at position p[i]. Composition v*w stacks v above w.
using Perm = std::vector<int>;

Perm perm_identity(int m);
Perm perm_compose(const Perm& upper, const Perm& lower);
Perm perm_transposition(int m, int j);  // swaps positions j, j+1

/// Element of the endomorphism algebra of m thin strands, written in the
/// normal form sum_{w,k} c * (w stacked over dot monomial x^k). Dots sit at
/// the bottom; x_i is the dot on the strand at bottom position i.
class Elem {
 public:
  explicit Elem(int m = 0) : m_(m) {}
  static Elem one(int m);
  static Elem from_poly(const IntPoly& p);  // identity permutation terms

  int strands() const { return m_; }
  const std::map<std::pair<Perm, Monomial>, Rat>& terms() const {
    return terms_;
  }
  bool is_zero() const { return terms_.empty(); }

  void add(const Perm& w, const Monomial& k, const Rat& c);
  Elem operator+(const Elem& o) const;
  Elem operator-(const Elem& o) const;
  Elem scaled(const Rat& c) const;

  /// Stack this element on top of a swap of positions (j, j+1); the swap is
  /// straightened through the dot monomials exactly.
  Elem after_swap(int j) const;
  /// Stack this element on top of one extra dot at position i.
  Elem after_dot(int i) const;
  /// Stack this element on top of a permutation.
  Elem after_perm(const Perm& w) const;
  /// General composition: this stacked on top of o.
  Elem compose(const Elem& o) const;
  /// Side-by-side juxtaposition.
  static Elem tensor(const Elem& left, const Elem& right);

  /// Image under merging all strands on top: permutations collapse away and
  /// only the dot monomials survive. Coefficients stay rational.
  std::map<Monomial, Rat> collapse() const;

 private:
  int m_;
  std::map<std::pair<Perm, Monomial>, Rat> terms_;
};

/// Exact thin expansion of the split-then-merge digon on (a,b) composed
/// under thin merges: a signed-free sum of permutations.
Elem digon(int a, int b);

/// The dot polynomial h_{a,r} with x^mono coefficients: moving the r-index
/// decoration on a thickness-a strand down through a full thin merge tree
/// produces merge over h_{a,r}(x_1..x_a). h for a partition is the product
/// over parts.
IntPoly hpoly(int a, int r);
IntPoly hpoly(int a, const Partition& nu);

/// Expands the two-leg balloon (split a+b into (a,b), decorations eta and
/// tau at the leg bases, merge back) in the decoration basis of the thick
/// strand. Coefficients are integers; the result is memoized.
std::map<Partition, Int, comb::PartitionGradedLess> balloon_expand_core(
    const Partition& eta, const Partition& tau, int a, int b);

/// Level parameters for cyclotomic reduction.
struct Level {
  int ell = 1;
  std::vector<Rat> u;
};

/// Rewrites an element so every dot exponent is < ell, using the defining
/// relation of the level-ell quotient on the leftmost strand only.
Elem cyclotomic_reduce(Elem e, const Level& L);

/// Expresses a decoration with ell or more rows on a single thickness-a
/// strand in the short-decoration basis of the level-ell quotient.
std::map<Partition, Rat, comb::PartitionGradedLess> cyclotomic_reduce_packet(
    int a, const Partition& nu, const Level& L);

}  // namespace webcat::thin
