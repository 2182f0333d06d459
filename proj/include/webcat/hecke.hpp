#pragma once

#include <string>
#include <vector>

#include "webcat/rep_oracle.hpp"

namespace webcat::hecke {

using comb::Composition;
using diag::Morphism;
using linalg::SparseMat;
using rep::RepParams;

/// Word generators inside the all-thin endomorphism space: a dot on strand j
/// and the crossing of strands i, i+1 (both 1-based positions, m strands).
Morphism x_generator(int m, int j);
Morphism s_generator(int m, int i);

/// Basis element of the polynomial-times-permutation algebra: a permutation
/// stacked over a dot monomial, with exponents below the level.
struct HeckeBasisElement {
  std::vector<int> w;          // image list, 0-based
  std::vector<int> exponents;  // one per strand

  std::string to_string() const;
};

/// All w x^k with exponents < ell, in a fixed deterministic order.
std::vector<HeckeBasisElement> hecke_basis(int m, int ell);

/// Right action of one basis element on the twisted tensor power.
SparseMat hecke_action_matrix(const HeckeBasisElement& h, int m,
                              const RepParams& params);

/// Right action of the full symmetrizer of the parabolic given by a
/// composition split of the m strands.
SparseMat young_symmetrizer_action(const Composition& mu, int m,
                                   const RepParams& params);

/// Tableaux of the parameter shape with non-negative entries summing to m
/// where only the last box of each row may be nonzero.
struct IdempotentTableau {
  std::vector<int> last_entry;  // one value per row of the shape
  std::vector<Composition> column_reading(const RepParams& params) const;
  std::vector<int> index_word(const RepParams& params) const;  // weakly incr.
  std::string to_string() const;
};

std::vector<IdempotentTableau> enumerate_idempotent_tableaux(
    const RepParams& params, int m);
/// Only tableaux supported in the last column.
std::vector<IdempotentTableau> enumerate_last_column_tableaux(
    const RepParams& params, int m);

/// 0/1 projector onto the row-orbit weight space of the tableau.
SparseMat idempotent_matrix(const IdempotentTableau& A, int m,
                            const RepParams& params);

/// dim Hom(M^mu, M^nu) over the level quotient, computed as the rank of the
/// symmetrizer-framed action family on the twisted tensor power.
int perm_module_hom_dim(const Composition& mu, const Composition& nu,
                        const nf::LevelParams& L, const RepParams& params);

struct WSchurReport {
  long web_side = 0;   // level basis count
  long schur_side = 0; // Hom dimension at negated parameters
  bool ok() const { return web_side == schur_side; }
};

/// Compares the level basis count between two boundaries against the
/// permutation-module Hom dimension at negated parameters.
WSchurReport wschur_dim_check(const Composition& lambda, const Composition& mu,
                              const nf::LevelParams& L, int shape_rows);

}  // namespace webcat::hecke
