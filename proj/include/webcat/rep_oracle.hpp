#pragma once

#include <map>
#include <optional>
#include <vector>

#include "webcat/linalg.hpp"
#include "webcat/normalizer.hpp"

namespace webcat::rep {

using comb::Composition;
using comb::Partition;
using diag::Morphism;
using linalg::SparseMat;

/// Shape-and-twist data for the matrix representation on exterior powers.
/// The shape is a weakly increasing composition whose largest part is the
/// level; boxes are numbered along rows from the top. The twist c determines
/// the quotient parameters through u_i = c_i + shape'_i - n.
struct RepParams {
  Composition shape;        // weakly increasing parts, last part = ell
  int n = 0;                // number of rows
  int N = 0;                // number of boxes
  int ell = 0;              // number of columns
  std::vector<Rat> c;       // twist, one value per column
  std::vector<Rat> u;       // derived parameters, one per column
  std::vector<int> box_row; // row of each box (0-based)
  std::vector<int> box_col; // column of each box (0-based)
  std::vector<int> left_of; // index of the box to the left, or -1

  static RepParams make(const Composition& shape, std::vector<Rat> c);
  /// n rows of length ell; then u = c on the nose.
  static RepParams rectangle(int n, int ell, std::vector<Rat> c);
  static std::vector<Rat> default_twist(int ell);
};

/// Tensor-product-of-wedges basis for one boundary composition. Basis
/// vectors are tuples of strictly increasing index blocks, enumerated
/// lexicographically block by block.
class WedgeSpace {
 public:
  WedgeSpace(const Composition& blocks, int N);

  const Composition& blocks() const { return blocks_; }
  long dim() const { return dim_; }

  std::vector<std::vector<int>> tuple(long index) const;
  long index(const std::vector<std::vector<int>>& tuple) const;

 private:
  Composition blocks_;
  int N_;
  long dim_;
  std::vector<long> radix_;                      // per-block counts
  std::vector<std::vector<std::vector<int>>> block_basis_;
  // per block: map from sorted tuple to position
};

/// Matrix of one web generator in context: identity on the flanking blocks.
SparseMat act_web_generator(const diag::Atom& atom, const Composition& boundary,
                            int pos, const RepParams& params);

/// Matrix of the dot on a thickness-one block.
SparseMat act_dot(const Composition& boundary, int pos, const RepParams& params);

/// Matrix of the r-index decoration on a thickness-a block: the elementary
/// symmetric polynomial of the commuting dot operators on the embedded
/// tensor factors, restricted back to the wedge.
SparseMat act_packet(int a, int r, const Composition& boundary, int pos,
                     const RepParams& params);

/// One dot applied at position k of a plain tensor word (0-based), per the
/// twisted tensor action; exposed for the Hecke-side modules.
std::map<std::vector<int>, Rat> tensor_dot_image(const std::vector<int>& word,
                                                 int k,
                                                 const RepParams& params);

/// Matrix of a whole morphism (layer-by-layer product, linear in terms).
SparseMat evaluate(const Morphism& m, const RepParams& params);

/// Image of selected source basis columns; avoids materializing the full
/// matrix for large spaces.
SparseMat evaluate_on_columns(const Morphism& m, const RepParams& params,
                              const std::vector<long>& columns);

/// Expresses a morphism in the elementary-diagram basis by exact linear
/// solve against evaluated basis elements at level degree+1 and a rectangle
/// shape wide enough for faithfulness. Must agree with nf::normalize.
nf::NormalForm oracle_normalize(const Morphism& m,
                                std::optional<int> degree_bound = std::nullopt,
                                uint64_t seed = 2024);

/// Rank of the span of the evaluated level basis between two boundaries.
int hom_rank(const Composition& mu, const Composition& nu,
             const nf::LevelParams& L, const RepParams& params);

}  // namespace webcat::rep
