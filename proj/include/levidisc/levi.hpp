#pragma once

#include <cstdint>
#include <vector>

#include "levidisc/numlin.hpp"

namespace levidisc {

// A vector-valued Hermitian form on C^m with k components,
// h_j(w) = <A_j w, w> with A_j Hermitian; the model hypersurface it defines
// is Re z_j = h_j(w).
struct LeviForm {
  int m = 0;
  int k = 0;
  std::vector<HermitianMatrix> matrices;

  // sum_j t_j A_j for real coefficients; exactly Hermitian.
  HermitianMatrix combine(const RVector& t) const;
  // sum_j lambda_j A_j for complex coefficients; a general matrix.
  CMatrix combine_complex(const CVector& lambda) const;
};

LeviForm make_levi_form(int m, int k, std::vector<HermitianMatrix> matrices);

// Realification of a Hermitian matrix as a vector in R^{m^2}: the m diagonal
// entries first, then the strict upper triangle row-major as (re, im) pairs.
RVector flatten_hermitian(const HermitianMatrix& a);

// Outcome of a predicate that is certified by exhibiting a direction c.
struct DirectionVerdict {
  bool found = false;
  RVector c;         // witness direction, |c| = 1 when found
  double value = 0;  // |det| or smallest eigenvalue achieved at c
};

// The component forms are linearly independent over R.
bool is_levi_generating(const LeviForm& l, double tol = kRankTol);

// The common kernel of the A_j is trivial.
bool is_levi_nondegenerate(const LeviForm& l, double tol = kRankTol);

// Some real combination sum c_j A_j is invertible.  Randomized certificate:
// the set of good c is the complement of a real hypersurface, so a few
// samples find one whenever it exists.
DirectionVerdict is_strongly_nondegenerate(const LeviForm& l, int samples = 32,
                                           std::uint64_t seed = 0,
                                           double tol = kRankTol);

// Some real combination sum c_j A_j is positive definite.  Projected
// supergradient ascent of the (concave) smallest-eigenvalue function over
// the unit ball, multi-start; `tol` is relative to max_j |A_j|_F.
DirectionVerdict find_pseudoconvex_direction(const LeviForm& l,
                                             int iters = 2000,
                                             double tol = 1e-8,
                                             int starts = 8,
                                             std::uint64_t seed = 0);

// Coordinate change w -> R w with R = (sum c_j A_j)^{-1/2}, which maps the
// chosen combination to the identity; returns the transformed form and R.
struct NormalizedForm {
  LeviForm form;
  CMatrix transform;
};
NormalizedForm normalize_q(const LeviForm& l, const RVector& c,
                           double tol = kRankTol);

struct ClassifyOptions {
  double tol = kRankTol;
  int snd_samples = 32;
  int spc_iters = 2000;
  int spc_starts = 8;
  double spc_tol = 1e-8;
  std::uint64_t seed = 0;
};

struct Classification {
  bool levi_generating = false;
  bool levi_nondegenerate = false;
  DirectionVerdict strongly_nondegenerate;
  DirectionVerdict strongly_pseudoconvex;
};

// Runs all four predicates and enforces the implications between them
// (a pseudoconvex witness also certifies strong nondegeneracy, which in
// turn implies a trivial common kernel).
Classification classify(const LeviForm& l, const ClassifyOptions& opts = {});

}  // namespace levidisc
