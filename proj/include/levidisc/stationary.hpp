#pragma once

#include <cstdint>
#include <optional>

#include "levidisc/levi.hpp"

namespace levidisc {

// Parameters (lambda, c) of a lift candidate: the boundary density is
// Re(lambda . zeta + c) componentwise, and the induced pencil is
// P = sum lambda_j A_j, Q = sum c_j A_j.
struct LiftParams {
  CVector lambda;
  RVector c;
};

struct QuadraticPencil {
  CMatrix p;
  HermitianMatrix q;
  static QuadraticPencil from(const LeviForm& l, const LiftParams& params);
};

// Certified positivity of B(theta) = Q + (e^{i theta} P + e^{-i theta} P*)/2
// on the whole circle: the smallest eigenvalue is sampled on a uniform grid
// and a Lipschitz margin |P|_F * pi / grid_n covers the gaps, so ok == true
// is a proof, not a heuristic.
struct CirclePositivity {
  bool ok = false;
  double min_eig = 0;     // smallest sampled eigenvalue
  double margin = 0;      // Lipschitz gap correction that was subtracted
  double threshold = 0;   // eps * (|lambda| + |c|) it was compared against
};
CirclePositivity circle_positivity(const LeviForm& l, const LiftParams& params,
                                   int grid_n = 256, double eps = 1e-6);

// The stable solvent of P* X^2 + 2 Q X + P = 0: the unique solution with
// spectrum in the open unit disc (it exists whenever circle positivity
// holds).  Fixed point X <- -Q^{-1}(P + P* X^2)/2 from the small-parameter
// approximation -Q^{-1} P / 2, with a Newton fallback if it stalls.
struct StableSolution {
  CMatrix x;
  double residual = 0;
  double spectral_radius = 0;
  int iterations = 0;
};
StableSolution solve_quadratic(const QuadraticPencil& pencil,
                               double tol = 1e-12, int max_iter = 500);

// Orthonormal basis (modified Gram-Schmidt, columns) of
// span{v, Xv, X^2 v, ...}, grown until the next power drops below
// tol * |X|_F^l * |v|.
struct KrylovSpan {
  CMatrix basis;  // m x dim
  int dim = 0;
};
KrylovSpan krylov_span(const CMatrix& x, const CVector& v,
                       double tol = kRankTol);

// Rank test: realify A_j restricted to the span (columns of s.basis) and
// measure the R-linear rank of the k resulting vectors.  rank < k means the
// family is dependent along the span; the witness is the dependency.
struct DefectReport {
  bool defective = false;
  int rank = 0;
  std::optional<RVector> witness;
  double tol = 0;
  double margin = 0;      // smallest accepted pivot over the column scale
  bool degenerate = false;  // rank == 0 (zero span)
};
DefectReport defect_test(const LeviForm& l, const KrylovSpan& s,
                         double tol = kRankTol);

// Number of distinct eigenvalues of sum t_j A_j, eigenvalues closer than
// cluster_tol * |A(t)|_2 merged into one cluster.
struct DistinctEigs {
  int count = 0;
  EigenDecomposition decomposition;
  std::vector<int> cluster_starts;  // index of the first eigenvalue per cluster
};
DistinctEigs count_distinct_eigs(const LeviForm& l, const RVector& t,
                                 double cluster_tol = 1e-6);

// Randomized search for a direction t maximizing the distinct-eigenvalue
// count r of A(t), with v the sum of one unit eigenvector per cluster; by a
// Vandermonde argument span{A(t)^l v} is then r-dimensional, and at the
// maximal r the restricted family is independent.  Deterministic for fixed
// seed: the argmax is reduced by (r, sample index), restarts draw from the
// same stream.
struct SearchTolerances {
  double cluster_tol = 1e-6;
  double krylov_tol = kRankTol;
  double rank_tol = kRankTol;
};
struct NondefectiveSearch {
  RVector lambda_dir;  // real direction t achieving the max
  CVector v;           // sum of one unit eigenvector per cluster
  int r = 0;           // distinct-eigenvalue count at lambda_dir
  DefectReport report;
  int restarts = 0;
};
NondefectiveSearch find_nondefective(const LeviForm& l, int samples = 200,
                                     std::uint64_t seed = 0,
                                     const SearchTolerances& tols = {});

// Full parameter set of a stationary disc candidate.
struct StationaryPairData {
  CVector lambda;
  RVector c;
  CVector w0;
  RVector y0;
  CVector v;
};

// Turns a search result into disc parameters: lambda = t * lambda_dir with
// t halved from 1 until circle positivity is certified, v scaled to
// |v| <= shrink, centered at the origin.
StationaryPairData assemble_pair_params(const LeviForm& l,
                                        const RVector& lambda_dir,
                                        const CVector& v, const RVector& c,
                                        double shrink = 0.1, int grid_n = 256,
                                        double eps = 1e-6);

}  // namespace levidisc
