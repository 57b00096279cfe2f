#include "levidisc/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "levidisc/rng.hpp"

namespace levidisc {

QuadraticPencil QuadraticPencil::from(const LeviForm& l,
                                      const LiftParams& params) {
  if (static_cast<int>(params.lambda.size()) != l.k ||
      static_cast<int>(params.c.size()) != l.k)
    throw DomainError("pencil: parameter length != k");
  QuadraticPencil out;
  out.p = l.combine_complex(params.lambda);
  out.q = l.combine(params.c);
  return out;
}

CirclePositivity circle_positivity(const LeviForm& l, const LiftParams& params,
                                   int grid_n, double eps) {
  if (grid_n < 4) throw DomainError("circle_positivity: grid too coarse");
  QuadraticPencil pencil = QuadraticPencil::from(l, params);
  const CMatrix& p = pencil.p;
  CMatrix pstar = p.adjoint();

  CirclePositivity out;
  out.margin = p.frobenius_norm() * (3.14159265358979323846 / grid_n);
  out.threshold = eps * (norm2(params.lambda) + norm2(params.c));
  double min_eig = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid_n; ++i) {
    double theta = 2.0 * 3.14159265358979323846 * i / grid_n;
    cdouble zeta(std::cos(theta), std::sin(theta));
    CMatrix b = pencil.q.matrix() + 0.5 * zeta * p + 0.5 * std::conj(zeta) * pstar;
    EigenDecomposition e = eig_hermitian(HermitianMatrix::symmetrized(b));
    min_eig = std::min(min_eig, e.eigenvalues[0]);
  }
  out.min_eig = min_eig;
  out.ok = (min_eig - out.margin > out.threshold);
  return out;
}

namespace {

double quadratic_residual(const CMatrix& pstar, const CMatrix& q,
                          const CMatrix& p, const CMatrix& x) {
  return (pstar * (x * x) + 2.0 * (q * x) + p).frobenius_norm();
}

// One Newton step for F(X) = P* X^2 + 2 Q X + P: solve the linearization
// P* X H + P* H X + 2 Q H = -F(X) as an m^2 x m^2 complex system,
// vec(column-major): [I (x) (P* X + 2Q) + X^T (x) P*] vec(H) = -vec(F).
CMatrix newton_step(const CMatrix& pstar, const CMatrix& q, const CMatrix& p,
                    const CMatrix& x) {
  const int m = x.rows();
  const int n2 = m * m;
  CMatrix lhs(n2, n2);
  CMatrix left = pstar * x + 2.0 * q;  // acts on H from the left
  CMatrix xt = x.transposed();
  for (int jb = 0; jb < m; ++jb)
    for (int ib = 0; ib < m; ++ib)
      for (int js = 0; js < m; ++js)
        for (int is = 0; is < m; ++is) {
          cdouble val = (jb == js ? left(ib, is) : cdouble(0));
          val += xt(jb, js) * pstar(ib, is);
          lhs(jb * m + ib, js * m + is) = val;
        }
  CMatrix f = pstar * (x * x) + 2.0 * (q * x) + p;
  CVector rhs(n2);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i) rhs[j * m + i] = -f(i, j);
  CVector h = solve_complex(lhs, rhs);
  CMatrix out(m, m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i) out(i, j) = h[j * m + i];
  return out;
}

}  // namespace

StableSolution solve_quadratic(const QuadraticPencil& pencil, double tol,
                               int max_iter) {
  const CMatrix& p = pencil.p;
  const CMatrix& q = pencil.q.matrix();
  const int m = p.rows();
  CMatrix pstar = p.adjoint();

  double norm_sum = p.frobenius_norm() + q.frobenius_norm();
  const double tol_abs = tol * norm_sum * norm_sum;

  LuFactors qf = lu_factor(q);
  if (qf.singular) throw DomainError("solve_quadratic: Q is singular");
  CMatrix qinv = lu_inverse(qf);

  // Start at the small-parameter approximation -Q^{-1} P / 2; the fixed
  // point contracts whenever the pencil is circle positive.  Iterate to
  // stagnation rather than to the tolerance: the extra steps are nearly
  // free and leave X at the attainable floor, not merely within tol.
  const double floor_abs = 1e-4 * tol_abs;
  CMatrix x = cdouble(-0.5, 0) * (qinv * p);
  double res = quadratic_residual(pstar, q, p, x);
  int iters = 0;
  double prev = res;
  int stall = 0;
  while (res > floor_abs && iters < max_iter) {
    x = cdouble(-0.5, 0) * (qinv * (p + pstar * (x * x)));
    res = quadratic_residual(pstar, q, p, x);
    ++iters;
    if (res > 0.9 * prev) {
      if (++stall >= 6) break;
    } else {
      stall = 0;
    }
    prev = res;
  }
  // Newton refinement when the fixed point plateaus short of tolerance.
  while (res > tol_abs && iters < max_iter) {
    CMatrix h = newton_step(pstar, q, p, x);
    CMatrix xn = x + h;
    double rn = quadratic_residual(pstar, q, p, xn);
    ++iters;
    if (!(rn < res))
      throw NumericalFailure("quadratic solver stalled", res);
    x = xn;
    res = rn;
  }
  if (res > tol_abs)
    throw NumericalFailure("quadratic solver did not converge", res);

  StableSolution out;
  out.x = std::move(x);
  out.residual = res;
  out.iterations = iters;
  out.spectral_radius = (m > 0) ? spectral_radius(out.x) : 0.0;
  if (!(out.spectral_radius < 1.0))
    throw StabilityViolation("solution is not a stable solvent",
                             out.spectral_radius);
  return out;
}

KrylovSpan krylov_span(const CMatrix& x, const CVector& v, double tol) {
  const int m = x.rows();
  double vnorm = norm2(v);
  if (vnorm == 0) {
    // empty span: the degenerate case, reported as such by defect_test
    KrylovSpan out;
    out.basis = CMatrix(m, 0);
    return out;
  }
  double xnorm = x.frobenius_norm();

  std::vector<CVector> basis;
  basis.push_back((cdouble(1.0 / vnorm, 0)) * v);
  CVector pow = v;
  double powscale = vnorm;
  while (static_cast<int>(basis.size()) < m) {
    pow = x * pow;
    powscale *= xnorm;
    CVector y = pow;
    for (int pass = 0; pass < 2; ++pass)
      for (const CVector& b : basis) y = y - dot_conj(b, y) * b;
    double yn = norm2(y);
    if (yn <= tol * powscale) break;
    basis.push_back(cdouble(1.0 / yn, 0) * y);
  }

  KrylovSpan out;
  out.dim = static_cast<int>(basis.size());
  out.basis = CMatrix(m, out.dim);
  for (int j = 0; j < out.dim; ++j) out.basis.set_column(j, basis[j]);
  return out;
}

DefectReport defect_test(const LeviForm& l, const KrylovSpan& s, double tol) {
  const int m = l.m, d = s.dim;
  std::vector<RVector> vecs(l.k, RVector(2 * m * d, 0.0));
  for (int j = 0; j < l.k; ++j) {
    const CMatrix& a = l.matrices[j].matrix();
    for (int col = 0; col < d; ++col) {
      CVector as = a * s.basis.column(col);
      for (int i = 0; i < m; ++i) {
        vecs[j][2 * (col * m + i)] = as[i].real();
        vecs[j][2 * (col * m + i) + 1] = as[i].imag();
      }
    }
  }
  RankResult r = real_rank(vecs, tol);
  DefectReport out;
  out.rank = r.rank;
  out.defective = r.rank < l.k;
  out.witness = r.kernel_witness;
  out.tol = tol;
  out.margin = r.margin;
  out.degenerate = (r.rank == 0);
  return out;
}

DistinctEigs count_distinct_eigs(const LeviForm& l, const RVector& t,
                                 double cluster_tol) {
  DistinctEigs out;
  out.decomposition = eig_hermitian(l.combine(t));
  const RVector& ev = out.decomposition.eigenvalues;
  const int m = l.m;
  double scale = 0;
  for (double e : ev) scale = std::max(scale, std::abs(e));
  if (scale == 0) {
    out.count = 1;
    out.cluster_starts = {0};
    return out;
  }
  const double gap = cluster_tol * scale;
  out.cluster_starts.push_back(0);
  for (int i = 1; i < m; ++i)
    if (ev[i] - ev[i - 1] > gap) out.cluster_starts.push_back(i);
  out.count = static_cast<int>(out.cluster_starts.size());
  return out;
}

NondefectiveSearch find_nondefective(const LeviForm& l, int samples,
                                     std::uint64_t seed,
                                     const SearchTolerances& tols) {
  if (samples < 1) throw DomainError("find_nondefective: samples must be >= 1");
  if (!is_levi_generating(l, tols.rank_tol))
    throw DomainError("find_nondefective: form is not generating");
  Rng rng(seed);
  int best_r_overall = 0;
  int best_rank_overall = 0;
  const int max_restarts = 5;
  NondefectiveSearch out;

  for (int restart = 0; restart <= max_restarts; ++restart) {
    RVector best_t;
    int best_r = 0;
    for (int s = 0; s < samples; ++s) {
      RVector t = rng.unit_real(l.k);
      DistinctEigs de = count_distinct_eigs(l, t, tols.cluster_tol);
      if (de.count > best_r) {  // ties keep the earliest sample
        best_r = de.count;
        best_t = std::move(t);
      }
    }
    best_r_overall = std::max(best_r_overall, best_r);

    DistinctEigs de = count_distinct_eigs(l, best_t, tols.cluster_tol);
    CVector v(l.m, cdouble(0));
    for (int start : de.cluster_starts) {
      CVector u = de.decomposition.eigenvectors.column(start);
      v = v + u;
    }
    // The span of {A(t)^l v} must reach exactly one dimension per cluster;
    // a shortfall means the clustering was too fine for the tolerance, so
    // resample rather than trust the verdict.
    KrylovSpan span = krylov_span(l.combine(best_t).matrix(), v, tols.krylov_tol);
    if (span.dim != de.count) continue;

    DefectReport report = defect_test(l, span, tols.rank_tol);
    best_rank_overall = std::max(best_rank_overall, report.rank);
    if (!report.defective) {
      out.lambda_dir = std::move(best_t);
      out.v = std::move(v);
      out.r = de.count;
      out.report = std::move(report);
      out.restarts = restart;
      return out;
    }
  }
  throw SearchFailure("no non-defective direction found", best_r_overall,
                      best_rank_overall);
}

StationaryPairData assemble_pair_params(const LeviForm& l,
                                        const RVector& lambda_dir,
                                        const CVector& v, const RVector& c,
                                        double shrink, int grid_n, double eps) {
  if (static_cast<int>(lambda_dir.size()) != l.k ||
      static_cast<int>(c.size()) != l.k)
    throw DomainError("assemble_pair_params: direction length != k");
  if (static_cast<int>(v.size()) != l.m)
    throw DomainError("assemble_pair_params: v length != m");

  StationaryPairData out;
  out.c = c;
  out.w0.assign(l.m, cdouble(0));
  out.y0.assign(l.k, 0.0);
  out.v = v;
  double vn = norm2(v);
  if (vn > shrink && vn > 0) out.v = cdouble(shrink / vn, 0) * v;

  double t = 1.0;
  for (int halvings = 0; halvings <= 60; ++halvings, t *= 0.5) {
    CVector lambda(l.k);
    for (int j = 0; j < l.k; ++j) lambda[j] = cdouble(t * lambda_dir[j], 0);
    LiftParams trial{lambda, c};
    if (circle_positivity(l, trial, grid_n, eps).ok) {
      out.lambda = std::move(lambda);
      return out;
    }
  }
  throw InconsistentWitness(
      "assemble_pair_params: positivity not certified at any dyadic scale; "
      "the direction c is not an admissible witness");
}

}  // namespace levidisc
