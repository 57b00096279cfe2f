#include "levidisc/levi.hpp"

#include <algorithm>
#include <cmath>

#include "levidisc/rng.hpp"

namespace levidisc {

HermitianMatrix LeviForm::combine(const RVector& t) const {
  if (static_cast<int>(t.size()) != k)
    throw DomainError("combine: coefficient count != k");
  CMatrix s(m, m);
  for (int j = 0; j < k; ++j) {
    const CMatrix& a = matrices[j].matrix();
    for (int r = 0; r < m; ++r)
      for (int cidx = 0; cidx < m; ++cidx) s(r, cidx) += t[j] * a(r, cidx);
  }
  return HermitianMatrix::symmetrized(s);
}

CMatrix LeviForm::combine_complex(const CVector& lambda) const {
  if (static_cast<int>(lambda.size()) != k)
    throw DomainError("combine_complex: coefficient count != k");
  CMatrix s(m, m);
  for (int j = 0; j < k; ++j) {
    const CMatrix& a = matrices[j].matrix();
    for (int r = 0; r < m; ++r)
      for (int cidx = 0; cidx < m; ++cidx) s(r, cidx) += lambda[j] * a(r, cidx);
  }
  return s;
}

LeviForm make_levi_form(int m, int k, std::vector<HermitianMatrix> matrices) {
  if (m < 1) throw DomainError("levi form: m must be >= 1");
  if (k < 1) throw DomainError("levi form: k must be >= 1");
  if (static_cast<int>(matrices.size()) != k)
    throw DomainError("levi form: expected k component matrices");
  for (const HermitianMatrix& a : matrices)
    if (a.dim() != m) throw DomainError("levi form: component of wrong size");
  return LeviForm{m, k, std::move(matrices)};
}

RVector flatten_hermitian(const HermitianMatrix& a) {
  const int m = a.dim();
  RVector v;
  v.reserve(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i) v.push_back(a(i, i).real());
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      v.push_back(a(i, j).real());
      v.push_back(a(i, j).imag());
    }
  return v;
}

bool is_levi_generating(const LeviForm& l, double tol) {
  std::vector<RVector> vecs;
  vecs.reserve(l.k);
  for (const HermitianMatrix& a : l.matrices) vecs.push_back(flatten_hermitian(a));
  return real_rank(vecs, tol).rank == l.k;
}

bool is_levi_nondegenerate(const LeviForm& l, double tol) {
  // Trivial common kernel <=> the stacked matrix [A_1; ...; A_k] has full
  // complex column rank; realified so one rank routine serves everything.
  // Column j of the realification holds (Re, Im) of column j of each A_i,
  // column m+j the same for i*(column j), so C-linear combinations are
  // exactly R-linear combinations of the 2m columns.
  const int m = l.m, k = l.k;
  std::vector<RVector> cols(2 * m, RVector(2 * k * m, 0.0));
  for (int blk = 0; blk < k; ++blk) {
    const CMatrix& a = l.matrices[blk].matrix();
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        cdouble e = a(i, j);
        int row = 2 * (blk * m + i);
        cols[j][row] = e.real();
        cols[j][row + 1] = e.imag();
        cols[m + j][row] = -e.imag();  // entry of A * (i e_j)
        cols[m + j][row + 1] = e.real();
      }
  }
  return real_rank(cols, tol).rank == 2 * m;
}

DirectionVerdict is_strongly_nondegenerate(const LeviForm& l, int samples,
                                           std::uint64_t seed, double tol) {
  DirectionVerdict out;
  double scale = 0;
  for (const HermitianMatrix& a : l.matrices)
    scale = std::max(scale, a.frobenius_norm());
  if (scale == 0) return out;
  // det(sum c_j A_j) is a real polynomial in c, so it either vanishes
  // identically or on a null set; compare against tol * scale^m.
  const double thresh = tol * std::pow(scale, l.m);
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    RVector c = rng.unit_real(l.k);
    double d = std::abs(det(l.combine(c).matrix()));
    if (d > out.value) {
      out.value = d;
      out.c = c;
    }
    if (d > thresh) {
      out.found = true;
      out.c = c;
      out.value = d;
      return out;
    }
  }
  return out;
}

namespace {

struct EigEval {
  double min_eig;
  CVector vec;  // eigenvector of the smallest eigenvalue
};

EigEval eval_min_eig(const LeviForm& l, const RVector& c) {
  EigenDecomposition e = eig_hermitian(l.combine(c));
  return {e.eigenvalues[0], e.eigenvectors.column(0)};
}

RVector project_ball(RVector c) {
  double n = norm2(c);
  if (n > 1.0)
    for (double& x : c) x /= n;
  return c;
}

}  // namespace

DirectionVerdict find_pseudoconvex_direction(const LeviForm& l, int iters,
                                             double tol, int starts,
                                             std::uint64_t seed) {
  DirectionVerdict best;
  best.value = -std::numeric_limits<double>::infinity();
  double scale = 0;
  for (const HermitianMatrix& a : l.matrices)
    scale = std::max(scale, a.frobenius_norm());
  if (scale == 0) {
    best.value = 0;
    best.c.assign(l.k, 0.0);
    return best;
  }
  const double thresh = tol * scale;
  Rng rng(seed);

  auto record = [&](const RVector& c, double f) {
    if (f > best.value) {
      best.value = f;
      best.c = c;
    }
  };

  for (int s = 0; s < starts; ++s) {
    RVector c = rng.unit_real(l.k);
    EigEval cur = eval_min_eig(l, c);
    record(c, cur.min_eig);
    if (cur.min_eig > thresh) {
      best.found = true;
      best.c = c;
      best.value = cur.min_eig;
      return best;
    }
    double step = 1.0;
    for (int it = 0; it < iters; ++it) {
      // Supergradient of c -> lambda_min(sum c_j A_j) at a minimizing unit
      // eigenvector u: g_j = <A_j u, u>.
      RVector g(l.k);
      for (int j = 0; j < l.k; ++j)
        g[j] = dot_conj(cur.vec, l.matrices[j].matrix() * cur.vec).real();
      bool improved = false;
      while (step > 1e-14) {
        RVector cand(l.k);
        for (int j = 0; j < l.k; ++j) cand[j] = c[j] + step * g[j];
        cand = project_ball(std::move(cand));
        EigEval e = eval_min_eig(l, cand);
        if (e.min_eig > cur.min_eig) {
          c = std::move(cand);
          cur = std::move(e);
          record(c, cur.min_eig);
          step = std::min(step * 1.5, 4.0);
          improved = true;
          break;
        }
        step *= 0.5;
      }
      if (!improved) break;
      if (cur.min_eig > thresh) {
        best.found = true;
        best.c = c;
        best.value = cur.min_eig;
        return best;
      }
    }
  }
  return best;
}

NormalizedForm normalize_q(const LeviForm& l, const RVector& c, double tol) {
  HermitianMatrix q = l.combine(c);
  HermitianMatrix r = inv_sqrt_hpd(q, tol);  // rejects non-PD combinations
  NormalizedForm out;
  out.transform = r.matrix();
  std::vector<HermitianMatrix> mats;
  mats.reserve(l.k);
  for (const HermitianMatrix& a : l.matrices)
    mats.push_back(
        HermitianMatrix::symmetrized(out.transform * a.matrix() * out.transform));
  out.form = make_levi_form(l.m, l.k, std::move(mats));
  return out;
}

Classification classify(const LeviForm& l, const ClassifyOptions& o) {
  Classification out;
  out.levi_generating = is_levi_generating(l, o.tol);
  out.levi_nondegenerate = is_levi_nondegenerate(l, o.tol);
  out.strongly_nondegenerate =
      is_strongly_nondegenerate(l, o.snd_samples, o.seed, o.tol);
  out.strongly_pseudoconvex = find_pseudoconvex_direction(
      l, o.spc_iters, o.spc_tol, o.spc_starts, o.seed + 1);
  if (out.strongly_pseudoconvex.found) {
    // A positive definite combination is in particular invertible.
    if (!out.strongly_nondegenerate.found) {
      out.strongly_nondegenerate.found = true;
      out.strongly_nondegenerate.c = out.strongly_pseudoconvex.c;
      out.strongly_nondegenerate.value =
          std::abs(det(l.combine(out.strongly_pseudoconvex.c).matrix()));
    }
    out.levi_nondegenerate = true;
  } else if (out.strongly_nondegenerate.found) {
    out.levi_nondegenerate = true;
  }
  return out;
}

}  // namespace levidisc
