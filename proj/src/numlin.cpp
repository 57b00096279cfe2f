#include "levidisc/numlin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace levidisc {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double offdiag_norm(const CMatrix& a) {
  double s = 0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

cdouble trace(const CMatrix& a) {
  cdouble t = 0;
  for (int i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

// Rotate the phase of column `col` so its largest-magnitude entry is real
// positive (ties resolved to the lowest index).  Keeps eigenvector output
// deterministic and sign-stable.
void canonicalize_phase(CMatrix& v, int col) {
  int imax = 0;
  double best = -1;
  for (int i = 0; i < v.rows(); ++i) {
    double m = std::abs(v(i, col));
    if (m > best) {
      best = m;
      imax = i;
    }
  }
  if (best <= 0) return;
  cdouble ph = std::conj(v(imax, col)) / best;
  for (int i = 0; i < v.rows(); ++i) v(i, col) *= ph;
  v(imax, col) = cdouble(std::abs(v(imax, col)), 0);
}

}  // namespace

CMatrix CMatrix::identity(int n) {
  CMatrix e(n, n);
  for (int i = 0; i < n; ++i) e(i, i) = 1;
  return e;
}

double CMatrix::frobenius_norm() const {
  double s = 0;
  for (const cdouble& x : a_) s += std::norm(x);
  return std::sqrt(s);
}

double CMatrix::max_abs() const {
  double s = 0;
  for (const cdouble& x : a_) s = std::max(s, std::abs(x));
  return s;
}

CMatrix CMatrix::adjoint() const {
  CMatrix r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

CMatrix CMatrix::transposed() const {
  CMatrix r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

CMatrix CMatrix::conjugated() const {
  CMatrix r(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(i, j) = std::conj((*this)(i, j));
  return r;
}

CVector CMatrix::column(int j) const {
  CVector v(rows_);
  for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void CMatrix::set_column(int j, const CVector& v) {
  for (int i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

CMatrix operator+(const CMatrix& a, const CMatrix& b) {
  CMatrix r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
  return r;
}

CMatrix operator-(const CMatrix& a, const CMatrix& b) {
  CMatrix r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  CMatrix r(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int l = 0; l < a.cols(); ++l) {
      cdouble ail = a(i, l);
      if (ail == cdouble(0)) continue;
      for (int j = 0; j < b.cols(); ++j) r(i, j) += ail * b(l, j);
    }
  return r;
}

CMatrix operator*(cdouble s, const CMatrix& a) {
  CMatrix r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = s * a(i, j);
  return r;
}

CVector operator*(const CMatrix& a, const CVector& v) {
  CVector r(a.rows(), cdouble(0));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r[i] += a(i, j) * v[j];
  return r;
}

double RMatrix::frobenius_norm() const {
  double s = 0;
  for (double x : a_) s += x * x;
  return std::sqrt(s);
}

RVector operator*(const RMatrix& a, const RVector& v) {
  RVector r(a.rows(), 0.0);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r[i] += a(i, j) * v[j];
  return r;
}

double norm2(const RVector& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double norm2(const CVector& v) {
  double s = 0;
  for (const cdouble& x : v) s += std::norm(x);
  return std::sqrt(s);
}

cdouble dot_conj(const CVector& a, const CVector& b) {
  cdouble s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

CVector operator-(const CVector& a, const CVector& b) {
  CVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

CVector operator+(const CVector& a, const CVector& b) {
  CVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

CVector operator*(cdouble s, const CVector& v) {
  CVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
  return r;
}

HermitianMatrix HermitianMatrix::symmetrized(const CMatrix& a) {
  if (a.rows() != a.cols())
    throw DomainError("hermitian matrix must be square");
  int n = a.rows();
  CMatrix b(n, n);
  for (int i = 0; i < n; ++i) {
    b(i, i) = cdouble(a(i, i).real(), 0);
    for (int j = i + 1; j < n; ++j) {
      cdouble u = 0.5 * (a(i, j) + std::conj(a(j, i)));
      b(i, j) = u;
      b(j, i) = std::conj(u);
    }
  }
  return HermitianMatrix(std::move(b));
}

HermitianMatrix HermitianMatrix::identity(int n) {
  return symmetrized(CMatrix::identity(n));
}

double HermitianMatrix::asymmetry(const CMatrix& a) {
  double worst = 0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      worst = std::max(worst, std::abs(a(i, j) - std::conj(a(j, i))));
  return worst;
}

// ---------------------------------------------------------------------------
// Hermitian eigendecomposition: cyclic complex Jacobi.
//
// For the pivot a_pq = |g| e^{i phi} the rotation
//   R(p,p) = c, R(p,q) = s, R(q,p) = -conj(s), R(q,q) = c,
//   s = e^{i phi} t c,  t = sign(tau) / (|tau| + sqrt(1 + tau^2)),
//   tau = (a_qq - a_pp) / (2 |g|),
// annihilates the (p,q) entry of R* A R and keeps the transform unitary.
// Off-diagonal mass is strictly decreasing, convergence is quadratic once
// the matrix is nearly diagonal.
// ---------------------------------------------------------------------------
EigenDecomposition eig_hermitian(const HermitianMatrix& h, int max_sweeps) {
  const int n = h.dim();
  EigenDecomposition out;
  if (n == 0) {
    out.eigenvectors = CMatrix(0, 0);
    return out;
  }
  CMatrix a = h.matrix();
  CMatrix v = CMatrix::identity(n);
  const double scale = a.frobenius_norm();
  const double stop = 1e-14 * scale;

  if (scale > 0 && n > 1) {
    bool converged = false;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
      if (offdiag_norm(a) <= stop) {
        converged = true;
        break;
      }
      for (int p = 0; p < n - 1; ++p) {
        for (int q = p + 1; q < n; ++q) {
          cdouble apq = a(p, q);
          double g = std::abs(apq);
          if (g <= 1e-300) continue;
          double alpha = a(p, p).real();
          double beta = a(q, q).real();
          double tau = (beta - alpha) / (2 * g);
          double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
          double c = 1.0 / std::hypot(1.0, t);
          cdouble s = (apq / g) * (t * c);
          for (int i = 0; i < n; ++i) {  // A <- A R, V <- V R
            cdouble aip = a(i, p), aiq = a(i, q);
            a(i, p) = c * aip - std::conj(s) * aiq;
            a(i, q) = s * aip + c * aiq;
            cdouble vip = v(i, p), viq = v(i, q);
            v(i, p) = c * vip - std::conj(s) * viq;
            v(i, q) = s * vip + c * viq;
          }
          for (int j = 0; j < n; ++j) {  // A <- R* A
            cdouble apj = a(p, j), aqj = a(q, j);
            a(p, j) = c * apj - s * aqj;
            a(q, j) = std::conj(s) * apj + c * aqj;
          }
          a(p, q) = 0;
          a(q, p) = 0;
          a(p, p) = cdouble(a(p, p).real(), 0);
          a(q, q) = cdouble(a(q, q).real(), 0);
        }
      }
    }
    if (!converged && offdiag_norm(a) > stop)
      throw NumericalFailure("hermitian eigensolver did not converge",
                             offdiag_norm(a));
  }

  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int i, int j) {
    return a(i, i).real() < a(j, j).real();
  });

  out.eigenvalues.resize(n);
  out.eigenvectors = CMatrix(n, n);
  for (int j = 0; j < n; ++j) {
    out.eigenvalues[j] = a(idx[j], idx[j]).real();
    for (int i = 0; i < n; ++i) out.eigenvectors(i, j) = v(i, idx[j]);
    canonicalize_phase(out.eigenvectors, j);
  }

  const CMatrix& orig = h.matrix();
  double worst = 0;
  for (int j = 0; j < n; ++j) {
    CVector col = out.eigenvectors.column(j);
    CVector r = orig * col;
    for (int i = 0; i < n; ++i) r[i] -= out.eigenvalues[j] * col[i];
    worst = std::max(worst, norm2(r));
  }
  out.residual = worst;
  return out;
}

// ---------------------------------------------------------------------------
// General eigenvalues: characteristic polynomial by the Faddeev-LeVerrier
// recurrence, all roots at once by the Aberth-Ehrlich iteration, then a
// determinant check on every root.  Adequate (and fully deterministic) for
// the tiny dimensions this library deals in.
// ---------------------------------------------------------------------------
CVector eigvals_general(const CMatrix& x, int max_iter) {
  if (x.rows() != x.cols()) throw DomainError("eigvals_general: matrix not square");
  const int n = x.rows();
  if (n == 0) return {};
  if (n > 12)
    throw DomainError("eigvals_general: dimension > 12 not supported");
  if (n == 1) return {x(0, 0)};

  // p(z) = z^n + c[1] z^{n-1} + ... + c[n]
  CVector c(n + 1);
  c[0] = 1;
  CMatrix mk = x;
  c[1] = -trace(mk);
  for (int q = 2; q <= n; ++q) {
    CMatrix shifted = mk;
    for (int i = 0; i < n; ++i) shifted(i, i) += c[q - 1];
    mk = x * shifted;
    c[q] = -trace(mk) / cdouble(q, 0);
  }

  double radius = 1.0;
  for (int q = 1; q <= n; ++q) {
    double m = std::abs(c[q]);
    if (m > 0) radius = std::max(radius, std::pow(m, 1.0 / q));
  }
  radius += 1.0;

  CVector z(n);
  for (int i = 0; i < n; ++i) {
    double ang = 2.0 * 3.14159265358979323846 * (i + 0.5) / n + 0.4;
    z[i] = radius * cdouble(std::cos(ang), std::sin(ang));
  }

  auto eval = [&](cdouble t, cdouble& p, cdouble& dp, double& psc) {
    p = c[0];
    dp = 0;
    psc = std::abs(c[0]);
    double at = std::abs(t);
    for (int q = 1; q <= n; ++q) {
      dp = dp * t + p;
      p = p * t + c[q];
      psc = psc * at + std::abs(c[q]);
    }
  };

  std::vector<bool> done(n, false);
  bool all_done = false;
  for (int iter = 0; iter < max_iter && !all_done; ++iter) {
    all_done = true;
    for (int i = 0; i < n; ++i) {
      if (done[i]) continue;
      cdouble p, dp;
      double psc;
      eval(z[i], p, dp, psc);
      if (std::abs(p) <= 4.0 * n * kEps * psc) {
        done[i] = true;
        continue;
      }
      cdouble w = (dp == cdouble(0)) ? cdouble(std::abs(p), 0) : p / dp;
      cdouble sum = 0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        cdouble d = z[i] - z[j];
        if (std::abs(d) < 1e-14 * (1.0 + std::abs(z[i])))
          d = cdouble(1e-14 * (1.0 + std::abs(z[i])), 0);
        sum += cdouble(1, 0) / d;
      }
      cdouble denom = cdouble(1, 0) - w * sum;
      cdouble step = (std::abs(denom) < 1e-300) ? w : w / denom;
      z[i] -= step;
      if (std::abs(step) <= 1e-15 * (1.0 + std::abs(z[i])))
        done[i] = true;
      else
        all_done = false;
    }
  }
  if (!all_done) {
    double worst = 0;
    for (int i = 0; i < n; ++i) {
      cdouble p, dp;
      double psc;
      eval(z[i], p, dp, psc);
      if (psc > 0) worst = std::max(worst, std::abs(p) / psc);
    }
    throw NumericalFailure("root iteration did not converge", worst);
  }

  // Verify every root against the matrix itself, not just the polynomial.
  double detscale = std::pow(1.0 + x.frobenius_norm(), n);
  for (int i = 0; i < n; ++i) {
    CMatrix shifted = x;
    for (int d = 0; d < n; ++d) shifted(d, d) -= z[i];
    double dv = std::abs(lu_det(lu_factor(shifted)));
    if (!(dv <= 1e-6 * detscale))
      throw NumericalFailure("eigenvalue failed determinant verification", dv);
  }

  std::sort(z.begin(), z.end(), [](const cdouble& a, const cdouble& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return z;
}

double spectral_radius(const CMatrix& x) {
  double r = 0;
  for (const cdouble& mu : eigvals_general(x)) r = std::max(r, std::abs(mu));
  return r;
}

// ---------------------------------------------------------------------------
// Real QR with column pivoting (Householder), shared by real_rank and
// solve_linear_real.  Column norms are recomputed from scratch at each step;
// at these sizes robustness is worth the extra pass.
// ---------------------------------------------------------------------------
namespace {

struct Qrcp {
  RMatrix a;               // R in the upper triangle, Householder tails below
  RVector beta;            // reflector scalars
  std::vector<int> perm;   // perm[j] = original index of column j
  double scale = 0;        // largest initial column norm
  int steps = 0;
};

Qrcp qrcp_factor(RMatrix a) {
  const int rows = a.rows(), cols = a.cols();
  Qrcp f;
  f.perm.resize(cols);
  std::iota(f.perm.begin(), f.perm.end(), 0);
  const int t = std::min(rows, cols);
  f.beta.assign(t, 0.0);

  for (int j = 0; j < cols; ++j) {
    double s = 0;
    for (int i = 0; i < rows; ++i) s += a(i, j) * a(i, j);
    f.scale = std::max(f.scale, std::sqrt(s));
  }

  for (int k = 0; k < t; ++k) {
    int best = k;
    double bestn = -1;
    for (int j = k; j < cols; ++j) {
      double s = 0;
      for (int i = k; i < rows; ++i) s += a(i, j) * a(i, j);
      if (s > bestn) {
        bestn = s;
        best = j;
      }
    }
    if (!(bestn > 0)) {
      f.steps = k;
      f.a = std::move(a);
      return f;
    }
    if (best != k) {
      for (int i = 0; i < rows; ++i) std::swap(a(i, k), a(i, best));
      std::swap(f.perm[k], f.perm[best]);
    }

    // Householder vector for column k below the diagonal, v normalized so
    // v[k] = 1; tail stored in the zeroed entries.
    double sigma = 0;
    for (int i = k + 1; i < rows; ++i) sigma += a(i, k) * a(i, k);
    double x1 = a(k, k);
    double beta = 0;
    RVector v(rows - k, 0.0);
    v[0] = 1.0;
    if (sigma == 0) {
      beta = 0;  // already upper triangular in this column
    } else {
      double mu = std::sqrt(x1 * x1 + sigma);
      double v1 = (x1 <= 0) ? x1 - mu : -sigma / (x1 + mu);
      beta = 2.0 * v1 * v1 / (sigma + v1 * v1);
      for (int i = k + 1; i < rows; ++i) v[i - k] = a(i, k) / v1;
    }
    f.beta[k] = beta;
    if (beta != 0) {
      for (int j = k; j < cols; ++j) {
        double w = 0;
        for (int i = k; i < rows; ++i) w += v[i - k] * a(i, j);
        w *= beta;
        for (int i = k; i < rows; ++i) a(i, j) -= w * v[i - k];
      }
    }
    for (int i = k + 1; i < rows; ++i) {
      double tail = v[i - k];
      a(i, k) = tail;  // stash the reflector; R(i,k) is zero by construction
    }
    f.steps = k + 1;
  }
  f.a = std::move(a);
  return f;
}

void apply_qt(const Qrcp& f, RVector& b) {
  const int rows = f.a.rows();
  for (int k = 0; k < f.steps; ++k) {
    if (f.beta[k] == 0) continue;
    double w = b[k];
    for (int i = k + 1; i < rows; ++i) w += f.a(i, k) * b[i];
    w *= f.beta[k];
    b[k] -= w;
    for (int i = k + 1; i < rows; ++i) b[i] -= w * f.a(i, k);
  }
}

int qrcp_rank(const Qrcp& f, double tol) {
  double thresh = tol * f.scale;
  int r = 0;
  while (r < f.steps && std::abs(f.a(r, r)) > thresh) ++r;
  return r;
}

// Flip sign so the largest-magnitude entry is positive, ties at the lowest
// index; keeps witnesses reproducible across runs.
void canonicalize_sign(RVector& v) {
  int imax = 0;
  double best = -1;
  for (std::size_t i = 0; i < v.size(); ++i) {
    double m = std::abs(v[i]);
    if (m > best) {
      best = m;
      imax = static_cast<int>(i);
    }
  }
  if (best > 0 && v[imax] < 0)
    for (double& x : v) x = -x;
}

}  // namespace

RankResult real_rank(const std::vector<RVector>& vectors, double tol) {
  RankResult out;
  if (vectors.empty()) return out;
  const int cols = static_cast<int>(vectors.size());
  const int rows = static_cast<int>(vectors[0].size());
  for (const RVector& v : vectors)
    if (static_cast<int>(v.size()) != rows)
      throw DomainError("real_rank: vectors of unequal length");

  RMatrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = vectors[j][i];

  Qrcp f = qrcp_factor(std::move(m));
  out.scale = f.scale;
  int r = qrcp_rank(f, tol);
  out.rank = r;
  out.margin = (r > 0 && f.scale > 0) ? std::abs(f.a(r - 1, r - 1)) / f.scale : 0.0;

  if (r < cols) {
    // Null combination from the first rejected column: solve
    // R[0:r,0:r] y = -R[0:r,r], witness = perm(y, 1, 0, ...).
    RVector w(cols, 0.0);
    RVector y(r, 0.0);
    for (int i = r - 1; i >= 0; --i) {
      double s = -f.a(i, r);
      for (int j = i + 1; j < r; ++j) s -= f.a(i, j) * y[j];
      y[i] = s / f.a(i, i);
    }
    for (int j = 0; j < r; ++j) w[f.perm[j]] = y[j];
    w[f.perm[r]] = 1.0;
    double n = norm2(w);
    for (double& x : w) x /= n;
    canonicalize_sign(w);
    out.kernel_witness = std::move(w);
  }
  return out;
}

LinearSolveResult solve_linear_real(const RMatrix& m, const RVector& b,
                                    double tol) {
  if (static_cast<int>(b.size()) != m.rows())
    throw DomainError("solve_linear_real: size mismatch");
  Qrcp f = qrcp_factor(m);
  int r = qrcp_rank(f, tol);

  RVector qb = b;
  apply_qt(f, qb);
  RVector y(r, 0.0);
  for (int i = r - 1; i >= 0; --i) {
    double s = qb[i];
    for (int j = i + 1; j < r; ++j) s -= f.a(i, j) * y[j];
    y[i] = s / f.a(i, i);
  }
  LinearSolveResult out;
  out.rank = r;
  out.x.assign(m.cols(), 0.0);
  for (int j = 0; j < r; ++j) out.x[f.perm[j]] = y[j];

  RVector res = m * out.x;
  for (std::size_t i = 0; i < res.size(); ++i) res[i] -= b[i];
  out.residual = norm2(res);

  if (r < m.cols()) {
    double consistency =
        1e-8 * (1.0 + norm2(b) + m.frobenius_norm() * norm2(out.x));
    if (out.residual > consistency)
      throw NoSolutionError("rank-deficient system is inconsistent",
                            out.residual);
  }
  return out;
}

HermitianMatrix inv_sqrt_hpd(const HermitianMatrix& q, double tol) {
  EigenDecomposition e = eig_hermitian(q);
  const int n = q.dim();
  if (n == 0) return q;
  double top = std::max(std::abs(e.eigenvalues[0]),
                        std::abs(e.eigenvalues[n - 1]));
  if (!(e.eigenvalues[0] > tol * std::max(top, 1e-300)))
    throw DomainError("inv_sqrt_hpd: matrix is not positive definite "
                      "(smallest eigenvalue " +
                      std::to_string(e.eigenvalues[0]) + ")");
  CMatrix w = e.eigenvectors;
  for (int j = 0; j < n; ++j) {
    double s = 1.0 / std::sqrt(e.eigenvalues[j]);
    for (int i = 0; i < n; ++i) w(i, j) *= s;
  }
  return HermitianMatrix::symmetrized(w * e.eigenvectors.adjoint());
}

// ---------------------------------------------------------------------------
// Complex LU with partial pivoting.
// ---------------------------------------------------------------------------
LuFactors lu_factor(const CMatrix& a) {
  if (a.rows() != a.cols()) throw DomainError("lu_factor: matrix not square");
  const int n = a.rows();
  LuFactors f;
  f.lu = a;
  f.perm.resize(n);
  std::iota(f.perm.begin(), f.perm.end(), 0);
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::abs(f.lu(k, k));
    for (int i = k + 1; i < n; ++i) {
      double m = std::abs(f.lu(i, k));
      if (m > best) {
        best = m;
        piv = i;
      }
    }
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(piv, j));
      std::swap(f.perm[k], f.perm[piv]);
      f.sign = -f.sign;
    }
    cdouble pivot = f.lu(k, k);
    if (std::abs(pivot) == 0) {
      f.singular = true;
      continue;
    }
    for (int i = k + 1; i < n; ++i) {
      cdouble l = f.lu(i, k) / pivot;
      f.lu(i, k) = l;
      if (l == cdouble(0)) continue;
      for (int j = k + 1; j < n; ++j) f.lu(i, j) -= l * f.lu(k, j);
    }
  }
  return f;
}

cdouble lu_det(const LuFactors& f) {
  cdouble d = cdouble(f.sign, 0);
  for (int i = 0; i < f.lu.rows(); ++i) d *= f.lu(i, i);
  return d;
}

CVector lu_solve(const LuFactors& f, const CVector& b) {
  if (f.singular) throw DomainError("lu_solve: singular matrix");
  const int n = f.lu.rows();
  CVector x(n);
  for (int i = 0; i < n; ++i) x[i] = b[f.perm[i]];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
  for (int i = n - 1; i >= 0; --i) {
    for (int j = i + 1; j < n; ++j) x[i] -= f.lu(i, j) * x[j];
    x[i] /= f.lu(i, i);
  }
  return x;
}

CMatrix lu_inverse(const LuFactors& f) {
  if (f.singular) throw DomainError("lu_inverse: singular matrix");
  const int n = f.lu.rows();
  CMatrix r(n, n);
  CVector e(n, cdouble(0));
  for (int j = 0; j < n; ++j) {
    e.assign(n, cdouble(0));
    e[j] = 1;
    r.set_column(j, lu_solve(f, e));
  }
  return r;
}

cdouble det(const CMatrix& a) { return lu_det(lu_factor(a)); }

CMatrix inverse(const CMatrix& a) { return lu_inverse(lu_factor(a)); }

CVector solve_complex(const CMatrix& a, const CVector& b) {
  return lu_solve(lu_factor(a), b);
}

}  // namespace levidisc
