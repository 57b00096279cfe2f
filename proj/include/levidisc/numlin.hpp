#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "levidisc/errors.hpp"

namespace levidisc {

using cdouble = std::complex<double>;
using CVector = std::vector<cdouble>;
using RVector = std::vector<double>;

// Relative zero threshold used wherever a rank decision is made.
inline constexpr double kRankTol = 1e-9;

// Dense complex matrix, row-major.  Everything here is sized for small
// dimensions (m <= 8, k <= m^2); clarity beats blocking.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

  static CMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  cdouble& operator()(int i, int j) {
    return a_[static_cast<std::size_t>(i) * cols_ + j];
  }
  const cdouble& operator()(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * cols_ + j];
  }

  double frobenius_norm() const;
  double max_abs() const;

  CMatrix adjoint() const;
  CMatrix transposed() const;
  CMatrix conjugated() const;

  CVector column(int j) const;
  void set_column(int j, const CVector& v);

 private:
  int rows_ = 0;
  int cols_ = 0;
  CVector a_;
};

CMatrix operator+(const CMatrix& a, const CMatrix& b);
CMatrix operator-(const CMatrix& a, const CMatrix& b);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator*(cdouble s, const CMatrix& a);
CVector operator*(const CMatrix& a, const CVector& v);

// Dense real matrix, row-major; used for the realified rank and
// least-squares work.
class RMatrix {
 public:
  RMatrix() = default;
  RMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int i, int j) {
    return a_[static_cast<std::size_t>(i) * cols_ + j];
  }
  const double& operator()(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * cols_ + j];
  }

  double frobenius_norm() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> a_;
};

RVector operator*(const RMatrix& a, const RVector& v);

// Vector helpers.
double norm2(const RVector& v);
double norm2(const CVector& v);
// sum_i conj(a_i) b_i
cdouble dot_conj(const CVector& a, const CVector& b);
CVector operator-(const CVector& a, const CVector& b);
CVector operator+(const CVector& a, const CVector& b);
CVector operator*(cdouble s, const CVector& v);

// Hermitian matrix with the symmetry held exactly: entry(i,j) is bitwise
// conj(entry(j,i)) and the diagonal is real.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;

  // Averages a against its adjoint; this is the only way to build one, so
  // the invariant cannot drift.
  static HermitianMatrix symmetrized(const CMatrix& a);
  static HermitianMatrix identity(int n);

  int dim() const { return mat_.rows(); }
  const CMatrix& matrix() const { return mat_; }
  cdouble operator()(int i, int j) const { return mat_(i, j); }
  double frobenius_norm() const { return mat_.frobenius_norm(); }

  // max_ij |a(i,j) - conj(a(j,i))| of a candidate, for input validation.
  static double asymmetry(const CMatrix& a);

 private:
  explicit HermitianMatrix(CMatrix m) : mat_(std::move(m)) {}
  CMatrix mat_;
};

struct EigenDecomposition {
  RVector eigenvalues;   // ascending
  CMatrix eigenvectors;  // unitary; column i pairs with eigenvalues[i]
  double residual = 0;   // max_i |A v_i - mu_i v_i|_2
};

// Cyclic complex Jacobi iteration.  Deterministic: fixed sweep order,
// eigenvalues sorted ascending, each eigenvector's phase normalized so its
// largest-magnitude entry is real positive.
EigenDecomposition eig_hermitian(const HermitianMatrix& a, int max_sweeps = 64);

// Eigenvalues of a general complex matrix via its characteristic polynomial
// (Faddeev-LeVerrier) and a simultaneous root iteration.  Each root is
// verified against |det(X - mu I)|.  Only for dim <= 12, which covers every
// matrix this library produces.  Roots are sorted by (re, im).
CVector eigvals_general(const CMatrix& x, int max_iter = 500);
double spectral_radius(const CMatrix& x);

struct RankResult {
  int rank = 0;
  // Unit-norm real combination with |sum_j mu_j V_j| <= 10*tol*scale;
  // present when the family is dependent.  Sign normalized so the
  // largest-magnitude entry is positive.
  std::optional<RVector> kernel_witness;
  double scale = 0;   // largest initial column norm
  double margin = 0;  // smallest accepted pivot / scale (0 when rank == 0)
};

// Rank over the reals of a list of equal-length real vectors, by
// Householder QR with column pivoting.
RankResult real_rank(const std::vector<RVector>& vectors, double tol = kRankTol);

// Q^{-1/2} of a positive definite matrix through its eigendecomposition.
HermitianMatrix inv_sqrt_hpd(const HermitianMatrix& q, double tol = kRankTol);

struct LinearSolveResult {
  RVector x;
  double residual = 0;  // |M x - b|_2
  int rank = 0;
};

// Least-squares solution of M x = b (QR with column pivoting).  Raises
// NoSolutionError when the system is rank deficient and inconsistent.
LinearSolveResult solve_linear_real(const RMatrix& m, const RVector& b,
                                    double tol = kRankTol);

// Complex LU with partial pivoting; plumbing for determinants, inverses and
// the boundary resampling solves.
struct LuFactors {
  CMatrix lu;
  std::vector<int> perm;
  int sign = 1;
  bool singular = false;
};

LuFactors lu_factor(const CMatrix& a);
cdouble lu_det(const LuFactors& f);
CVector lu_solve(const LuFactors& f, const CVector& b);
CMatrix lu_inverse(const LuFactors& f);

cdouble det(const CMatrix& a);
CMatrix inverse(const CMatrix& a);
CVector solve_complex(const CMatrix& a, const CVector& b);

}  // namespace levidisc
