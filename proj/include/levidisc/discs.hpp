#pragma once

#include "levidisc/stationary.hpp"

namespace levidisc {

// A function on the unit circle sampled at grid_n equispaced points
// theta_i = 2 pi i / grid_n, with `components` complex entries per point.
// grid_n must be a power of two (>= 16) so the transform is exact radix-2.
struct BoundaryFunction {
  int grid_n = 0;
  int components = 0;
  // samples[comp][i] = f_comp(theta_i)
  std::vector<CVector> samples;
};

BoundaryFunction make_boundary_function(int grid_n, int components);

// Discrete Fourier coefficients of one component:
// coeff[j] = (1/N) sum_i f(theta_i) e^{-i j theta_i}; index j in [0, N)
// carries frequency j for j < N/2 and j - N otherwise.
CVector fourier_coefficients(const CVector& samples);
// Inverse: samples from a full-length coefficient array (frequencies laid
// out as above).
CVector fourier_synthesize(const CVector& coeffs);
int fourier_frequency(int index, int n);

// How far f is from being the boundary value of a holomorphic function:
// max |negative-frequency coefficient| over all components, normalized by
// the sup of |f| on the grid.  0 for the zero function.
double holomorphic_extension_defect(const BoundaryFunction& f);

// Analytic disc attached to the model hypersurface:
//   w(zeta) = w0 + (zeta - 1)(I - zeta M)^{-1} u,
//   z(zeta) = sum_n z_coeffs[.][n] zeta^n (degree < fourier_n / 2),
// with Re z_j = h_j(w) on the circle up to attachment_residual.
struct RationalDisc {
  CVector w0;
  CMatrix m;
  CVector u;
  std::vector<CVector> z_coeffs;  // [k][fourier_n / 2]
  int fourier_n = 0;
  double rho_m = 0;            // spectral radius of M
  double tail_bound = 0;       // rho^{N/2} / (1 - rho), coefficient tail
  double attachment_residual = 0;
  double stationarity_defect = 0;

  int dim_m() const { return static_cast<int>(w0.size()); }
  int dim_k() const { return static_cast<int>(z_coeffs.size()); }

  CVector w_at(cdouble zeta) const;
  CVector w_prime_at(cdouble zeta) const;
  CVector z_at(cdouble zeta) const;
  CVector z_prime_at(cdouble zeta) const;

  // w on the standard grid of n points.
  std::vector<CVector> sample_w(int n) const;
  // Re z on the standard grid, from the stored coefficients.
  std::vector<RVector> sample_re_z(int n) const;
};

// Builds the disc for the given parameters.  The matrix in the rational
// ansatz is taken from the stable solvent of the induced quadratic pencil;
// among the conjugation variants of the solvent, the one that passes the
// analytic-extension oracle is selected once, cached, and re-verified on
// every construction.  Falls back to a truncated power-series least-squares
// fit if no variant passes.
RationalDisc construct_disc(const LeviForm& l, const StationaryPairData& pair,
                            int fourier_n = 512);

// Oracle: zeta * conj(w)^T B(zeta) must extend holomorphically for the
// boundary density Re(lambda zeta + c).  `defect` is the extension defect
// of that k-free m-component function.
struct StationaryCheck {
  double defect = 0;
  bool pass = false;
  double tol = 0;
};
StationaryCheck check_stationary(const LeviForm& l, const RationalDisc& disc,
                                 const LiftParams& params, int fourier_n = 512,
                                 double tol = 1e-8);

// Oracle: the disc is defective iff some nonzero real combination
// c . h_w(w(zeta)) extends holomorphically off the disc.  Decided by the
// real rank of the negative-frequency blocks of the k rows of h_w.
DefectReport check_defective_fourier(const LeviForm& l,
                                     const RationalDisc& disc,
                                     int fourier_n = 512,
                                     double tol = kRankTol);

// Boundary values of the lift: phi* = Re(lambda zeta + c) (I/2, -h_w).
// The z-part density must cancel the pole of the lift at zeta = 0; the
// pole_defect measures the residual negative frequencies of zeta phi*.
struct LiftBoundary {
  int grid_n = 0;
  std::vector<RVector> density;      // [i][j] = Re(lambda_j zeta_i + c_j)
  std::vector<CVector> z_part;       // [i], k components: density / 2
  std::vector<CVector> w_part;       // [i], m components: -density . h_w
  double pole_defect = 0;
};
LiftBoundary lift_boundary(const LeviForm& l, const RationalDisc& disc,
                           const LiftParams& params, int fourier_n = 512,
                           double tol = 1e-8);

// Evaluation data of the disc and its lift at zeta = 1: positions, and the
// J-rotated first derivatives (J = multiplication by i).
struct JetData {
  CVector phi1;           // (z(1), w(1)), k + m components
  CVector lift1;          // phi*(1)
  CVector j_phi_prime1;   // i (z'(1), w'(1))
  CVector j_lift_prime1;  // i phi*'(1)
};
JetData evaluate_jet(const RationalDisc& disc, const LiftBoundary& lift,
                     const LiftParams& params);

double jet_distance(const JetData& a, const JetData& b);

}  // namespace levidisc
