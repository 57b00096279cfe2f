#include "levidisc/discs.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <mutex>

namespace levidisc {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

void require_grid(int n) {
  if (!is_pow2(n) || n < 16)
    throw DomainError("grid size must be a power of two >= 16");
}

// Iterative radix-2 transform; sign = -1 analysis, +1 synthesis.  Twiddles
// from std::polar per butterfly so rounding does not accumulate along the
// recurrence.
void fft_inplace(CVector& a, int sign) {
  const int n = static_cast<int>(a.size());
  for (int i = 1, j = 0; i < n; ++i) {
    int bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (int len = 2; len <= n; len <<= 1) {
    double ang = sign * 2.0 * kPi / len;
    for (int i = 0; i < n; i += len)
      for (int j = 0; j < len / 2; ++j) {
        cdouble w = std::polar(1.0, ang * j);
        cdouble u = a[i + j];
        cdouble t = a[i + j + len / 2] * w;
        a[i + j] = u + t;
        a[i + j + len / 2] = u - t;
      }
  }
}

cdouble unit_circle(int i, int n) {
  return std::polar(1.0, 2.0 * kPi * i / n);
}

}  // namespace

BoundaryFunction make_boundary_function(int grid_n, int components) {
  require_grid(grid_n);
  if (components < 1) throw DomainError("boundary function needs components");
  BoundaryFunction f;
  f.grid_n = grid_n;
  f.components = components;
  f.samples.assign(components, CVector(grid_n, cdouble(0)));
  return f;
}

CVector fourier_coefficients(const CVector& samples) {
  const int n = static_cast<int>(samples.size());
  if (!is_pow2(n)) throw DomainError("sample count must be a power of two");
  CVector a = samples;
  fft_inplace(a, -1);
  for (cdouble& x : a) x /= static_cast<double>(n);
  return a;
}

CVector fourier_synthesize(const CVector& coeffs) {
  const int n = static_cast<int>(coeffs.size());
  if (!is_pow2(n)) throw DomainError("coefficient count must be a power of two");
  CVector a = coeffs;
  fft_inplace(a, +1);
  return a;
}

int fourier_frequency(int index, int n) {
  return index < n / 2 ? index : index - n;
}

double holomorphic_extension_defect(const BoundaryFunction& f) {
  require_grid(f.grid_n);
  double sup = 0;
  for (const CVector& comp : f.samples)
    for (const cdouble& x : comp) sup = std::max(sup, std::abs(x));
  if (sup == 0) return 0;
  double worst = 0;
  for (const CVector& comp : f.samples) {
    CVector c = fourier_coefficients(comp);
    for (int idx = 0; idx < f.grid_n; ++idx)
      if (fourier_frequency(idx, f.grid_n) < 0)
        worst = std::max(worst, std::abs(c[idx]));
  }
  return worst / sup;
}

// ---------------------------------------------------------------------------
// RationalDisc evaluators.
// ---------------------------------------------------------------------------

namespace {

CVector resolvent_apply(const CMatrix& m, const CVector& u, cdouble zeta) {
  const int n = m.rows();
  CMatrix a = CMatrix::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) -= zeta * m(i, j);
  return solve_complex(a, u);
}

}  // namespace

CVector RationalDisc::w_at(cdouble zeta) const {
  CVector y = resolvent_apply(m, u, zeta);
  CVector out = w0;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += (zeta - 1.0) * y[i];
  return out;
}

CVector RationalDisc::w_prime_at(cdouble zeta) const {
  // d/dzeta [(zeta-1)(I - zeta M)^{-1} u] = Y + (zeta-1)(I - zeta M)^{-1} M Y
  CVector y = resolvent_apply(m, u, zeta);
  CVector my = m * y;
  CVector z2 = resolvent_apply(m, my, zeta);
  CVector out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i)
    out[i] = y[i] + (zeta - 1.0) * z2[i];
  return out;
}

CVector RationalDisc::z_at(cdouble zeta) const {
  CVector out(dim_k());
  for (int j = 0; j < dim_k(); ++j) {
    const CVector& a = z_coeffs[j];
    cdouble acc = 0;
    for (int n = static_cast<int>(a.size()) - 1; n >= 0; --n)
      acc = acc * zeta + a[n];
    out[j] = acc;
  }
  return out;
}

CVector RationalDisc::z_prime_at(cdouble zeta) const {
  CVector out(dim_k());
  for (int j = 0; j < dim_k(); ++j) {
    const CVector& a = z_coeffs[j];
    cdouble acc = 0;
    for (int n = static_cast<int>(a.size()) - 1; n >= 1; --n)
      acc = acc * zeta + static_cast<double>(n) * a[n];
    out[j] = acc;
  }
  return out;
}

std::vector<CVector> RationalDisc::sample_w(int n) const {
  require_grid(n);
  std::vector<CVector> out(n);
  for (int i = 0; i < n; ++i) out[i] = w_at(unit_circle(i, n));
  return out;
}

std::vector<RVector> RationalDisc::sample_re_z(int n) const {
  require_grid(n);
  std::vector<RVector> out(n, RVector(dim_k(), 0.0));
  for (int i = 0; i < n; ++i) {
    CVector z = z_at(unit_circle(i, n));
    for (int j = 0; j < dim_k(); ++j) out[i][j] = z[j].real();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Construction.
// ---------------------------------------------------------------------------

namespace {

RVector levi_values(const LeviForm& l, const CVector& w) {
  RVector h(l.k);
  for (int j = 0; j < l.k; ++j)
    h[j] = dot_conj(w, l.matrices[j].matrix() * w).real();
  return h;
}

// Builds the disc for a given ansatz matrix: samples w, matches z to the
// boundary data by the discrete transform, measures the attachment.
RationalDisc assemble_with(const LeviForm& l, const StationaryPairData& pair,
                           const CMatrix& mvar, int fourier_n) {
  require_grid(fourier_n);
  if (static_cast<int>(pair.w0.size()) != l.m ||
      static_cast<int>(pair.v.size()) != l.m ||
      static_cast<int>(pair.y0.size()) != l.k)
    throw DomainError("disc parameters have wrong dimensions");

  RationalDisc d;
  d.fourier_n = fourier_n;
  d.w0 = pair.w0;
  d.m = mvar;
  d.rho_m = (l.m > 0) ? spectral_radius(mvar) : 0.0;
  if (!(d.rho_m < 1.0))
    throw StabilityViolation("ansatz matrix is not stable", d.rho_m);
  d.tail_bound = std::pow(d.rho_m, fourier_n / 2) / (1.0 - d.rho_m);

  // u = (I - M) v makes w'(1) = v exact.
  CVector mv = mvar * pair.v;
  d.u = pair.v;
  for (int i = 0; i < l.m; ++i) d.u[i] -= mv[i];

  std::vector<CVector> w = d.sample_w(fourier_n);

  d.z_coeffs.assign(l.k, CVector(fourier_n / 2, cdouble(0)));
  std::vector<RVector> x(fourier_n);
  for (int i = 0; i < fourier_n; ++i) x[i] = levi_values(l, w[i]);
  for (int j = 0; j < l.k; ++j) {
    CVector comp(fourier_n);
    for (int i = 0; i < fourier_n; ++i) comp[i] = x[i][j];
    CVector hat = fourier_coefficients(comp);
    // Schwarz construction: z = hat(0) + 2 sum_{n>0} hat(n) zeta^n + i gamma,
    // gamma fixed by Im z_j(1) = y0_j.
    double gamma = pair.y0[j];
    for (int n = 1; n < fourier_n / 2; ++n) gamma -= 2.0 * hat[n].imag();
    d.z_coeffs[j][0] = cdouble(hat[0].real(), gamma);
    for (int n = 1; n < fourier_n / 2; ++n) d.z_coeffs[j][n] = 2.0 * hat[n];
  }

  double worst = 0;
  for (int i = 0; i < fourier_n; ++i) {
    CVector z = d.z_at(unit_circle(i, fourier_n));
    for (int j = 0; j < l.k; ++j)
      worst = std::max(worst, std::abs(z[j].real() - x[i][j]));
  }
  d.attachment_residual = worst;
  return d;
}

enum class Ansatz { kSolvent, kConjugate, kTranspose, kAdjoint };
constexpr std::array<Ansatz, 4> kAnsatzOrder = {
    Ansatz::kSolvent, Ansatz::kConjugate, Ansatz::kTranspose, Ansatz::kAdjoint};

CMatrix apply_ansatz(const CMatrix& x, Ansatz a) {
  switch (a) {
    case Ansatz::kSolvent: return x;
    case Ansatz::kConjugate: return x.conjugated();
    case Ansatz::kTranspose: return x.transposed();
    case Ansatz::kAdjoint: return x.adjoint();
  }
  return x;
}

std::once_flag g_ansatz_once;
std::atomic<Ansatz> g_ansatz{Ansatz::kSolvent};

// Disambiguates the ansatz matrix once per process on two fixed fixtures
// with genuinely complex, non-symmetric solvents, where only the correct
// variant can pass the extension oracle.
void select_ansatz_bootstrap() {
  struct Case {
    LeviForm l;
    StationaryPairData pair;
  };
  std::vector<Case> cases;

  {
    CMatrix a(1, 1);
    a(0, 0) = 1;
    LeviForm l = make_levi_form(1, 1, {HermitianMatrix::symmetrized(a)});
    StationaryPairData p;
    p.lambda = {cdouble(0.35, 0.2)};
    p.c = {1.0};
    p.w0 = {cdouble(0, 0)};
    p.y0 = {0.0};
    p.v = {cdouble(0.08, 0.03)};
    cases.push_back({std::move(l), std::move(p)});
  }
  {
    CMatrix a1 = CMatrix::identity(2);
    CMatrix a2(2, 2);
    a2(0, 0) = 1;
    a2(0, 1) = cdouble(0.4, 0.7);
    a2(1, 0) = cdouble(0.4, -0.7);
    a2(1, 1) = -0.3;
    LeviForm l = make_levi_form(2, 2,
                                {HermitianMatrix::symmetrized(a1),
                                 HermitianMatrix::symmetrized(a2)});
    StationaryPairData p;
    p.lambda = {cdouble(0.15, 0.1), cdouble(0.1, -0.07)};
    p.c = {1.0, 0.1};
    p.w0 = {cdouble(0, 0), cdouble(0, 0)};
    p.y0 = {0.0, 0.0};
    p.v = {cdouble(0.07, 0.02), cdouble(-0.04, 0.05)};
    cases.push_back({std::move(l), std::move(p)});
  }

  for (Ansatz cand : kAnsatzOrder) {
    bool all_pass = true;
    for (const Case& c : cases) {
      LiftParams params{c.pair.lambda, c.pair.c};
      StableSolution sol = solve_quadratic(QuadraticPencil::from(c.l, params));
      RationalDisc d = assemble_with(c.l, c.pair, apply_ansatz(sol.x, cand), 128);
      StationaryCheck sc = check_stationary(c.l, d, params, 128);
      if (!sc.pass || d.attachment_residual > 1e-9) {
        all_pass = false;
        break;
      }
    }
    if (all_pass) {
      g_ansatz = cand;
      return;
    }
  }
  throw ConstructionFailure("no ansatz variant passes the bootstrap", 0.0);
}

// Truncated power-series fallback: solve for Taylor coefficients a_0..a_D
// of w directly, as the least-squares solution of the three-term recurrence
// plus the boundary conditions sum a_n = w(1), sum n a_n = w'(1); then fit
// the one-step transfer matrix and rebuild the rational form.
RationalDisc assemble_fallback(const LeviForm& l, const StationaryPairData& pair,
                               int fourier_n) {
  const int m = l.m;
  const int deg = fourier_n / 4;
  QuadraticPencil pencil =
      QuadraticPencil::from(l, LiftParams{pair.lambda, pair.c});
  const CMatrix& p = pencil.p;
  CMatrix pstar = p.adjoint();
  const CMatrix& q = pencil.q.matrix();

  const int unknowns = 2 * m * (deg + 1);
  const int eq_blocks = 2 + deg;  // two boundary conditions + recurrence rows
  RMatrix sys(2 * m * eq_blocks, unknowns);
  RVector rhs(2 * m * eq_blocks, 0.0);

  auto put = [&](int eq, int row, int n, int col, cdouble coef) {
    // complex equation block `eq`, component `row`; unknown a_n[col]
    int r = 2 * (eq * m + row);
    int ccol = 2 * (n * m + col);
    sys(r, ccol) += coef.real();
    sys(r, ccol + 1) -= coef.imag();
    sys(r + 1, ccol) += coef.imag();
    sys(r + 1, ccol + 1) += coef.real();
  };

  for (int i = 0; i < m; ++i) {
    for (int n = 0; n <= deg; ++n) {
      put(0, i, n, i, 1.0);                           // sum a_n = w(1)
      if (n >= 1) put(1, i, n, i, static_cast<double>(n));  // sum n a_n = w'(1)
    }
    rhs[2 * (0 * m + i)] = pair.w0[i].real();
    rhs[2 * (0 * m + i) + 1] = pair.w0[i].imag();
    rhs[2 * (1 * m + i)] = pair.v[i].real();
    rhs[2 * (1 * m + i) + 1] = pair.v[i].imag();
  }
  for (int qidx = 1; qidx <= deg; ++qidx) {
    int eq = 1 + qidx;
    for (int row = 0; row < m; ++row)
      for (int col = 0; col < m; ++col) {
        if (qidx + 2 <= deg) put(eq, row, qidx + 2, col, 0.5 * pstar(row, col));
        if (qidx + 1 <= deg) put(eq, row, qidx + 1, col, q(row, col));
        put(eq, row, qidx, col, 0.5 * p(row, col));
      }
  }

  LinearSolveResult fit = solve_linear_real(sys, rhs);
  std::vector<CVector> a(deg + 1, CVector(m));
  for (int n = 0; n <= deg; ++n)
    for (int i = 0; i < m; ++i)
      a[n][i] = cdouble(fit.x[2 * (n * m + i)], fit.x[2 * (n * m + i) + 1]);

  // One-step transfer fit a_{n+1} ~ M a_n over n >= 1, row by row.
  CMatrix mfit(m, m);
  for (int row = 0; row < m; ++row) {
    RMatrix ls(2 * (deg - 1), 2 * m);
    RVector lb(2 * (deg - 1), 0.0);
    for (int n = 1; n < deg; ++n) {
      for (int col = 0; col < m; ++col) {
        ls(2 * (n - 1), 2 * col) = a[n][col].real();
        ls(2 * (n - 1), 2 * col + 1) = -a[n][col].imag();
        ls(2 * (n - 1) + 1, 2 * col) = a[n][col].imag();
        ls(2 * (n - 1) + 1, 2 * col + 1) = a[n][col].real();
      }
      lb[2 * (n - 1)] = a[n + 1][row].real();
      lb[2 * (n - 1) + 1] = a[n + 1][row].imag();
    }
    LinearSolveResult rowfit = solve_linear_real(ls, lb);
    for (int col = 0; col < m; ++col)
      mfit(row, col) = cdouble(rowfit.x[2 * col], rowfit.x[2 * col + 1]);
  }
  return assemble_with(l, pair, mfit, fourier_n);
}

}  // namespace

RationalDisc construct_disc(const LeviForm& l, const StationaryPairData& pair,
                            int fourier_n) {
  LiftParams params{pair.lambda, pair.c};
  CirclePositivity pos = circle_positivity(l, params);
  if (!pos.ok)
    throw DomainError("construct_disc: boundary density is not positive");

  StableSolution sol = solve_quadratic(QuadraticPencil::from(l, params));
  std::call_once(g_ansatz_once, select_ansatz_bootstrap);

  std::array<Ansatz, 4> order = kAnsatzOrder;
  auto cached = std::find(order.begin(), order.end(), g_ansatz.load());
  std::rotate(order.begin(), cached, cached + 1);

  double best_defect = std::numeric_limits<double>::infinity();
  for (Ansatz cand : order) {
    RationalDisc d = assemble_with(l, pair, apply_ansatz(sol.x, cand), fourier_n);
    StationaryCheck sc = check_stationary(l, d, params, fourier_n);
    best_defect = std::min(best_defect, sc.defect);
    if (sc.pass) {
      if (d.attachment_residual > 1e-9)
        throw AttachmentFailure("constructed disc fails attachment",
                                d.attachment_residual);
      d.stationarity_defect = sc.defect;
      g_ansatz = cand;
      return d;
    }
  }

  RationalDisc d = assemble_fallback(l, pair, fourier_n);
  StationaryCheck sc = check_stationary(l, d, params, fourier_n);
  best_defect = std::min(best_defect, sc.defect);
  if (sc.pass) {
    if (d.attachment_residual > 1e-9)
      throw AttachmentFailure("constructed disc fails attachment",
                              d.attachment_residual);
    d.stationarity_defect = sc.defect;
    return d;
  }
  throw ConstructionFailure("no ansatz passes the extension oracle",
                            best_defect);
}

// ---------------------------------------------------------------------------
// Oracles on a given disc.
// ---------------------------------------------------------------------------

StationaryCheck check_stationary(const LeviForm& l, const RationalDisc& disc,
                                 const LiftParams& params, int fourier_n,
                                 double tol) {
  require_grid(fourier_n);
  if (disc.dim_m() != l.m || disc.dim_k() != l.k)
    throw DomainError("check_stationary: disc does not match the form");
  QuadraticPencil pencil = QuadraticPencil::from(l, params);
  const CMatrix& p = pencil.p;
  CMatrix pstar = p.adjoint();
  const CMatrix& q = pencil.q.matrix();

  std::vector<CVector> w = disc.sample_w(fourier_n);
  BoundaryFunction f = make_boundary_function(fourier_n, l.m);
  for (int i = 0; i < fourier_n; ++i) {
    cdouble zeta = unit_circle(i, fourier_n);
    CMatrix b = q + 0.5 * zeta * p + 0.5 * std::conj(zeta) * pstar;
    for (int s = 0; s < l.m; ++s) {
      cdouble acc = 0;
      for (int r = 0; r < l.m; ++r) acc += std::conj(w[i][r]) * b(r, s);
      f.samples[s][i] = zeta * acc;
    }
  }
  StationaryCheck out;
  out.defect = holomorphic_extension_defect(f);
  out.tol = tol;
  out.pass = out.defect <= tol;
  return out;
}

DefectReport check_defective_fourier(const LeviForm& l,
                                     const RationalDisc& disc, int fourier_n,
                                     double tol) {
  require_grid(fourier_n);
  if (disc.dim_m() != l.m || disc.dim_k() != l.k)
    throw DomainError("check_defective_fourier: disc does not match the form");
  std::vector<CVector> w = disc.sample_w(fourier_n);

  // Row j of the gradient is conj(w)^T A_j; collect its negative-frequency
  // coefficients into one long real vector per j and measure their rank.
  const int half = fourier_n / 2;
  std::vector<RVector> vecs(l.k, RVector(2 * l.m * half, 0.0));
  for (int j = 0; j < l.k; ++j) {
    const CMatrix& a = l.matrices[j].matrix();
    for (int s = 0; s < l.m; ++s) {
      CVector comp(fourier_n);
      for (int i = 0; i < fourier_n; ++i) {
        cdouble acc = 0;
        for (int r = 0; r < l.m; ++r) acc += std::conj(w[i][r]) * a(r, s);
        comp[i] = acc;
      }
      CVector hat = fourier_coefficients(comp);
      for (int idx = 0; idx < fourier_n; ++idx) {
        int freq = fourier_frequency(idx, fourier_n);
        if (freq >= 0) continue;
        int slot = (-freq - 1) * l.m + s;
        vecs[j][2 * slot] = hat[idx].real();
        vecs[j][2 * slot + 1] = hat[idx].imag();
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

LiftBoundary lift_boundary(const LeviForm& l, const RationalDisc& disc,
                           const LiftParams& params, int fourier_n,
                           double tol) {
  require_grid(fourier_n);
  StationaryCheck sc = check_stationary(l, disc, params, fourier_n, tol);
  if (!sc.pass)
    throw InconsistentLift("lift pole condition fails: disc is not stationary "
                           "for these parameters",
                           sc.defect);

  LiftBoundary out;
  out.grid_n = fourier_n;
  out.density.resize(fourier_n);
  out.z_part.resize(fourier_n);
  out.w_part.resize(fourier_n);

  std::vector<CVector> w = disc.sample_w(fourier_n);
  for (int i = 0; i < fourier_n; ++i) {
    cdouble zeta = unit_circle(i, fourier_n);
    RVector rho(l.k);
    for (int j = 0; j < l.k; ++j)
      rho[j] = params.c[j] + (params.lambda[j] * zeta).real();
    CVector zp(l.k);
    for (int j = 0; j < l.k; ++j) zp[j] = cdouble(0.5 * rho[j], 0);

    // -sum_j rho_j conj(w)^T A_j = -conj(w)^T B(zeta)
    CVector wp(l.m, cdouble(0));
    for (int j = 0; j < l.k; ++j) {
      const CMatrix& a = l.matrices[j].matrix();
      for (int s = 0; s < l.m; ++s) {
        cdouble acc = 0;
        for (int r = 0; r < l.m; ++r) acc += std::conj(w[i][r]) * a(r, s);
        wp[s] -= rho[j] * acc;
      }
    }
    out.density[i] = std::move(rho);
    out.z_part[i] = std::move(zp);
    out.w_part[i] = std::move(wp);
  }

  // zeta phi* must itself extend holomorphically; its defect is the pole
  // residual (the z-part is a polynomial in zeta of degree one once
  // multiplied by zeta, so only the w-part can contribute).
  BoundaryFunction full = make_boundary_function(fourier_n, l.k + l.m);
  for (int i = 0; i < fourier_n; ++i) {
    cdouble zeta = unit_circle(i, fourier_n);
    for (int j = 0; j < l.k; ++j) full.samples[j][i] = zeta * out.z_part[i][j];
    for (int s = 0; s < l.m; ++s)
      full.samples[l.k + s][i] = zeta * out.w_part[i][s];
  }
  out.pole_defect = holomorphic_extension_defect(full);
  if (out.pole_defect > tol)
    throw InconsistentLift("lift pole condition fails", out.pole_defect);
  return out;
}

JetData evaluate_jet(const RationalDisc& disc, const LiftBoundary& lift,
                     const LiftParams& params) {
  const int k = disc.dim_k();
  const int m = disc.dim_m();
  const int n = lift.grid_n;
  JetData out;

  CVector z1 = disc.z_at(1.0);
  out.phi1.assign(k + m, cdouble(0));
  for (int j = 0; j < k; ++j) out.phi1[j] = z1[j];
  for (int s = 0; s < m; ++s) out.phi1[k + s] = disc.w0[s];

  // phi*(1) is a grid point (theta = 0), no interpolation needed.
  out.lift1.assign(k + m, cdouble(0));
  for (int j = 0; j < k; ++j) out.lift1[j] = lift.z_part[0][j];
  for (int s = 0; s < m; ++s) out.lift1[k + s] = lift.w_part[0][s];

  CVector zp = disc.z_prime_at(1.0);
  CVector wp = disc.w_prime_at(1.0);
  out.j_phi_prime1.assign(k + m, cdouble(0));
  for (int j = 0; j < k; ++j) out.j_phi_prime1[j] = cdouble(0, 1) * zp[j];
  for (int s = 0; s < m; ++s) out.j_phi_prime1[k + s] = cdouble(0, 1) * wp[s];

  // phi*' from the spectral derivative of Phi = zeta phi*, which is
  // holomorphic by the pole condition: phi*'(1) = Phi'(1) - Phi(1).
  out.j_lift_prime1.assign(k + m, cdouble(0));
  for (int comp = 0; comp < k + m; ++comp) {
    CVector samp(n);
    for (int i = 0; i < n; ++i) {
      cdouble zeta = unit_circle(i, n);
      cdouble val = comp < k ? lift.z_part[i][comp] : lift.w_part[i][comp - k];
      samp[i] = zeta * val;
    }
    CVector hat = fourier_coefficients(samp);
    cdouble dphi = 0;
    for (int idx = 1; idx < n / 2; ++idx)
      dphi += static_cast<double>(idx) * hat[idx];
    out.j_lift_prime1[comp] = cdouble(0, 1) * (dphi - out.lift1[comp]);
  }
  (void)params;
  return out;
}

double jet_distance(const JetData& a, const JetData& b) {
  double d = 0;
  auto acc = [&](const CVector& x, const CVector& y) {
    for (std::size_t i = 0; i < x.size(); ++i)
      d = std::max(d, std::abs(x[i] - y[i]));
  };
  acc(a.phi1, b.phi1);
  acc(a.lift1, b.lift1);
  acc(a.j_phi_prime1, b.j_phi_prime1);
  acc(a.j_lift_prime1, b.j_lift_prime1);
  return d;
}

}  // namespace levidisc
