#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "levidisc/numlin.hpp"
#include "levidisc/rng.hpp"

using namespace levidisc;

namespace {

CMatrix random_matrix(int n, Rng& rng) {
  CMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rng.gaussian_complex();
  return a;
}

HermitianMatrix random_hermitian(int n, Rng& rng) {
  return HermitianMatrix::symmetrized(random_matrix(n, rng));
}

double residual_eig(const HermitianMatrix& a, const EigenDecomposition& d) {
  double worst = 0;
  int n = a.dim();
  for (int i = 0; i < n; ++i) {
    CVector v = d.eigenvectors.column(i);
    CVector av = a.matrix() * v;
    CVector diff = av - cdouble(d.eigenvalues[i]) * v;
    worst = std::max(worst, norm2(diff));
  }
  return worst;
}

}  // namespace

TEST_CASE("matrix product and adjoint") {
  CMatrix a(2, 2), b(2, 2);
  a(0, 0) = {1, 1};
  a(0, 1) = {0, 2};
  a(1, 0) = {3, 0};
  a(1, 1) = {-1, 0};
  b(0, 0) = {2, 0};
  b(0, 1) = {0, 0};
  b(1, 0) = {1, -1};
  b(1, 1) = {0, 1};
  CMatrix c = a * b;
  CHECK(std::abs(c(0, 0) - cdouble(4, 4)) < 1e-15);  // (1+i)2 + 2i(1-i)
  CHECK(std::abs(c(0, 1) - cdouble(-2, 0)) < 1e-15);
  CHECK(std::abs(c(1, 0) - cdouble(5, 1)) < 1e-15);
  CHECK(std::abs(c(1, 1) - cdouble(0, -1)) < 1e-15);
  CMatrix aa = a.adjoint();
  CHECK(std::abs(aa(0, 1) - cdouble(3, 0)) < 1e-15);
  CHECK(std::abs(aa(1, 0) - cdouble(0, -2)) < 1e-15);
}

TEST_CASE("jacobi eigendecomposition of the real symmetric flip") {
  CMatrix a(2, 2);
  a(0, 1) = 1;
  a(1, 0) = 1;
  EigenDecomposition d = eig_hermitian(HermitianMatrix::symmetrized(a));
  REQUIRE(d.eigenvalues.size() == 2);
  CHECK(d.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(d.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));
  // canonical phase: the largest-magnitude entry is real positive, ties go
  // to the lowest index, so the (-1)-eigenvector is (1, -1)/sqrt(2)
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(d.eigenvectors(0, 0) - cdouble(s)) < 1e-12);
  CHECK(std::abs(d.eigenvectors(1, 0) - cdouble(-s)) < 1e-12);
  CHECK(d.residual < 1e-12);
}

TEST_CASE("jacobi on a complex hermitian 2x2") {
  CMatrix a(2, 2);
  a(0, 0) = 2;
  a(0, 1) = {0, 1};
  a(1, 0) = {0, -1};
  a(1, 1) = 2;
  EigenDecomposition d = eig_hermitian(HermitianMatrix::symmetrized(a));
  CHECK(d.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(d.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(d.residual < 1e-12);
}

TEST_CASE("jacobi reconstructs random hermitian matrices") {
  Rng rng(42);
  for (int n : {1, 2, 3, 5, 8}) {
    HermitianMatrix a = random_hermitian(n, rng);
    EigenDecomposition d = eig_hermitian(a);
    CHECK(residual_eig(a, d) < 1e-10 * (1 + a.frobenius_norm()));
    for (int i = 1; i < n; ++i) CHECK(d.eigenvalues[i - 1] <= d.eigenvalues[i]);
    // columns orthonormal
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        cdouble g = dot_conj(d.eigenvectors.column(i), d.eigenvectors.column(j));
        CHECK(std::abs(g - (i == j ? cdouble(1) : cdouble(0))) < 1e-10);
      }
  }
}

TEST_CASE("eigenvector phases are deterministic") {
  Rng rng(7);
  HermitianMatrix a = random_hermitian(4, rng);
  EigenDecomposition d1 = eig_hermitian(a);
  EigenDecomposition d2 = eig_hermitian(a);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(d1.eigenvectors(i, j) == d2.eigenvectors(i, j));
}

TEST_CASE("general eigenvalues: cube roots of unity") {
  // companion matrix of z^3 - 1
  CMatrix c(3, 3);
  c(0, 2) = 1;
  c(1, 0) = 1;
  c(2, 1) = 1;
  CVector ev = eigvals_general(c);
  REQUIRE(ev.size() == 3);
  const double h = std::sqrt(3.0) / 2.0;
  CHECK(std::abs(ev[0] - cdouble(-0.5, -h)) < 1e-8);
  CHECK(std::abs(ev[1] - cdouble(-0.5, h)) < 1e-8);
  CHECK(std::abs(ev[2] - cdouble(1, 0)) < 1e-8);
}

TEST_CASE("general eigenvalues: defective jordan block") {
  CMatrix a(2, 2);
  a(0, 0) = 1;
  a(0, 1) = 1;
  a(1, 1) = 1;
  CVector ev = eigvals_general(a);
  CHECK(std::abs(ev[0] - cdouble(1, 0)) < 1e-6);
  CHECK(std::abs(ev[1] - cdouble(1, 0)) < 1e-6);
  CMatrix nil(2, 2);
  nil(0, 1) = 2;
  CHECK(spectral_radius(nil) < 1e-6);
}

TEST_CASE("real rank with dependency witness") {
  std::vector<RVector> vecs = {{1, 1}, {2, 2}};
  RankResult r = real_rank(vecs);
  CHECK(r.rank == 1);
  REQUIRE(r.kernel_witness.has_value());
  const RVector& w = *r.kernel_witness;
  // witness is unit with the largest-magnitude entry positive: (2,-1)/sqrt 5
  const double s = 1.0 / std::sqrt(5.0);
  CHECK(w[0] == doctest::Approx(2 * s).epsilon(1e-10));
  CHECK(w[1] == doctest::Approx(-s).epsilon(1e-10));
  // and it really annihilates the family
  CHECK(std::abs(w[0] * 1 + w[1] * 2) < 1e-12);
}

TEST_CASE("real rank full and zero cases") {
  RankResult full = real_rank({{1, 0}, {0, 1}});
  CHECK(full.rank == 2);
  CHECK(!full.kernel_witness.has_value());
  CHECK(full.margin == doctest::Approx(1.0));

  RankResult zero = real_rank({{0, 0, 0}});
  CHECK(zero.rank == 0);
  REQUIRE(zero.kernel_witness.has_value());
  CHECK(norm2(*zero.kernel_witness) == doctest::Approx(1.0));
}

TEST_CASE("inverse square root of a positive matrix") {
  CMatrix q(2, 2);
  q(0, 0) = 4;
  q(1, 1) = 9;
  HermitianMatrix r = inv_sqrt_hpd(HermitianMatrix::symmetrized(q));
  CHECK(std::abs(r(0, 0) - cdouble(0.5)) < 1e-12);
  CHECK(std::abs(r(1, 1) - cdouble(1.0 / 3)) < 1e-12);
  CHECK(std::abs(r(0, 1)) < 1e-12);

  Rng rng(5);
  CMatrix g = random_matrix(3, rng);
  CMatrix gg = g.adjoint() * g + CMatrix::identity(3);  // HPD
  HermitianMatrix h = HermitianMatrix::symmetrized(gg);
  HermitianMatrix s = inv_sqrt_hpd(h);
  CMatrix should_be_i = s.matrix() * h.matrix() * s.matrix();
  CMatrix diff = should_be_i - CMatrix::identity(3);
  CHECK(diff.frobenius_norm() < 1e-10 * (1 + h.frobenius_norm()));
}

TEST_CASE("inverse square root rejects indefinite input") {
  CMatrix q(1, 1);
  q(0, 0) = -1;
  CHECK_THROWS_AS(inv_sqrt_hpd(HermitianMatrix::symmetrized(q)), DomainError);
}

TEST_CASE("least squares solve") {
  RMatrix m(2, 2);
  m(0, 0) = 2;
  m(0, 1) = 1;
  m(1, 0) = 1;
  m(1, 1) = 3;
  LinearSolveResult r = solve_linear_real(m, {5, 10});
  CHECK(r.rank == 2);
  CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.x[1] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(r.residual < 1e-12);
}

TEST_CASE("inconsistent rank-deficient system is rejected") {
  RMatrix m(2, 2);
  m(0, 0) = 1;
  m(0, 1) = 2;
  m(1, 0) = 1;
  m(1, 1) = 2;  // rank 1 < 2 columns
  CHECK_THROWS_AS(solve_linear_real(m, {1.0, 3.0}), NoSolutionError);
  // consistent rank-deficient system is fine
  LinearSolveResult ok = solve_linear_real(m, {2.0, 2.0});
  CHECK(ok.rank == 1);
  CHECK(ok.residual < 1e-12);
  CHECK(ok.x[0] + 2 * ok.x[1] == doctest::Approx(2.0).epsilon(1e-12));

  // full-column-rank overdetermined systems are least squares, not errors
  RMatrix over(2, 1);
  over(0, 0) = 1;
  over(1, 0) = 1;
  LinearSolveResult ls = solve_linear_real(over, {1.0, 3.0});
  CHECK(ls.x[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(ls.residual == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("lu determinant inverse and solve") {
  CMatrix a(2, 2);
  a(0, 0) = 1;
  a(0, 1) = 2;
  a(1, 0) = 3;
  a(1, 1) = 4;
  CHECK(std::abs(det(a) - cdouble(-2)) < 1e-12);
  CMatrix inv = inverse(a);
  CMatrix eye = a * inv;
  CHECK((eye - CMatrix::identity(2)).frobenius_norm() < 1e-12);

  Rng rng(11);
  CMatrix b = random_matrix(4, rng) + cdouble(3) * CMatrix::identity(4);
  CVector rhs(4);
  for (auto& x : rhs) x = rng.gaussian_complex();
  CVector x = solve_complex(b, rhs);
  CVector back = b * x;
  CHECK(norm2(back - rhs) < 1e-10 * (1 + norm2(rhs)));
}

namespace {
// independent textbook splitmix64, as the fixed-stream reference
std::uint64_t reference_splitmix(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace

TEST_CASE("rng matches the reference stream and is seed-separated") {
  Rng a(1), b(1), c(2);
  std::uint64_t s = 1;
  std::uint64_t r0 = reference_splitmix(s);
  std::uint64_t r1 = reference_splitmix(s);
  CHECK(a.next_u64() == r0);
  CHECK(a.next_u64() == r1);
  CHECK(b.next_u64() == r0);
  CHECK(c.next_u64() != r0);
  CVector u = a.unit_complex(3);
  CHECK(norm2(u) == doctest::Approx(1.0).epsilon(1e-12));
  RVector t = a.unit_real(1);
  CHECK(std::abs(std::abs(t[0]) - 1.0) < 1e-12);
}
