#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "levidisc/levi.hpp"

using namespace levidisc;

namespace {

HermitianMatrix herm2(cdouble a00, cdouble a01, cdouble a11) {
  CMatrix a(2, 2);
  a(0, 0) = a00;
  a(0, 1) = a01;
  a(1, 0) = std::conj(a01);
  a(1, 1) = a11;
  return HermitianMatrix::symmetrized(a);
}

HermitianMatrix scalar(double x) {
  CMatrix a(1, 1);
  a(0, 0) = x;
  return HermitianMatrix::symmetrized(a);
}

LeviForm pauli_xz() {  // sigma_z, sigma_x: nondegenerate but never definite
  return make_levi_form(2, 2, {herm2(1, 0, -1), herm2(0, 1, 0)});
}

LeviForm id_and_flip() {  // identity and sigma_x
  return make_levi_form(2, 2, {herm2(1, 0, 1), herm2(0, 1, 0)});
}

}  // namespace

TEST_CASE("form construction validates shapes") {
  CHECK_THROWS_AS(make_levi_form(2, 1, {scalar(1)}), DomainError);
  CHECK_THROWS_AS(make_levi_form(1, 2, {scalar(1)}), DomainError);
  LeviForm l = make_levi_form(1, 1, {scalar(2)});
  CHECK(l.combine({3.0})(0, 0).real() == doctest::Approx(6.0));
}

TEST_CASE("hermitian flattening is diagonal first then upper re/im") {
  HermitianMatrix a = herm2(1, cdouble(2, 3), 4);
  RVector f = flatten_hermitian(a);
  REQUIRE(f.size() == 4);
  CHECK(f[0] == doctest::Approx(1));
  CHECK(f[1] == doctest::Approx(4));
  CHECK(f[2] == doctest::Approx(2));
  CHECK(f[3] == doctest::Approx(3));
}

TEST_CASE("generating detects real dependence") {
  LeviForm dep = make_levi_form(1, 2, {scalar(1), scalar(2)});
  CHECK(!is_levi_generating(dep));
  CHECK(is_levi_generating(pauli_xz()));
  // i-multiples are a complex but not a real dependence
  LeviForm pair =
      make_levi_form(2, 2, {herm2(0, cdouble(0, 1), 0), herm2(0, 1, 0)});
  CHECK(is_levi_generating(pair));
}

TEST_CASE("nondegeneracy is the trivial common kernel") {
  LeviForm degenerate = make_levi_form(2, 1, {herm2(1, 0, 0)});
  CHECK(!is_levi_nondegenerate(degenerate));
  CHECK(is_levi_nondegenerate(pauli_xz()));
  CHECK(is_levi_nondegenerate(make_levi_form(1, 1, {scalar(1)})));
}

TEST_CASE("strong nondegeneracy finds an invertible combination") {
  DirectionVerdict v = is_strongly_nondegenerate(pauli_xz(), 32, 1);
  CHECK(v.found);
  CHECK(v.value > 0);
  CHECK(norm2(v.c) == doctest::Approx(1.0).epsilon(1e-12));

  // common kernel kills every combination
  DirectionVerdict none =
      is_strongly_nondegenerate(make_levi_form(2, 1, {herm2(1, 0, 0)}), 32, 1);
  CHECK(!none.found);
}

TEST_CASE("pseudoconvex direction: definite combinations are found") {
  DirectionVerdict pos =
      find_pseudoconvex_direction(make_levi_form(1, 1, {scalar(1)}));
  CHECK(pos.found);
  CHECK(pos.value > 0);

  // negative scalar form: the direction flips sign
  DirectionVerdict neg =
      find_pseudoconvex_direction(make_levi_form(1, 1, {scalar(-1)}));
  CHECK(neg.found);
  CHECK(neg.c[0] < 0);

  // identity + flip: c = (1, 0) works
  DirectionVerdict id = find_pseudoconvex_direction(id_and_flip());
  CHECK(id.found);

  // traceless pencil is never definite
  DirectionVerdict no = find_pseudoconvex_direction(pauli_xz());
  CHECK(!no.found);
}

TEST_CASE("pseudoconvex witness really is positive definite") {
  DirectionVerdict id = find_pseudoconvex_direction(id_and_flip());
  REQUIRE(id.found);
  EigenDecomposition d = eig_hermitian(id_and_flip().combine(id.c));
  CHECK(d.eigenvalues[0] > 0);
  CHECK(d.eigenvalues[0] == doctest::Approx(id.value).epsilon(1e-6));
}

TEST_CASE("normalization maps the chosen combination to the identity") {
  CMatrix q(2, 2);
  q(0, 0) = 4;
  q(1, 1) = 9;
  LeviForm l = make_levi_form(2, 1, {HermitianMatrix::symmetrized(q)});
  NormalizedForm nf = normalize_q(l, {1.0});
  CHECK(std::abs(nf.transform(0, 0) - cdouble(0.5)) < 1e-12);
  CHECK(std::abs(nf.transform(1, 1) - cdouble(1.0 / 3)) < 1e-12);
  CMatrix qn = nf.form.combine({1.0}).matrix();
  CHECK((qn - CMatrix::identity(2)).frobenius_norm() < 1e-12);

  NormalizedForm nf2 = normalize_q(id_and_flip(), {1.0, 0.0});
  CMatrix qn2 = nf2.form.combine({1.0, 0.0}).matrix();
  CHECK((qn2 - CMatrix::identity(2)).frobenius_norm() < 1e-12);
  CHECK_THROWS_AS(normalize_q(pauli_xz(), {1.0, 0.0}), DomainError);
}

TEST_CASE("classification ties the predicates together") {
  ClassifyOptions opts;
  opts.seed = 1;

  Classification strong = classify(id_and_flip(), opts);
  CHECK(strong.levi_generating);
  CHECK(strong.levi_nondegenerate);
  CHECK(strong.strongly_nondegenerate.found);
  CHECK(strong.strongly_pseudoconvex.found);

  Classification indef = classify(pauli_xz(), opts);
  CHECK(indef.levi_generating);
  CHECK(indef.levi_nondegenerate);
  CHECK(indef.strongly_nondegenerate.found);
  CHECK(!indef.strongly_pseudoconvex.found);

  Classification degen = classify(make_levi_form(2, 1, {herm2(1, 0, 0)}), opts);
  CHECK(degen.levi_generating);
  CHECK(!degen.levi_nondegenerate);
  CHECK(!degen.strongly_nondegenerate.found);
  CHECK(!degen.strongly_pseudoconvex.found);
}
