#include "doctest.h"
#include "pcalc/spectral.hpp"

using namespace pcalc;

namespace {

Flag quarter_half_flag() { return make_flag({{rat(1, 4), 1}, {rat(1, 2), 1}}); }

Matrix mat1(const GaussRat& v) {
  Matrix m(1, 1);
  m.at(0, 0) = v;
  return m;
}

}  // namespace

TEST_CASE("shape predicates against a two-step flag") {
  Flag flag = quarter_half_flag();
  Matrix m(2, 2);
  m.at(0, 0) = GaussRat(rat(1, 4));
  m.at(1, 0) = GaussRat(3);
  m.at(1, 1) = GaussRat(rat(1, 2));
  CHECK(check_parabolic(m, flag));
  CHECK(!check_strongly_parabolic(m, flag));  // diagonal entries are not allowed
  CHECK(check_residual(m, flag));

  m.at(0, 1) = GaussRat(1);  // above the flag
  CHECK(!check_parabolic(m, flag));
  m.at(0, 1) = GaussRat();
  m.at(0, 0) = GaussRat(7);
  CHECK(check_parabolic(m, flag));
  CHECK(!check_residual(m, flag));  // diagonal must equal the weights

  Matrix strict(2, 2);
  strict.at(1, 0) = GaussRat(rat(0), rat(2));
  CHECK(check_strongly_parabolic(strict, flag));

  // Equal weights make the whole block rigid for the residual test.
  Flag merged = flag_from_multiset({rat(1, 4), rat(1, 4)});
  Matrix block(2, 2);
  block.at(0, 0) = GaussRat(rat(1, 4));
  block.at(1, 1) = GaussRat(rat(1, 4));
  CHECK(check_residual(block, merged));
  block.at(1, 0) = GaussRat(1);
  CHECK(!check_residual(block, merged));
}

TEST_CASE("spectral field construction checks its shape") {
  Flag flag = quarter_half_flag();
  std::vector<Matrix> ok = {Matrix(2, 2), Matrix(2, 2)};
  LocalSpectralField f = make_spectral_field(FieldKind::connection, 2, ok, flag);
  CHECK(f.rank() == 2);
  CHECK(f.residue() == Matrix(2, 2));

  std::vector<Matrix> too_few = {Matrix(2, 2)};
  CHECK_THROWS_AS(make_spectral_field(FieldKind::higgs, 2, too_few, flag), validation_error);
  std::vector<Matrix> wrong_size = {Matrix(3, 3)};
  CHECK_THROWS_AS(make_spectral_field(FieldKind::higgs, 1, wrong_size, flag), validation_error);
  CHECK_THROWS_AS(parse_field_kind("weird"), parse_error);
  CHECK(parse_field_kind("higgs") == FieldKind::higgs);
  CHECK(std::string(to_string(FieldKind::connection)) == "connection");
}

TEST_CASE("residue transport reorders by the new weights and masks across floors") {
  // Weights (1/4, 1/2) under multiplicity 2 become (1/2, 0) with floors
  // (0, 1); the cross entries die and the basis re-sorts to (0, 1/2).
  Flag flag = quarter_half_flag();
  Matrix res(2, 2);
  res.at(0, 0) = GaussRat(rat(1, 4));
  res.at(1, 0) = GaussRat(1);
  res.at(1, 1) = GaussRat(rat(1, 2));
  REQUIRE(check_residual(res, flag));

  TransportedResidue t = pullback_residue(FieldKind::connection, 2, res, flag);
  std::vector<int> expect_perm = {1, 0};
  CHECK(t.perm == expect_perm);
  std::vector<Rat> expect_w = {rat(0), rat(1, 2)};
  CHECK(t.flag.position_weights() == expect_w);
  Matrix expect_m(2, 2);
  expect_m.at(0, 0) = GaussRat(rat(0));   // 2*(1/2) - 1
  expect_m.at(1, 1) = GaussRat(rat(1, 2)); // 2*(1/4) - 0
  CHECK(t.matrix == expect_m);
  CHECK(check_residual(t.matrix, t.flag));

  SUBCASE("higgs transport keeps the trace data of plain scaling") {
    Matrix sp(2, 2);
    sp.at(1, 0) = GaussRat(5);
    REQUIRE(check_strongly_parabolic(sp, flag));
    TransportedResidue th = pullback_residue(FieldKind::higgs, 2, sp, flag);
    CHECK(check_strongly_parabolic(th.matrix, th.flag));
    CHECK(power_traces(th.matrix, 2) == power_traces(pullback_residue_higgs(2, sp), 2));
  }
  SUBCASE("non-parabolic input is refused") {
    Matrix bad(2, 2);
    bad.at(0, 1) = GaussRat(1);
    CHECK_THROWS_AS(pullback_residue(FieldKind::higgs, 2, bad, flag), precondition_error);
    CHECK_THROWS_AS(pullback_residue(FieldKind::higgs, 0, res, flag), precondition_error);
  }
}

TEST_CASE("direct image residue of a rank-one connection is lower Toeplitz") {
  GaussRat lambda(rat(1, 2));
  GaussRat mu(rat(-3), rat(1));
  GaussRat nu(7);
  LocalSpectralField f = make_spectral_field(FieldKind::connection, 3,
                                             {mat1(lambda), mat1(mu), mat1(nu)},
                                             make_flag({{rat(1, 4), 1}}));
  DirectImageResidue di = direct_image_residue(f);
  REQUIRE(di.matrix.rows() == 3);

  GaussRat third = GaussRat(1) / GaussRat(3);
  CHECK(di.matrix.at(0, 0) == lambda * third);
  CHECK(di.matrix.at(1, 1) == (lambda + GaussRat(1)) * third);
  CHECK(di.matrix.at(2, 2) == (lambda + GaussRat(2)) * third);
  CHECK(di.matrix.at(1, 0) == mu * third);
  CHECK(di.matrix.at(2, 1) == mu * third);
  CHECK(di.matrix.at(2, 0) == nu * third);
  CHECK(di.matrix.at(0, 1).is_zero());

  // Weights (k + 1/4)/3 arrive already sorted, so the permutation is trivial.
  std::vector<Rat> expect_w = {rat(1, 12), rat(5, 12), rat(3, 4)};
  CHECK(di.flag.position_weights() == expect_w);
  std::vector<int> id_perm = {0, 1, 2};
  CHECK(di.perm == id_perm);
  CHECK(di.matrix_weight_sorted() == di.matrix);

  // The diagonal spectrum ignores the higher coefficients entirely.
  std::vector<GaussRat> eig = triangular_eigenvalues(di.matrix);
  CHECK(eig[0] == lambda * third);
  CHECK(eig[1] == (lambda + GaussRat(1)) * third);
  CHECK(eig[2] == (lambda + GaussRat(2)) * third);
}

TEST_CASE("direct image characteristic polynomial factors through the residue") {
  Flag flag = flag_from_multiset({rat(0), rat(0)});
  Matrix res(2, 2);
  res.at(1, 0) = GaussRat(1);
  res.at(0, 0) = GaussRat(rat(1, 3));
  Matrix junk(2, 2);
  junk.at(0, 1) = GaussRat(rat(5), rat(2));
  junk.at(1, 1) = GaussRat(-4);

  SUBCASE("higgs: char(M) = char(res/m)^m") {
    LocalSpectralField f =
        make_spectral_field(FieldKind::higgs, 2, {res, junk}, flag);
    DirectImageResidue di = direct_image_residue(f);
    GaussRat half = GaussRat(1) / GaussRat(2);
    CHECK(poly_eq(char_poly(di.matrix), poly_pow(char_poly(res * half), 2)));
  }
  SUBCASE("connection: char(M) = prod_k char((res + k)/m)") {
    LocalSpectralField f =
        make_spectral_field(FieldKind::connection, 2, {res, junk}, flag);
    DirectImageResidue di = direct_image_residue(f);
    GaussRat half = GaussRat(1) / GaussRat(2);
    Poly expect = {GaussRat(1)};
    for (long k = 0; k < 2; ++k) {
      Matrix shifted = res;
      for (int i = 0; i < 2; ++i) shifted.at(i, i) += GaussRat(k);
      expect = poly_mul(expect, char_poly(shifted * half));
    }
    CHECK(poly_eq(char_poly(di.matrix), expect));
  }
  SUBCASE("multiplicity one is the identity") {
    LocalSpectralField f = make_spectral_field(FieldKind::higgs, 1, {res}, flag);
    CHECK(direct_image_residue(f).matrix == res);
  }
}

TEST_CASE("trace shadow of the spectral invariants") {
  Matrix a(2, 2);
  a.at(0, 0) = GaussRat(rat(1), rat(1));
  a.at(0, 1) = GaussRat(2);
  a.at(1, 0) = GaussRat(rat(0), rat(-1));
  a.at(1, 1) = GaussRat(3);
  CHECK(hitchin_traces(a, 3) == power_traces(a, 3));
  Matrix scaled = pullback_residue_higgs(4, a);
  CHECK(scaled == a * GaussRat(4));
}
