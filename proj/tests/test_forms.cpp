#include "doctest.h"

#include "conslaw/forms.hpp"
#include "conslaw/jetring.hpp"
#include "conslaw/operators.hpp"

#include <random>
#include <stdexcept>

using namespace conslaw;

namespace {

const PotentialModel kGeneric = PotentialModel::generic();

PotentialModel sinh_model() {
  return PotentialModel::rule(DiffPoly(), DiffPoly::var(VarId::param("b")));
}

const GaussScalar I = GaussScalar::sqrt_minus_one();

}  // namespace

TEST_CASE("letter codes and attributes") {
  CHECK(letter::eta(0) == letter::Eta0);
  CHECK(letter::eta(1) == 3);
  CHECK(letter::eta_bar(1) == 4);
  CHECK(letter::eta(2) == 5);
  CHECK(letter::eta_bar(2) == 6);
  CHECK(letter::eta_index(letter::eta(3)) == 3);
  CHECK(letter::eta_index(letter::eta_bar(3)) == 3);
  CHECK(letter::is_barred(letter::ZetaBar));
  CHECK(letter::is_barred(letter::eta_bar(2)));
  CHECK_FALSE(letter::is_barred(letter::eta(2)));
  CHECK_FALSE(letter::is_barred(letter::Eta0));
  CHECK(letter::weight_of(letter::Zeta) == -1);
  CHECK(letter::weight_of(letter::ZetaBar) == 1);
  CHECK(letter::weight_of(letter::Eta0) == 0);
  CHECK(letter::weight_of(letter::eta(4)) == 4);
  CHECK(letter::weight_of(letter::eta_bar(4)) == -4);
  CHECK(letter::conj_of(letter::Zeta) == letter::ZetaBar);
  CHECK(letter::conj_of(letter::Eta0) == letter::Eta0);
  CHECK(letter::conj_of(letter::eta(2)) == letter::eta_bar(2));
  CHECK(letter::token(letter::Zeta) == "zeta");
  CHECK(letter::token(letter::eta_bar(1)) == "etab1");
}

TEST_CASE("wedge algebra signs") {
  DiffForm zeta = DiffForm::basis(letter::Zeta);
  DiffForm eta1 = DiffForm::basis(letter::eta(1));
  CHECK(wedge(zeta, eta1) == -wedge(eta1, zeta));
  CHECK(wedge(zeta, zeta).is_zero());
  // insertion sorting: adding an unsorted word flips the sign
  DiffForm w;
  w.add_word({letter::eta(1), letter::Zeta}, DiffPoly::constant(1));
  CHECK(w.coeff({letter::Zeta, letter::eta(1)}) == DiffPoly::constant(-1));
  // associativity on a triple product
  DiffForm eta0 = DiffForm::basis(letter::Eta0);
  CHECK(wedge(wedge(zeta, eta0), eta1) == wedge(zeta, wedge(eta0, eta1)));
  CHECK(wedge(zeta, eta1).degree() == 2);
  CHECK_THROWS(DiffForm().degree());
}

TEST_CASE("differential of a function") {
  // d u_0 = u_1 zeta - f zetabar + eta_1
  DiffForm d0 = d_function(parse_expr("u0"), kGeneric);
  CHECK(d0.coeff({letter::Zeta}) == parse_expr("u1"));
  CHECK(d0.coeff({letter::ZetaBar}) == parse_expr("-f"));
  CHECK(d0.coeff({letter::eta(1)}) == DiffPoly::constant(1));
  CHECK(d0.coeff({letter::Eta0}).is_zero());
  // d of the base variable picks up eta_0
  DiffForm du = d_function(parse_expr("u"), kGeneric);
  CHECK(du.coeff({letter::Eta0}) == DiffPoly::constant(1));
  CHECK(du.coeff({letter::Zeta}) == parse_expr("u0"));
  CHECK(du.coeff({letter::ZetaBar}) == parse_expr("ub0"));
  // tower symbols are functions of u only
  DiffForm df = d_function(parse_expr("f"), kGeneric);
  CHECK(df.coeff({letter::Zeta}) == parse_expr("fu*u0"));
  CHECK(df.coeff({letter::ZetaBar}) == parse_expr("fu*ub0"));
  CHECK(df.coeff({letter::Eta0}) == parse_expr("fu"));
}

TEST_CASE("structure equations") {
  // d eta_0 = zeta ^ eta_1 + zetabar ^ etabar_1
  DiffForm d0 = d_form(DiffForm::basis(letter::Eta0), kGeneric);
  CHECK(d0.coeff({letter::Zeta, letter::eta(1)}) == DiffPoly::constant(1));
  CHECK(d0.coeff({letter::ZetaBar, letter::eta_bar(1)}) == DiffPoly::constant(1));
  CHECK(d0.terms().size() == 2);
  // d eta_1 = -eta_2 ^ zeta + fu eta_0 ^ zetabar
  DiffForm d1 = d_form(DiffForm::basis(letter::eta(1)), kGeneric);
  CHECK(d1.coeff({letter::Zeta, letter::eta(2)}) == DiffPoly::constant(1));
  CHECK(d1.coeff({letter::ZetaBar, letter::Eta0}) == parse_expr("-fu"));
  CHECK(d1.terms().size() == 2);
  // flat letters are closed
  CHECK(d_form(DiffForm::basis(letter::Zeta), kGeneric).is_zero());
  CHECK(d_form(DiffForm::basis(letter::ZetaBar), kGeneric).is_zero());
}

TEST_CASE("tau forms") {
  DiffForm t1 = tau(1, kGeneric);
  CHECK(t1.coeff({letter::eta(1)}) == parse_expr("fu"));
  CHECK(t1.coeff({letter::Eta0}) == parse_expr("F2*u0"));
  DiffForm t1s = tau(1, sinh_model());
  CHECK(t1s.coeff({letter::Eta0}) == parse_expr("b*f*u0"));
  DiffForm t0 = tau(0, kGeneric);
  CHECK(t0.coeff({letter::Eta0}) == parse_expr("fu"));
}

TEST_CASE("d squared vanishes") {
  PotentialModel sm = sinh_model();
  for (int L = 0; L <= 10; ++L) {
    CHECK(d_form(d_form(DiffForm::basis(L), kGeneric), kGeneric).is_zero());
    CHECK(d_form(d_form(DiffForm::basis(L), sm), sm).is_zero());
  }
  // scalars too (d of dF)
  for (const char* s : {"u0^2*ub1", "z*f*u3", "Sf*zb", "F2*u1*ub2", "u*f*u0"}) {
    DiffForm w = DiffForm::scalar(parse_expr(s));
    CHECK(d_form(d_form(w, kGeneric), kGeneric).is_zero());
    CHECK(d_form(d_form(w, sm), sm).is_zero());
  }
}

TEST_CASE("Leibniz rule for d on products") {
  PotentialModel sm = sinh_model();
  std::mt19937 rng(606u);
  std::uniform_int_distribution<int> letdist(0, 8);
  for (int t = 0; t < 20; ++t) {
    DiffPoly F = reduce(parse_expr(t % 2 ? "z*u1^2 + f*ub0" : "b*u0*u2 + zb^2"), sm);
    DiffForm w = DiffForm::basis(letdist(rng));
    DiffForm lhs = d_form(F * w, sm);
    DiffForm rhs = wedge(d_function(F, sm), w) + F * d_form(w, sm);
    CHECK(lhs == rhs);
  }
  // and on a wedge of two letters
  DiffForm a = DiffForm::basis(letter::eta(1));
  DiffForm b = DiffForm::basis(letter::eta_bar(2));
  DiffForm lhs = d_form(wedge(a, b), sm);
  DiffForm rhs = wedge(d_form(a, sm), b) - wedge(a, d_form(b, sm));
  CHECK(lhs == rhs);
}

TEST_CASE("complex structure J") {
  DiffForm zeta = DiffForm::basis(letter::Zeta);
  DiffForm zetab = DiffForm::basis(letter::ZetaBar);
  DiffForm eta0 = DiffForm::basis(letter::Eta0);
  DiffForm eta2 = DiffForm::basis(letter::eta(2));
  DiffForm etab2 = DiffForm::basis(letter::eta_bar(2));
  CHECK(J_apply(zeta) == I * zeta);
  CHECK(J_apply(zetab) == (GaussScalar(0) - I) * zetab);
  CHECK(J_apply(eta0) == eta0);
  CHECK(J_apply(eta2) == I * eta2);
  CHECK(J_apply(etab2) == (GaussScalar(0) - I) * etab2);
  // J^2 = -1 away from eta_0
  CHECK(J_apply(J_apply(zeta + eta2)) == (GaussScalar(-1)) * (zeta + eta2));
  CHECK_THROWS_AS(J_apply(wedge(zeta, eta0)), std::invalid_argument);
}

TEST_CASE("psi and its conjugate") {
  DiffForm p = psi();
  GaussScalar minus_half_i = GaussScalar(Rational(0), Rational(-1, 2));
  CHECK(p.coeff({letter::Zeta, letter::eta(1)}) == DiffPoly(minus_half_i));
  CHECK(p.coeff({letter::ZetaBar, letter::eta_bar(1)}) ==
        DiffPoly(GaussScalar(Rational(0), Rational(1, 2))));
  CHECK(p.terms().size() == 2);
  CHECK(conjugate(p) == p);  // psi is real
  WeightedDegree wd = weighted_degree(p);
  CHECK(wd.homogeneous);
  CHECK(wd.degree == 0);
}

TEST_CASE("conjugation of forms") {
  DiffForm w;
  w.add_word({letter::Zeta, letter::eta(1)}, parse_expr("i*u0"));
  DiffForm cw = conjugate(w);
  CHECK(cw.coeff({letter::ZetaBar, letter::eta_bar(1)}) == parse_expr("-i*ub0"));
  CHECK(conjugate(cw) == w);
  // conjugation respects d
  PotentialModel sm = sinh_model();
  DiffForm a = parse_expr("u1*ub0") * DiffForm::basis(letter::eta(2));
  CHECK(conjugate(d_form(a, sm)) == d_form(conjugate(a), sm));
}

TEST_CASE("mod_ideal keeps only flat words") {
  DiffForm w;
  w.add_word({letter::Zeta}, parse_expr("u0"));
  w.add_word({letter::eta(1)}, parse_expr("u1"));
  w.add_word({letter::Zeta, letter::ZetaBar}, parse_expr("f"));
  w.add_word({letter::Zeta, letter::Eta0}, parse_expr("z"));
  DiffForm r = mod_ideal(w);
  CHECK(r.coeff({letter::Zeta}) == parse_expr("u0"));
  CHECK(r.coeff({letter::Zeta, letter::ZetaBar}) == parse_expr("f"));
  CHECK(r.terms().size() == 2);
}

TEST_CASE("interior product is an antiderivation") {
  FrameVector v;
  v.set(frame::Eminus1, parse_expr("u0"));
  v.set(frame::E0, parse_expr("z"));
  v.set(frame::Ei(1), parse_expr("1"));
  DiffForm zeta = DiffForm::basis(letter::Zeta);
  DiffForm eta0 = DiffForm::basis(letter::Eta0);
  DiffForm eta1 = DiffForm::basis(letter::eta(1));
  CHECK(interior(v, zeta) == DiffForm::scalar(parse_expr("u0")));
  CHECK(interior(v, eta0) == DiffForm::scalar(parse_expr("z")));
  CHECK(interior(v, eta1) == DiffForm::scalar(parse_expr("1")));
  CHECK(interior(v, DiffForm::basis(letter::ZetaBar)).is_zero());
  // antiderivation on a 2-form
  DiffForm w2 = wedge(zeta, eta0);
  DiffForm expect = parse_expr("u0") * eta0 - parse_expr("z") * zeta;
  CHECK(interior(v, w2) == expect);
  // contraction twice kills a 2-form's symmetric part: v -| (v -| w) = 0
  CHECK(interior(v, interior(v, w2)).is_zero());
}

TEST_CASE("circle symmetry vector") {
  PotentialModel sm = sinh_model();
  FrameVector v = s1_vector(sm, 3);
  DiffPoly q = parse_expr("z*u0 - zb*ub0");
  CHECK(v.get(frame::Eminus1) == parse_expr("-i*z"));
  CHECK(v.get(frame::Eminus1Bar) == parse_expr("i*zb"));
  CHECK(v.get(frame::E0) == I * q);
  CHECK(v.get(frame::Ei(1)) == I * e_minus1(q, sm));
  CHECK(v.get(frame::Ei(2)) == I * e_minus1_pow(q, 2, sm));
  CHECK(v.get(frame::EiBar(1)) == I * e_minus1_bar(q, sm));
}

TEST_CASE("weighted degree of forms") {
  DiffForm w = parse_expr("u1") * DiffForm::basis(letter::Zeta);  // 2 - 1
  WeightedDegree d = weighted_degree(w);
  CHECK(d.homogeneous);
  CHECK(d.degree == 1);
  DiffForm mixed = w + parse_expr("u0") * DiffForm::basis(letter::Zeta);
  CHECK_FALSE(weighted_degree(mixed).homogeneous);
  // d preserves wd
  DiffForm deta3 = d_form(DiffForm::basis(letter::eta(3)), kGeneric);
  CHECK(weighted_degree(deta3).homogeneous);
  CHECK(weighted_degree(deta3).degree == 3);
}

TEST_CASE("form rendering") {
  DiffForm w;
  w.add_word({letter::Zeta, letter::eta(1)}, parse_expr("-i*u0"));
  CHECK(render(w, RenderFormat::Text) == "(-i*u0)^zeta^eta1");
  CHECK(render(DiffForm(), RenderFormat::Text) == "0");
  std::string j = render(w, RenderFormat::Json);
  CHECK(j.find("\"word\"") != std::string::npos);
  CHECK(j.find("zeta") != std::string::npos);
}
