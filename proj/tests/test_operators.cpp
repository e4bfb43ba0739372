#include "doctest.h"

#include "conslaw/jetring.hpp"
#include "conslaw/operators.hpp"

#include <random>

using namespace conslaw;

namespace {

const PotentialModel kGeneric = PotentialModel::generic();

PotentialModel sinh_model() {
  return PotentialModel::rule(DiffPoly(), DiffPoly::var(VarId::param("b")));
}

DiffPoly rp(std::mt19937& rng) {
  std::uniform_int_distribution<int> nterms(1, 3);
  std::uniform_int_distribution<int> nvars(1, 3);
  std::uniform_int_distribution<int> coef(-4, 4);
  std::uniform_int_distribution<int> kind(0, 5);
  std::uniform_int_distribution<int> jet(0, 3);
  std::uniform_int_distribution<int> tow(-1, 2);
  std::uniform_int_distribution<int> expd(1, 2);
  DiffPoly p;
  int terms = nterms(rng);
  for (int t = 0; t < terms; ++t) {
    Monomial m;
    int vars = nvars(rng);
    for (int v = 0; v < vars; ++v) {
      VarId var = VarId::uj(0);
      switch (kind(rng)) {
        case 0: var = VarId::z(); break;
        case 1: var = VarId::zbar(); break;
        case 2: var = VarId::uj(jet(rng)); break;
        case 3: var = VarId::ujbar(jet(rng)); break;
        case 4: var = VarId::ftower(tow(rng)); break;
        case 5: var = VarId::base_u(); break;
      }
      m = m.times(Monomial{{{var, expd(rng)}}});
    }
    int c = coef(rng);
    if (c == 0) c = 1;
    p.add_term(m, GaussScalar(c));
  }
  return p;
}

}  // namespace

TEST_CASE("binomial coefficients") {
  CHECK(binomial(0, 0) == Rational(1));
  CHECK(binomial(5, 2) == Rational(10));
  CHECK(binomial(7, 7) == Rational(1));
  CHECK(binomial(4, 5) == Rational(0));
  CHECK(binomial(4, -1) == Rational(0));
}

TEST_CASE("derivative tower T^i") {
  CHECK(T_of(0, kGeneric) == parse_expr("f"));
  CHECK(T_of(1, kGeneric) == parse_expr("fu*u0"));
  CHECK(T_of(2, kGeneric) == parse_expr("fu*u1 + F2*u0^2"));
  CHECK(T_of(3, kGeneric) == parse_expr("fu*u2 + 3*F2*u0*u1 + F3*u0^3"));
  PotentialModel sm = sinh_model();
  CHECK(T_of(2, sm) == parse_expr("b*f*u0^2 + fu*u1"));
  // T^i = (e_{-1})^i f
  DiffPoly f = parse_expr("f");
  for (int i = 0; i <= 7; ++i) {
    CHECK(T_of(i, kGeneric) == e_minus1_pow(f, i, kGeneric));
    CHECK(T_of(i, sm) == e_minus1_pow(f, i, sm));
  }
  // wd(T^i) = i + weight of no letters: T^i is weight i (j+1 summed)
  CHECK(is_homogeneous_of(T_of(4, kGeneric), 4));
}

TEST_CASE("T-identities: dT^{i+j+1}/du_j = C(i+j+1, i) dT^i/du") {
  for (int i = 0; i <= 4; ++i) {
    DiffPoly tiu = partial(T_of(i, kGeneric), VarId::base_u());
    for (int j = 0; j <= 4; ++j) {
      DiffPoly lhs = partial(T_of(i + j + 1, kGeneric), VarId::uj(j));
      CHECK(lhs == GaussScalar(binomial(i + j + 1, i)) * tiu);
    }
  }
}

TEST_CASE("frame vector on coordinates") {
  CHECK(e_minus1(parse_expr("z"), kGeneric) == DiffPoly::constant(1));
  CHECK(e_minus1(parse_expr("zb"), kGeneric).is_zero());
  CHECK(e_minus1(parse_expr("u"), kGeneric) == parse_expr("u0"));
  CHECK(e_minus1(parse_expr("u3"), kGeneric) == parse_expr("u4"));
  CHECK(e_minus1(parse_expr("ub0"), kGeneric) == parse_expr("-f"));
  // e(ubar_2) = -conj(T^2)
  CHECK(e_minus1(parse_expr("ub2"), kGeneric) == parse_expr("-fu*ub1 - F2*ub0^2"));
  CHECK(e_minus1(parse_expr("f"), kGeneric) == parse_expr("fu*u0"));
  CHECK(e_minus1(parse_expr("Sf"), kGeneric) == parse_expr("f*u0"));
  // conjugate frame vector
  CHECK(e_minus1_bar(parse_expr("u1"), kGeneric) == parse_expr("-fu*u0"));
  CHECK(e_minus1_bar(parse_expr("zb"), kGeneric) == DiffPoly::constant(1));
  CHECK(e_minus1_bar(parse_expr("ub3"), kGeneric) == parse_expr("ub4"));
  CHECK(e_minus1_bar(parse_expr("f"), kGeneric) == parse_expr("fu*ub0"));
}

TEST_CASE("the circle generator q") {
  DiffPoly q = parse_expr("z*u0 - zb*ub0");
  CHECK(e_minus1(q, kGeneric) == parse_expr("u0 + z*u1 + zb*f"));
  CHECK(e_minus1_bar(q, kGeneric) == parse_expr("-ub0 - zb*ub1 - z*f"));
  // (e)^j q = j u_{j-1} + z u_j + zb T^{j-1}
  for (int j = 1; j <= 6; ++j) {
    DiffPoly rhs = GaussScalar(j) * DiffPoly::var(VarId::uj(j - 1)) +
                   DiffPoly::var(VarId::z()) * DiffPoly::var(VarId::uj(j)) +
                   DiffPoly::var(VarId::zbar()) * T_of(j - 1, kGeneric);
    CHECK(e_minus1_pow(q, j, kGeneric) == rhs);
  }
}

TEST_CASE("frame vectors are derivations and commute") {
  std::mt19937 rng(505u);
  PotentialModel sm = sinh_model();
  for (int t = 0; t < 30; ++t) {
    DiffPoly p = rp(rng), r = rp(rng);
    const PotentialModel& m = (t % 2 == 0) ? kGeneric : sm;
    DiffPoly pr = reduce(p, m), rr = reduce(r, m);
    // Leibniz
    CHECK(e_minus1(pr * rr, m) == e_minus1(pr, m) * rr + pr * e_minus1(rr, m));
    CHECK(e_minus1_bar(pr * rr, m) ==
          e_minus1_bar(pr, m) * rr + pr * e_minus1_bar(rr, m));
    // commutator
    CHECK(e_minus1(e_minus1_bar(pr, m), m) == e_minus1_bar(e_minus1(pr, m), m));
    // conjugation intertwines the two frames
    CHECK(conjugate(e_minus1(pr, m)) == e_minus1_bar(conjugate(pr), m));
  }
}

TEST_CASE("linearized operator on pinned inputs") {
  PotentialModel sm = sinh_model();
  CHECK(E_op(parse_expr("u0"), sm).is_zero());
  CHECK(E_op(parse_expr("u2 - (1/2)*b*u0^3"), sm).is_zero());
  CHECK(E_op(parse_expr("u1"), sm) == parse_expr("-b*f*u0^2"));
  CHECK(E_op(parse_expr("u2"), sm) == parse_expr("-3*b*f*u0*u1 - b*fu*u0^3"));
  CHECK(E_op(parse_expr("u0*u1"), sm) ==
        parse_expr("-b*f*u0^3 - f*u2 - 2*fu*u0*u1"));
  CHECK(E_op(parse_expr("u0^3"), sm) == parse_expr("-6*f*u0*u1 - 2*fu*u0^3"));
  // q is in the kernel for every model
  CHECK(E_op(parse_expr("z*u0 - zb*ub0"), kGeneric).is_zero());
  CHECK(E_op(parse_expr("z*u0 - zb*ub0"), sm).is_zero());
}

TEST_CASE("weighted degree bookkeeping of the frames") {
  // e_{-1} raises wd by exactly 1 on homogeneous inputs
  DiffPoly p = parse_expr("u0*u1^2");  // wd 5
  CHECK(is_homogeneous_of(e_minus1(p, kGeneric), 6));
  CHECK(is_homogeneous_of(e_minus1_bar(p, kGeneric), 4));
  CHECK(is_homogeneous_of(E_op(p, kGeneric), 5));
}
