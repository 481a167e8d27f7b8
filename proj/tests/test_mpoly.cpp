#include "doctest.h"

#include "ipsw/mpoly.hpp"
#include "ipsw/util.hpp"

using namespace ipsw;

namespace {
Poly xv(const FieldCtx* c, unsigned i) { return Poly::var(c, VarId::plain(i)); }
}

TEST_CASE("grlex orders by degree then position") {
  const FieldCtx* Q = FieldCtx::rationals();
  Poly f = xv(Q, 1) + xv(Q, 2);
  CHECK(f.leading_monomial().str() == "x_2");
  Poly g = xv(Q, 1) * xv(Q, 1) + xv(Q, 2);
  CHECK(g.leading_monomial().str() == "x_1^2");
  CHECK(grlex_cmp(Monomial::var(VarId::plain(1)),
                  Monomial::var(VarId::plain(2))) < 0);
}

TEST_CASE("variable names round trip") {
  std::vector<VarId> vs{VarId::plain(3), VarId::pos_block(1, 2, 5),
                        VarId::neg_block(2, 1, 3), VarId::gadget_y(4),
                        VarId::gadget_z(1, 2), VarId::gadget_w(2, 7)};
  for (const VarId& v : vs) CHECK(VarId::parse(v.name()) == v);
  CHECK(VarId::plain(3).name() == "x_3");
  CHECK(VarId::gadget_y(4).name() == "y_4");
  CHECK(VarId::gadget_z(1, 2).name() == "z_{1,2}");
  CHECK_THROWS_WITH_AS(VarId::parse("q_3"), doctest::Contains("BadVarName"),
                       Error);
}

TEST_CASE("arithmetic and degree bookkeeping") {
  const FieldCtx* F = FieldCtx::prime(5);
  Poly f = xv(F, 1) * xv(F, 2) + xv(F, 1) + Poly::constant(F, 3);
  CHECK(f.degree() == 2);
  CHECK(f.term_count() == 3);
  CHECK((f - f).is_zero());
  CHECK(Poly::zero(F).degree() == kDegMinusInf);
  CHECK(f.ideg(VarId::plain(1)) == 1);
  CHECK(f.max_ideg() == 1);
  Poly sq = f * f;
  CHECK(sq.degree() == 4);
  CHECK(sq.ideg(VarId::plain(1)) == 2);
  CHECK(!sq.is_multilinear());
  CHECK(f.is_multilinear());
}

TEST_CASE("pow matches repeated products") {
  const FieldCtx* F = FieldCtx::prime(7);
  Poly f = xv(F, 1) + Poly::constant(F, 2);
  CHECK(f.pow(3) == f * f * f);
  CHECK(f.pow(0) == Poly::constant(F, 1));
}

TEST_CASE("multilinearization collapses exponents") {
  const FieldCtx* Q = FieldCtx::rationals();
  Poly a = xv(Q, 1) * xv(Q, 3);
  Poly b = xv(Q, 2) * xv(Q, 4);
  Poly f = ml((a + b).pow(4));
  Poly want = a + b + (a * b).scale(Q->from_int(14));
  CHECK(f == want);
}

TEST_CASE("ml_pow tracks ml of the power") {
  const FieldCtx* F = FieldCtx::prime(5);
  Poly f = xv(F, 1) + xv(F, 2) + Poly::constant(F, 1);
  CHECK(ml_pow(f, 4) == ml(f.pow(4)));
}

TEST_CASE("boolean reduction splits off quotients") {
  const FieldCtx* Q = FieldCtx::rationals();
  Poly x = xv(Q, 1);
  BoolReduction r = bool_reduce(x.pow(3));
  CHECK(r.remainder == x);
  CHECK(r.quotients.size() == 1);
  CHECK(r.quotients.at(VarId::plain(1)) == x + Poly::constant(Q, 1));
  // reassemble
  Poly back = r.remainder;
  for (const auto& [v, h] : r.quotients)
    back = back + h * (Poly::var(Q, v) * Poly::var(Q, v) - Poly::var(Q, v));
  CHECK(back == x.pow(3));
}

TEST_CASE("elementary symmetric polynomials") {
  const FieldCtx* Q = FieldCtx::rationals();
  std::vector<VarId> vars{VarId::plain(1), VarId::plain(2), VarId::plain(3)};
  Poly e2 = e_sym(2, vars, Q);
  CHECK(e2.term_count() == 3);
  CHECK(e2.degree() == 2);
  Poly e0 = e_sym(0, vars, Q);
  CHECK(e0 == Poly::constant(Q, 1));
  std::vector<Poly> items{xv(Q, 1) + xv(Q, 2), xv(Q, 3)};
  CHECK(e_sym_of(2, items, Q) == (xv(Q, 1) + xv(Q, 2)) * xv(Q, 3));
}

TEST_CASE("evaluation and substitution") {
  const FieldCtx* F = FieldCtx::prime(7);
  Poly f = xv(F, 1) * xv(F, 2) + Poly::constant(F, 3);
  std::map<VarId, Fe> at{{VarId::plain(1), F->from_int(2)},
                         {VarId::plain(2), F->from_int(5)}};
  CHECK(f.eval(at) == F->from_int(6));
  Poly g = f.subst_const({{VarId::plain(1), F->from_int(2)}});
  CHECK(g == xv(F, 2).scale(F->from_int(2)) + Poly::constant(F, 3));
  Poly h = f.subst({{VarId::plain(1), xv(F, 2)}});
  CHECK(h == xv(F, 2) * xv(F, 2) + Poly::constant(F, 3));
}

TEST_CASE("boolean image enumerates cube values") {
  const FieldCtx* Q = FieldCtx::rationals();
  Poly f = (Poly::constant(Q, 1) - xv(Q, 1)) *
               (Poly::constant(Q, 1) - xv(Q, 2)) -
           Poly::constant(Q, 2);
  std::vector<Fe> img = boolean_image(f);
  CHECK(img.size() == 2);
  CHECK(image_contains(img, Q->from_int(-1)));
  CHECK(image_contains(img, Q->from_int(-2)));
  CHECK(!image_contains(img, Q->zero()));
}

TEST_CASE("lift carries polynomials into extensions") {
  const FieldCtx* F = FieldCtx::prime(3);
  const FieldCtx* E = FieldCtx::ext_build(3, 2);
  Poly f = xv(F, 1) * xv(F, 2) + Poly::constant(F, 2);
  Poly g = f.lift_to(E);
  CHECK(g.ctx() == E);
  CHECK(g.term_count() == f.term_count());
  CHECK(g.coeff(Monomial::one()) == E->lift(F->from_int(2)));
}

TEST_CASE("string form is exact and stable") {
  const FieldCtx* F = FieldCtx::prime(5);
  Poly f = xv(F, 1) * xv(F, 2) + xv(F, 1).scale(F->from_int(4)) +
           Poly::constant(F, 3);
  CHECK(f.str() == "x_1*x_2 + 4*x_1 + 3");
  const FieldCtx* Q = FieldCtx::rationals();
  Poly g = xv(Q, 1).scale(Q->from_mpq(mpq_class(-1, 2))) + Poly::constant(Q, 1);
  CHECK(g.str() == "-1/2*x_1 + 1");
  CHECK(Poly::zero(Q).str() == "0");
}

TEST_CASE("monomial division and collapse") {
  Monomial m = Monomial::var(VarId::plain(1), 2) * Monomial::var(VarId::plain(2));
  auto q = m.divide(Monomial::var(VarId::plain(1)));
  REQUIRE(q.has_value());
  CHECK(*q == Monomial::var(VarId::plain(1)) * Monomial::var(VarId::plain(2)));
  CHECK(!m.divide(Monomial::var(VarId::plain(3))).has_value());
  CHECK(m.collapse().multilinear());
  CHECK(m.deg() == 3);
  CHECK(m.max_ideg() == 2);
}

TEST_CASE("hash is stable under reconstruction") {
  const FieldCtx* F = FieldCtx::prime(5);
  Poly f = xv(F, 1) * xv(F, 2) + Poly::constant(F, 3);
  Poly g = Poly::constant(F, 3) + xv(F, 2) * xv(F, 1);
  CHECK(f.hash() == g.hash());
  CHECK(f == g);
}
