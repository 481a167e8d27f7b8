#include "doctest.h"

#include <algorithm>

#include "ipsw/cube.hpp"
#include "ipsw/roabp.hpp"
#include "ipsw/util.hpp"

using namespace ipsw;

namespace {
std::vector<VarId> plains(unsigned lo, unsigned hi) {
  std::vector<VarId> out;
  for (unsigned i = lo; i <= hi; ++i) out.push_back(VarId::plain(i));
  return out;
}

Poly random_sparse(const FieldCtx* ctx, unsigned n, unsigned maxdeg,
                   unsigned terms, std::uint64_t seed) {
  Rng rng(seed);
  Poly f = Poly::zero(ctx);
  for (unsigned t = 0; t < terms; ++t) {
    Monomial m;
    for (unsigned i = 1; i <= n; ++i) {
      unsigned e = unsigned(rng_below(rng, maxdeg + 1));
      for (unsigned k = 0; k < e; ++k) m = m * Monomial::var(VarId::plain(i));
    }
    Fe c = ctx->from_int(long(rng_below(rng, ctx->q())));
    if (!c.is_zero()) f.add_term(m, c);
  }
  return f;
}
}  // namespace

TEST_CASE("width-1 product program evaluates and extracts") {
  const FieldCtx* F = FieldCtx::prime(7);
  auto ord = plains(1, 3);
  // (x_1 + 2)(3 x_2)(x_3^2 + 1)
  std::vector<Label> ls{{F->from_int(2), F->one()},
                        {F->zero(), F->from_int(3)},
                        {F->one(), F->zero(), F->one()}};
  RoAbp A = roabp_product(F, ord, ls);
  validate(A);
  CHECK(A.width() == 1);
  CHECK(A.ideg() == 2);
  Poly f = extract_poly(A);
  Poly want = (Poly::var(F, ord[0]) + Poly::constant(F, 2)) *
              (Poly::constant(F, 3) * Poly::var(F, ord[1])) *
              (Poly::var(F, ord[2]) * Poly::var(F, ord[2]) +
               Poly::constant(F, 1));
  CHECK(f == want);
  std::map<VarId, Fe> asg{{ord[0], F->from_int(1)},
                          {ord[1], F->from_int(2)},
                          {ord[2], F->from_int(3)}};
  CHECK(roabp_eval(A, asg) == want.eval(asg));
}

TEST_CASE("builder round trips random polynomials in several orders") {
  const FieldCtx* F = FieldCtx::prime(11);
  for (std::uint64_t seed : {5u, 6u, 7u}) {
    Poly f = random_sparse(F, 4, 2, 8, seed);
    std::vector<std::vector<VarId>> orders;
    orders.push_back(plains(1, 4));
    orders.push_back({VarId::plain(4), VarId::plain(2), VarId::plain(1),
                      VarId::plain(3)});
    orders.push_back({VarId::plain(2), VarId::plain(4), VarId::plain(3),
                      VarId::plain(1)});
    for (const auto& ord : orders) {
      RoAbp A = nisan_build(f, ord);
      validate(A);
      CHECK(extract_poly(A) == f);
      CHECK(A.width() == width_lower(f, ord));
    }
  }
}

TEST_CASE("builder width is the coefficient-space dimension") {
  const FieldCtx* F = FieldCtx::prime(5);
  Poly f = Poly::var(F, VarId::plain(1)) * Poly::var(F, VarId::plain(3)) +
           Poly::var(F, VarId::plain(2)) * Poly::var(F, VarId::plain(4));
  CHECK(width_lower(f, plains(1, 4)) == 2);
  // a pure product stays width 1
  Poly g = (Poly::var(F, VarId::plain(1)) + Poly::constant(F, 1)) *
           (Poly::var(F, VarId::plain(2)) + Poly::constant(F, 2));
  CHECK(width_lower(g, plains(1, 2)) == 1);
  CHECK(nisan_build(g, plains(1, 2)).width() == 1);
}

TEST_CASE("sum and product closures") {
  const FieldCtx* F = FieldCtx::prime(7);
  auto ord = plains(1, 3);
  Poly f = random_sparse(F, 3, 1, 5, 41);
  Poly g = random_sparse(F, 3, 1, 5, 42);
  RoAbp A = nisan_build(f, ord);
  RoAbp B = nisan_build(g, ord);
  RoAbp S = closure_sum(A, B);
  validate(S);
  CHECK(extract_poly(S) == f + g);
  CHECK(S.width() <= A.width() + B.width());
  RoAbp P = closure_prod(A, B);
  validate(P);
  CHECK(extract_poly(P) == f * g);
  CHECK(P.width() <= A.width() * B.width());
  CHECK_THROWS_WITH_AS(closure_sum(A, nisan_build(g, {VarId::plain(3),
                                                      VarId::plain(2),
                                                      VarId::plain(1)})),
                       doctest::Contains("OrderMismatch"), Error);
}

TEST_CASE("partial substitution fixes a middle variable") {
  const FieldCtx* F = FieldCtx::prime(11);
  Poly f = random_sparse(F, 4, 2, 7, 17);
  RoAbp A = nisan_build(f, plains(1, 4));
  std::map<VarId, Fe> asg{{VarId::plain(2), F->from_int(5)}};
  RoAbp B = partial_subst(A, asg);
  validate(B);
  // the layer stays, its labels collapse to constants
  CHECK(B.order.size() == 4);
  CHECK(extract_poly(B) == f.subst_const(asg));
}

TEST_CASE("interleaved lift substitutes products") {
  const FieldCtx* F = FieldCtx::prime(7);
  Poly f = Poly::var(F, VarId::plain(1)) * Poly::var(F, VarId::plain(2)) +
           Poly::var(F, VarId::plain(1)) + Poly::constant(F, 3);
  RoAbp A = nisan_build(f, plains(1, 2));
  std::vector<VarId> xs{VarId::gadget_y(1), VarId::gadget_y(2)};
  std::vector<VarId> ys{VarId::gadget_z(1, 1), VarId::gadget_z(2, 1)};
  RoAbp L = interleave_lift(A, xs, ys);
  validate(L);
  CHECK(L.order.size() == 4);
  Poly lifted = extract_poly(L);
  std::map<VarId, Fe> pt{{xs[0], F->from_int(2)},
                         {ys[0], F->from_int(3)},
                         {xs[1], F->from_int(4)},
                         {ys[1], F->from_int(5)}};
  std::map<VarId, Fe> zpt{{VarId::plain(1), F->from_int(6)},
                          {VarId::plain(2), F->from_int(20 % 7)}};
  CHECK(lifted.eval(pt) == f.eval(zpt));
}

TEST_CASE("multilinearization commutes with extraction") {
  const FieldCtx* F = FieldCtx::prime(5);
  Poly f = random_sparse(F, 3, 3, 6, 23);
  RoAbp A = nisan_build(f, plains(1, 3));
  RoAbp B = ml_roabp(A);
  validate(B);
  CHECK(B.ideg() <= 1);
  CHECK(extract_poly(B) == ml(f));
}

TEST_CASE("functional inverse of a cube-nonvanishing program") {
  const FieldCtx* F = FieldCtx::prime(5);
  unsigned n = 4;
  // prod (1 - x_i) - 2 takes values -1 and -2 on the cube, never 0
  Poly f = Poly::constant(F, 1);
  for (unsigned i = 1; i <= n; ++i)
    f = f * (Poly::constant(F, 1) - Poly::var(F, VarId::plain(i)));
  f = f - Poly::constant(F, 2);
  RoAbp A = nisan_build(f, plains(1, unsigned(n)));
  RoAbp G = fermat_refutation_roabp(A, 5);
  validate(G);
  CHECK(G.width() <= (1u << 3));
  Poly g = extract_poly(G);
  Poly prod = ml(g * f);
  // g agrees with 1/f on every cube point
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    std::map<VarId, Fe> pt;
    for (unsigned i = 1; i <= n; ++i)
      pt[VarId::plain(i)] = ((mask >> (i - 1)) & 1) ? F->one() : F->zero();
    CHECK(g.eval(pt) * f.eval(pt) == F->one());
  }
  CHECK(ml(prod) == Poly::constant(F, 1));
}

TEST_CASE("inverse construction keeps width small in every order") {
  const FieldCtx* F = FieldCtx::prime(5);
  unsigned n = 4;
  Poly f = Poly::constant(F, 1);
  for (unsigned i = 1; i <= n; ++i)
    f = f * (Poly::constant(F, 1) - Poly::var(F, VarId::plain(i)));
  f = f - Poly::constant(F, 2);
  std::vector<VarId> ord = plains(1, n);
  std::reverse(ord.begin(), ord.end());
  RoAbp A = nisan_build(f, ord);
  RoAbp G = fermat_refutation_roabp(A, 5);
  CHECK(extract_poly(G).is_multilinear());
  CHECK(G.width() <= (1u << 3));
}

TEST_CASE("refutation rejects programs with boolean roots") {
  const FieldCtx* F = FieldCtx::prime(5);
  Poly f = Poly::var(F, VarId::plain(1)) - Poly::constant(F, 1);
  RoAbp A = nisan_build(f, plains(1, 1));
  CHECK_THROWS_WITH_AS(fermat_refutation_roabp(A, 5),
                       doctest::Contains("HasBooleanRoot"), Error);
}

TEST_CASE("constant program and validation errors") {
  const FieldCtx* F = FieldCtx::prime(3);
  RoAbp C = roabp_const(F, plains(1, 2), F->from_int(2));
  validate(C);
  CHECK(extract_poly(C) == Poly::constant(F, 2));
  RoAbp bad = C;
  bad.nodes.back() = 2;
  CHECK_THROWS(validate(bad));
}
