#include "doctest.h"

#include "ipsw/cube.hpp"
#include "ipsw/dims.hpp"
#include "ipsw/util.hpp"

using namespace ipsw;

namespace {
Poly xv(const FieldCtx* c, unsigned i) { return Poly::var(c, VarId::plain(i)); }

std::vector<VarId> plains(unsigned lo, unsigned hi) {
  std::vector<VarId> out;
  for (unsigned i = lo; i <= hi; ++i) out.push_back(VarId::plain(i));
  return out;
}

Poly random_multilinear(const FieldCtx* ctx, unsigned n, unsigned terms,
                        std::uint64_t seed) {
  Rng rng(seed);
  Poly f = Poly::zero(ctx);
  for (unsigned t = 0; t < terms; ++t) {
    Monomial m;
    for (unsigned i = 1; i <= n; ++i)
      if (rng() & 1) m = m * Monomial::var(VarId::plain(i));
    Fe c = ctx->sample_point(rng_below(rng, ctx->finite() ? ctx->q() : 11));
    if (!c.is_zero()) f.add_term(m, c);
  }
  return f;
}
}  // namespace

TEST_CASE("exact rank over prime and rational fields") {
  const FieldCtx* F = FieldCtx::prime(5);
  std::vector<std::vector<Fe>> m{
      {F->from_int(1), F->from_int(2), F->from_int(3)},
      {F->from_int(2), F->from_int(4), F->from_int(1)},
      {F->from_int(3), F->from_int(6), F->from_int(4)}};
  // rows two and three are scalar multiples of row one mod 5
  CHECK(rank_exact(m, F) == 1);
  m[2][2] = F->from_int(2);
  CHECK(rank_exact(m, F) == 2);
  const FieldCtx* Q = FieldCtx::rationals();
  std::vector<std::vector<Fe>> mq{
      {Q->from_mpq(mpq_class(1, 2)), Q->from_int(1)},
      {Q->from_int(1), Q->from_int(2)}};
  CHECK(rank_exact(mq, Q) == 1);
  CHECK(rank_exact({}, Q) == 0);
}

TEST_CASE("coefficient matrix dimensions") {
  const FieldCtx* Q = FieldCtx::rationals();
  Poly f = xv(Q, 1) * xv(Q, 3) + xv(Q, 2) * xv(Q, 4);
  CHECK(coeff_dim(f, plains(1, 2), plains(3, 4)) == 2);
  Poly g = (xv(Q, 1) + xv(Q, 2)) * (xv(Q, 3) + xv(Q, 4));
  CHECK(coeff_dim(g, plains(1, 2), plains(3, 4)) == 1);
  // only monomials that occur are indexed
  CoeffMatrix M = coeff_matrix(f, plains(1, 2), plains(3, 4));
  CHECK(M.rows.size() == 2);
  CHECK(M.cols.size() == 2);
  CHECK(!M.csv().empty());
}

TEST_CASE("split must separate the variables") {
  const FieldCtx* Q = FieldCtx::rationals();
  Poly f = xv(Q, 1) * xv(Q, 2);
  CHECK_THROWS_WITH_AS(coeff_matrix(f, plains(1, 2), plains(2, 3)),
                       doctest::Contains("BadSplit"), Error);
}

TEST_CASE("enumeration guard on wide splits") {
  const FieldCtx* F = FieldCtx::prime(3);
  Poly f = xv(F, 1) + Poly::constant(F, 1);
  std::vector<Fe> S{F->sample_point(0), F->sample_point(1)};
  CHECK_THROWS_WITH_AS(eval_dim(f, plains(1, 1), plains(2, 18), S),
                       doctest::Contains("EnumerationTooLarge"), Error);
}

TEST_CASE("evaluation dimension equals coefficient dimension") {
  const FieldCtx* F = FieldCtx::prime(11);
  std::vector<Fe> S;
  for (int i = 0; i < 2; ++i) S.push_back(F->sample_point(i));
  for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
    Poly f = random_multilinear(F, 6, 9, seed);
    std::uint64_t cd = coeff_dim(f, plains(1, 3), plains(4, 6));
    CHECK(eval_dim(f, plains(1, 3), plains(4, 6), S) == cd);
  }
}

TEST_CASE("word matrix of a matched set-multilinear sum") {
  const FieldCtx* F = FieldCtx::prime(5);
  Word w = Word::parse("1,-1");
  BlockLayout L = derive_blocks(w);
  Poly f = Poly::zero(F);
  for (std::uint64_t s = 0; s < 2; ++s)
    f.add_term(Monomial::var(L.block_var(1, s)) *
                   Monomial::var(L.block_var(2, s)),
               F->one());
  WordMatrix M = word_matrix(f, w);
  CHECK(M.rows.size() == 2);
  CHECK(M.cols.size() == 2);
  CHECK(rank_exact(M.ent, F) == 2);
  RelRank r = relrank(f, w);
  CHECK(r.rank == 2);
  CHECK(r.mp == 2);
  CHECK(r.mn == 2);
  CHECK(r.squared() == mpq_class(1));
}

TEST_CASE("relrank never exceeds one") {
  const FieldCtx* F = FieldCtx::prime(7);
  Word w = Word::parse("1,1,-2");
  BlockLayout L = derive_blocks(w);
  Rng rng(99);
  Poly f = Poly::zero(F);
  for (std::uint64_t a = 0; a < 2; ++a)
    for (std::uint64_t b = 0; b < 2; ++b)
      for (std::uint64_t c = 0; c < 4; ++c) {
        Fe coef = F->from_int(long(rng_below(rng, 7)));
        if (coef.is_zero()) continue;
        f.add_term(Monomial::var(L.block_var(1, a)) *
                       Monomial::var(L.block_var(2, b)) *
                       Monomial::var(L.block_var(3, c)),
                   coef);
      }
  RelRank r = relrank(f, w);
  CHECK(r.squared() <= mpq_class(1));
  CHECK(r.mp == 4);
  CHECK(r.mn == 4);
}

TEST_CASE("set-multilinear projection filters terms") {
  const FieldCtx* F = FieldCtx::prime(5);
  Word w = Word::parse("1,-1");
  BlockLayout L = derive_blocks(w);
  Poly f = Poly::constant(F, 3);
  f.add_term(Monomial::var(L.block_var(1, 0)), F->one());
  Monomial full =
      Monomial::var(L.block_var(1, 1)) * Monomial::var(L.block_var(2, 0));
  f.add_term(full, F->from_int(2));
  Poly p = sml_project(f, w);
  CHECK(p.term_count() == 1);
  CHECK(p.coeff(full) == F->from_int(2));
}

TEST_CASE("matrix of polynomials keeps leftover variables") {
  const FieldCtx* Q = FieldCtx::rationals();
  Poly f = xv(Q, 1) * xv(Q, 3) * xv(Q, 5) + xv(Q, 2) * xv(Q, 4);
  PolyMatrix M = coeff_matrix_z(f, plains(1, 2), plains(3, 4));
  bool saw_z = false;
  for (const auto& row : M.ent)
    for (const Poly& e : row)
      if (!e.is_zero() && e.degree() > 0) saw_z = true;
  CHECK(saw_z);

  RankReport sym = poly_entry_rank(M, true, 0, 1, 0);
  CHECK(sym.exact);
  RankReport sz = poly_entry_rank(M, false, 6, 2, 12345);
  CHECK(!sz.exact);
  CHECK(sz.rank == sym.rank);
  CHECK(sz.trials == 6);
}
