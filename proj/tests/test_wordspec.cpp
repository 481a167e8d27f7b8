#include "doctest.h"

#include <set>

#include "ipsw/util.hpp"
#include "ipsw/wordspec.hpp"

using namespace ipsw;

TEST_CASE("word parsing and counting") {
  Word w = Word::parse("1,-2");
  CHECK(w.w == std::vector<int>{1, -2});
  CHECK(w.str() == "1,-2");
  CHECK(w.bound() == 2);
  CHECK(w.total_vars() == 6);
  CHECK(Word::parse("1,1,-2").total_vars() == 8);
  CHECK_THROWS_WITH_AS(Word::parse("1,0"), doctest::Contains("ZeroEntry"),
                       Error);
}

TEST_CASE("block layout of a mixed word") {
  BlockLayout L = derive_blocks(Word::parse("2,-3,2,-1"));
  CHECK(!L.flipped);
  CHECK(L.pos_blocks == std::vector<int>{1, 3});
  CHECK(L.neg_blocks == std::vector<int>{2, 4});
  CHECK(L.A.at(1).lo == 1);
  CHECK(L.A.at(1).hi == 2);
  CHECK(L.A.at(3).lo == 3);
  CHECK(L.A.at(3).hi == 4);
  CHECK(L.B.at(2).lo == 1);
  CHECK(L.B.at(2).hi == 3);
  CHECK(L.B.at(4).lo == 4);
  CHECK(L.B.at(4).hi == 4);
  CHECK(L.wP == 4);
  CHECK(L.wN == 4);

  OverlapGraph G = overlap_graph(L);
  std::set<std::pair<int, int>> edges(G.edges.begin(), G.edges.end());
  CHECK(edges == std::set<std::pair<int, int>>{{1, 2}, {3, 2}, {3, 4}});
  CHECK(G.nbr_of_pos.at(3) == std::vector<int>{2, 4});
  CHECK(G.max_neg_degree() == 2);
}

TEST_CASE("flip rule keeps the positive role light") {
  BlockLayout L = derive_blocks(Word::parse("3,-1"));
  CHECK(L.flipped);
  CHECK(L.wP <= L.wN);
  CHECK(L.wP == 1);
  CHECK(L.wN == 3);
  CHECK(L.pos_blocks == std::vector<int>{2});
  CHECK(L.neg_blocks == std::vector<int>{1});
}

TEST_CASE("balance needs both-sided neighbourhoods") {
  CHECK(is_balanced(Word::parse("1,-1")));
  CHECK(is_balanced(Word::parse("1,1,-2")));
  CHECK(is_balanced(Word::parse("2,-3,2,-1")));
  // post-flip word (1,-1,-1): the trailing negative block sits outside the
  // single positive interval
  CHECK(!is_balanced(Word::parse("-1,1,-1")));
  CHECK(!is_balanced(Word::parse("1,-1,1")));
}

TEST_CASE("block variables enumerate sigma strings") {
  BlockLayout L = derive_blocks(Word::parse("2,-3"));
  std::vector<VarId> vs = L.block_vars(1);
  CHECK(vs.size() == 4);
  CHECK(vs[0] == VarId::pos_block(1, 0, 2));
  CHECK(vs[3] == VarId::pos_block(1, 3, 2));
  CHECK(L.block_var(2, 1) == VarId::neg_block(2, 1, 3));
  CHECK(L.block_size(1) == 2);
  CHECK(L.block_vars(2).size() == 8);
}

TEST_CASE("scattered partition splits shared neighbourhoods") {
  ScatteredPartition part = scattered_partition(Word::parse("1,1,-2,1,1,-2"));
  CHECK(part.r() == 2);
  CHECK(part.parts == std::vector<std::vector<int>>{{1, 4}, {2, 5}});
  CHECK(scattered_partition(Word::parse("1,-1")).r() == 1);
  CHECK_THROWS_WITH_AS(scattered_partition(Word::parse("1,-1,1")),
                       doctest::Contains("NotBalanced"), Error);
}

TEST_CASE("sigma maps round trip") {
  BlockLayout L = derive_blocks(Word::parse("2,-3,2,-1"));
  // every set-multilinear monomial on the positive side
  for (std::uint64_t s1 = 0; s1 < 4; ++s1)
    for (std::uint64_t s3 = 0; s3 < 4; ++s3) {
      Monomial m = Monomial::var(L.block_var(1, s1)) *
                   Monomial::var(L.block_var(3, s3));
      BitMap bm = sigma_of_monomial(L, m);
      CHECK(monomial_of_sigma(L, Side::Pos, bm) == m);
    }
  for (std::uint64_t s2 = 0; s2 < 8; ++s2)
    for (std::uint64_t s4 = 0; s4 < 2; ++s4) {
      Monomial m = Monomial::var(L.block_var(2, s2)) *
                   Monomial::var(L.block_var(4, s4));
      BitMap bm = sigma_of_monomial(L, m);
      CHECK(monomial_of_sigma(L, Side::Neg, bm) == m);
    }
  CHECK_THROWS_WITH_AS(
      sigma_of_monomial(L, Monomial::var(VarId::plain(1))),
      doctest::Contains("NotSetMultilinear"), Error);
}

TEST_CASE("sigma restriction keeps chosen intervals") {
  BlockLayout L = derive_blocks(Word::parse("1,1,-2"));
  Monomial m = Monomial::var(L.block_var(3, 2));
  BitMap bm = sigma_of_monomial(L, m);
  BitMap r = restrict_sigma(L, bm, {1});
  CHECK(r.size() == 1);
  CHECK(r.count(1) == 1);
}

TEST_CASE("word generator hits the recorded shapes") {
  CHECK(word_gen(2, 1, 2, 7).str() == "1,-2");
  Word w6 = word_gen(6, 1, 2, 3);
  CHECK(w6.length() == 6);
  CHECK(is_balanced(w6));
  Word w5 = word_gen(5, 2, 3, 11);
  CHECK(w5.length() == 5);
  CHECK(is_balanced(w5));
  for (int e : w5.w) CHECK((e == 2 || e == -3));
  CHECK_THROWS_WITH_AS(word_gen(3, 1, 1, 1), doctest::Contains("Infeasible"),
                       Error);
}

TEST_CASE("schedule parameters follow the Fibonacci ladder") {
  Params P = params(std::uint64_t(1) << 40, 2);
  CHECK(P.d == 10);
  CHECK(P.lambda == 3);
  CHECK(P.g_delta == 2);
  CHECK(P.k_min <= P.k_max);
  Params Q = params(1u << 20, 1);
  CHECK(Q.lambda >= 1);
}
