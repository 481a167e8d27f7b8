#include "doctest.h"

#include "ipsw/booloracle.hpp"
#include "ipsw/serialize.hpp"

using namespace ipsw;

TEST_CASE("inverse degree check for the linear instances") {
  DegCheckParams P;
  P.ctx = FieldCtx::rationals();
  P.n = 4;
  P.beta = "5";
  OracleReport r = deg_check("subset-sum", P);
  CHECK(r.pass);
  CHECK(r.verdict == "pass");
  P.ctx = FieldCtx::prime(7);
  P.beta = "6";
  CHECK(deg_check("subset-sum", P).pass);
}

TEST_CASE("degree check of the block-indicator forms") {
  DegCheckParams P;
  P.ctx = FieldCtx::prime(5);
  P.n = 4;
  P.beta = "3";
  P.parts = {{1, 2}, {3, 4}};
  CHECK(deg_check("partition", P).pass);
  CHECK(deg_check("general-psi", P).pass);
  P.psi = "xor";
  CHECK(deg_check("general-psi", P).pass);
}

TEST_CASE("quadratic symmetric form over the rationals") {
  DegCheckParams P;
  P.ctx = FieldCtx::rationals();
  P.n = 2;
  P.beta = "3";
  OracleReport r = deg_check("e2-char0", P);
  CHECK(r.pass);
  // the interpolated inverse tops out at full degree, witnessed by -1/6
  CHECK(r.note == "leading coefficient -1/6");
  P.n = 4;
  P.beta = "2";
  OracleReport r4 = deg_check("e2-char0", P);
  CHECK(r4.pass);
  CHECK(r4.note == "leading coefficient -33/4");
  P.beta = "1";
  P.n = 2;
  CHECK_THROWS_WITH_AS(deg_check("e2-char0", P),
                       doctest::Contains("ConstraintViolated"), Error);
}

TEST_CASE("degree check rejects a beta inside the attainable set") {
  DegCheckParams P;
  P.ctx = FieldCtx::rationals();
  P.n = 3;
  P.beta = "2";
  CHECK_THROWS_WITH_AS(deg_check("subset-sum", P),
                       doctest::Contains("ConstraintViolated"), Error);
}

TEST_CASE("alternating-sum identity for the leading coefficient") {
  CHECK(leadcoef_identities(1, "2").pass);
  OracleReport r = leadcoef_identities(1, "2");
  CHECK(r.computed.find("-1/2") != std::string::npos);
  CHECK(leadcoef_identities(3, "5").computed.find("-1/20") !=
        std::string::npos);
  CHECK(leadcoef_identities(0, "1").computed.find("-1") != std::string::npos);
  OracleReport frac = leadcoef_identities(4, "7/2");
  CHECK(frac.pass);
  CHECK(frac.computed.find("256/35") != std::string::npos);
  CHECK_THROWS_WITH_AS(leadcoef_identities(3, "2"),
                       doctest::Contains("BetaPole"), Error);
}

TEST_CASE("binomial residues from base-p digits") {
  CHECK(lucas(8, 3, 5).residue == 1);
  CHECK(lucas(7, 3, 5).residue == 0);
  CHECK(lucas(8, 3, 5).report.pass);
  CHECK(lucas(10, 5, 3).report.pass);
  CHECK(lucas_digits(8, 3, 5) == lucas(8, 3, 5).residue);
  CHECK_THROWS_WITH_AS(lucas(8, 3, 6), doctest::Contains("NotPrime"), Error);
  OracleReport grid = lucas_grid(120, {2, 3, 5, 7, 11});
  CHECK(grid.pass);
  CHECK(grid.computed.find("73205 agreements") != std::string::npos);
}

TEST_CASE("image of the elementary symmetric polynomial on the cube") {
  OracleReport r = sym_image(2, 5, 3);
  CHECK(r.pass);
  CHECK(r.computed == "|image| = 2");
  CHECK(sym_image(3, 6, 5).pass);
  CHECK(sym_image(4, 8, 7).pass);
  CHECK_THROWS_WITH_AS(sym_image(2, 5, 9), doctest::Contains("NotPrime"),
                       Error);
}

TEST_CASE("multilinear product identity for symmetric polynomials") {
  const FieldCtx* Q = FieldCtx::rationals();
  OracleReport r = el_ed_identity(1, 1, 2, Q);
  CHECK(r.pass);
  CHECK(r.computed.find("2*x_1*x_2 + x_2 + x_1") != std::string::npos);
  CHECK(el_ed_identity(2, 1, 4, Q).pass);
  CHECK(el_ed_identity(2, 2, 5, FieldCtx::prime(7)).pass);
}

TEST_CASE("rank oracle on the smallest knapsack word") {
  OracleReport r = rank_lemma_oracle(Word::parse("1,-1"), 5);
  CHECK(r.pass);
  CHECK(r.verdict == "pass");
  CHECK(r.computed.find("relrk^2") != std::string::npos);
  OracleReport r2 = rank_lemma_oracle(Word::parse("1,-2"), 5);
  CHECK(r2.pass);
}

TEST_CASE("rank oracle refuses oversized words") {
  OracleCaps caps;
  caps.rank_vars = 4;
  CHECK_THROWS_WITH_AS(rank_lemma_oracle(Word::parse("1,1,-2"), 5, 1, caps),
                       doctest::Contains("TooLarge"), Error);
  CHECK_THROWS_WITH_AS(rank_lemma_oracle(Word::parse("1,-1,1"), 5),
                       doctest::Contains("NotBalanced"), Error);
}

TEST_CASE("leading-monomial census of the lifted product") {
  const FieldCtx* F = FieldCtx::prime(5);
  OracleReport r = lm_census(3, F);
  CHECK(r.pass);
  OracleReport a = anyorder_dim_oracle(2, F);
  CHECK(a.pass);
}

TEST_CASE("the full sweep passes") {
  std::vector<OracleReport> reports = oracle_sweep(1, 12);
  CHECK(reports.size() >= 20);
  for (const OracleReport& r : reports) {
    INFO(r.lemma, " ", r.params);
    CHECK(r.pass);
    CHECK(r.verdict == "pass");
  }
}
