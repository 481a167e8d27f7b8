#include "doctest.h"

#include "ipsw/cnfbridge.hpp"
#include "ipsw/serialize.hpp"

using namespace ipsw;

namespace {
// x_1^2 + 1 over F_3, unsatisfiable since -1 is not a square mod 3
AlgCircuit x2p1(const FieldCtx* F) {
  AlgCircuit C(F);
  std::size_t x = C.input(VarId::plain(1));
  std::size_t sq = C.mul({x, x});
  std::size_t one = C.scalar(F->one());
  C.out = C.add({{sq, F->one()}, {one, F->one()}});
  return C;
}

// x_1^2 - 1 over F_3 has roots 1 and 2
AlgCircuit x2m1(const FieldCtx* F) {
  AlgCircuit C(F);
  std::size_t x = C.input(VarId::plain(1));
  std::size_t sq = C.mul({x, x});
  std::size_t one = C.scalar(F->one());
  C.out = C.add({{sq, F->one()}, {one, F->neg(F->one())}});
  return C;
}
}  // namespace

TEST_CASE("unary bit indicators over a small prime field") {
  const FieldCtx* F = FieldCtx::prime(3);
  VarId x = VarId::plain(1);
  CHECK(ubit_poly(F, 0, x).str() == "2*x_1^2 + 1");
  CHECK(ubit_poly(F, 1, x).str() == "2*x_1^2 + 2*x_1");
  CHECK(ubit_poly(F, 2, x).str() == "2*x_1^2 + x_1");
  Poly sum = Poly::zero(F);
  for (unsigned j = 0; j < 3; ++j) sum = sum + ubit_poly(F, j, x);
  CHECK(sum == Poly::constant(F, 1));
  // each indicator is 1 at its point and 0 elsewhere
  for (unsigned j = 0; j < 3; ++j)
    for (unsigned a = 0; a < 3; ++a) {
      Fe v = ubit_poly(F, j, x).eval({{x, F->from_int(long(a))}});
      CHECK(v == (a == j ? F->one() : F->zero()));
    }
}

TEST_CASE("field identity suite across small primes") {
  for (unsigned q : {3u, 5u, 7u}) {
    OracleReport r = identity_suite(q);
    INFO("q = ", q);
    CHECK(r.pass);
    CHECK(r.verdict == "pass");
  }
  CHECK_THROWS_WITH_AS(identity_suite(4), doctest::Contains("NotPrime"),
                       Error);
}

TEST_CASE("straight-line form of a weighted circuit") {
  const FieldCtx* F = FieldCtx::prime(3);
  AlgCircuit C = x2p1(F);
  Slp slp = slp_of(C);
  CHECK(!slp.eqs.empty());
  CHECK(slp.input_of.size() == 1);
  std::map<VarId, Fe> asg{{VarId::plain(1), F->from_int(2)}};
  auto vals = slp_eval(slp, F, asg);
  CHECK(vals.at(slp.out) == C.eval(asg));
}

TEST_CASE("plain translation of the unsatisfiable square") {
  const FieldCtx* F = FieldCtx::prime(3);
  CnfFormula cnf = plain_cnf(x2p1(F));
  CHECK(cnf.q == 3);
  CHECK(cnf.names.size() == 9);
  CHECK(cnf.clauses.size() == 39);
  CHECK(!cnf_sat(cnf));
  OracleReport r = equisat_check(x2p1(F), "enumerate");
  CHECK(r.pass);
}

TEST_CASE("plain translation of a satisfiable circuit") {
  const FieldCtx* F = FieldCtx::prime(3);
  CnfFormula cnf = plain_cnf(x2m1(F));
  std::vector<int> model;
  CHECK(cnf_sat(cnf, &model));
  CHECK(!model.empty());
  OracleReport r = equisat_check(x2m1(F), "enumerate");
  CHECK(r.pass);
}

TEST_CASE("bit names map back to gates") {
  const FieldCtx* F = FieldCtx::prime(3);
  CnfFormula cnf = plain_cnf(x2p1(F));
  for (const std::string& name : cnf.names) {
    CHECK(name.find(':') != std::string::npos);
  }
  std::string side = cnf.sidecar_json();
  Json j = Json::parse(side);
  CHECK(j["q"] == 3);
  CHECK(j["vars"].size() == 9);
  CHECK(j["vars"]["1"].get<std::string>().find(':') != std::string::npos);
}

TEST_CASE("DIMACS emission and parsing round trip") {
  const FieldCtx* F = FieldCtx::prime(3);
  CnfFormula cnf = plain_cnf(x2p1(F));
  std::string text = dimacs_emit(cnf);
  CHECK(text.find("p cnf 9 39") != std::string::npos);
  CnfFormula back = dimacs_parse(text);
  CHECK(back.clauses == cnf.clauses);
  CHECK(cnf_sat(back) == cnf_sat(cnf));
}

TEST_CASE("extension-variable form carries recombination axioms") {
  const FieldCtx* F = FieldCtx::prime(3);
  Ecnf e = ecnf(x2p1(F));
  CHECK(e.cnf.clauses.size() >= 39);
  CHECK(!e.axioms.empty());
  for (const ExtAxiom& ax : e.axioms) {
    CHECK(ax.bit_vars.size() == 3);
    CHECK(ax.text.find("=") != std::string::npos);
  }
}

TEST_CASE("semi-algebraic form substitutes indicator polynomials") {
  const FieldCtx* F = FieldCtx::prime(3);
  SemiCnf s = semi_cnf(x2p1(F));
  CHECK(s.q == 3);
  CHECK(!s.equations.empty());
  REQUIRE(!s.subst.empty());
  // the output node's zero-indicator appears among the substitutions
  bool saw_g0 = false;
  for (const auto& [name, poly] : s.subst) {
    if (name.rfind("g", 0) == 0 && name.find(":0") != std::string::npos) {
      saw_g0 = true;
      CHECK(!poly.is_zero());
    }
  }
  CHECK(saw_g0);
}

TEST_CASE("translation requires a prime base field") {
  const FieldCtx* Q = FieldCtx::rationals();
  AlgCircuit C(Q);
  std::size_t x = C.input(VarId::plain(1));
  C.out = x;
  CHECK_THROWS_WITH_AS(plain_cnf(C), doctest::Contains("IndexOutOfField"),
                       Error);
  const FieldCtx* E = FieldCtx::ext_build(5, 2);
  AlgCircuit CE(E);
  std::size_t y = CE.input(VarId::plain(1));
  CE.out = y;
  CHECK_THROWS_WITH_AS(plain_cnf(CE), doctest::Contains("IndexOutOfField"),
                       Error);
}

TEST_CASE("solver verdict ingestion") {
  OracleReport ok = equisat_ingest("s UNSATISFIABLE", false);
  CHECK(ok.pass);
  OracleReport ok2 = equisat_ingest("SAT", true);
  CHECK(ok2.pass);
  OracleReport bad = equisat_ingest("SAT", false);
  CHECK(!bad.pass);
}
