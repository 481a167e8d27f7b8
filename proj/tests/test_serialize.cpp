#include "doctest.h"

#include "ipsw/serialize.hpp"

using namespace ipsw;

TEST_CASE("polynomial text round trips") {
  const FieldCtx* F5 = FieldCtx::prime(5);
  const FieldCtx* Q = FieldCtx::rationals();
  const FieldCtx* E = FieldCtx::ext_build(5, 2);
  std::vector<const FieldCtx*> ctxs{F5, Q, E};
  std::vector<std::string> texts{
      "0",
      "1",
      "x_1",
      "2*x_1*x_2 + 3*x_2 + 3*x_1 + 4",
      "x_1^3 + 2*x_1^2 + x_1",
      "4*y_2*z_{1,3} + 2*w_{2,1}",
  };
  for (const FieldCtx* ctx : ctxs)
    for (const std::string& t : texts) {
      Poly p = parse_poly(ctx, t);
      CHECK(parse_poly(ctx, p.str()) == p);
    }
  CHECK(parse_poly(Q, "-1/2*x_1 + 1").str() == "-1/2*x_1 + 1");
  CHECK(parse_poly(F5, "x_1 - 2").str() == "x_1 + 3");
  Poly e = parse_poly(E, E->sample_point(7).str() + "*x_1");
  CHECK(parse_poly(E, e.str()) == e);
}

TEST_CASE("malformed polynomial text is rejected") {
  const FieldCtx* F = FieldCtx::prime(5);
  for (const std::string& bad : {"", "x_1 +", "x_1 * * x_2", "3x_1", "x_1^"}) {
    CHECK_THROWS_WITH_AS(parse_poly(F, bad), doctest::Contains("BadPolyText"),
                         Error);
  }
  CHECK_THROWS_WITH_AS(parse_poly(F, "q_3"), doctest::Contains("BadVarName"),
                       Error);
}

TEST_CASE("instance JSON round trip") {
  const FieldCtx* F = FieldCtx::prime(7);
  Word w = Word::parse("1,-1");
  KsInstance K = ks_modp(w, 7);
  Json j = instance_json(K.inst);
  CHECK(j["field"] == "7");
  CHECK(j["axioms"].size() == 1);
  Instance back = instance_load(j);
  CHECK(back.ctx == K.inst.ctx);
  CHECK(back.axioms[0] == K.inst.axioms[0]);
  CHECK(back.meta.generator == "ks_modp");
  CHECK(back.meta.word == "1,-1");
  CHECK(back.meta.unsat_certified == K.inst.meta.unsat_certified);
  // canonical dump is stable
  CHECK(pretty(j) == pretty(instance_json(instance_load(j))));
}

TEST_CASE("certificate JSON round trip") {
  const FieldCtx* F = FieldCtx::prime(5);
  Instance inst = subset_sum(F, 1, F->from_int(2));
  IpsCert cert = fermat_refute(inst, 5);
  Json j = cert_json(cert, F);
  CHECK(j["form"] == "linear");
  IpsCert back = cert_load(j);
  CHECK(back.form == IpsCert::Form::LinearComb);
  REQUIRE(back.lin.g.size() == cert.lin.g.size());
  CHECK(back.lin.g[0] == cert.lin.g[0]);
  CHECK(back.lin.h.size() == cert.lin.h.size());
  CHECK(back.instance_hash == cert.instance_hash);
  CHECK(verify_lin(back, inst).pass);
}

TEST_CASE("circuit JSON round trip") {
  const FieldCtx* F = FieldCtx::prime(5);
  Word w = Word::parse("1,-1");
  KsInstance K = ks_modp(w, 5);
  Json j = circuit_json(K.form.circuit);
  AlgCircuit back = circuit_load(j);
  CHECK(back.expand() == K.form.circuit.expand());
  Json j2 = circuit_json(back);
  CHECK(pretty(j) == pretty(j2));
}

TEST_CASE("branching program JSON round trip") {
  const FieldCtx* F = FieldCtx::prime(7);
  Poly f = parse_poly(F, "x_1*x_2 + 3*x_2 + 1");
  std::vector<VarId> ord{VarId::plain(1), VarId::plain(2)};
  RoAbp A = nisan_build(f, ord);
  Json j = roabp_json(A);
  RoAbp back = roabp_load(j);
  CHECK(back.order == A.order);
  CHECK(back.nodes == A.nodes);
  CHECK(extract_poly(back) == f);
}

TEST_CASE("bad schemas are rejected") {
  const FieldCtx* F = FieldCtx::prime(5);
  Json j = instance_json(subset_sum(F, 1, F->from_int(2)));
  j["axioms"] = 7;
  CHECK_THROWS(instance_load(j));
  Json c;
  c["field"] = "5";
  c["gates"] = Json::array({Json{{"op", "mul"}, {"args", {5, 0}}}});
  c["out"] = 0;
  c["scalars"] = Json::array();
  CHECK_THROWS_WITH_AS(circuit_load(c), doctest::Contains("BadSchema"), Error);
}

TEST_CASE("report serializers expose every field") {
  VerifyReport v;
  v.mode = "exact";
  v.pass = true;
  v.verdict = "verified";
  Json jv = verify_report_json(v);
  CHECK(jv["mode"] == "exact");
  CHECK(jv["pass"] == true);
  CHECK(jv["verdict"] == "verified");

  OracleReport o;
  o.lemma = "lucas-grid";
  o.pass = true;
  o.verdict = "pass";
  o.computed = "1 agreements";
  Json jo = oracle_report_json(o);
  CHECK(jo["lemma"] == "lucas-grid");
  CHECK(jo["computed"] == "1 agreements");

  RankReport r;
  r.rank = 4;
  r.exact = false;
  r.trials = 6;
  Json jr = rank_report_json(r);
  CHECK(jr["rank"] == 4);
  CHECK(jr["exact"] == false);
  CHECK(jr["trials"] == 6);
}

TEST_CASE("pretty output is canonical") {
  Json a;
  a["b"] = 1;
  a["a"] = 2;
  std::string s = pretty(a);
  CHECK(s.back() == '\n');
  CHECK(s.find("\"a\"") < s.find("\"b\""));
  CHECK(pretty(a) == pretty(Json::parse(s)));
}
