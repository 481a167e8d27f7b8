#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "ipsw/cnfbridge.hpp"
#include "ipsw/serialize.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& args, const std::string& redirect = "") {
  std::string cmd = std::string(IPSW_BIN_PATH) + " " + args;
  if (!redirect.empty()) cmd += " " + redirect;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof(buf), p)) > 0) out.append(buf, got);
  int status = pclose(p);
  RunResult r;
  r.out = out;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path temp_dir() {
  fs::path d = fs::temp_directory_path() /
               ("ipsw_cli_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& bytes) {
  std::ofstream f(p, std::ios::binary);
  f << bytes;
}

}  // namespace

using namespace ipsw;

TEST_CASE("generation report carries the envelope and is deterministic") {
  fs::path d = temp_dir();
  fs::path inst = d / "ks.json";
  RunResult r = run("gen ks-modp --word 1,-1 --p 5 -o " + inst.string());
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["tool"] == "ipsw");
  CHECK(j["version"] == "1.0.0");
  CHECK(j["command"] == "gen ks-modp");
  CHECK(j["field"] == "5");
  CHECK(j["meta"]["generator"] == "ks_modp");
  CHECK(j["meta"]["unsat_certified"] == true);
  CHECK(j["axioms"] == 1);
  Json ij = Json::parse(slurp(inst));
  CHECK(ij["axioms"][0] ==
        "x^(1)_0*x^(1)_1*y^(2)_0*y^(2)_1 + 4*x^(1)_1*y^(2)_1 + "
        "4*x^(1)_0*y^(2)_0 + 4");
  RunResult again = run("gen ks-modp --word 1,-1 --p 5 -o " + inst.string());
  CHECK(again.out == r.out);
}

TEST_CASE("instances can be written to disk and verified end to end") {
  fs::path d = temp_dir();
  fs::path inst = d / "inst.json";
  RunResult g = run("gen subset-sum --field 5 --n 1 --beta 2 -o " +
                    inst.string());
  REQUIRE(g.code == 0);
  Json ij = Json::parse(slurp(inst));
  CHECK(ij["axioms"][0] == "x_1 + 3");

  Json cj;
  cj["field"] = "5";
  cj["form"] = "linear";
  cj["g"] = Json::array({"2*x_1 + 2"});
  cj["h"] = Json{{"x_1", "3"}};
  cj["flags"] = Json{{"linear_in_y", true},
                     {"linear_in_yz", true},
                     {"multilinear_in_xy", true}};
  cj["instance_hash"] = 0;
  fs::path cert = d / "cert.json";
  spit(cert, pretty(cj));

  RunResult v = run("verify --instance " + inst.string() + " --cert " +
                    cert.string());
  CHECK(v.code == 0);
  Json vj = Json::parse(v.out);
  CHECK(vj["report"]["pass"] == true);
  CHECK(vj["report"]["verdict"] == "verified");

  RunResult vs = run("verify --instance " + inst.string() + " --cert " +
                     cert.string() + " --mode sz --trials 8 --seed 99");
  CHECK(vs.code == 0);
  Json vsj = Json::parse(vs.out);
  CHECK(vsj["report"]["pass"] == true);
  CHECK(vsj["report"]["mode"] == "randomized");

  cj["g"] = Json::array({"2*x_1 + 3"});
  fs::path bad = d / "bad_cert.json";
  spit(bad, pretty(cj));
  RunResult vb = run("verify --instance " + inst.string() + " --cert " +
                     bad.string());
  CHECK(vb.code == 1);
  Json vbj = Json::parse(vb.out);
  CHECK(vbj["report"]["pass"] == false);
  CHECK(vbj["report"]["witness"].get<std::string>().find("x_1") !=
        std::string::npos);
}

TEST_CASE("configuration and schema failures exit with code 2") {
  fs::path d = temp_dir();
  fs::path junk = d / "junk.json";
  spit(junk, "not json at all");
  fs::path err = d / "err.txt";
  RunResult r = run("verify --instance " + junk.string() + " --cert " +
                        junk.string(),
                    "2>" + err.string());
  CHECK(r.code == 2);
  std::string e = slurp(err);
  CHECK(e.find("\"error\"") != std::string::npos);

  CHECK(run("bogus-subcommand", "2>/dev/null").code == 2);
  CHECK(run("gen", "2>/dev/null").code == 2);
  CHECK(run("gen ks-modp --word 1,-1", "2>/dev/null").code == 2);
  CHECK(run("gen ks-modp --word 1,0 --p 5", "2>/dev/null").code == 2);
}

TEST_CASE("reports do not depend on the worker thread count") {
  std::string args = "oracle run --lemma rank-lemma --word 1,-2 --p 5";
  RunResult one = run(args + " --threads 1");
  RunResult two = run(args + " --threads 2");
  REQUIRE(one.code == 0);
  CHECK(one.out == two.out);
  Json j = Json::parse(one.out);
  CHECK(j["report"]["pass"] == true);
}

TEST_CASE("the oracle sweep passes from the command line") {
  RunResult r = run("oracle sweep --cap-n 12");
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  REQUIRE(j["report"].is_array());
  CHECK(j["report"].size() >= 20);
  for (const auto& item : j["report"]) CHECK(item["pass"] == true);
}

TEST_CASE("parameter schedules") {
  RunResult r = run("params --n 1099511627776 --delta 2");
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["report"]["d"] == 10);
  CHECK(j["report"]["lambda"] == 3);
  CHECK(j["report"]["g_delta"] == 2);

  RunResult w = run("params --d 2 --a 1 --k 2 --seed 7");
  REQUIRE(w.code == 0);
  Json wj = Json::parse(w.out);
  CHECK(wj["word"]["entries"] == "1,-2");
}

TEST_CASE("translation matches the golden DIMACS output") {
  const FieldCtx* F = FieldCtx::prime(3);
  AlgCircuit C(F);
  std::size_t x = C.input(VarId::plain(1));
  std::size_t sq = C.mul({x, x});
  std::size_t one = C.scalar(F->one());
  C.out = C.add({{sq, F->one()}, {one, F->one()}});

  fs::path d = temp_dir();
  fs::path cj = d / "x2p1.json";
  spit(cj, pretty(circuit_json(C)));
  fs::path cnf = d / "x2p1.cnf";
  RunResult r = run("translate --circuit " + cj.string() +
                    " --q 3 --emit dimacs --check -o " + cnf.string());
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["report"]["vars"] == 9);
  CHECK(j["report"]["clauses"] == 39);
  CHECK(j["equisat"]["pass"] == true);

  fs::path golden = fs::path(IPSW_GOLDEN_DIR) / "x2p1.cnf";
  fs::path golden_map = fs::path(IPSW_GOLDEN_DIR) / "x2p1.cnf.json";
  CHECK(slurp(cnf) == slurp(golden));
  CHECK(slurp(cnf.string() + ".json") == slurp(golden_map));

  RunResult semi = run("translate --circuit " + cj.string() + " --emit semi");
  CHECK(semi.code == 0);
  RunResult ec = run("translate --circuit " + cj.string() + " --emit ecnf");
  CHECK(ec.code == 0);
}

TEST_CASE("text format flattens the report") {
  RunResult r = run("gen ks-modp --word 1,-1 --p 5 --format text");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("tool = ipsw") != std::string::npos);
  CHECK(r.out.find("meta.generator = ks_modp") != std::string::npos);
  CHECK(r.out.find('{') == std::string::npos);
}
