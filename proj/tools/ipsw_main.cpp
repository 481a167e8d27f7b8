#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ipsw/cnfbridge.hpp"
#include "ipsw/cube.hpp"
#include "ipsw/dims.hpp"
#include "ipsw/instances.hpp"
#include "ipsw/ipscert.hpp"
#include "ipsw/roabp.hpp"
#include "ipsw/serialize.hpp"
#include "ipsw/util.hpp"
#include "ipsw/wordspec.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

using ipsw::Json;

struct CommonOpts {
  std::string field;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  unsigned cap_n = 16;
  std::string mode = "exact";
  unsigned trials = 16;
  std::string out;
  std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--field", c.field, "field spec: p, p^k, or Q");
  cmd->add_option("--seed", c.seed, "RNG seed");
  cmd->add_option("--threads", c.threads, "worker threads");
  cmd->add_option("--cap-n", c.cap_n, "size cap for sweeps and enumeration");
  cmd->add_option("--mode", c.mode, "verification mode: exact or sz")
      ->check(CLI::IsMember({"exact", "sz"}));
  cmd->add_option("--trials", c.trials, "randomized trial count");
  cmd->add_option("-o,--out", c.out, "output file path");
  cmd->add_option("--format", c.format, "report format")
      ->check(CLI::IsMember({"json", "text"}));
}

Json envelope(const std::string& command, const CommonOpts& c,
              const std::string& field_spec) {
  Json j;
  j["tool"] = "ipsw";
  j["version"] = kVersion;
  j["command"] = command;
  j["field"] = field_spec;
  j["seed"] = c.seed;
  j["caps"] = Json{{"cap_n", c.cap_n}, {"trials", c.trials}};
  return j;
}

void flatten(const Json& j, const std::string& prefix,
             std::vector<std::string>& lines) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items())
      flatten(v, prefix.empty() ? k : prefix + "." + k, lines);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i)
      flatten(j[i], prefix + "[" + std::to_string(i) + "]", lines);
  } else {
    lines.push_back(prefix + " = " + (j.is_string()
                                          ? j.get<std::string>()
                                          : j.dump()));
  }
}

void emit(const Json& report, const CommonOpts& c) {
  if (c.format == "text") {
    std::vector<std::string> lines;
    flatten(report, "", lines);
    for (const std::string& l : lines) std::cout << l << "\n";
  } else {
    std::cout << ipsw::pretty(report);
  }
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream f(path, std::ios::binary);
  if (!f) ipsw::fail("BadPath", "cannot open " + path + " for writing");
  f << bytes;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) ipsw::fail("BadPath", "cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Json load_json(const std::string& path) {
  return Json::parse(read_file(path));
}

std::vector<ipsw::VarId> parse_var_list(const std::string& csv) {
  std::vector<ipsw::VarId> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(ipsw::VarId::parse(item));
  return out;
}

std::vector<std::vector<unsigned>> parse_parts(const std::string& text) {
  std::vector<std::vector<unsigned>> parts;
  std::stringstream blocks(text);
  std::string blk;
  while (std::getline(blocks, blk, ';')) {
    std::vector<unsigned> ix;
    std::stringstream ss(blk);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) ix.push_back(unsigned(std::stoul(item)));
    if (!ix.empty()) parts.push_back(ix);
  }
  return parts;
}

int run_gen(const std::string& kind, const CommonOpts& c,
            const std::string& word_csv, unsigned p, unsigned n,
            const std::string& beta, const std::string& parts_text) {
  ipsw::Instance inst;
  if (kind == "ks-modp" || kind == "ks-sym-e2") {
    if (word_csv.empty()) ipsw::fail("BadConfig", kind + " requires --word");
    if (p == 0) ipsw::fail("BadConfig", kind + " requires --p");
    ipsw::Word w = ipsw::Word::parse(word_csv);
    std::optional<ipsw::Fe> b;
    if (!beta.empty()) b = ipsw::FieldCtx::prime(p)->parse(beta);
    ipsw::KsInstance ks = kind == "ks-modp"
                              ? ipsw::ks_modp(w, p, std::nullopt, b, c.threads)
                              : ipsw::ks_sym_e2(w, p, b, c.threads);
    inst = ks.inst;
  } else {
    const ipsw::FieldCtx* ctx =
        ipsw::FieldCtx::parse_spec(c.field.empty() ? "Q" : c.field);
    if (kind == "roabp-hard") {
      inst = ipsw::roabp_hard_fixed(ctx, n, c.threads);
    } else if (kind == "anyorder") {
      inst = ipsw::roabp_hard_anyorder(ctx, n, c.threads);
    } else if (kind == "multiples") {
      inst = ipsw::multiples_system(ctx, n, c.threads);
    } else if (kind == "subset-sum") {
      if (beta.empty()) ipsw::fail("BadConfig", "subset-sum requires --beta");
      inst = ipsw::subset_sum(ctx, n, ctx->parse(beta));
    } else if (kind == "partition") {
      if (beta.empty() || parts_text.empty())
        ipsw::fail("BadConfig", "partition requires --beta and --parts");
      std::vector<std::vector<ipsw::VarId>> parts;
      for (const auto& blk : parse_parts(parts_text)) {
        std::vector<ipsw::VarId> vs;
        for (unsigned ix : blk) vs.push_back(ipsw::VarId::plain(ix));
        parts.push_back(vs);
      }
      inst = ipsw::partition_indicator(ctx, parts, ctx->parse(beta));
    } else {
      ipsw::fail("BadConfig", "unknown generator " + kind);
    }
  }
  inst.meta.seed = c.seed;

  Json ij = ipsw::instance_json(inst);
  if (!c.out.empty()) write_file(c.out, ipsw::pretty(ij));

  bool pass = inst.meta.unsat_certified || inst.meta.beta_unverified;
  Json rep = envelope("gen " + kind, c, inst.ctx->spec());
  rep["instance_hash"] = ipsw::hex64(ipsw::instance_hash(inst));
  rep["axioms"] = inst.axioms.size();
  rep["meta"] = ij["meta"];
  rep["output"] = c.out;
  rep["pass"] = pass;
  rep["verdict"] = pass ? "pass" : "fail";
  emit(rep, c);
  return pass ? 0 : 1;
}

int run_verify(const CommonOpts& c, const std::string& cert_path,
               const std::string& inst_path, unsigned ext_k,
               std::size_t term_cap) {
  ipsw::Instance inst = ipsw::instance_load(load_json(inst_path));
  Json cj = load_json(cert_path);
  ipsw::IpsCert cert = ipsw::cert_load(cj);

  std::uint64_t ih = ipsw::instance_hash(inst);
  std::string note;
  if (cert.instance_hash != 0 && cert.instance_hash != ih)
    note = "certificate was issued for a different instance hash";

  bool circuit_form = cert.form == ipsw::IpsCert::Form::PlaceholderCircuit;
  ipsw::VerifyReport r;
  if (c.mode == "exact") {
    try {
      r = circuit_form ? ipsw::verify_ips_circuit(cert, inst, term_cap)
                       : ipsw::verify_lin(cert, inst, term_cap);
    } catch (const ipsw::Error& e) {
      if (e.kind() != "SizeBlowup") throw;
      r = circuit_form
              ? ipsw::verify_ips_circuit_sz(cert, inst, c.trials, ext_k,
                                            c.seed, c.threads)
              : ipsw::verify_lin_sz(cert, inst, c.trials, ext_k, c.seed,
                                    c.threads);
      if (!note.empty()) note += "; ";
      note += "exact expansion exceeded the term cap; fell back to "
              "randomized verification";
    }
  } else {
    r = circuit_form ? ipsw::verify_ips_circuit_sz(cert, inst, c.trials,
                                                   ext_k, c.seed, c.threads)
                     : ipsw::verify_lin_sz(cert, inst, c.trials, ext_k,
                                           c.seed, c.threads);
  }

  Json rep = envelope("verify", c, inst.ctx->spec());
  rep["caps"]["term_cap"] = term_cap;
  rep["caps"]["ext"] = ext_k;
  rep["instance_hash"] = ipsw::hex64(ih);
  rep["cert_hash"] = ipsw::hex64(ipsw::fnv1a(cj.dump()));
  rep["report"] = ipsw::verify_report_json(r);
  rep["note"] = note;
  if (!c.out.empty()) write_file(c.out, ipsw::pretty(rep));
  emit(rep, c);
  return r.pass ? 0 : 1;
}

ipsw::Poly load_poly_arg(const CommonOpts& c, const std::string& inst_path,
                         const std::string& poly_text, unsigned axiom_ix,
                         const ipsw::FieldCtx** ctx_out) {
  if (!inst_path.empty()) {
    ipsw::Instance inst = ipsw::instance_load(load_json(inst_path));
    if (axiom_ix >= inst.axioms.size())
      ipsw::fail("BadConfig", "axiom index out of range");
    *ctx_out = inst.ctx;
    return inst.axioms[axiom_ix];
  }
  if (poly_text.empty())
    ipsw::fail("BadConfig", "needs --instance or --poly");
  const ipsw::FieldCtx* ctx =
      ipsw::FieldCtx::parse_spec(c.field.empty() ? "Q" : c.field);
  *ctx_out = ctx;
  return ipsw::parse_poly(ctx, poly_text);
}

int run_dims(const std::string& what, const CommonOpts& c,
             const std::string& inst_path, const std::string& poly_text,
             unsigned axiom_ix, const std::string& xs_csv,
             const std::string& ys_csv, const std::string& word_csv,
             unsigned npoints) {
  const ipsw::FieldCtx* ctx = nullptr;
  ipsw::Poly f = load_poly_arg(c, inst_path, poly_text, axiom_ix, &ctx);
  Json rep = envelope("dims " + what, c, ctx->spec());
  rep["poly_hash"] = ipsw::hex64(f.hash());

  if (what == "relrank") {
    if (word_csv.empty()) ipsw::fail("BadConfig", "relrank requires --word");
    ipsw::Word w = ipsw::Word::parse(word_csv);
    ipsw::RelRank r = ipsw::relrank(f, w);
    rep["report"] = Json{{"rank", r.rank},
                         {"pos_weight", r.mp},
                         {"neg_weight", r.mn},
                         {"relrank_sq", r.squared().get_str()}};
  } else {
    std::vector<ipsw::VarId> xs = parse_var_list(xs_csv);
    std::vector<ipsw::VarId> ys = parse_var_list(ys_csv);
    if (xs.empty() || ys.empty())
      ipsw::fail("BadConfig", what + " requires --xs and --ys");
    if (what == "coeff") {
      rep["report"] = Json{{"dim", ipsw::coeff_dim(f, xs, ys)}};
    } else if (what == "eval") {
      std::vector<ipsw::Fe> S;
      for (unsigned i = 0; i < npoints; ++i)
        S.push_back(ctx->sample_point(i));
      rep["report"] = Json{{"dim", ipsw::eval_dim(f, xs, ys, S)},
                           {"points", npoints}};
    } else {
      ipsw::fail("BadConfig", "unknown dims analysis " + what);
    }
  }
  if (!c.out.empty()) write_file(c.out, ipsw::pretty(rep));
  emit(rep, c);
  return 0;
}

int run_roabp(const std::string& what, const CommonOpts& c,
              const std::string& inst_path, const std::string& poly_text,
              unsigned axiom_ix, const std::string& order_csv, unsigned p) {
  const ipsw::FieldCtx* ctx = nullptr;
  ipsw::Poly f = load_poly_arg(c, inst_path, poly_text, axiom_ix, &ctx);
  std::vector<ipsw::VarId> order =
      order_csv.empty() ? f.vars() : parse_var_list(order_csv);

  Json rep = envelope("roabp " + what, c, ctx->spec());
  rep["poly_hash"] = ipsw::hex64(f.hash());
  bool pass = true;

  if (what == "width") {
    rep["report"] = Json{{"width_lower", ipsw::width_lower(f, order)}};
  } else {
    ipsw::RoAbp A = ipsw::nisan_build(f, order);
    if (what == "ml") A = ipsw::ml_roabp(A);
    if (what == "fermat") {
      if (p == 0) ipsw::fail("BadConfig", "fermat requires --p");
      A = ipsw::fermat_refutation_roabp(A, p);
      if (f.vars().size() <= 10) {
        ipsw::Poly g = ipsw::extract_poly(A);
        pass = ipsw::functional_inverse_check(g, f);
        rep["functional_inverse"] = pass;
      }
    }
    rep["report"] = Json{{"width", A.width()},
                         {"ideg", A.ideg()},
                         {"raw_nodes", A.raw_nodes()},
                         {"raw_edges", A.raw_edges()},
                         {"size_convention", A.size_convention()}};
    if (!c.out.empty()) write_file(c.out, ipsw::pretty(ipsw::roabp_json(A)));
  }
  rep["pass"] = pass;
  rep["verdict"] = pass ? "pass" : "fail";
  emit(rep, c);
  return pass ? 0 : 1;
}

int run_oracle_run(const CommonOpts& c, const std::string& lemma, unsigned n,
                   const std::string& beta, unsigned p, unsigned d, unsigned l,
                   unsigned m, unsigned k, const std::string& word_csv,
                   const std::string& parts_text, const std::string& psi) {
  const ipsw::FieldCtx* ctx =
      ipsw::FieldCtx::parse_spec(c.field.empty() ? "Q" : c.field);
  ipsw::OracleReport r;
  if (lemma == "subset-sum" || lemma == "partition" ||
      lemma == "general-psi" || lemma == "e2-char0") {
    ipsw::DegCheckParams P;
    P.ctx = ctx;
    P.n = n;
    P.beta = beta;
    P.parts = parse_parts(parts_text);
    P.psi = psi;
    r = ipsw::deg_check(lemma, P);
  } else if (lemma == "leadcoef") {
    r = ipsw::leadcoef_identities(k, beta);
  } else if (lemma == "lucas") {
    r = ipsw::lucas(m, n, p).report;
  } else if (lemma == "lucas-grid") {
    r = ipsw::lucas_grid(c.cap_n, {2, 3, 5, 7, 11});
  } else if (lemma == "sym-image") {
    r = ipsw::sym_image(d, n, p);
  } else if (lemma == "el-ed") {
    r = ipsw::el_ed_identity(l, d, n, ctx);
  } else if (lemma == "rank-lemma") {
    if (word_csv.empty()) ipsw::fail("BadConfig", "rank-lemma requires --word");
    r = ipsw::rank_lemma_oracle(ipsw::Word::parse(word_csv), p, c.threads);
  } else if (lemma == "lm-census") {
    r = ipsw::lm_census(n, ctx);
  } else if (lemma == "anyorder-dim") {
    r = ipsw::anyorder_dim_oracle(n, ctx);
  } else {
    ipsw::fail("BadConfig", "unknown lemma " + lemma);
  }
  Json rep = envelope("oracle run", c, ctx->spec());
  rep["report"] = ipsw::oracle_report_json(r);
  if (!c.out.empty()) write_file(c.out, ipsw::pretty(rep));
  emit(rep, c);
  return r.pass ? 0 : 1;
}

int run_oracle_sweep(const CommonOpts& c) {
  std::vector<ipsw::OracleReport> rs = ipsw::oracle_sweep(c.threads, c.cap_n);
  bool all = true;
  Json arr = Json::array();
  for (const auto& r : rs) {
    all = all && r.pass;
    arr.push_back(ipsw::oracle_report_json(r));
  }
  Json rep = envelope("oracle sweep", c, "");
  rep["report"] = arr;
  rep["checks"] = rs.size();
  rep["pass"] = all;
  rep["verdict"] = all ? "pass" : "fail";
  if (!c.out.empty()) write_file(c.out, ipsw::pretty(rep));
  emit(rep, c);
  return all ? 0 : 1;
}

int run_translate(const CommonOpts& c, const std::string& circuit_path,
                  unsigned q, const std::string& emit_kind, bool check) {
  ipsw::AlgCircuit C = ipsw::circuit_load(load_json(circuit_path));
  if (q != 0 && C.ctx->q() != q)
    ipsw::fail("BadConfig", "--q disagrees with the circuit's field");

  Json rep = envelope("translate", c, C.ctx->spec());
  rep["circuit_hash"] = ipsw::hex64(ipsw::fnv1a(
      ipsw::circuit_json(C).dump()));
  bool pass = true;

  if (emit_kind == "dimacs") {
    if (c.out.empty()) ipsw::fail("BadConfig", "dimacs emission requires -o");
    ipsw::CnfFormula F = ipsw::plain_cnf(C);
    std::string d = F.dimacs();
    write_file(c.out, d);
    write_file(c.out + ".json", F.sidecar_json());
    rep["report"] = Json{{"vars", F.names.size()},
                         {"clauses", F.clauses.size()},
                         {"cnf", c.out},
                         {"sidecar", c.out + ".json"},
                         {"dimacs_hash", ipsw::hex64(ipsw::fnv1a(d))}};
  } else if (emit_kind == "ecnf") {
    ipsw::Ecnf E = ipsw::ecnf(C);
    Json axioms = Json::array();
    for (const auto& a : E.axioms)
      axioms.push_back(Json{{"node", a.node},
                            {"bits", a.bit_vars},
                            {"text", a.text}});
    Json out = Json{{"dimacs", E.cnf.dimacs()},
                    {"sidecar", Json::parse(E.cnf.sidecar_json())},
                    {"axioms", axioms}};
    if (!c.out.empty()) write_file(c.out, ipsw::pretty(out));
    rep["report"] = Json{{"vars", E.cnf.names.size()},
                         {"clauses", E.cnf.clauses.size()},
                         {"axioms", E.axioms.size()}};
  } else if (emit_kind == "semi") {
    ipsw::SemiCnf S = ipsw::semi_cnf(C);
    Json eqs = Json::array();
    for (const auto& e : S.equations) eqs.push_back(e.str());
    Json subst = Json::object();
    for (const auto& [name, g] : S.subst) subst[name] = g.str();
    Json out = Json{{"q", S.q}, {"equations", eqs}, {"subst", subst}};
    if (!c.out.empty()) write_file(c.out, ipsw::pretty(out));
    rep["report"] = Json{{"equations", S.equations.size()},
                         {"bits", S.subst.size()}};
  } else {
    ipsw::fail("BadConfig", "unknown emission " + emit_kind);
  }

  if (check) {
    ipsw::OracleReport r = ipsw::equisat_check(C, "enumerate");
    rep["equisat"] = ipsw::oracle_report_json(r);
    pass = r.pass;
  }
  rep["pass"] = pass;
  rep["verdict"] = pass ? "pass" : "fail";
  emit(rep, c);
  return pass ? 0 : 1;
}

int run_params(const CommonOpts& c, std::uint64_t n, unsigned delta, int d,
               int a, int k) {
  Json rep = envelope("params", c, "");
  if (n > 0) {
    ipsw::Params P = ipsw::params(n, delta);
    rep["report"] = Json{{"n", P.n},
                         {"delta", P.delta},
                         {"d", P.d},
                         {"lambda", P.lambda},
                         {"g_delta", P.g_delta},
                         {"k_min", P.k_min},
                         {"k_max", P.k_max}};
  }
  if (d > 0) {
    ipsw::Word w = ipsw::word_gen(d, a, k, c.seed);
    rep["word"] = Json{{"entries", w.str()},
                       {"length", w.length()},
                       {"total_vars", w.total_vars()},
                       {"bound", w.bound()}};
  }
  if (n == 0 && d == 0)
    ipsw::fail("BadConfig", "params needs --n or a --d/--a/--k triple");
  if (!c.out.empty()) write_file(c.out, ipsw::pretty(rep));
  emit(rep, c);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact-arithmetic workbench for algebraic proof systems"};
  app.require_subcommand(1);

  CommonOpts cg, cv, cd, cr, cor, cos, ct, cp;

  std::string gen_kind, gen_word, gen_beta, gen_parts;
  unsigned gen_p = 0, gen_n = 0;
  CLI::App* gen = app.add_subcommand("gen", "generate a hard instance");
  gen->add_option("kind", gen_kind, "generator name")->required();
  gen->add_option("--word", gen_word, "word entries, CSV");
  gen->add_option("--p,--q", gen_p, "prime (or prime power) modulus");
  gen->add_option("--n", gen_n, "variable count");
  gen->add_option("--beta", gen_beta, "target constant");
  gen->add_option("--parts", gen_parts, "variable blocks, ;-separated CSV");
  add_common(gen, cg);

  std::string v_cert, v_inst;
  unsigned v_ext = 1;
  std::size_t v_term_cap = 2000000;
  CLI::App* verify = app.add_subcommand("verify", "check a certificate");
  verify->add_option("--cert", v_cert, "certificate file")->required();
  verify->add_option("--instance", v_inst, "instance file")->required();
  verify->add_option("--ext", v_ext, "extension degree for sz sampling");
  verify->add_option("--term-cap", v_term_cap, "exact-mode term cap");
  add_common(verify, cv);

  std::string d_what, d_inst, d_poly, d_xs, d_ys, d_word;
  unsigned d_axiom = 0, d_points = 3;
  CLI::App* dims = app.add_subcommand("dims", "coefficient space analyses");
  dims->add_option("what", d_what, "coeff | eval | relrank")->required();
  dims->add_option("--instance", d_inst, "instance file");
  dims->add_option("--poly", d_poly, "polynomial text");
  dims->add_option("--axiom", d_axiom, "axiom index in the instance");
  dims->add_option("--xs", d_xs, "row variables, CSV");
  dims->add_option("--ys", d_ys, "column variables, CSV");
  dims->add_option("--word", d_word, "word entries, CSV");
  dims->add_option("--points", d_points, "evaluation grid size per axis");
  add_common(dims, cd);

  std::string r_what, r_inst, r_poly, r_order;
  unsigned r_axiom = 0, r_p = 0;
  CLI::App* roabp = app.add_subcommand("roabp", "read-once ABP analyses");
  roabp->add_option("what", r_what, "build | width | ml | fermat")->required();
  roabp->add_option("--instance", r_inst, "instance file");
  roabp->add_option("--poly", r_poly, "polynomial text");
  roabp->add_option("--axiom", r_axiom, "axiom index in the instance");
  roabp->add_option("--order", r_order, "variable order, CSV");
  roabp->add_option("--p", r_p, "characteristic for the inverse power");
  add_common(roabp, cr);

  CLI::App* oracle = app.add_subcommand("oracle", "desk-scale lemma checks");
  oracle->require_subcommand(1);
  std::string o_lemma, o_beta, o_word, o_parts, o_psi = "indicator";
  unsigned o_n = 0, o_p = 0, o_d = 0, o_l = 0, o_m = 0, o_k = 0;
  CLI::App* orun = oracle->add_subcommand("run", "run one lemma check");
  orun->add_option("--lemma", o_lemma, "lemma name")->required();
  orun->add_option("--n", o_n, "variable count");
  orun->add_option("--beta", o_beta, "target constant");
  orun->add_option("--p", o_p, "prime");
  orun->add_option("--d", o_d, "degree parameter");
  orun->add_option("--l", o_l, "degree parameter");
  orun->add_option("--m", o_m, "binomial upper index");
  orun->add_option("--k", o_k, "identity order");
  orun->add_option("--word", o_word, "word entries, CSV");
  orun->add_option("--parts", o_parts, "variable blocks, ;-separated CSV");
  orun->add_option("--psi", o_psi, "block polynomial: indicator | xor");
  add_common(orun, cor);
  CLI::App* osweep = oracle->add_subcommand("sweep", "run the whole suite");
  add_common(osweep, cos);

  std::string t_circuit, t_emit = "dimacs";
  unsigned t_q = 0;
  bool t_check = false;
  CLI::App* translate = app.add_subcommand("translate", "circuit to CNF");
  translate->add_option("--circuit", t_circuit, "circuit file")->required();
  translate->add_option("--q", t_q, "field size, must match the circuit");
  translate->add_option("--emit", t_emit, "dimacs | ecnf | semi")
      ->check(CLI::IsMember({"dimacs", "ecnf", "semi"}));
  translate->add_flag("--check", t_check, "run the equisatisfiability check");
  add_common(translate, ct);

  std::uint64_t p_n = 0;
  unsigned p_delta = 1;
  int p_d = 0, p_a = 0, p_k = 0;
  CLI::App* params = app.add_subcommand("params", "word schedule parameters");
  params->add_option("--n", p_n, "target size");
  params->add_option("--delta", p_delta, "exponent divisor");
  params->add_option("--d", p_d, "word degree");
  params->add_option("--a", p_a, "positive letter");
  params->add_option("--k", p_k, "negative letter magnitude");
  add_common(params, cp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed())
      return run_gen(gen_kind, cg, gen_word, gen_p, gen_n, gen_beta,
                     gen_parts);
    if (verify->parsed())
      return run_verify(cv, v_cert, v_inst, v_ext, v_term_cap);
    if (dims->parsed())
      return run_dims(d_what, cd, d_inst, d_poly, d_axiom, d_xs, d_ys, d_word,
                      d_points);
    if (roabp->parsed())
      return run_roabp(r_what, cr, r_inst, r_poly, r_axiom, r_order, r_p);
    if (oracle->parsed()) {
      if (orun->parsed())
        return run_oracle_run(cor, o_lemma, o_n, o_beta, o_p, o_d, o_l, o_m,
                              o_k, o_word, o_parts, o_psi);
      return run_oracle_sweep(cos);
    }
    if (translate->parsed())
      return run_translate(ct, t_circuit, t_q, t_emit, t_check);
    if (params->parsed()) return run_params(cp, p_n, p_delta, p_d, p_a, p_k);
  } catch (const ipsw::Error& e) {
    Json err{{"error", e.kind()}, {"detail", e.what()}};
    std::cerr << ipsw::pretty(err);
    return 2;
  } catch (const Json::exception& e) {
    Json err{{"error", "BadSchema"}, {"detail", e.what()}};
    std::cerr << ipsw::pretty(err);
    return 2;
  }
  return 2;
}
