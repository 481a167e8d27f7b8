#include "ipsw/cnfbridge.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include "json.hpp"

#include "ipsw/ipscert.hpp"
#include "ipsw/util.hpp"

namespace ipsw {

namespace {

constexpr std::size_t kTermCap = 200000;

void require_prime_ctx(const FieldCtx* ctx) {
  if (ctx->kind != FieldKind::Prime)
    fail("IndexOutOfField", "unary-bit encodings index prime fields only");
}

}  // namespace

Slp slp_of(const AlgCircuit& C) {
  Slp s;
  std::map<std::string, std::string> scalar_by_value;
  auto scalar_node = [&](const Fe& v) {
    std::string key = v.str();
    auto it = scalar_by_value.find(key);
    if (it != scalar_by_value.end()) return it->second;
    std::string name = "k" + key;
    scalar_by_value.emplace(key, name);
    s.order.push_back(name);
    s.scalar_of.emplace(name, v);
    return name;
  };
  std::vector<std::string> gname(C.gates.size());
  for (std::size_t i = 0; i < C.gates.size(); ++i) {
    const AlgCircuit::Gate& g = C.gates[i];
    if (g.kind == AlgCircuit::Gate::Kind::Input) {
      gname[i] = "g" + std::to_string(i);
      s.order.push_back(gname[i]);
      s.input_of.emplace(gname[i], g.var);
      continue;
    }
    if (g.kind == AlgCircuit::Gate::Kind::Scalar) {
      gname[i] = scalar_node(C.scalars[g.scalar_ix]);
      continue;
    }
    char op = g.kind == AlgCircuit::Gate::Kind::Add ? '+' : '*';
    std::vector<std::string> ops;
    if (g.kind == AlgCircuit::Gate::Kind::Add) {
      for (std::size_t k = 0; k < g.wargs.size(); ++k) {
        auto [ix, wix] = g.wargs[k];
        if (ix >= i) fail("Cyclic", "argument does not precede its gate");
        std::string operand = gname[ix];
        Fe w = C.scalars[wix];
        if (!w.is_one()) {
          std::string m =
              "m" + std::to_string(i) + "_" + std::to_string(k);
          std::string kn = scalar_node(w);
          s.order.push_back(m);
          s.ext_vars.push_back(m);
          s.eqs.push_back({m, '*', kn, operand});
          operand = m;
        }
        ops.push_back(operand);
      }
    } else {
      for (std::size_t ix : g.args) {
        if (ix >= i) fail("Cyclic", "argument does not precede its gate");
        ops.push_back(gname[ix]);
      }
    }
    const FieldCtx* ctx = C.ctx;
    Fe unit = op == '+' ? ctx->zero() : ctx->one();
    while (ops.size() < 2) ops.push_back(scalar_node(unit));
    gname[i] = "g" + std::to_string(i);
    std::string prev = ops[0];
    for (std::size_t k = 1; k < ops.size(); ++k) {
      bool last = k + 1 == ops.size();
      std::string z = last ? gname[i]
                           : "v" + std::to_string(i) + "_" + std::to_string(k);
      s.order.push_back(z);
      if (!last) s.ext_vars.push_back(z);
      s.eqs.push_back({z, op, ops[k], prev});
      prev = z;
    }
  }
  s.out = gname[C.out];
  return s;
}

std::map<std::string, Fe> slp_eval(const Slp& slp, const FieldCtx* ctx,
                                   const std::map<VarId, Fe>& asg) {
  std::map<std::string, Fe> val;
  for (const auto& [name, v] : slp.scalar_of) val.emplace(name, v);
  for (const auto& [name, v] : slp.input_of) val.emplace(name, asg.at(v));
  for (const SlpEq& e : slp.eqs) {
    Fe a = val.at(e.x), b = val.at(e.y);
    val.insert_or_assign(e.z, e.op == '+' ? a + b : a * b);
  }
  return val;
}

Poly ubit_poly(const FieldCtx* ctx, unsigned j, const VarId& v) {
  return ubit_of(j, Poly::var(ctx, v));
}

Poly ubit_of(unsigned j, const Poly& target) {
  const FieldCtx* ctx = target.ctx();
  require_prime_ctx(ctx);
  unsigned q = unsigned(ctx->p);
  if (j >= q) fail("IndexOutOfField", "bit index exceeds the field size");
  Poly prod = Poly::constant(ctx, 1);
  Fe denom = ctx->one();
  for (unsigned i = 0; i < q; ++i) {
    if (i == j) continue;
    prod = prod * (target - Poly::constant(ctx, long(i)));
    denom = denom * (ctx->from_int(long(j)) - ctx->from_int(long(i)));
    if (prod.term_count() > kTermCap)
      fail("TooLarge", "unary-bit expansion exceeds the term cap");
  }
  return prod.scale(ff_inv(denom));
}

AlgCircuit ubit_circuit(unsigned j, const AlgCircuit& target) {
  const FieldCtx* ctx = target.ctx;
  require_prime_ctx(ctx);
  unsigned q = unsigned(ctx->p);
  if (j >= q) fail("IndexOutOfField", "bit index exceeds the field size");
  AlgCircuit C = target;
  std::vector<std::size_t> factors;
  Fe denom = ctx->one();
  for (unsigned i = 0; i < q; ++i) {
    if (i == j) continue;
    std::size_t s = C.scalar(ctx->from_int(long(i)));
    factors.push_back(
        C.add({{C.out, ctx->one()}, {s, ctx->neg(ctx->one())}}));
    denom = denom * (ctx->from_int(long(j)) - ctx->from_int(long(i)));
  }
  std::size_t prod = C.mul(factors);
  C.out = C.add({{prod, ff_inv(denom)}});
  return C;
}

namespace {

struct Lit {
  std::string node;
  unsigned j = 0;
  bool neg = false;
};

struct CnfBuilder {
  const Slp& s;
  const FieldCtx* ctx;
  unsigned q;
  CnfFormula F;
  std::map<std::string, int> base;  // node -> DIMACS index of bit 0

  explicit CnfBuilder(const Slp& slp, const FieldCtx* c)
      : s(slp), ctx(c), q(unsigned(c->p)) {
    F.q = q;
    for (const std::string& node : s.order) {
      if (s.scalar_of.count(node)) continue;
      base.emplace(node, int(F.names.size()) + 1);
      for (unsigned j = 0; j < q; ++j)
        F.names.push_back(node + ":" + std::to_string(j));
    }
  }

  void clause(const std::vector<Lit>& lits) {
    std::vector<int> cl;
    for (const Lit& L : lits) {
      auto sc = s.scalar_of.find(L.node);
      if (sc != s.scalar_of.end()) {
        bool bit = (sc->second - ctx->from_int(long(L.j))).is_zero();
        if (L.neg != bit) return;  // literal true, clause satisfied
        continue;                  // literal false, dropped
      }
      int ix = base.at(L.node) + int(L.j);
      cl.push_back(L.neg ? -ix : ix);
    }
    F.clauses.push_back(std::move(cl));
  }

  void build() {
    for (const std::string& node : s.order) {
      if (s.scalar_of.count(node)) continue;
      std::vector<Lit> big;
      for (unsigned j = 0; j < q; ++j) big.push_back({node, j, false});
      clause(big);
      for (unsigned j = 0; j < q; ++j)
        for (unsigned l = j + 1; l < q; ++l)
          clause({{node, j, true}, {node, l, true}});
    }
    for (const SlpEq& e : s.eqs) {
      for (unsigned a = 0; a < q; ++a)
        for (unsigned b = 0; b < q; ++b) {
          unsigned c = e.op == '+' ? (a + b) % q : (a * b) % q;
          for (unsigned bad = 0; bad < q; ++bad) {
            if (bad == c) continue;
            clause({{e.x, a, true}, {e.y, b, true}, {e.z, bad, true}});
          }
        }
    }
    clause({{s.out, 0, false}});
    for (unsigned i = 1; i < q; ++i) clause({{s.out, i, true}});
  }
};

}  // namespace

CnfFormula plain_cnf(const AlgCircuit& C) {
  require_prime_ctx(C.ctx);
  Slp s = slp_of(C);
  CnfBuilder b(s, C.ctx);
  b.build();
  return b.F;
}

Ecnf ecnf(const AlgCircuit& C) {
  require_prime_ctx(C.ctx);
  Slp s = slp_of(C);
  CnfBuilder b(s, C.ctx);
  b.build();
  Ecnf out{b.F, {}};
  for (const std::string& node : s.order) {
    if (s.scalar_of.count(node)) continue;
    ExtAxiom ax;
    ax.node = node;
    std::string rhs;
    for (unsigned j = 0; j < b.q; ++j) {
      int ix = b.base.at(node) + int(j);
      ax.bit_vars.push_back(ix);
      if (j) rhs += " + ";
      rhs += std::to_string(j) + "*" + b.F.names[ix - 1];
    }
    ax.text = "x_" + node + " = " + rhs;
    out.axioms.push_back(std::move(ax));
  }
  return out;
}

SemiCnf semi_cnf(const AlgCircuit& C) {
  const FieldCtx* ctx = C.ctx;
  require_prime_ctx(ctx);
  Slp s = slp_of(C);
  CnfFormula F = plain_cnf(C);

  std::map<std::string, Poly> npoly;
  for (const auto& [name, v] : s.scalar_of)
    npoly.emplace(name, Poly::constant(v));
  for (const auto& [name, v] : s.input_of)
    npoly.emplace(name, Poly::var(ctx, v));
  for (const SlpEq& e : s.eqs) {
    Poly z = e.op == '+' ? npoly.at(e.x) + npoly.at(e.y)
                         : npoly.at(e.x) * npoly.at(e.y);
    if (z.term_count() > kTermCap)
      fail("TooLarge", "node polynomial exceeds the term cap");
    npoly.insert_or_assign(e.z, std::move(z));
  }

  SemiCnf out;
  out.q = F.q;
  out.base = F;
  for (const std::string& name : F.names) {
    std::size_t colon = name.rfind(':');
    std::string node = name.substr(0, colon);
    unsigned j = unsigned(std::strtoul(name.c_str() + colon + 1, nullptr, 10));
    out.subst.emplace(name, ubit_of(j, npoly.at(node)));
  }
  for (const std::vector<int>& cl : F.clauses) {
    Poly prod = Poly::constant(ctx, 1);
    for (int lit : cl) {
      const Poly& u = out.subst.at(F.names[std::size_t(std::abs(lit)) - 1]);
      prod = prod * (lit > 0 ? Poly::constant(ctx, 1) - u : u);
      if (prod.term_count() > kTermCap)
        fail("TooLarge", "clause translation exceeds the term cap");
    }
    out.equations.push_back(std::move(prod));
  }
  return out;
}

OracleReport identity_suite(unsigned q) {
  const FieldCtx* ctx = FieldCtx::prime(q);
  VarId xv = VarId::plain(1);
  Poly X = Poly::var(ctx, xv);

  Poly recomb = Poly::zero(ctx);
  Poly unity = Poly::zero(ctx);
  bool quotients_ok = true;
  std::string note;
  Poly field_axiom = X.pow(q) - X;
  for (unsigned j = 0; j < q; ++j) {
    Poly u = ubit_poly(ctx, j, xv);
    recomb = recomb + u.scale(ctx->from_int(long(j)));
    unity = unity + u;
    auto quot = divide_exact(u * u - u, field_axiom);
    if (!quot)
      fail("DivisionFails",
           "unary-bit Boolean defect not divisible by the field axiom");
    if (quot->degree() != int(q) - 2) {
      quotients_ok = false;
      if (note.empty())
        note = "quotient degree " + std::to_string(quot->degree()) +
               " at j=" + std::to_string(j);
    }
  }
  bool recomb_ok = recomb == X;
  bool unity_ok = unity == Poly::constant(ctx, 1);

  Poly A = Poly::var(ctx, VarId::plain(2));
  Poly B = Poly::var(ctx, VarId::plain(3));
  bool frob_ok = (A + B).pow(q) == A.pow(q) + B.pow(q);

  OracleReport rep;
  rep.lemma = "unary-bit-identities";
  rep.params = "q=" + std::to_string(q);
  rep.expected = "recombination, unity, quotient degree q-2, Frobenius sum";
  std::string got;
  got += recomb_ok ? "recomb ok" : "recomb FAIL";
  got += unity_ok ? "; unity ok" : "; unity FAIL";
  got += quotients_ok ? "; quotients ok" : "; quotients FAIL";
  got += frob_ok ? "; frobenius ok" : "; frobenius FAIL";
  rep.computed = got;
  rep.pass = recomb_ok && unity_ok && quotients_ok && frob_ok;
  rep.verdict = rep.pass ? "pass" : "fail";
  rep.note = note;
  return rep;
}

std::string CnfFormula::dimacs() const { return dimacs_emit(*this); }

std::string CnfFormula::sidecar_json() const {
  nlohmann::json j;
  j["q"] = q;
  nlohmann::json vars = nlohmann::json::object();
  for (std::size_t i = 0; i < names.size(); ++i)
    vars[std::to_string(i + 1)] = names[i];
  j["vars"] = vars;
  return j.dump(2);
}

std::string dimacs_emit(const CnfFormula& F) {
  std::string out = "p cnf " + std::to_string(F.names.size()) + " " +
                    std::to_string(F.clauses.size()) + "\n";
  for (const auto& cl : F.clauses) {
    for (int lit : cl) {
      out += std::to_string(lit);
      out += ' ';
    }
    out += "0\n";
  }
  return out;
}

CnfFormula dimacs_parse(const std::string& text) {
  std::istringstream in(text);
  std::string tok;
  CnfFormula F;
  std::size_t nvars = 0, nclauses = 0;
  while (in >> tok) {
    if (tok == "c") {
      std::string rest;
      std::getline(in, rest);
      continue;
    }
    if (tok == "p") {
      std::string kind;
      in >> kind >> nvars >> nclauses;
      break;
    }
    fail("TooLarge", "malformed DIMACS header");
  }
  for (std::size_t i = 1; i <= nvars; ++i) F.names.push_back("v" + std::to_string(i));
  std::vector<int> cur;
  long long lit;
  while (in >> lit) {
    if (lit == 0) {
      F.clauses.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(int(lit));
    }
  }
  if (!cur.empty()) F.clauses.push_back(cur);
  if (F.clauses.size() != nclauses)
    fail("TooLarge", "DIMACS clause count mismatch");
  return F;
}

bool cnf_sat(const CnfFormula& F, std::vector<int>* model) {
  std::size_t n = F.names.size();
  std::vector<int8_t> asg(n + 1, 0);

  std::function<bool()> solve = [&]() -> bool {
    // unit propagation to a fixed point
    bool changed = true;
    std::vector<std::pair<std::size_t, int8_t>> trail;
    while (changed) {
      changed = false;
      for (const auto& cl : F.clauses) {
        int unassigned = 0;
        int last = 0;
        bool sat = false;
        for (int lit : cl) {
          std::size_t v = std::size_t(std::abs(lit));
          int8_t want = lit > 0 ? 1 : -1;
          if (asg[v] == 0) {
            ++unassigned;
            last = lit;
          } else if (asg[v] == want) {
            sat = true;
            break;
          }
        }
        if (sat) continue;
        if (unassigned == 0) {
          for (auto& [v, old] : trail) asg[v] = old;
          return false;
        }
        if (unassigned == 1) {
          std::size_t v = std::size_t(std::abs(last));
          trail.push_back({v, asg[v]});
          asg[v] = last > 0 ? 1 : -1;
          changed = true;
        }
      }
    }
    std::size_t pick = 0;
    for (std::size_t v = 1; v <= n; ++v)
      if (asg[v] == 0) {
        pick = v;
        break;
      }
    if (pick == 0) return true;
    for (int8_t val : {int8_t(1), int8_t(-1)}) {
      asg[pick] = val;
      if (solve()) return true;
    }
    asg[pick] = 0;
    for (auto& [v, old] : trail) asg[v] = old;
    return false;
  };

  bool sat = solve();
  if (sat && model) {
    model->clear();
    for (std::size_t v = 1; v <= n; ++v)
      model->push_back(asg[v] >= 0 ? int(v) : -int(v));
  }
  return sat;
}

OracleReport equisat_check(const AlgCircuit& C, const std::string& mode,
                           const std::string& export_path) {
  const FieldCtx* ctx = C.ctx;
  require_prime_ctx(ctx);
  unsigned q = unsigned(ctx->p);
  Slp s = slp_of(C);
  CnfFormula F = plain_cnf(C);

  std::vector<std::pair<std::string, VarId>> inputs(s.input_of.begin(),
                                                    s.input_of.end());
  std::size_t n = inputs.size();

  OracleReport rep;
  rep.lemma = "equisat";
  rep.params = "q=" + std::to_string(q) + ";inputs=" + std::to_string(n) +
               ";mode=" + mode;

  if (mode == "dimacs-export") {
    std::ofstream cnf_out(export_path);
    cnf_out << dimacs_emit(F);
    std::ofstream map_out(export_path + ".json");
    map_out << F.sidecar_json();
    rep.expected = "external solver verdict";
    rep.computed = "exported " + std::to_string(F.clauses.size()) + " clauses";
    rep.pass = bool(cnf_out) && bool(map_out);
    rep.verdict = rep.pass ? "pass" : "fail";
    rep.note = export_path + " with sidecar " + export_path + ".json";
    return rep;
  }

  double work = 1;
  for (std::size_t i = 0; i < n; ++i) work *= q;
  if (work > 4096 || F.names.size() > 2000)
    fail("TooLarge", "enumeration space exceeds the cap");

  std::map<std::string, int> base;  // node -> DIMACS index of bit 0
  {
    int next = 1;
    for (const std::string& node : s.order) {
      if (s.scalar_of.count(node)) continue;
      base.emplace(node, next);
      next += int(q);
    }
  }

  bool alg_sat = false;
  bool induced_ok = true;
  std::string note;
  std::vector<unsigned> digit(n, 0);
  bool done = false;
  while (!done) {
    std::map<VarId, Fe> asg;
    for (std::size_t i = 0; i < n; ++i)
      asg.emplace(inputs[i].second, ctx->from_int(long(digit[i])));
    Fe cval = C.eval(asg);
    std::map<std::string, Fe> vals = slp_eval(s, ctx, asg);
    if (!(vals.at(s.out) - cval).is_zero()) {
      induced_ok = false;
      if (note.empty()) note = "chain value disagrees with the circuit";
    }
    std::vector<int8_t> bits(F.names.size() + 1, -1);
    for (const auto& [node, v] : vals) {
      if (s.scalar_of.count(node)) continue;
      for (unsigned j = 0; j < q; ++j)
        bits[std::size_t(base.at(node)) + j] =
            (v - ctx->from_int(long(j))).is_zero() ? 1 : -1;
    }
    bool cnf_holds = true;
    for (const auto& cl : F.clauses) {
      bool sat = false;
      for (int lit : cl)
        if (bits[std::size_t(std::abs(lit))] == (lit > 0 ? 1 : -1)) {
          sat = true;
          break;
        }
      if (!sat) {
        cnf_holds = false;
        break;
      }
    }
    bool alg_zero = cval.is_zero();
    if (alg_zero != cnf_holds) {
      induced_ok = false;
      if (note.empty())
        note = "induced assignment disagrees with the output block";
    }
    if (alg_zero) alg_sat = true;
    done = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (++digit[i] < q) {
        done = false;
        break;
      }
      digit[i] = 0;
    }
  }

  std::vector<int> model;
  bool bsat = cnf_sat(F, &model);
  bool esat = bsat;
  if (bsat) {
    // extension axioms pin the algebraic node value to the set bit
    std::map<std::string, Fe> nv;
    for (const auto& [name, v] : s.scalar_of) nv.emplace(name, v);
    for (const auto& [node, b0] : base) {
      int set = -1;
      for (unsigned j = 0; j < q; ++j)
        if (model[std::size_t(b0) + j - 1] > 0) set = int(j);
      nv.emplace(node, ctx->from_int(set < 0 ? 0 : set));
      if (set < 0) esat = false;
    }
    for (const SlpEq& e : s.eqs) {
      Fe want = e.op == '+' ? nv.at(e.x) + nv.at(e.y) : nv.at(e.x) * nv.at(e.y);
      if (!(nv.at(e.z) - want).is_zero()) esat = false;
    }
    if (!nv.at(s.out).is_zero()) esat = false;
  }

  rep.expected = "agreement across the three encodings";
  rep.computed = std::string("alg ") + (alg_sat ? "sat" : "unsat") + "; cnf " +
                 (bsat ? "sat" : "unsat") + "; ecnf " +
                 (esat ? "sat" : "unsat");
  rep.pass = induced_ok && alg_sat == bsat && bsat == esat;
  rep.verdict = rep.pass ? "pass" : "fail";
  rep.note = note;
  return rep;
}

OracleReport equisat_ingest(const std::string& solver_output, bool alg_sat) {
  bool said_sat = false, said_unsat = false;
  std::istringstream in(solver_output);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find("UNSAT") != std::string::npos) said_unsat = true;
    else if (line.find("SAT") != std::string::npos) said_sat = true;
  }
  OracleReport rep;
  rep.lemma = "equisat-ingest";
  rep.expected = alg_sat ? "SAT" : "UNSAT";
  rep.computed = said_unsat ? "UNSAT" : said_sat ? "SAT" : "no verdict";
  rep.pass = said_unsat ? !alg_sat : (said_sat && alg_sat);
  rep.verdict = rep.pass ? "pass" : "fail";
  return rep;
}

}  // namespace ipsw
