#include "ipsw/serialize.hpp"

#include <cctype>
#include <set>

#include "ipsw/util.hpp"

namespace ipsw {

namespace {

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Poly parse_poly(const FieldCtx* ctx, const std::string& text) {
  if (text.empty()) fail("BadPolyText", "empty polynomial text");
  if (text == "0") return Poly::zero(ctx);

  // fold the infix separators into a single split character; a '-' after the
  // marker keeps the sign with its term
  std::string norm;
  for (std::size_t i = 0; i < text.size();) {
    if (text.compare(i, 3, " + ") == 0) {
      norm += '\x01';
      i += 3;
    } else if (text.compare(i, 3, " - ") == 0) {
      norm += '\x01';
      norm += '-';
      i += 3;
    } else {
      norm += text[i];
      ++i;
    }
  }

  Poly out = Poly::zero(ctx);
  for (std::string term : split_on(norm, '\x01')) {
    if (term.empty()) fail("BadPolyText", "empty term in: " + text);
    bool negate = false;
    if (term[0] == '-') {
      negate = true;
      term.erase(term.begin());
      if (term.empty()) fail("BadPolyText", "dangling sign in: " + text);
    }
    std::vector<std::string> parts = split_on(term, '*');
    std::size_t ci = 0;
    Fe coeff = ctx->one();
    char head = parts[0].empty() ? '\0' : parts[0][0];
    if (std::isdigit(static_cast<unsigned char>(head)) || head == '(') {
      try {
        coeff = ctx->parse(parts[0]);
      } catch (const Error&) {
        throw;
      } catch (const std::exception&) {
        fail("BadPolyText", "bad coefficient '" + parts[0] + "' in: " + text);
      }
      ci = 1;
    }
    if (negate) coeff = ctx->neg(coeff);
    Monomial m;
    for (; ci < parts.size(); ++ci) {
      std::string f = parts[ci];
      unsigned e = 1;
      std::size_t caret = f.rfind('^');
      if (caret != std::string::npos && all_digits(f.substr(caret + 1))) {
        e = unsigned(std::stoul(f.substr(caret + 1)));
        f = f.substr(0, caret);
      }
      if (e == 0) fail("BadPolyText", "zero exponent in: " + text);
      VarId v = VarId::parse(f);
      if (v.name() != f)
        fail("BadPolyText", "bad variable token '" + f + "' in: " + text);
      m = m * Monomial::var(v, e);
    }
    if (ci == 1 && parts.size() == 1 && m.is_one() && coeff.is_zero() &&
        !negate)
      fail("BadPolyText", "explicit zero term in: " + text);
    if (!coeff.is_zero()) out.add_term(m, coeff);
  }
  return out;
}

Json instance_json(const Instance& inst) {
  Json j;
  j["field"] = inst.ctx->spec();
  std::set<std::string> names;
  Json axioms = Json::array();
  for (const Poly& a : inst.axioms) {
    axioms.push_back(a.str());
    for (const VarId& v : a.vars()) names.insert(v.name());
  }
  j["vars"] = Json(names);
  j["axioms"] = axioms;
  const Provenance& m = inst.meta;
  j["meta"] = Json{{"generator", m.generator}, {"field", m.field},
                   {"word", m.word},           {"beta", m.beta},
                   {"n", m.n},                 {"p", m.p},
                   {"seed", m.seed},           {"unsat_certified", m.unsat_certified},
                   {"beta_unverified", m.beta_unverified},
                   {"note", m.note}};
  return j;
}

Instance instance_load(const Json& j) {
  Instance inst;
  inst.ctx = FieldCtx::parse_spec(j.at("field").get<std::string>());
  for (const auto& a : j.at("axioms"))
    inst.axioms.push_back(parse_poly(inst.ctx, a.get<std::string>()));
  if (j.contains("meta")) {
    const Json& m = j.at("meta");
    Provenance& p = inst.meta;
    p.generator = m.value("generator", std::string());
    p.field = m.value("field", std::string());
    p.word = m.value("word", std::string());
    p.beta = m.value("beta", std::string());
    p.n = m.value("n", std::uint64_t(0));
    p.p = m.value("p", 0u);
    p.seed = m.value("seed", std::uint64_t(0));
    p.unsat_certified = m.value("unsat_certified", false);
    p.beta_unverified = m.value("beta_unverified", false);
    p.note = m.value("note", std::string());
  }
  return inst;
}

Json circuit_json(const AlgCircuit& c) {
  Json j;
  j["field"] = c.ctx->spec();
  Json scalars = Json::array();
  for (const Fe& s : c.scalars) scalars.push_back(c.ctx->elem_str(s));
  j["scalars"] = scalars;
  Json gates = Json::array();
  for (const auto& g : c.gates) {
    Json gj;
    switch (g.kind) {
      case AlgCircuit::Gate::Kind::Input:
        gj = Json{{"op", "in"}, {"var", g.var.name()}};
        break;
      case AlgCircuit::Gate::Kind::Scalar:
        gj = Json{{"op", "const"}, {"c", g.scalar_ix}};
        break;
      case AlgCircuit::Gate::Kind::Add: {
        Json args = Json::array();
        for (const auto& [gate, six] : g.wargs)
          args.push_back(Json::array({gate, six}));
        gj = Json{{"op", "add"}, {"args", args}};
        break;
      }
      case AlgCircuit::Gate::Kind::Mul:
        gj = Json{{"op", "mul"}, {"args", g.args}};
        break;
    }
    gates.push_back(gj);
  }
  j["gates"] = gates;
  j["out"] = c.out;
  return j;
}

AlgCircuit circuit_load(const Json& j) {
  const FieldCtx* ctx = FieldCtx::parse_spec(j.at("field").get<std::string>());
  AlgCircuit c(ctx);
  for (const auto& s : j.at("scalars"))
    c.scalars.push_back(ctx->parse(s.get<std::string>()));
  const Json& gates = j.at("gates");
  for (const auto& gj : gates) {
    AlgCircuit::Gate g;
    std::string op = gj.at("op").get<std::string>();
    if (op == "in") {
      g.kind = AlgCircuit::Gate::Kind::Input;
      g.var = VarId::parse(gj.at("var").get<std::string>());
    } else if (op == "const") {
      g.kind = AlgCircuit::Gate::Kind::Scalar;
      g.scalar_ix = gj.at("c").get<std::size_t>();
      if (g.scalar_ix >= c.scalars.size())
        fail("BadSchema", "scalar index out of range");
    } else if (op == "add") {
      g.kind = AlgCircuit::Gate::Kind::Add;
      for (const auto& a : gj.at("args")) {
        std::size_t gate = a.at(0).get<std::size_t>();
        std::size_t six = a.at(1).get<std::size_t>();
        if (gate >= c.gates.size() || six >= c.scalars.size())
          fail("BadSchema", "add arg out of range");
        g.wargs.emplace_back(gate, six);
      }
    } else if (op == "mul") {
      g.kind = AlgCircuit::Gate::Kind::Mul;
      for (const auto& a : gj.at("args")) {
        std::size_t gate = a.get<std::size_t>();
        if (gate >= c.gates.size()) fail("BadSchema", "mul arg out of range");
        g.args.push_back(gate);
      }
    } else {
      fail("BadSchema", "unknown gate op " + op);
    }
    c.gates.push_back(std::move(g));
  }
  c.out = j.at("out").get<std::size_t>();
  if (c.out >= c.gates.size()) fail("BadSchema", "output index out of range");
  return c;
}

Json cert_json(const IpsCert& cert, const FieldCtx* ctx) {
  Json j;
  j["field"] = ctx->spec();
  j["form"] =
      cert.form == IpsCert::Form::LinearComb ? "linear" : "circuit";
  if (cert.form == IpsCert::Form::LinearComb) {
    Json g = Json::array();
    for (const Poly& gi : cert.lin.g) g.push_back(gi.str());
    j["g"] = g;
    Json h = Json::object();
    for (const auto& [v, hv] : cert.lin.h) h[v.name()] = hv.str();
    j["h"] = h;
  } else {
    if (!cert.circuit) fail("BadSchema", "circuit form without a circuit");
    j["circuit"] = circuit_json(*cert.circuit);
  }
  j["flags"] = Json{{"linear_in_y", cert.flags.linear_in_y},
                    {"linear_in_yz", cert.flags.linear_in_yz},
                    {"multilinear_in_xy", cert.flags.multilinear_in_xy}};
  j["instance_hash"] = cert.instance_hash;
  return j;
}

IpsCert cert_load(const Json& j) {
  const FieldCtx* ctx = FieldCtx::parse_spec(j.at("field").get<std::string>());
  IpsCert cert;
  std::string form = j.at("form").get<std::string>();
  if (form == "linear") {
    cert.form = IpsCert::Form::LinearComb;
    for (const auto& g : j.at("g"))
      cert.lin.g.push_back(parse_poly(ctx, g.get<std::string>()));
    for (const auto& [name, hv] : j.at("h").items())
      cert.lin.h.emplace(VarId::parse(name),
                         parse_poly(ctx, hv.get<std::string>()));
  } else if (form == "circuit") {
    cert.form = IpsCert::Form::PlaceholderCircuit;
    cert.circuit = circuit_load(j.at("circuit"));
  } else {
    fail("BadSchema", "unknown certificate form " + form);
  }
  if (j.contains("flags")) {
    const Json& f = j.at("flags");
    cert.flags.linear_in_y = f.value("linear_in_y", false);
    cert.flags.linear_in_yz = f.value("linear_in_yz", false);
    cert.flags.multilinear_in_xy = f.value("multilinear_in_xy", false);
  }
  cert.instance_hash = j.value("instance_hash", std::uint64_t(0));
  return cert;
}

Json roabp_json(const RoAbp& A) {
  Json j;
  j["field"] = A.ctx->spec();
  Json order = Json::array();
  for (const VarId& v : A.order) order.push_back(v.name());
  j["order"] = order;
  j["nodes"] = A.nodes;
  Json layers = Json::array();
  for (const LayerMat& L : A.M) {
    Json rows = Json::array();
    for (const auto& row : L) {
      Json cols = Json::array();
      for (const Label& lab : row) {
        Json cs = Json::array();
        for (const Fe& c : lab) cs.push_back(A.ctx->elem_str(c));
        cols.push_back(cs);
      }
      rows.push_back(cols);
    }
    layers.push_back(rows);
  }
  j["layers"] = layers;
  return j;
}

RoAbp roabp_load(const Json& j) {
  RoAbp A;
  A.ctx = FieldCtx::parse_spec(j.at("field").get<std::string>());
  for (const auto& v : j.at("order"))
    A.order.push_back(VarId::parse(v.get<std::string>()));
  A.nodes = j.at("nodes").get<std::vector<std::size_t>>();
  for (const auto& rows : j.at("layers")) {
    LayerMat L;
    for (const auto& row : rows) {
      std::vector<Label> r;
      for (const auto& cols : row) {
        Label lab;
        for (const auto& c : cols) lab.push_back(A.ctx->parse(c.get<std::string>()));
        r.push_back(lab);
      }
      L.push_back(r);
    }
    A.M.push_back(L);
  }
  validate(A);
  return A;
}

Json verify_report_json(const VerifyReport& r) {
  return Json{{"mode", r.mode},       {"pass", r.pass},
              {"verdict", r.verdict}, {"witness", r.witness},
              {"seed", r.seed},       {"trials", r.trials},
              {"error_bound", r.error_bound}};
}

Json oracle_report_json(const OracleReport& r) {
  return Json{{"lemma", r.lemma},       {"params", r.params},
              {"expected", r.expected}, {"computed", r.computed},
              {"pass", r.pass},         {"verdict", r.verdict},
              {"note", r.note}};
}

Json rank_report_json(const RankReport& r) {
  return Json{{"rank", r.rank},
              {"exact", r.exact},
              {"trials", r.trials},
              {"seed", r.seed},
              {"field", r.field}};
}

std::string pretty(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace ipsw
