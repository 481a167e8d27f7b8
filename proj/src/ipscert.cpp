#include "ipsw/ipscert.hpp"

#include <algorithm>
#include <set>

#include "ipsw/util.hpp"

namespace ipsw {

VarId placeholder_y(std::size_t axiom_ix) {
  return VarId::gadget_w(1, std::uint32_t(axiom_ix));
}

VarId placeholder_z(std::size_t var_ix) {
  return VarId::gadget_w(2, std::uint32_t(var_ix));
}

std::vector<VarId> instance_vars(const Instance& inst) {
  std::set<VarId> vs;
  for (const Poly& f : inst.axioms)
    for (const VarId& v : f.vars()) vs.insert(v);
  return std::vector<VarId>(vs.begin(), vs.end());
}

std::uint64_t instance_hash(const Instance& inst) {
  std::string blob = inst.ctx->spec();
  for (const Poly& f : inst.axioms) {
    blob += '|';
    blob += f.str();
  }
  return fnv1a(blob);
}

Poly expand_with(const AlgCircuit& C, const std::map<VarId, Poly>& subs,
                 std::size_t term_cap) {
  std::vector<Poly> val(C.gates.size(), Poly::zero(C.ctx));
  for (std::size_t i = 0; i < C.gates.size(); ++i) {
    const AlgCircuit::Gate& g = C.gates[i];
    switch (g.kind) {
      case AlgCircuit::Gate::Kind::Input: {
        auto it = subs.find(g.var);
        val[i] = it != subs.end() ? it->second : Poly::var(C.ctx, g.var);
        break;
      }
      case AlgCircuit::Gate::Kind::Scalar:
        val[i] = Poly::constant(C.scalars[g.scalar_ix]);
        break;
      case AlgCircuit::Gate::Kind::Add: {
        Poly acc = Poly::zero(C.ctx);
        for (const auto& [ix, w] : g.wargs) acc = acc + val[ix].scale(C.scalars[w]);
        val[i] = std::move(acc);
        break;
      }
      case AlgCircuit::Gate::Kind::Mul: {
        Poly acc = Poly::constant(C.ctx, 1);
        for (std::size_t ix : g.args) {
          acc = acc * val[ix];
          if (acc.terms().size() > term_cap)
            fail("SizeBlowup", "expansion exceeds the term cap");
        }
        val[i] = std::move(acc);
        break;
      }
    }
    if (val[i].terms().size() > term_cap)
      fail("SizeBlowup", "expansion exceeds the term cap");
  }
  return val[C.out];
}

namespace {

// C with every axiom placeholder and Boolean placeholder substituted
Poly plug(const IpsCert& cert, const Instance& inst,
          const std::vector<Poly>& yvals,
          const std::function<Poly(const VarId&)>& zval, std::size_t term_cap) {
  const FieldCtx* ctx = inst.ctx;
  if (cert.form == IpsCert::Form::LinearComb) {
    if (yvals.size() != cert.lin.g.size())
      fail("SizeBlowup", "internal: placeholder arity mismatch");
    Poly acc = Poly::zero(ctx);
    for (std::size_t i = 0; i < yvals.size(); ++i) {
      acc = acc + yvals[i] * cert.lin.g[i];
      if (acc.terms().size() > term_cap)
        fail("SizeBlowup", "expansion exceeds the term cap");
    }
    for (const auto& [v, hv] : cert.lin.h) {
      acc = acc + zval(v) * hv;
      if (acc.terms().size() > term_cap)
        fail("SizeBlowup", "expansion exceeds the term cap");
    }
    return acc;
  }
  std::vector<VarId> vars = instance_vars(inst);
  std::map<VarId, Poly> subs;
  for (std::size_t i = 0; i < yvals.size(); ++i)
    subs.emplace(placeholder_y(i + 1), yvals[i]);
  for (std::size_t k = 0; k < vars.size(); ++k)
    subs.emplace(placeholder_z(k + 1), zval(vars[k]));
  return expand_with(*cert.circuit, subs, term_cap);
}

Poly boolean_axiom(const FieldCtx* ctx, const VarId& v) {
  Poly x = Poly::var(ctx, v);
  return x * x - x;
}

long long poly_deg(const Poly& f) {
  int d = f.degree();
  return d == kDegMinusInf ? 0 : d;
}

// structural total-degree bound of the certificate with y_i carrying the
// axiom degrees and z carrying 2
long long cert_degree_bound(const IpsCert& cert, const Instance& inst) {
  if (cert.form == IpsCert::Form::LinearComb) {
    long long d = 0;
    for (std::size_t i = 0; i < cert.lin.g.size(); ++i)
      d = std::max(d, poly_deg(cert.lin.g[i]) +
                          (i < inst.axioms.size() ? poly_deg(inst.axioms[i]) : 0));
    for (const auto& [v, hv] : cert.lin.h) d = std::max(d, poly_deg(hv) + 2);
    return d;
  }
  std::vector<VarId> vars = instance_vars(inst);
  std::map<VarId, long long> indeg;
  for (std::size_t i = 0; i < inst.axioms.size(); ++i)
    indeg[placeholder_y(i + 1)] = poly_deg(inst.axioms[i]);
  for (std::size_t k = 0; k < vars.size(); ++k) indeg[placeholder_z(k + 1)] = 2;
  const AlgCircuit& C = *cert.circuit;
  std::vector<long long> d(C.gates.size(), 0);
  for (std::size_t i = 0; i < C.gates.size(); ++i) {
    const AlgCircuit::Gate& g = C.gates[i];
    switch (g.kind) {
      case AlgCircuit::Gate::Kind::Input: {
        auto it = indeg.find(g.var);
        d[i] = it != indeg.end() ? it->second : 1;
        break;
      }
      case AlgCircuit::Gate::Kind::Scalar:
        d[i] = 0;
        break;
      case AlgCircuit::Gate::Kind::Add:
        for (const auto& [ix, w] : g.wargs) d[i] = std::max(d[i], d[ix]);
        break;
      case AlgCircuit::Gate::Kind::Mul:
        for (std::size_t ix : g.args) d[i] += d[ix];
        break;
    }
  }
  return d[C.out];
}

AlgCircuit lift_circuit(const AlgCircuit& C, const FieldCtx* to) {
  AlgCircuit L = C;
  L.ctx = to;
  for (Fe& s : L.scalars) s = to->lift(s);
  return L;
}

std::string bound_str(long long deg, std::uint64_t points, unsigned trials) {
  return "(" + std::to_string(deg) + "/" + std::to_string(points) + ")^" +
         std::to_string(trials);
}

}  // namespace

VerifyReport verify_lin(const IpsCert& cert, const Instance& inst,
                        std::size_t term_cap) {
  VerifyReport rep;
  rep.mode = "exact";
  if (cert.form != IpsCert::Form::LinearComb) {
    rep.verdict = "failed";
    rep.witness = "certificate is not in linear-combination form";
    return rep;
  }
  if (cert.lin.g.size() != inst.axioms.size()) {
    rep.verdict = "failed";
    rep.witness = "multiplier count does not match the axiom count";
    return rep;
  }
  Poly acc = plug(cert, inst, inst.axioms,
                  [&](const VarId& v) { return boolean_axiom(inst.ctx, v); },
                  term_cap);
  Poly diff = acc - Poly::constant(inst.ctx, 1);
  if (diff.terms().empty()) {
    rep.pass = true;
    rep.verdict = "verified";
  } else {
    rep.verdict = "failed";
    rep.witness = "residual leading term " + diff.leading_monomial().str() +
                  " with coefficient " + diff.leading_coeff().str();
  }
  return rep;
}

namespace {

VerifyReport verify_sz_common(const IpsCert& cert, const Instance& inst,
                              unsigned trials, unsigned ext_k,
                              std::uint64_t seed, unsigned threads,
                              bool check_zero_cond) {
  VerifyReport rep;
  rep.mode = "randomized";
  rep.seed = seed;
  rep.trials = trials == 0 ? 1 : trials;
  const FieldCtx* base = inst.ctx;
  long long D = cert_degree_bound(cert, inst);
  for (const Poly& f : inst.axioms) D = std::max(D, poly_deg(f));
  const FieldCtx* ctx = base;
  std::uint64_t npoints;
  if (base->finite()) {
    if (base->kind == FieldKind::Extension)
      fail("DegreeExceedsSampleSpace", "extension base contexts not sampled");
    if (ext_k < 1) ext_k = 1;
    ctx = FieldCtx::ext_build(unsigned(base->p), ext_k);
    npoints = ctx->q();
    if ((long long)npoints <= D)
      fail("DegreeExceedsSampleSpace",
           "sample space " + std::to_string(npoints) + " <= degree bound " +
               std::to_string(D) + "; request larger k");
  } else {
    npoints = std::uint64_t(2 * D) + 2;
  }
  rep.error_bound = bound_str(D, npoints, rep.trials);

  std::vector<VarId> vars = instance_vars(inst);
  std::set<VarId> vs(vars.begin(), vars.end());
  if (cert.form == IpsCert::Form::LinearComb) {
    for (const Poly& g : cert.lin.g)
      for (const VarId& v : g.vars()) vs.insert(v);
    for (const auto& [v, hv] : cert.lin.h) {
      vs.insert(v);
      for (const VarId& u : hv.vars()) vs.insert(u);
    }
  } else {
    for (const auto& g : cert.circuit->gates)
      if (g.kind == AlgCircuit::Gate::Kind::Input &&
          g.var.cls != VarId::Class::Gadget)
        vs.insert(g.var);
  }
  std::vector<VarId> allv(vs.begin(), vs.end());

  std::vector<Poly> axioms_l;
  for (const Poly& f : inst.axioms) axioms_l.push_back(f.lift_to(ctx));
  std::vector<Poly> g_l;
  std::map<VarId, Poly> h_l;
  AlgCircuit circ_l(ctx);
  if (cert.form == IpsCert::Form::LinearComb) {
    for (const Poly& g : cert.lin.g) g_l.push_back(g.lift_to(ctx));
    for (const auto& [v, hv] : cert.lin.h) h_l.emplace(v, hv.lift_to(ctx));
  } else {
    circ_l = lift_circuit(*cert.circuit, ctx);
  }

  std::vector<std::string> bad(rep.trials);
  parallel_for(rep.trials, threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t t = lo; t < hi; ++t) {
      Rng rng(derive_seed(seed, t));
      std::map<VarId, Fe> alpha;
      for (const VarId& v : allv)
        alpha.emplace(v, ctx->sample_point(rng_below(rng, npoints)));
      std::vector<Fe> fvals;
      for (const Poly& f : axioms_l) fvals.push_back(f.eval(alpha));
      Fe got = ctx->zero();
      Fe zero_side = ctx->zero();
      if (cert.form == IpsCert::Form::LinearComb) {
        Fe acc = ctx->zero();
        for (std::size_t i = 0; i < g_l.size(); ++i)
          acc = acc + g_l[i].eval(alpha) * fvals[i];
        for (const auto& [v, hv] : h_l) {
          Fe a = alpha.at(v);
          acc = acc + hv.eval(alpha) * (a * a - a);
        }
        got = acc;
      } else {
        std::map<VarId, Fe> asg = alpha;
        for (std::size_t i = 0; i < fvals.size(); ++i)
          asg.emplace(placeholder_y(i + 1), fvals[i]);
        for (std::size_t k = 0; k < vars.size(); ++k) {
          Fe a = alpha.at(vars[k]);
          asg.emplace(placeholder_z(k + 1), a * a - a);
        }
        got = circ_l.eval(asg);
        if (check_zero_cond) {
          std::map<VarId, Fe> asg0 = alpha;
          for (std::size_t i = 0; i < fvals.size(); ++i)
            asg0.emplace(placeholder_y(i + 1), ctx->zero());
          for (std::size_t k = 0; k < vars.size(); ++k)
            asg0.emplace(placeholder_z(k + 1), ctx->zero());
          zero_side = circ_l.eval(asg0);
        }
      }
      if (!got.is_one())
        bad[t] = "trial " + std::to_string(t) + ": identity value " + got.str();
      else if (check_zero_cond && cert.form == IpsCert::Form::PlaceholderCircuit &&
               !zero_side.is_zero())
        bad[t] = "trial " + std::to_string(t) + ": zero condition value " +
                 zero_side.str();
    }
  });
  for (const std::string& b : bad)
    if (!b.empty()) {
      rep.verdict = "failed";
      rep.witness = b;
      return rep;
    }
  rep.pass = true;
  rep.verdict = "probabilistic pass";
  return rep;
}

}  // namespace

VerifyReport verify_lin_sz(const IpsCert& cert, const Instance& inst,
                           unsigned trials, unsigned ext_k, std::uint64_t seed,
                           unsigned threads) {
  if (cert.form != IpsCert::Form::LinearComb) {
    VerifyReport rep;
    rep.mode = "randomized";
    rep.verdict = "failed";
    rep.witness = "certificate is not in linear-combination form";
    return rep;
  }
  if (cert.lin.g.size() != inst.axioms.size()) {
    VerifyReport rep;
    rep.mode = "randomized";
    rep.verdict = "failed";
    rep.witness = "multiplier count does not match the axiom count";
    return rep;
  }
  return verify_sz_common(cert, inst, trials, ext_k, seed, threads, false);
}

VerifyReport verify_ips_circuit(const IpsCert& cert, const Instance& inst,
                                std::size_t term_cap) {
  VerifyReport rep;
  rep.mode = "exact";
  std::size_t ax = inst.axioms.size();
  if (cert.form == IpsCert::Form::PlaceholderCircuit) {
    // arity check: every gadget input must be a known placeholder
    std::vector<VarId> vars = instance_vars(inst);
    for (const auto& g : cert.circuit->gates) {
      if (g.kind != AlgCircuit::Gate::Kind::Input) continue;
      const VarId& v = g.var;
      if (v.cls != VarId::Class::Gadget || v.gkind != VarId::GKind::W) continue;
      bool ok = (v.i == 1 && v.j >= 1 && v.j <= ax) ||
                (v.i == 2 && v.j >= 1 && v.j <= vars.size());
      if (!ok) {
        rep.verdict = "failed";
        rep.witness = "placeholder " + v.name() + " is out of arity";
        return rep;
      }
    }
  }
  std::vector<Poly> zeros(ax, Poly::zero(inst.ctx));
  Poly cond1 = plug(cert, inst, zeros,
                    [&](const VarId&) { return Poly::zero(inst.ctx); }, term_cap);
  if (!cond1.terms().empty()) {
    rep.verdict = "failed";
    rep.witness = "C(x,0,0) is nonzero: leading term " +
                  cond1.leading_monomial().str();
    return rep;
  }
  Poly cond2 = plug(cert, inst, inst.axioms,
                    [&](const VarId& v) { return boolean_axiom(inst.ctx, v); },
                    term_cap);
  Poly diff = cond2 - Poly::constant(inst.ctx, 1);
  if (!diff.terms().empty()) {
    rep.verdict = "failed";
    rep.witness = "C(x,f,x^2-x) - 1 has leading term " +
                  diff.leading_monomial().str();
    return rep;
  }
  rep.pass = true;
  rep.verdict = "verified";
  return rep;
}

VerifyReport verify_ips_circuit_sz(const IpsCert& cert, const Instance& inst,
                                   unsigned trials, unsigned ext_k,
                                   std::uint64_t seed, unsigned threads) {
  return verify_sz_common(cert, inst, trials, ext_k, seed, threads, true);
}

IpsFlags check_flags(const IpsCert& cert, const Instance& inst,
                     std::size_t term_cap) {
  Poly full = Poly::zero(inst.ctx);
  std::vector<VarId> vars = instance_vars(inst);
  if (cert.form == IpsCert::Form::LinearComb) {
    for (std::size_t i = 0; i < cert.lin.g.size(); ++i)
      full = full + Poly::var(inst.ctx, placeholder_y(i + 1)) * cert.lin.g[i];
    std::map<VarId, std::size_t> zpos;
    for (std::size_t k = 0; k < vars.size(); ++k) zpos.emplace(vars[k], k + 1);
    std::size_t extra = vars.size();
    for (const auto& [v, hv] : cert.lin.h) {
      auto it = zpos.find(v);
      std::size_t ix = it != zpos.end() ? it->second : ++extra;
      full = full + Poly::var(inst.ctx, placeholder_z(ix)) * hv;
    }
  } else {
    try {
      full = expand_with(*cert.circuit, {}, term_cap);
    } catch (const Error& e) {
      if (std::string(e.kind()) == "SizeBlowup")
        fail("TooLarge", "certificate too large to expand for flag checks");
      throw;
    }
  }
  IpsFlags flags;
  flags.linear_in_y = true;
  flags.linear_in_yz = true;
  std::map<VarId, Poly> zkill;
  for (const VarId& v : full.vars()) {
    if (v.cls != VarId::Class::Gadget || v.gkind != VarId::GKind::W) continue;
    if (v.i == 1 && full.ideg(v) > 1) flags.linear_in_y = false;
    if ((v.i == 1 || v.i == 2) && full.ideg(v) > 1) flags.linear_in_yz = false;
    if (v.i == 2) zkill.emplace(v, Poly::zero(inst.ctx));
  }
  Poly at_z0 = full.subst(zkill);
  flags.multilinear_in_xy = at_z0.is_multilinear();
  return flags;
}

IpsCert fermat_refute(const Instance& inst, unsigned p) {
  if (inst.axioms.size() != 1)
    fail("TooLarge", "refutation construction expects a single axiom");
  if (inst.ctx->kind != FieldKind::Prime || inst.ctx->p != p)
    fail("NotPrime", "instance field is not F_p for the given p");
  const Poly& F = inst.axioms[0];
  if (!never_zero_on_cube(F))
    fail("HasBooleanRoot", "axiom vanishes somewhere on the cube");
  Poly g = ml_pow(F, p - 2);
  BoolReduction br = bool_reduce(g * F);
  Poly rem1 = br.remainder - Poly::constant(inst.ctx, 1);
  if (!rem1.terms().empty())
    fail("HasBooleanRoot", "internal: reduced product is not the constant 1");
  IpsCert cert;
  cert.form = IpsCert::Form::LinearComb;
  cert.lin.g = {g};
  Fe minus1 = inst.ctx->neg(inst.ctx->one());
  for (const auto& [v, q] : br.quotients) {
    Poly nq = q.scale(minus1);
    if (!nq.terms().empty()) cert.lin.h.emplace(v, std::move(nq));
  }
  cert.instance_hash = instance_hash(inst);
  cert.flags = check_flags(cert, inst);
  return cert;
}

bool functional_inverse_check(const Poly& g, const Poly& F) {
  Poly rem = bool_reduce(g * F).remainder - Poly::constant(g.ctx(), 1);
  return rem.terms().empty();
}

std::optional<Poly> divide_exact(const Poly& M, const Poly& divisor) {
  if (divisor.terms().empty()) fail("ZeroPolynomial", "division by zero");
  Poly q = Poly::zero(M.ctx()), r = M;
  Monomial dl = divisor.leading_monomial();
  Fe dinv = ff_inv(divisor.leading_coeff());
  while (!r.terms().empty()) {
    Monomial rl = r.leading_monomial();
    auto t = rl.divide(dl);
    if (!t) return std::nullopt;
    Fe c = r.leading_coeff() * dinv;
    Poly piece = Poly::zero(M.ctx());
    piece.add_term(*t, c);
    q = q + piece;
    r = r - piece * divisor;
  }
  return q;
}

MultipleExtract extract_multiple(const IpsCert& cert, const Instance& inst,
                                 const Poly& f, const Poly& g,
                                 std::optional<std::uint64_t> roabp_width) {
  if (inst.axioms.size() != 2)
    fail("NotAMultiple", "expected the two-axiom multiples system");
  std::vector<Poly> yvals{Poly::zero(inst.ctx), g};
  Poly plugged = plug(cert, inst, yvals,
                      [&](const VarId& v) { return boolean_axiom(inst.ctx, v); },
                      2000000);
  Poly M = Poly::constant(inst.ctx, 1) - plugged;
  if (M.terms().empty()) fail("ZeroMultiple", "extracted polynomial is zero");

  MultipleExtract out{M, Poly::zero(inst.ctx), false, ""};
  unsigned n = unsigned(inst.meta.n);
  Poly q = M;
  bool ok = true;
  for (unsigned i = 1; i <= n && ok; ++i)
    for (unsigned j = i + 1; j <= n && ok; ++j) {
      Poly lin = Poly::var(inst.ctx, VarId::plain(i)) +
                 Poly::var(inst.ctx, VarId::plain(j)) +
                 Poly::constant(inst.ctx, 1);
      auto d = divide_exact(q, lin);
      if (!d) {
        ok = false;
        break;
      }
      q = *d;
    }
  out.divisible = ok;
  if (ok) out.quotient = q;
  if (roabp_width)
    out.width_note = "certificate roABP width " + std::to_string(*roabp_width) +
                     ": the multiple admits a read-twice oblivious ABP of size "
                     "poly(" +
                     std::to_string(*roabp_width) + ", " + std::to_string(n) +
                     "); metadata only";
  else
    out.width_note =
        "a width-s certificate roABP yields a poly(s, n) read-twice oblivious "
        "ABP for the multiple; metadata only";
  (void)f;
  return out;
}

}  // namespace ipsw
