#include "ipsw/instances.hpp"

#include <algorithm>
#include <atomic>
#include <set>

#include "ipsw/cube.hpp"
#include "ipsw/util.hpp"

namespace ipsw {

namespace {

constexpr std::size_t kPrimeCubeCap = 24;
constexpr std::size_t kRatCubeCap = 18;
constexpr std::size_t kEvalCap = 20;
constexpr std::size_t kNeighbourBitCap = 6;
constexpr std::size_t kSubsetCap = 200000;

// bit of sigma at axis position q; position iv.lo is the most significant
int ibit(std::uint64_t sigma, const Interval& iv, int q) {
  return int((sigma >> (iv.size() - 1 - (q - iv.lo))) & 1);
}

bool agrees(std::uint64_t sa, const Interval& a, std::uint64_t sb,
            const Interval& b) {
  int lo = std::max(a.lo, b.lo), hi = std::min(a.hi, b.hi);
  for (int q = lo; q <= hi; ++q)
    if (ibit(sa, a, q) != ibit(sb, b, q)) return false;
  return true;
}

}  // namespace

Fe surjection_count(unsigned m, unsigned k, const FieldCtx* ctx) {
  mpz_class acc = 0, binom;
  for (unsigned i = 0; i <= k; ++i) {
    mpz_bin_uiui(binom.get_mpz_t(), k, i);
    mpz_class pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), k - i, m);
    acc += (i % 2 == 0 ? binom : -binom) * pw;
  }
  return ctx->from_mpz(acc);
}

Poly ks_f_sigma_ij(const FieldCtx* ctx, const BlockLayout& L, int i, int j,
                   std::uint64_t sigma) {
  if (!L.is_pos(i) || L.is_pos(j))
    fail("NotBalanced", "expected a role-positive i and role-negative j");
  const Interval& A = L.A.at(i);
  const Interval& B = L.B.at(j);
  if (std::size_t(B.size()) > kNeighbourBitCap)
    fail("EnumerationTooLarge", "neighbour block above the bit cap");
  Poly prod = Poly::constant(ctx, 1);
  for (std::uint64_t sj = 0; sj < (std::uint64_t(1) << B.size()); ++sj) {
    if (!agrees(sigma, A, sj, B)) continue;
    Poly lin = Poly::constant(ctx, 1) - Poly::var(ctx, L.block_var(j, sj));
    prod = prod * lin;
  }
  return Poly::constant(ctx, 1) - prod;
}

Poly ks_f_sigma_i(const FieldCtx* ctx, const BlockLayout& L,
                  const OverlapGraph& G, int i, std::uint64_t sigma) {
  Poly prod = Poly::constant(ctx, 1);
  for (int j : G.nbr_of_pos.at(i)) prod = prod * ks_f_sigma_ij(ctx, L, i, j, sigma);
  return prod;
}

Poly ks_sigma_sum(const FieldCtx* ctx, const BlockLayout& L,
                  const OverlapGraph& G, int i) {
  const Interval& A = L.A.at(i);
  Poly acc = Poly::zero(ctx);
  for (std::uint64_t s = 0; s < (std::uint64_t(1) << A.size()); ++s)
    acc = acc + Poly::var(ctx, L.block_var(i, s)) * ks_f_sigma_i(ctx, L, G, i, s);
  return acc;
}

Poly ks_block(const FieldCtx* ctx, const BlockLayout& L, const OverlapGraph& G,
              int i, unsigned p) {
  return Poly::constant(ctx, 1) - ml_pow(ks_sigma_sum(ctx, L, G, i), p - 1);
}

namespace {

std::size_t get_input(AlgCircuit& C, std::map<VarId, std::size_t>& in,
                      const VarId& v) {
  auto it = in.find(v);
  if (it != in.end()) return it->second;
  std::size_t g = C.input(v);
  in.emplace(v, g);
  return g;
}

// sum-of-monomials gate: an Add of Muls, product-depth one
std::size_t emit_sum(AlgCircuit& C, std::map<VarId, std::size_t>& in,
                     std::size_t one_gate, const Poly& h) {
  std::vector<std::pair<std::size_t, Fe>> terms;
  for (const auto& [m, c] : h.terms()) {
    if (m.is_one()) {
      terms.emplace_back(one_gate, c);
      continue;
    }
    std::vector<std::size_t> args;
    for (const auto& [v, e] : m.factors())
      for (std::uint32_t t = 0; t < e; ++t) args.push_back(get_input(C, in, v));
    terms.emplace_back(C.mul(args), c);
  }
  return C.add(terms);
}

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] + (k - i) < n) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

void validate_partition(const Word& w, const ScatteredPartition& part) {
  BlockLayout L = derive_blocks(w);
  OverlapGraph G = overlap_graph(L);
  std::set<int> seen;
  for (const auto& ids : part.parts) {
    std::set<int> nbrs;
    for (int i : ids) {
      if (!L.is_pos(i))
        fail("NotScattered", "block " + std::to_string(i) + " is not role-positive");
      if (!seen.insert(i).second)
        fail("NotScattered", "block " + std::to_string(i) + " repeated");
      for (int j : G.nbr_of_pos.at(i))
        if (!nbrs.insert(j).second)
          fail("NotScattered",
               "part shares neighbour " + std::to_string(j) + " twice");
    }
  }
  if (seen.size() != L.pos_blocks.size())
    fail("NotScattered", "partition does not cover the role-positive blocks");
}

std::string certify_single(Instance& inst, unsigned threads) {
  const Poly& f = inst.axioms.at(0);
  std::size_t nv = f.vars().size();
  std::size_t cap = inst.ctx->kind == FieldKind::Prime    ? kPrimeCubeCap
                    : inst.ctx->kind == FieldKind::Rational ? kRatCubeCap
                                                            : kEvalCap;
  if (nv > cap) {
    inst.meta.unsat_certified = false;
    return "cube certificate skipped: " + std::to_string(nv) +
           " variables exceed the cap";
  }
  if (!never_zero_on_cube(f, threads))
    fail("BetaInImage", "axiom vanishes on the Boolean cube");
  inst.meta.unsat_certified = true;
  return "";
}

}  // namespace

bool never_zero_on_cube(const Poly& f, unsigned threads) {
  std::vector<VarId> vars = f.vars();
  std::size_t n = vars.size();
  const FieldCtx* ctx = f.ctx();
  if (ctx->kind == FieldKind::Extension) {
    if (n > kEvalCap) fail("EnumerationTooLarge", "cube too large to enumerate");
    std::atomic<bool> zero{false};
    parallel_for(std::size_t(1) << n, threads, [&](std::size_t lo, std::size_t hi) {
      std::map<VarId, Fe> asg;
      for (const VarId& v : vars) asg.emplace(v, ctx->zero());
      for (std::size_t mask = lo; mask < hi && !zero.load(); ++mask) {
        for (std::size_t i = 0; i < n; ++i)
          asg[vars[i]] = ctx->from_int(int((mask >> i) & 1));
        if (f.eval(asg).is_zero()) zero.store(true);
      }
    });
    return !zero.load();
  }
  std::size_t cap = ctx->kind == FieldKind::Prime ? kPrimeCubeCap : kRatCubeCap;
  if (n > cap) fail("EnumerationTooLarge", "cube too large to enumerate");
  Cube vals = Cube::values_of(f, vars);
  for (std::size_t mask = 0; mask < vals.size(); ++mask)
    if (vals.at(mask).is_zero()) return false;
  return true;
}

std::optional<std::map<VarId, Fe>> common_cube_root(
    const std::vector<Poly>& axioms, unsigned threads) {
  (void)threads;
  if (axioms.empty()) return std::nullopt;
  const FieldCtx* ctx = axioms.front().ctx();
  std::set<VarId> vs;
  for (const Poly& f : axioms)
    for (const VarId& v : f.vars()) vs.insert(v);
  std::vector<VarId> vars(vs.begin(), vs.end());
  if (vars.size() > kPrimeCubeCap)
    fail("EnumerationTooLarge", "cube too large to enumerate");
  if (ctx->kind != FieldKind::Extension) {
    std::vector<Cube> vals;
    for (const Poly& f : axioms) vals.push_back(Cube::values_of(f, vars));
    std::size_t total = std::size_t(1) << vars.size();
    for (std::size_t mask = 0; mask < total; ++mask) {
      bool all = true;
      for (const Cube& c : vals)
        if (!c.at(mask).is_zero()) {
          all = false;
          break;
        }
      if (all) {
        std::map<VarId, Fe> asg;
        for (std::size_t i = 0; i < vars.size(); ++i)
          asg.emplace(vars[i], ctx->from_int(int((mask >> i) & 1)));
        return asg;
      }
    }
    return std::nullopt;
  }
  std::size_t total = std::size_t(1) << vars.size();
  for (std::size_t mask = 0; mask < total; ++mask) {
    std::map<VarId, Fe> asg;
    for (std::size_t i = 0; i < vars.size(); ++i)
      asg.emplace(vars[i], ctx->from_int(int((mask >> i) & 1)));
    bool all = true;
    for (const Poly& f : axioms)
      if (!f.eval(asg).is_zero()) {
        all = false;
        break;
      }
    if (all) return asg;
  }
  return std::nullopt;
}

KsInstance ks_modp(const Word& w, unsigned p,
                   std::optional<ScatteredPartition> part_opt,
                   std::optional<Fe> beta_opt, unsigned threads) {
  if (!is_prime_u32(p)) fail("NotPrime", std::to_string(p) + " is not prime");
  const FieldCtx* ctx = FieldCtx::prime(p);
  BlockLayout L = derive_blocks(w);
  OverlapGraph G = overlap_graph(L);
  ScatteredPartition part = part_opt ? *part_opt : scattered_partition(w);
  if (part_opt) {
    if (!is_balanced(w)) fail("NotBalanced", "word " + w.str() + " is not balanced");
    validate_partition(w, part);
  }
  int r = part.r();
  if (unsigned(r) >= p)
    fail("FieldTooSmall", "partition size r=" + std::to_string(r) +
                              " needs a prime above it");
  Fe beta = beta_opt ? *beta_opt : ctx->from_int(r + 1);
  for (int k = 0; k <= r; ++k)
    if (beta == ctx->from_int(k))
      fail("BetaInRange", "beta collides with " + std::to_string(k) +
                              " in {0..r}; r+2 <= p is needed for the default");

  std::map<int, Poly> ksb;
  for (int i : L.pos_blocks) ksb.emplace(i, ks_block(ctx, L, G, i, p));

  Poly poly = Poly::zero(ctx);
  for (const auto& ids : part.parts) {
    Poly prod = Poly::constant(ctx, 1);
    for (int i : ids) prod = prod * ksb.at(i);
    poly = poly + prod;
  }
  poly = poly - Poly::constant(beta);

  // product-depth-3 multilinear formula
  AlgCircuit C(ctx);
  std::map<VarId, std::size_t> in;
  std::size_t one_gate = C.scalar(ctx->one());
  std::map<int, std::size_t> ks_gate;
  for (int i : L.pos_blocks) {
    const Interval& A = L.A.at(i);
    std::size_t nsig = std::size_t(1) << A.size();
    std::vector<Poly> fml;
    std::vector<std::size_t> xg;
    for (std::uint64_t s = 0; s < nsig; ++s) {
      fml.push_back(ks_f_sigma_i(ctx, L, G, i, s));
      xg.push_back(get_input(C, in, L.block_var(i, s)));
    }
    std::vector<std::pair<std::size_t, Fe>> terms{{one_gate, ctx->one()}};
    std::size_t budget = 0;
    for (std::size_t k = 1; k <= std::min<std::size_t>(p - 1, nsig); ++k) {
      Fe cnt = surjection_count(p - 1, unsigned(k), ctx);
      if (cnt.is_zero()) continue;
      std::vector<std::size_t> U(k);
      for (std::size_t t = 0; t < k; ++t) U[t] = t;
      do {
        if (++budget > kSubsetCap)
          fail("EnumerationTooLarge", "support subsets above the formula cap");
        Poly h = fml[U[0]];
        for (std::size_t t = 1; t < k; ++t) h = ml(h * fml[U[t]]);
        h = ml(h);
        if (h.terms().empty()) continue;
        std::vector<std::size_t> args;
        for (std::size_t t : U) args.push_back(xg[t]);
        args.push_back(emit_sum(C, in, one_gate, h));
        terms.emplace_back(C.mul(args), ctx->neg(cnt));
      } while (next_combination(U, nsig));
    }
    ks_gate[i] = C.add(terms);
  }
  std::vector<std::pair<std::size_t, Fe>> top;
  for (const auto& ids : part.parts) {
    if (ids.size() == 1) {
      top.emplace_back(ks_gate[ids[0]], ctx->one());
      continue;
    }
    std::vector<std::size_t> args;
    for (int i : ids) args.push_back(ks_gate[i]);
    top.emplace_back(C.mul(args), ctx->one());
  }
  top.emplace_back(one_gate, ctx->neg(beta));
  C.out = C.add(top);

  Instance inst;
  inst.ctx = ctx;
  inst.axioms = {poly};
  inst.meta.generator = "ks_modp";
  inst.meta.field = ctx->spec();
  inst.meta.word = w.str();
  inst.meta.beta = beta.str();
  inst.meta.p = p;
  inst.meta.n = w.total_vars();
  std::string note = certify_single(inst, threads);

  int b = w.bound();
  std::uint64_t bound =
      std::uint64_t(p) * w.length() * b * (std::uint64_t(1) << b);
  if (poly.degree() > 0 && std::uint64_t(poly.degree()) > bound)
    note += (note.empty() ? "" : "; ") + std::string("degree bound violated: deg ") +
            std::to_string(poly.degree()) + " > " + std::to_string(bound);
  inst.meta.note = note;

  CircuitForm form(std::move(C));
  form.total_degree = poly.degree();
  return KsInstance{std::move(inst), std::move(form), std::move(part), beta, r};
}

KsInstance ks_sym_e2(const Word& w, unsigned q, std::optional<Fe> beta_opt,
                     unsigned threads) {
  if (!is_prime_u32(q)) fail("NotPrime", std::to_string(q) + " is not prime");
  if (q < 3) fail("FieldTooSmall", "need q = p >= 3");
  if (!is_balanced(w)) fail("NotBalanced", "word " + w.str() + " is not balanced");
  const FieldCtx* ctx = FieldCtx::prime(q);
  BlockLayout L = derive_blocks(w);
  OverlapGraph G = overlap_graph(L);

  struct Item {
    VarId x;
    Poly f;
  };
  std::vector<Item> items;
  std::vector<Poly> products;
  for (int i : L.pos_blocks) {
    const Interval& A = L.A.at(i);
    for (std::uint64_t s = 0; s < (std::uint64_t(1) << A.size()); ++s) {
      Item it{L.block_var(i, s), ks_f_sigma_i(ctx, L, G, i, s)};
      products.push_back(Poly::var(ctx, it.x) * it.f);
      items.push_back(std::move(it));
    }
  }
  Poly e2 = ml(e_sym_of(2, products, ctx));

  std::size_t nvars = e2.vars().size();
  Fe beta = ctx->zero();
  bool unverified = false;
  if (beta_opt) {
    beta = *beta_opt;
  } else if (w.total_vars() <= kPrimeCubeCap) {
    std::vector<Fe> image = boolean_image(e2);
    bool found = false;
    for (unsigned k = 0; k < q && !found; ++k) {
      Fe cand = ctx->from_int(k);
      if (!image_contains(image, cand)) {
        beta = cand;
        found = true;
      }
    }
    if (!found) fail("NoValidBeta", "e2 image covers the whole field");
  } else {
    // attainable values of binom(k,2) mod p, by the Lucas reduction
    std::vector<Fe> attain;
    for (unsigned j = 0; j < q; ++j)
      attain.push_back(ctx->from_int(int(std::uint64_t(j) * (j - 1) / 2 % q)));
    bool found = false;
    for (unsigned k = 0; k < q && !found; ++k) {
      Fe cand = ctx->from_int(k);
      if (!image_contains(attain, cand)) {
        beta = cand;
        found = true;
      }
    }
    if (!found) fail("NoValidBeta", "attainable set covers the whole field");
    unverified = true;
  }
  Poly poly = e2 - Poly::constant(beta);

  // product-depth-2 multilinear formula
  AlgCircuit C(ctx);
  std::map<VarId, std::size_t> in;
  std::size_t one_gate = C.scalar(ctx->one());
  std::vector<std::pair<std::size_t, Fe>> top;
  for (std::size_t a = 0; a < items.size(); ++a)
    for (std::size_t b = a + 1; b < items.size(); ++b) {
      Poly h = ml(items[a].f * items[b].f);
      if (h.terms().empty()) continue;
      std::vector<std::size_t> args{get_input(C, in, items[a].x),
                                    get_input(C, in, items[b].x),
                                    emit_sum(C, in, one_gate, h)};
      top.emplace_back(C.mul(args), ctx->one());
    }
  top.emplace_back(one_gate, ctx->neg(beta));
  C.out = C.add(top);

  Instance inst;
  inst.ctx = ctx;
  inst.axioms = {poly};
  inst.meta.generator = "ks_sym_e2";
  inst.meta.field = ctx->spec();
  inst.meta.word = w.str();
  inst.meta.beta = beta.str();
  inst.meta.p = q;
  inst.meta.n = w.total_vars();
  inst.meta.beta_unverified = unverified;
  std::string note;
  if (!unverified) {
    note = certify_single(inst, threads);
  } else {
    inst.meta.unsat_certified = false;
    note = "beta valid by cited bound, unverified";
  }
  if (nvars <= kRatCubeCap) {
    Poly lifted = poly.lift_to(FieldCtx::rationals());
    if (!never_zero_on_cube(lifted, threads))
      fail("NoValidBeta", "rational lift vanishes on the cube");
    note += (note.empty() ? "" : "; ") + std::string("rational lift certified");
  }
  inst.meta.note = note;

  CircuitForm form(std::move(C));
  form.total_degree = poly.degree();
  return KsInstance{std::move(inst), std::move(form), ScatteredPartition{}, beta, 0};
}

Instance roabp_hard_fixed(const FieldCtx* ctx, unsigned n, unsigned threads) {
  if (ctx->finite() && ctx->q() == 2) fail("FieldTooSmall", "need q > 2");
  Poly f = Poly::constant(ctx, 1);
  for (unsigned i = 1; i <= n; ++i)
    f = f * (Poly::constant(ctx, 1) - Poly::var(ctx, VarId::plain(i)));
  f = f - Poly::constant(ctx, 2);
  Instance inst;
  inst.ctx = ctx;
  inst.axioms = {f};
  inst.meta.generator = "roabp_hard_fixed";
  inst.meta.field = ctx->spec();
  inst.meta.n = n;
  inst.meta.note = certify_single(inst, threads);
  return inst;
}

Poly lift_xy(const Poly& f) {
  std::map<VarId, Poly> sub;
  for (const VarId& v : f.vars()) {
    if (v.cls != VarId::Class::Plain)
      fail("BadSplit", "gadget lift expects plain variables");
    sub.emplace(v, Poly::var(f.ctx(), v) * Poly::var(f.ctx(), VarId::gadget_y(v.i)));
  }
  return f.subst(sub);
}

Instance roabp_hard_anyorder(const FieldCtx* ctx, unsigned n, unsigned threads) {
  if (ctx->finite() && ctx->q() == 2) fail("FieldTooSmall", "need q > 2");
  unsigned N = 2 * n;
  Poly f = Poly::constant(ctx, 1);
  for (unsigned i = 1; i <= N; ++i)
    for (unsigned j = i + 1; j <= N; ++j) {
      Poly factor = Poly::constant(ctx, 1) -
                    Poly::var(ctx, VarId::gadget_z(i, j)) *
                        Poly::var(ctx, VarId::plain(i)) *
                        Poly::var(ctx, VarId::plain(j));
      f = f * factor;
    }
  f = f - Poly::constant(ctx, 2);
  Instance inst;
  inst.ctx = ctx;
  inst.axioms = {f};
  inst.meta.generator = "roabp_hard_anyorder";
  inst.meta.field = ctx->spec();
  inst.meta.n = n;
  std::size_t nv = f.vars().size();
  std::size_t cap = ctx->kind == FieldKind::Prime      ? kPrimeCubeCap
                    : ctx->kind == FieldKind::Rational ? kRatCubeCap
                                                       : kEvalCap;
  if (nv <= cap) {
    inst.meta.note = certify_single(inst, threads);
  } else {
    inst.meta.unsat_certified = false;
    inst.meta.note = "cube certificate skipped: " + std::to_string(nv) +
                     " variables exceed the cap";
  }
  return inst;
}

Instance multiples_system(const FieldCtx* ctx, unsigned n, unsigned threads) {
  (void)threads;
  Poly f = Poly::constant(ctx, 1);
  for (unsigned i = 1; i <= n; ++i)
    for (unsigned j = i + 1; j <= n; ++j)
      f = f * (Poly::var(ctx, VarId::plain(i)) + Poly::var(ctx, VarId::plain(j)) +
               Poly::constant(ctx, 1));
  Poly g = Poly::constant(ctx, 1);
  for (unsigned i = 1; i <= n; ++i)
    g = g * (Poly::constant(ctx, 1) - Poly::var(ctx, VarId::plain(i)));
  g = g - Poly::constant(ctx, 1);

  Instance inst;
  inst.ctx = ctx;
  inst.axioms = {f, g};
  inst.meta.generator = "multiples_system";
  inst.meta.field = ctx->spec();
  inst.meta.n = n;
  if (n <= kRatCubeCap) {
    std::vector<VarId> vars;
    for (unsigned i = 1; i <= n; ++i) vars.push_back(VarId::plain(i));
    Cube gv = Cube::values_of(g, vars);
    Cube fv = Cube::values_of(f, vars);
    for (std::size_t mask = 0; mask < gv.size(); ++mask) {
      bool gz = gv.at(mask).is_zero();
      if (gz != (mask == 0))
        fail("BetaInImage", "indicator axiom has an unexpected root pattern");
      if (mask == 0 && !fv.at(mask).is_one())
        fail("BetaInImage", "target polynomial is not 1 at the all-zero point");
    }
    inst.meta.unsat_certified = true;
  } else {
    inst.meta.note = "cube certificate skipped: n exceeds the cap";
  }
  return inst;
}

Instance subset_sum(const FieldCtx* ctx, unsigned n, const Fe& beta) {
  for (unsigned k = 0; k <= n; ++k)
    if (beta == ctx->from_int(int(k)))
      fail("BetaInImage",
           "beta equals " + std::to_string(k) + " inside the image {0..n}");
  Poly f = Poly::zero(ctx);
  for (unsigned i = 1; i <= n; ++i) f = f + Poly::var(ctx, VarId::plain(i));
  f = f - Poly::constant(beta);
  Instance inst;
  inst.ctx = ctx;
  inst.axioms = {f};
  inst.meta.generator = "subset_sum";
  inst.meta.field = ctx->spec();
  inst.meta.n = n;
  inst.meta.beta = beta.str();
  inst.meta.unsat_certified = true;  // exact image argument over {0..n}
  if (ctx->finite())
    inst.meta.note = ctx->q() > n ? "char constraint p > n holds"
                                  : "char constraint p > n fails";
  return inst;
}

Instance partition_indicator(const FieldCtx* ctx,
                             const std::vector<std::vector<VarId>>& parts,
                             const Fe& beta) {
  std::set<VarId> seen;
  for (const auto& part : parts) {
    if (part.empty()) fail("BadSplit", "empty part");
    for (const VarId& v : part)
      if (!seen.insert(v).second)
        fail("BadSplit", "variable " + v.name() + " in two parts");
  }
  unsigned I = unsigned(parts.size());
  for (unsigned k = 0; k <= I; ++k)
    if (beta == ctx->from_int(int(k)))
      fail("BetaInImage",
           "beta equals " + std::to_string(k) + " inside the image {0..|I|}");
  Poly f = Poly::zero(ctx);
  for (const auto& part : parts) {
    Poly prod = Poly::constant(ctx, 1);
    for (const VarId& v : part)
      prod = prod * (Poly::constant(ctx, 1) - Poly::var(ctx, v));
    f = f + prod;
  }
  f = f - Poly::constant(beta);
  Instance inst;
  inst.ctx = ctx;
  inst.axioms = {f};
  inst.meta.generator = "partition_indicator";
  inst.meta.field = ctx->spec();
  inst.meta.n = seen.size();
  inst.meta.beta = beta.str();
  if (seen.size() <= kPrimeCubeCap && ctx->kind != FieldKind::Extension) {
    if (!never_zero_on_cube(f))
      fail("BetaInImage", "axiom vanishes on the Boolean cube");
    inst.meta.unsat_certified = true;
  } else {
    inst.meta.unsat_certified = true;
    inst.meta.note = "image argument over {0..|I|}";
  }
  return inst;
}

}  // namespace ipsw
