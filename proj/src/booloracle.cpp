#include "ipsw/booloracle.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <gmpxx.h>

#include "ipsw/dims.hpp"
#include "ipsw/util.hpp"

namespace ipsw {

namespace {

Fe fe_binom(const FieldCtx* ctx, unsigned long n, unsigned long k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return ctx->from_mpz(b);
}

bool is_prime_u(unsigned p) {
  mpz_class t(p);
  return mpz_probab_prime_p(t.get_mpz_t(), 40) != 0;
}

std::vector<VarId> plain_vars(unsigned n) {
  std::vector<VarId> vs;
  for (unsigned i = 1; i <= n; ++i) vs.push_back(VarId::plain(i));
  return vs;
}

Poly indicator_psi(const FieldCtx* ctx, const std::vector<unsigned>& block) {
  Poly acc = Poly::constant(ctx, 1);
  for (unsigned ix : block)
    acc = acc * (Poly::constant(ctx, 1) - Poly::var(ctx, VarId::plain(ix)));
  return acc;
}

Poly xor_psi(const FieldCtx* ctx, const std::vector<unsigned>& block) {
  Poly acc = Poly::zero(ctx);
  for (unsigned ix : block) {
    Poly x = Poly::var(ctx, VarId::plain(ix));
    acc = acc + x - (acc * x).scale(ctx->from_int(2));
  }
  return acc;
}

void check_partition(const std::vector<std::vector<unsigned>>& parts,
                     unsigned n) {
  std::set<unsigned> seen;
  for (const auto& blk : parts) {
    if (blk.empty()) fail("ConstraintViolated", "empty block in the partition");
    for (unsigned ix : blk) {
      if (ix < 1 || ix > n)
        fail("ConstraintViolated", "partition index out of range");
      if (!seen.insert(ix).second)
        fail("ConstraintViolated", "partition index repeated");
    }
  }
  if (seen.size() != n)
    fail("ConstraintViolated", "partition does not cover all variables");
}

std::string parts_str(const std::vector<std::vector<unsigned>>& parts) {
  std::string s = "{";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ",";
    s += "{";
    for (std::size_t j = 0; j < parts[i].size(); ++j) {
      if (j) s += ",";
      s += std::to_string(parts[i][j]);
    }
    s += "}";
  }
  return s + "}";
}

bool fe_eq(const Fe& a, const Fe& b) { return (a - b).is_zero(); }

}  // namespace

OracleReport deg_check(const std::string& lemma, const DegCheckParams& P,
                       const OracleCaps& caps) {
  const FieldCtx* ctx = P.ctx;
  OracleReport rep;
  rep.lemma = "deg-check/" + lemma;
  if (P.n > caps.interp_n)
    fail("ConstraintViolated", "n exceeds the interpolation cap");
  Fe beta = ctx->parse(P.beta);
  rep.params = "field=" + ctx->spec() + ";n=" + std::to_string(P.n) +
               ";beta=" + P.beta;
  Poly F = Poly::zero(ctx);
  if (lemma == "subset-sum") {
    if (ctx->finite() && ctx->p <= P.n)
      fail("ConstraintViolated", "characteristic must exceed n");
    for (unsigned j = 0; j <= P.n; ++j)
      if (fe_eq(beta, ctx->from_int(long(j))))
        fail("ConstraintViolated", "beta lies in {0..n}");
    for (unsigned i = 1; i <= P.n; ++i)
      F = F + Poly::var(ctx, VarId::plain(i));
    F = F - Poly::constant(beta);
  } else if (lemma == "general-psi" || lemma == "partition") {
    check_partition(P.parts, P.n);
    unsigned blocks = unsigned(P.parts.size());
    if (ctx->finite() && ctx->p <= blocks)
      fail("ConstraintViolated", "characteristic must exceed the block count");
    for (unsigned j = 0; j <= blocks; ++j)
      if (fe_eq(beta, ctx->from_int(long(j))))
        fail("ConstraintViolated", "beta lies in {0..|I|}");
    bool use_xor = lemma == "general-psi" && P.psi == "xor";
    for (const auto& blk : P.parts) {
      Poly psi = use_xor ? xor_psi(ctx, blk) : indicator_psi(ctx, blk);
      if (psi.degree() != int(blk.size()))
        fail("ConstraintViolated", "psi block lost full degree");
      F = F + psi;
    }
    F = F - Poly::constant(beta);
    rep.params += ";parts=" + parts_str(P.parts);
    if (lemma == "general-psi") rep.params += ";psi=" + (use_xor ? std::string("xor") : std::string("indicator"));
  } else if (lemma == "e2-char0") {
    if (ctx->finite())
      fail("ConstraintViolated", "lemma requires characteristic zero");
    if (P.n < 2) fail("ConstraintViolated", "lemma requires n > 1");
    for (unsigned wgt = 0; wgt <= P.n; ++wgt)
      if (fe_eq(beta, fe_binom(ctx, wgt, 2)))
        fail("ConstraintViolated",
             "beta is attained by e_2 at Hamming weight " + std::to_string(wgt));
    F = e_sym(2, plain_vars(P.n), ctx) - Poly::constant(beta);
  } else {
    fail("ConstraintViolated", "unknown lemma " + lemma);
  }
  Poly f = ml_inverse(F, caps.interp_n);
  rep.expected = "deg " + std::to_string(P.n);
  rep.computed = "deg " + std::to_string(f.degree());
  rep.pass = f.degree() == int(P.n);
  rep.verdict = rep.pass ? "pass" : "fail";
  if (lemma == "e2-char0") {
    Monomial top;
    for (const VarId& v : plain_vars(P.n)) top = top * Monomial::var(v);
    rep.note = "leading coefficient " + f.coeff(top).str();
  }
  return rep;
}

OracleReport leadcoef_identities(unsigned k, const std::string& beta_s) {
  const FieldCtx* ctx = FieldCtx::rationals();
  Fe beta = ctx->parse(beta_s);
  for (unsigned j = 0; j <= k; ++j)
    if (fe_eq(beta, ctx->from_int(long(j))))
      fail("BetaPole", "beta hits the pole at " + std::to_string(j));
  Fe lhs = ctx->zero();
  for (unsigned j = 0; j <= k; ++j) {
    Fe term = fe_binom(ctx, k, j) * ff_inv(ctx->from_int(long(j)) - beta);
    if ((k - j) % 2) term = ctx->neg(term);
    lhs = lhs + term;
  }
  mpz_class fac;
  mpz_fac_ui(fac.get_mpz_t(), k);
  Fe denom = ctx->one();
  for (unsigned j = 0; j <= k; ++j)
    denom = denom * (beta - ctx->from_int(long(j)));
  Fe rhs = ctx->neg(ctx->from_mpz(fac) * ff_inv(denom));

  OracleReport rep;
  rep.lemma = "leadcoef-identity";
  rep.params = "k=" + std::to_string(k) + ";beta=" + beta_s;
  rep.expected = rhs.str();
  rep.computed = lhs.str();
  rep.pass = fe_eq(lhs, rhs);
  rep.verdict = rep.pass ? "pass" : "fail";
  return rep;
}

unsigned lucas_digits(std::uint64_t m, std::uint64_t n, unsigned p) {
  std::uint64_t r = 1;
  while ((m || n) && r) {
    std::uint64_t md = m % p, nd = n % p;
    if (nd > md) return 0;
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), (unsigned long)md, (unsigned long)nd);
    mpz_class bm = b % p;
    r = (r * bm.get_ui()) % p;
    m /= p;
    n /= p;
  }
  return unsigned(r);
}

LucasResult lucas(std::uint64_t m, std::uint64_t n, unsigned p) {
  if (!is_prime_u(p)) fail("NotPrime", std::to_string(p) + " is not prime");
  unsigned digits = lucas_digits(m, n, p);
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), (unsigned long)m, (unsigned long)n);
  mpz_class exact = b % p;
  LucasResult res;
  res.residue = digits;
  res.report.lemma = "lucas";
  res.report.params = "m=" + std::to_string(m) + ";n=" + std::to_string(n) +
                      ";p=" + std::to_string(p);
  res.report.expected = exact.get_str();
  res.report.computed = std::to_string(digits);
  res.report.pass = exact == digits;
  res.report.verdict = res.report.pass ? "pass" : "fail";
  return res;
}

OracleReport lucas_grid(std::uint64_t cap, const std::vector<unsigned>& primes) {
  std::uint64_t checked = 0, agreed = 0;
  for (unsigned p : primes) {
    if (!is_prime_u(p)) fail("NotPrime", std::to_string(p) + " is not prime");
    for (std::uint64_t m = 0; m <= cap; ++m)
      for (std::uint64_t n = 0; n <= cap; ++n) {
        mpz_class b;
        mpz_bin_uiui(b.get_mpz_t(), (unsigned long)m, (unsigned long)n);
        mpz_class exact = b % p;
        ++checked;
        if (exact == lucas_digits(m, n, p)) ++agreed;
      }
  }
  OracleReport rep;
  rep.lemma = "lucas-grid";
  rep.params = "cap=" + std::to_string(cap) + ";primes=" +
               std::to_string(primes.size());
  rep.expected = std::to_string(checked) + " agreements";
  rep.computed = std::to_string(agreed) + " agreements";
  rep.pass = checked == agreed;
  rep.verdict = rep.pass ? "pass" : "fail";
  return rep;
}

OracleReport sym_image(unsigned d, unsigned n, unsigned p) {
  if (!is_prime_u(p)) fail("NotPrime", std::to_string(p) + " is not prime");
  std::set<unsigned long> image;
  for (unsigned wgt = 0; wgt <= n; ++wgt) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), wgt, d);
    mpz_class r = b % p;
    image.insert(r.get_ui());
  }
  mpz_class bound = 1;
  unsigned nonzero_digits = 0, last_digit = 0;
  for (unsigned t = d; t > 0; t /= p) {
    unsigned digit = t % p;
    if (digit == 0) continue;
    ++nonzero_digits;
    last_digit = digit;
    bound *= p - digit;
  }
  bound += 1;

  OracleReport rep;
  rep.lemma = "sym-image";
  rep.params = "d=" + std::to_string(d) + ";n=" + std::to_string(n) +
               ";p=" + std::to_string(p);
  rep.expected = "|image| <= " + bound.get_str();
  rep.computed = "|image| = " + std::to_string(image.size());
  rep.pass = mpz_class(image.size()) <= bound;
  if (nonzero_digits == 1 && last_digit >= 2) {
    rep.note = "single nonzero digit >= 2: a missing value is guaranteed";
    // the guarantee is part of the statement; a full-image counterexample fails
    if (image.size() >= p) rep.pass = false;
  }
  rep.verdict = rep.pass ? "pass" : "fail";
  if (image.size() < p) {
    for (unsigned long v = 0; v < p; ++v)
      if (!image.count(v)) {
        if (!rep.note.empty()) rep.note += "; ";
        rep.note += "beta=" + std::to_string(v) + " lies outside the image";
        break;
      }
  } else {
    if (!rep.note.empty()) rep.note += "; ";
    rep.note += "image covers the whole field";
  }
  return rep;
}

OracleReport el_ed_identity(unsigned l, unsigned d, unsigned n,
                            const FieldCtx* ctx) {
  if (!(n >= l && l >= d))
    fail("ConstraintViolated", "requires n >= l >= d >= 0");
  std::vector<VarId> vars = plain_vars(n);
  Poly lhs = ml(e_sym(l, vars, ctx) * e_sym(d, vars, ctx));
  unsigned k = l + d > n ? l + d - n : 0;
  Poly rhs = Poly::zero(ctx);
  for (unsigned i = k; i <= d; ++i) {
    Fe c = fe_binom(ctx, l + d - i, l) * fe_binom(ctx, l, i);
    rhs = rhs + e_sym(l + d - i, vars, ctx).scale(c);
  }
  OracleReport rep;
  rep.lemma = "el-ed-identity";
  rep.params = "l=" + std::to_string(l) + ";d=" + std::to_string(d) +
               ";n=" + std::to_string(n) + ";field=" + ctx->spec();
  rep.expected = rhs.str();
  rep.computed = lhs.str();
  rep.pass = lhs == rhs;
  rep.verdict = rep.pass ? "pass" : "fail";
  return rep;
}

OracleReport rank_lemma_oracle(const Word& w, unsigned p, unsigned threads,
                               const OracleCaps& caps) {
  if (!is_balanced(w)) fail("NotBalanced", "word is not balanced: " + w.str());
  if (w.total_vars() > caps.rank_vars)
    fail("TooLarge", "word has too many variables for the rank oracle");
  KsInstance ks = ks_modp(w, p, std::nullopt, std::nullopt, threads);
  Poly f = ml_inverse(ks.poly(), caps.interp_n);
  BlockLayout L = derive_blocks(w);
  const FieldCtx* ctx = f.ctx();

  std::map<Monomial, Poly, MonoLess> slices;
  for (const auto& [m, c] : f.terms()) {
    Monomial negm, xm;
    for (const auto& [v, e] : m.factors()) {
      if (v.cls == VarId::Class::NegBlock)
        negm = negm * Monomial::var(v, e);
      else
        xm = xm * Monomial::var(v, e);
    }
    slices.try_emplace(negm, Poly::zero(ctx)).first->second.add_term(xm, c);
  }

  // the recursion bottoms out at the empty negative monomial, whose slice
  // must be the constant 1/(r - beta)
  Fe base_want = ff_inv(ctx->from_int(long(ks.r)) - ks.beta);
  bool base_ok = false;
  auto base_it = slices.find(Monomial::one());
  if (base_it != slices.end() && base_it->second.term_count() == 1)
    base_ok = base_it->second.coeff(Monomial::one()) == base_want;

  bool lm_ok = true;
  std::string lm_note;
  std::vector<int> sizes;
  for (int id : L.neg_blocks) sizes.push_back(L.block_size(id));
  std::vector<std::uint64_t> sig(sizes.size(), 0);
  bool done = sizes.empty();
  std::uint64_t blocks_checked = 0;
  while (!done) {
    Monomial m;
    for (std::size_t j = 0; j < sig.size(); ++j)
      m = m * Monomial::var(L.block_var(L.neg_blocks[j], sig[j]));
    BitMap bm = restrict_sigma(L, sigma_of_monomial(L, m), L.pos_blocks);
    Monomial want = monomial_of_sigma(L, Side::Pos, bm);
    auto it = slices.find(m);
    if (it == slices.end() || it->second.is_zero()) {
      lm_ok = false;
      if (lm_note.empty()) lm_note = "missing slice at " + m.str();
    } else if (!(it->second.leading_monomial() == want)) {
      lm_ok = false;
      if (lm_note.empty())
        lm_note = "slice " + m.str() + ": leading monomial " +
                  it->second.leading_monomial().str() + " expected " +
                  want.str();
    }
    ++blocks_checked;
    for (std::size_t j = 0;; ++j) {
      if (j == sig.size()) {
        done = true;
        break;
      }
      if (++sig[j] < (std::uint64_t(1) << sizes[j])) break;
      sig[j] = 0;
    }
  }

  Poly fs = sml_project(f, w);
  WordMatrix W = word_matrix(fs, w);
  std::uint64_t rank = rank_exact(W.ent, ctx);
  std::uint64_t full = std::min(W.rows.size(), W.cols.size());
  RelRank rel = relrank(fs, w);
  int b = w.bound();
  mpq_class floor_sq(mpz_class(1), mpz_class(1) << b);
  bool rel_ok = rel.squared() >= floor_sq;

  OracleReport rep;
  rep.lemma = "rank-lemma";
  rep.params = "w=" + w.str() + ";p=" + std::to_string(p);
  rep.expected = "rank " + std::to_string(full) + "; base slice " +
                 base_want.str() + "; all " + std::to_string(blocks_checked) +
                 " leading monomials aligned; relrk^2 >= 1/2^" +
                 std::to_string(b);
  rep.computed = "rank " + std::to_string(rank) + "; relrk^2 = " +
                 rel.squared().get_str();
  rep.pass = base_ok && lm_ok && rank == full && rel_ok;
  rep.verdict = rep.pass ? "pass" : "fail";
  rep.note = lm_note;
  if (!base_ok) {
    if (!rep.note.empty()) rep.note += "; ";
    rep.note += "base slice mismatch";
  }
  return rep;
}

OracleReport lm_census(unsigned n, const FieldCtx* ctx, const OracleCaps& caps) {
  if (2 * n > caps.census_2n)
    fail("TooLarge", "census instance exceeds the variable cap");
  Poly F = Poly::constant(ctx, 1);
  for (unsigned i = 1; i <= n; ++i) {
    Poly xy = Poly::var(ctx, VarId::plain(i)) *
              Poly::var(ctx, VarId::gadget_y(i));
    F = F * (Poly::constant(ctx, 1) - xy);
  }
  F = F - Poly::constant(ctx, 2);
  Poly g = ml_inverse(F, caps.interp_n);

  std::set<Monomial, MonoLess> lms;
  bool shape_ok = true;
  std::string note;
  for (std::uint64_t S = 0; S < (std::uint64_t(1) << n); ++S) {
    std::map<VarId, Fe> asg;
    for (unsigned i = 1; i <= n; ++i)
      asg.emplace(VarId::gadget_y(i),
                  (S >> (i - 1)) & 1 ? ctx->one() : ctx->zero());
    Poly gb = ml(g.subst_const(asg));
    Monomial lm = gb.is_zero() ? Monomial::one() : gb.leading_monomial();
    Monomial want;
    for (unsigned i = 1; i <= n; ++i)
      if ((S >> (i - 1)) & 1) want = want * Monomial::var(VarId::plain(i));
    if (gb.is_zero() || !(lm == want)) {
      shape_ok = false;
      if (note.empty())
        note = "assignment " + std::to_string(S) + ": leading monomial " +
               lm.str() + " expected " + want.str();
    }
    lms.insert(lm);
  }
  OracleReport rep;
  rep.lemma = "lm-census";
  rep.params = "n=" + std::to_string(n) + ";field=" + ctx->spec();
  rep.expected = std::to_string(std::uint64_t(1) << n) +
                 " distinct leading monomials, deg = |S|";
  rep.computed = std::to_string(lms.size()) + " distinct";
  rep.pass = shape_ok && lms.size() == (std::uint64_t(1) << n);
  rep.verdict = rep.pass ? "pass" : "fail";
  rep.note = note;
  return rep;
}

OracleReport anyorder_dim_oracle(unsigned n, const FieldCtx* ctx,
                                 const OracleCaps& caps) {
  if (2 * n > 8) fail("TooLarge", "any-order oracle capped at 2n <= 8");
  (void)caps;
  std::uint64_t want = std::uint64_t(1) << n;
  std::uint64_t partitions = 0;
  bool ok = true;
  std::string note;

  std::vector<unsigned> ixs(2 * n);
  for (unsigned i = 0; i < 2 * n; ++i) ixs[i] = i + 1;
  // choose the side containing x_1; n = 0 degenerates to one empty split
  std::vector<unsigned> pick(n);
  std::function<void(unsigned, unsigned)> rec = [&](unsigned at, unsigned got) {
    if (!ok && !note.empty()) return;
    if (got == n) {
      std::vector<unsigned> u(pick.begin(), pick.end());
      std::vector<unsigned> v;
      std::set<unsigned> us(u.begin(), u.end());
      for (unsigned i = 1; i <= 2 * n; ++i)
        if (!us.count(i)) v.push_back(i);
      Poly F = Poly::constant(ctx, 1);
      for (unsigned k = 0; k < n; ++k) {
        Poly uv = Poly::var(ctx, VarId::plain(u[k])) *
                  Poly::var(ctx, VarId::plain(v[k]));
        F = F * (Poly::constant(ctx, 1) - uv);
      }
      F = F - Poly::constant(ctx, 2);
      Poly g = ml_inverse(F);
      std::vector<VarId> uvars, vvars;
      for (unsigned k = 0; k < n; ++k) {
        uvars.push_back(VarId::plain(u[k]));
        vvars.push_back(VarId::plain(v[k]));
      }
      std::uint64_t dim = coeff_dim(g, uvars, vvars);
      ++partitions;
      if (dim != want) {
        ok = false;
        if (note.empty()) {
          note = "partition {";
          for (unsigned k = 0; k < n; ++k)
            note += (k ? "," : "") + std::to_string(u[k]);
          note += "}: dim " + std::to_string(dim);
        }
      }
      return;
    }
    if (at > 2 * n) return;
    pick[got] = at;
    rec(at + 1, got + 1);
    if (at > 1) rec(at + 1, got);  // x_1 stays on the u side
  };
  if (n == 0) {
    Poly g = ml_inverse(Poly::constant(ctx, -1));
    partitions = 1;
    ok = coeff_dim(g, {}, {}) == 1;
  } else {
    rec(1, 0);
  }

  OracleReport rep;
  rep.lemma = "anyorder-dim";
  rep.params = "n=" + std::to_string(n) + ";field=" + ctx->spec();
  rep.expected = "dim " + std::to_string(want) + " at every balanced partition";
  rep.computed = std::to_string(partitions) + " partitions checked";
  rep.pass = ok;
  rep.verdict = rep.pass ? "pass" : "fail";
  rep.note = ok ? "matching restriction; dimension transfers to the lifted "
                  "instance since substitution cannot raise it"
                : note;
  return rep;
}

std::vector<OracleReport> oracle_sweep(unsigned threads, unsigned cap_n) {
  const FieldCtx* Q = FieldCtx::rationals();
  const FieldCtx* F5 = FieldCtx::prime(5);
  const FieldCtx* F11 = FieldCtx::prime(11);
  std::vector<OracleReport> out;
  auto fits = [&](unsigned nvars) { return nvars <= cap_n; };

  if (fits(6)) {
    DegCheckParams ss;
    ss.ctx = Q;
    ss.n = 6;
    ss.beta = "9";
    out.push_back(deg_check("subset-sum", ss));
    ss.ctx = F11;
    ss.beta = "8";
    out.push_back(deg_check("subset-sum", ss));

    DegCheckParams pt;
    pt.ctx = F5;
    pt.n = 6;
    pt.beta = "4";
    pt.parts = {{1}, {2, 3}, {4, 5, 6}};
    out.push_back(deg_check("partition", pt));
    out.push_back(deg_check("general-psi", pt));
    pt.psi = "xor";
    out.push_back(deg_check("general-psi", pt));
    pt.psi = "indicator";
    pt.ctx = Q;
    out.push_back(deg_check("partition", pt));
  }

  if (fits(4)) {
    DegCheckParams e2;
    e2.ctx = Q;
    e2.n = 2;
    e2.beta = "3";
    out.push_back(deg_check("e2-char0", e2));
    e2.n = 4;
    e2.beta = "2";
    out.push_back(deg_check("e2-char0", e2));
  }

  out.push_back(leadcoef_identities(1, "2"));
  out.push_back(leadcoef_identities(3, "5"));
  out.push_back(leadcoef_identities(0, "1"));
  out.push_back(leadcoef_identities(4, "7/2"));

  out.push_back(lucas(8, 3, 5).report);
  out.push_back(lucas(7, 3, 5).report);
  out.push_back(lucas(10, 0, 7).report);
  out.push_back(lucas_grid(120, {2, 3, 5, 7, 11}));

  out.push_back(sym_image(2, 5, 3));
  out.push_back(sym_image(1, 4, 5));
  out.push_back(sym_image(5, 8, 5));

  if (fits(5)) {
    out.push_back(el_ed_identity(1, 1, 2, Q));
    out.push_back(el_ed_identity(2, 1, 3, Q));
    out.push_back(el_ed_identity(2, 0, 3, F5));
    out.push_back(el_ed_identity(2, 2, 4, Q));
    out.push_back(el_ed_identity(3, 2, 5, F5));
  }

  for (const Word& w : {Word{{1, -1}}, Word{{1, 1, -2}}, Word{{1, -2}}})
    if (fits(unsigned(w.total_vars())))
      out.push_back(rank_lemma_oracle(w, 5, threads));
  if (fits(unsigned(Word{{2, -2}}.total_vars())))
    out.push_back(rank_lemma_oracle(Word{{2, -2}}, 7, threads));

  if (fits(2)) out.push_back(lm_census(1, F5));
  if (fits(6)) out.push_back(lm_census(3, Q));

  out.push_back(anyorder_dim_oracle(0, F5));
  if (fits(2)) out.push_back(anyorder_dim_oracle(1, F5));
  if (fits(4)) out.push_back(anyorder_dim_oracle(2, F5));
  return out;
}

}  // namespace ipsw
