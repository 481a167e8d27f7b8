#include "ipsw/dims.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <sstream>

#include "ipsw/util.hpp"

namespace ipsw {

namespace {

constexpr std::uint64_t kEnumCap = std::uint64_t(1) << 16;
constexpr int kWordAxisCap = 24;

}  // namespace

std::string CoeffMatrix::csv() const {
  std::ostringstream os;
  for (const auto& c : cols) os << ',' << c.str();
  os << '\n';
  for (std::size_t i = 0; i < rows.size(); ++i) {
    os << rows[i].str();
    for (std::size_t j = 0; j < cols.size(); ++j) os << ',' << ent[i][j].str();
    os << '\n';
  }
  return os.str();
}

std::uint64_t rank_exact(std::vector<std::vector<Fe>> m, const FieldCtx* ctx) {
  (void)ctx;
  std::size_t nr = m.size();
  if (nr == 0) return 0;
  std::size_t nc = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < nc && r < nr; ++c) {
    std::size_t piv = r;
    while (piv < nr && m[piv][c].is_zero()) ++piv;
    if (piv == nr) continue;
    std::swap(m[piv], m[r]);
    Fe pinv = ff_inv(m[r][c]);
    for (std::size_t j = c; j < nc; ++j) m[r][j] = m[r][j] * pinv;
    for (std::size_t i = 0; i < nr; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      Fe f = m[i][c];
      for (std::size_t j = c; j < nc; ++j) m[i][j] = m[i][j] - f * m[r][j];
    }
    ++r;
  }
  return r;
}

namespace {

void check_split(const Poly& f, const std::vector<VarId>& xs,
                 const std::vector<VarId>& ys, bool allow_rest) {
  std::set<VarId> sx(xs.begin(), xs.end()), sy(ys.begin(), ys.end());
  for (const VarId& v : xs)
    if (sy.count(v)) fail("BadSplit", "variable " + v.name() + " on both sides");
  if (allow_rest) return;
  for (const VarId& v : f.vars())
    if (!sx.count(v) && !sy.count(v))
      fail("BadSplit", "variable " + v.name() + " not covered by the split");
}

// splits a monomial into (x-part, y-part, rest)
void split_monomial(const Monomial& m, const std::set<VarId>& sx,
                    const std::set<VarId>& sy, Monomial& mx, Monomial& my,
                    Monomial& mz) {
  mx = my = mz = Monomial::one();
  for (const auto& [v, e] : m.factors()) {
    Monomial f = Monomial::var(v, e);
    if (sx.count(v))
      mx = mx * f;
    else if (sy.count(v))
      my = my * f;
    else
      mz = mz * f;
  }
}

}  // namespace

CoeffMatrix coeff_matrix(const Poly& f, const std::vector<VarId>& xs,
                         const std::vector<VarId>& ys) {
  check_split(f, xs, ys, false);
  std::set<VarId> sx(xs.begin(), xs.end()), sy(ys.begin(), ys.end());
  std::map<Monomial, std::size_t, MonoLess> ridx, cidx;
  std::vector<std::tuple<Monomial, Monomial, Fe>> cells;
  for (const auto& [m, c] : f.terms()) {
    Monomial mx, my, mz;
    split_monomial(m, sx, sy, mx, my, mz);
    ridx.emplace(mx, 0);
    cidx.emplace(my, 0);
    cells.emplace_back(mx, my, c);
  }
  CoeffMatrix M;
  for (auto& [m, i] : ridx) {
    i = M.rows.size();
    M.rows.push_back(m);
  }
  for (auto& [m, i] : cidx) {
    i = M.cols.size();
    M.cols.push_back(m);
  }
  M.ent.assign(M.rows.size(),
               std::vector<Fe>(M.cols.size(), f.ctx()->zero()));
  for (const auto& [mx, my, c] : cells) M.ent[ridx[mx]][cidx[my]] = c;
  return M;
}

std::uint64_t coeff_dim(const Poly& f, const std::vector<VarId>& xs,
                        const std::vector<VarId>& ys) {
  CoeffMatrix M = coeff_matrix(f, xs, ys);
  return rank_exact(M.ent, f.ctx());
}

PolyMatrix coeff_matrix_z(const Poly& f, const std::vector<VarId>& xs,
                          const std::vector<VarId>& ys) {
  check_split(f, xs, ys, true);
  std::set<VarId> sx(xs.begin(), xs.end()), sy(ys.begin(), ys.end());
  std::map<Monomial, std::size_t, MonoLess> ridx, cidx;
  std::vector<std::tuple<Monomial, Monomial, Monomial, Fe>> cells;
  for (const auto& [m, c] : f.terms()) {
    Monomial mx, my, mz;
    split_monomial(m, sx, sy, mx, my, mz);
    ridx.emplace(mx, 0);
    cidx.emplace(my, 0);
    cells.emplace_back(mx, my, mz, c);
  }
  PolyMatrix M;
  for (auto& [m, i] : ridx) {
    i = M.rows.size();
    M.rows.push_back(m);
  }
  for (auto& [m, i] : cidx) {
    i = M.cols.size();
    M.cols.push_back(m);
  }
  M.ent.assign(M.rows.size(),
               std::vector<Poly>(M.cols.size(), Poly::zero(f.ctx())));
  for (const auto& [mx, my, mz, c] : cells) M.ent[ridx[mx]][cidx[my]].add_term(mz, c);
  return M;
}

std::uint64_t eval_dim(const Poly& f, const std::vector<VarId>& xs,
                       const std::vector<VarId>& ys, const std::vector<Fe>& S) {
  check_split(f, xs, ys, false);
  if (S.empty()) fail("BadSplit", "evaluation set is empty");
  std::uint64_t combos = 1;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    combos *= S.size();
    if (combos > kEnumCap)
      fail("EnumerationTooLarge", "|S|^{|y|} exceeds the enumeration cap");
  }
  std::vector<Poly> evals;
  std::map<Monomial, std::size_t, MonoLess> basis;
  for (std::uint64_t v = 0; v < combos; ++v) {
    std::map<VarId, Fe> asg;
    std::uint64_t t = v;
    for (const VarId& y : ys) {
      asg.emplace(y, S[t % S.size()]);
      t /= S.size();
    }
    Poly g = f.subst_const(asg);
    for (const auto& [m, c] : g.terms()) basis.emplace(m, 0);
    evals.push_back(std::move(g));
  }
  std::size_t nb = 0;
  for (auto& [m, i] : basis) i = nb++;
  std::vector<std::vector<Fe>> M(evals.size(),
                                 std::vector<Fe>(nb, f.ctx()->zero()));
  for (std::size_t i = 0; i < evals.size(); ++i)
    for (const auto& [m, c] : evals[i].terms()) M[i][basis[m]] = c;
  return rank_exact(M, f.ctx());
}

namespace {

// row/col index of a one-sided sml monomial: bits over the side axis,
// position 1 is the most significant bit
std::uint64_t axis_index(const BlockLayout& L, Side side, const Monomial& m,
                         std::size_t nblocks) {
  if (m.factors().size() != nblocks)
    fail("NotSetMultilinear", "monomial does not cover every block: " + m.str());
  BitMap bm = sigma_of_monomial(L, m);
  int n = side == Side::Pos ? L.wP : L.wN;
  std::uint64_t idx = 0;
  for (int p = 1; p <= n; ++p) idx = (idx << 1) | std::uint64_t(bm.at(p) & 1);
  return idx;
}

bool full_sml_parts(const BlockLayout& L, const Monomial& m, Monomial& mp,
                    Monomial& mn) {
  mp = mn = Monomial::one();
  std::set<int> pos_seen, neg_seen;
  for (const auto& [v, e] : m.factors()) {
    if (e != 1) return false;
    if (v.cls == VarId::Class::PosBlock) {
      if (!L.is_pos(int(v.i)) || v.len != L.A.at(int(v.i)).size()) return false;
      if (!pos_seen.insert(int(v.i)).second) return false;
      mp = mp * Monomial::var(v);
    } else if (v.cls == VarId::Class::NegBlock) {
      if (L.is_pos(int(v.i)) || !L.B.count(int(v.i)) ||
          v.len != L.B.at(int(v.i)).size())
        return false;
      if (!neg_seen.insert(int(v.i)).second) return false;
      mn = mn * Monomial::var(v);
    } else {
      return false;
    }
  }
  return pos_seen.size() == L.pos_blocks.size() &&
         neg_seen.size() == L.neg_blocks.size();
}

}  // namespace

WordMatrix word_matrix(const Poly& f, const Word& w) {
  BlockLayout L = derive_blocks(w);
  if (L.wP + L.wN > kWordAxisCap)
    fail("EnumerationTooLarge", "word axis " + std::to_string(L.wP + L.wN) +
                                    " exceeds the dense cap");
  WordMatrix M;
  std::uint64_t nr = std::uint64_t(1) << L.wP, nc = std::uint64_t(1) << L.wN;
  for (std::uint64_t r = 0; r < nr; ++r) {
    BitMap bm;
    for (int p = 1; p <= L.wP; ++p) bm[p] = int((r >> (L.wP - p)) & 1);
    M.rows.push_back(monomial_of_sigma(L, Side::Pos, bm));
  }
  for (std::uint64_t c = 0; c < nc; ++c) {
    BitMap bm;
    for (int p = 1; p <= L.wN; ++p) bm[p] = int((c >> (L.wN - p)) & 1);
    M.cols.push_back(monomial_of_sigma(L, Side::Neg, bm));
  }
  M.ent.assign(nr, std::vector<Fe>(nc, f.ctx()->zero()));
  for (const auto& [m, c] : f.terms()) {
    Monomial mp, mn;
    if (!full_sml_parts(L, m, mp, mn))
      fail("NotSetMultilinear",
           "monomial " + m.str() + " is not set-multilinear over " + w.str());
    std::uint64_t r = axis_index(L, Side::Pos, mp, L.pos_blocks.size());
    std::uint64_t cc = axis_index(L, Side::Neg, mn, L.neg_blocks.size());
    M.ent[r][cc] = c;
  }
  return M;
}

RelRank relrank(const Poly& f, const Word& w) {
  BlockLayout L = derive_blocks(w);
  WordMatrix M = word_matrix(f, w);
  RelRank rr;
  rr.rank = rank_exact(M.ent, f.ctx());
  rr.mp = std::uint64_t(1) << L.wP;
  rr.mn = std::uint64_t(1) << L.wN;
  return rr;
}

Poly sml_project(const Poly& f, const Word& w) {
  BlockLayout L = derive_blocks(w);
  Poly out = Poly::zero(f.ctx());
  for (const auto& [m, c] : f.terms()) {
    Monomial mp, mn;
    if (full_sml_parts(L, m, mp, mn)) out.add_term(m, c);
  }
  return out;
}

namespace {

Poly poly_det(const std::vector<std::vector<const Poly*>>& m) {
  std::size_t n = m.size();
  if (n == 1) return *m[0][0];
  Poly acc = Poly::zero(m[0][0]->ctx());
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j]->terms().empty()) continue;
    std::vector<std::vector<const Poly*>> sub(n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t jj = 0; jj < n; ++jj)
        if (jj != j) sub[i - 1].push_back(m[i][jj]);
    Poly term = *m[0][j] * poly_det(sub);
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

bool next_subset(std::vector<std::size_t>& idx, std::size_t n) {
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

}  // namespace

RankReport poly_entry_rank(const PolyMatrix& M, bool symbolic, unsigned trials,
                           unsigned ext_k, std::uint64_t seed, unsigned threads) {
  RankReport rep;
  rep.seed = seed;
  std::size_t nr = M.rows.size(), nc = M.cols.size();
  if (nr == 0 || nc == 0) return rep;
  const FieldCtx* ctx = M.ent[0][0].ctx();
  rep.field = ctx->spec();

  std::set<VarId> zvars;
  long long degsum = 0;
  for (const auto& row : M.ent)
    for (const Poly& e : row) {
      for (const VarId& v : e.vars()) zvars.insert(v);
      if (e.degree() > 0) degsum += e.degree();
    }

  if (zvars.empty()) {
    std::vector<std::vector<Fe>> m(nr, std::vector<Fe>(nc, ctx->zero()));
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j)
        m[i][j] = M.ent[i][j].coeff(Monomial::one());
    rep.rank = rank_exact(m, ctx);
    return rep;
  }

  if (symbolic) {
    if (std::max(nr, nc) > 8)
      fail("EnumerationTooLarge", "symbolic rank is limited to 8x8");
    std::size_t kmax = std::min(nr, nc);
    for (std::size_t k = kmax; k >= 1; --k) {
      std::vector<std::size_t> ri(k);
      for (std::size_t i = 0; i < k; ++i) ri[i] = i;
      do {
        std::vector<std::size_t> cj(k);
        for (std::size_t i = 0; i < k; ++i) cj[i] = i;
        do {
          std::vector<std::vector<const Poly*>> sub(k);
          for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
              sub[i].push_back(&M.ent[ri[i]][cj[j]]);
          if (!poly_det(sub).terms().empty()) {
            rep.rank = k;
            return rep;
          }
        } while (next_subset(cj, nc));
      } while (next_subset(ri, nr));
    }
    rep.rank = 0;
    return rep;
  }

  rep.exact = false;
  rep.trials = trials == 0 ? 1 : trials;
  const FieldCtx* eval_ctx = ctx;
  std::uint64_t npoints = 0;
  if (ctx->finite()) {
    if (ext_k < 1) ext_k = 1;
    eval_ctx = FieldCtx::ext_build(unsigned(ctx->p), ext_k);
    npoints = eval_ctx->q();
    if ((long long)npoints <= degsum)
      fail("FieldTooSmallForSZ",
           "need |F| > " + std::to_string(degsum) + ", have " +
               std::to_string(npoints));
  } else {
    npoints = std::uint64_t(degsum) + 2;
  }
  rep.field = eval_ctx->spec();

  std::vector<std::uint64_t> per(rep.trials, 0);
  std::vector<VarId> zv(zvars.begin(), zvars.end());
  parallel_for(rep.trials, threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t t = lo; t < hi; ++t) {
      Rng rng(derive_seed(seed, t));
      std::map<VarId, Fe> asg;
      for (const VarId& v : zv)
        asg.emplace(v, eval_ctx->sample_point(rng_below(rng, npoints)));
      std::vector<std::vector<Fe>> m(nr, std::vector<Fe>(nc, eval_ctx->zero()));
      for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) {
          Poly e = M.ent[i][j].lift_to(eval_ctx);
          std::map<VarId, Fe> sub;
          for (const VarId& v : e.vars()) sub.emplace(v, asg.at(v));
          m[i][j] = e.subst_const(sub).coeff(Monomial::one());
        }
      per[t] = rank_exact(m, eval_ctx);
    }
  });
  for (std::uint64_t r : per) rep.rank = std::max(rep.rank, r);
  return rep;
}

}  // namespace ipsw
