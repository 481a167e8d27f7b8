#include "ipsw/roabp.hpp"

#include <algorithm>
#include <set>

#include "ipsw/dims.hpp"
#include "ipsw/util.hpp"

namespace ipsw {

namespace {

constexpr std::size_t kVarCap = 20;
constexpr std::size_t kTermCap = 2000000;

Label zero_label(const FieldCtx* ctx) { return Label{ctx->zero()}; }

Label trim(Label l) {
  while (l.size() > 1 && l.back().is_zero()) l.pop_back();
  return l;
}

}  // namespace

Fe label_eval(const Label& l, const Fe& at) {
  const FieldCtx* ctx = at.ctx();
  Fe acc = ctx->zero();
  for (std::size_t i = l.size(); i-- > 0;) acc = acc * at + l[i];
  return acc;
}

Label label_mul(const FieldCtx* ctx, const Label& a, const Label& b) {
  Label out(a.size() + b.size() - 1, ctx->zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = out[i + j] + a[i] * b[j];
  }
  return trim(out);
}

bool label_is_zero(const Label& l) {
  for (const Fe& c : l)
    if (!c.is_zero()) return false;
  return true;
}

std::size_t RoAbp::width() const {
  std::size_t w = 0;
  for (std::size_t n : nodes) w = std::max(w, n);
  return w;
}

std::uint32_t RoAbp::ideg() const {
  std::size_t d = 0;
  for (const auto& layer : M)
    for (const auto& row : layer)
      for (const Label& l : row) d = std::max(d, trim(l).size() - 1);
  return std::uint32_t(d);
}

std::uint64_t RoAbp::raw_nodes() const {
  std::uint64_t s = 0;
  for (std::size_t n : nodes) s += n;
  return s;
}

std::uint64_t RoAbp::raw_edges() const {
  std::uint64_t s = 0;
  for (const auto& layer : M)
    for (const auto& row : layer)
      for (const Label& l : row)
        if (!label_is_zero(l)) ++s;
  return s;
}

std::uint64_t RoAbp::size_convention() const {
  std::uint64_t n = order.size();
  return n * width() * ideg() * n;
}

void validate(const RoAbp& A) {
  std::size_t n = A.order.size();
  if (n == 0) fail("OrderMismatch", "empty variable order");
  std::set<VarId> seen(A.order.begin(), A.order.end());
  if (seen.size() != n) fail("OrderMismatch", "repeated variable in order");
  if (A.nodes.size() != n + 1 || A.M.size() != n)
    fail("OrderMismatch", "layer count mismatch");
  if (A.nodes.front() != 1 || A.nodes.back() != 1)
    fail("OrderMismatch", "need a single source and a single sink");
  for (std::size_t l = 0; l < n; ++l) {
    if (A.M[l].size() != A.nodes[l]) fail("OrderMismatch", "bad layer rows");
    for (const auto& row : A.M[l])
      if (row.size() != A.nodes[l + 1]) fail("OrderMismatch", "bad layer cols");
  }
}

RoAbp roabp_const(const FieldCtx* ctx, const std::vector<VarId>& order,
                  const Fe& c) {
  if (order.empty()) fail("OrderMismatch", "empty variable order");
  RoAbp A;
  A.ctx = ctx;
  A.order = order;
  A.nodes.assign(order.size() + 1, 1);
  A.M.resize(order.size());
  for (std::size_t l = 0; l < order.size(); ++l)
    A.M[l] = {{Label{l == 0 ? c : ctx->one()}}};
  return A;
}

RoAbp roabp_product(const FieldCtx* ctx, const std::vector<VarId>& order,
                    const std::vector<Label>& labels) {
  if (order.empty() || labels.size() != order.size())
    fail("OrderMismatch", "one label per variable required");
  RoAbp A;
  A.ctx = ctx;
  A.order = order;
  A.nodes.assign(order.size() + 1, 1);
  A.M.resize(order.size());
  for (std::size_t l = 0; l < order.size(); ++l) A.M[l] = {{labels[l]}};
  return A;
}

namespace {

// reduced row echelon form with unit pivots; returns pivot column per
// basis row, rows processed in the given order
std::vector<std::size_t> rref(std::vector<std::vector<Fe>>& rows) {
  std::vector<std::size_t> pivots;
  std::vector<std::vector<Fe>> basis;
  for (auto& r : rows) {
    for (std::size_t b = 0; b < basis.size(); ++b) {
      Fe c = r[pivots[b]];
      if (c.is_zero()) continue;
      for (std::size_t j = 0; j < r.size(); ++j) r[j] = r[j] - c * basis[b][j];
    }
    std::size_t p = 0;
    while (p < r.size() && r[p].is_zero()) ++p;
    if (p == r.size()) continue;
    Fe inv = ff_inv(r[p]);
    for (std::size_t j = p; j < r.size(); ++j) r[j] = r[j] * inv;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      Fe c = basis[b][p];
      if (c.is_zero()) continue;
      for (std::size_t j = 0; j < r.size(); ++j)
        basis[b][j] = basis[b][j] - c * r[j];
    }
    // keep pivot columns ascending
    std::size_t at = 0;
    while (at < pivots.size() && pivots[at] < p) ++at;
    basis.insert(basis.begin() + at, r);
    pivots.insert(pivots.begin() + at, p);
  }
  rows = std::move(basis);
  return pivots;
}

struct SuffixBasis {
  std::vector<Poly> polys;       // basis elements over the suffix vars
  std::vector<Monomial> pivots;  // pivot monomial of each element
};

// basis of the span of the coefficient polynomials of f at the split
// (first `cut` vars | rest), rows processed in grlex order of the prefix
SuffixBasis prefix_space(const Poly& f, const std::vector<VarId>& order,
                         std::size_t cut) {
  std::set<VarId> pre(order.begin(), order.begin() + cut);
  std::map<Monomial, Poly, MonoLess> by_prefix;
  std::map<Monomial, std::size_t, MonoLess> colidx;
  for (const auto& [m, c] : f.terms()) {
    Monomial mp = Monomial::one(), ms = Monomial::one();
    for (const auto& [v, e] : m.factors())
      (pre.count(v) ? mp : ms) = (pre.count(v) ? mp : ms) * Monomial::var(v, e);
    auto it = by_prefix.emplace(mp, Poly::zero(f.ctx())).first;
    it->second.add_term(ms, c);
    colidx.emplace(ms, 0);
  }
  std::vector<Monomial> cols;
  for (auto& [m, i] : colidx) {
    i = cols.size();
    cols.push_back(m);
  }
  std::vector<std::vector<Fe>> rows;
  for (const auto& [mp, g] : by_prefix) {
    std::vector<Fe> r(cols.size(), f.ctx()->zero());
    for (const auto& [m, c] : g.terms()) r[colidx[m]] = c;
    rows.push_back(std::move(r));
  }
  std::vector<std::size_t> piv = rref(rows);
  SuffixBasis B;
  for (std::size_t b = 0; b < rows.size(); ++b) {
    Poly h = Poly::zero(f.ctx());
    for (std::size_t j = 0; j < cols.size(); ++j)
      if (!rows[b][j].is_zero()) h.add_term(cols[j], rows[b][j]);
    B.polys.push_back(std::move(h));
    B.pivots.push_back(cols[piv[b]]);
  }
  return B;
}

// coordinates of g in the span of B (unit pivots make them direct reads)
std::vector<Fe> coords_in(const Poly& g, const SuffixBasis& B) {
  std::vector<Fe> c;
  c.reserve(B.polys.size());
  Poly res = g;
  for (std::size_t b = 0; b < B.polys.size(); ++b) {
    Fe cb = g.coeff(B.pivots[b]);
    c.push_back(cb);
    if (!cb.is_zero()) res = res - B.polys[b].scale(cb);
  }
  if (!res.terms().empty())
    fail("TooLarge", "internal: coefficient polynomial outside the span");
  return c;
}

}  // namespace

RoAbp nisan_build(const Poly& f, const std::vector<VarId>& order) {
  std::size_t n = order.size();
  if (n == 0 || n > kVarCap) fail("TooLarge", "order length outside desk scale");
  if (f.terms().size() > kTermCap) fail("TooLarge", "too many terms");
  std::set<VarId> ov(order.begin(), order.end());
  if (ov.size() != n) fail("OrderMismatch", "repeated variable in order");
  for (const VarId& v : f.vars())
    if (!ov.count(v)) fail("OrderMismatch", "variable " + v.name() + " not in order");

  if (f.terms().empty()) {
    RoAbp Z = roabp_const(f.ctx(), order, f.ctx()->zero());
    return Z;
  }

  RoAbp A;
  A.ctx = f.ctx();
  A.order = order;
  A.nodes.assign(n + 1, 1);
  A.M.resize(n);

  SuffixBasis cur;
  cur.polys = {f};
  cur.pivots = {};  // source row is f itself, coordinates never needed
  for (std::size_t l = 0; l < n; ++l) {
    SuffixBasis nxt;
    if (l + 1 < n) {
      nxt = prefix_space(f, order, l + 1);
    } else {
      nxt.polys = {Poly::constant(f.ctx(), 1)};
      nxt.pivots = {Monomial::one()};
    }
    A.nodes[l + 1] = nxt.polys.size();
    const VarId& v = A.order[l];
    LayerMat mat(cur.polys.size(),
                 std::vector<Label>(nxt.polys.size(), zero_label(f.ctx())));
    for (std::size_t i = 0; i < cur.polys.size(); ++i) {
      // split h by the power of v
      std::map<std::uint32_t, Poly> parts;
      for (const auto& [m, c] : cur.polys[i].terms()) {
        std::uint32_t e = m.exp(v);
        auto it = parts.emplace(e, Poly::zero(f.ctx())).first;
        it->second.add_term(m.without(v), c);
      }
      for (const auto& [e, g] : parts) {
        std::vector<Fe> co = coords_in(g, nxt);
        for (std::size_t j = 0; j < co.size(); ++j) {
          if (co[j].is_zero()) continue;
          Label& lab = mat[i][j];
          if (lab.size() <= e) lab.resize(e + 1, f.ctx()->zero());
          lab[e] = co[j];
        }
      }
    }
    A.M[l] = std::move(mat);
    cur = std::move(nxt);
  }
  return A;
}

std::uint64_t width_lower(const Poly& f, const std::vector<VarId>& order) {
  std::size_t n = order.size();
  if (n == 0 || n > kVarCap) fail("TooLarge", "order length outside desk scale");
  std::uint64_t best = f.terms().empty() ? 0 : 1;
  for (std::size_t cut = 1; cut < n; ++cut) {
    std::vector<VarId> xs(order.begin(), order.begin() + cut);
    std::vector<VarId> ys(order.begin() + cut, order.end());
    best = std::max(best, coeff_dim(f, xs, ys));
  }
  return best;
}

RoAbp closure_sum(const RoAbp& A, const RoAbp& B) {
  if (A.order != B.order) fail("OrderMismatch", "summands read different orders");
  std::size_t n = A.order.size();
  RoAbp C;
  C.ctx = A.ctx;
  C.order = A.order;
  C.nodes.assign(n + 1, 1);
  for (std::size_t l = 1; l < n; ++l) C.nodes[l] = A.nodes[l] + B.nodes[l];
  C.M.resize(n);
  for (std::size_t l = 0; l < n; ++l) {
    LayerMat mat(C.nodes[l], std::vector<Label>(C.nodes[l + 1], zero_label(A.ctx)));
    bool first = l == 0, last = l + 1 == n;
    for (std::size_t i = 0; i < A.nodes[l]; ++i)
      for (std::size_t j = 0; j < A.nodes[l + 1]; ++j)
        mat[i][j] = A.M[l][i][j];
    std::size_t roff = first ? 0 : A.nodes[l];
    std::size_t coff = last ? 0 : A.nodes[l + 1];
    for (std::size_t i = 0; i < B.nodes[l]; ++i)
      for (std::size_t j = 0; j < B.nodes[l + 1]; ++j) {
        Label& dst = mat[roff + i][coff + j];
        const Label& src = B.M[l][i][j];
        if (dst.size() < src.size()) dst.resize(src.size(), A.ctx->zero());
        for (std::size_t k = 0; k < src.size(); ++k) dst[k] = dst[k] + src[k];
      }
    C.M[l] = std::move(mat);
  }
  return C;
}

RoAbp closure_prod(const RoAbp& A, const RoAbp& B) {
  if (A.order != B.order) fail("OrderMismatch", "factors read different orders");
  std::size_t n = A.order.size();
  RoAbp C;
  C.ctx = A.ctx;
  C.order = A.order;
  C.nodes.resize(n + 1);
  for (std::size_t l = 0; l <= n; ++l) C.nodes[l] = A.nodes[l] * B.nodes[l];
  C.M.resize(n);
  for (std::size_t l = 0; l < n; ++l) {
    LayerMat mat(C.nodes[l], std::vector<Label>(C.nodes[l + 1], zero_label(A.ctx)));
    for (std::size_t ia = 0; ia < A.nodes[l]; ++ia)
      for (std::size_t ja = 0; ja < A.nodes[l + 1]; ++ja) {
        if (label_is_zero(A.M[l][ia][ja])) continue;
        for (std::size_t ib = 0; ib < B.nodes[l]; ++ib)
          for (std::size_t jb = 0; jb < B.nodes[l + 1]; ++jb) {
            if (label_is_zero(B.M[l][ib][jb])) continue;
            mat[ia * B.nodes[l] + ib][ja * B.nodes[l + 1] + jb] =
                label_mul(A.ctx, A.M[l][ia][ja], B.M[l][ib][jb]);
          }
      }
    C.M[l] = std::move(mat);
  }
  return C;
}

RoAbp partial_subst(const RoAbp& A, const std::map<VarId, Fe>& asg) {
  RoAbp C = A;
  for (std::size_t l = 0; l < C.order.size(); ++l) {
    auto it = asg.find(C.order[l]);
    if (it == asg.end()) continue;
    for (auto& row : C.M[l])
      for (Label& lab : row) lab = Label{label_eval(lab, it->second)};
  }
  return C;
}

RoAbp interleave_lift(const RoAbp& A, const std::vector<VarId>& xs,
                      const std::vector<VarId>& ys) {
  std::size_t n = A.order.size();
  if (xs.size() != n || ys.size() != n)
    fail("OrderMismatch", "need one x and one y per lifted variable");
  RoAbp C;
  C.ctx = A.ctx;
  C.nodes.push_back(1);
  for (std::size_t l = 0; l < n; ++l) {
    std::size_t d = 0;
    for (const auto& row : A.M[l])
      for (const Label& lab : row) d = std::max(d, trim(lab).size() - 1);
    std::size_t r = A.nodes[l], s = A.nodes[l + 1];
    std::size_t mid = r * (d + 1);
    C.order.push_back(xs[l]);
    C.order.push_back(ys[l]);
    LayerMat mx(r, std::vector<Label>(mid, zero_label(A.ctx)));
    for (std::size_t e = 0; e <= d; ++e)
      for (std::size_t i = 0; i < r; ++i) {
        Label xl(e + 1, A.ctx->zero());
        xl[e] = A.ctx->one();
        mx[i][e * r + i] = std::move(xl);
      }
    LayerMat my(mid, std::vector<Label>(s, zero_label(A.ctx)));
    for (std::size_t e = 0; e <= d; ++e)
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < s; ++j) {
          const Label& src = A.M[l][i][j];
          if (e >= src.size() || src[e].is_zero()) continue;
          Label yl(e + 1, A.ctx->zero());
          yl[e] = src[e];
          my[e * r + i][j] = std::move(yl);
        }
    C.nodes.push_back(mid);
    C.nodes.push_back(s);
    C.M.push_back(std::move(mx));
    C.M.push_back(std::move(my));
  }
  return C;
}

RoAbp ml_roabp(const RoAbp& A) {
  RoAbp C = A;
  for (auto& layer : C.M)
    for (auto& row : layer)
      for (Label& lab : row) {
        Fe lin = A.ctx->zero();
        for (std::size_t e = 1; e < lab.size(); ++e) lin = lin + lab[e];
        Label out{lab.empty() ? A.ctx->zero() : lab[0], lin};
        lab = trim(out);
      }
  return C;
}

Fe roabp_eval(const RoAbp& A, const std::map<VarId, Fe>& asg) {
  std::vector<Fe> v{A.ctx->one()};
  for (std::size_t l = 0; l < A.order.size(); ++l) {
    Fe at = asg.at(A.order[l]);
    std::vector<Fe> w(A.nodes[l + 1], A.ctx->zero());
    for (std::size_t i = 0; i < A.nodes[l]; ++i) {
      if (v[i].is_zero()) continue;
      for (std::size_t j = 0; j < A.nodes[l + 1]; ++j)
        w[j] = w[j] + v[i] * label_eval(A.M[l][i][j], at);
    }
    v = std::move(w);
  }
  return v[0];
}

Poly extract_poly(const RoAbp& A) {
  std::vector<Poly> v{Poly::constant(A.ctx, 1)};
  for (std::size_t l = 0; l < A.order.size(); ++l) {
    std::vector<Poly> w(A.nodes[l + 1], Poly::zero(A.ctx));
    std::size_t terms = 0;
    for (std::size_t i = 0; i < A.nodes[l]; ++i) {
      if (v[i].terms().empty()) continue;
      for (std::size_t j = 0; j < A.nodes[l + 1]; ++j) {
        const Label& lab = A.M[l][i][j];
        for (std::size_t e = 0; e < lab.size(); ++e) {
          if (lab[e].is_zero()) continue;
          Poly t = v[i].scale(lab[e]);
          if (e > 0) {
            Poly xe = Poly::zero(A.ctx);
            xe.add_term(Monomial::var(A.order[l], std::uint32_t(e)), A.ctx->one());
            t = t * xe;
          }
          w[j] = w[j] + t;
        }
      }
    }
    for (const Poly& g : w) terms += g.terms().size();
    if (terms > kTermCap) fail("TooLarge", "extraction exceeds the term cap");
    v = std::move(w);
  }
  return v[0];
}

RoAbp fermat_refutation_roabp(const RoAbp& A, unsigned p) {
  if (A.ctx->kind != FieldKind::Prime || A.ctx->p != p)
    fail("NotPrime", "base program must live over F_p with the given p");
  std::size_t n = A.order.size();
  if (n > kVarCap) fail("TooLarge", "cube enumeration outside desk scale");
  // Boolean-root guard; the inverse only exists when f never vanishes
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
    std::map<VarId, Fe> asg;
    for (std::size_t i = 0; i < n; ++i)
      asg.emplace(A.order[i], A.ctx->from_int((mask >> i) & 1));
    if (roabp_eval(A, asg).is_zero()) {
      std::string w;
      for (std::size_t i = 0; i < n; ++i)
        w += ((mask >> i) & 1) ? '1' : '0';
      fail("HasBooleanRoot", "f vanishes on the cube at " + w);
    }
  }
  unsigned m = p - 2;
  if (m == 0) return roabp_const(A.ctx, A.order, A.ctx->one());
  RoAbp G = ml_roabp(A);
  for (unsigned i = 1; i < m; ++i) G = ml_roabp(closure_prod(G, A));
  return G;
}

}  // namespace ipsw
