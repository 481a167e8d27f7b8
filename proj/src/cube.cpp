#include "ipsw/cube.hpp"

#include <algorithm>

namespace ipsw {

Cube::Cube(const FieldCtx* ctx, std::vector<VarId> vars)
    : ctx_(ctx), vars_(std::move(vars)) {
  if (!std::is_sorted(vars_.begin(), vars_.end()))
    std::sort(vars_.begin(), vars_.end());
  if (vars_.size() >= 26) fail("TooManyVariables", "cube over 2^26+ points");
  std::size_t n = std::size_t(1) << vars_.size();
  if (ctx_->kind == FieldKind::Prime)
    fp_.assign(n, 0);
  else if (ctx_->kind == FieldKind::Rational)
    fq_.assign(n, mpq_class(0));
  else
    fail("TooManyVariables", "cube engine supports prime and rational fields");
}

std::size_t Cube::var_pos(const VarId& v) const {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), v);
  if (it == vars_.end() || !(*it == v)) fail("MissingVariable", v.name());
  return (std::size_t)(it - vars_.begin());
}

Cube Cube::coeffs_of(const Poly& f, const std::vector<VarId>& vars) {
  Cube c(f.ctx(), vars);
  Poly g = ml(f);
  for (auto& [m, coef] : g.terms()) {
    std::size_t mask = 0;
    for (auto& [v, e] : m.factors()) mask |= std::size_t(1) << c.var_pos(v);
    c.set(mask, coef);
  }
  return c;
}

Cube Cube::values_of(const Poly& f, const std::vector<VarId>& vars) {
  Cube c = coeffs_of(f, vars);
  c.zeta();
  return c;
}

Fe Cube::at(std::size_t mask) const {
  if (ctx_->kind == FieldKind::Prime) return ctx_->from_int((long)fp_[mask]);
  return ctx_->from_mpq(fq_[mask]);
}

void Cube::set(std::size_t mask, const Fe& v) {
  if (ctx_->kind == FieldKind::Prime)
    fp_[mask] = (std::uint32_t)v.residue();
  else
    fq_[mask] = v.rat();
}

void Cube::zeta() {
  std::size_t n = vars_.size();
  if (ctx_->kind == FieldKind::Prime) {
    std::uint32_t p = ctx_->p;
    for (std::size_t b = 0; b < n; ++b) {
      std::size_t bit = std::size_t(1) << b;
      for (std::size_t m = 0; m < fp_.size(); ++m)
        if (m & bit) fp_[m] = (fp_[m] + fp_[m ^ bit]) % p;
    }
  } else {
    for (std::size_t b = 0; b < n; ++b) {
      std::size_t bit = std::size_t(1) << b;
      for (std::size_t m = 0; m < fq_.size(); ++m)
        if (m & bit) fq_[m] += fq_[m ^ bit];
    }
  }
}

void Cube::moebius() {
  std::size_t n = vars_.size();
  if (ctx_->kind == FieldKind::Prime) {
    std::uint32_t p = ctx_->p;
    for (std::size_t b = 0; b < n; ++b) {
      std::size_t bit = std::size_t(1) << b;
      for (std::size_t m = 0; m < fp_.size(); ++m)
        if (m & bit) fp_[m] = (fp_[m] + p - fp_[m ^ bit]) % p;
    }
  } else {
    for (std::size_t b = 0; b < n; ++b) {
      std::size_t bit = std::size_t(1) << b;
      for (std::size_t m = 0; m < fq_.size(); ++m)
        if (m & bit) fq_[m] -= fq_[m ^ bit];
    }
  }
}

void Cube::invert_pointwise() {
  if (ctx_->kind == FieldKind::Prime) {
    std::uint32_t p = ctx_->p;
    std::vector<std::uint32_t> inv(p, 0);
    for (std::uint32_t a = 1; a < p; ++a)
      inv[a] = (std::uint32_t)ff_inv(ctx_->from_int(a)).residue();
    for (std::size_t m = 0; m < fp_.size(); ++m) {
      if (fp_[m] == 0)
        fail("BooleanRoot", "zero at " + assignment_str(vars_, m));
      fp_[m] = inv[fp_[m]];
    }
  } else {
    for (std::size_t m = 0; m < fq_.size(); ++m) {
      if (fq_[m] == 0)
        fail("BooleanRoot", "zero at " + assignment_str(vars_, m));
      fq_[m] = 1 / fq_[m];
    }
  }
}

Cube Cube::restrict_bit(const VarId& v, int bit) const {
  std::size_t b = var_pos(v);
  std::vector<VarId> rest = vars_;
  rest.erase(rest.begin() + (long)b);
  Cube out(ctx_, rest);
  std::size_t lowmask = (std::size_t(1) << b) - 1;
  for (std::size_t m = 0; m < out.size(); ++m) {
    std::size_t src = (m & lowmask) | ((m & ~lowmask) << 1);
    if (ctx_->kind == FieldKind::Prime) {
      std::uint32_t val = fp_[src];
      if (bit) val = (val + fp_[src | (std::size_t(1) << b)]) % ctx_->p;
      out.fp_[m] = val;
    } else {
      mpq_class val = fq_[src];
      if (bit) val += fq_[src | (std::size_t(1) << b)];
      out.fq_[m] = val;
    }
  }
  return out;
}

Poly Cube::to_poly() const {
  Poly f(ctx_);
  for (std::size_t m = 0; m < size(); ++m) {
    Fe c = at(m);
    if (c.is_zero()) continue;
    Monomial mono;
    for (std::size_t b = 0; b < vars_.size(); ++b)
      if (m >> b & 1) mono = mono * Monomial::var(vars_[b]);
    f.add_term(mono, c);
  }
  return f;
}

bool Cube::operator==(const Cube& o) const {
  return ctx_ == o.ctx_ && vars_ == o.vars_ && fp_ == o.fp_ && fq_ == o.fq_;
}

std::string assignment_str(const std::vector<VarId>& vars, std::size_t mask) {
  std::string s = "{";
  for (std::size_t b = 0; b < vars.size(); ++b) {
    if (b) s += ",";
    s += vars[b].name() + "=" + ((mask >> b & 1) ? "1" : "0");
  }
  return s + "}";
}

Poly ml_inverse(const Poly& F, std::size_t cap) {
  return ml_inverse_on(F, F.vars(), cap);
}

Poly ml_inverse_on(const Poly& F, const std::vector<VarId>& vars, std::size_t cap) {
  if (vars.size() > cap)
    fail("TooManyVariables", std::to_string(vars.size()) +
                                 " variables exceeds interpolation cap " +
                                 std::to_string(cap));
  Cube c = Cube::values_of(F, vars);
  c.invert_pointwise();
  c.moebius();
  return c.to_poly();
}

}  // namespace ipsw
