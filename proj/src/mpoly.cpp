#include "ipsw/mpoly.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace ipsw {

VarId VarId::plain(std::uint32_t idx) {
  VarId v;
  v.cls = Class::Plain;
  v.i = idx;
  return v;
}
VarId VarId::pos_block(std::uint32_t block, std::uint64_t bits, std::uint8_t len) {
  VarId v;
  v.cls = Class::PosBlock;
  v.i = block;
  v.bits = bits;
  v.len = len;
  return v;
}
VarId VarId::neg_block(std::uint32_t block, std::uint64_t bits, std::uint8_t len) {
  VarId v;
  v.cls = Class::NegBlock;
  v.i = block;
  v.bits = bits;
  v.len = len;
  return v;
}
VarId VarId::gadget_y(std::uint32_t i) {
  VarId v;
  v.cls = Class::Gadget;
  v.gkind = GKind::Y;
  v.i = i;
  return v;
}
VarId VarId::gadget_z(std::uint32_t i, std::uint32_t j) {
  VarId v;
  v.cls = Class::Gadget;
  v.gkind = GKind::Z;
  v.i = i;
  v.j = j;
  return v;
}
VarId VarId::gadget_w(std::uint32_t i, std::uint32_t j) {
  VarId v;
  v.cls = Class::Gadget;
  v.gkind = GKind::W;
  v.i = i;
  v.j = j;
  return v;
}

static std::tuple<int, int, std::uint32_t, std::uint32_t, std::uint32_t, std::uint64_t>
var_key(const VarId& v) {
  // sigma strings of equal length compare lexicographically via MSB-first bits
  return {(int)v.cls, (int)v.gkind, v.i, v.j, v.len, v.bits};
}

bool VarId::operator<(const VarId& o) const { return var_key(*this) < var_key(o); }
bool VarId::operator==(const VarId& o) const { return var_key(*this) == var_key(o); }

static std::string bits_str(std::uint64_t bits, std::uint8_t len) {
  std::string s(len, '0');
  for (std::uint8_t t = 0; t < len; ++t)
    if (bits >> (len - 1 - t) & 1) s[t] = '1';
  return s;
}

std::string VarId::name() const {
  switch (cls) {
    case Class::Plain:
      return "x_" + std::to_string(i);
    case Class::PosBlock:
      return "x^(" + std::to_string(i) + ")_" + bits_str(bits, len);
    case Class::NegBlock:
      return "y^(" + std::to_string(i) + ")_" + bits_str(bits, len);
    case Class::Gadget:
      switch (gkind) {
        case GKind::Y:
          return "y_" + std::to_string(i);
        case GKind::Z:
          return "z_{" + std::to_string(i) + "," + std::to_string(j) + "}";
        case GKind::W:
          return "w_{" + std::to_string(i) + "," + std::to_string(j) + "}";
      }
  }
  return "?";
}

VarId VarId::parse(const std::string& s) {
  auto bad = [&]() -> VarId { fail("BadVarName", "cannot parse variable '" + s + "'"); };
  if (s.size() < 3) bad();
  char head = s[0];
  if (s[1] == '_' && s.find('{') == std::string::npos && s.find("^(") == std::string::npos) {
    std::uint32_t idx = (std::uint32_t)std::stoul(s.substr(2));
    if (head == 'x') return plain(idx);
    if (head == 'y') return gadget_y(idx);
    bad();
  }
  if (s.substr(1, 2) == "^(") {
    auto close = s.find(')');
    if (close == std::string::npos || close + 2 > s.size() || s[close + 1] != '_') bad();
    std::uint32_t block = (std::uint32_t)std::stoul(s.substr(3, close - 3));
    std::string sig = s.substr(close + 2);
    std::uint64_t bits = 0;
    for (char c : sig) {
      if (c != '0' && c != '1') bad();
      bits = bits << 1 | (c == '1');
    }
    if (head == 'x') return pos_block(block, bits, (std::uint8_t)sig.size());
    if (head == 'y') return neg_block(block, bits, (std::uint8_t)sig.size());
    bad();
  }
  if (s[1] == '_' && s[2] == '{') {
    auto comma = s.find(','), close = s.find('}');
    if (comma == std::string::npos || close == std::string::npos) bad();
    std::uint32_t a = (std::uint32_t)std::stoul(s.substr(3, comma - 3));
    std::uint32_t b = (std::uint32_t)std::stoul(s.substr(comma + 1, close - comma - 1));
    if (head == 'z') return gadget_z(a, b);
    if (head == 'w') return gadget_w(a, b);
  }
  return bad();
}

Monomial Monomial::var(const VarId& v, std::uint32_t e) {
  Monomial m;
  if (e) m.e_.push_back({v, e});
  return m;
}

int Monomial::deg() const {
  std::uint64_t d = 0;
  for (auto& [v, e] : e_) d += e;
  return (int)d;
}

std::uint32_t Monomial::exp(const VarId& v) const {
  for (auto& [u, e] : e_)
    if (u == v) return e;
  return 0;
}

std::uint32_t Monomial::max_ideg() const {
  std::uint32_t d = 0;
  for (auto& [v, e] : e_) d = std::max(d, e);
  return d;
}

bool Monomial::multilinear() const { return max_ideg() <= 1; }

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  r.e_.reserve(e_.size() + o.e_.size());
  std::size_t a = 0, b = 0;
  while (a < e_.size() || b < o.e_.size()) {
    if (b == o.e_.size() || (a < e_.size() && e_[a].first < o.e_[b].first))
      r.e_.push_back(e_[a++]);
    else if (a == e_.size() || o.e_[b].first < e_[a].first)
      r.e_.push_back(o.e_[b++]);
    else {
      r.e_.push_back({e_[a].first, e_[a].second + o.e_[b].second});
      ++a;
      ++b;
    }
  }
  return r;
}

std::optional<Monomial> Monomial::divide(const Monomial& o) const {
  Monomial r;
  std::size_t a = 0;
  for (auto& [v, e] : o.e_) {
    while (a < e_.size() && e_[a].first < v) r.e_.push_back(e_[a++]);
    if (a == e_.size() || !(e_[a].first == v) || e_[a].second < e) return std::nullopt;
    if (e_[a].second > e) r.e_.push_back({v, e_[a].second - e});
    ++a;
  }
  while (a < e_.size()) r.e_.push_back(e_[a++]);
  return r;
}

Monomial Monomial::without(const VarId& v) const {
  Monomial r;
  for (auto& [u, e] : e_)
    if (!(u == v)) r.e_.push_back({u, e});
  return r;
}

Monomial Monomial::collapse() const {
  Monomial r;
  for (auto& [u, e] : e_) r.e_.push_back({u, 1});
  return r;
}

std::string Monomial::str() const {
  if (e_.empty()) return "1";
  std::string s;
  for (auto& [v, e] : e_) {
    if (!s.empty()) s += "*";
    s += v.name();
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

int grlex_cmp(const Monomial& a, const Monomial& b, bool reversed) {
  int da = a.deg(), db = b.deg();
  if (da != db) return da < db ? -1 : 1;
  const auto& ea = a.factors();
  const auto& eb = b.factors();
  if (!reversed) {
    // scan from the largest variable down; bigger exponent there wins
    std::size_t ia = ea.size(), ib = eb.size();
    while (ia > 0 || ib > 0) {
      if (ia == 0) return -1;  // b still has a larger variable
      if (ib == 0) return 1;
      const auto& [va, xa] = ea[ia - 1];
      const auto& [vb, xb] = eb[ib - 1];
      if (va < vb) return -1;
      if (vb < va) return 1;
      if (xa != xb) return xa < xb ? -1 : 1;
      --ia;
      --ib;
    }
    return 0;
  }
  // reversed precedence: smallest canonical variable decides first
  std::size_t ia = 0, ib = 0;
  while (ia < ea.size() || ib < eb.size()) {
    if (ia == ea.size()) return -1;
    if (ib == eb.size()) return 1;
    const auto& [va, xa] = ea[ia];
    const auto& [vb, xb] = eb[ib];
    if (va < vb) return 1;  // a owns the more significant variable
    if (vb < va) return -1;
    if (xa != xb) return xa < xb ? -1 : 1;
    ++ia;
    ++ib;
  }
  return 0;
}

Poly Poly::constant(const Fe& c) {
  Poly f(c.ctx());
  if (!c.is_zero()) f.t_.emplace(Monomial::one(), c);
  return f;
}

Poly Poly::var(const FieldCtx* ctx, const VarId& v) {
  Poly f(ctx);
  f.t_.emplace(Monomial::var(v), ctx->one());
  return f;
}

void Poly::add_term(const Monomial& m, const Fe& c) {
  if (c.is_zero()) return;
  auto it = t_.find(m);
  if (it == t_.end()) {
    t_.emplace(m, c);
    return;
  }
  Fe s = it->second + c;
  if (s.is_zero())
    t_.erase(it);
  else
    it->second = s;
}

Poly Poly::operator+(const Poly& o) const {
  if (ctx_ != o.ctx_) fail("MixedContexts", "poly add across contexts");
  Poly r = *this;
  for (auto& [m, c] : o.t_) r.add_term(m, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
  Poly r(ctx_);
  for (auto& [m, c] : t_) r.t_.emplace(m, -c);
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  if (ctx_ != o.ctx_) fail("MixedContexts", "poly mul across contexts");
  Poly r(ctx_);
  for (auto& [ma, ca] : t_)
    for (auto& [mb, cb] : o.t_) r.add_term(ma * mb, ca * cb);
  return r;
}

bool Poly::operator==(const Poly& o) const {
  if (ctx_ != o.ctx_) fail("MixedContexts", "poly compare across contexts");
  if (t_.size() != o.t_.size()) return false;
  auto a = t_.begin();
  auto b = o.t_.begin();
  for (; a != t_.end(); ++a, ++b)
    if (a->first != b->first || !(a->second == b->second)) return false;
  return true;
}

Poly Poly::scale(const Fe& c) const {
  if (c.is_zero()) return Poly(ctx_);
  Poly r(ctx_);
  for (auto& [m, k] : t_) r.t_.emplace(m, k * c);
  return r;
}

Poly Poly::pow(std::uint64_t e) const {
  Poly r = constant(ctx_->one());
  for (std::uint64_t i = 0; i < e; ++i) r = r * *this;
  return r;
}

int Poly::degree() const {
  if (t_.empty()) return kDegMinusInf;
  int d = 0;
  for (auto& [m, c] : t_) d = std::max(d, m.deg());
  return d;
}

std::uint32_t Poly::ideg(const VarId& v) const {
  std::uint32_t d = 0;
  for (auto& [m, c] : t_) d = std::max(d, m.exp(v));
  return d;
}

std::uint32_t Poly::max_ideg() const {
  std::uint32_t d = 0;
  for (auto& [m, c] : t_) d = std::max(d, m.max_ideg());
  return d;
}

bool Poly::is_multilinear() const { return max_ideg() <= 1; }

std::vector<VarId> Poly::vars() const {
  std::set<VarId> s;
  for (auto& [m, c] : t_)
    for (auto& [v, e] : m.factors()) s.insert(v);
  return {s.begin(), s.end()};
}

Fe Poly::coeff(const Monomial& m) const {
  auto it = t_.find(m);
  return it == t_.end() ? ctx_->zero() : it->second;
}

const Monomial& Poly::leading_monomial(bool reversed) const {
  if (t_.empty()) fail("ZeroPolynomial", "leading monomial of 0");
  if (!reversed) return t_.rbegin()->first;
  const Monomial* best = &t_.begin()->first;
  for (auto& [m, c] : t_)
    if (grlex_cmp(m, *best, true) > 0) best = &m;
  return *best;
}

Fe Poly::leading_coeff(bool reversed) const {
  return t_.find(leading_monomial(reversed))->second;
}

Fe Poly::eval(const std::map<VarId, Fe>& asg) const {
  Fe acc = ctx_->zero();
  for (auto& [m, c] : t_) {
    Fe term = c;
    for (auto& [v, e] : m.factors()) {
      auto it = asg.find(v);
      if (it == asg.end()) fail("MissingVariable", "eval misses " + v.name());
      term = term * ff_pow(it->second, e);
    }
    acc = acc + term;
  }
  return acc;
}

Poly Poly::subst_const(const std::map<VarId, Fe>& asg) const {
  Poly r(ctx_);
  for (auto& [m, c] : t_) {
    Fe k = c;
    Monomial rest;
    for (auto& [v, e] : m.factors()) {
      auto it = asg.find(v);
      if (it == asg.end())
        rest = rest * Monomial::var(v, e);
      else
        k = k * ff_pow(it->second, e);
    }
    r.add_term(rest, k);
  }
  return r;
}

Poly Poly::subst(const std::map<VarId, Poly>& asg) const {
  Poly r(ctx_);
  for (auto& [m, c] : t_) {
    Poly term = Poly::constant(c);
    Monomial rest;
    for (auto& [v, e] : m.factors()) {
      auto it = asg.find(v);
      if (it == asg.end())
        rest = rest * Monomial::var(v, e);
      else
        term = term * it->second.pow(e);
    }
    Poly shifted(ctx_);
    for (auto& [mt, ct] : term.terms()) shifted.add_term(mt * rest, ct);
    r = r + shifted;
  }
  return r;
}

Poly Poly::lift_to(const FieldCtx* target) const {
  if (target == ctx_) return *this;
  if (ctx_->kind != FieldKind::Prime)
    fail("MixedContexts", "lift_to only lifts prime-field polynomials");
  Poly r(target);
  for (auto& [m, c] : t_) {
    long v = (long)c.residue();
    Fe lifted = target->kind == FieldKind::Extension ? target->lift(c)
                                                     : target->from_int(v);
    r.t_.emplace(m, lifted);
  }
  return r;
}

std::string Poly::str() const {
  if (t_.empty()) return "0";
  std::string s;
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    std::string c = it->second.str();
    bool neg_rat = !c.empty() && c[0] == '-';
    if (s.empty()) {
      // leading term keeps its sign
    } else if (neg_rat) {
      s += " - ";
      c = c.substr(1);
    } else {
      s += " + ";
    }
    const Monomial& m = it->first;
    if (m.is_one())
      s += c;
    else if (it->second.is_one())
      s += m.str();
    else if ((-it->second).is_one() && s.empty() && ctx_->kind == FieldKind::Rational)
      s += "-" + m.str();
    else
      s += c + "*" + m.str();
  }
  return s;
}

std::uint64_t Poly::hash() const { return fnv1a(str()); }

Poly ml(const Poly& f) {
  Poly r(f.ctx());
  for (auto& [m, c] : f.terms()) r.add_term(m.collapse(), c);
  return r;
}

BoolReduction bool_reduce(const Poly& f) {
  BoolReduction out;
  Poly cur = f;
  const FieldCtx* ctx = f.ctx();
  // one pass per variable: dividing by v^2 - v never raises other exponents
  for (const VarId& v : f.vars()) {
    if (cur.ideg(v) < 2) continue;
    Poly reduced(ctx);
    Poly quo(ctx);
    for (auto& [m, c] : cur.terms()) {
      std::uint32_t e = m.exp(v);
      if (e < 2) {
        reduced.add_term(m, c);
        continue;
      }
      // v^e = (v^2 - v)(v^{e-2} + ... + v + 1) + v
      Monomial rest = m.without(v);
      reduced.add_term(rest * Monomial::var(v), c);
      for (std::uint32_t t = 0; t + 2 <= e; ++t)
        quo.add_term(t ? rest * Monomial::var(v, t) : rest, c);
    }
    if (!quo.is_zero()) out.quotients[v] = quo;
    cur = reduced;
  }
  out.remainder = cur;
  return out;
}

Poly e_sym(std::size_t d, const std::vector<VarId>& vars, const FieldCtx* ctx) {
  std::vector<Poly> items;
  items.reserve(vars.size());
  for (auto& v : vars) items.push_back(Poly::var(ctx, v));
  return e_sym_of(d, items, ctx);
}

Poly e_sym_of(std::size_t d, const std::vector<Poly>& items, const FieldCtx* ctx) {
  if (d > items.size())
    fail("DegreeOutOfRange", "e_" + std::to_string(d) + " over " +
                                 std::to_string(items.size()) + " items");
  std::vector<Poly> e(d + 1, Poly(ctx));
  e[0] = Poly::constant(ctx->one());
  for (const Poly& x : items)
    for (std::size_t j = std::min(d, (std::size_t)items.size()); j >= 1; --j)
      e[j] = e[j] + e[j - 1] * x;
  return e[d];
}

Poly ml_pow(const Poly& f, std::uint64_t e) {
  const FieldCtx* ctx = f.ctx();
  if (e == 0) return Poly::constant(ctx->one());
  Poly base = ml(f);
  Poly r = base;
  for (std::uint64_t i = 1; i < e; ++i) r = ml(r * base);
  return r;
}

std::vector<Fe> boolean_image(const Poly& f, std::size_t cap) {
  std::vector<VarId> vars = f.vars();
  std::size_t n = vars.size();
  if (n > cap)
    fail("TooManyVariables", std::to_string(n) + " variables exceeds cap " +
                                 std::to_string(cap));
  Poly g = ml(f);
  // dense multilinear coefficients, then a zeta transform gives all values
  std::map<VarId, std::size_t> pos;
  for (std::size_t i = 0; i < n; ++i) pos[vars[i]] = i;
  std::vector<Fe> val(std::size_t(1) << n, f.ctx()->zero());
  for (auto& [m, c] : g.terms()) {
    std::size_t mask = 0;
    for (auto& [v, e] : m.factors()) mask |= std::size_t(1) << pos[v];
    val[mask] = val[mask] + c;
  }
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t mask = 0; mask < val.size(); ++mask)
      if (mask >> b & 1) val[mask] = val[mask] + val[mask ^ (std::size_t(1) << b)];
  std::vector<Fe> image;
  std::set<std::string> seen;
  for (auto& v : val)
    if (seen.insert(v.str()).second) image.push_back(v);
  return image;
}

bool image_contains(const std::vector<Fe>& image, const Fe& v) {
  for (auto& x : image)
    if (x == v) return true;
  return false;
}

}  // namespace ipsw
