#include "ipsw/ff.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

namespace ipsw {

bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; (std::uint64_t)d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

std::uint64_t ipow_u64(std::uint64_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

// dense F_p[x] helpers; index i holds the x^i coefficient
using Pol = std::vector<std::uint32_t>;

void poltrim(Pol& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Pol polmul_raw(const Pol& a, const Pol& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Pol c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] = (c[i + j] + (std::uint64_t)a[i] * b[j]) % p;
  poltrim(c);
  return c;
}

// remainder of a modulo monic m
Pol polrem(Pol a, const Pol& m, std::uint32_t p) {
  poltrim(a);
  std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    std::uint32_t lead = a.back();
    std::size_t shift = a.size() - 1 - dm;
    if (lead) {
      for (std::size_t i = 0; i <= dm; ++i) {
        std::uint64_t sub = (std::uint64_t)lead * m[i] % p;
        std::uint32_t& tgt = a[i + shift];
        tgt = (tgt + p - (std::uint32_t)sub) % p;
      }
    }
    a.pop_back();
    poltrim(a);
    if (a.size() <= dm) break;
  }
  return a;
}

bool poldivides(const Pol& d, const Pol& a, std::uint32_t p) {
  // d monic
  Pol r = polrem(a, d, p);
  poltrim(r);
  return r.empty();
}

bool irreducible(const Pol& f, std::uint32_t p) {
  // f monic, deg k >= 1; trial division by every monic divisor of
  // degree 1..k/2 (exhaustive, per the construction contract)
  std::size_t k = f.size() - 1;
  for (std::size_t deg = 1; deg <= k / 2; ++deg) {
    std::uint64_t count = ipow_u64(p, (std::uint32_t)deg);
    for (std::uint64_t m = 0; m < count; ++m) {
      Pol d(deg + 1, 0);
      std::uint64_t t = m;
      for (std::size_t i = 0; i < deg; ++i) {
        d[i] = (std::uint32_t)(t % p);
        t /= p;
      }
      d[deg] = 1;
      if (poldivides(d, f, p)) return false;
    }
  }
  return true;
}

struct CtxKey {
  int kind;
  std::uint32_t p, k;
  bool operator<(const CtxKey& o) const {
    return std::tie(kind, p, k) < std::tie(o.kind, o.p, o.k);
  }
};

std::map<CtxKey, FieldCtx*>& ctx_registry() {
  static std::map<CtxKey, FieldCtx*> reg;
  return reg;
}
std::mutex& ctx_mutex() {
  static std::mutex mu;
  return mu;
}

struct CtxMaker : FieldCtx {};  // grants access to the private ctor

FieldCtx* intern(FieldKind kind, std::uint32_t p, std::uint32_t k,
                 std::vector<std::uint32_t> modulus) {
  std::lock_guard<std::mutex> lock(ctx_mutex());
  CtxKey key{(int)kind, p, k};
  auto it = ctx_registry().find(key);
  if (it != ctx_registry().end()) return it->second;
  auto* ctx = new CtxMaker();
  ctx->kind = kind;
  ctx->p = p;
  ctx->k = k;
  ctx->modulus = std::move(modulus);
  ctx_registry()[key] = ctx;
  return ctx;
}

}  // namespace

std::vector<std::uint32_t> polmod_mul(const std::vector<std::uint32_t>& a,
                                      const std::vector<std::uint32_t>& b,
                                      const std::vector<std::uint32_t>& modulus,
                                      std::uint32_t p) {
  Pol c = polmul_raw(a, b, p);
  c = polrem(std::move(c), modulus, p);
  c.resize(modulus.size() - 1, 0);
  return c;
}

const FieldCtx* FieldCtx::rationals() {
  return intern(FieldKind::Rational, 0, 1, {});
}

const FieldCtx* FieldCtx::prime(std::uint32_t p) {
  if (!is_prime_u32(p)) fail("NotPrime", std::to_string(p) + " is not prime");
  return intern(FieldKind::Prime, p, 1, {});
}

const FieldCtx* FieldCtx::ext_build(std::uint32_t p, std::uint32_t k) {
  if (!is_prime_u32(p)) fail("NotPrime", std::to_string(p) + " is not prime");
  if (k < 1) fail("DegreeOutOfRange", "extension degree must be >= 1");
  if (k == 1) return prime(p);
  // scan monic candidates in lexicographic order of
  // (c_{k-1}, ..., c_0) == ascending base-p numerals
  std::uint64_t count = ipow_u64(p, k);
  for (std::uint64_t m = 0; m < count; ++m) {
    Pol f(k + 1, 0);
    std::uint64_t t = m;
    for (std::uint32_t i = 0; i < k; ++i) {
      f[i] = (std::uint32_t)(t % p);
      t /= p;
    }
    f[k] = 1;
    if (irreducible(f, p)) return intern(FieldKind::Extension, p, k, f);
  }
  fail("NoIrreducible", "no monic irreducible found (unreachable for k>=1)");
}

const FieldCtx* FieldCtx::parse_spec(const std::string& spec) {
  if (spec == "Q" || spec == "q") return rationals();
  auto caret = spec.find('^');
  auto to_u32 = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      fail("BadFieldSpec", "cannot parse field spec '" + spec + "'");
    return (std::uint32_t)std::stoul(s);
  };
  if (caret == std::string::npos) return prime(to_u32(spec));
  return ext_build(to_u32(spec.substr(0, caret)), to_u32(spec.substr(caret + 1)));
}

std::string FieldCtx::spec() const {
  switch (kind) {
    case FieldKind::Rational:
      return "Q";
    case FieldKind::Prime:
      return std::to_string(p);
    case FieldKind::Extension:
      return std::to_string(p) + "^" + std::to_string(k);
  }
  return "?";
}

std::uint64_t FieldCtx::q() const {
  if (!finite()) fail("DegreeOutOfRange", "q() on rationals");
  return ipow_u64(p, k);
}

Fe FieldCtx::zero() const { return from_int(0); }
Fe FieldCtx::one() const { return from_int(1); }

Fe FieldCtx::from_int(long v) const {
  Fe e;
  e.ctx_ = this;
  switch (kind) {
    case FieldKind::Prime: {
      long r = v % (long)p;
      if (r < 0) r += p;
      e.v_ = (std::uint64_t)r;
      break;
    }
    case FieldKind::Extension: {
      long r = v % (long)p;
      if (r < 0) r += p;
      std::vector<std::uint32_t> c(k, 0);
      c[0] = (std::uint32_t)r;
      e.v_ = std::move(c);
      break;
    }
    case FieldKind::Rational:
      e.v_ = mpq_class(v);
      break;
  }
  return e;
}

Fe FieldCtx::from_mpz(const mpz_class& v) const {
  if (kind == FieldKind::Rational) {
    Fe e;
    e.ctx_ = this;
    e.v_ = mpq_class(v);
    return e;
  }
  mpz_class r = v % p;
  if (r < 0) r += p;
  return from_int(r.get_si());
}

Fe FieldCtx::from_mpq(const mpq_class& v) const {
  if (kind != FieldKind::Rational)
    fail("MixedContexts", "rational literal in finite field");
  Fe e;
  e.ctx_ = this;
  mpq_class c = v;
  c.canonicalize();
  e.v_ = std::move(c);
  return e;
}

Fe FieldCtx::from_ext(std::vector<std::uint32_t> coeffs) const {
  if (kind != FieldKind::Extension)
    fail("MixedContexts", "extension coefficients in non-extension field");
  coeffs.resize(k, 0);
  for (auto& c : coeffs) c %= p;
  Fe e;
  e.ctx_ = this;
  e.v_ = std::move(coeffs);
  return e;
}

namespace {
void check_ctx(const Fe& a, const Fe& b) {
  if (a.ctx() != b.ctx())
    fail("MixedContexts", "operands belong to different field contexts");
}
}  // namespace

Fe FieldCtx::add(const Fe& a, const Fe& b) const {
  check_ctx(a, b);
  Fe e;
  e.ctx_ = this;
  switch (kind) {
    case FieldKind::Prime:
      e.v_ = (std::get<std::uint64_t>(a.v_) + std::get<std::uint64_t>(b.v_)) % p;
      break;
    case FieldKind::Extension: {
      auto c = std::get<std::vector<std::uint32_t>>(a.v_);
      const auto& d = std::get<std::vector<std::uint32_t>>(b.v_);
      for (std::uint32_t i = 0; i < k; ++i) c[i] = (c[i] + d[i]) % p;
      e.v_ = std::move(c);
      break;
    }
    case FieldKind::Rational:
      e.v_ = mpq_class(std::get<mpq_class>(a.v_) + std::get<mpq_class>(b.v_));
      break;
  }
  return e;
}

Fe FieldCtx::sub(const Fe& a, const Fe& b) const { return add(a, neg(b)); }

Fe FieldCtx::mul(const Fe& a, const Fe& b) const {
  check_ctx(a, b);
  Fe e;
  e.ctx_ = this;
  switch (kind) {
    case FieldKind::Prime:
      e.v_ = std::get<std::uint64_t>(a.v_) * std::get<std::uint64_t>(b.v_) % p;
      break;
    case FieldKind::Extension:
      e.v_ = polmod_mul(std::get<std::vector<std::uint32_t>>(a.v_),
                        std::get<std::vector<std::uint32_t>>(b.v_), modulus, p);
      break;
    case FieldKind::Rational:
      e.v_ = mpq_class(std::get<mpq_class>(a.v_) * std::get<mpq_class>(b.v_));
      break;
  }
  return e;
}

Fe FieldCtx::neg(const Fe& a) const {
  Fe e;
  e.ctx_ = this;
  switch (kind) {
    case FieldKind::Prime:
      e.v_ = (p - std::get<std::uint64_t>(a.v_)) % p;
      break;
    case FieldKind::Extension: {
      auto c = std::get<std::vector<std::uint32_t>>(a.v_);
      for (auto& x : c) x = (p - x) % p;
      e.v_ = std::move(c);
      break;
    }
    case FieldKind::Rational:
      e.v_ = mpq_class(-std::get<mpq_class>(a.v_));
      break;
  }
  return e;
}

Fe FieldCtx::inv(const Fe& a) const {
  if (a.is_zero()) fail("ZeroInversion", "inverse of zero");
  if (kind == FieldKind::Rational) {
    Fe e;
    e.ctx_ = this;
    e.v_ = mpq_class(1 / std::get<mpq_class>(a.v_));
    return e;
  }
  return pow(a, q() - 2);  // Fermat: a^(q-2)
}

Fe FieldCtx::pow(const Fe& a, std::uint64_t e) const {
  Fe acc = one();
  Fe base = a;
  while (e) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

Fe FieldCtx::lift(const Fe& a) const {
  if (kind != FieldKind::Extension || a.ctx()->kind != FieldKind::Prime ||
      a.ctx()->p != p)
    fail("MixedContexts", "lift requires F_p element into F_p^k");
  std::vector<std::uint32_t> c(k, 0);
  c[0] = (std::uint32_t)std::get<std::uint64_t>(a.v_);
  Fe e;
  e.ctx_ = this;
  e.v_ = std::move(c);
  return e;
}

Fe FieldCtx::sample_point(std::uint64_t i) const {
  switch (kind) {
    case FieldKind::Prime:
      return from_int((long)(i % p));
    case FieldKind::Extension: {
      std::vector<std::uint32_t> c(k, 0);
      std::uint64_t t = i % q();
      for (std::uint32_t j = 0; j < k; ++j) {
        c[j] = (std::uint32_t)(t % p);
        t /= p;
      }
      Fe e;
      e.ctx_ = this;
      e.v_ = std::move(c);
      return e;
    }
    case FieldKind::Rational:
      return from_mpz(mpz_class((unsigned long)i));
  }
  fail("BadFieldSpec", "unreachable");
}

std::string FieldCtx::elem_str(const Fe& a) const {
  switch (kind) {
    case FieldKind::Prime:
      return std::to_string(std::get<std::uint64_t>(a.v_));
    case FieldKind::Extension: {
      const auto& c = std::get<std::vector<std::uint32_t>>(a.v_);
      std::string s = "(";
      for (std::uint32_t i = 0; i < k; ++i) {
        if (i) s += ",";
        s += std::to_string(c[i]);
      }
      return s + ")";
    }
    case FieldKind::Rational:
      return std::get<mpq_class>(a.v_).get_str();
  }
  return "?";
}

Fe FieldCtx::parse(const std::string& s) const {
  if (s.empty()) fail("BadFieldSpec", "empty field element literal");
  switch (kind) {
    case FieldKind::Rational: {
      mpq_class v(s);
      v.canonicalize();
      return from_mpq(v);
    }
    case FieldKind::Prime: {
      mpz_class v(s);
      return from_mpz(v);
    }
    case FieldKind::Extension: {
      if (s.front() != '(' || s.back() != ')') {
        mpz_class v(s);
        mpz_class r = v % p;
        if (r < 0) r += p;
        std::vector<std::uint32_t> c(k, 0);
        c[0] = (std::uint32_t)r.get_ui();
        return from_ext(std::move(c));
      }
      std::vector<std::uint32_t> c;
      std::stringstream ss(s.substr(1, s.size() - 2));
      std::string tok;
      while (std::getline(ss, tok, ',')) c.push_back((std::uint32_t)std::stoul(tok));
      if (c.size() != k) fail("BadFieldSpec", "extension literal arity mismatch");
      return from_ext(std::move(c));
    }
  }
  fail("BadFieldSpec", "unreachable");
}

bool Fe::is_zero() const {
  switch (ctx_->kind) {
    case FieldKind::Prime:
      return std::get<std::uint64_t>(v_) == 0;
    case FieldKind::Extension: {
      for (auto c : std::get<std::vector<std::uint32_t>>(v_))
        if (c) return false;
      return true;
    }
    case FieldKind::Rational:
      return std::get<mpq_class>(v_) == 0;
  }
  return false;
}

bool Fe::is_one() const { return *this == ctx_->one(); }

bool Fe::operator==(const Fe& o) const {
  if (ctx_ != o.ctx_)
    fail("MixedContexts", "comparing elements of different field contexts");
  return v_ == o.v_;
}

Fe Fe::operator+(const Fe& o) const { return ctx_->add(*this, o); }
Fe Fe::operator-(const Fe& o) const { return ctx_->sub(*this, o); }
Fe Fe::operator*(const Fe& o) const { return ctx_->mul(*this, o); }
Fe Fe::operator-() const { return ctx_->neg(*this); }

std::string Fe::str() const { return ctx_->elem_str(*this); }

std::uint64_t Fe::residue() const { return std::get<std::uint64_t>(v_); }
const std::vector<std::uint32_t>& Fe::ext_coeffs() const {
  return std::get<std::vector<std::uint32_t>>(v_);
}
const mpq_class& Fe::rat() const { return std::get<mpq_class>(v_); }

Fe ff_inv(const Fe& a) { return a.ctx()->inv(a); }
Fe ff_pow(const Fe& a, std::uint64_t e) { return a.ctx()->pow(a, e); }

}  // namespace ipsw
