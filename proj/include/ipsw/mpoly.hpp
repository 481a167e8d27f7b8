#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ipsw/ff.hpp"

namespace ipsw {

// Structured variable identity. Canonical total order: Plain by index, then
// PosBlock by (block, sigma), then NegBlock by (block, sigma), then Gadget by
// (kind, indices). Lower position in this order = smaller variable.
struct VarId {
  enum class Class : std::uint8_t { Plain = 0, PosBlock = 1, NegBlock = 2, Gadget = 3 };
  enum class GKind : std::uint8_t { Y = 0, Z = 1, W = 2 };

  Class cls = Class::Plain;
  GKind gkind = GKind::Y;
  std::uint32_t i = 0;     // Plain index, block id, or first gadget index
  std::uint32_t j = 0;     // second gadget index
  std::uint64_t bits = 0;  // block string, MSB = lowest interval position
  std::uint8_t len = 0;    // block string length

  static VarId plain(std::uint32_t idx);
  static VarId pos_block(std::uint32_t block, std::uint64_t bits, std::uint8_t len);
  static VarId neg_block(std::uint32_t block, std::uint64_t bits, std::uint8_t len);
  static VarId gadget_y(std::uint32_t i);
  static VarId gadget_z(std::uint32_t i, std::uint32_t j);
  static VarId gadget_w(std::uint32_t i, std::uint32_t j);

  bool operator<(const VarId& o) const;
  bool operator==(const VarId& o) const;
  bool operator!=(const VarId& o) const { return !(*this == o); }

  std::string name() const;
  static VarId parse(const std::string& name);
};

constexpr int kDegMinusInf = INT32_MIN;  // deg(0)

// Exponent map, sorted by VarId, no zero exponents.
class Monomial {
 public:
  Monomial() = default;
  static Monomial one() { return Monomial(); }
  static Monomial var(const VarId& v, std::uint32_t e = 1);

  bool is_one() const { return e_.empty(); }
  int deg() const;
  std::uint32_t exp(const VarId& v) const;
  std::uint32_t max_ideg() const;
  bool multilinear() const;
  const std::vector<std::pair<VarId, std::uint32_t>>& factors() const { return e_; }

  Monomial operator*(const Monomial& o) const;
  // exponentwise division; nullopt if not divisible
  std::optional<Monomial> divide(const Monomial& o) const;
  Monomial without(const VarId& v) const;
  Monomial collapse() const;  // all exponents -> 1

  bool operator==(const Monomial& o) const { return e_ == o.e_; }
  bool operator!=(const Monomial& o) const { return !(*this == o); }

  std::string str() const;

 private:
  std::vector<std::pair<VarId, std::uint32_t>> e_;
};

// Graded lexicographic compare; <0, 0, >0. With reversed=true the variable
// precedence is flipped (largest variable = lowest canonical position).
int grlex_cmp(const Monomial& a, const Monomial& b, bool reversed = false);

struct MonoLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return grlex_cmp(a, b) < 0;
  }
};

class Poly {
 public:
  using Terms = std::map<Monomial, Fe, MonoLess>;

  Poly() : ctx_(nullptr) {}
  explicit Poly(const FieldCtx* ctx) : ctx_(ctx) {}

  static Poly zero(const FieldCtx* ctx) { return Poly(ctx); }
  static Poly constant(const Fe& c);
  static Poly constant(const FieldCtx* ctx, long v) { return constant(ctx->from_int(v)); }
  static Poly var(const FieldCtx* ctx, const VarId& v);

  const FieldCtx* ctx() const { return ctx_; }
  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  std::size_t term_count() const { return t_.size(); }

  void add_term(const Monomial& m, const Fe& c);

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly scale(const Fe& c) const;
  Poly pow(std::uint64_t e) const;

  int degree() const;            // kDegMinusInf for 0
  std::uint32_t ideg(const VarId& v) const;
  std::uint32_t max_ideg() const;
  bool is_multilinear() const;
  std::vector<VarId> vars() const;

  Fe coeff(const Monomial& m) const;  // zero() if absent
  const Monomial& leading_monomial(bool reversed = false) const;
  Fe leading_coeff(bool reversed = false) const;

  Fe eval(const std::map<VarId, Fe>& asg) const;           // total
  Poly subst_const(const std::map<VarId, Fe>& asg) const;  // partial
  Poly subst(const std::map<VarId, Poly>& asg) const;      // partial

  Poly lift_to(const FieldCtx* target) const;  // F_p -> F_p^k or Q (residues)

  std::string str() const;
  std::uint64_t hash() const;

 private:
  const FieldCtx* ctx_;
  Terms t_;
};

Poly ml(const Poly& f);

struct BoolReduction {
  Poly remainder;                // = ml(f)
  std::map<VarId, Poly> quotients;  // f = remainder + sum h_v * (v^2 - v)
};
BoolReduction bool_reduce(const Poly& f);

Poly e_sym(std::size_t d, const std::vector<VarId>& vars, const FieldCtx* ctx);
// elementary symmetric in arbitrary polynomial arguments (used by ks_sym_e2)
Poly e_sym_of(std::size_t d, const std::vector<Poly>& items, const FieldCtx* ctx);

Poly ml_pow(const Poly& f, std::uint64_t e);

// exact image of f over {0,1}^vars, deterministic order; cap guards 2^n work
std::vector<Fe> boolean_image(const Poly& f, std::size_t cap = 24);
bool image_contains(const std::vector<Fe>& image, const Fe& v);

}  // namespace ipsw
