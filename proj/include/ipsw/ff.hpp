#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <variant>
#include <vector>

#include "ipsw/util.hpp"

namespace ipsw {

enum class FieldKind { Prime, Extension, Rational };

class FieldCtx;

// Immutable field element tagged with its owning context. Contexts are
// interned and never destroyed, so the raw pointer is always valid.
class Fe {
 public:
  Fe() : ctx_(nullptr), v_(std::uint64_t(0)) {}

  const FieldCtx* ctx() const { return ctx_; }
  bool valid() const { return ctx_ != nullptr; }
  bool is_zero() const;
  bool is_one() const;

  bool operator==(const Fe& o) const;
  bool operator!=(const Fe& o) const { return !(*this == o); }

  Fe operator+(const Fe& o) const;
  Fe operator-(const Fe& o) const;
  Fe operator*(const Fe& o) const;
  Fe operator-() const;

  std::string str() const;

  // canonical residue for prime elements
  std::uint64_t residue() const;
  const std::vector<std::uint32_t>& ext_coeffs() const;
  const mpq_class& rat() const;

 private:
  friend class FieldCtx;
  const FieldCtx* ctx_;
  std::variant<std::uint64_t, std::vector<std::uint32_t>, mpq_class> v_;
};

Fe ff_inv(const Fe& a);
Fe ff_pow(const Fe& a, std::uint64_t e);

class FieldCtx {
 public:
  FieldKind kind;
  std::uint32_t p = 0;  // characteristic (finite kinds)
  std::uint32_t k = 1;  // extension degree
  // Monic irreducible modulus, coefficient of x^i at index i, size k+1.
  std::vector<std::uint32_t> modulus;

  static const FieldCtx* rationals();
  static const FieldCtx* prime(std::uint32_t p);
  // Lexicographically-least monic irreducible of degree k over F_p;
  // ext_build(p,1) is the prime field itself.
  static const FieldCtx* ext_build(std::uint32_t p, std::uint32_t k);
  // "5", "5^2", "Q"
  static const FieldCtx* parse_spec(const std::string& spec);
  std::string spec() const;

  bool finite() const { return kind != FieldKind::Rational; }
  // field size p^k; only for finite kinds
  std::uint64_t q() const;

  Fe zero() const;
  Fe one() const;
  Fe from_int(long v) const;
  Fe from_mpz(const mpz_class& v) const;
  Fe from_mpq(const mpq_class& v) const;  // rational kind only
  Fe from_ext(std::vector<std::uint32_t> coeffs) const;
  Fe parse(const std::string& s) const;

  Fe add(const Fe& a, const Fe& b) const;
  Fe sub(const Fe& a, const Fe& b) const;
  Fe mul(const Fe& a, const Fe& b) const;
  Fe neg(const Fe& a) const;
  Fe inv(const Fe& a) const;
  Fe pow(const Fe& a, std::uint64_t e) const;

  // Embeds a prime-field element into this extension of the same p.
  Fe lift(const Fe& a) const;

  // i-th element of the canonical sample enumeration (finite: all q elements;
  // rationals: the integers). Used for SZ sampling and eval_dim sets.
  Fe sample_point(std::uint64_t i) const;

  std::string elem_str(const Fe& a) const;

 protected:
  FieldCtx() = default;
};

// helpers shared with extension construction and cnfbridge
bool is_prime_u32(std::uint32_t n);
std::vector<std::uint32_t> polmod_mul(const std::vector<std::uint32_t>& a,
                                      const std::vector<std::uint32_t>& b,
                                      const std::vector<std::uint32_t>& modulus,
                                      std::uint32_t p);

}  // namespace ipsw
