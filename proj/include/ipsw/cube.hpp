#pragma once

#include "ipsw/mpoly.hpp"

namespace ipsw {

// Dense array over the Boolean cube of a fixed variable list (ascending
// canonical order; mask bit i <-> vars[i]). Holds either multilinear
// coefficients or point values; zeta/moebius convert between the two in
// O(n 2^n). Prime fields use raw residues, rationals exact mpq.
class Cube {
 public:
  Cube(const FieldCtx* ctx, std::vector<VarId> vars);

  static Cube coeffs_of(const Poly& f, const std::vector<VarId>& vars);
  // values of f at every Boolean point (via ml + zeta)
  static Cube values_of(const Poly& f, const std::vector<VarId>& vars);

  const FieldCtx* ctx() const { return ctx_; }
  const std::vector<VarId>& vars() const { return vars_; }
  std::size_t size() const { return std::size_t(1) << vars_.size(); }

  Fe at(std::size_t mask) const;
  void set(std::size_t mask, const Fe& v);

  void zeta();     // coefficients -> values
  void moebius();  // values -> coefficients

  // pointwise inversion; reports the witness assignment on a zero
  void invert_pointwise() ;

  // drop variable v fixed to bit (on the coefficient representation)
  Cube restrict_bit(const VarId& v, int bit) const;

  Poly to_poly() const;  // from coefficients

  bool operator==(const Cube& o) const;

 private:
  const FieldCtx* ctx_;
  std::vector<VarId> vars_;
  std::vector<std::uint32_t> fp_;   // finite prime storage
  std::vector<mpq_class> fq_;      // rational storage
  std::size_t var_pos(const VarId& v) const;
};

// the unique multilinear g with g*F = 1 over the cube, by interpolation;
// BooleanRoot (with witness) if F vanishes somewhere on the cube
Poly ml_inverse(const Poly& F, std::size_t cap = 20);
// same, over an explicit variable list (superset of vars(F))
Poly ml_inverse_on(const Poly& F, const std::vector<VarId>& vars, std::size_t cap = 20);

std::string assignment_str(const std::vector<VarId>& vars, std::size_t mask);

}  // namespace ipsw
