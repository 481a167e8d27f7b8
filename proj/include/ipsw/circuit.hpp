#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "ipsw/mpoly.hpp"

namespace ipsw {

// Algebraic circuit over a field context. Gates are stored in construction
// order, which is topological; Add gates carry edge weights so scalar
// multiples do not need separate gates.
struct AlgCircuit {
  struct Gate {
    enum class Kind : std::uint8_t { Input, Scalar, Add, Mul };
    Kind kind = Kind::Scalar;
    VarId var;
    std::size_t scalar_ix = 0;                         // into scalars
    std::vector<std::pair<std::size_t, std::size_t>> wargs;  // (gate, scalar ix)
    std::vector<std::size_t> args;                     // Mul operands
  };

  const FieldCtx* ctx = nullptr;
  std::vector<Gate> gates;
  std::vector<Fe> scalars;
  std::size_t out = 0;

  explicit AlgCircuit(const FieldCtx* c) : ctx(c) {}

  std::size_t input(const VarId& v);
  std::size_t scalar(const Fe& c);
  // weighted sum of gates
  std::size_t add(const std::vector<std::pair<std::size_t, Fe>>& terms);
  std::size_t mul(const std::vector<std::size_t>& args);

  Fe eval(const std::map<VarId, Fe>& asg) const;
  Poly expand(std::size_t term_cap = 2000000) const;

  std::uint64_t node_count() const { return gates.size(); }
  std::uint64_t edge_count() const;
  // longest leaf-to-output path counted in edges
  std::uint32_t depth() const;
  // most Mul gates on any leaf-to-output path
  std::uint32_t product_depth() const;
};

}  // namespace ipsw
