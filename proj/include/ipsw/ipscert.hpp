#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ipsw/circuit.hpp"
#include "ipsw/instances.hpp"
#include "ipsw/mpoly.hpp"

namespace ipsw {

// Placeholder variables of a certificate circuit C(x, y, z): the instance
// variables stay themselves, the axiom placeholder for axiom i (1-based) is
// w_{1,i}, and the Boolean-axiom placeholder for the k-th instance variable
// (1-based, sorted order) is w_{2,k}.
VarId placeholder_y(std::size_t axiom_ix);
VarId placeholder_z(std::size_t var_ix);
std::vector<VarId> instance_vars(const Instance& inst);

struct LinearComb {
  std::vector<Poly> g;      // one multiplier per axiom
  std::map<VarId, Poly> h;  // multipliers of v^2 - v
};

struct IpsFlags {
  bool linear_in_y = false;
  bool linear_in_yz = false;
  bool multilinear_in_xy = false;
};

struct IpsCert {
  enum class Form { LinearComb, PlaceholderCircuit };
  Form form = Form::LinearComb;
  LinearComb lin;
  std::optional<AlgCircuit> circuit;
  IpsFlags flags;
  std::uint64_t instance_hash = 0;
};

struct VerifyReport {
  std::string mode;  // "exact" | "randomized"
  bool pass = false;
  std::string verdict;  // "verified" | "failed" | "probabilistic pass/fail"
  std::string witness;
  std::uint64_t seed = 0;
  unsigned trials = 0;
  std::string error_bound;
};

std::uint64_t instance_hash(const Instance& inst);

// circuit expansion with inputs replaced by polynomials (identity when
// absent from the map)
Poly expand_with(const AlgCircuit& C, const std::map<VarId, Poly>& subs,
                 std::size_t term_cap = 2000000);

VerifyReport verify_lin(const IpsCert& cert, const Instance& inst,
                        std::size_t term_cap = 2000000);
VerifyReport verify_lin_sz(const IpsCert& cert, const Instance& inst,
                           unsigned trials, unsigned ext_k, std::uint64_t seed,
                           unsigned threads = 1);

VerifyReport verify_ips_circuit(const IpsCert& cert, const Instance& inst,
                                std::size_t term_cap = 2000000);
VerifyReport verify_ips_circuit_sz(const IpsCert& cert, const Instance& inst,
                                   unsigned trials, unsigned ext_k,
                                   std::uint64_t seed, unsigned threads = 1);

IpsFlags check_flags(const IpsCert& cert, const Instance& inst,
                     std::size_t term_cap = 2000000);

IpsCert fermat_refute(const Instance& inst, unsigned p);

bool functional_inverse_check(const Poly& g, const Poly& F);

struct MultipleExtract {
  Poly multiple;   // M = 1 - C(x, 0, g, x^2-x)
  Poly quotient;   // M / f
  bool divisible = false;
  std::string width_note;
};

MultipleExtract extract_multiple(const IpsCert& cert, const Instance& inst,
                                 const Poly& f, const Poly& g,
                                 std::optional<std::uint64_t> roabp_width =
                                     std::nullopt);

// exact single-divisor division; nullopt when the remainder is nonzero
std::optional<Poly> divide_exact(const Poly& M, const Poly& divisor);

}  // namespace ipsw
