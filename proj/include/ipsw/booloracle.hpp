#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ipsw/cube.hpp"
#include "ipsw/instances.hpp"
#include "ipsw/wordspec.hpp"

namespace ipsw {

// ground-truth verdict from an exhaustive computation
struct OracleReport {
  std::string lemma;
  std::string params;
  std::string expected;
  std::string computed;
  bool pass = false;
  std::string verdict;  // "pass" | "fail"
  std::string note;
};

struct OracleCaps {
  unsigned interp_n = 20;   // cube interpolation
  unsigned rank_vars = 14;  // rank oracle total variables
  unsigned census_2n = 12;  // census variable pairs
};

// parameters for the degree checks; `parts` indexes variables 1..n and is
// only read by the partition-style lemmas
struct DegCheckParams {
  const FieldCtx* ctx = nullptr;
  unsigned n = 0;
  std::string beta;
  std::vector<std::vector<unsigned>> parts;
  // block polynomial for the general form: "indicator" or "xor"
  std::string psi = "indicator";
};

// lemma in {subset-sum, general-psi, partition, e2-char0}; interpolates the
// multilinear inverse of the lemma's instance and compares deg against n
OracleReport deg_check(const std::string& lemma, const DegCheckParams& P,
                       const OracleCaps& caps = {});

// sum_{j=0..k} C(k,j)(-1)^{k-j}/(j-beta) == -k!/prod_{j=0..k}(beta-j) over Q
OracleReport leadcoef_identities(unsigned k, const std::string& beta);

unsigned lucas_digits(std::uint64_t m, std::uint64_t n, unsigned p);

struct LucasResult {
  unsigned residue = 0;
  OracleReport report;
};

// base-p digit product cross-checked against the exact binomial mod p
LucasResult lucas(std::uint64_t m, std::uint64_t n, unsigned p);
OracleReport lucas_grid(std::uint64_t cap, const std::vector<unsigned>& primes);

// Boolean image of e_d mod p against the digit bound prod(p - d_i) + 1
OracleReport sym_image(unsigned d, unsigned n, unsigned p);

// ml(e_l * e_d) == sum_{i=k..d} C(l+d-i, l) C(l, i) e_{l+d-i}
OracleReport el_ed_identity(unsigned l, unsigned d, unsigned n,
                            const FieldCtx* ctx);

// interpolates 1/ks_{w,p} on the cube and checks, exhaustively: the leading
// monomial of every coefficient slice, fullness of the word matrix rank, and
// the relative-rank floor
OracleReport rank_lemma_oracle(const Word& w, unsigned p, unsigned threads = 1,
                               const OracleCaps& caps = {});

// distinct leading monomials of the lifted hard polynomial under all 2^n
// Boolean gadget assignments
OracleReport lm_census(unsigned n, const FieldCtx* ctx,
                       const OracleCaps& caps = {});

// coefficient-space dimension at every balanced variable partition of the
// matching-restricted any-order instance
OracleReport anyorder_dim_oracle(unsigned n, const FieldCtx* ctx,
                                 const OracleCaps& caps = {});

// cap_n bounds the variable count of any instance-sized check in the sweep;
// scalar identities always run
std::vector<OracleReport> oracle_sweep(unsigned threads = 1,
                                       unsigned cap_n = 16);

}  // namespace ipsw
