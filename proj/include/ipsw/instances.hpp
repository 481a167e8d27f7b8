#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ipsw/circuit.hpp"
#include "ipsw/mpoly.hpp"
#include "ipsw/wordspec.hpp"

namespace ipsw {

struct Provenance {
  std::string generator;
  std::string field;
  std::string word;  // CSV when word-indexed
  std::string beta;
  std::uint64_t n = 0;
  unsigned p = 0;
  std::uint64_t seed = 0;
  bool unsat_certified = false;  // cube certificate ran and passed
  bool beta_unverified = false;  // beta valid by cited bound, not enumerated
  std::string note;
};

struct Instance {
  const FieldCtx* ctx = nullptr;
  std::vector<Poly> axioms;
  Provenance meta;
};

struct CircuitForm {
  AlgCircuit circuit;
  std::uint64_t nodes = 0, edges = 0;
  std::uint32_t depth = 0, product_depth = 0;
  int total_degree = 0;

  explicit CircuitForm(AlgCircuit c) : circuit(std::move(c)) {
    nodes = circuit.node_count();
    edges = circuit.edge_count();
    depth = circuit.depth();
    product_depth = circuit.product_depth();
  }
};

// building blocks of the knapsack instance, exposed for the oracles
Poly ks_f_sigma_ij(const FieldCtx* ctx, const BlockLayout& L, int i, int j,
                   std::uint64_t sigma);
Poly ks_f_sigma_i(const FieldCtx* ctx, const BlockLayout& L,
                  const OverlapGraph& G, int i, std::uint64_t sigma);
Poly ks_sigma_sum(const FieldCtx* ctx, const BlockLayout& L,
                  const OverlapGraph& G, int i);
Poly ks_block(const FieldCtx* ctx, const BlockLayout& L, const OverlapGraph& G,
              int i, unsigned p);

struct KsInstance {
  Instance inst;
  CircuitForm form;
  ScatteredPartition part;
  Fe beta;
  int r = 0;

  const Poly& poly() const { return inst.axioms.at(0); }
};

KsInstance ks_modp(const Word& w, unsigned p,
                   std::optional<ScatteredPartition> part = std::nullopt,
                   std::optional<Fe> beta = std::nullopt, unsigned threads = 1);

KsInstance ks_sym_e2(const Word& w, unsigned q,
                     std::optional<Fe> beta = std::nullopt,
                     unsigned threads = 1);

Instance roabp_hard_fixed(const FieldCtx* ctx, unsigned n, unsigned threads = 1);
Poly lift_xy(const Poly& f);
Instance roabp_hard_anyorder(const FieldCtx* ctx, unsigned n,
                             unsigned threads = 1);

Instance multiples_system(const FieldCtx* ctx, unsigned n, unsigned threads = 1);

Instance subset_sum(const FieldCtx* ctx, unsigned n, const Fe& beta);
Instance partition_indicator(const FieldCtx* ctx,
                             const std::vector<std::vector<VarId>>& parts,
                             const Fe& beta);

// true when f vanishes nowhere on {0,1}^vars(f); desk scale
bool never_zero_on_cube(const Poly& f, unsigned threads = 1);
// common Boolean root of all axioms, if any
std::optional<std::map<VarId, Fe>> common_cube_root(const std::vector<Poly>& axioms,
                                                    unsigned threads = 1);

// number of surjections [m] -> [k], reduced into the field
Fe surjection_count(unsigned m, unsigned k, const FieldCtx* ctx);

}  // namespace ipsw
