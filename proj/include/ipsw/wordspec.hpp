#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ipsw/mpoly.hpp"

namespace ipsw {

struct Word {
  std::vector<int> w;  // nonzero entries, 1-based block ids in APIs

  int length() const { return (int)w.size(); }
  int bound() const;  // b = max |w_i|
  // total variable count sum 2^{|w_i|}
  std::uint64_t total_vars() const;
  std::string str() const;
  static Word parse(const std::string& csv);
};

struct Interval {
  int lo = 1, hi = 0;  // empty when hi < lo
  int size() const { return hi < lo ? 0 : hi - lo + 1; }
  bool intersects(const Interval& o) const {
    return std::max(lo, o.lo) <= std::min(hi, o.hi);
  }
};

// Role-based layout: after the flip rule, "positive" blocks carry the
// x-variables and "negative" blocks the y-variables regardless of sign.
struct BlockLayout {
  bool flipped = false;
  std::vector<int> pos_blocks, neg_blocks;  // block ids in word order
  std::map<int, Interval> A;                // role-positive intervals
  std::map<int, Interval> B;                // role-negative intervals
  int wP = 0, wN = 0;                       // Sigma of interval sizes per role

  int block_size(int id) const;
  bool is_pos(int id) const { return A.count(id) > 0; }
  // X(w_i): the variables of block id, in ascending sigma order
  std::vector<VarId> block_vars(int id) const;
  VarId block_var(int id, std::uint64_t sigma) const;
};

BlockLayout derive_blocks(const Word& w);

struct OverlapGraph {
  std::vector<std::pair<int, int>> edges;      // (pos id, neg id)
  std::map<int, std::vector<int>> nbr_of_pos;  // pos id -> neg ids
  std::map<int, std::vector<int>> nbr_of_neg;
  int max_neg_degree() const;
};

OverlapGraph overlap_graph(const BlockLayout& layout);
bool is_balanced(const Word& w);

struct ScatteredPartition {
  std::vector<std::vector<int>> parts;  // role-positive block ids
  int r() const { return (int)parts.size(); }
};

// residue-map partition (NotBalanced if w is not balanced); the
// pairwise-disjoint-neighbourhood invariant is re-verified before returning
ScatteredPartition scattered_partition(const Word& w);

// sigma <-> monomial maps. A BitMap assigns bits to axis positions.
using BitMap = std::map<int, int>;

enum class Side { Pos, Neg };

// string of a set-multilinear monomial over w|_S (one side only)
BitMap sigma_of_monomial(const BlockLayout& layout, const Monomial& m);
// inverse: positions must exactly tile blocks of `side`
Monomial monomial_of_sigma(const BlockLayout& layout, Side side, const BitMap& bm);
// sigma restricted to the A-intervals of the given role-positive blocks
BitMap restrict_sigma(const BlockLayout& layout, const BitMap& bm,
                      const std::vector<int>& pos_ids);

Word word_gen(int d, int a, int k, std::uint64_t seed);

struct Params {
  std::uint64_t n = 0;
  unsigned delta = 1;
  std::uint64_t d = 0;
  std::uint64_t lambda = 0;
  std::vector<std::uint64_t> fib;  // F(0..)
  std::uint64_t g_delta = 0;       // G(delta) = F(delta) - 1
  std::uint64_t k_min = 0, k_max = 0;
};

Params params(std::uint64_t n, unsigned delta);

}  // namespace ipsw
