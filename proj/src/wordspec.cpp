#include "ipsw/wordspec.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "ipsw/util.hpp"

namespace ipsw {

int Word::bound() const {
  int b = 0;
  for (int e : w) b = std::max(b, e < 0 ? -e : e);
  return b;
}

std::uint64_t Word::total_vars() const {
  std::uint64_t n = 0;
  for (int e : w) n += std::uint64_t(1) << (e < 0 ? -e : e);
  return n;
}

std::string Word::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << ',';
    os << w[i];
  }
  return os.str();
}

Word Word::parse(const std::string& csv) {
  Word out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    int e = std::stoi(tok);
    if (e == 0)
      fail("ZeroEntry",
           "word entry " + std::to_string(out.w.size() + 1) + " is zero");
    out.w.push_back(e);
  }
  if (out.w.empty()) fail("ZeroEntry", "empty word");
  return out;
}

int BlockLayout::block_size(int id) const {
  auto a = A.find(id);
  if (a != A.end()) return a->second.size();
  auto b = B.find(id);
  if (b != B.end()) return b->second.size();
  fail("ZeroEntry", "unknown block id " + std::to_string(id));
}

std::vector<VarId> BlockLayout::block_vars(int id) const {
  int sz = block_size(id);
  std::vector<VarId> out;
  out.reserve(std::size_t(1) << sz);
  for (std::uint64_t s = 0; s < (std::uint64_t(1) << sz); ++s)
    out.push_back(block_var(id, s));
  return out;
}

VarId BlockLayout::block_var(int id, std::uint64_t sigma) const {
  int sz = block_size(id);
  if (sigma >> sz) fail("ZeroEntry", "sigma out of range for block");
  return is_pos(id) ? VarId::pos_block(std::uint32_t(id), sigma, std::uint8_t(sz))
                    : VarId::neg_block(std::uint32_t(id), sigma, std::uint8_t(sz));
}

BlockLayout derive_blocks(const Word& word) {
  long long wp = 0, wn = 0;
  for (std::size_t i = 0; i < word.w.size(); ++i) {
    int e = word.w[i];
    if (e == 0) fail("ZeroEntry", "word entry " + std::to_string(i + 1) + " is zero");
    if (e > 0)
      wp += e;
    else
      wn += -e;
  }
  BlockLayout L;
  L.flipped = wn < wp;
  int pa = 0, na = 0;  // prefix cursors on the two role axes
  for (std::size_t i = 0; i < word.w.size(); ++i) {
    int id = int(i) + 1;
    int sz = word.w[i] < 0 ? -word.w[i] : word.w[i];
    bool role_pos = (word.w[i] > 0) != L.flipped;
    if (role_pos) {
      L.pos_blocks.push_back(id);
      L.A[id] = Interval{pa + 1, pa + sz};
      pa += sz;
    } else {
      L.neg_blocks.push_back(id);
      L.B[id] = Interval{na + 1, na + sz};
      na += sz;
    }
  }
  L.wP = pa;
  L.wN = na;
  return L;
}

int OverlapGraph::max_neg_degree() const {
  int d = 0;
  for (const auto& [j, nb] : nbr_of_neg) d = std::max(d, (int)nb.size());
  return d;
}

OverlapGraph overlap_graph(const BlockLayout& layout) {
  OverlapGraph G;
  for (int i : layout.pos_blocks) G.nbr_of_pos[i];
  for (int j : layout.neg_blocks) G.nbr_of_neg[j];
  for (int i : layout.pos_blocks)
    for (int j : layout.neg_blocks)
      if (layout.A.at(i).intersects(layout.B.at(j))) {
        G.edges.emplace_back(i, j);
        G.nbr_of_pos[i].push_back(j);
        G.nbr_of_neg[j].push_back(i);
      }
  return G;
}

bool is_balanced(const Word& w) {
  BlockLayout L = derive_blocks(w);
  if (L.pos_blocks.empty() || L.neg_blocks.empty()) return false;
  OverlapGraph G = overlap_graph(L);
  for (const auto& [i, nb] : G.nbr_of_pos)
    if (nb.empty()) return false;
  for (const auto& [j, nb] : G.nbr_of_neg)
    if (nb.empty()) return false;
  return true;
}

ScatteredPartition scattered_partition(const Word& w) {
  if (!is_balanced(w)) fail("NotBalanced", "word " + w.str() + " is not balanced");
  BlockLayout L = derive_blocks(w);
  OverlapGraph G = overlap_graph(L);
  int xi = G.max_neg_degree();
  ScatteredPartition P;
  P.parts.assign(xi, {});
  int rank = 0;
  for (int id : L.pos_blocks) P.parts[rank++ % xi].push_back(id);
  while (!P.parts.empty() && P.parts.back().empty()) P.parts.pop_back();
  for (const auto& part : P.parts) {
    std::set<int> seen;
    for (int id : part)
      for (int j : G.nbr_of_pos.at(id))
        if (!seen.insert(j).second)
          fail("NotScattered", "blocks in one part share neighbour " + std::to_string(j));
  }
  return P;
}

namespace {

void put_bits(BitMap& bm, const Interval& iv, std::uint64_t bits) {
  int sz = iv.size();
  for (int t = 0; t < sz; ++t) bm[iv.lo + t] = int((bits >> (sz - 1 - t)) & 1);
}

std::uint64_t take_bits(const BitMap& bm, const Interval& iv) {
  std::uint64_t bits = 0;
  for (int p = iv.lo; p <= iv.hi; ++p) {
    auto it = bm.find(p);
    if (it == bm.end())
      fail("NotSetMultilinear", "position " + std::to_string(p) + " not assigned");
    bits = (bits << 1) | std::uint64_t(it->second & 1);
  }
  return bits;
}

}  // namespace

BitMap sigma_of_monomial(const BlockLayout& layout, const Monomial& m) {
  BitMap bm;
  bool have_side = false;
  bool pos_side = false;
  std::set<int> used;
  for (const auto& [v, e] : m.factors()) {
    if (e != 1) fail("NotSetMultilinear", "exponent above one on " + v.name());
    if (v.cls != VarId::Class::PosBlock && v.cls != VarId::Class::NegBlock)
      fail("NotSetMultilinear", "variable " + v.name() + " is not a block variable");
    bool vp = v.cls == VarId::Class::PosBlock;
    if (!have_side) {
      have_side = true;
      pos_side = vp;
    } else if (vp != pos_side) {
      fail("NotSetMultilinear", "monomial mixes both sides");
    }
    int id = int(v.i);
    if (vp != layout.is_pos(id))
      fail("NotSetMultilinear", "variable " + v.name() + " has the wrong role");
    const Interval& iv = vp ? layout.A.at(id) : layout.B.at(id);
    if (v.len != iv.size())
      fail("NotSetMultilinear", "variable " + v.name() + " has the wrong length");
    if (!used.insert(id).second)
      fail("NotSetMultilinear", "block " + std::to_string(id) + " used twice");
    put_bits(bm, iv, v.bits);
  }
  return bm;
}

Monomial monomial_of_sigma(const BlockLayout& layout, Side side, const BitMap& bm) {
  const auto& ids = side == Side::Pos ? layout.pos_blocks : layout.neg_blocks;
  const auto& ivs = side == Side::Pos ? layout.A : layout.B;
  Monomial m = Monomial::one();
  std::size_t consumed = 0;
  for (int id : ids) {
    const Interval& iv = ivs.at(id);
    int inside = 0;
    for (int p = iv.lo; p <= iv.hi; ++p) inside += bm.count(p) ? 1 : 0;
    if (inside == 0) continue;
    if (inside != iv.size())
      fail("NotSetMultilinear", "partial block " + std::to_string(id));
    std::uint64_t bits = take_bits(bm, iv);
    m = m * Monomial::var(layout.block_var(id, bits));
    consumed += iv.size();
  }
  if (consumed != bm.size())
    fail("NotSetMultilinear", "positions outside the blocks of this side");
  return m;
}

BitMap restrict_sigma(const BlockLayout& layout, const BitMap& bm,
                      const std::vector<int>& pos_ids) {
  BitMap out;
  for (int id : pos_ids) {
    if (!layout.is_pos(id))
      fail("NotSetMultilinear", "block " + std::to_string(id) + " is not role-positive");
    const Interval& iv = layout.A.at(id);
    for (int p = iv.lo; p <= iv.hi; ++p) {
      auto it = bm.find(p);
      if (it == bm.end())
        fail("NotSetMultilinear", "position " + std::to_string(p) + " not assigned");
      out[p] = it->second;
    }
  }
  return out;
}

Word word_gen(int d, int a, int k, std::uint64_t seed) {
  (void)seed;  // arrangement is deterministic
  if (d < 1 || a < 1 || k < 1) fail("Infeasible", "parameters must be positive");
  for (int s = 1; s < d; ++s) {
    int t = d - s;
    long long lhs1 = (long long)(t - 1) * a + 1;
    long long lhs2 = (long long)(s - 1) * k + 1;
    if (lhs1 > (long long)s * k || lhs2 > (long long)t * a) continue;
    Word w;
    int placed_neg = 0;
    for (int p = 0; p <= t; ++p) {
      if (p > 0) w.w.push_back(a);
      while (placed_neg < s) {
        int j = placed_neg + 1;
        long long c = ((long long)j * k + a - 1) / a;  // ceil(j*k/a)
        if (c > t) c = t;
        if (c != p) break;
        w.w.push_back(-k);
        ++placed_neg;
      }
    }
    if (!is_balanced(w))
      fail("Infeasible", "arrangement for d=" + std::to_string(d) + " is not balanced");
    return w;
  }
  fail("Infeasible", "no balanced split of " + std::to_string(d) +
                         " blocks over {" + std::to_string(a) + ",-" +
                         std::to_string(k) + "}");
}

Params params(std::uint64_t n, unsigned delta) {
  if (n < 16 || delta < 1)
    fail("ConstraintViolated", "need n >= 16 and delta >= 1");
  Params P;
  P.n = n;
  P.delta = delta;
  std::uint64_t L = floor_log2(n);
  P.d = L / 4;
  P.fib.assign(delta + 1, 0);
  P.fib[0] = 1;
  if (delta >= 1) P.fib[1] = 2;
  for (unsigned i = 2; i <= delta; ++i) P.fib[i] = P.fib[i - 1] + P.fib[i - 2];
  P.g_delta = P.fib[delta] - 1;
  P.lambda = iroot(P.d, unsigned(P.g_delta));
  P.k_min = (L + 1) / 2;
  P.k_max = L;
  return P;
}

}  // namespace ipsw
