#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "ipsw/mpoly.hpp"

namespace ipsw {

// univariate edge label: coefficient list, ascending degree, never empty
using Label = std::vector<Fe>;
using LayerMat = std::vector<std::vector<Label>>;

Fe label_eval(const Label& l, const Fe& at);
Label label_mul(const FieldCtx* ctx, const Label& a, const Label& b);
bool label_is_zero(const Label& l);

// Layered branching program reading order[l] in edge layer l. Single source,
// single sink, one layer per variable.
struct RoAbp {
  const FieldCtx* ctx = nullptr;
  std::vector<VarId> order;
  std::vector<std::size_t> nodes;  // order.size() + 1 entries, ends are 1
  std::vector<LayerMat> M;         // M[l] has nodes[l] x nodes[l+1] labels

  std::size_t width() const;
  std::uint32_t ideg() const;  // max label degree
  std::uint64_t raw_nodes() const;
  std::uint64_t raw_edges() const;  // nonzero labels
  // the n*r*d*D convention with D = n
  std::uint64_t size_convention() const;
};

void validate(const RoAbp& A);

RoAbp roabp_const(const FieldCtx* ctx, const std::vector<VarId>& order,
                  const Fe& c);
// width-1 program computing the product of the given labels
RoAbp roabp_product(const FieldCtx* ctx, const std::vector<VarId>& order,
                    const std::vector<Label>& labels);

RoAbp nisan_build(const Poly& f, const std::vector<VarId>& order);
std::uint64_t width_lower(const Poly& f, const std::vector<VarId>& order);

RoAbp closure_sum(const RoAbp& A, const RoAbp& B);
RoAbp closure_prod(const RoAbp& A, const RoAbp& B);

RoAbp partial_subst(const RoAbp& A, const std::map<VarId, Fe>& asg);
// A computes f(z1,...,zn); the result computes f(x1*y1,...,xn*yn) in the
// interleaved order x1 < y1 < ... < xn < yn
RoAbp interleave_lift(const RoAbp& A, const std::vector<VarId>& xs,
                      const std::vector<VarId>& ys);

RoAbp ml_roabp(const RoAbp& A);
RoAbp fermat_refutation_roabp(const RoAbp& A, unsigned p);

Fe roabp_eval(const RoAbp& A, const std::map<VarId, Fe>& asg);
Poly extract_poly(const RoAbp& A);

}  // namespace ipsw
