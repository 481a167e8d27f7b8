#include "ipsw/circuit.hpp"

#include <algorithm>

#include "ipsw/util.hpp"

namespace ipsw {

std::size_t AlgCircuit::input(const VarId& v) {
  Gate g;
  g.kind = Gate::Kind::Input;
  g.var = v;
  gates.push_back(std::move(g));
  return gates.size() - 1;
}

std::size_t AlgCircuit::scalar(const Fe& c) {
  Gate g;
  g.kind = Gate::Kind::Scalar;
  scalars.push_back(c);
  g.scalar_ix = scalars.size() - 1;
  gates.push_back(std::move(g));
  return gates.size() - 1;
}

std::size_t AlgCircuit::add(const std::vector<std::pair<std::size_t, Fe>>& terms) {
  Gate g;
  g.kind = Gate::Kind::Add;
  for (const auto& [ix, w] : terms) {
    if (ix >= gates.size()) fail("Cyclic", "add argument ahead of the gate");
    scalars.push_back(w);
    g.wargs.emplace_back(ix, scalars.size() - 1);
  }
  gates.push_back(std::move(g));
  return gates.size() - 1;
}

std::size_t AlgCircuit::mul(const std::vector<std::size_t>& args) {
  Gate g;
  g.kind = Gate::Kind::Mul;
  for (std::size_t ix : args)
    if (ix >= gates.size()) fail("Cyclic", "mul argument ahead of the gate");
  g.args = args;
  gates.push_back(std::move(g));
  return gates.size() - 1;
}

Fe AlgCircuit::eval(const std::map<VarId, Fe>& asg) const {
  std::vector<Fe> val(gates.size(), ctx->zero());
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    switch (g.kind) {
      case Gate::Kind::Input:
        val[i] = asg.at(g.var);
        break;
      case Gate::Kind::Scalar:
        val[i] = scalars[g.scalar_ix];
        break;
      case Gate::Kind::Add: {
        Fe acc = ctx->zero();
        for (const auto& [ix, w] : g.wargs) acc = acc + scalars[w] * val[ix];
        val[i] = acc;
        break;
      }
      case Gate::Kind::Mul: {
        Fe acc = ctx->one();
        for (std::size_t ix : g.args) acc = acc * val[ix];
        val[i] = acc;
        break;
      }
    }
  }
  return val[out];
}

Poly AlgCircuit::expand(std::size_t term_cap) const {
  std::vector<Poly> val(gates.size(), Poly::zero(ctx));
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    switch (g.kind) {
      case Gate::Kind::Input:
        val[i] = Poly::var(ctx, g.var);
        break;
      case Gate::Kind::Scalar:
        val[i] = Poly::constant(scalars[g.scalar_ix]);
        break;
      case Gate::Kind::Add: {
        Poly acc = Poly::zero(ctx);
        for (const auto& [ix, w] : g.wargs) acc = acc + val[ix].scale(scalars[w]);
        val[i] = std::move(acc);
        break;
      }
      case Gate::Kind::Mul: {
        Poly acc = Poly::constant(ctx, 1);
        for (std::size_t ix : g.args) {
          acc = acc * val[ix];
          if (acc.terms().size() > term_cap)
            fail("TooLarge", "expansion exceeds the term cap");
        }
        val[i] = std::move(acc);
        break;
      }
    }
    if (val[i].terms().size() > term_cap)
      fail("TooLarge", "expansion exceeds the term cap");
  }
  return val[out];
}

std::uint64_t AlgCircuit::edge_count() const {
  std::uint64_t e = 0;
  for (const Gate& g : gates) e += g.wargs.size() + g.args.size();
  return e;
}

std::uint32_t AlgCircuit::depth() const {
  std::vector<std::uint32_t> d(gates.size(), 0);
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    for (const auto& [ix, w] : g.wargs) d[i] = std::max(d[i], d[ix] + 1);
    for (std::size_t ix : g.args) d[i] = std::max(d[i], d[ix] + 1);
  }
  return d[out];
}

std::uint32_t AlgCircuit::product_depth() const {
  std::vector<std::uint32_t> d(gates.size(), 0);
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    std::uint32_t m = 0;
    for (const auto& [ix, w] : g.wargs) m = std::max(m, d[ix]);
    for (std::size_t ix : g.args) m = std::max(m, d[ix]);
    d[i] = m + (g.kind == Gate::Kind::Mul ? 1 : 0);
  }
  return d[out];
}

}  // namespace ipsw
