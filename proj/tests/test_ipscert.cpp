#include "doctest.h"

#include "ipsw/cube.hpp"
#include "ipsw/ipscert.hpp"
#include "ipsw/serialize.hpp"

using namespace ipsw;

namespace {
// (2x + 2)(x - 2) + 3(x^2 - x) = 1 over F_5
IpsCert desk_cert(const Instance& inst) {
  const FieldCtx* F = inst.ctx;
  IpsCert cert;
  cert.lin.g = {parse_poly(F, "2*x_1 + 2")};
  cert.lin.h.emplace(VarId::plain(1), Poly::constant(F, 3));
  cert.instance_hash = instance_hash(inst);
  return cert;
}
}  // namespace

TEST_CASE("linear combination verifies exactly") {
  const FieldCtx* F = FieldCtx::prime(5);
  Instance inst = subset_sum(F, 1, F->from_int(2));
  IpsCert cert = desk_cert(inst);
  VerifyReport rep = verify_lin(cert, inst);
  CHECK(rep.pass);
  CHECK(rep.mode == "exact");
  CHECK(rep.verdict == "verified");
}

TEST_CASE("a mutated multiplier yields a residual witness") {
  const FieldCtx* F = FieldCtx::prime(5);
  Instance inst = subset_sum(F, 1, F->from_int(2));
  IpsCert cert = desk_cert(inst);
  cert.lin.g[0] = parse_poly(F, "2*x_1 + 3");
  VerifyReport rep = verify_lin(cert, inst);
  CHECK(!rep.pass);
  CHECK(rep.verdict == "failed");
  CHECK(rep.witness.find("x_1") != std::string::npos);
}

TEST_CASE("randomized verification agrees with the exact answer") {
  const FieldCtx* F = FieldCtx::prime(5);
  Instance inst = subset_sum(F, 1, F->from_int(2));
  IpsCert good = desk_cert(inst);
  VerifyReport rep = verify_lin_sz(good, inst, 8, 2, 424242);
  CHECK(rep.pass);
  CHECK(rep.mode == "randomized");
  CHECK(rep.trials == 8);
  CHECK(rep.error_bound.find("(") == 0);
  CHECK(rep.error_bound.find(")^8") != std::string::npos);

  IpsCert bad = good;
  bad.lin.g[0] = parse_poly(F, "2*x_1 + 3");
  VerifyReport rep2 = verify_lin_sz(bad, inst, 8, 2, 424242);
  CHECK(!rep2.pass);
}

TEST_CASE("placeholder circuit form verifies") {
  const FieldCtx* F = FieldCtx::prime(5);
  Instance inst = subset_sum(F, 1, F->from_int(2));
  // C = w_{1,1} * (2x + 2) + 3 * w_{2,1}
  AlgCircuit C(F);
  std::size_t ax = C.input(VarId::gadget_w(1, 1));
  std::size_t bz = C.input(VarId::gadget_w(2, 1));
  std::size_t x = C.input(VarId::plain(1));
  std::size_t one = C.scalar(F->one());
  std::size_t gx = C.add({{x, F->from_int(2)}, {one, F->from_int(2)}});
  std::size_t t1 = C.mul({ax, gx});
  C.out = C.add({{t1, F->one()}, {bz, F->from_int(3)}});

  IpsCert cert;
  cert.form = IpsCert::Form::PlaceholderCircuit;
  cert.circuit = C;
  cert.instance_hash = instance_hash(inst);
  VerifyReport rep = verify_ips_circuit(cert, inst);
  CHECK(rep.pass);
  VerifyReport rz = verify_ips_circuit_sz(cert, inst, 6, 2, 7);
  CHECK(rz.pass);

  // breaking the zero-substitution identity must fail too
  AlgCircuit D = C;
  D.out = D.add({{t1, F->one()}, {bz, F->from_int(3)}, {one, F->one()}});
  IpsCert off;
  off.form = IpsCert::Form::PlaceholderCircuit;
  off.circuit = D;
  off.instance_hash = cert.instance_hash;
  CHECK(!verify_ips_circuit(off, inst).pass);
}

TEST_CASE("flag detection on the linear certificate") {
  const FieldCtx* F = FieldCtx::prime(5);
  Instance inst = subset_sum(F, 1, F->from_int(2));
  IpsCert cert = desk_cert(inst);
  IpsFlags flags = check_flags(cert, inst);
  CHECK(flags.linear_in_y);
  CHECK(flags.linear_in_yz);
  CHECK(flags.multilinear_in_xy);
}

TEST_CASE("inverse-based refutation of the product instance") {
  const FieldCtx* F = FieldCtx::prime(5);
  Instance inst = roabp_hard_fixed(F, 3);
  IpsCert cert = fermat_refute(inst, 5);
  CHECK(cert.form == IpsCert::Form::LinearComb);
  REQUIRE(cert.lin.g.size() == 1);
  CHECK(cert.lin.g[0].is_multilinear());
  VerifyReport rep = verify_lin(cert, inst);
  CHECK(rep.pass);
  CHECK(functional_inverse_check(cert.lin.g[0], inst.axioms[0]));
}

TEST_CASE("refutation guards") {
  const FieldCtx* F = FieldCtx::prime(5);
  Instance sat;
  sat.ctx = F;
  sat.axioms = {Poly::var(F, VarId::plain(1)) - Poly::constant(F, 1)};
  CHECK_THROWS_WITH_AS(fermat_refute(sat, 5),
                       doctest::Contains("HasBooleanRoot"), Error);
  Instance inst = roabp_hard_fixed(F, 2);
  CHECK_THROWS_WITH_AS(fermat_refute(inst, 6), doctest::Contains("NotPrime"),
                       Error);
  Instance two;
  two.ctx = F;
  two.axioms = {inst.axioms[0], inst.axioms[0]};
  CHECK_THROWS_WITH_AS(fermat_refute(two, 5), doctest::Contains("TooLarge"),
                       Error);
}

TEST_CASE("multiple extraction from the desk refutation") {
  const FieldCtx* F = FieldCtx::prime(5);
  unsigned n = 3;
  Instance inst = multiples_system(F, n);
  const Poly& f = inst.axioms[0];
  const Poly& gax = inst.axioms[1];
  // u picks out the origin, where f = 1; gax^2 is 1 off the origin
  Poly u = Poly::constant(F, 1);
  for (unsigned i = 1; i <= n; ++i)
    u = u * (Poly::constant(F, 1) - Poly::var(F, VarId::plain(i)));
  IpsCert cert;
  cert.lin.g = {u, gax};
  Poly resid = f * u + gax * gax;
  BoolReduction br = bool_reduce(resid);
  REQUIRE(br.remainder == Poly::constant(F, 1));
  Fe minus1 = F->neg(F->one());
  for (auto& [v, q] : br.quotients)
    if (!q.is_zero()) cert.lin.h.emplace(v, q.scale(minus1));
  cert.instance_hash = instance_hash(inst);
  REQUIRE(verify_lin(cert, inst).pass);

  MultipleExtract ext = extract_multiple(cert, inst, f, gax);
  CHECK(ext.divisible);
  CHECK(ext.multiple == f * u);
  CHECK(ext.quotient == u);
}

TEST_CASE("exact division") {
  const FieldCtx* Q = FieldCtx::rationals();
  Poly a = parse_poly(Q, "x_1 + 1");
  Poly b = parse_poly(Q, "x_2 + 2");
  auto q = divide_exact(a * b, a);
  REQUIRE(q.has_value());
  CHECK(*q == b);
  CHECK(!divide_exact(a * b + Poly::constant(Q, 1), a).has_value());
  CHECK_THROWS_WITH_AS(divide_exact(a, Poly::zero(Q)),
                       doctest::Contains("ZeroPolynomial"), Error);
}

TEST_CASE("instance hash is stable and sensitive") {
  const FieldCtx* F = FieldCtx::prime(5);
  Instance a = subset_sum(F, 2, F->from_int(3));
  Instance b = subset_sum(F, 2, F->from_int(3));
  CHECK(instance_hash(a) == instance_hash(b));
  Instance c = subset_sum(F, 2, F->from_int(4));
  CHECK(instance_hash(a) != instance_hash(c));
}

TEST_CASE("expansion cap raises a size error") {
  const FieldCtx* F = FieldCtx::prime(5);
  Instance inst = subset_sum(F, 1, F->from_int(2));
  IpsCert cert = desk_cert(inst);
  CHECK_THROWS_WITH_AS(verify_lin(cert, inst, 1),
                       doctest::Contains("SizeBlowup"), Error);
}
