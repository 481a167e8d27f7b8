#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ipsw/booloracle.hpp"
#include "ipsw/circuit.hpp"

namespace ipsw {

// binary chain equation z = x op y between node names
struct SlpEq {
  std::string z;
  char op = '+';
  std::string x, y;
};

struct Slp {
  std::vector<std::string> order;  // every node, topologically
  std::vector<SlpEq> eqs;
  std::vector<std::string> ext_vars;
  std::map<std::string, Fe> scalar_of;    // scalar leaves
  std::map<std::string, VarId> input_of;  // input leaves
  std::string out;
};

// fan-in-t gates decomposed into t-1 binary equations; weighted addends
// become explicit scalar-multiplication nodes
Slp slp_of(const AlgCircuit& C);

// node values under an assignment of the circuit inputs
std::map<std::string, Fe> slp_eval(const Slp& slp, const FieldCtx* ctx,
                                   const std::map<VarId, Fe>& asg);

struct CnfFormula {
  unsigned q = 0;
  std::vector<std::string> names;  // DIMACS index = position + 1
  std::vector<std::vector<int>> clauses;
  std::string dimacs() const;
  std::string sidecar_json() const;
};

// unary-bit Lagrange indicator: 1 at j, 0 on the rest of F_q
Poly ubit_poly(const FieldCtx* ctx, unsigned j, const VarId& v);
Poly ubit_of(unsigned j, const Poly& target);
// wraps an existing circuit output; adds one subtraction layer and one
// product layer above the target
AlgCircuit ubit_circuit(unsigned j, const AlgCircuit& target);

// CNF of the circuit equation C = 0: exactly-one blocks per variable node,
// blocking clauses per binary equation, unit output constraints
CnfFormula plain_cnf(const AlgCircuit& C);

struct ExtAxiom {
  std::string node;
  std::vector<int> bit_vars;  // DIMACS indices of the node's unary bits
  std::string text;           // x_node = sum_i i * bit_i
};

struct Ecnf {
  CnfFormula cnf;
  std::vector<ExtAxiom> axioms;
};

Ecnf ecnf(const AlgCircuit& C);

struct SemiCnf {
  unsigned q = 0;
  std::vector<Poly> equations;         // one per clause, each asserted = 0
  std::map<std::string, Poly> subst;   // bit name -> UBIT_j(node polynomial)
  CnfFormula base;
};

SemiCnf semi_cnf(const AlgCircuit& C);

// Lagrange/field identities: bit recombination, partition of unity, the
// Boolean-axiom quotient against x^q - x, and the Frobenius sum kernel
OracleReport identity_suite(unsigned q);

// three-way satisfiability agreement; modes "enumerate" and "dimacs-export"
OracleReport equisat_check(const AlgCircuit& C, const std::string& mode,
                           const std::string& export_path = "");
// compare an external solver verdict line ("SAT" / "UNSAT") with the
// enumerated algebraic verdict
OracleReport equisat_ingest(const std::string& solver_output, bool alg_sat);

std::string dimacs_emit(const CnfFormula& F);
CnfFormula dimacs_parse(const std::string& text);

// plain DPLL with unit propagation; fills model (1-based, +/-) when SAT
bool cnf_sat(const CnfFormula& F, std::vector<int>* model = nullptr);

}  // namespace ipsw
