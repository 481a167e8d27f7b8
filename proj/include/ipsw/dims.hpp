#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "ipsw/mpoly.hpp"
#include "ipsw/wordspec.hpp"

namespace ipsw {

struct CoeffMatrix {
  std::vector<Monomial> rows, cols;  // x-part / y-part monomials
  std::vector<std::vector<Fe>> ent;
  std::string csv() const;
};

// coefficient matrix whose entries collect the leftover variables
struct PolyMatrix {
  std::vector<Monomial> rows, cols;
  std::vector<std::vector<Poly>> ent;
};

struct WordMatrix {
  std::vector<Monomial> rows, cols;  // M^P_w then M^N_w, sigma-ascending
  std::vector<std::vector<Fe>> ent;
};

// relrk_w(f)^2 = rank^2 / (mp*mn), kept exact
struct RelRank {
  std::uint64_t rank = 0, mp = 0, mn = 0;
  mpq_class squared() const {
    mpq_class q(mpz_class(rank) * mpz_class(rank),
                mpz_class(mp) * mpz_class(mn));
    q.canonicalize();
    return q;
  }
};

struct RankReport {
  std::uint64_t rank = 0;
  bool exact = true;  // false when the value is an SZ lower bound
  unsigned trials = 0;
  std::uint64_t seed = 0;
  std::string field;  // field the evaluations were drawn from
};

std::uint64_t rank_exact(std::vector<std::vector<Fe>> m, const FieldCtx* ctx);

CoeffMatrix coeff_matrix(const Poly& f, const std::vector<VarId>& xs,
                         const std::vector<VarId>& ys);
std::uint64_t coeff_dim(const Poly& f, const std::vector<VarId>& xs,
                        const std::vector<VarId>& ys);

// like coeff_matrix but variables outside xs/ys stay inside the entries
PolyMatrix coeff_matrix_z(const Poly& f, const std::vector<VarId>& xs,
                          const std::vector<VarId>& ys);

std::uint64_t eval_dim(const Poly& f, const std::vector<VarId>& xs,
                       const std::vector<VarId>& ys, const std::vector<Fe>& S);

WordMatrix word_matrix(const Poly& f, const Word& w);
RelRank relrank(const Poly& f, const Word& w);

Poly sml_project(const Poly& f, const Word& w);

// rank of a matrix with entries in F[z]; `symbolic` runs exact minor
// expansion (desk scale), otherwise Schwartz-Zippel evaluations over an
// extension of degree ext_k
RankReport poly_entry_rank(const PolyMatrix& M, bool symbolic, unsigned trials,
                           unsigned ext_k, std::uint64_t seed,
                           unsigned threads = 1);

}  // namespace ipsw
