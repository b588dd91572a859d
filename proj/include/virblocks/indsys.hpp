#pragma once

// Inductive systems of line bundles on M-bar_{0,n}: a label set with a
// nonnegative product and dual, plus a divisor assignment per label vector,
// subject to unit/propagation/factorization axioms. Includes the two-module
// family R_n^p interpolating the level-one sl_2 and smallest Virasoro
// divisor families.

#include "virblocks/positivity.hpp"

#include <functional>

namespace virblocks {

struct InductiveSystem {
    std::string name;
    int num_labels = 0; // labels 0..L-1, 0 = unit V
    // product[a][b][c] = coefficient of label c in a * b (nonnegative)
    std::vector<std::vector<std::vector<Rat>>> product;
    std::vector<int> dual;
    std::function<Divisor0(const std::vector<int>&)> divisor; // n >= 4

    // coefficient of `target` in the product of `labels`
    Rat coefficient(const std::vector<int>& labels, int target) const;
};

// Divisor map induced by conformal weights:
//   D_n = f(M_bullet)(V) sum cw(M_i) psi_i - sum_I b_I delta_{0,I}.
InductiveSystem admissible_system(std::string name, int num_labels,
                                  std::vector<std::vector<std::vector<Rat>>> product,
                                  std::vector<int> dual, std::vector<Rat> cw);

// The fusion ring of Vir_{2,2k+1} with its coinvariant divisors.
InductiveSystem vir_system(int k);

// Two labels {V, W} with W*W = V + pW and the R-recurrence divisors.
InductiveSystem two_module_system(const Rat& p);

// R_1 = 0, R_2 = 1, R_{n+1} = p R_n + R_{n-1}; exact rationals (R_0 = 1).
Rat r_value(const Rat& p, int n);

// D_n^p = R_n psi - sum_{i=2}^{n/2} R_{i+1} R_{n-i+1} delta_{0,i}.
Divisor0 d_np_class(const Rat& p, int n);

struct AxiomReport {
    std::string system;
    int n_max = 0;
    bool multiplication = false; // commutative, associative, unital
    bool dual_ok = false;
    bool propagation = false;    // appending V pulls back (fingerprints)
    bool factorization = false;  // boundary restrictions split per channels
    bool genfact = false;        // rank factorization identity
    bool all() const { return multiplication && dual_ok && propagation && factorization && genfact; }
    std::string first_failure;
};

AxiomReport verify_axioms(const InductiveSystem& sys, int n_max);

struct DnpReport {
    Rat p;
    int n = 0;
    bool fnef = false;
    bool fample = false;
    bool factorized_matches_pairing = false; // product formula == fingerprint route
    bool coefficient_domination = false;     // R_{i+1} R_{n-i+1} < R_n (p > 0)
    bool standard_form_nonnegative = false;
};

DnpReport check_dnp_positivity(const Rat& p, int n);

} // namespace virblocks
