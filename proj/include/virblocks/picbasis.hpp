#pragma once

// Pic(M-bar_{1,n}) linear algebra: the two-module conformal-block basis,
// change of basis, the alternating T functional, Fibonacci sum identities,
// pullback-span and contraction-kernel checks.

#include "virblocks/coinvariant.hpp"
#include "virblocks/linalg.hpp"

namespace virblocks {

// Rows: canonical coordinates of D_{1,n}(Vir_5, W^bullet) over all label
// vectors in {1,2}^n with #2 != 1, ordered as binary strings (1 -> 0 bit,
// 2 -> 1 bit) in lexicographic order. Square of size 2^n - n.
struct Vir5Basis {
    int n = 0;
    std::vector<std::vector<int>> label_vectors;
    Matrix rows; // (2^n - n) x (2^n - n)
};

const Vir5Basis& vir5_basis(int n, int n_cap = 9);
Matrix vir5_basis_matrix(int n, int n_cap = 9);

// Solve for the coefficients expressing canonical coordinates in the basis.
std::vector<Rat> express_in_vir5_basis(int n, const std::vector<Rat>& coords);

// Direct evaluation of the two alternating binomial-Fibonacci sums and
// their closed forms (0 / 2*5^{n/2-1}; 5^{(n-1)/2} / 3*5^{n/2-1}).
struct FibonacciIdentity {
    Int sum1, sum2;
    Int closed1, closed2;
    bool match() const { return sum1 == closed1 && sum2 == closed2; }
};
FibonacciIdentity fibonacci_identities(int n);

// Pairing vector of an F-curve on M-bar_{1,n} against the canonical basis,
// obtained dually: solve basis_matrix * u = (intersections with the basis
// divisors, via factorization).
std::vector<Rat> fcurve_pairing_vector(int n, const FCurve& f);

// The F-curves contracted by the (i, j)-double-projection.
std::vector<FCurve> contracted_fcurves(int n, int i, int j);

struct ContractionKernelReport {
    int n = 0, i = 0, j = 0;
    bool dims_ok = false;          // the arithmetic dimension identity
    int pullback_span_dim = 0;     // dim (pi_i^* + pi_j^*)
    int curve_span_dim = 0;        // rank of the contracted-curve pairings
    bool annihilator_match = false;
    bool sequence_exact = false;   // the four-term sequence checks out
};

ContractionKernelReport contraction_kernel_check(int n, int i, int j);

struct PsiCharacterizationReport {
    int n = 0;
    int restriction_kernel_dim = 0; // classes vanishing on every Delta_{0,{i,n}}
    bool dim_is_two = false;
    bool cut_to_psi_line = false;   // one more F-curve condition leaves psi_n
    bool delta_full_pairs_one = false; // delta_{0,[n-1]} . F = 1
};

PsiCharacterizationReport psi_characterization_check(int n);

} // namespace virblocks
