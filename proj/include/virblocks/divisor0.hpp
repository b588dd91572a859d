#pragma once

// Divisor classes on M-bar_{0,n}: exact-rational coefficients on psi_1..psi_n
// and on the boundary classes delta_{0,I}. Boundary keys are stored on the
// canonical representative of {I, I^c}, the side not containing the point n,
// with 2 <= |I| <= n-2.
//
// Class equality is decided by the fingerprint: the vector of intersection
// numbers with every F-curve, taken in the canonical enumeration order.

#include "virblocks/fcurve.hpp"
#include "virblocks/rational.hpp"

#include <map>
#include <vector>

namespace virblocks {

class Divisor0 {
public:
    Divisor0() = default;
    explicit Divisor0(int n);

    int n() const { return n_; }
    const Rat& psi(int i) const; // 1-based
    void set_psi(int i, const Rat& c);
    void add_psi(int i, const Rat& c);

    static Mask canonical_key(Mask subset, int n);
    void add_boundary(Mask subset, const Rat& c); // any representative
    Rat boundary_coeff(Mask subset) const;
    const std::map<Mask, Rat>& boundary() const { return boundary_; }

    Divisor0& operator+=(const Divisor0& other);
    Divisor0& operator-=(const Divisor0& other);
    Divisor0& operator*=(const Rat& c);
    friend Divisor0 operator+(Divisor0 a, const Divisor0& b) { return a += b; }
    friend Divisor0 operator-(Divisor0 a, const Divisor0& b) { return a -= b; }
    friend Divisor0 operator*(const Rat& c, Divisor0 d) { return d *= c; }

    bool coords_zero() const; // zero in (psi, delta)-coordinates

private:
    int n_ = 0;
    std::vector<Rat> psi_;
    std::map<Mask, Rat> boundary_; // canonical keys, zero entries pruned
};

// Intersection with a genus-0 F-curve F(B1,B2,B3,B4):
//   psi_j . F   = 1 iff {j} is a block;
//   delta_I . F = +1 if {I, I^c} is a union of two blocks against the other
//                 two, -1 if I or I^c is a single block, 0 otherwise.
Rat pair_fcurve(const Divisor0& d, const FCurve& f);

// Pairings against enumerate_fcurves0(n), a complete class invariant.
std::vector<Rat> fingerprint(const Divisor0& d);
bool same_class(const Divisor0& a, const Divisor0& b);
bool class_zero(const Divisor0& d);

// psi_i rewritten as a weighted sum of boundary classes containing i.
Divisor0 big_average(int i, int n);

// Coefficients of the pure-boundary rewriting of d (all psi eliminated by
// big averages). Fingerprint-preserving; keys canonical.
std::map<Mask, Rat> standard_form(const Divisor0& d);

Divisor0 boundary_combination(int n, const std::map<Mask, Rat>& coeffs);

// Moving-side component of the restriction to the boundary divisor with
// genus-0 tail on I: a class on M-bar_{0,|I|+1}. Points of I are relabeled
// order-preservingly to 1..|I|; the attaching point becomes |I|+1.
Divisor0 restrict_to_boundary(const Divisor0& d, Mask I);

// Pullback along the map forgetting a new last point (result lives on n+1).
Divisor0 pullback_forget_last(const Divisor0& d);

// perm is 1-based: point i of d becomes point perm[i-1] of the result.
Divisor0 relabel(const Divisor0& d, const std::vector<int>& perm);

} // namespace virblocks
