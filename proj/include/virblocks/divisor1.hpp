#pragma once

// Divisor classes on M-bar_{1,n}, written on lambda, psi_i, delta_irr and the
// boundary classes delta_{0,S} (S subset of [n], |S| >= 2; no complement
// identification exists in genus 1). The boundary classes together with
// delta_irr form a basis of Pic, so the canonical form - lambda and psi
// eliminated through 12 lambda = delta_irr and
// 12 psi_p = delta_irr + 12 sum_{p in S} delta_{0,S} - is a complete class
// invariant of dimension 2^n - n.

#include "virblocks/fcurve.hpp"
#include "virblocks/rational.hpp"

#include <map>
#include <vector>

namespace virblocks {

class Divisor1 {
public:
    Divisor1() = default;
    explicit Divisor1(int n);

    int n() const { return n_; }
    Rat lambda;
    Rat delta_irr;
    const Rat& psi(int i) const;
    void set_psi(int i, const Rat& c);
    void add_psi(int i, const Rat& c);

    void add_boundary(Mask subset, const Rat& c); // |S| >= 2, zero pruned
    Rat boundary_coeff(Mask subset) const;
    const std::map<Mask, Rat>& boundary() const { return boundary_; }

    Divisor1& operator+=(const Divisor1& other);
    Divisor1& operator-=(const Divisor1& other);
    Divisor1& operator*=(const Rat& c);
    friend Divisor1 operator+(Divisor1 a, const Divisor1& b) { return a += b; }
    friend Divisor1 operator-(Divisor1 a, const Divisor1& b) { return a -= b; }
    friend Divisor1 operator*(const Rat& c, Divisor1 d) { return d *= c; }

private:
    int n_ = 0;
    std::vector<Rat> psi_;
    std::map<Mask, Rat> boundary_;
};

Divisor1 canonical_form(const Divisor1& d); // lambda = 0, psi = 0
bool same_class(const Divisor1& a, const Divisor1& b);
bool class_zero(const Divisor1& d);

// Canonical coordinates: index 0 = delta_irr, then delta_{0,S} for S with
// |S| >= 2 in increasing bitmask order. Length 2^n - n.
int pic1_dim(int n);
int pic1_index(int n, Mask subset);
Mask pic1_subset_at(int n, int index);
std::vector<Rat> pic1_coordinates(const Divisor1& d);
Divisor1 divisor1_from_coordinates(int n, const std::vector<Rat>& coords);

// T(delta_irr) = 0, T(delta_{0,S}) = (-1)^{|S|}; detects non-pullbacks.
Rat t_functional(int n, const std::vector<Rat>& coords);
Rat t_functional(const Divisor1& d);

Divisor1 psi_class_m1n(int n, int p);

// Pullback along pi_i : M-bar_{1,n} -> M-bar_{1,n-1} (the source of the
// matrix is the smaller space; points [n]\{i} are matched order-preserving).
// Matrix shape: pic1_dim(n) x pic1_dim(n-1), acting on canonical coordinates.
std::vector<std::vector<Rat>> pic1_pullback_matrix(int n, int i);
Divisor1 pullback_forget(const Divisor1& d, int i); // d on n points -> n+1 points, forgetting point i of the target

// Restriction to the boundary divisor Delta_{0,{i,n}} = M-bar_{1, ([n-1]\{i}) u {p}},
// i in [n-1]; target points relabeled order-preserving with p last.
// Matrix shape: pic1_dim(n-1) x pic1_dim(n).
std::vector<std::vector<Rat>> pic1_restrict_matrix(int n, int i);
Divisor1 restrict_to_twopoint_boundary(const Divisor1& d, int i);

} // namespace virblocks
