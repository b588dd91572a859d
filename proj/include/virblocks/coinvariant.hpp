#pragma once

// First-Chern-class divisors of sheaves of coinvariants, their degrees on
// M-bar_{0,4} and M-bar_{1,1}, and F-curve intersections computed through
// factorization. All functions return the *coinvariant* divisor D; the
// conformal block divisor is its negative and is taken only at the CLI and
// report boundaries.

#include "virblocks/divisor0.hpp"
#include "virblocks/divisor1.hpp"
#include "virblocks/fusion.hpp"

#include <span>

namespace virblocks {

// D_{0,n}: rank * sum h_i psi_i - sum_I b_I delta_{0,I}, with
// b_I = sum_W h_W rank(W^I, W) rank(W^{I^c}, W). Needs n >= 4.
Divisor0 coinvariant_divisor0(const VirasoroRing& ring, std::span<const int> labels);

// D_{1,n} on lambda, psi, delta_irr, delta_{0,S}. Needs n >= 1.
Divisor1 coinvariant_divisor1(const VirasoroRing& ring, std::span<const int> labels);

// Same for the cyclic ring L_1(sl_m); labels in [0, m).
Divisor0 cyclic_coinvariant_divisor0(const CyclicRing& ring, std::span<const int> labels);

// Degree of D_{0,4} (the pairing with the unique F-curve), memoized.
Rat deg_m04(const VirasoroRing& ring, int a, int b, int c, int d);

// lambda-coefficient of D_{1,1} (delta_irr = 12 lambda, psi_1 = lambda).
Rat deg_m11(const VirasoroRing& ring, int label);

// Intersection of the coinvariant divisor with an F-curve, computed by
// factorization: sum over channel labels at the spine legs of fixed-part
// ranks times deg_m04 (or deg_m11 for elliptic tails).
Rat vir_intersection(const VirasoroRing& ring, std::span<const int> labels, const FCurve& f,
                     int genus_cap = 3);

void clear_coinvariant_caches();

} // namespace virblocks
