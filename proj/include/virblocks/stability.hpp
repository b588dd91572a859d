#pragma once

// Critical levels, stable conformal block divisors, allowed channel sets,
// difference divisors and the exact-critical-level boundary certificate.

#include "virblocks/positivity.hpp"

#include <set>

namespace virblocks {

struct TupleSpec {
    std::vector<int> a; // module indices a_1..a_n, validity vs k checked at use

    explicit TupleSpec(std::vector<int> a_);
    int n() const { return static_cast<int>(a.size()); }
    long weight_sum() const; // sum (a_i - 1)
    int parity() const { return static_cast<int>(weight_sum() % 2); }
    int max_entry() const;
};

// Smallest l with 2(l-1) >= sum (a_i - 1).
int critical_level(const TupleSpec& t);

// Smallest valid ring for the tuple: max(critical level, entries, 2).
int stable_ring(const TupleSpec& t);

// M_k(a_1..a_n): raw channel indices b in [1, 2k] of matching parity with
// positive (n+1)-point rank. Monotone in k.
std::set<int> allowed_channels(const VirasoroRing& ring, std::span<const int> a);

// The k-independent limit divisor, evaluated at the stable ring and checked
// against the next ring; disagreement is a hard error. Odd tuples give the
// zero class outright.
Divisor0 stable_divisor(const TupleSpec& t);

struct StabilizationReport {
    explicit StabilizationReport(TupleSpec t) : tuple(std::move(t)) {}
    TupleSpec tuple;
    int parity = 0;
    int level = 0;          // critical level
    int k_lo = 0, k_hi = 0; // scanned range (validity-adjusted)
    bool agree = true;      // fingerprints equal across the scanned range
    int k_first_stable = 0; // smallest scanned k already equal to the k_hi class
    bool zero = false;      // the stabilized class is zero
};

StabilizationReport check_stabilization(const TupleSpec& t, int k_lo, int k_hi);

// Signed difference per parity: even tuples D(k) - D(k+1), odd tuples
// D(k+1) - D(k); the candidate class for the difference positivity scans.
Divisor0 difference_divisor(const TupleSpec& t, int k);

struct DifferenceReport {
    explicit DifferenceReport(TupleSpec t) : tuple(std::move(t)) {}
    TupleSpec tuple;
    int k = 0;
    bool fnef = false;
    std::optional<FCurve> witness;
    Rat witness_value = Rat(0); // minimal intersection of the difference
    bool zero = false;
};

DifferenceReport check_difference_fnef(const TupleSpec& t, int k);

// Intersection of the signed difference with one F-curve.
Rat difference_intersection(const TupleSpec& t, int k, const FCurve& f);

// Strictly positive boundary representation of -D at the exact critical
// level 2k-1 = sum(a_i-1)+1 (even parity, all a_i >= 2), cross-validated
// against the vanishing cyclic-ring divisor identity.
struct SteffCertificate {
    int k = 0;
    bool zero = false;                // rank <= 1 tuple
    std::map<Mask, Rat> coefficients; // -D = sum c_I delta_{0,I}, all > 0
    bool all_positive = false;
    bool scale_checked = false;        // n small enough for fingerprint cross-checks
    bool cyclic_identity_zero = false; // divisor of L_1(sl_{2k-2}) at (a_i - 1) vanishes
    bool fingerprint_checked = false;  // representation re-verified against -D
};

SteffCertificate steff_certificate(const TupleSpec& t, int fingerprint_n_cap = 9);

} // namespace virblocks
