#pragma once

// F-curves: the one-dimensional boundary strata of M-bar_{g,n}, given as
// combinatorial data. Two kinds of moving component occur:
//
//   * elliptic tail: moving M-bar_{1,1} with a fixed genus g-1 part carrying
//     all n marked points;
//   * spine: moving 4-pointed rational curve whose four legs are grouped
//     into clusters. A cluster owns `legs` of the four attaching points, a
//     fixed component of genus `genus` and a set of marked points. A one-leg
//     genus-0 cluster with a single marked point is a bare point on the
//     spine; a two-leg genus-0 cluster with no points is a directly glued
//     pair of legs (irreducible node).
//
// Genus bookkeeping: g = sum over clusters of (genus + legs - 1).
// For g = 0 every curve is a spine with four 1-leg genus-0 clusters
// (a partition of [n] into four nonempty blocks).

#include <cstdint>
#include <string>
#include <vector>

namespace virblocks {

using Mask = std::uint32_t;

inline int popcount(Mask m) { return __builtin_popcount(m); }
inline Mask full_mask(int n) { return (n >= 32) ? ~Mask(0) : ((Mask(1) << n) - 1); }
inline bool mask_has(Mask m, int point) { return (m >> (point - 1)) & 1u; } // points 1-based
inline Mask mask_of_point(int point) { return Mask(1) << (point - 1); }

std::vector<int> mask_points(Mask m); // ascending 1-based point list
std::string mask_to_string(Mask m);   // "1,2,5"

// Next bitmask with the same popcount (Gosper). Caller bounds the range.
inline Mask next_same_popcount(Mask v)
{
    const Mask c = v & (~v + 1);
    const Mask r = v + c;
    return (((r ^ v) >> 2) / c) | r;
}

struct FCluster {
    int genus = 0;
    int legs = 1;
    Mask points = 0;

    auto operator<=>(const FCluster&) const = default;
};

struct FCurve {
    int n = 0;
    int g = 0;
    bool elliptic_tail = false;
    std::vector<FCluster> clusters; // empty for elliptic tails; legs sum to 4

    // Genus-0 curve from four nonempty blocks.
    static FCurve type6(int n, Mask a, Mask b, Mask c, Mask d);
    // Genus-1: moving elliptic component, fixed rational (n+1)-pointed part.
    static FCurve elliptic(int n, int g = 1);
    // Genus-1: blocks I1, I2 on single legs, the complement bridging legs 3,4.
    static FCurve type5(int n, Mask i1, Mask i2);
    // Genus-1: four blocks, the first carrying the genus (it may be empty).
    static FCurve type6_genus1(int n, Mask genus_block, Mask b2, Mask b3, Mask b4);

    std::string to_string() const;
};

// All F-curves of M-bar_{0,n}: set partitions of [n] into 4 nonempty blocks,
// emitted in lexicographic order of their restricted-growth strings (blocks
// ordered by minimum element). Empty for n < 4.
const std::vector<FCurve>& enumerate_fcurves0(int n);

// All F-curves of M-bar_{1,n}: elliptic tail, then two-leg spines, then
// genus-carrying four-block spines, each family in deterministic mask order.
std::vector<FCurve> enumerate_fcurves1(int n);

// General enumeration, g <= genus_cap. Reduces to the two above for g <= 1.
std::vector<FCurve> enumerate_fcurves(int g, int n, int genus_cap = 2);

} // namespace virblocks
