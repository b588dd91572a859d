#pragma once

// Fusion rings of the discrete-series Virasoro VOAs Vir_{2,2k+1} and of the
// cyclic rings L_1(sl_m), together with the conformal-block ranks they
// determine through factorization.
//
// Conventions. A ring Vir_{2,2k+1} has raw module indices 1..2k with
// W_i = W_{2k+1-i}; the canonical labels are 1..k (label 1 = trivial module)
// and every public surface speaks canonical labels. Raw indices appear only
// in fuse_all_raw (the parity-class expansion) and in channel sets.

#include "virblocks/rational.hpp"

#include <span>
#include <vector>

namespace virblocks {

struct VirasoroRing {
    int k; // the VOA is Vir_{2,2k+1}, k >= 2

    explicit VirasoroRing(int k_) : k(k_)
    {
        if (k < 2)
            throw std::invalid_argument("VirasoroRing: k >= 2 required (k = 1 is holomorphic)");
    }
};

// Fusion ring of L_1(sl_m): labels 0..m-1 with the group law of Z/m.
struct CyclicRing {
    int m;

    explicit CyclicRing(int m_) : m(m_)
    {
        if (m < 2)
            throw std::invalid_argument("CyclicRing: m >= 2 required");
    }
};

// Multiset of canonical labels with big-integer multiplicities.
// mult[0] is unused; mult[a] is the multiplicity of label a, 1 <= a <= k.
class FusionVector {
public:
    FusionVector() = default;
    explicit FusionVector(int k) : mult_(static_cast<size_t>(k) + 1, Int(0)) {}

    int k() const { return static_cast<int>(mult_.size()) - 1; }
    const Int& at(int label) const { return mult_.at(static_cast<size_t>(label)); }
    Int& at(int label) { return mult_.at(static_cast<size_t>(label)); }
    const std::vector<Int>& raw() const { return mult_; }
    bool operator==(const FusionVector&) const = default;

private:
    std::vector<Int> mult_;
};

int normalize_label(const VirasoroRing& ring, int raw_index);
void check_label(const VirasoroRing& ring, int label);

// W_a x W_b, canonical labels in and out.
FusionVector fuse(const VirasoroRing& ring, int a, int b);

// Iterated fusion product of a label list (empty list = unit).
// Memoized per thread; the result is independent of the order of labels.
const FusionVector& fuse_all(const VirasoroRing& ring, std::span<const int> labels);

// The same product expanded over raw indices 1..2k in its parity class
// (index of entry = raw index; entry 0 unused).
std::vector<Int> fuse_all_raw(const VirasoroRing& ring, std::span<const int> labels);

// Multiplicity of the trivial module in fuse_all, valid for any n >= 0.
// Equals rank V_{0,n} for n >= 3 and extends it to the degenerate point
// counts used by factorization (n = 2: dual pairing, n = 1: unit indicator).
Int rank0(const VirasoroRing& ring, std::span<const int> labels);

Int rank_genus0(const VirasoroRing& ring, std::span<const int> labels); // n >= 3
Int rank_genus1(const VirasoroRing& ring, std::span<const int> labels); // n >= 1

// Handle-sum reduction to genus 0; enumeration is k^g-fold, capped.
Int rank_genus(const VirasoroRing& ring, int genus, std::span<const int> labels,
               int genus_cap = 3);

Rat conformal_weight(const VirasoroRing& ring, int label); // h_a <= 0
long normalized_weight(const VirasoroRing& ring, int label); // (a-1)(2k-a)
Rat central_charge(const VirasoroRing& ring);

// Sum a_j - (n-1): fuse_all_raw has no support at raw indices >= this bound.
long fusion_support_bound(std::span<const int> labels);

// Cyclic ring: multiplicity of the trivial label U_0 in the product.
Int cyclic_rank0(const CyclicRing& ring, std::span<const int> labels);
Rat cyclic_weight(const CyclicRing& ring, int label); // h'_i = i(m-i)/2m

// Drops the per-thread fusion caches (used between large scans over
// different rings to bound memory).
void clear_fusion_caches();

} // namespace virblocks
