#include "virblocks/fusion.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>
#include <utility>

namespace virblocks {

int normalize_label(const VirasoroRing& ring, int raw_index)
{
    if (raw_index < 1 || raw_index > 2 * ring.k)
        throw std::invalid_argument("normalize_label: raw index out of [1, 2k]");
    return std::min(raw_index, 2 * ring.k + 1 - raw_index);
}

void check_label(const VirasoroRing& ring, int label)
{
    if (label < 1 || label > ring.k)
        throw std::invalid_argument("invalid module label " + std::to_string(label) +
                                    " for k = " + std::to_string(ring.k));
}

FusionVector fuse(const VirasoroRing& ring, int a, int b)
{
    check_label(ring, a);
    check_label(ring, b);
    FusionVector out(ring.k);
    const int hi = std::min(a + b, 4 * ring.k + 2 - (a + b)) - 1;
    for (int i = std::abs(a - b) + 1; i <= hi; i += 2)
        out.at(normalize_label(ring, i)) += 1;
    return out;
}

namespace {

// state x W_b, bilinear in the state.
FusionVector fuse_step(const VirasoroRing& ring, const FusionVector& state, int b)
{
    FusionVector out(ring.k);
    for (int a = 1; a <= ring.k; ++a) {
        const Int& m = state.at(a);
        if (sgn(m) == 0)
            continue;
        const int hi = std::min(a + b, 4 * ring.k + 2 - (a + b)) - 1;
        for (int i = std::abs(a - b) + 1; i <= hi; i += 2)
            out.at(normalize_label(ring, i)) += m;
    }
    return out;
}

// Keys encode (k, sorted labels) as bytes; labels stay far below 256.
thread_local std::unordered_map<std::string, FusionVector> g_fuse_cache;

} // namespace

void clear_fusion_caches() { g_fuse_cache.clear(); }

const FusionVector& fuse_all(const VirasoroRing& ring, std::span<const int> labels)
{
    std::string key;
    key.reserve(labels.size() + 1);
    key.push_back(static_cast<char>(ring.k));
    {
        std::vector<int> sorted(labels.begin(), labels.end());
        std::sort(sorted.begin(), sorted.end());
        for (int a : sorted) {
            check_label(ring, a);
            key.push_back(static_cast<char>(a));
        }
    }
    auto it = g_fuse_cache.find(key);
    if (it != g_fuse_cache.end())
        return it->second;

    FusionVector acc(ring.k);
    if (labels.empty()) {
        acc.at(1) = 1;
    } else {
        acc.at(static_cast<int>(key.back())) = 1;
        for (size_t i = 1; i + 1 < key.size(); ++i)
            acc = fuse_step(ring, acc, static_cast<int>(key[i]));
    }
    return g_fuse_cache.emplace(std::move(key), std::move(acc)).first->second;
}

std::vector<Int> fuse_all_raw(const VirasoroRing& ring, std::span<const int> labels)
{
    const int k2 = 2 * ring.k;
    std::vector<Int> acc(static_cast<size_t>(k2) + 1, Int(0));
    if (labels.empty()) {
        acc[1] = 1;
        return acc;
    }
    check_label(ring, labels[0]);
    acc[static_cast<size_t>(labels[0])] = 1;
    for (size_t t = 1; t < labels.size(); ++t) {
        const int b = labels[t];
        check_label(ring, b);
        std::vector<Int> next(static_cast<size_t>(k2) + 1, Int(0));
        for (int a = 1; a <= k2; ++a) {
            if (sgn(acc[static_cast<size_t>(a)]) == 0)
                continue;
            const int hi = std::min(a + b, 4 * ring.k + 2 - (a + b)) - 1;
            for (int i = std::abs(a - b) + 1; i <= hi; i += 2)
                next[static_cast<size_t>(i)] += acc[static_cast<size_t>(a)];
        }
        acc = std::move(next);
    }
    return acc;
}

Int rank0(const VirasoroRing& ring, std::span<const int> labels)
{
    return fuse_all(ring, labels).at(1);
}

Int rank_genus0(const VirasoroRing& ring, std::span<const int> labels)
{
    if (labels.size() < 3)
        throw std::invalid_argument("rank_genus0: need n >= 3 marked points");
    return rank0(ring, labels);
}

Int rank_genus1(const VirasoroRing& ring, std::span<const int> labels)
{
    if (labels.empty())
        throw std::invalid_argument("rank_genus1: need n >= 1 marked points");
    // Glue one handle: sum the diagonal channel over all simple modules.
    Int total = 0;
    std::vector<int> aug(labels.begin(), labels.end());
    aug.push_back(0);
    aug.push_back(0);
    for (int a = 1; a <= ring.k; ++a) {
        aug[aug.size() - 2] = a;
        aug[aug.size() - 1] = a;
        total += rank0(ring, aug);
    }
    return total;
}

Int rank_genus(const VirasoroRing& ring, int genus, std::span<const int> labels, int genus_cap)
{
    if (genus < 0)
        throw std::invalid_argument("rank_genus: negative genus");
    if (genus > genus_cap)
        throw std::invalid_argument("rank_genus: genus " + std::to_string(genus) +
                                    " above cap " + std::to_string(genus_cap));
    if (2 * genus - 2 + static_cast<long>(labels.size()) <= 0 && genus <= 1) {
        if (genus == 0 && labels.size() < 3)
            throw std::invalid_argument("rank_genus: unstable (0, n)");
        if (genus == 1 && labels.empty())
            throw std::invalid_argument("rank_genus: unstable (1, 0)");
    }
    if (genus == 0)
        return rank0(ring, labels);
    std::vector<int> aug(labels.begin(), labels.end());
    aug.push_back(0);
    aug.push_back(0);
    Int total = 0;
    for (int a = 1; a <= ring.k; ++a) {
        aug[aug.size() - 2] = a;
        aug[aug.size() - 1] = a;
        total += rank_genus(ring, genus - 1, aug, genus_cap);
    }
    return total;
}

Rat conformal_weight(const VirasoroRing& ring, int label)
{
    check_label(ring, label);
    const long k = ring.k;
    return ratio(Int(-(2 * k - label) * (label - 1)), Int(2 * (2 * k + 1)));
}

long normalized_weight(const VirasoroRing& ring, int label)
{
    check_label(ring, label);
    return static_cast<long>(label - 1) * (2L * ring.k - label);
}

Rat central_charge(const VirasoroRing& ring)
{
    const long k = ring.k;
    return ratio(Int(-2 * (k - 1) * (6 * k - 1)), Int(2 * k + 1));
}

long fusion_support_bound(std::span<const int> labels)
{
    long s = 0;
    for (int a : labels)
        s += a;
    return s - (static_cast<long>(labels.size()) - 1);
}

Int cyclic_rank0(const CyclicRing& ring, std::span<const int> labels)
{
    long s = 0;
    for (int b : labels) {
        if (b < 0 || b >= ring.m)
            throw std::invalid_argument("cyclic_rank0: label out of [0, m)");
        s += b;
    }
    return (s % ring.m == 0) ? 1 : 0;
}

Rat cyclic_weight(const CyclicRing& ring, int label)
{
    if (label < 0 || label >= ring.m)
        throw std::invalid_argument("cyclic_weight: label out of [0, m)");
    return ratio(Int(static_cast<long>(label) * (ring.m - label)), Int(2L * ring.m));
}

} // namespace virblocks
