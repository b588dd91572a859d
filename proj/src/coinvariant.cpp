#include "virblocks/coinvariant.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>

namespace virblocks {

namespace {

std::vector<int> labels_of_mask(std::span<const int> labels, Mask m)
{
    std::vector<int> out;
    out.reserve(static_cast<size_t>(popcount(m)));
    for (int p : mask_points(m))
        out.push_back(labels[static_cast<size_t>(p - 1)]);
    return out;
}

// channel multiplicity vector of a point set: entry[M] = rank(labels(m), M)
std::vector<Int> channel_vector(const VirasoroRing& ring, std::span<const int> labels, Mask m)
{
    const FusionVector& f = fuse_all(ring, labels_of_mask(labels, m));
    std::vector<Int> v(static_cast<size_t>(ring.k) + 1, Int(0));
    for (int a = 1; a <= ring.k; ++a)
        v[static_cast<size_t>(a)] = f.at(a);
    return v;
}

thread_local std::map<std::pair<int, std::array<int, 4>>, Rat> g_deg04_cache;
thread_local std::map<std::pair<int, int>, Rat> g_deg11_cache;

} // namespace

void clear_coinvariant_caches()
{
    g_deg04_cache.clear();
    g_deg11_cache.clear();
}

Divisor0 coinvariant_divisor0(const VirasoroRing& ring, std::span<const int> labels)
{
    const int n = static_cast<int>(labels.size());
    if (n < 4)
        throw std::invalid_argument("coinvariant_divisor0: need n >= 4");
    for (int a : labels)
        check_label(ring, a);

    const Int r = rank0(ring, labels);
    Divisor0 out(n);
    if (sgn(r) == 0)
        return out;

    const Rat rr(r);
    for (int i = 1; i <= n; ++i)
        out.set_psi(i, rr * conformal_weight(ring, labels[static_cast<size_t>(i - 1)]));

    const Mask full = full_mask(n);
    for (Mask key = 0; key <= full; ++key) {
        if (mask_has(key, n))
            continue;
        const int m = popcount(key);
        if (m < 2 || m > n - 2)
            continue;
        const auto side = channel_vector(ring, labels, key);
        const auto coside = channel_vector(ring, labels, full & ~key);
        Rat b(0);
        for (int w = 1; w <= ring.k; ++w) {
            Int prod = side[static_cast<size_t>(w)] * coside[static_cast<size_t>(w)];
            if (sgn(prod) != 0)
                b += Rat(prod) * conformal_weight(ring, w);
        }
        if (!is_zero(b))
            out.add_boundary(key, Rat(-b));
    }
    return out;
}

Divisor1 coinvariant_divisor1(const VirasoroRing& ring, std::span<const int> labels)
{
    const int n = static_cast<int>(labels.size());
    if (n < 1)
        throw std::invalid_argument("coinvariant_divisor1: need n >= 1");
    for (int a : labels)
        check_label(ring, a);

    const Int r = rank_genus1(ring, labels);
    Divisor1 out(n);

    out.lambda = Rat(r) * central_charge(ring) / 2;
    for (int i = 1; i <= n; ++i)
        out.set_psi(i, Rat(r) * conformal_weight(ring, labels[static_cast<size_t>(i - 1)]));

    // b_irr: handle channel
    {
        std::vector<int> aug(labels.begin(), labels.end());
        aug.push_back(0);
        aug.push_back(0);
        Rat b(0);
        for (int w = 1; w <= ring.k; ++w) {
            aug[aug.size() - 2] = w;
            aug[aug.size() - 1] = w;
            Int rk = rank0(ring, aug);
            if (sgn(rk) != 0)
                b += Rat(rk) * conformal_weight(ring, w);
        }
        out.delta_irr = -b;
    }

    // genus-0 tails delta_{0,S}
    const Mask full = full_mask(n);
    for (Mask s = 0; s <= full; ++s) {
        if (popcount(s) < 2)
            continue;
        const auto tail = channel_vector(ring, labels, s);
        std::vector<int> rest = labels_of_mask(labels, full & ~s);
        rest.push_back(0);
        Rat b(0);
        for (int w = 1; w <= ring.k; ++w) {
            if (sgn(tail[static_cast<size_t>(w)]) == 0)
                continue;
            rest.back() = w;
            Int rk = rank_genus1(ring, rest);
            if (sgn(rk) != 0)
                b += Rat(tail[static_cast<size_t>(w)] * rk) * conformal_weight(ring, w);
        }
        if (!is_zero(b))
            out.add_boundary(s, Rat(-b));
    }
    return out;
}

Divisor0 cyclic_coinvariant_divisor0(const CyclicRing& ring, std::span<const int> labels)
{
    const int n = static_cast<int>(labels.size());
    if (n < 4)
        throw std::invalid_argument("cyclic_coinvariant_divisor0: need n >= 4");

    const Int r = cyclic_rank0(ring, labels);
    Divisor0 out(n);
    if (sgn(r) == 0)
        return out;

    for (int i = 1; i <= n; ++i)
        out.set_psi(i, cyclic_weight(ring, labels[static_cast<size_t>(i - 1)]));

    auto side_sum = [&](Mask m) {
        long s = 0;
        for (int p : mask_points(m))
            s += labels[static_cast<size_t>(p - 1)];
        return s;
    };

    const Mask full = full_mask(n);
    for (Mask key = 0; key <= full; ++key) {
        if (mask_has(key, n))
            continue;
        const int m = popcount(key);
        if (m < 2 || m > n - 2)
            continue;
        // single channel c with s_I + c = 0 mod m; complement side is then
        // automatic because the total sum vanishes mod m
        const long c = ((ring.m - side_sum(key) % ring.m) % ring.m);
        const Rat b = cyclic_weight(ring, static_cast<int>(c));
        if (!is_zero(b))
            out.add_boundary(key, Rat(-b));
    }
    return out;
}

Rat deg_m04(const VirasoroRing& ring, int a, int b, int c, int d)
{
    std::array<int, 4> key{a, b, c, d};
    std::sort(key.begin(), key.end());
    auto it = g_deg04_cache.find({ring.k, key});
    if (it != g_deg04_cache.end())
        return it->second;

    const std::vector<int> labels{key[0], key[1], key[2], key[3]};
    const Int r = rank0(ring, labels);
    Rat deg(0);
    if (sgn(r) != 0) {
        Rat hsum(0);
        for (int x : labels)
            hsum += conformal_weight(ring, x);
        deg = Rat(r) * hsum;
        // the three boundary points of M-bar_{0,4}
        const std::array<std::pair<std::pair<int, int>, std::pair<int, int>>, 3> splits{{
            {{key[0], key[1]}, {key[2], key[3]}},
            {{key[0], key[2]}, {key[1], key[3]}},
            {{key[0], key[3]}, {key[1], key[2]}},
        }};
        for (const auto& sp : splits) {
            const FusionVector& f1 = fuse(ring, sp.first.first, sp.first.second);
            const FusionVector& f2 = fuse(ring, sp.second.first, sp.second.second);
            Rat bb(0);
            for (int w = 1; w <= ring.k; ++w) {
                Int prod = f1.at(w) * f2.at(w);
                if (sgn(prod) != 0)
                    bb += Rat(prod) * conformal_weight(ring, w);
            }
            deg -= bb;
        }
    }
    g_deg04_cache.emplace(std::make_pair(ring.k, key), deg);
    return deg;
}

Rat deg_m11(const VirasoroRing& ring, int label)
{
    check_label(ring, label);
    auto it = g_deg11_cache.find({ring.k, label});
    if (it != g_deg11_cache.end())
        return it->second;

    const std::vector<int> one{label};
    const Int r = rank_genus1(ring, one);
    // D_{1,1} = r (c/2 lambda + h psi_1) - b_irr delta_irr with
    // psi_1 = lambda, delta_irr = 12 lambda
    Rat deg = Rat(r) * (central_charge(ring) / 2 + conformal_weight(ring, label));
    std::vector<int> tri{label, 0, 0};
    Rat b(0);
    for (int w = 1; w <= ring.k; ++w) {
        tri[1] = w;
        tri[2] = w;
        Int rk = rank0(ring, tri);
        if (sgn(rk) != 0)
            b += Rat(rk) * conformal_weight(ring, w);
    }
    deg -= 12 * b;
    g_deg11_cache.emplace(std::make_pair(ring.k, label), deg);
    return deg;
}

Rat vir_intersection(const VirasoroRing& ring, std::span<const int> labels, const FCurve& f,
                     int genus_cap)
{
    const int n = static_cast<int>(labels.size());
    if (f.n != n)
        throw std::invalid_argument("vir_intersection: point count mismatch");
    for (int a : labels)
        check_label(ring, a);

    if (f.elliptic_tail) {
        // sum_W rank_{g-1}(labels + W) deg D_{1,1}(W)
        Rat total(0);
        std::vector<int> aug(labels.begin(), labels.end());
        aug.push_back(0);
        for (int w = 1; w <= ring.k; ++w) {
            aug.back() = w;
            Int rk = (f.g == 1) ? rank0(ring, aug) : rank_genus(ring, f.g - 1, aug, genus_cap);
            if (sgn(rk) != 0)
                total += Rat(rk) * deg_m11(ring, w);
        }
        return total;
    }

    // spine: channels (M_1..M_4) assigned to legs in cluster order
    struct ClusterData {
        int genus;
        int legs;
        std::vector<int> labels;
    };
    std::vector<ClusterData> cl;
    int legs_total = 0;
    for (const auto& c : f.clusters) {
        cl.push_back({c.genus, c.legs, labels_of_mask(labels, c.points)});
        legs_total += c.legs;
    }
    if (legs_total != 4)
        throw std::invalid_argument("vir_intersection: malformed spine");

    // per-cluster rank of (labels + assigned channels), memoized locally
    std::map<std::pair<size_t, std::vector<int>>, Int> rank_cache;
    auto cluster_rank = [&](size_t ci, std::vector<int> chans) -> const Int& {
        std::sort(chans.begin(), chans.end());
        auto key = std::make_pair(ci, std::move(chans));
        auto itc = rank_cache.find(key);
        if (itc != rank_cache.end())
            return itc->second;
        std::vector<int> aug = cl[ci].labels;
        aug.insert(aug.end(), key.second.begin(), key.second.end());
        Int rk = (cl[ci].genus == 0) ? rank0(ring, aug)
                                     : rank_genus(ring, cl[ci].genus, aug, genus_cap);
        return rank_cache.emplace(std::move(key), std::move(rk)).first->second;
    };

    Rat total(0);
    std::array<int, 4> M{1, 1, 1, 1};
    const int k = ring.k;
    // iterate over all k^4 channel tuples; zero cluster ranks prune early
    auto rec = [&](auto&& self, size_t ci, int leg_base, Int partial) -> void {
        if (ci == cl.size()) {
            total += Rat(partial) * deg_m04(ring, M[0], M[1], M[2], M[3]);
            return;
        }
        const int legs = cl[ci].legs;
        std::vector<int> chans(static_cast<size_t>(legs), 1);
        auto loop = [&](auto&& inner, int li) -> void {
            if (li == legs) {
                const Int& rk = cluster_rank(ci, chans);
                if (sgn(rk) != 0)
                    self(self, ci + 1, leg_base + legs, Int(partial * rk));
                return;
            }
            for (int w = 1; w <= k; ++w) {
                chans[static_cast<size_t>(li)] = w;
                M[static_cast<size_t>(leg_base + li)] = w;
                inner(inner, li + 1);
            }
        };
        loop(loop, 0);
    };
    rec(rec, 0, 0, Int(1));
    return total;
}

} // namespace virblocks
