#include "virblocks/stability.hpp"

#include <algorithm>
#include <stdexcept>

namespace virblocks {

TupleSpec::TupleSpec(std::vector<int> a_) : a(std::move(a_))
{
    if (a.empty())
        throw std::invalid_argument("TupleSpec: empty tuple");
    for (int x : a)
        if (x < 1)
            throw std::invalid_argument("TupleSpec: entries must be positive");
}

long TupleSpec::weight_sum() const
{
    long s = 0;
    for (int x : a)
        s += x - 1;
    return s;
}

int TupleSpec::max_entry() const
{
    return *std::max_element(a.begin(), a.end());
}

int critical_level(const TupleSpec& t)
{
    const long s = t.weight_sum();
    return static_cast<int>((s + 1) / 2 + 1);
}

int stable_ring(const TupleSpec& t)
{
    return std::max({critical_level(t), t.max_entry(), 2});
}

std::set<int> allowed_channels(const VirasoroRing& ring, std::span<const int> a)
{
    long s = 0;
    std::vector<int> labels(a.begin(), a.end());
    for (int& x : labels) {
        s += x - 1;
        x = normalize_label(ring, x);
    }
    std::set<int> out;
    labels.push_back(0);
    for (int b = 1; b <= 2 * ring.k; ++b) {
        if ((s + b - 1) % 2 != 0)
            continue;
        labels.back() = normalize_label(ring, b);
        if (rank0(ring, labels) >= 1)
            out.insert(b);
    }
    return out;
}

Divisor0 stable_divisor(const TupleSpec& t)
{
    if (t.n() < 4)
        throw std::invalid_argument("stable_divisor: need n >= 4");
    if (t.parity() == 1)
        return Divisor0(t.n());
    const int k0 = stable_ring(t);
    const Divisor0 d0 = coinvariant_divisor0(VirasoroRing(k0), t.a);
    const Divisor0 d1 = coinvariant_divisor0(VirasoroRing(k0 + 1), t.a);
    if (!same_class(d0, d1))
        throw std::logic_error("stable_divisor: class not stable at the critical level");
    return d0;
}

StabilizationReport check_stabilization(const TupleSpec& t, int k_lo, int k_hi)
{
    if (t.n() < 4)
        throw std::invalid_argument("check_stabilization: need n >= 4");
    StabilizationReport rep{t};
    rep.parity = t.parity();
    rep.level = critical_level(t);
    rep.k_lo = std::max({k_lo, t.max_entry(), 2});
    rep.k_hi = k_hi;
    if (rep.k_lo > rep.k_hi) {
        rep.k_first_stable = 0;
        return rep;
    }

    std::vector<std::vector<Rat>> prints;
    for (int k = rep.k_lo; k <= rep.k_hi; ++k)
        prints.push_back(fingerprint(coinvariant_divisor0(VirasoroRing(k), t.a)));

    const auto& last = prints.back();
    rep.zero = std::all_of(last.begin(), last.end(), [](const Rat& v) { return is_zero(v); });
    rep.agree = true;
    const int l_eff = std::max(rep.level, rep.k_lo);
    for (int k = l_eff; k <= rep.k_hi; ++k)
        if (prints[static_cast<size_t>(k - rep.k_lo)] != last)
            rep.agree = false;

    rep.k_first_stable = rep.k_hi;
    for (int k = rep.k_hi; k >= rep.k_lo; --k) {
        if (prints[static_cast<size_t>(k - rep.k_lo)] != last)
            break;
        rep.k_first_stable = k;
    }
    return rep;
}

Divisor0 difference_divisor(const TupleSpec& t, int k)
{
    if (t.max_entry() > k)
        throw std::invalid_argument("difference_divisor: entry exceeds k");
    const Divisor0 lo = coinvariant_divisor0(VirasoroRing(k), t.a);
    const Divisor0 hi = coinvariant_divisor0(VirasoroRing(k + 1), t.a);
    return (t.parity() == 0) ? lo - hi : hi - lo;
}

Rat difference_intersection(const TupleSpec& t, int k, const FCurve& f)
{
    if (t.max_entry() > k)
        throw std::invalid_argument("difference_intersection: entry exceeds k");
    const Rat lo = vir_intersection(VirasoroRing(k), t.a, f);
    const Rat hi = vir_intersection(VirasoroRing(k + 1), t.a, f);
    return (t.parity() == 0) ? Rat(lo - hi) : Rat(hi - lo);
}

DifferenceReport check_difference_fnef(const TupleSpec& t, int k)
{
    DifferenceReport rep{t};
    rep.k = k;
    bool first = true;
    bool all_zero = true;
    for (const auto& f : enumerate_fcurves0(t.n())) {
        const Rat v = difference_intersection(t, k, f);
        if (!is_zero(v))
            all_zero = false;
        if (first || v < rep.witness_value) {
            rep.witness = f;
            rep.witness_value = v;
            first = false;
        }
    }
    rep.zero = all_zero;
    rep.fnef = first || sgn(rep.witness_value) >= 0;
    return rep;
}

SteffCertificate steff_certificate(const TupleSpec& t, int fingerprint_n_cap)
{
    const int n = t.n();
    if (n < 4)
        throw std::invalid_argument("steff_certificate: need n >= 4");
    if (t.parity() != 0)
        throw std::invalid_argument("steff_certificate: tuple parity must be even");
    for (int x : t.a)
        if (x < 2)
            throw std::invalid_argument("steff_certificate: entries must be >= 2");
    const long s = t.weight_sum();
    const int k = static_cast<int>(s / 2 + 1); // 2k - 1 = s + 1
    if (t.max_entry() > k)
        throw std::invalid_argument("steff_certificate: entry exceeds the critical ring");

    SteffCertificate cert;
    cert.k = k;
    const VirasoroRing ring(k);
    const Int r = rank0(ring, t.a);
    if (r <= 1) {
        cert.zero = true;
        return cert;
    }

    // cyclic cross-check: the level-one divisor at labels a_i - 1 vanishes
    cert.scale_checked = n <= fingerprint_n_cap;
    if (cert.scale_checked) {
        const CyclicRing cyc(2 * k - 2);
        std::vector<int> shifted;
        for (int x : t.a)
            shifted.push_back(x - 1);
        cert.cyclic_identity_zero = class_zero(cyclic_coinvariant_divisor0(cyc, shifted));
    }

    // -D = (r / 4k) sum_I [ s_I (2k-2-s_I) - B_I ] delta_{0,I}
    const Mask full = full_mask(n);
    cert.all_positive = true;
    for (Mask key = 0; key <= full; ++key) {
        if (mask_has(key, n))
            continue;
        const int m = popcount(key);
        if (m < 2 || m > n - 2)
            continue;
        long s_key = 0;
        std::vector<int> side, coside;
        for (int p = 1; p <= n; ++p) {
            if (mask_has(key, p)) {
                s_key += t.a[static_cast<size_t>(p - 1)] - 1;
                side.push_back(t.a[static_cast<size_t>(p - 1)]);
            } else {
                coside.push_back(t.a[static_cast<size_t>(p - 1)]);
            }
        }
        const FusionVector& f1 = fuse_all(ring, side);
        const FusionVector& f2 = fuse_all(ring, coside);
        Rat weighted(0);
        for (int w = 1; w <= k; ++w) {
            Int prod = f1.at(w) * f2.at(w);
            if (sgn(prod) != 0)
                weighted += Rat(Int(prod * (w - 1) * (2 * k - w - 1)));
        }
        const Rat b_key = weighted / Rat(r);
        Rat c = (Rat(Int(s_key * (2 * k - 2 - s_key))) - b_key) * ratio(Int(r), Int(4 * k));
        if (sgn(c) <= 0)
            cert.all_positive = false;
        cert.coefficients.emplace(key, std::move(c));
    }

    if (cert.scale_checked) {
        Divisor0 neg(n);
        neg -= coinvariant_divisor0(ring, t.a);
        cert.fingerprint_checked = same_class(boundary_combination(n, cert.coefficients), neg);
    }
    return cert;
}

} // namespace virblocks
