#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "virblocks/stability.hpp"

using namespace virblocks;

namespace {

Mask mask_of(std::initializer_list<int> pts)
{
    Mask m = 0;
    for (int p : pts)
        m |= mask_of_point(p);
    return m;
}

std::vector<std::vector<int>> tuples_upto(int hi, int n, int lo = 1)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<size_t>(n), lo);
    auto rec = [&](auto&& self, int pos, int start) -> void {
        if (pos == n) {
            out.push_back(cur);
            return;
        }
        for (int a = start; a <= hi; ++a) {
            cur[static_cast<size_t>(pos)] = a;
            self(self, pos + 1, a);
        }
    };
    rec(rec, 0, lo);
    return out;
}

} // namespace

TEST_CASE("critical level")
{
    CHECK(critical_level(TupleSpec({1, 1, 1})) == 1);
    CHECK(critical_level(TupleSpec({2, 2, 4, 5, 5})) == 8);
    CHECK(critical_level(TupleSpec({3, 4, 5, 6, 6, 6})) == 13);
    CHECK(critical_level(TupleSpec({2, 2, 2, 2})) == 3);
    CHECK_THROWS_AS(TupleSpec({}), std::invalid_argument);
    CHECK_THROWS_AS(TupleSpec({0, 2}), std::invalid_argument);
}

TEST_CASE("allowed channel sets")
{
    VirasoroRing r2(2);
    const auto m22 = allowed_channels(r2, std::vector<int>{2, 2});
    CHECK(m22 == std::set<int>{1, 3});

    // self-duality puts the trivial channel in M_k(a, a)
    for (int k = 2; k <= 5; ++k) {
        VirasoroRing r(k);
        for (int a = 1; a <= 2 * k; ++a) {
            const auto m = allowed_channels(r, std::vector<int>{a, a});
            CHECK(m.count(1) == 1);
        }
    }
}

TEST_CASE("channel sets grow with the ring")
{
    for (int k = 2; k <= 5; ++k) {
        VirasoroRing r(k), r_next(k + 1);
        for (int n = 2; n <= 4; ++n)
            for (const auto& a : tuples_upto(std::min(2 * k, 5), n)) {
                const auto lo = allowed_channels(r, a);
                const auto hi = allowed_channels(r_next, a);
                for (int b : lo)
                    CHECK(hi.count(b) == 1);
            }
    }
}

TEST_CASE("even tuples have monotone ranks")
{
    for (int k = 2; k <= 5; ++k) {
        VirasoroRing r(k), r_next(k + 1);
        for (int n = 3; n <= 6; ++n)
            for (const auto& a : tuples_upto(std::min(2 * k, 5), n)) {
                long wsum = 0;
                for (int x : a)
                    wsum += x - 1;
                if (wsum % 2 != 0)
                    continue;
                std::vector<int> lo_labels = a, hi_labels = a;
                for (int& x : lo_labels)
                    x = normalize_label(r, x);
                for (int& x : hi_labels)
                    x = normalize_label(r_next, x);
                CHECK(rank0(r, lo_labels) <= rank0(r_next, hi_labels));
            }
    }
}

TEST_CASE("stable divisors")
{
    SUBCASE("odd tuples are zero")
    {
        CHECK(stable_divisor(TupleSpec({2, 2, 2, 3})).coords_zero());
    }
    SUBCASE("all trivial")
    {
        CHECK(stable_divisor(TupleSpec({1, 1, 1, 1})).coords_zero());
    }
    SUBCASE("even tuple stabilizes at the critical level")
    {
        const TupleSpec t({2, 2, 3, 3});
        CHECK(critical_level(t) == 4);
        const Divisor0 d = stable_divisor(t); // asserts l vs l+1 agreement
        CHECK(!d.coords_zero());
        CHECK(same_class(d, coinvariant_divisor0(VirasoroRing(6), t.a)));
    }
    SUBCASE("entries above the critical level move the evaluation ring")
    {
        const TupleSpec t({4, 2, 1, 1});
        CHECK(critical_level(t) == 3);
        CHECK(stable_ring(t) == 4);
        CHECK_NOTHROW((void)stable_divisor(t));
    }
}

TEST_CASE("stabilization scan")
{
    const TupleSpec t({2, 2, 2, 2});
    const StabilizationReport rep = check_stabilization(t, 2, 6);
    CHECK(rep.agree);
    CHECK(rep.level == 3);
    CHECK(rep.k_first_stable <= 3); // these stabilize no later than l
    CHECK(!rep.zero);

    // odd tuples vanish from one below the critical level onward
    const TupleSpec odd({2, 2, 2, 3});
    const StabilizationReport orep = check_stabilization(odd, 3, 6);
    CHECK(orep.zero);
    CHECK(orep.agree);
}

TEST_CASE("odd vanishing across small rings")
{
    for (int k = 2; k <= 4; ++k) {
        VirasoroRing r(k);
        for (int n = 4; n <= 6; ++n)
            for (const auto& a : tuples_upto(k, n)) {
                long wsum = 0;
                for (int x : a)
                    wsum += x - 1;
                if (wsum % 2 == 0 || wsum > 2 * k - 1)
                    continue;
                CHECK(class_zero(coinvariant_divisor0(r, a)));
            }
    }
}

TEST_CASE("worked difference example on five points")
{
    const TupleSpec t({2, 2, 4, 5, 5});
    // rings 2k+1 = 11 and 2k+3 = 13; odd parity flips the sign
    CHECK(t.parity() == 1);
    const FCurve f1 = FCurve::type6(5, mask_of({1, 2}), mask_of({3}), mask_of({4}), mask_of({5}));
    const FCurve f2 = FCurve::type6(5, mask_of({1}), mask_of({2}), mask_of({3, 4}), mask_of({5}));
    CHECK(difference_intersection(t, 5, f1) == 2);
    CHECK(difference_intersection(t, 5, f2) == 0);

    const DifferenceReport rep = check_difference_fnef(t, 5);
    CHECK(rep.fnef);
    CHECK(!rep.zero);

    // stabilization is sharp here: one ring below the critical level the
    // class is still moving
    CHECK(critical_level(t) == 8);
    const FCurve probe = FCurve::type6(5, mask_of({1}), mask_of({2}), mask_of({3, 4}), mask_of({5}));
    CHECK(difference_intersection(t, 6, probe) != 0);
}

TEST_CASE("worked difference example on six points")
{
    const TupleSpec t({3, 4, 5, 6, 6, 6});
    CHECK(t.parity() == 0);
    CHECK(critical_level(t) == 13);
    const FCurve zero_curve =
        FCurve::type6(6, mask_of({1, 5, 6}), mask_of({2}), mask_of({3}), mask_of({4}));
    const FCurve nonzero_curve =
        FCurve::type6(6, mask_of({1, 2, 3}), mask_of({4}), mask_of({5}), mask_of({6}));
    CHECK(difference_intersection(t, 6, zero_curve) == 0);
    CHECK(difference_intersection(t, 6, nonzero_curve) != 0);
    CHECK(check_difference_fnef(t, 6).fnef);
}

TEST_CASE("difference of equal rings vanishes")
{
    // even tuple far above its critical level: both rings give the same class
    const TupleSpec t({2, 2, 2, 2});
    const DifferenceReport rep = check_difference_fnef(t, 5);
    CHECK(rep.zero);
    CHECK(rep.fnef);
}

TEST_CASE("exact-critical-level boundary certificate")
{
    SUBCASE("four two-labels")
    {
        const TupleSpec t({2, 2, 2, 2});
        const SteffCertificate cert = steff_certificate(t);
        CHECK(cert.k == 3);
        CHECK(!cert.zero);
        CHECK(cert.all_positive);
        CHECK(cert.scale_checked);
        CHECK(cert.cyclic_identity_zero);
        CHECK(cert.fingerprint_checked);
    }
    SUBCASE("six points")
    {
        const TupleSpec t({2, 2, 2, 2, 3, 3});
        const SteffCertificate cert = steff_certificate(t);
        CHECK(cert.k == 5);
        CHECK(cert.all_positive);
        CHECK(cert.cyclic_identity_zero);
        CHECK(cert.fingerprint_checked);
    }
    SUBCASE("input validation")
    {
        CHECK_THROWS_AS(steff_certificate(TupleSpec({2, 2, 2, 3})), std::invalid_argument);
        CHECK_THROWS_AS(steff_certificate(TupleSpec({1, 2, 2, 3})), std::invalid_argument);
    }
}

TEST_CASE("stable divisors with nontrivial entries are zero or strictly certified")
{
    for (int n = 4; n <= 8; ++n)
        for (const auto& a : tuples_upto(3, n, 2)) {
            const TupleSpec t(a);
            if (t.parity() != 0)
                continue;
            if (n >= 7 && t.max_entry() > 3)
                continue;
            const Divisor0 d = stable_divisor(t);
            if (class_zero(d))
                continue;
            const PositivityReport rep = check_fnef(VirasoroRing(stable_ring(t)), 0, a);
            CHECK(rep.fample);
            const EffectivityResult eff = check_effectivity(d, true);
            CHECK((eff.status == Effectivity::AllStandardNegative ||
                   eff.status == Effectivity::LpInteriorFeasible));
        }
}

TEST_CASE("boundary restriction of a stable divisor splits into stable divisors")
{
    const TupleSpec t({2, 2, 2, 2, 2, 2});
    const Divisor0 d = stable_divisor(t);
    const int k = stable_ring(t);
    const VirasoroRing ring(k);
    const Mask I = mask_of({1, 2, 3});
    const Divisor0 restricted = restrict_to_boundary(d, I);

    Divisor0 expected(4);
    const FusionVector& co = fuse_all(ring, std::vector<int>{2, 2, 2});
    for (int w = 1; w <= k; ++w) {
        if (sgn(co.at(w)) == 0)
            continue;
        const TupleSpec child({2, 2, 2, w});
        Divisor0 cd = (child.parity() == 1) ? Divisor0(4) : stable_divisor(child);
        cd *= Rat(co.at(w));
        expected += cd;
    }
    CHECK(same_class(restricted, expected));
}
