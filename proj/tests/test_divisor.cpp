#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "virblocks/coinvariant.hpp"
#include "virblocks/json_io.hpp"

#include <algorithm>

using namespace virblocks;

namespace {

Mask mask_of(std::initializer_list<int> pts)
{
    Mask m = 0;
    for (int p : pts)
        m |= mask_of_point(p);
    return m;
}

std::vector<std::vector<int>> tuples_upto(int k, int n, int lo = 1)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<size_t>(n), lo);
    auto rec = [&](auto&& self, int pos, int start) -> void {
        if (pos == n) {
            out.push_back(cur);
            return;
        }
        for (int a = start; a <= k; ++a) {
            cur[static_cast<size_t>(pos)] = a;
            self(self, pos + 1, a);
        }
    };
    rec(rec, 0, lo);
    return out;
}

} // namespace

TEST_CASE("F-curve enumeration counts")
{
    CHECK(enumerate_fcurves0(4).size() == 1);
    CHECK(enumerate_fcurves0(5).size() == 10);
    CHECK(enumerate_fcurves0(6).size() == 65);
    CHECK(enumerate_fcurves0(7).size() == 350);
    CHECK(enumerate_fcurves0(8).size() == 1701);

    // genus 1: one elliptic tail, (3^n - 2 2^n + 1)/2 two-leg spines,
    // sum_j C(n,j) S(j,3) genus-block spines
    auto count1 = [](int n) {
        long type5 = 0, type6 = 0;
        long p3 = 1;
        for (int i = 0; i < n; ++i)
            p3 *= 3;
        type5 = (p3 - 2 * (1L << n) + 1) / 2;
        // S(j,3) for j = 3..7: 1, 6, 25, 90, 301
        const long stirling[8] = {0, 0, 0, 1, 6, 25, 90, 301};
        for (int j = 3; j <= n; ++j) {
            long binom = 1;
            for (int t = 0; t < j; ++t)
                binom = binom * (n - t) / (t + 1);
            type6 += binom * stirling[j];
        }
        return 1 + type5 + type6;
    };
    for (int n = 1; n <= 6; ++n)
        CHECK(enumerate_fcurves1(n).size() == static_cast<size_t>(count1(n)));
    CHECK(enumerate_fcurves1(1).size() == 1); // elliptic tail only
    CHECK(enumerate_fcurves1(2).size() == 2); // tail + F_5(0,0,{1},{2})

    // all genus-0 curves are partitions into 4 nonempty blocks
    for (const auto& f : enumerate_fcurves0(6)) {
        REQUIRE(f.clusters.size() == 4);
        Mask u = 0;
        int total = 0;
        for (const auto& c : f.clusters) {
            CHECK(c.points != 0);
            u |= c.points;
            total += popcount(c.points);
        }
        CHECK(u == full_mask(6));
        CHECK(total == 6);
    }
}

TEST_CASE("pairing with F-curves")
{
    SUBCASE("psi degree on four points")
    {
        Divisor0 d(4);
        d.set_psi(1, Rat(1));
        CHECK(pair_fcurve(d, enumerate_fcurves0(4)[0]) == 1);
    }
    SUBCASE("boundary self-intersection")
    {
        Divisor0 d(5);
        d.add_boundary(mask_of({1, 2}), Rat(1));
        const FCurve f = FCurve::type6(5, mask_of({1, 2}), mask_of({3}), mask_of({4}), mask_of({5}));
        CHECK(pair_fcurve(d, f) == -1);
        // block-union pairings
        Divisor0 e(5);
        e.add_boundary(mask_of({1, 2, 3}), Rat(1));
        CHECK(pair_fcurve(e, f) == 1);
        Divisor0 g(5);
        g.add_boundary(mask_of({3, 4}), Rat(1));
        CHECK(pair_fcurve(g, f) == 1);
        Divisor0 h(5);
        h.add_boundary(mask_of({1, 3}), Rat(1));
        CHECK(pair_fcurve(h, f) == 0);
    }
}

TEST_CASE("canonical boundary keys")
{
    Divisor0 d(5);
    d.add_boundary(mask_of({3, 4, 5}), Rat(1)); // flips to {1,2}
    CHECK(d.boundary_coeff(mask_of({1, 2})) == 1);
    d.add_boundary(mask_of({1, 2}), Rat(-1));
    CHECK(d.boundary().empty());
    CHECK_THROWS_AS(d.add_boundary(mask_of({1}), Rat(1)), std::invalid_argument);
    CHECK_THROWS_AS(Divisor0(3), std::invalid_argument);
}

TEST_CASE("big average and standard form")
{
    SUBCASE("four points")
    {
        const Divisor0 avg = big_average(1, 4);
        for (Mask key : {mask_of({1, 2}), mask_of({1, 3}), mask_of({2, 3})})
            CHECK(avg.boundary_coeff(key) == ratio(1L, 3L));
        // degree check: 1 = 3 * 1/3 (the key {2,3} represents {1,4})
        Divisor0 psi(4);
        psi.set_psi(1, Rat(1));
        CHECK(same_class(avg, psi));
    }
    SUBCASE("fingerprint preserved")
    {
        for (int n = 4; n <= 7; ++n)
            for (int i = 1; i <= n; i += (n > 5 ? n - 1 : 1)) {
                Divisor0 psi(n);
                psi.set_psi(i, Rat(1));
                CHECK(same_class(big_average(i, n), psi));
            }
    }
    SUBCASE("standard form of zero is zero")
    {
        CHECK(standard_form(Divisor0(6)).empty());
    }
    SUBCASE("standard form preserves the class")
    {
        VirasoroRing r2(2);
        for (int n = 4; n <= 7; ++n) {
            const std::vector<int> labels(static_cast<size_t>(n), 2);
            const Divisor0 d = coinvariant_divisor0(r2, labels);
            CHECK(same_class(d, boundary_combination(n, standard_form(d))));
        }
    }
    SUBCASE("smallest ring two-label standard form is negative")
    {
        VirasoroRing r2(2);
        for (int n = 4; n <= 8; ++n) {
            const std::vector<int> labels(static_cast<size_t>(n), 2);
            for (const auto& [key, c] : standard_form(coinvariant_divisor0(r2, labels)))
                CHECK(sgn(c) < 0);
        }
    }
}

TEST_CASE("coinvariant divisor on genus 0")
{
    VirasoroRing r2(2);
    SUBCASE("four two-labels")
    {
        const Divisor0 d = coinvariant_divisor0(r2, std::vector<int>{2, 2, 2, 2});
        for (int i = 1; i <= 4; ++i)
            CHECK(d.psi(i) == ratio(-2L, 5L));
        for (Mask key : {mask_of({1, 2}), mask_of({1, 3}), mask_of({2, 3})})
            CHECK(d.boundary_coeff(key) == ratio(1L, 5L));
        CHECK(pair_fcurve(d, enumerate_fcurves0(4)[0]) == -1);
    }
    SUBCASE("trivial labels give the zero divisor")
    {
        const Divisor0 d = coinvariant_divisor0(r2, std::vector<int>{1, 1, 1, 1});
        CHECK(d.coords_zero());
    }
    SUBCASE("five two-labels")
    {
        const Divisor0 d = coinvariant_divisor0(r2, std::vector<int>{2, 2, 2, 2, 2});
        for (int i = 1; i <= 5; ++i)
            CHECK(d.psi(i) == ratio(-3L, 5L)); // rank 3 times -1/5
        for (const auto& [key, c] : d.boundary())
            CHECK(c == ratio(2L, 5L)); // -b with b = -2/5
        CHECK(d.boundary().size() == 10);
    }
    CHECK_THROWS_AS((void)coinvariant_divisor0(r2, std::vector<int>{2, 2, 2}),
                    std::invalid_argument);
}

TEST_CASE("degree laws on the two small spaces")
{
    SUBCASE("examples")
    {
        VirasoroRing r2(2);
        CHECK(deg_m04(r2, 2, 2, 2, 2) == -1);
        CHECK(deg_m04(r2, 1, 2, 2, 2) == 0);
        CHECK(deg_m11(r2, 1) == -2); // rank 2, -r(r-1)
        CHECK(deg_m11(r2, 2) == 0);
    }
    SUBCASE("exhaustive quadruple sweep")
    {
        for (int k = 2; k <= 6; ++k) {
            VirasoroRing r(k);
            for (int a = 1; a <= k; ++a)
                for (int b = a; b <= k; ++b)
                    for (int c = b; c <= k; ++c)
                        for (int d = c; d <= k; ++d) {
                            const Int rk = rank0(r, std::vector<int>{a, b, c, d});
                            CHECK(deg_m04(r, a, b, c, d) == ratio(Int(-rk * (rk - 1)), Int(2)));
                        }
        }
    }
    SUBCASE("one-point genus-1 sweep")
    {
        for (int k = 2; k <= 12; ++k) {
            VirasoroRing r(k);
            for (int a = 1; a <= k; ++a) {
                const Int rk = rank_genus1(r, std::vector<int>{a});
                CHECK(deg_m11(r, a) == Rat(Int(-rk * (rk - 1))));
            }
        }
    }
}

TEST_CASE("factorized intersections match the pairing table")
{
    // the central consistency check between the two computation routes
    for (int k = 2; k <= 3; ++k) {
        VirasoroRing r(k);
        for (int n = 4; n <= 6; ++n)
            for (const auto& labels : tuples_upto(k, n)) {
                const Divisor0 d = coinvariant_divisor0(r, labels);
                for (const auto& f : enumerate_fcurves0(n))
                    CHECK(pair_fcurve(d, f) == vir_intersection(r, labels, f));
            }
    }
}

TEST_CASE("worked factorized intersection values")
{
    VirasoroRing r2(2);
    const std::vector<int> labels{2, 2, 2, 2, 2};
    const FCurve f = FCurve::type6(5, mask_of({1, 2}), mask_of({3}), mask_of({4}), mask_of({5}));
    // channels: trivial contributes 0, the nontrivial channel -1
    CHECK(vir_intersection(r2, labels, f) == -1);

    const std::vector<int> trivial{1, 1, 1, 1, 1};
    for (const auto& c : enumerate_fcurves0(5))
        CHECK(vir_intersection(r2, trivial, c) == 0);
}

TEST_CASE("strict difference counterexample across rings")
{
    // D(k = 7 ring) . F < D(k = 6 ring) . F on the mixed two-block curve
    VirasoroRing r6(6), r7(7);
    const std::vector<int> labels{5, 5, 5, 6, 6, 6};
    const FCurve f = FCurve::type6(6, mask_of({1, 2}), mask_of({3, 6}), mask_of({4}), mask_of({5}));
    const Rat lo = vir_intersection(r6, labels, f);
    const Rat hi = vir_intersection(r7, labels, f);
    CHECK(hi < lo);
}

TEST_CASE("propagation pushes forward through curve classes")
{
    // pairing of the padded divisor against F equals the pairing of the
    // original against the curve with the new point dropped from its block
    VirasoroRing r3(3);
    for (int n = 4; n <= 5; ++n)
        for (const auto& labels : tuples_upto(3, n)) {
            std::vector<int> padded = labels;
            padded.push_back(1);
            for (const auto& f : enumerate_fcurves0(n + 1)) {
                Rat lhs = vir_intersection(r3, padded, f);
                // drop point n+1 from its block
                FCurve g = f;
                bool contracted = false;
                for (auto& c : g.clusters) {
                    if (mask_has(c.points, n + 1)) {
                        if (popcount(c.points) == 1)
                            contracted = true;
                        c.points &= ~mask_of_point(n + 1);
                    }
                }
                g.n = n;
                if (contracted) {
                    CHECK(lhs == 0);
                } else {
                    CHECK(lhs == vir_intersection(r3, labels, g));
                }
            }
        }
}

TEST_CASE("relabeling commutes with the divisor construction")
{
    VirasoroRing r3(3);
    const std::vector<int> labels{1, 2, 2, 3, 3};
    const std::vector<int> perm{3, 1, 4, 5, 2}; // image of points 1..5
    std::vector<int> permuted(5);
    for (int i = 1; i <= 5; ++i)
        permuted[static_cast<size_t>(perm[static_cast<size_t>(i - 1)] - 1)] =
            labels[static_cast<size_t>(i - 1)];
    const Divisor0 lhs = coinvariant_divisor0(r3, permuted);
    const Divisor0 rhs = relabel(coinvariant_divisor0(r3, labels), perm);
    Divisor0 diff = lhs;
    diff -= rhs;
    CHECK(diff.coords_zero());
}

TEST_CASE("restriction to a boundary divisor")
{
    VirasoroRing r2(2);
    // restriction of D_{0,6}(2^6) to the {1,2,3}-boundary equals the channel
    // sum of 5-point divisors weighted by complement-side multiplicities
    const std::vector<int> labels{2, 2, 2, 2, 2, 2};
    const Divisor0 d = coinvariant_divisor0(r2, labels);
    const Mask I = mask_of({1, 2, 3});
    const Divisor0 restricted = restrict_to_boundary(d, I);

    Divisor0 expected(4);
    const FusionVector& co = fuse_all(r2, std::vector<int>{2, 2, 2});
    for (int w = 1; w <= 2; ++w) {
        if (sgn(co.at(w)) == 0)
            continue;
        Divisor0 child = coinvariant_divisor0(r2, std::vector<int>{2, 2, 2, w});
        child *= Rat(co.at(w));
        expected += child;
    }
    CHECK(same_class(restricted, expected));
}

TEST_CASE("pullback of the zero divisor is zero")
{
    CHECK(pullback_forget_last(Divisor0(5)).coords_zero());
}

TEST_CASE("cyclic ring divisors")
{
    SUBCASE("all trivial labels")
    {
        CyclicRing c3(3);
        CHECK(cyclic_coinvariant_divisor0(c3, std::vector<int>{0, 0, 0, 0}).coords_zero());
    }
    SUBCASE("four half-labels over Z/2")
    {
        CyclicRing c2(2);
        const Divisor0 d = cyclic_coinvariant_divisor0(c2, std::vector<int>{1, 1, 1, 1});
        // h' = 1/4; each boundary channel is trivial with weight h'_0 = 0
        for (int i = 1; i <= 4; ++i)
            CHECK(d.psi(i) == ratio(1L, 4L));
        CHECK(pair_fcurve(d, enumerate_fcurves0(4)[0]) == 1);
    }
    SUBCASE("critical-sum tuples vanish as classes")
    {
        for (int m = 4; m <= 8; ++m) {
            CyclicRing ring(m);
            // labels (1,1,...,1, m-n+1)-style tuples with total sum m
            for (int n = 4; n <= std::min(6, m); ++n) {
                std::vector<int> labels(static_cast<size_t>(n), 1);
                labels.back() = m - (n - 1);
                if (labels.back() < 1 || labels.back() >= m)
                    continue;
                CHECK(class_zero(cyclic_coinvariant_divisor0(ring, labels)));
            }
        }
    }
}

TEST_CASE("genus 1 divisors")
{
    VirasoroRing r2(2);
    SUBCASE("one-point vacuum class")
    {
        const Divisor1 d = coinvariant_divisor1(r2, std::vector<int>{1});
        // -2 lambda as canonical -1/6 delta_irr
        const auto coords = pic1_coordinates(d);
        REQUIRE(coords.size() == 1);
        CHECK(coords[0] == ratio(-1L, 6L));
        CHECK(deg_m11(r2, 1) == -2);
    }
    SUBCASE("single nontrivial label vanishes")
    {
        CHECK(class_zero(coinvariant_divisor1(r2, std::vector<int>{2})));
        // one W_2 among trivials is still trivial
        CHECK(class_zero(coinvariant_divisor1(r2, std::vector<int>{1, 2, 1})));
    }
    SUBCASE("one-point classes follow the degree law")
    {
        for (int k = 2; k <= 6; ++k) {
            VirasoroRing r(k);
            for (int i = 0; i <= k - 1; ++i) {
                const int label = normalize_label(r, 2 * i + 1);
                const Divisor1 d = coinvariant_divisor1(r, std::vector<int>{label});
                const auto coords = pic1_coordinates(d);
                const long rk = k - i;
                // -r(r-1) lambda = -r(r-1)/12 delta_irr
                CHECK(coords[0] == ratio(Int(-rk * (rk - 1)), Int(12)));
            }
        }
    }
    SUBCASE("canonical form is idempotent and kills the Mumford relation")
    {
        Divisor1 d(4);
        d.lambda = 12;
        d.delta_irr = -1;
        CHECK(class_zero(d));
        const Divisor1 c = canonical_form(coinvariant_divisor1(r2, std::vector<int>{2, 2, 2, 2}));
        Divisor1 cc = canonical_form(c);
        cc -= c;
        CHECK(class_zero(cc));
        CHECK(is_zero(c.lambda));
        for (int i = 1; i <= 4; ++i)
            CHECK(is_zero(c.psi(i)));
    }
}

TEST_CASE("genus 1 pullback and restriction")
{
    VirasoroRing r2(2);
    SUBCASE("pullback of zero")
    {
        CHECK(class_zero(pullback_forget(Divisor1(3), 2)));
    }
    SUBCASE("delta_irr pulls back to delta_irr")
    {
        Divisor1 d(3);
        d.delta_irr = 1;
        const Divisor1 up = pullback_forget(d, 4);
        const auto coords = pic1_coordinates(up);
        CHECK(coords[0] == 1);
        for (size_t t = 1; t < coords.size(); ++t)
            CHECK(is_zero(coords[t]));
    }
    SUBCASE("pullback matches the divisor of padded labels")
    {
        for (int n = 2; n <= 5; ++n) {
            std::vector<int> labels(static_cast<size_t>(n), 2);
            Divisor1 base = coinvariant_divisor1(r2, labels);
            std::vector<int> padded = labels;
            padded.push_back(1);
            CHECK(same_class(coinvariant_divisor1(r2, padded), pullback_forget(base, n + 1)));
        }
    }
    SUBCASE("psi at the last point dies on the two-point boundary")
    {
        for (int n = 4; n <= 6; ++n)
            for (int i = 1; i <= n - 1; i += 2)
                CHECK(class_zero(restrict_to_twopoint_boundary(psi_class_m1n(n, n), i)));
    }
    SUBCASE("restriction sends the two-point boundary class to -psi")
    {
        const int n = 4, i = 2;
        Divisor1 d(n);
        d.add_boundary(mask_of({2, 4}), Rat(1)); // the {i, n} class
        const Divisor1 res = restrict_to_twopoint_boundary(d, i);
        Divisor1 psi(n - 1);
        psi.set_psi(n - 1, Rat(-1));
        CHECK(same_class(res, psi));
    }
}

TEST_CASE("divisor JSON round trip")
{
    VirasoroRing r2(2);
    const Divisor0 d0 = coinvariant_divisor0(r2, std::vector<int>{2, 2, 2, 2, 2});
    Divisor0 back0 = divisor0_from_json(to_json(d0));
    back0 -= d0;
    CHECK(back0.coords_zero());

    const Divisor1 d1 = coinvariant_divisor1(r2, std::vector<int>{2, 2, 2});
    const Divisor1 back1 = divisor1_from_json(to_json(d1));
    CHECK(same_class(back1, d1));
    CHECK(to_json(d1)["lambda"].get<std::string>() ==
          rat_string(Rat(rank_genus1(r2, std::vector<int>{2, 2, 2})) * central_charge(r2) / 2));
}
