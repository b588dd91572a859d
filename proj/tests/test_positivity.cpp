#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "virblocks/positivity.hpp"

using namespace virblocks;

namespace {

std::vector<std::vector<int>> nontrivial_tuples(int k, int n)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<size_t>(n), 2);
    auto rec = [&](auto&& self, int pos, int lo) -> void {
        if (pos == n) {
            out.push_back(cur);
            return;
        }
        for (int a = lo; a <= k; ++a) {
            cur[static_cast<size_t>(pos)] = a;
            self(self, pos + 1, a);
        }
    };
    rec(rec, 0, 2);
    return out;
}

} // namespace

TEST_CASE("smallest ring scans are F-ample in genus 0")
{
    VirasoroRing r2(2);
    for (int n = 4; n <= 10; ++n) {
        std::vector<int> labels(static_cast<size_t>(n), 2);
        const PositivityReport rep = check_fnef(r2, 0, labels);
        CHECK(rep.fnef);
        CHECK(rep.fample);
        CHECK(!rep.zero_class);
    }
}

TEST_CASE("rank at most one forces the zero class")
{
    VirasoroRing r3(3);
    // W_2^{2k-1} at n = 2k - 1 = 5 has the zero divisor
    const std::vector<int> labels{2, 2, 2, 2, 2};
    CHECK(rank0(r3, labels) == 1);
    const PositivityReport rep = check_fnef(r3, 0, labels);
    CHECK(rep.zero_class);
    CHECK(rep.fnef);
    CHECK(!rep.fample);
}

TEST_CASE("trichotomy for nontrivial tuples")
{
    // zero iff rank <= 1, else strictly positive on every curve
    for (int k = 2; k <= 3; ++k) {
        VirasoroRing r(k);
        for (int g = 0; g <= 1; ++g)
            for (int n = (g == 0 ? 4 : 1); n <= 5; ++n)
                for (const auto& labels : nontrivial_tuples(k, n)) {
                    const PositivityReport rep = check_fnef(r, g, labels);
                    CHECK(rep.fnef);
                    if (rep.rank <= 1) {
                        CHECK(rep.zero_class);
                    } else {
                        CHECK(rep.fample);
                    }
                }
    }
}

TEST_CASE("genus 1 worked class: many two-labels")
{
    VirasoroRing r2(2);
    const std::vector<int> labels{2, 2, 2, 2};
    const PositivityReport rep = check_fnef(r2, 1, labels);
    CHECK(rep.fnef);
    CHECK(rep.fample);
    CHECK(rep.rank == rank_genus1(r2, labels));
}

TEST_CASE("effectivity certificates")
{
    VirasoroRing r2(2);
    SUBCASE("standard form succeeds in the stable regime")
    {
        // n >= 4k - 4 = 4 for the smallest ring
        for (int n = 4; n <= 7; ++n) {
            std::vector<int> labels(static_cast<size_t>(n), 2);
            const Divisor0 d = coinvariant_divisor0(r2, labels);
            const EffectivityResult eff = check_effectivity(d, true);
            CHECK(eff.status == Effectivity::AllStandardNegative);
            CHECK(eff.fingerprint_checked);
            for (const auto& [key, c] : eff.coefficients)
                CHECK(sgn(c) > 0);
        }
    }
    SUBCASE("zero divisor is non-strictly certified")
    {
        const EffectivityResult eff = check_effectivity(Divisor0(5), false);
        CHECK(eff.status == Effectivity::AllStandardNegative);
        CHECK(eff.coefficients.empty());
    }
    SUBCASE("zero divisor has no interior certificate")
    {
        const EffectivityResult eff = check_effectivity(Divisor0(5), true);
        CHECK((eff.status == Effectivity::LpFeasible || eff.status == Effectivity::Infeasible));
        if (eff.status == Effectivity::LpFeasible)
            CHECK(sgn(eff.lp_t) == 0);
    }
    SUBCASE("positive psi sums are not in the boundary cone")
    {
        // -D = -psi_1 - ... - psi_n is anti-effective; expect infeasible
        Divisor0 d(5);
        for (int i = 1; i <= 5; ++i)
            d.set_psi(i, Rat(1));
        const EffectivityResult eff = check_effectivity(d, false);
        CHECK(eff.status == Effectivity::Infeasible);
    }
}

TEST_CASE("exceptional large-ring class needs the LP phase")
{
    // standard form fails but the interior LP certificate exists
    VirasoroRing r8(8);
    const std::vector<int> labels{2, 2, 2, 2, 2, 4, 4, 7};
    const Divisor0 d = coinvariant_divisor0(r8, labels);
    const auto sf = standard_form(d);
    bool all_neg = true;
    for (const auto& [key, c] : sf)
        if (sgn(c) >= 0)
            all_neg = false;
    CHECK(!all_neg);
    const EffectivityResult eff = check_effectivity(d, true);
    CHECK(eff.status == Effectivity::LpInteriorFeasible);
    CHECK(sgn(eff.lp_t) > 0);
    CHECK(eff.fingerprint_checked);
}

TEST_CASE("degree-law sweeps")
{
    for (int k = 2; k <= 5; ++k) {
        CHECK(verify_degree_law_m04(VirasoroRing(k)));
        CHECK(verify_degree_law_m11(VirasoroRing(k)));
    }
}

TEST_CASE("interior-cone verification for small rings")
{
    SUBCASE("k = 2 is vacuous")
    {
        const GenvireffReport rep = verify_genvireff(2);
        CHECK(rep.all_certified);
        CHECK(rep.tuples == 0);
    }
    SUBCASE("k = 3")
    {
        const GenvireffReport rep = verify_genvireff(3);
        CHECK(rep.all_certified);
        CHECK(rep.degree_law_verified);
        CHECK(rep.tuples > 0);
    }
    SUBCASE("k = 4, analytic skip off agrees")
    {
        const GenvireffReport fast = verify_genvireff(4, std::nullopt, 2, true);
        const GenvireffReport full = verify_genvireff(4, std::nullopt, 2, false);
        CHECK(fast.all_certified);
        CHECK(full.all_certified);
        CHECK(fast.tuples == full.tuples);
    }
}

TEST_CASE("recursive nefness certificates")
{
    VirasoroRing r2(2);
    SUBCASE("zero divisor")
    {
        const NefCertificate cert = nef_certificate(r2, std::vector<int>{1, 1, 1, 1});
        CHECK(cert.complete);
        CHECK(cert.nodes[0].kind == NefCertificate::Kind::ZeroClass);
    }
    SUBCASE("small n bottoms out at the F-nef check")
    {
        const NefCertificate cert = nef_certificate(r2, std::vector<int>{2, 2, 2, 2});
        CHECK(cert.complete);
        CHECK(cert.nodes[0].kind == NefCertificate::Kind::SmallN);
    }
    SUBCASE("eight two-labels recurse through boundary channels")
    {
        const NefCertificate cert =
            nef_certificate(r2, std::vector<int>{2, 2, 2, 2, 2, 2, 2, 2});
        CHECK(cert.complete);
        REQUIRE(!cert.nodes.empty());
        CHECK(cert.nodes[0].kind == NefCertificate::Kind::Effective);
        CHECK(!cert.nodes[0].children.empty());
    }
    SUBCASE("larger ring at n = 8")
    {
        VirasoroRing r5(5);
        const NefCertificate cert =
            nef_certificate(r5, std::vector<int>{2, 2, 2, 2, 2, 2, 2, 5});
        CHECK(cert.complete);
    }
}

TEST_CASE("genus 2 scans through the cluster taxonomy")
{
    VirasoroRing r2(2);
    for (const auto& labels : {std::vector<int>{2}, std::vector<int>{2, 2}}) {
        const PositivityReport rep = check_fnef(r2, 2, labels);
        CHECK(rep.fnef);
        CHECK(rep.fample); // nontrivial labels in genus >= 2
        CHECK(rep.rank >= 2);
    }
    // genus above the cap is rejected
    CHECK_THROWS_AS((void)check_fnef(r2, 3, std::vector<int>{2}), std::invalid_argument);
}

TEST_CASE("curve row basis spans the boundary pairings")
{
    const CurveRowBasis& basis = curve_row_basis(6);
    CHECK(basis.keys.size() == 25); // canonical keys of [6]
    CHECK(!basis.rows.empty());
    // rank can not exceed the Picard number 2^{n-1} - binom(n,2) - 1 = 16
    CHECK(basis.rows.size() <= 16);
}
