#include "virblocks/acceptance.hpp"

#include "virblocks/indsys.hpp"
#include "virblocks/json_io.hpp"
#include "virblocks/picbasis.hpp"
#include "virblocks/stability.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <sstream>
#include <thread>

namespace virblocks {

namespace {

int g_jobs = 2;

std::vector<std::vector<int>> multisets(int lo, int hi, int n)
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

// parallel all-of over a task list; workers keep their own fusion caches
bool parallel_all(size_t count, const std::function<bool(size_t)>& task)
{
    const int jobs = std::max(1, g_jobs);
    if (jobs == 1 || count < 2) {
        for (size_t i = 0; i < count; ++i)
            if (!task(i))
                return false;
        return true;
    }
    std::atomic<size_t> next{0};
    std::atomic<bool> ok{true};
    auto worker = [&]() {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= count || !ok.load())
                return;
            try {
                if (!task(i))
                    ok.store(false);
            } catch (...) {
                ok.store(false);
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back(worker);
    for (auto& th : pool)
        th.join();
    return ok.load();
}

Mask mask_of(std::initializer_list<int> pts)
{
    Mask m = 0;
    for (int p : pts)
        m |= mask_of_point(p);
    return m;
}

bool criterion_degree_law(std::string& detail)
{
    for (int k = 2; k <= 6; ++k)
        if (!verify_degree_law_m04(VirasoroRing(k))) {
            detail = "M04 degree law failed at k=" + std::to_string(k);
            return false;
        }
    for (int k = 2; k <= 12; ++k)
        if (!verify_degree_law_m11(VirasoroRing(k))) {
            detail = "M11 degree law failed at k=" + std::to_string(k);
            return false;
        }
    detail = "all quadruples for k in [2,6]; all labels for k in [2,12]";
    return true;
}

bool criterion_fibonacci_ranks(std::string& detail)
{
    const VirasoroRing r2(2);
    for (int n = 3; n <= 25; ++n) {
        std::vector<int> labels(static_cast<size_t>(n), 2);
        const Int f0 = fibonacci(static_cast<unsigned long>(n - 1));
        const Int f1 = f0 + fibonacci(static_cast<unsigned long>(n + 1));
        if (rank_genus0(r2, labels) != f0 || rank_genus1(r2, labels) != f1) {
            detail = "rank law failed at n=" + std::to_string(n);
            return false;
        }
    }
    detail = "genus 0 and 1 rank laws for 3 <= n <= 25";
    return true;
}

bool criterion_oracle_equivalence(std::string& detail)
{
    // Label multisets suffice: both routes are relabeling-equivariant, so
    // the identity for sorted tuples against every curve implies it for all
    // tuples. Equivariance itself is asserted on a sample below.
    long checked = 0;
    for (int k = 2; k <= 4 && checked >= 0; ++k) {
        const VirasoroRing ring(k);
        for (int n = 4; n <= 7; ++n) {
            const auto tuples = multisets(1, k, n);
            const auto& curves = enumerate_fcurves0(n);
            std::atomic<long> counter{0};
            const bool ok = parallel_all(tuples.size(), [&](size_t i) {
                const Divisor0 d = coinvariant_divisor0(ring, tuples[i]);
                for (const auto& f : curves)
                    if (pair_fcurve(d, f) != vir_intersection(ring, tuples[i], f))
                        return false;
                counter.fetch_add(static_cast<long>(curves.size()));
                return true;
            });
            if (!ok) {
                detail = "mismatch at k=" + std::to_string(k) + ", n=" + std::to_string(n);
                return false;
            }
            checked += counter.load();
        }
    }
    {
        const VirasoroRing r3(3);
        const std::vector<int> labels{1, 2, 2, 3, 3};
        const std::vector<int> perm{3, 1, 4, 5, 2};
        std::vector<int> permuted(5);
        for (int i = 1; i <= 5; ++i)
            permuted[static_cast<size_t>(perm[static_cast<size_t>(i - 1)] - 1)] =
                labels[static_cast<size_t>(i - 1)];
        Divisor0 diff = coinvariant_divisor0(r3, permuted);
        diff -= relabel(coinvariant_divisor0(r3, labels), perm);
        if (!diff.coords_zero()) {
            detail = "relabeling equivariance failed";
            return false;
        }
    }
    detail = std::to_string(checked) + " (tuple, curve) pairings agree across both routes";
    return true;
}

bool criterion_fnef(std::string& detail)
{
    long scanned = 0;
    for (int k = 2; k <= 4; ++k) {
        const VirasoroRing ring(k);
        for (int g = 0; g <= 1; ++g)
            for (int n = (g == 0 ? 4 : 1); n <= 7; ++n) {
                const auto tuples = multisets(2, k, n);
                const bool ok = parallel_all(tuples.size(), [&](size_t i) {
                    const PositivityReport rep = check_fnef(ring, g, tuples[i]);
                    if (!rep.fnef)
                        return false;
                    if (rep.rank <= 1)
                        return rep.zero_class;
                    return rep.fample && !rep.zero_class;
                });
                if (!ok) {
                    detail = "trichotomy failed at k=" + std::to_string(k) +
                             ", g=" + std::to_string(g) + ", n=" + std::to_string(n);
                    return false;
                }
                scanned += static_cast<long>(tuples.size());
            }
    }
    detail = std::to_string(scanned) + " nontrivial tuples scanned, k <= 4, g <= 1, n <= 7";
    return true;
}

bool criterion_genvireff(std::string& detail)
{
    const GenvireffReport r5 = verify_genvireff(5, std::nullopt, g_jobs);
    if (!r5.all_certified || !r5.degree_law_verified) {
        detail = "k=5 not fully certified";
        return false;
    }
    const GenvireffReport r6 = verify_genvireff(6, std::nullopt, g_jobs);
    if (!r6.all_certified || !r6.degree_law_verified) {
        detail = "k=6 not fully certified";
        return false;
    }
    std::ostringstream os;
    os << "k=5: " << r5.tuples << " tuples (" << r5.lp_tuples << " via LP); k=6: " << r6.tuples
       << " tuples (" << r6.lp_tuples << " via LP)";
    detail = os.str();
    return true;
}

bool criterion_stabilization(std::string& detail)
{
    long even_count = 0, odd_count = 0;
    for (int n = 4; n <= 6; ++n)
        for (const auto& a : multisets(1, 4, n)) {
            const TupleSpec t(a);
            const int l = critical_level(t);
            const int k_lo = std::max({l, t.max_entry(), 2});
            if (t.parity() == 0) {
                std::vector<Rat> base;
                for (int k = k_lo; k <= l + 2; ++k) {
                    const auto fp = fingerprint(coinvariant_divisor0(VirasoroRing(k), a));
                    if (base.empty())
                        base = fp;
                    else if (fp != base) {
                        detail = "even tuple moved above the critical level";
                        return false;
                    }
                }
                ++even_count;
            } else {
                for (int k = std::max(t.max_entry(), 2); k <= l + 2; ++k) {
                    if (t.weight_sum() > 2 * k - 1)
                        continue;
                    if (!class_zero(coinvariant_divisor0(VirasoroRing(k), a))) {
                        detail = "odd tuple not zero at k=" + std::to_string(k);
                        return false;
                    }
                }
                ++odd_count;
            }
        }
    detail = std::to_string(even_count) + " even tuples stable on [l, l+2]; " +
             std::to_string(odd_count) + " odd tuples vanish up to 2k-1";
    return true;
}

bool criterion_differences(std::string& detail)
{
    {
        const TupleSpec t({2, 2, 4, 5, 5});
        const FCurve f_pos =
            FCurve::type6(5, mask_of({1, 2}), mask_of({3}), mask_of({4}), mask_of({5}));
        const FCurve f_zero =
            FCurve::type6(5, mask_of({1}), mask_of({2}), mask_of({3, 4}), mask_of({5}));
        if (difference_intersection(t, 5, f_pos) != 2 ||
            difference_intersection(t, 5, f_zero) != 0 || !check_difference_fnef(t, 5).fnef) {
            detail = "five-point difference example failed";
            return false;
        }
    }
    {
        const TupleSpec t({2, 3, 3, 4, 4, 5, 5, 6});
        if (critical_level(t) != 13) {
            detail = "critical level of the eight-point example is off";
            return false;
        }
        const FCurve f_zero =
            FCurve::type6(8, mask_of({1, 2, 3, 4, 6}), mask_of({5}), mask_of({7}), mask_of({8}));
        const FCurve f_nonzero =
            FCurve::type6(8, mask_of({1, 2, 3, 4, 5}), mask_of({6}), mask_of({7}), mask_of({8}));
        if (difference_intersection(t, 6, f_zero) != 0 ||
            difference_intersection(t, 6, f_nonzero) == 0) {
            detail = "eight-point zero/nonzero pattern failed";
            return false;
        }
        const std::vector<FCurve> nonpullback{
            FCurve::type6(8, mask_of({1}), mask_of({2, 3, 4, 5}), mask_of({6, 7}), mask_of({8})),
            FCurve::type6(8, mask_of({1, 3, 4}), mask_of({2}), mask_of({5, 6, 7}), mask_of({8})),
            FCurve::type6(8, mask_of({1, 2, 4}), mask_of({3}), mask_of({5, 6, 7}), mask_of({8})),
            FCurve::type6(8, mask_of({1, 2, 3, 7}), mask_of({4}), mask_of({5, 6}), mask_of({8})),
            FCurve::type6(8, mask_of({1, 2, 3, 7}), mask_of({4, 6}), mask_of({5}), mask_of({8}))};
        for (const auto& f : nonpullback)
            if (difference_intersection(t, 6, f) == 0) {
                detail = "expected nonzero pairing vanished on the eight-point example";
                return false;
            }
    }
    {
        // outside the hypotheses of the difference scans the comparison
        // genuinely fails
        const VirasoroRing r6(6), r7(7);
        const std::vector<int> labels{5, 5, 5, 6, 6, 6};
        const FCurve f =
            FCurve::type6(6, mask_of({1, 2}), mask_of({3, 6}), mask_of({4}), mask_of({5}));
        if (!(vir_intersection(r7, labels, f) < vir_intersection(r6, labels, f))) {
            detail = "strict inequality counterexample failed";
            return false;
        }
    }
    detail = "five-point and eight-point examples plus the strict counterexample";
    return true;
}

bool criterion_basis(std::string& detail)
{
    for (int n = 1; n <= 8; ++n) {
        const Matrix m = vir5_basis_matrix(n);
        if (matrix_rank(m) != pic1_dim(n)) {
            detail = "basis matrix singular at n=" + std::to_string(n);
            return false;
        }
    }
    const VirasoroRing r2(2);
    for (int n = 2; n <= 12; ++n) {
        std::vector<int> labels(static_cast<size_t>(n), 2);
        Int pow5;
        mpz_ui_pow_ui(pow5.get_mpz_t(), 5, static_cast<unsigned long>(n / 2 - 1));
        if (t_functional(coinvariant_divisor1(r2, labels)) != Rat(Int(-pow5))) {
            detail = "functional value failed at n=" + std::to_string(n);
            return false;
        }
    }
    for (int n = 1; n <= 30; ++n)
        if (!fibonacci_identities(n).match()) {
            detail = "Fibonacci identity failed at n=" + std::to_string(n);
            return false;
        }
    detail = "basis invertible to n=8; functional values to n=12; sums to n=30";
    return true;
}

bool criterion_contraction_kernel(std::string& detail)
{
    for (int n = 4; n <= 6; ++n) {
        const ContractionKernelReport rep = contraction_kernel_check(n, n - 1, n);
        if (!rep.dims_ok || !rep.annihilator_match || !rep.sequence_exact) {
            detail = "kernel check failed at n=" + std::to_string(n);
            return false;
        }
        const PsiCharacterizationReport psi = psi_characterization_check(n);
        if (!psi.dim_is_two || !psi.cut_to_psi_line || !psi.delta_full_pairs_one) {
            detail = "psi characterization failed at n=" + std::to_string(n);
            return false;
        }
    }
    detail = "kernel + psi characterization for n in {4,5,6}";
    return true;
}

bool criterion_indsys(std::string& detail)
{
    const std::vector<Rat> ps{Rat(0), ratio(1L, 2L), Rat(1), Rat(2)};
    for (const Rat& p : ps) {
        const AxiomReport rep = verify_axioms(two_module_system(p), 8);
        if (!rep.all()) {
            detail = "axioms failed for p=" + rat_string(p) + " (" + rep.first_failure + ")";
            return false;
        }
    }
    for (const Rat& p : ps)
        for (int n = 4; n <= 10; ++n) {
            const DnpReport rep = check_dnp_positivity(p, n);
            if (!rep.fnef || (sgn(p) > 0 && !rep.fample) || !rep.factorized_matches_pairing) {
                detail = "positivity failed for p=" + rat_string(p) + ", n=" + std::to_string(n);
                return false;
            }
            // p = 0 degenerates on even-block curves once they exist
            if (sgn(p) == 0 && n >= 5 && rep.fample) {
                detail = "zero-parameter family unexpectedly ample at n=" + std::to_string(n);
                return false;
            }
        }
    const VirasoroRing r2(2);
    for (int n = 4; n <= 8; ++n) {
        std::vector<int> labels(static_cast<size_t>(n), 2);
        Divisor0 expected = coinvariant_divisor0(r2, labels);
        const auto fp_dnp = fingerprint(d_np_class(Rat(1), n));
        const auto fp_vir = fingerprint(expected);
        // empirical per-n constant, asserted positive against the negated
        // coinvariant divisor
        size_t t = 0;
        while (t < fp_vir.size() && is_zero(fp_vir[t]))
            ++t;
        if (t == fp_vir.size()) {
            detail = "unexpected zero class at n=" + std::to_string(n);
            return false;
        }
        const Rat c = fp_dnp[t] / fp_vir[t];
        if (!(sgn(c) < 0)) { // positive against -D
            detail = "proportionality constant has the wrong sign";
            return false;
        }
        for (size_t s = 0; s < fp_vir.size(); ++s)
            if (fp_dnp[s] != c * fp_vir[s]) {
                detail = "proportionality failed at n=" + std::to_string(n);
                return false;
            }
    }
    detail = "axioms to n=8; positivity to n=10; proportionality to n=8";
    return true;
}

bool criterion_cyclic_vanishing(std::string& detail)
{
    long checked = 0;
    for (int m = 4; m <= 8; ++m) {
        const CyclicRing ring(m);
        for (int n = 4; n <= 6; ++n)
            for (const auto& labels : multisets(1, m - 1, n)) {
                long sum = 0;
                for (int b : labels)
                    sum += b;
                if (sum != m)
                    continue; // exactly the critical sum
                if (!class_zero(cyclic_coinvariant_divisor0(ring, labels))) {
                    detail = "cyclic divisor did not vanish (m=" + std::to_string(m) + ")";
                    return false;
                }
                ++checked;
            }
    }
    detail = std::to_string(checked) + " critical tuples vanish, m <= 8, n <= 6";
    return true;
}

} // namespace

const std::vector<CriterionSpec>& acceptance_criteria()
{
    static const std::vector<CriterionSpec> criteria{
        {1, "degree determined by rank on the two small spaces", criterion_degree_law},
        {2, "Fibonacci rank laws for the smallest ring", criterion_fibonacci_ranks},
        {3, "pairing table matches factorized intersections", criterion_oracle_equivalence},
        {4, "F-nefness with the zero-iff-rank trichotomy", criterion_fnef},
        {5, "interior-cone verification for k = 5 and k = 6", criterion_genvireff},
        {6, "stabilization above the critical level", criterion_stabilization},
        {7, "difference divisor worked examples", criterion_differences},
        {8, "genus-1 Picard basis and functional values", criterion_basis},
        {9, "contraction kernels and psi characterization", criterion_contraction_kernel},
        {10, "inductive family axioms and positivity", criterion_indsys},
        {11, "cyclic-ring vanishing at the critical sum", criterion_cyclic_vanishing},
    };
    return criteria;
}

std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids, int jobs)
{
    g_jobs = std::max(1, jobs);
    std::vector<CriterionResult> results;
    for (const auto& spec : acceptance_criteria()) {
        if (!ids.empty() && std::find(ids.begin(), ids.end(), spec.id) == ids.end())
            continue;
        CriterionResult res;
        res.id = spec.id;
        res.name = spec.name;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            res.pass = spec.run(res.detail);
        } catch (const std::exception& e) {
            res.pass = false;
            res.detail = std::string("exception: ") + e.what();
        }
        res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        results.push_back(std::move(res));
    }
    return results;
}

} // namespace virblocks
