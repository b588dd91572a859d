#include "virblocks/indsys.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace virblocks {

Rat InductiveSystem::coefficient(const std::vector<int>& labels, int target) const
{
    std::vector<Rat> state(static_cast<size_t>(num_labels), Rat(0));
    state[0] = 1; // empty product = unit
    for (int l : labels) {
        std::vector<Rat> next(static_cast<size_t>(num_labels), Rat(0));
        for (int a = 0; a < num_labels; ++a) {
            if (is_zero(state[static_cast<size_t>(a)]))
                continue;
            const auto& row = product[static_cast<size_t>(a)][static_cast<size_t>(l)];
            for (int c = 0; c < num_labels; ++c)
                if (!is_zero(row[static_cast<size_t>(c)]))
                    next[static_cast<size_t>(c)] +=
                        state[static_cast<size_t>(a)] * row[static_cast<size_t>(c)];
        }
        state = std::move(next);
    }
    return state[static_cast<size_t>(target)];
}

InductiveSystem admissible_system(std::string name, int num_labels,
                                  std::vector<std::vector<std::vector<Rat>>> product,
                                  std::vector<int> dual, std::vector<Rat> cw)
{
    InductiveSystem sys;
    sys.name = std::move(name);
    sys.num_labels = num_labels;
    sys.product = std::move(product);
    sys.dual = std::move(dual);
    auto weights = std::move(cw);
    // the divisor callable captures a copy of the combinatorial data
    InductiveSystem data = sys;
    sys.divisor = [data, weights](const std::vector<int>& labels) -> Divisor0 {
        const int n = static_cast<int>(labels.size());
        Divisor0 out(n);
        const Rat rank = data.coefficient(labels, 0);
        for (int i = 1; i <= n; ++i)
            out.set_psi(i, rank * weights[static_cast<size_t>(labels[static_cast<size_t>(i - 1)])]);
        const Mask full = full_mask(n);
        for (Mask key = 0; key <= full; ++key) {
            if (mask_has(key, n))
                continue;
            const int m = popcount(key);
            if (m < 2 || m > n - 2)
                continue;
            std::vector<int> side, coside;
            for (int p = 1; p <= n; ++p)
                (mask_has(key, p) ? side : coside).push_back(labels[static_cast<size_t>(p - 1)]);
            Rat b(0);
            for (int w = 0; w < data.num_labels; ++w) {
                if (is_zero(weights[static_cast<size_t>(w)]))
                    continue;
                side.push_back(w);
                coside.push_back(data.dual[static_cast<size_t>(w)]);
                const Rat f1 = data.coefficient(side, 0);
                const Rat f2 = data.coefficient(coside, 0);
                side.pop_back();
                coside.pop_back();
                if (!is_zero(f1) && !is_zero(f2))
                    b += weights[static_cast<size_t>(w)] * f1 * f2;
            }
            if (!is_zero(b))
                out.add_boundary(key, Rat(-b));
        }
        return out;
    };
    return sys;
}

InductiveSystem vir_system(int k)
{
    const VirasoroRing ring(k);
    InductiveSystem sys;
    sys.name = "vir(2," + std::to_string(2 * k + 1) + ")";
    sys.num_labels = k;
    sys.product.assign(static_cast<size_t>(k),
                       std::vector<std::vector<Rat>>(static_cast<size_t>(k),
                                                     std::vector<Rat>(static_cast<size_t>(k), Rat(0))));
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            const FusionVector f = fuse(ring, a + 1, b + 1);
            for (int c = 0; c < k; ++c)
                sys.product[static_cast<size_t>(a)][static_cast<size_t>(b)][static_cast<size_t>(c)] =
                    Rat(f.at(c + 1));
        }
    sys.dual.assign(static_cast<size_t>(k), 0);
    for (int a = 0; a < k; ++a)
        sys.dual[static_cast<size_t>(a)] = a; // all modules self-dual
    sys.divisor = [ring](const std::vector<int>& labels) -> Divisor0 {
        std::vector<int> shifted;
        shifted.reserve(labels.size());
        for (int l : labels)
            shifted.push_back(l + 1);
        return coinvariant_divisor0(ring, shifted);
    };
    return sys;
}

namespace {

thread_local std::map<std::pair<Rat, int>, Rat> g_r_cache;

} // namespace

Rat r_value(const Rat& p, int n)
{
    if (n < 0)
        throw std::invalid_argument("r_value: n >= 0");
    if (sgn(p) < 0)
        throw std::invalid_argument("r_value: p >= 0");
    if (n == 0)
        return Rat(1); // recurrence run backwards from R_1 = 0, R_2 = 1
    if (n == 1)
        return Rat(0);
    if (n == 2)
        return Rat(1);
    auto it = g_r_cache.find({p, n});
    if (it != g_r_cache.end())
        return it->second;
    Rat prev(0), cur(1);
    for (int m = 3; m <= n; ++m) {
        Rat next = p * cur + prev;
        prev = cur;
        cur = next;
    }
    g_r_cache.emplace(std::make_pair(p, n), cur);
    return cur;
}

Divisor0 d_np_class(const Rat& p, int n)
{
    if (n < 4)
        throw std::invalid_argument("d_np_class: n >= 4");
    Divisor0 out(n);
    const Rat rn = r_value(p, n);
    for (int i = 1; i <= n; ++i)
        out.set_psi(i, rn);
    const Mask full = full_mask(n);
    for (Mask key = 0; key <= full; ++key) {
        if (mask_has(key, n))
            continue;
        const int m = popcount(key);
        if (m < 2 || m > n - 2)
            continue;
        const Rat c = r_value(p, m + 1) * r_value(p, n - m + 1);
        if (!is_zero(c))
            out.add_boundary(key, Rat(-c));
    }
    return out;
}

InductiveSystem two_module_system(const Rat& p)
{
    InductiveSystem sys;
    sys.name = "two-module(p=" + rat_string(p) + ")";
    sys.num_labels = 2;
    sys.product = {{{Rat(1), Rat(0)}, {Rat(0), Rat(1)}},
                   {{Rat(0), Rat(1)}, {Rat(1), p}}};
    sys.dual = {0, 1};
    const Rat pc = p;
    sys.divisor = [pc](const std::vector<int>& labels) -> Divisor0 {
        const int n = static_cast<int>(labels.size());
        std::vector<int> wpos, vpos;
        for (int i = 1; i <= n; ++i)
            (labels[static_cast<size_t>(i - 1)] == 1 ? wpos : vpos).push_back(i);
        const int m = static_cast<int>(wpos.size());
        if (m < 4)
            return Divisor0(n); // Pic of the image space is trivial
        Divisor0 d = d_np_class(pc, m);
        for (int extra = m; extra < n; ++extra)
            d = pullback_forget_last(d);
        // relabel: first m points -> W positions, the rest -> V positions
        std::vector<int> perm(static_cast<size_t>(n), 0);
        for (int t = 0; t < m; ++t)
            perm[static_cast<size_t>(t)] = wpos[static_cast<size_t>(t)];
        for (size_t t = 0; t < vpos.size(); ++t)
            perm[static_cast<size_t>(m) + t] = vpos[t];
        return relabel(d, perm);
    };
    return sys;
}

namespace {

void multisets(int num_labels, int n, std::vector<std::vector<int>>& out)
{
    std::vector<int> cur(static_cast<size_t>(n), 0);
    auto rec = [&](auto&& self, int pos, int lo) -> void {
        if (pos == n) {
            out.push_back(cur);
            return;
        }
        for (int a = lo; a < num_labels; ++a) {
            cur[static_cast<size_t>(pos)] = a;
            self(self, pos + 1, a);
        }
    };
    rec(rec, 0, 0);
}

bool divisors_equal(const Divisor0& a, const Divisor0& b)
{
    Divisor0 diff = a;
    diff -= b;
    if (diff.coords_zero())
        return true;
    return class_zero(diff);
}

} // namespace

AxiomReport verify_axioms(const InductiveSystem& sys, int n_max)
{
    AxiomReport rep;
    rep.system = sys.name;
    rep.n_max = n_max;
    const int L = sys.num_labels;

    // multiplication axiom
    rep.multiplication = true;
    for (int a = 0; a < L && rep.multiplication; ++a)
        for (int b = 0; b < L && rep.multiplication; ++b) {
            for (int c = 0; c < L; ++c) {
                const Rat& v = sys.product[static_cast<size_t>(a)][static_cast<size_t>(b)][static_cast<size_t>(c)];
                if (sgn(v) < 0 ||
                    v != sys.product[static_cast<size_t>(b)][static_cast<size_t>(a)][static_cast<size_t>(c)])
                    rep.multiplication = false;
            }
            if (sys.coefficient({0, a}, a) != 1)
                rep.multiplication = false;
            for (int c = 0; c < L; ++c) {
                // associativity via triple products in both orders
                for (int d = 0; d < L; ++d) {
                    Rat left(0), right(0);
                    for (int e = 0; e < L; ++e) {
                        left += sys.product[static_cast<size_t>(a)][static_cast<size_t>(b)][static_cast<size_t>(e)] *
                                sys.product[static_cast<size_t>(e)][static_cast<size_t>(c)][static_cast<size_t>(d)];
                        right += sys.product[static_cast<size_t>(b)][static_cast<size_t>(c)][static_cast<size_t>(e)] *
                                 sys.product[static_cast<size_t>(a)][static_cast<size_t>(e)][static_cast<size_t>(d)];
                    }
                    if (left != right)
                        rep.multiplication = false;
                }
            }
        }
    if (!rep.multiplication)
        rep.first_failure = "multiplication";

    // dual axiom
    rep.dual_ok = true;
    for (int a = 0; a < L; ++a) {
        int found = -1;
        for (int b = 0; b < L; ++b) {
            if (!is_zero(sys.product[static_cast<size_t>(a)][static_cast<size_t>(b)][0])) {
                if (found >= 0 ||
                    sys.product[static_cast<size_t>(a)][static_cast<size_t>(b)][0] != 1)
                    rep.dual_ok = false;
                found = b;
            }
        }
        if (found != sys.dual[static_cast<size_t>(a)])
            rep.dual_ok = false;
    }
    if (!rep.dual_ok && rep.first_failure.empty())
        rep.first_failure = "dual";

    // propagation and factorization over all label multisets
    rep.propagation = true;
    rep.factorization = true;
    rep.genfact = true;
    for (int n = 4; n <= n_max; ++n) {
        std::vector<std::vector<int>> tuples;
        multisets(L, n, tuples);
        for (const auto& labels : tuples) {
            const Divisor0 d = sys.divisor(labels);

            // propagation: the last label V means pullback from n-1 points
            if (labels.back() == 0) {
                std::vector<int> head(labels.begin(), labels.end() - 1);
                Divisor0 expected = (n - 1 >= 4) ? pullback_forget_last(sys.divisor(head))
                                                 : Divisor0(n);
                if (!divisors_equal(d, expected)) {
                    rep.propagation = false;
                    if (rep.first_failure.empty())
                        rep.first_failure = "propagation at n=" + std::to_string(n);
                }
            }

            // genfact: rank splits through every cut position
            for (int cut = 1; cut < n; ++cut) {
                std::vector<int> head(labels.begin(), labels.begin() + cut);
                std::vector<int> tail(labels.begin() + cut, labels.end());
                Rat total(0);
                for (int w = 0; w < L; ++w) {
                    std::vector<int> h = head;
                    h.push_back(sys.dual[static_cast<size_t>(w)]);
                    std::vector<int> t = tail;
                    t.push_back(w);
                    total += sys.coefficient(h, 0) * sys.coefficient(t, 0);
                }
                if (total != sys.coefficient(labels, 0)) {
                    rep.genfact = false;
                    if (rep.first_failure.empty())
                        rep.first_failure = "genfact at n=" + std::to_string(n);
                }
            }

            // factorization: moving-side restriction splits into channels
            const Mask full = full_mask(n);
            for (Mask key = 0; key <= full; ++key) {
                if (mask_has(key, n))
                    continue;
                const int m = popcount(key);
                if (m < 2 || m > n - 2)
                    continue;
                for (Mask side : {key, static_cast<Mask>(full & ~key)}) {
                    if (popcount(side) < 3)
                        continue; // target Picard group is trivial
                    std::vector<int> side_labels, co_labels;
                    for (int p = 1; p <= n; ++p)
                        (mask_has(side, p) ? side_labels : co_labels)
                            .push_back(labels[static_cast<size_t>(p - 1)]);
                    Divisor0 restricted = restrict_to_boundary(d, side);
                    Divisor0 expected(popcount(side) + 1);
                    for (int w = 0; w < L; ++w) {
                        const Rat coeff = [&] {
                            std::vector<int> co = co_labels;
                            co.push_back(w);
                            return sys.coefficient(co, 0);
                        }();
                        if (is_zero(coeff))
                            continue;
                        std::vector<int> child = side_labels;
                        child.push_back(w);
                        Divisor0 cd = sys.divisor(child);
                        cd *= coeff;
                        expected += cd;
                    }
                    if (!divisors_equal(restricted, expected)) {
                        rep.factorization = false;
                        if (rep.first_failure.empty())
                            rep.first_failure = "factorization at n=" + std::to_string(n);
                    }
                }
            }
        }
    }
    return rep;
}

DnpReport check_dnp_positivity(const Rat& p, int n)
{
    DnpReport rep;
    rep.p = p;
    rep.n = n;
    const Divisor0 d = d_np_class(p, n);
    const Rat deg4 = Rat(4) * r_value(p, 4) - Rat(3) * r_value(p, 3) * r_value(p, 3);

    rep.fnef = true;
    rep.fample = true;
    rep.factorized_matches_pairing = true;
    for (const auto& f : enumerate_fcurves0(n)) {
        Rat factorized = deg4;
        for (const auto& cl : f.clusters)
            factorized *= r_value(p, popcount(cl.points) + 1);
        if (factorized != pair_fcurve(d, f))
            rep.factorized_matches_pairing = false;
        if (sgn(factorized) < 0)
            rep.fnef = false;
        if (sgn(factorized) <= 0)
            rep.fample = false;
    }

    rep.coefficient_domination = true;
    if (sgn(p) > 0) {
        const Rat rn = r_value(p, n);
        for (int i = 2; 2 * i <= n; ++i)
            if (!(r_value(p, i + 1) * r_value(p, n - i + 1) < rn))
                rep.coefficient_domination = false;
    }

    rep.standard_form_nonnegative = true;
    for (const auto& [key, c] : standard_form(d))
        if (sgn(c) < 0)
            rep.standard_form_nonnegative = false;
    return rep;
}

} // namespace virblocks
