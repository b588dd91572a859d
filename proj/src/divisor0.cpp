#include "virblocks/divisor0.hpp"

#include <stdexcept>

namespace virblocks {

Divisor0::Divisor0(int n) : n_(n), psi_(static_cast<size_t>(n), Rat(0))
{
    if (n < 4)
        throw std::invalid_argument("Divisor0: need n >= 4");
}

const Rat& Divisor0::psi(int i) const
{
    if (i < 1 || i > n_)
        throw std::out_of_range("Divisor0::psi");
    return psi_[static_cast<size_t>(i - 1)];
}

void Divisor0::set_psi(int i, const Rat& c)
{
    if (i < 1 || i > n_)
        throw std::out_of_range("Divisor0::set_psi");
    psi_[static_cast<size_t>(i - 1)] = c;
}

void Divisor0::add_psi(int i, const Rat& c)
{
    if (i < 1 || i > n_)
        throw std::out_of_range("Divisor0::add_psi");
    psi_[static_cast<size_t>(i - 1)] += c;
}

Mask Divisor0::canonical_key(Mask subset, int n)
{
    const Mask full = full_mask(n);
    if ((subset | full) != full)
        throw std::invalid_argument("Divisor0: subset outside [n]");
    Mask key = mask_has(subset, n) ? (full & ~subset) : subset;
    const int sz = popcount(key);
    if (sz < 2 || sz > n - 2)
        throw std::invalid_argument("Divisor0: boundary subset needs 2 <= |I| <= n-2");
    return key;
}

void Divisor0::add_boundary(Mask subset, const Rat& c)
{
    if (is_zero(c))
        return;
    const Mask key = canonical_key(subset, n_);
    auto [it, inserted] = boundary_.emplace(key, c);
    if (!inserted) {
        it->second += c;
        if (is_zero(it->second))
            boundary_.erase(it);
    }
}

Rat Divisor0::boundary_coeff(Mask subset) const
{
    auto it = boundary_.find(canonical_key(subset, n_));
    return it == boundary_.end() ? Rat(0) : it->second;
}

Divisor0& Divisor0::operator+=(const Divisor0& other)
{
    if (n_ != other.n_)
        throw std::invalid_argument("Divisor0: dimension mismatch");
    for (int i = 1; i <= n_; ++i)
        add_psi(i, other.psi(i));
    for (const auto& [key, c] : other.boundary_)
        add_boundary(key, c);
    return *this;
}

Divisor0& Divisor0::operator-=(const Divisor0& other)
{
    if (n_ != other.n_)
        throw std::invalid_argument("Divisor0: dimension mismatch");
    for (int i = 1; i <= n_; ++i)
        add_psi(i, Rat(-other.psi(i)));
    for (const auto& [key, c] : other.boundary_)
        add_boundary(key, Rat(-c));
    return *this;
}

Divisor0& Divisor0::operator*=(const Rat& c)
{
    if (is_zero(c)) {
        for (auto& p : psi_)
            p = 0;
        boundary_.clear();
        return *this;
    }
    for (auto& p : psi_)
        p *= c;
    for (auto& [key, v] : boundary_)
        v *= c;
    return *this;
}

bool Divisor0::coords_zero() const
{
    for (const auto& p : psi_)
        if (!is_zero(p))
            return false;
    return boundary_.empty();
}

Rat pair_fcurve(const Divisor0& d, const FCurve& f)
{
    if (f.g != 0 || f.elliptic_tail || f.clusters.size() != 4)
        throw std::invalid_argument("pair_fcurve: genus-0 four-block curve required");
    if (f.n != d.n())
        throw std::invalid_argument("pair_fcurve: dimension mismatch");

    Rat total(0);
    Mask block[4];
    for (int i = 0; i < 4; ++i)
        block[i] = f.clusters[static_cast<size_t>(i)].points;

    for (int i = 0; i < 4; ++i)
        if (popcount(block[i]) == 1) {
            const int pt = mask_points(block[i])[0];
            total += d.psi(pt);
        }

    const Mask full = full_mask(d.n());
    for (const auto& [key, c] : d.boundary()) {
        const Mask cmp = full & ~key;
        int w = 0;
        for (int i = 0; i < 4; ++i)
            if (key == block[i] || cmp == block[i])
                w = -1;
        if (w == 0) {
            const Mask p01 = block[0] | block[1];
            const Mask p02 = block[0] | block[2];
            const Mask p03 = block[0] | block[3];
            if (key == p01 || cmp == p01 || key == p02 || cmp == p02 || key == p03 || cmp == p03)
                w = 1;
        }
        if (w == 1)
            total += c;
        else if (w == -1)
            total -= c;
    }
    return total;
}

std::vector<Rat> fingerprint(const Divisor0& d)
{
    const auto& curves = enumerate_fcurves0(d.n());
    std::vector<Rat> out;
    out.reserve(curves.size());
    for (const auto& f : curves)
        out.push_back(pair_fcurve(d, f));
    return out;
}

bool same_class(const Divisor0& a, const Divisor0& b)
{
    if (a.n() != b.n())
        return false;
    for (const auto& f : enumerate_fcurves0(a.n()))
        if (pair_fcurve(a, f) != pair_fcurve(b, f))
            return false;
    return true;
}

bool class_zero(const Divisor0& d)
{
    for (const auto& f : enumerate_fcurves0(d.n()))
        if (!is_zero(pair_fcurve(d, f)))
            return false;
    return true;
}

Divisor0 big_average(int i, int n)
{
    Divisor0 out(n);
    const Rat denom = ratio(1L, static_cast<long>(n - 1) * (n - 2));
    const Mask full = full_mask(n);
    // Sum over subsets containing i with 2 <= size <= n-2; coefficient
    // depends only on the size.
    for (Mask s = 0; s <= full; ++s) {
        if (!mask_has(s, i))
            continue;
        const int m = popcount(s);
        if (m < 2 || m > n - 2)
            continue;
        const long a = n - m;
        out.add_boundary(s, Rat(a * (a - 1)) * denom);
    }
    return out;
}

std::map<Mask, Rat> standard_form(const Divisor0& d)
{
    const int n = d.n();
    std::map<Mask, Rat> out;
    const Rat denom = ratio(1L, static_cast<long>(n - 1) * (n - 2));
    const Mask full = full_mask(n);
    for (Mask key = 0; key <= full; ++key) {
        if (mask_has(key, n))
            continue;
        const int m = popcount(key);
        if (m < 2 || m > n - 2)
            continue;
        Rat c = d.boundary_coeff(key);
        // big-average contributions of every psi_p
        const Rat in_side = Rat(static_cast<long>(n - m) * (n - m - 1)) * denom;
        const Rat out_side = Rat(static_cast<long>(m) * (m - 1)) * denom;
        for (int p = 1; p <= n; ++p) {
            if (is_zero(d.psi(p)))
                continue;
            c += d.psi(p) * (mask_has(key, p) ? in_side : out_side);
        }
        if (!is_zero(c))
            out.emplace(key, std::move(c));
    }
    return out;
}

Divisor0 boundary_combination(int n, const std::map<Mask, Rat>& coeffs)
{
    Divisor0 out(n);
    for (const auto& [key, c] : coeffs)
        out.add_boundary(key, c);
    return out;
}

Divisor0 restrict_to_boundary(const Divisor0& d, Mask I)
{
    const int n = d.n();
    const Mask full = full_mask(n);
    const Mask Ic = full & ~I;
    const int sz = popcount(I);
    if (sz < 2 || sz > n - 2)
        throw std::invalid_argument("restrict_to_boundary: need 2 <= |I| <= n-2");
    if (sz + 1 < 4)
        throw std::invalid_argument("restrict_to_boundary: target M-bar_{0,3} carries no divisors");

    // order-preserving relabeling I -> 1..|I|, attaching point x = |I|+1
    std::vector<int> points = mask_points(I);
    std::vector<int> newlabel(static_cast<size_t>(n) + 1, 0);
    for (size_t j = 0; j < points.size(); ++j)
        newlabel[static_cast<size_t>(points[j])] = static_cast<int>(j) + 1;
    const int x = sz + 1;

    Divisor0 out(sz + 1);
    for (int p : points)
        out.set_psi(newlabel[static_cast<size_t>(p)], d.psi(p));

    auto push_down = [&](Mask key) {
        Mask m = 0;
        for (int p : mask_points(key))
            m |= mask_of_point(newlabel[static_cast<size_t>(p)]);
        return m;
    };

    for (const auto& [key, c] : d.boundary()) {
        const Mask cmp = full & ~key;
        if (key == I || cmp == I) {
            // self-restriction: normal bundle of the node
            out.add_psi(x, Rat(-c));
        } else if ((key & I) == key) {
            out.add_boundary(push_down(key), c);
        } else if ((cmp & I) == cmp) {
            out.add_boundary(push_down(cmp), c);
        } else if ((key & Ic) == key || (cmp & Ic) == cmp) {
            // pulled back from the fixed factor: restricts to 0 on the fiber
        } else {
            // crosses both sides: intersects the boundary transversally in
            // codimension 2, contributes 0 to the divisor restriction
        }
    }
    return out;
}

Divisor0 pullback_forget_last(const Divisor0& d)
{
    const int n = d.n();
    Divisor0 out(n + 1);
    // psi_i pulls back to psi_i - delta_{i, n+1}
    for (int i = 1; i <= n; ++i) {
        if (is_zero(d.psi(i)))
            continue;
        out.set_psi(i, d.psi(i));
        out.add_boundary(mask_of_point(i) | mask_of_point(n + 1), Rat(-d.psi(i)));
    }
    for (const auto& [key, c] : d.boundary()) {
        out.add_boundary(key, c);
        out.add_boundary(key | mask_of_point(n + 1), c);
    }
    return out;
}

Divisor0 relabel(const Divisor0& d, const std::vector<int>& perm)
{
    const int n = d.n();
    if (static_cast<int>(perm.size()) != n)
        throw std::invalid_argument("relabel: permutation size mismatch");
    Divisor0 out(n);
    for (int i = 1; i <= n; ++i)
        out.set_psi(perm[static_cast<size_t>(i - 1)], d.psi(i));
    for (const auto& [key, c] : d.boundary()) {
        Mask m = 0;
        for (int p : mask_points(key))
            m |= mask_of_point(perm[static_cast<size_t>(p - 1)]);
        out.add_boundary(m, c);
    }
    return out;
}

} // namespace virblocks
