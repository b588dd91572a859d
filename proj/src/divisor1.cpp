#include "virblocks/divisor1.hpp"

#include <stdexcept>

namespace virblocks {

Divisor1::Divisor1(int n) : n_(n), psi_(static_cast<size_t>(n), Rat(0))
{
    if (n < 1)
        throw std::invalid_argument("Divisor1: need n >= 1");
    lambda = 0;
    delta_irr = 0;
}

const Rat& Divisor1::psi(int i) const
{
    if (i < 1 || i > n_)
        throw std::out_of_range("Divisor1::psi");
    return psi_[static_cast<size_t>(i - 1)];
}

void Divisor1::set_psi(int i, const Rat& c)
{
    if (i < 1 || i > n_)
        throw std::out_of_range("Divisor1::set_psi");
    psi_[static_cast<size_t>(i - 1)] = c;
}

void Divisor1::add_psi(int i, const Rat& c)
{
    if (i < 1 || i > n_)
        throw std::out_of_range("Divisor1::add_psi");
    psi_[static_cast<size_t>(i - 1)] += c;
}

void Divisor1::add_boundary(Mask subset, const Rat& c)
{
    if (is_zero(c))
        return;
    if ((subset | full_mask(n_)) != full_mask(n_) || popcount(subset) < 2)
        throw std::invalid_argument("Divisor1: boundary subset needs S in [n], |S| >= 2");
    auto [it, inserted] = boundary_.emplace(subset, c);
    if (!inserted) {
        it->second += c;
        if (is_zero(it->second))
            boundary_.erase(it);
    }
}

Rat Divisor1::boundary_coeff(Mask subset) const
{
    auto it = boundary_.find(subset);
    return it == boundary_.end() ? Rat(0) : it->second;
}

Divisor1& Divisor1::operator+=(const Divisor1& other)
{
    if (n_ != other.n_)
        throw std::invalid_argument("Divisor1: dimension mismatch");
    lambda += other.lambda;
    delta_irr += other.delta_irr;
    for (int i = 1; i <= n_; ++i)
        add_psi(i, other.psi(i));
    for (const auto& [key, c] : other.boundary_)
        add_boundary(key, c);
    return *this;
}

Divisor1& Divisor1::operator-=(const Divisor1& other)
{
    if (n_ != other.n_)
        throw std::invalid_argument("Divisor1: dimension mismatch");
    lambda -= other.lambda;
    delta_irr -= other.delta_irr;
    for (int i = 1; i <= n_; ++i)
        add_psi(i, Rat(-other.psi(i)));
    for (const auto& [key, c] : other.boundary_)
        add_boundary(key, Rat(-c));
    return *this;
}

Divisor1& Divisor1::operator*=(const Rat& c)
{
    lambda *= c;
    delta_irr *= c;
    for (auto& p : psi_)
        p *= c;
    if (is_zero(c)) {
        boundary_.clear();
        return *this;
    }
    for (auto& [key, v] : boundary_)
        v *= c;
    return *this;
}

Divisor1 canonical_form(const Divisor1& d)
{
    const int n = d.n();
    Divisor1 out(n);
    // 12 lambda = delta_irr; 12 psi_p = delta_irr + 12 sum_{p in S} delta_{0,S}
    Rat irr = d.delta_irr + d.lambda * ratio(1L, 12L);
    for (int p = 1; p <= n; ++p)
        irr += d.psi(p) * ratio(1L, 12L);
    out.delta_irr = irr;
    for (const auto& [key, c] : d.boundary())
        out.add_boundary(key, c);
    const Mask full = full_mask(n);
    for (Mask s = 0; s <= full; ++s) {
        if (popcount(s) < 2)
            continue;
        Rat c(0);
        for (int p : mask_points(s))
            c += d.psi(p);
        if (!is_zero(c))
            out.add_boundary(s, c);
    }
    return out;
}

bool same_class(const Divisor1& a, const Divisor1& b)
{
    if (a.n() != b.n())
        return false;
    Divisor1 diff = canonical_form(a) - canonical_form(b);
    return class_zero(diff);
}

bool class_zero(const Divisor1& d)
{
    Divisor1 c = canonical_form(d);
    return is_zero(c.delta_irr) && c.boundary().empty();
}

int pic1_dim(int n)
{
    return (1 << n) - n;
}

int pic1_index(int n, Mask subset)
{
    // index 0 reserved for delta_irr; subsets with |S| >= 2 by mask order
    int idx = 1;
    const Mask full = full_mask(n);
    for (Mask s = 0; s <= full; ++s) {
        if (popcount(s) < 2)
            continue;
        if (s == subset)
            return idx;
        ++idx;
    }
    throw std::invalid_argument("pic1_index: not a boundary subset");
}

Mask pic1_subset_at(int n, int index)
{
    if (index <= 0)
        throw std::invalid_argument("pic1_subset_at: index 0 is delta_irr");
    int idx = 1;
    const Mask full = full_mask(n);
    for (Mask s = 0; s <= full; ++s) {
        if (popcount(s) < 2)
            continue;
        if (idx == index)
            return s;
        ++idx;
    }
    throw std::out_of_range("pic1_subset_at");
}

std::vector<Rat> pic1_coordinates(const Divisor1& d)
{
    const int n = d.n();
    Divisor1 c = canonical_form(d);
    std::vector<Rat> out(static_cast<size_t>(pic1_dim(n)), Rat(0));
    out[0] = c.delta_irr;
    int idx = 1;
    const Mask full = full_mask(n);
    for (Mask s = 0; s <= full; ++s) {
        if (popcount(s) < 2)
            continue;
        out[static_cast<size_t>(idx)] = c.boundary_coeff(s);
        ++idx;
    }
    return out;
}

Divisor1 divisor1_from_coordinates(int n, const std::vector<Rat>& coords)
{
    if (static_cast<int>(coords.size()) != pic1_dim(n))
        throw std::invalid_argument("divisor1_from_coordinates: bad length");
    Divisor1 out(n);
    out.delta_irr = coords[0];
    int idx = 1;
    const Mask full = full_mask(n);
    for (Mask s = 0; s <= full; ++s) {
        if (popcount(s) < 2)
            continue;
        if (!is_zero(coords[static_cast<size_t>(idx)]))
            out.add_boundary(s, coords[static_cast<size_t>(idx)]);
        ++idx;
    }
    return out;
}

Rat t_functional(int n, const std::vector<Rat>& coords)
{
    if (static_cast<int>(coords.size()) != pic1_dim(n))
        throw std::invalid_argument("t_functional: bad length");
    Rat total(0);
    int idx = 1;
    const Mask full = full_mask(n);
    for (Mask s = 0; s <= full; ++s) {
        if (popcount(s) < 2)
            continue;
        if (popcount(s) % 2 == 0)
            total += coords[static_cast<size_t>(idx)];
        else
            total -= coords[static_cast<size_t>(idx)];
        ++idx;
    }
    return total;
}

Rat t_functional(const Divisor1& d)
{
    return t_functional(d.n(), pic1_coordinates(d));
}

Divisor1 psi_class_m1n(int n, int p)
{
    Divisor1 out(n);
    out.set_psi(p, Rat(1));
    return out;
}

std::vector<std::vector<Rat>> pic1_pullback_matrix(int n, int i)
{
    if (i < 1 || i > n)
        throw std::invalid_argument("pic1_pullback_matrix: bad index");
    const int rows = pic1_dim(n);
    const int cols = pic1_dim(n - 1);
    std::vector<std::vector<Rat>> M(static_cast<size_t>(rows),
                                    std::vector<Rat>(static_cast<size_t>(cols), Rat(0)));
    // order-preserving lift [n-1] -> [n] \ {i}
    std::vector<int> lift;
    for (int p = 1; p <= n; ++p)
        if (p != i)
            lift.push_back(p);

    // delta_irr -> delta_irr
    M[0][0] = 1;
    for (int col = 1; col < cols; ++col) {
        const Mask small = pic1_subset_at(n - 1, col);
        Mask lifted = 0;
        for (int p : mask_points(small))
            lifted |= mask_of_point(lift[static_cast<size_t>(p - 1)]);
        M[static_cast<size_t>(pic1_index(n, lifted))][static_cast<size_t>(col)] = 1;
        M[static_cast<size_t>(pic1_index(n, lifted | mask_of_point(i)))][static_cast<size_t>(col)] = 1;
    }
    return M;
}

Divisor1 pullback_forget(const Divisor1& d, int i)
{
    const int n1 = d.n() + 1;
    if (i < 1 || i > n1)
        throw std::invalid_argument("pullback_forget: bad index");
    const auto M = pic1_pullback_matrix(n1, i);
    const auto coords = pic1_coordinates(d);
    std::vector<Rat> out(M.size(), Rat(0));
    for (size_t r = 0; r < M.size(); ++r)
        for (size_t c = 0; c < coords.size(); ++c)
            if (!is_zero(M[r][c]) && !is_zero(coords[c]))
                out[r] += M[r][c] * coords[c];
    return divisor1_from_coordinates(n1, out);
}

std::vector<std::vector<Rat>> pic1_restrict_matrix(int n, int i)
{
    if (i < 1 || i > n - 1)
        throw std::invalid_argument("pic1_restrict_matrix: need i in [n-1]");
    const int rows = pic1_dim(n - 1);
    const int cols = pic1_dim(n);
    std::vector<std::vector<Rat>> M(static_cast<size_t>(rows),
                                    std::vector<Rat>(static_cast<size_t>(cols), Rat(0)));

    // target points: ([n-1] \ {i}) in order, then the attaching point p last
    std::vector<int> down(static_cast<size_t>(n) + 1, 0);
    {
        int next = 1;
        for (int p = 1; p <= n - 1; ++p)
            if (p != i)
                down[static_cast<size_t>(p)] = next++;
    }
    const int p_new = n - 1;
    const Mask pair_in = mask_of_point(i) | mask_of_point(n);

    // psi_p on the target in canonical coordinates
    std::vector<Rat> psi_p(static_cast<size_t>(rows), Rat(0));
    {
        psi_p[0] = ratio(1L, 12L);
        const Mask fullt = full_mask(n - 1);
        for (Mask s = 0; s <= fullt; ++s) {
            if (popcount(s) < 2 || !mask_has(s, p_new))
                continue;
            psi_p[static_cast<size_t>(pic1_index(n - 1, s))] = 1;
        }
    }

    // delta_irr restricts to delta_irr
    M[0][0] = 1;
    for (int col = 1; col < cols; ++col) {
        const Mask I = pic1_subset_at(n, col);
        if (I == pair_in) {
            for (int r = 0; r < rows; ++r)
                M[static_cast<size_t>(r)][static_cast<size_t>(col)] = -psi_p[static_cast<size_t>(r)];
        } else if ((I & pair_in) == pair_in) {
            Mask m = mask_of_point(p_new);
            for (int p : mask_points(I & ~pair_in))
                m |= mask_of_point(down[static_cast<size_t>(p)]);
            M[static_cast<size_t>(pic1_index(n - 1, m))][static_cast<size_t>(col)] = 1;
        } else if ((I & pair_in) == 0) {
            Mask m = 0;
            for (int p : mask_points(I))
                m |= mask_of_point(down[static_cast<size_t>(p)]);
            M[static_cast<size_t>(pic1_index(n - 1, m))][static_cast<size_t>(col)] = 1;
        }
        // subsets meeting {i,n} in exactly one point restrict to 0
    }
    return M;
}

Divisor1 restrict_to_twopoint_boundary(const Divisor1& d, int i)
{
    const int n = d.n();
    const auto M = pic1_restrict_matrix(n, i);
    const auto coords = pic1_coordinates(d);
    std::vector<Rat> out(M.size(), Rat(0));
    for (size_t r = 0; r < M.size(); ++r)
        for (size_t c = 0; c < coords.size(); ++c)
            if (!is_zero(M[r][c]) && !is_zero(coords[c]))
                out[r] += M[r][c] * coords[c];
    return divisor1_from_coordinates(n - 1, out);
}

} // namespace virblocks
