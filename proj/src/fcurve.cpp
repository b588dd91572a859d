#include "virblocks/fcurve.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace virblocks {

std::vector<int> mask_points(Mask m)
{
    std::vector<int> pts;
    for (int p = 1; m; ++p, m >>= 1)
        if (m & 1u)
            pts.push_back(p);
    return pts;
}

std::string mask_to_string(Mask m)
{
    std::string s;
    for (int p : mask_points(m)) {
        if (!s.empty())
            s += ',';
        s += std::to_string(p);
    }
    return s.empty() ? std::string("-") : s;
}

FCurve FCurve::type6(int n, Mask a, Mask b, Mask c, Mask d)
{
    if (!a || !b || !c || !d || (a | b | c | d) != full_mask(n) ||
        popcount(a) + popcount(b) + popcount(c) + popcount(d) != n)
        throw std::invalid_argument("FCurve::type6: not a partition into 4 nonempty blocks");
    FCurve f;
    f.n = n;
    f.g = 0;
    f.clusters = {{0, 1, a}, {0, 1, b}, {0, 1, c}, {0, 1, d}};
    return f;
}

FCurve FCurve::elliptic(int n, int g)
{
    FCurve f;
    f.n = n;
    f.g = g;
    f.elliptic_tail = true;
    return f;
}

FCurve FCurve::type5(int n, Mask i1, Mask i2)
{
    if (!i1 || !i2 || (i1 & i2))
        throw std::invalid_argument("FCurve::type5: blocks must be disjoint and nonempty");
    FCurve f;
    f.n = n;
    f.g = 1;
    const Mask rest = full_mask(n) & ~(i1 | i2);
    f.clusters = {{0, 1, i1}, {0, 1, i2}, {0, 2, rest}};
    return f;
}

FCurve FCurve::type6_genus1(int n, Mask genus_block, Mask b2, Mask b3, Mask b4)
{
    if (!b2 || !b3 || !b4)
        throw std::invalid_argument("FCurve::type6_genus1: genus-0 blocks must be nonempty");
    if ((genus_block | b2 | b3 | b4) != full_mask(n) ||
        popcount(genus_block) + popcount(b2) + popcount(b3) + popcount(b4) != n)
        throw std::invalid_argument("FCurve::type6_genus1: not a partition of [n]");
    FCurve f;
    f.n = n;
    f.g = 1;
    f.clusters = {{1, 1, genus_block}, {0, 1, b2}, {0, 1, b3}, {0, 1, b4}};
    return f;
}

std::string FCurve::to_string() const
{
    if (elliptic_tail)
        return "F_ell(g=" + std::to_string(g) + ")";
    std::string s = "F(";
    for (size_t i = 0; i < clusters.size(); ++i) {
        if (i)
            s += " | ";
        if (clusters[i].genus)
            s += "g" + std::to_string(clusters[i].genus) + ":";
        if (clusters[i].legs > 1)
            s += "[" + std::to_string(clusters[i].legs) + "legs]";
        s += "{" + mask_to_string(clusters[i].points) + "}";
    }
    return s + ")";
}

namespace {

void partitions4(int n, std::vector<FCurve>& out)
{
    // Restricted growth strings with exactly 4 blocks, lex order.
    std::vector<int> assign(static_cast<size_t>(n), 0);
    std::vector<Mask> blocks(4, 0);

    auto rec = [&](auto&& self, int point, int used) -> void {
        if (point > n) {
            if (used == 4)
                out.push_back(FCurve::type6(n, blocks[0], blocks[1], blocks[2], blocks[3]));
            return;
        }
        const int remaining = n - point + 1;
        for (int b = 0; b < std::min(used + 1, 4); ++b) {
            const int used2 = std::max(used, b + 1);
            if (used2 + remaining - 1 < 4)
                continue;
            blocks[static_cast<size_t>(b)] |= mask_of_point(point);
            self(self, point + 1, used2);
            blocks[static_cast<size_t>(b)] &= ~mask_of_point(point);
        }
    };
    rec(rec, 1, 0);
}

void partitions3(Mask ambient, std::vector<std::array<Mask, 3>>& out)
{
    const std::vector<int> pts = mask_points(ambient);
    std::vector<Mask> blocks(3, 0);
    auto rec = [&](auto&& self, size_t idx, int used) -> void {
        if (idx == pts.size()) {
            if (used == 3)
                out.push_back({blocks[0], blocks[1], blocks[2]});
            return;
        }
        const int remaining = static_cast<int>(pts.size() - idx);
        for (int b = 0; b < std::min(used + 1, 3); ++b) {
            const int used2 = std::max(used, b + 1);
            if (used2 + remaining - 1 < 3)
                continue;
            blocks[static_cast<size_t>(b)] |= mask_of_point(pts[idx]);
            self(self, idx + 1, used2);
            blocks[static_cast<size_t>(b)] &= ~mask_of_point(pts[idx]);
        }
    };
    rec(rec, 0, 0);
}

std::mutex g_fc0_mutex;
std::map<int, std::vector<FCurve>> g_fc0_cache;

} // namespace

const std::vector<FCurve>& enumerate_fcurves0(int n)
{
    std::lock_guard<std::mutex> lock(g_fc0_mutex);
    auto it = g_fc0_cache.find(n);
    if (it != g_fc0_cache.end())
        return it->second;
    std::vector<FCurve> out;
    if (n >= 4)
        partitions4(n, out);
    return g_fc0_cache.emplace(n, std::move(out)).first->second;
}

std::vector<FCurve> enumerate_fcurves1(int n)
{
    if (n < 1)
        throw std::invalid_argument("enumerate_fcurves1: need n >= 1");
    std::vector<FCurve> out;
    out.push_back(FCurve::elliptic(n));

    // Two-leg spines F_5(0,0,I1,I2): unordered disjoint nonempty pairs.
    const Mask full = full_mask(n);
    for (Mask i1 = 1; i1 <= full; ++i1)
        for (Mask i2 = 1; i2 <= full; ++i2) {
            if (i1 & i2)
                continue;
            // unordered pair: the block holding the lowest point goes first
            if ((i1 & -i1) > (i2 & -i2))
                continue;
            out.push_back(FCurve::type5(n, i1, i2));
        }

    // Four-block spines with one genus-1 block (possibly empty).
    for (Mask gb = 0; gb <= full; ++gb) {
        if ((gb & full) != gb)
            continue;
        const Mask rest = full & ~gb;
        if (popcount(rest) < 3)
            continue;
        std::vector<std::array<Mask, 3>> parts;
        partitions3(rest, parts);
        for (const auto& p : parts)
            out.push_back(FCurve::type6_genus1(n, gb, p[0], p[1], p[2]));
    }
    return out;
}

std::vector<FCurve> enumerate_fcurves(int g, int n, int genus_cap)
{
    if (g > genus_cap)
        throw std::invalid_argument("enumerate_fcurves: genus above cap");
    if (g == 0)
        return enumerate_fcurves0(n);
    if (g == 1)
        return enumerate_fcurves1(n);
    if (2 * g - 2 + n <= 0)
        throw std::invalid_argument("enumerate_fcurves: unstable (g, n)");

    std::vector<FCurve> out;
    out.push_back(FCurve::elliptic(n, g));

    const Mask full = full_mask(n);
    std::vector<Mask> subsets;
    for (Mask m = 0; m <= full; ++m)
        subsets.push_back(m);

    // one-leg cluster validity: genus h block with point set P
    auto ok1 = [](int h, Mask P) { return h >= 1 || P != 0; };

    // Pattern [1,1,1,1]: four one-leg clusters, sum of genera = g.
    {
        std::vector<std::array<Mask, 4>> parts;
        // partitions of [n] into up to 4 blocks, allowing empties, ordered
        // canonically afterwards; enumerate assignments of points to slots
        std::array<Mask, 4> blocks{0, 0, 0, 0};
        auto rec = [&](auto&& self, int point) -> void {
            if (point > n) {
                parts.push_back(blocks);
                return;
            }
            for (int b = 0; b < 4; ++b) {
                blocks[static_cast<size_t>(b)] |= mask_of_point(point);
                self(self, point + 1);
                blocks[static_cast<size_t>(b)] &= ~mask_of_point(point);
            }
        };
        rec(rec, 1);
        // genus compositions g = g1+g2+g3+g4
        for (const auto& p : parts) {
            for (int g1 = 0; g1 <= g; ++g1)
                for (int g2 = 0; g1 + g2 <= g; ++g2)
                    for (int g3 = 0; g1 + g2 + g3 <= g; ++g3) {
                        const int g4 = g - g1 - g2 - g3;
                        const int gs[4] = {g1, g2, g3, g4};
                        bool ok = true;
                        for (int i = 0; i < 4 && ok; ++i)
                            ok = ok1(gs[i], p[static_cast<size_t>(i)]);
                        if (!ok)
                            continue;
                        FCurve f;
                        f.n = n;
                        f.g = g;
                        for (int i = 0; i < 4; ++i)
                            f.clusters.push_back({gs[i], 1, p[static_cast<size_t>(i)]});
                        // canonical order to deduplicate unordered clusters
                        std::sort(f.clusters.begin(), f.clusters.end(),
                                  [](const FCluster& x, const FCluster& y) {
                                      return std::tie(x.genus, x.points) < std::tie(y.genus, y.points);
                                  });
                        out.push_back(f);
                    }
        }
        // dedupe
        std::sort(out.begin() + 1, out.end(), [](const FCurve& x, const FCurve& y) {
            return x.clusters < y.clusters;
        });
        out.erase(std::unique(out.begin() + 1, out.end(),
                              [](const FCurve& x, const FCurve& y) {
                                  return x.clusters == y.clusters && x.elliptic_tail == y.elliptic_tail;
                              }),
                  out.end());
    }

    // Pattern [2,1,1]: one two-leg cluster (h3) + two one-leg clusters; g = h1+h2+h3+1.
    for (Mask i1 : subsets)
        for (Mask i2 : subsets) {
            if (i1 & i2)
                continue;
            const Mask rest = full & ~(i1 | i2);
            for (int h1 = 0; h1 <= g - 1; ++h1)
                for (int h2 = 0; h1 + h2 <= g - 1; ++h2) {
                    const int h3 = g - 1 - h1 - h2;
                    if (!ok1(h1, i1) || !ok1(h2, i2))
                        continue;
                    // unordered one-leg pair
                    if (std::tie(h1, i1) > std::tie(h2, i2))
                        continue;
                    FCurve f;
                    f.n = n;
                    f.g = g;
                    f.clusters = {{h1, 1, i1}, {h2, 1, i2}, {h3, 2, rest}};
                    out.push_back(f);
                }
        }

    // Pattern [2,2]: two two-leg clusters; g = h1+h2+2.
    if (g >= 2) {
        for (Mask i1 : subsets) {
            const Mask rest = full & ~i1;
            for (int h1 = 0; h1 <= g - 2; ++h1) {
                const int h2 = g - 2 - h1;
                if (std::tie(h1, i1) > std::tie(h2, rest))
                    continue;
                FCurve f;
                f.n = n;
                f.g = g;
                f.clusters = {{h1, 2, i1}, {h2, 2, rest}};
                out.push_back(f);
            }
        }
    }

    // Pattern [3,1]: three-leg cluster + one-leg cluster; g = h1+h2+2.
    if (g >= 2) {
        for (Mask i1 : subsets) {
            const Mask rest = full & ~i1;
            for (int h1 = 0; h1 <= g - 2; ++h1) {
                const int h2 = g - 2 - h1;
                if (!ok1(h1, i1))
                    continue;
                FCurve f;
                f.n = n;
                f.g = g;
                f.clusters = {{h1, 1, i1}, {h2, 3, rest}};
                out.push_back(f);
            }
        }
    }

    // Pattern [4]: single four-leg cluster; g = h + 3.
    if (g >= 3) {
        FCurve f;
        f.n = n;
        f.g = g;
        f.clusters = {{g - 3, 4, full}};
        out.push_back(f);
    }

    return out;
}

} // namespace virblocks
