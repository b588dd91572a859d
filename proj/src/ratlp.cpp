#include "virblocks/ratlp.hpp"

#include <stdexcept>

namespace virblocks {

namespace {

struct Tableau {
    std::vector<std::vector<Rat>> a; // rows x cols
    std::vector<Rat> rhs;
    std::vector<int> basis; // basis[r] = column basic in row r

    size_t rows() const { return a.size(); }
    size_t cols() const { return a.empty() ? 0 : a[0].size(); }

    void pivot(size_t r, size_t j)
    {
        const Rat inv = Rat(1) / a[r][j];
        for (auto& v : a[r])
            v *= inv;
        rhs[r] *= inv;
        for (size_t i = 0; i < rows(); ++i) {
            if (i == r || is_zero(a[i][j]))
                continue;
            const Rat f = a[i][j];
            for (size_t t = 0; t < cols(); ++t)
                if (!is_zero(a[r][t]))
                    a[i][t] -= f * a[r][t];
            rhs[i] -= f * rhs[r];
        }
        basis[r] = static_cast<int>(j);
    }

    // Maximize c^T z with Bland's rule; columns with allowed[j] == false may
    // not enter the basis. Returns false iff unbounded.
    bool simplex(const std::vector<Rat>& c, const std::vector<char>& allowed)
    {
        for (;;) {
            // y = c_B^T B^{-1} applied to columns: reduced[j] = c_j - sum_r c_B[r] a[r][j]
            std::vector<Rat> cb(rows());
            for (size_t r = 0; r < rows(); ++r)
                cb[r] = c[static_cast<size_t>(basis[r])];
            size_t enter = cols();
            for (size_t j = 0; j < cols(); ++j) {
                if (!allowed[j])
                    continue;
                Rat red = c[j];
                for (size_t r = 0; r < rows(); ++r)
                    if (!is_zero(cb[r]) && !is_zero(a[r][j]))
                        red -= cb[r] * a[r][j];
                if (sgn(red) > 0) {
                    enter = j; // Bland: first improving index
                    break;
                }
            }
            if (enter == cols())
                return true; // optimal
            size_t leave = rows();
            Rat best;
            for (size_t r = 0; r < rows(); ++r) {
                if (sgn(a[r][enter]) <= 0)
                    continue;
                Rat ratio = rhs[r] / a[r][enter];
                if (leave == rows() || ratio < best ||
                    (ratio == best && basis[r] < basis[leave])) {
                    leave = r;
                    best = ratio;
                }
            }
            if (leave == rows())
                return false; // unbounded
            pivot(leave, enter);
        }
    }
};

} // namespace

LpCertificate lp_solve(const LpProblem& p)
{
    const size_t m = p.rows.size();
    if (p.rhs.size() != m)
        throw std::invalid_argument("lp_solve: rhs size mismatch");
    if (p.maximize_slack && sgn(p.slack_cap) <= 0)
        throw std::invalid_argument("lp_solve: slack cap must be positive");
    for (const auto& row : p.rows)
        if (static_cast<int>(row.size()) != p.num_vars)
            throw std::invalid_argument("lp_solve: row width mismatch");

    // structural columns: s_1..s_m (x_i = s_i + t when slack is on), then t, u
    const size_t ns = static_cast<size_t>(p.num_vars) + (p.maximize_slack ? 2 : 0);
    const size_t t_col = static_cast<size_t>(p.num_vars);
    const size_t rows_total = m + (p.maximize_slack ? 1 : 0);
    const size_t na = rows_total;

    Tableau tab;
    tab.a.assign(rows_total, std::vector<Rat>(ns + na, Rat(0)));
    tab.rhs.assign(rows_total, Rat(0));
    tab.basis.assign(rows_total, 0);

    for (size_t r = 0; r < m; ++r) {
        Rat row_sum(0);
        for (int j = 0; j < p.num_vars; ++j) {
            tab.a[r][static_cast<size_t>(j)] = p.rows[r][static_cast<size_t>(j)];
            row_sum += p.rows[r][static_cast<size_t>(j)];
        }
        if (p.maximize_slack)
            tab.a[r][t_col] = row_sum; // x = s + t 1
        tab.rhs[r] = p.rhs[r];
    }
    if (p.maximize_slack) {
        tab.a[m][t_col] = 1;
        tab.a[m][t_col + 1] = 1; // t + u = cap
        tab.rhs[m] = p.slack_cap;
    }

    // sign-normalize and install artificial basis
    for (size_t r = 0; r < rows_total; ++r) {
        if (sgn(tab.rhs[r]) < 0) {
            for (auto& v : tab.a[r])
                v = -v;
            tab.rhs[r] = -tab.rhs[r];
        }
        tab.a[r][ns + r] = 1;
        tab.basis[r] = static_cast<int>(ns + r);
    }

    LpCertificate cert;

    // Phase 1: maximize -(sum of artificials)
    {
        std::vector<Rat> c(ns + na, Rat(0));
        std::vector<char> allowed(ns + na, 1);
        for (size_t j = ns; j < ns + na; ++j)
            c[j] = -1;
        if (!tab.simplex(c, allowed))
            throw std::logic_error("lp_solve: phase 1 unbounded");
        Rat value(0);
        for (size_t r = 0; r < rows_total; ++r)
            if (tab.basis[r] >= static_cast<int>(ns))
                value -= tab.rhs[r];
        if (sgn(value) < 0) {
            // infeasible: Farkas witness from the phase-1 duals.
            // B^{-1} occupies the artificial columns up to the sign flips.
            std::vector<Rat> y(m, Rat(0));
            std::vector<Rat> yfull(rows_total, Rat(0));
            for (size_t i = 0; i < rows_total; ++i) {
                Rat yi(0);
                for (size_t r = 0; r < rows_total; ++r)
                    if (tab.basis[r] >= static_cast<int>(ns))
                        yi -= tab.a[r][ns + i];
                yfull[i] = yi;
            }
            // undo the sign normalization and drop the cap row into the
            // witness only for verification of the original rows
            for (size_t r = 0; r < m; ++r) {
                bool flipped = false;
                // a flipped row r had rhs < 0 originally
                // (detect by re-deriving: original rhs sign)
                flipped = sgn(p.rhs[r]) < 0;
                y[r] = flipped ? Rat(-yfull[r]) : yfull[r];
            }
            // phase-1 optimum gives y^T A >= 0 and y^T b < 0; report -y so
            // that y^T A <= 0 and y^T b > 0 as documented
            for (auto& v : y)
                v = -v;
            // verify exactly on the original system (slack column included)
            bool ok = true;
            Rat yb(0);
            for (size_t r = 0; r < m; ++r)
                yb += y[r] * p.rhs[r];
            if (p.maximize_slack) {
                // cap-row component: its witness coefficient must be <= 0;
                // recompute it as the flipped dual too
                bool flipped = sgn(p.slack_cap) < 0;
                Rat ycap = flipped ? Rat(-yfull[m]) : yfull[m];
                ycap = -ycap;
                yb += ycap * p.slack_cap;
                if (sgn(ycap) > 0)
                    ok = false;
                Rat tcol(0);
                for (size_t r = 0; r < m; ++r) {
                    Rat row_sum(0);
                    for (int j = 0; j < p.num_vars; ++j)
                        row_sum += p.rows[r][static_cast<size_t>(j)];
                    tcol += y[r] * row_sum;
                }
                tcol += ycap; // t appears in the cap row with coefficient 1
                if (sgn(tcol) > 0)
                    ok = false;
                y.push_back(ycap);
            }
            for (int j = 0; j < p.num_vars && ok; ++j) {
                Rat col(0);
                for (size_t r = 0; r < m; ++r)
                    col += y[r] * p.rows[r][static_cast<size_t>(j)];
                if (sgn(col) > 0)
                    ok = false;
            }
            if (sgn(yb) <= 0)
                ok = false;
            cert.status = LpCertificate::Status::Infeasible;
            cert.dual = std::move(y);
            cert.verified = ok;
            if (!ok)
                throw std::logic_error("lp_solve: Farkas witness failed exact verification");
            return cert;
        }
    }

    // drive basic artificials out or drop redundant rows
    for (size_t r = 0; r < tab.rows();) {
        if (tab.basis[r] < static_cast<int>(ns)) {
            ++r;
            continue;
        }
        size_t j = 0;
        while (j < ns && is_zero(tab.a[r][j]))
            ++j;
        if (j < ns) {
            tab.pivot(r, j);
            ++r;
        } else {
            // redundant equality
            tab.a.erase(tab.a.begin() + static_cast<long>(r));
            tab.rhs.erase(tab.rhs.begin() + static_cast<long>(r));
            tab.basis.erase(tab.basis.begin() + static_cast<long>(r));
        }
    }

    // Phase 2: maximize t (or nothing for pure feasibility)
    if (p.maximize_slack) {
        std::vector<Rat> c(ns + na, Rat(0));
        std::vector<char> allowed(ns + na, 1);
        for (size_t j = ns; j < ns + na; ++j)
            allowed[j] = 0;
        c[t_col] = 1;
        if (!tab.simplex(c, allowed))
            throw std::logic_error("lp_solve: phase 2 unbounded despite cap");
    }

    // extract solution
    std::vector<Rat> z(ns, Rat(0));
    for (size_t r = 0; r < tab.rows(); ++r)
        if (tab.basis[r] < static_cast<int>(ns))
            z[static_cast<size_t>(tab.basis[r])] = tab.rhs[r];
    cert.status = LpCertificate::Status::Feasible;
    cert.t = p.maximize_slack ? z[t_col] : Rat(0);
    cert.x.assign(static_cast<size_t>(p.num_vars), Rat(0));
    for (int j = 0; j < p.num_vars; ++j)
        cert.x[static_cast<size_t>(j)] = z[static_cast<size_t>(j)] + cert.t;

    // exact re-verification
    bool ok = true;
    for (size_t r = 0; r < m && ok; ++r) {
        Rat lhs(0);
        for (int j = 0; j < p.num_vars; ++j)
            if (!is_zero(cert.x[static_cast<size_t>(j)]))
                lhs += p.rows[r][static_cast<size_t>(j)] * cert.x[static_cast<size_t>(j)];
        if (lhs != p.rhs[r])
            ok = false;
    }
    for (const auto& xi : cert.x)
        if (xi < cert.t)
            ok = false;
    if (sgn(cert.t) < 0 || cert.t > p.slack_cap)
        ok = false;
    cert.verified = ok;
    if (!ok)
        throw std::logic_error("lp_solve: feasible certificate failed exact verification");
    return cert;
}

} // namespace virblocks
