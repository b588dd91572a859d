#pragma once

// Exact rational linear programming, just large enough for the cone
// membership certificates: equality rows over nonnegative variables with an
// optional shared lower-bound slack t that is maximized. Bland's rule keeps
// the simplex finite; every certificate is re-verified in exact arithmetic
// before being returned.

#include "virblocks/rational.hpp"

#include <vector>

namespace virblocks {

struct LpProblem {
    int num_vars = 0;                       // x_1..x_m, x_i >= 0 (or >= t)
    std::vector<std::vector<Rat>> rows;     // equality rows A x = b
    std::vector<Rat> rhs;
    bool maximize_slack = false;            // x_i >= t >= 0, maximize t
    Rat slack_cap = Rat(1);                 // keeps the objective bounded
};

struct LpCertificate {
    enum class Status { Feasible, Infeasible } status = Status::Infeasible;
    std::vector<Rat> x;   // Feasible: the variable values
    Rat t = Rat(0);       // Feasible: attained slack (0 when not maximized)
    std::vector<Rat> dual; // Infeasible: Farkas witness y
    bool verified = false;
};

// Find x >= 0 with A x = b (and, if maximize_slack, x_i >= t with t maximal
// subject to t <= slack_cap). Feasible certificates satisfy the equalities
// exactly; Infeasible certificates carry y with y^T A <= 0, y^T b > 0
// (components <= 0 also against the slack column when present).
LpCertificate lp_solve(const LpProblem& p);

} // namespace virblocks
