#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "virblocks/ratlp.hpp"

using namespace virblocks;

namespace {

LpProblem identity_problem(const std::vector<Rat>& b)
{
    LpProblem p;
    p.num_vars = static_cast<int>(b.size());
    for (size_t i = 0; i < b.size(); ++i) {
        std::vector<Rat> row(b.size(), Rat(0));
        row[i] = 1;
        p.rows.push_back(std::move(row));
    }
    p.rhs = b;
    return p;
}

} // namespace

TEST_CASE("identity system is feasible")
{
    auto p = identity_problem({Rat(1), Rat(2), ratio(3L, 7L)});
    const LpCertificate c = lp_solve(p);
    REQUIRE(c.status == LpCertificate::Status::Feasible);
    CHECK(c.verified);
    CHECK(c.x[0] == 1);
    CHECK(c.x[1] == 2);
    CHECK(c.x[2] == ratio(3L, 7L));
}

TEST_CASE("negative right-hand side over nonnegative variables is infeasible")
{
    auto p = identity_problem({Rat(-1)});
    const LpCertificate c = lp_solve(p);
    REQUIRE(c.status == LpCertificate::Status::Infeasible);
    CHECK(c.verified);
    // witness: y A <= 0 and y b > 0
    Rat dot = c.dual[0] * p.rows[0][0];
    CHECK(sgn(dot) <= 0);
    CHECK(sgn(c.dual[0] * p.rhs[0]) > 0);
}

TEST_CASE("inconsistent zero row")
{
    LpProblem p;
    p.num_vars = 2;
    p.rows = {{Rat(0), Rat(0)}};
    p.rhs = {Rat(1)};
    const LpCertificate c = lp_solve(p);
    REQUIRE(c.status == LpCertificate::Status::Infeasible);
    CHECK(c.verified);
    CHECK(sgn(c.dual[0]) > 0);
}

TEST_CASE("slack maximization finds the interior margin")
{
    // x1 + x2 = 1, maximize t with x_i >= t: optimum t = 1/2
    LpProblem p;
    p.num_vars = 2;
    p.rows = {{Rat(1), Rat(1)}};
    p.rhs = {Rat(1)};
    p.maximize_slack = true;
    const LpCertificate c = lp_solve(p);
    REQUIRE(c.status == LpCertificate::Status::Feasible);
    CHECK(c.t == ratio(1L, 2L));
    CHECK(c.x[0] + c.x[1] == 1);
}

TEST_CASE("slack cap bounds an unbounded direction")
{
    // x1 - x2 = 0 admits arbitrarily large t; the cap pins it
    LpProblem p;
    p.num_vars = 2;
    p.rows = {{Rat(1), Rat(-1)}};
    p.rhs = {Rat(0)};
    p.maximize_slack = true;
    p.slack_cap = 1;
    const LpCertificate c = lp_solve(p);
    REQUIRE(c.status == LpCertificate::Status::Feasible);
    CHECK(c.t == 1);
}

TEST_CASE("boundary-only feasibility reports t = 0")
{
    // x1 + x2 = 0 forces x = 0, so t = 0 is the best margin
    LpProblem p;
    p.num_vars = 2;
    p.rows = {{Rat(1), Rat(1)}};
    p.rhs = {Rat(0)};
    p.maximize_slack = true;
    const LpCertificate c = lp_solve(p);
    REQUIRE(c.status == LpCertificate::Status::Feasible);
    CHECK(sgn(c.t) == 0);
}

TEST_CASE("degenerate equalities stay exact")
{
    // 2x1 + 3x2 = 12, x1 - x2 = 1 -> x = (3, 2)
    LpProblem p;
    p.num_vars = 2;
    p.rows = {{Rat(2), Rat(3)}, {Rat(1), Rat(-1)}};
    p.rhs = {Rat(12), Rat(1)};
    const LpCertificate c = lp_solve(p);
    REQUIRE(c.status == LpCertificate::Status::Feasible);
    CHECK(c.x[0] == 3);
    CHECK(c.x[1] == 2);
}

TEST_CASE("deterministic certificates")
{
    LpProblem p;
    p.num_vars = 3;
    p.rows = {{Rat(1), Rat(1), Rat(1)}, {Rat(0), Rat(1), Rat(2)}};
    p.rhs = {Rat(6), Rat(5)};
    p.maximize_slack = true;
    const LpCertificate a = lp_solve(p);
    const LpCertificate b = lp_solve(p);
    REQUIRE(a.status == LpCertificate::Status::Feasible);
    CHECK(a.x == b.x);
    CHECK(a.t == b.t);
}

TEST_CASE("dimension mismatches are rejected")
{
    LpProblem p;
    p.num_vars = 2;
    p.rows = {{Rat(1)}};
    p.rhs = {Rat(1)};
    CHECK_THROWS_AS(lp_solve(p), std::invalid_argument);
}
