#include <doctest.h>

#include "polycap/bounds.hpp"
#include "polycap/exact.hpp"
#include "polycap/matrices.hpp"

#include <cmath>
#include <vector>

using namespace polycap;

TEST_CASE("damping factor values") {
    CHECK(g_factor_exact(1) == Rat(1));
    CHECK(g_factor_exact(2) == Rat(1, 2));
    CHECK(g_factor_exact(3) == Rat(4, 9));
    CHECK(g_factor_exact(4) == Rat(27, 64));
    CHECK(g_factor(3) == doctest::Approx(4.0 / 9).epsilon(1e-15));
    // strictly decreasing toward 1/e
    CHECK(g_factor(10) > 1.0 / std::exp(1.0));
    CHECK(g_factor(10) < g_factor(9));
}

TEST_CASE("telescoping product of damping factors") {
    CHECK(vdw_factor(3) == Rat(2, 9));
    CHECK(vdw_factor(4) == Rat(3, 32));
    // n!/n^n for a larger n, computed independently
    Rat num(1), den(1);
    for (int k = 1; k <= 12; ++k) {
        num = num * Rat(k);
        den = den * Rat(12);
    }
    CHECK(vdw_factor(12) == num / den);
}

TEST_CASE("support-aware factor with the positional cap") {
    // uniform full support: every position takes the floor value g(n+1-i)
    FactorResult full = generalized_factor({3, 3, 3});
    CHECK(full.factor == Rat(2, 9));
    CHECK(full.formula == "uniform-floor");

    // {1,3,2}: parking the support-1 variable in the widest slot wastes the
    // slot but buys g(1) = 1 there, and min(.,cap) clips the rest to
    // g(2) * g(1); no ordering beats 1/2
    FactorResult floored = generalized_factor({1, 3, 2}, "best");
    CHECK(floored.factor == Rat(1, 2));
    CHECK(floored.formula == "general");

    // equal supports below the floor
    FactorResult uni = generalized_factor({2, 2, 2});
    CHECK(uni.factor == Rat(1, 4));
    CHECK(uni.formula == "uniform-support");

    // the best ordering can only improve on the identity ordering
    FactorResult best = generalized_factor({1, 1, 3}, "best");
    FactorResult ident = generalized_factor({1, 1, 3}, "identity");
    CHECK(best.factor >= ident.factor);
    CHECK(best.formula == "general");
}

TEST_CASE("regular-support factor beats the classic one") {
    RegularComparison rc = schrijver_comparison(3, 4);
    CHECK(rc.support_based == Rat(8, 81));
    CHECK(rc.classic == Rat(256, 6561));
    CHECK(rc.support_wins_or_ties);
}

TEST_CASE("permanent bracket on the uniform matrix") {
    BoundReport b = permanent_lower_bound(NonnegativeMatrix::uniform(3));
    const double per = 2.0 / 9;
    CHECK(b.cap.status == "converged");
    CHECK(b.factor == doctest::Approx(2.0 / 9).epsilon(1e-12));
    CHECK(b.coefficient_lower <= per * (1 + 1e-9));
    CHECK(b.coefficient_lower >= per * (1 - 1e-4)); // equality case, up to the solver gap
    CHECK(b.coefficient_upper >= 1.0 - 1e-9);
    CHECK(b.coefficient_upper <= 1.0 + 1e-6);
}

TEST_CASE("bracket contains the permanent for a fixed 0-1 matrix") {
    NonnegativeMatrix A = NonnegativeMatrix::from_rows(
        {{1, 1, 0, 0}, {1, 1, 1, 0}, {0, 1, 1, 1}, {0, 0, 1, 1}});
    double per = to_double(permanent_rational(A));
    BoundReport b = permanent_lower_bound(A);
    CHECK(b.coefficient_lower <= per * (1 + 1e-9));
    CHECK(b.coefficient_upper >= per * (1 - 1e-9));
}

TEST_CASE("entries off every positive diagonal are dropped from the core") {
    // (0,2) cannot be completed to a positive diagonal: rows 1 and 2 would
    // both need columns in {0,1} but row 2 is zero there
    NonnegativeMatrix A = NonnegativeMatrix::from_rows(
        {{1, 1, 1}, {1, 1, 0}, {0, 0, 1}});
    BoundReport b = permanent_lower_bound(A);
    CHECK(b.column_supports == std::vector<int>{2, 2, 1});
    double per = to_double(permanent_rational(A)); // = 2
    CHECK(per == doctest::Approx(2.0));
    CHECK(b.coefficient_lower <= per * (1 + 1e-9));
    CHECK(b.coefficient_upper >= per * (1 - 1e-9));
}

TEST_CASE("no perfect matching reports an exact zero") {
    // rows 0 and 1 both live in column 0 only
    NonnegativeMatrix A = NonnegativeMatrix::from_rows(
        {{1, 0, 0}, {1, 0, 0}, {1, 1, 1}});
    CHECK(permanent_rational(A) == Rat(0));
    BoundReport b = permanent_lower_bound(A);
    CHECK(b.coefficient_lower == 0.0);
    CHECK(b.coefficient_upper == 0.0);
    CHECK(b.cap.cap_estimate == 0.0);
    CHECK(b.cap.status == "converged");
}
