#include <doctest.h>

#include "polycap/capacity.hpp"
#include "polycap/matrices.hpp"
#include "polycap/polynomials.hpp"

#include <cmath>
#include <vector>

using namespace polycap;

TEST_CASE("capacity of the uniform product form is 1") {
    CapacityResult c = capacity(build_multilinear(NonnegativeMatrix::uniform(3)));
    CHECK(c.status == "converged");
    CHECK(c.cap_estimate == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(c.gap_bound <= 1e-6);
}

TEST_CASE("capacity of the identity product form is 1") {
    // x1 x2 x3 on the normalization prod x = 1 is constant
    CapacityResult c = capacity(build_multilinear(NonnegativeMatrix::identity(3)));
    CHECK(c.status == "converged");
    CHECK(c.cap_estimate == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("row scaling multiplies the capacity through") {
    std::vector<std::vector<double>> rows(3, std::vector<double>(3, 1.0 / 3));
    for (auto& v : rows[0]) v *= 2.0;
    CapacityResult c = capacity(build_multilinear(NonnegativeMatrix::from_rows(rows)));
    CHECK(c.status == "converged");
    CHECK(c.cap_estimate == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("sinkhorn balancing of an already balanced matrix stops at once") {
    ScalingResult s = sinkhorn_scale(NonnegativeMatrix::uniform(3));
    CHECK(s.converged);
    CHECK(s.iterations == 1);
    CHECK(s.max_defect == doctest::Approx(0.0));
    CHECK(s.cap_product == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sinkhorn recovers the capacity through the scaling product") {
    NonnegativeMatrix A = NonnegativeMatrix::from_rows(
        {{0.2, 1.5, 0.4}, {1.1, 0.3, 0.8}, {0.6, 0.9, 1.2}});
    ScalingResult s = sinkhorn_scale(A);
    CHECK(s.converged);
    CHECK(s.max_defect <= 1e-10);
    CapacityResult c = capacity(build_multilinear(A), 1e-8);
    CHECK(s.cap_product == doctest::Approx(c.cap_estimate).epsilon(1e-6));
}

TEST_CASE("derivative defect vanishes exactly at doubly stochastic forms") {
    CHECK(ds_defect(build_multilinear(NonnegativeMatrix::uniform(4))) ==
          doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("conjugating to the doubly stochastic form") {
    NonnegativeMatrix A = NonnegativeMatrix::from_rows(
        {{1.0, 0.25, 0.5}, {0.3, 2.0, 0.7}, {0.9, 0.4, 1.1}});
    StochasticForm sf = scale_to_doubly_stochastic(build_multilinear(A));
    CHECK(sf.defect <= 1e-6);
    std::vector<double> ones = {1.0, 1.0, 1.0};
    CHECK(sf.q(ones) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("coefficient bracket for the uniform matrix") {
    ApproxResult a = approximate_coefficient(build_multilinear(NonnegativeMatrix::uniform(3)));
    // the x1 x2 x3 coefficient is 2/9 and the capacity is exactly 1
    CHECK(a.cap.status == "converged");
    CHECK(a.factor == doctest::Approx(2.0 / 9).epsilon(1e-12));
    CHECK(a.support_degrees == std::vector<int>{3, 3, 3});
    CHECK(a.coefficient_lower <= 2.0 / 9 * (1 + 1e-9));
    CHECK(a.coefficient_upper >= 2.0 / 9 * (1 - 1e-9));
    CHECK(a.estimate >= 1.0 - 1e-9);
    CHECK(a.estimate <= 2.0 + 1e-9);
    CHECK(a.cap_lower == doctest::Approx(a.estimate / 2).epsilon(1e-12));
}

TEST_CASE("zero derivative levels reduce to the plain estimator") {
    PolynomialOracle p = build_multilinear(NonnegativeMatrix::uniform(3));
    ImprovedResult r = improved_approximate(p, 0);
    ApproxResult a = approximate_coefficient(p);
    CHECK(r.k == 0);
    CHECK(!r.fell_back);
    CHECK(r.approx.estimate == a.estimate);
    CHECK(r.approx.coefficient_lower == a.coefficient_lower);
    CHECK(r.approx.coefficient_upper == a.coefficient_upper);
    CHECK(r.approx.factor == a.factor);
}
