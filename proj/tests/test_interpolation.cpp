#include <doctest.h>

#include "polycap/errors.hpp"
#include "polycap/interpolation.hpp"
#include "polycap/rational.hpp"

#include <cmath>
#include <vector>

using namespace polycap;

TEST_CASE("lobatto nodes hit both endpoints and stay sorted") {
    auto nodes = interp::lobatto_nodes(7, -2.0, 5.0);
    REQUIRE(nodes.size() == 7);
    CHECK(nodes.front() == doctest::Approx(-2.0));
    CHECK(nodes.back() == doctest::Approx(5.0));
    for (std::size_t i = 1; i < nodes.size(); ++i) CHECK(nodes[i] > nodes[i - 1]);
}

TEST_CASE("cubic coefficients recovered from samples") {
    auto f = [](double t) { return (1.0 + t) * (1.0 + t) * (1.0 + t); };
    auto c = interp::coefficients(f, 3, 2.0);
    REQUIRE(c.size() == 4);
    CHECK(c[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c[1] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(c[2] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(c[3] == doctest::Approx(1.0).epsilon(1e-12));

    auto cc = interp::coefficients_centered(f, 3, 2.0);
    REQUIRE(cc.size() == 4);
    for (int k = 0; k < 4; ++k) CHECK(cc[k] == doctest::Approx(c[k]).epsilon(1e-12));
}

TEST_CASE("exact coefficients are exact") {
    // f(t) = (t/2 + 1)^2 = t^2/4 + t + 1, sampled at integer nodes
    // note the explicit return type: without it the deduced type would be a
    // boost expression template referencing the dead local
    auto f = [](const Rat& t) -> Rat {
        Rat half = t / Rat(2) + Rat(1);
        return half * half;
    };
    auto c = interp::coefficients_exact(f, 2);
    REQUIRE(c.size() == 3);
    CHECK(c[0] == Rat(1));
    CHECK(c[1] == Rat(1));
    CHECK(c[2] == Rat(1, 4));
    CHECK(interp::detected_degree_exact(c) == 2);
}

TEST_CASE("degree detection ignores trailing noise") {
    std::vector<double> c = {2.0, -1.0, 3.0, 1e-13, -1e-14};
    CHECK(interp::detected_degree(c, 1e-9) == 2);
    std::vector<double> zero = {0.0, 0.0};
    CHECK(interp::detected_degree(zero, 1e-9) == -1);
}

TEST_CASE("derivative of a quartic at an interior point") {
    auto f = [](double t) { return t * t * t * t; };
    CHECK(interp::derivative_at(f, 4, 1.5, 1.0) == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("overly small degree still yields a least-disruptive fit") {
    // degree bound below the true degree: the fit is still the polynomial
    // interpolant on the given nodes, so evaluating it back at a node agrees
    auto f = [](double t) { return 1.0 + t; };
    auto c = interp::coefficients(f, 1, 1.0);
    REQUIRE(c.size() == 2);
    CHECK(c[0] == doctest::Approx(1.0));
    CHECK(c[1] == doctest::Approx(1.0));
}
