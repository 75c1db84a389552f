#include <doctest.h>

#include "polycap/errors.hpp"
#include "polycap/exact.hpp"
#include "polycap/matrices.hpp"
#include "polycap/polynomials.hpp"

#include <vector>

using namespace polycap;

TEST_CASE("permanent of small reference matrices") {
    ExactValue id3 = permanent_exact(NonnegativeMatrix::identity(3));
    REQUIRE(id3.rational.has_value());
    CHECK(*id3.rational == Rat(1));
    CHECK(id3.method == "ryser-rational");

    // uniform matrices: per(J_n) = n!/n^n
    CHECK(permanent_rational(NonnegativeMatrix::uniform(3)) == Rat(2, 9));
    CHECK(permanent_rational(NonnegativeMatrix::uniform(4)) == Rat(3, 32));

    CHECK(permanent_rational(NonnegativeMatrix::from_rows({{1, 2}, {3, 4}})) == Rat(10));
}

TEST_CASE("ryser and the n! definition agree") {
    NonnegativeMatrix A = NonnegativeMatrix::from_rows(
        {{1, 0, 2, 1}, {3, 1, 0, 1}, {0, 2, 1, 1}, {1, 1, 1, 0}});
    CHECK(permanent_rational(A) == permanent_perm_sum(A));
    CHECK(permanent_longdouble(A) ==
          doctest::Approx(to_double(permanent_rational(A))).epsilon(1e-12));
}

TEST_CASE("permanent refuses past the hard cap") {
    std::vector<std::vector<double>> rows(25, std::vector<double>(25, 1.0));
    CHECK_THROWS_AS(permanent_exact(NonnegativeMatrix::from_rows(rows)), BudgetError);
}

TEST_CASE("mixed discriminant of a diagonal tuple is a permanent") {
    HermitianTuple T = HermitianTuple::from_diagonals({{1.0, 0.0}, {0.0, 1.0}});
    ExactValue v = mixed_discriminant_exact(T);
    REQUIRE(v.rational.has_value());
    CHECK(*v.rational == Rat(1));
    CHECK(v.method == "diagonal-permanent");

    // rows of the reduced matrix are the diagonals
    HermitianTuple S = HermitianTuple::from_diagonals({{2.0, 1.0}, {1.0, 3.0}});
    ExactValue w = mixed_discriminant_exact(S);
    REQUIRE(w.rational.has_value());
    CHECK(*w.rational == permanent_rational(NonnegativeMatrix::from_rows({{2, 1}, {1, 3}})));
}

TEST_CASE("mixed discriminant agrees with the polarization route") {
    HermitianTuple T = HermitianTuple::from_diagonals({{1.0, 2.0, 0.5}, {0.5, 1.0, 1.0}, {2.0, 0.0, 1.0}});
    ExactValue v = mixed_discriminant_exact(T);
    CHECK(mixed_discriminant_polarization(T) == doctest::Approx(v.value).epsilon(1e-10));
}

TEST_CASE("grid capacity of the uniform product form") {
    // the uniform matrix is doubly stochastic, so the minimum sits at the
    // center of the grid and equals 1
    PolynomialOracle p = build_multilinear(NonnegativeMatrix::uniform(3));
    CHECK(capacity_grid(p) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("rank-one-plus-uniform family closed form") {
    MiniVdw u = mini_vdw_verify({1.0 / 3, 1.0 / 3, 1.0 / 3});
    CHECK(u.doubly_stochastic);
    CHECK(u.matches_closed_form);
    CHECK(u.floor_holds);
    CHECK(u.permanent == doctest::Approx(2.0 / 9).epsilon(1e-12));

    // skewed first column, still doubly stochastic
    MiniVdw s = mini_vdw_verify({0.5, 0.25, 0.25});
    CHECK(s.doubly_stochastic);
    CHECK(s.matches_closed_form);
    CHECK(s.floor_holds);
}
