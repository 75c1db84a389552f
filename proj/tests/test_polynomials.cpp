#include <doctest.h>

#include "polycap/exact.hpp"
#include "polycap/matrices.hpp"
#include "polycap/polynomials.hpp"
#include "polycap/sparse.hpp"

#include <Eigen/Dense>

#include <complex>
#include <vector>

using namespace polycap;

namespace {

std::vector<std::vector<double>> ones_basis(int n) {
    std::vector<std::vector<double>> e(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0;
    return e;
}

std::vector<std::vector<Rat>> ones_basis_exact(int n) {
    std::vector<std::vector<Rat>> e(static_cast<std::size_t>(n),
                                    std::vector<Rat>(static_cast<std::size_t>(n), Rat(0)));
    for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = Rat(1);
    return e;
}

} // namespace

TEST_CASE("product oracle basics on the uniform matrix") {
    PolynomialOracle p = build_multilinear(NonnegativeMatrix::uniform(3));
    CHECK(p.num_vars() == 3);
    CHECK(p.degree() == 3);
    std::vector<double> ones = {1.0, 1.0, 1.0};
    CHECK(p(ones) == doctest::Approx(1.0));
    // column sums are 1, so each partial derivative at the all-ones point is 1
    auto grad = gradient_at(p, ones);
    for (double g : grad) CHECK(g == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("euler identity x . grad p = n p at a generic point") {
    PolynomialOracle p = build_multilinear(NonnegativeMatrix::uniform(4));
    std::vector<double> x = {0.3, 1.1, 0.7, 2.2};
    auto grad = gradient_at(p, x);
    double dot = 0.0;
    for (int i = 0; i < 4; ++i) dot += x[static_cast<std::size_t>(i)] * grad[static_cast<std::size_t>(i)];
    CHECK(dot == doctest::Approx(4.0 * p(x)).epsilon(1e-8));
}

TEST_CASE("top coefficient equals the permanent") {
    CHECK(top_coefficient_exact(build_multilinear(NonnegativeMatrix::identity(3))) == Rat(1));
    CHECK(top_coefficient_exact(build_multilinear(NonnegativeMatrix::uniform(3))) == Rat(2, 9));
    NonnegativeMatrix A = NonnegativeMatrix::from_rows({{1, 2}, {3, 4}});
    CHECK(top_coefficient_exact(build_multilinear(A)) == Rat(10));
    CHECK(top_coefficient(build_multilinear(A)) == doctest::Approx(10.0).epsilon(1e-9));
}

TEST_CASE("mixed form on the standard basis reproduces the permanent") {
    NonnegativeMatrix A = NonnegativeMatrix::from_rows({{1, 0, 2}, {2, 1, 1}, {0, 3, 1}});
    PolynomialOracle p = build_multilinear(A);
    double per = to_double(permanent_rational(A));
    CHECK(mixed_form(p, ones_basis(3)) == doctest::Approx(per).epsilon(1e-10));
    CHECK(to_double(mixed_form_exact(p, ones_basis_exact(3))) == doctest::Approx(per).epsilon(1e-12));
}

TEST_CASE("taylor coefficients match the sparse expansion") {
    NonnegativeMatrix A = NonnegativeMatrix::from_rows({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}});
    PolynomialOracle p = build_multilinear(A);
    SparsePolynomial sp = SparsePolynomial::multilinear_expansion(A);
    for (const auto& [e, coef] : sp.terms()) {
        CHECK(taylor_coefficient_exact(p, e) == coef);
        CHECK(taylor_coefficient(p, e) == doctest::Approx(to_double(coef)).epsilon(1e-9));
    }
    // an exponent outside the support comes back zero
    CHECK(taylor_coefficient_exact(p, {3, 0, 0}) == Rat(0));
}

TEST_CASE("determinantal oracle evaluates det of the pencil") {
    // A_1 = diag(1,0), A_2 = diag(0,1): det(x1 A_1 + x2 A_2) = x1 x2
    HermitianTuple T = HermitianTuple::from_diagonals({{1.0, 0.0}, {0.0, 1.0}});
    PolynomialOracle p = build_determinantal(T);
    CHECK(p.num_vars() == 2);
    CHECK(p.degree() == 2);
    std::vector<double> x = {2.0, 3.0};
    CHECK(p(x) == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(mixed_form(p, ones_basis(2)) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("derivative at zero drops one variable and one degree") {
    PolynomialOracle p = build_multilinear(NonnegativeMatrix::uniform(3));
    PolynomialOracle q = partial_at_zero(p, 0);
    CHECK(q.num_vars() == 2);
    CHECK(q.degree() == 2);
    // d/dx1 of ((x1+x2+x3)/3)^3 at x1 = 0 is ((x2+x3)/3)^2, which is 1 at (1,2)
    std::vector<double> y = {1.0, 2.0};
    CHECK(q(y) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("derivative oracle k-fold fan-out stays consistent") {
    PolynomialOracle p = build_multilinear(NonnegativeMatrix::uniform(4));
    PolynomialOracle d1 = derivative_oracle(p, 1);
    PolynomialOracle d1b = partial_at_zero(p, 0);
    std::vector<double> y = {0.7, 1.3, 0.4};
    CHECK(d1(y) == doctest::Approx(d1b(y)).epsilon(1e-9));
}

TEST_CASE("row-split oracle keeps the permanent as its top coefficient") {
    NonnegativeMatrix A = NonnegativeMatrix::from_rows({{1, 2, 1}, {2, 1, 1}, {1, 1, 2}});
    // splitting on no rows is the plain product oracle
    PolynomialOracle whole = laplace_hybrid(A, {});
    PolynomialOracle plain = build_multilinear(A);
    std::vector<double> x = {0.9, 1.4, 0.6};
    CHECK(whole(x) == doctest::Approx(plain(x)).epsilon(1e-12));

    // splitting one row leaves a degree-2 oracle in the two surviving rows
    PolynomialOracle split = laplace_hybrid(A, {0});
    CHECK(split.num_vars() == 2);
    CHECK(split.degree() == 2);
    CHECK(top_coefficient(split) ==
          doctest::Approx(to_double(permanent_rational(A))).epsilon(1e-8));
}

TEST_CASE("partial derivative matches a finite-difference probe") {
    PolynomialOracle p = build_multilinear(NonnegativeMatrix::uniform(3));
    std::vector<double> x = {0.8, 1.2, 1.5};
    double d = partial_at(p, x, 1);
    const double h = 1e-6;
    std::vector<double> xp = x, xm = x;
    xp[1] += h;
    xm[1] -= h;
    CHECK(d == doctest::Approx((p(xp) - p(xm)) / (2 * h)).epsilon(1e-5));
}
