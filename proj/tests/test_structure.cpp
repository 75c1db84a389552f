#include <doctest.h>

#include "polycap/matrices.hpp"
#include "polycap/polynomials.hpp"
#include "polycap/sparse.hpp"
#include "polycap/structure.hpp"
#include "polycap/verify.hpp"

#include <vector>

using namespace polycap;

namespace {

// x1 x2 x3 x4 + x2^2 x4^2: the subset-degree function of this polynomial is
// not submodular, which separates the support lattice from a matroid
PolynomialOracle nonsub() {
    SparsePolynomial::Terms t;
    t[{1, 1, 1, 1}] = 1;
    t[{0, 2, 0, 2}] = 1;
    return build_sparse(SparsePolynomial(4, t));
}

PolynomialOracle cyclic() {
    SparsePolynomial::Terms t;
    t[{1, 2, 0}] = 1;
    t[{0, 1, 2}] = 1;
    t[{2, 0, 1}] = 1;
    return build_sparse(SparsePolynomial(3, t));
}

} // namespace

TEST_CASE("subset degrees of the identity product form") {
    PolynomialOracle p = build_multilinear(NonnegativeMatrix::identity(3));
    CHECK(support_degree(p, 0b001u) == 1);
    CHECK(support_degree(p, 0b011u) == 2);
    CHECK(support_degree(p, 0b111u) == 3);
}

TEST_CASE("known non-submodular subset degrees") {
    PolynomialOracle p = nonsub();
    // variables are 1-based in prose, bits 0-based: {2} = bit 1
    CHECK(support_degree(p, 0b0010u) == 2);
    CHECK(support_degree(p, 0b0011u) == 2);  // {1,2}
    CHECK(support_degree(p, 0b0110u) == 2);  // {2,3}
    CHECK(support_degree(p, 0b0111u) == 3);  // {1,2,3}

    SupportTable S(p);
    SubmodularityReport rep = is_submodular(S);
    CHECK(!rep.submodular);
    CHECK(rep.exhaustive);
}

TEST_CASE("product forms have submodular subset degrees") {
    SupportTable S(build_multilinear(NonnegativeMatrix::uniform(4)));
    CHECK(is_submodular(S).submodular);
}

TEST_CASE("support membership with witness") {
    PolynomialOracle p = build_multilinear(NonnegativeMatrix::identity(3));
    CHECK(in_support(p, {1, 1, 1}).inside);

    SupportMembership sm = in_support(p, {2, 0, 1});
    CHECK(!sm.inside);
    CHECK(sm.witness_mask == 0b001u);
    CHECK(sm.lhs == 2);
    CHECK(sm.rhs == 1);
}

TEST_CASE("support membership matches the explicit expansion") {
    NonnegativeMatrix A = NonnegativeMatrix::from_rows(
        {{1, 1, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 1}, {1, 0, 0, 1}});
    PolynomialOracle p = build_multilinear(A);
    SparsePolynomial sp = SparsePolynomial::multilinear_expansion(A);
    // all exponent vectors with entries summing to 4
    for (int a = 0; a <= 4; ++a)
        for (int b = 0; a + b <= 4; ++b)
            for (int c = 0; a + b + c <= 4; ++c) {
                int d = 4 - a - b - c;
                std::vector<int> r = {a, b, c, d};
                CHECK(in_support(p, r).inside == sp.contains(r));
            }
}

TEST_CASE("rank at indicator points equals the subset degree") {
    PolynomialOracle p = build_multilinear(NonnegativeMatrix::identity(3));
    std::vector<double> e1 = {1.0, 0.0, 0.0};
    CHECK(rank_at(p, e1) == 1);
    std::vector<double> all = {1.0, 1.0, 1.0};
    CHECK(rank_at(p, all) == 3);
    std::vector<double> generic = {0.7, 1.3, 2.1};
    CHECK(rank_at(p, generic) == 3);
}

TEST_CASE("polytope membership on the degree hyperplane") {
    PolynomialOracle p = build_multilinear(NonnegativeMatrix::identity(3));
    std::vector<double> inside = {1.0, 1.0, 1.0};
    CHECK(in_newton_polytope(p, inside).inside);

    std::vector<double> outside = {2.0, 1.0, 0.0};
    PolytopeMembership pm = in_newton_polytope(p, outside);
    CHECK(!pm.inside);
    CHECK(pm.witness_mask == 0b001u);
}

TEST_CASE("subset polytope can strictly contain the exact hull") {
    // (2,1,0) satisfies every subset constraint of the cyclic cubic but is
    // not a convex combination of its three exponent vectors
    PolynomialOracle p = cyclic();
    std::vector<double> pt = {2.0, 1.0, 0.0};
    CHECK(in_newton_polytope(p, pt).inside);

    std::vector<std::vector<Rat>> verts = {{Rat(1), Rat(2), Rat(0)},
                                           {Rat(0), Rat(1), Rat(2)},
                                           {Rat(2), Rat(0), Rat(1)}};
    CHECK(!in_convex_hull(verts, {Rat(2), Rat(1), Rat(0)}));
    // the vertices themselves are in their own hull
    CHECK(in_convex_hull(verts, {Rat(1), Rat(2), Rat(0)}));
}

TEST_CASE("indecomposability and the product split") {
    CHECK(is_indecomposable(build_multilinear(NonnegativeMatrix::uniform(3))).indecomposable);
    CHECK(indecomposable_via_pair_coefficients(build_multilinear(NonnegativeMatrix::uniform(3))));

    PolynomialOracle id3 = build_multilinear(NonnegativeMatrix::identity(3));
    IndecomposabilityReport rep = is_indecomposable(id3);
    CHECK(!rep.indecomposable);
    CHECK(rep.witness_size == rep.witness_degree);
    CHECK(!indecomposable_via_pair_coefficients(id3));

    auto dec = detect_decomposition(id3);
    REQUIRE(dec.has_value());
    CHECK(dec->verified);
    CHECK(dec->worst_residual <= 1e-8);
}

TEST_CASE("block-diagonal product forms split at the block boundary") {
    NonnegativeMatrix A = NonnegativeMatrix::from_rows(
        {{1, 2, 0, 0}, {2, 1, 0, 0}, {0, 0, 1, 3}, {0, 0, 2, 1}});
    PolynomialOracle p = build_multilinear(A);
    IndecomposabilityReport rep = is_indecomposable(p);
    CHECK(!rep.indecomposable);
    CHECK(rep.witness_size == 2);
    auto dec = detect_decomposition(p);
    REQUIRE(dec.has_value());
    CHECK(dec->verified);
    CHECK(dec->part.size() == 2);
}
