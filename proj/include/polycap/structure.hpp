#ifndef POLYCAP_STRUCTURE_HPP
#define POLYCAP_STRUCTURE_HPP

#include "polycap/oracle.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace polycap {

// S_p(A) = deg_t p(t 1_A + 1): how much of the total degree the variable set
// A (given as a bitmask) can absorb.  Exact when the oracle carries a
// rational evaluator; otherwise detected from interpolated coefficients.
int support_degree(const PolynomialOracle& p, std::uint32_t mask);

// Memoized mask -> S_p(A) table for one oracle.
class SupportTable {
public:
    explicit SupportTable(PolynomialOracle p);

    int n() const { return n_; }
    int operator()(std::uint32_t mask) const;

private:
    PolynomialOracle p_;
    int n_;
    mutable std::vector<int> cache_;   // -2 = unset
};

// Number of nonzero roots of t -> p(X - t 1).  For 0/1 indicator points this
// matches the support degree of the indicated set.
int rank_at(const PolynomialOracle& p, std::span<const double> X);

// Submodularity of S_p via the local exchange characterization
//   S(A + i) + S(A + j) >= S(A + i + j) + S(A)   for all A and i, j not in A.
// Exhaustive through n <= 20; beyond that a seeded sample of triples.
struct SubmodularityReport {
    bool submodular = true;
    bool exhaustive = true;
    std::uint32_t witness_mask = 0;   // violating A (valid when !submodular)
    int witness_i = -1, witness_j = -1;
    long long checks = 0;
};

SubmodularityReport is_submodular(const SupportTable& S, long long sample_budget = 200000,
                                  std::uint64_t seed = 42);

// Exponent r lies in the support polytope description iff
// sum_{i in A} r_i <= S_p(A) for every A.  Witness = first violating mask.
struct SupportMembership {
    bool inside = true;
    std::uint32_t witness_mask = 0;
    long long lhs = 0;   // sum of r over the witness
    int rhs = 0;         // S_p at the witness
};

SupportMembership in_support(const PolynomialOracle& p, const std::vector<int>& r);

// Membership of a real point x (sum x_i = degree) in the polytope
// { x >= 0 : x(A) <= S_p(A) for all A }.  min_slack < -tol means outside.
// witness_mask identifies the binding constraint; 0 stands for a negative
// coordinate rather than a set constraint.
struct PolytopeMembership {
    bool inside = true;
    double min_slack = 0.0;
    std::uint32_t witness_mask = 0;
};

PolytopeMembership in_newton_polytope(const PolynomialOracle& p,
                                      std::span<const double> x, double tol = 1e-9);

// p is indecomposable iff S_p(A) > |A| for every proper nonempty A.
struct IndecomposabilityReport {
    bool indecomposable = true;
    std::uint32_t witness_mask = 0;   // first A with S_p(A) <= |A|
    int witness_size = 0;
    int witness_degree = 0;
};

IndecomposabilityReport is_indecomposable(const PolynomialOracle& p);

// When a set A with S_p(A) = |A| exists, p should split as a product of a
// polynomial in x_A and one in the rest.  The split is verified numerically at
// random positive points:  p(x) p(1) = p(x_A, 1) p(1, x_rest).
struct Decomposition {
    std::vector<int> part;         // indices in A
    std::vector<int> complement;
    bool verified = false;
    double worst_residual = 0.0;
};

std::optional<Decomposition> detect_decomposition(const PolynomialOracle& p,
                                                  std::uint64_t seed = 42,
                                                  double rel_tol = 1e-8);

// Pairwise-coefficient criterion: positive coefficient on x^(1..1) shifted by
// e_i - e_j for every ordered pair.  Cross-check for is_indecomposable on
// oracles whose degree matches the variable count.
bool indecomposable_via_pair_coefficients(const PolynomialOracle& p);

} // namespace polycap

#endif
