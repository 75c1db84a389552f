#ifndef POLYCAP_CAPACITY_HPP
#define POLYCAP_CAPACITY_HPP

#include "polycap/matrices.hpp"
#include "polycap/oracle.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace polycap {

// inf { p(x) : x > 0, prod x_i = 1 } for p homogeneous of degree n in n
// variables with nonnegative coefficients.  In log coordinates y = log x the
// objective phi(y) = log p(e^y) is convex on the hyperplane sum y = 0, so the
// solve runs projected gradient descent for a warm start and an ellipsoid
// phase for the certified gap.
//
// cap_estimate = p(e^minimizer) is always a valid upper estimate.  gap_bound
// certifies log Cap >= log cap_estimate - gap_bound as long as the true
// minimizer lies in the searched ball; when the infimum recedes to the
// boundary (capacity 0) the radius doubling trips and the status reports
// unbounded-below-suspected instead.
struct CapacityResult {
    double cap_estimate = 0.0;
    double gap_bound = 0.0;              // additive, on log p
    std::vector<double> minimizer;       // y with sum y = 0
    std::string status;                  // converged | budget-exhausted |
                                         // unbounded-below-suspected
    int iterations = 0;
    double radius = 0.0;                 // hyperplane ball the certificate covers
};

CapacityResult capacity(const PolynomialOracle& p, double tol = 1e-6,
                        int max_iterations = 20000);

// Sinkhorn row/column balancing: A = diag(d1) B diag(d2) with B approaching
// doubly stochastic.  cap_product = prod d1 * prod d2 recovers the capacity
// of the product polynomial of A when the iteration converges.
struct ScalingResult {
    std::vector<double> d1, d2;
    std::vector<std::vector<double>> B;
    double cap_product = 0.0;
    bool converged = false;
    int iterations = 0;
    double max_defect = 0.0;             // worst |row or column sum - 1| of B
};

ScalingResult sinkhorn_scale(const NonnegativeMatrix& A, double ds_tol = 1e-10,
                             int max_iterations = 100000);

// sum_i (d/dx_i q (1,...,1) - 1)^2: zero exactly at doubly stochastic q
// (unit value at 1 with unit partial derivatives).
double ds_defect(const PolynomialOracle& q);

// Conjugation by the capacity minimizer: q(x) = p(beta . x) / p(beta) with
// beta = e^{y*}.  Refuses when the capacity solve did not converge.
struct StochasticForm {
    std::vector<double> beta;
    PolynomialOracle q;
    double defect = 0.0;
    CapacityResult cap;
};

StochasticForm scale_to_doubly_stochastic(const PolynomialOracle& p,
                                          double defect_tol = 1e-6,
                                          int max_iterations = 20000);

// Capacity-based estimate of the x_1...x_n coefficient: a capacity solve to
// additive log-gap log 2, bracketed below through the support-based
// degree-damping factor.
struct ApproxResult {
    double estimate = 0.0;               // cap_estimate at gap <= log 2
    double cap_lower = 0.0;              // estimate / 2
    double coefficient_lower = 0.0;      // estimate * factor / 2
    double coefficient_upper = 0.0;      // estimate
    double factor = 0.0;                 // prod_i g(min(S_i, n+1-i)), best order
    std::vector<int> support_degrees;    // S_p({i}) per variable
    CapacityResult cap;
};

ApproxResult approximate_coefficient(const PolynomialOracle& p,
                                     int max_iterations = 20000);

// Same estimate run on the k-fold derivative oracle, k = ceil(levels*log2 n).
// Falls back to the plain estimator (k = 0) with a warning when the 2^k
// fan-out exceeds the evaluation budget.
struct ImprovedResult {
    int k = 0;
    bool fell_back = false;
    std::string warning;
    ApproxResult approx;
};

ImprovedResult improved_approximate(const PolynomialOracle& p, int levels,
                                    int max_iterations = 20000);

} // namespace polycap

#endif
