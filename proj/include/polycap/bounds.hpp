#ifndef POLYCAP_BOUNDS_HPP
#define POLYCAP_BOUNDS_HPP

#include "polycap/capacity.hpp"
#include "polycap/matrices.hpp"
#include "polycap/rational.hpp"

#include <string>
#include <vector>

namespace polycap {

// g(k) = ((k-1)/k)^(k-1), the per-variable damping factor; g(0) = g(1) = 1.
// Strictly decreasing in k toward 1/e.
double g_factor(int k);
Rat g_factor_exact(int k);

// prod_{k<=n} g(k) = n!/n^n, the fully damped floor.
Rat vdw_factor(int n);

// prod_i g(min(S_{sigma(i)}, n+1-i)) over variable orderings sigma.
// "identity" keeps the given order; "best" searches: exhaustive for n <= 8,
// otherwise ascending S (which the exhaustive search confirms optimal at
// small n, and exchange arguments support in general).
struct FactorResult {
    Rat factor;
    std::vector<int> ordering;     // sigma: position i gets variable sigma[i]
    std::string formula;           // "uniform-floor" | "uniform-support" | "general"
};

FactorResult generalized_factor(const std::vector<int>& support_degrees,
                                const std::string& ordering = "best");

// Capacity-certified bracket for per(A):
//   factor * cap_lower <= per(A) <= cap_estimate,
// with the factor built from column support counts.  Both sides are computed
// on the diagonal-support core of A (entries lying on at least one positive
// diagonal): dropping the other entries changes neither the permanent nor the
// capacity, and it makes the capacity infimum attained, so the solver's gap
// certificate applies.  column_supports reports the core's counts.
struct BoundReport {
    double coefficient_lower = 0.0;
    double coefficient_upper = 0.0;
    double factor = 0.0;
    Rat factor_exact;
    std::vector<int> column_supports;
    std::vector<int> ordering;
    std::string formula;
    CapacityResult cap;
};

BoundReport permanent_lower_bound(const NonnegativeMatrix& A,
                                  const std::string& ordering = "best",
                                  double tol = 1e-6, int max_iterations = 20000);

// The k-regular damping factor g(k)^(n-k) * k!/k^k against the classic
// g(k)^n; the former is never smaller.
struct RegularComparison {
    int k = 0, n = 0;
    Rat support_based;
    Rat classic;
    bool support_wins_or_ties = false;
};

RegularComparison schrijver_comparison(int k, int n);

} // namespace polycap

#endif
