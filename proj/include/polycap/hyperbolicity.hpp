#ifndef POLYCAP_HYPERBOLICITY_HPP
#define POLYCAP_HYPERBOLICITY_HPP

#include "polycap/oracle.hpp"

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace polycap {

// Roots of the univariate restriction u(t) = p(X - t * dir), with the raw
// coefficients kept around so callers can re-derive anything they need.
struct RootReport {
    std::vector<double> coefficients;          // u(t) = sum c_k t^k
    int degree = 0;                            // detected degree of u
    int vanish_order = 0;                      // multiplicity of the root at 0,
                                               // read off the trailing coefficients
    std::vector<std::complex<double>> roots;   // sorted by real part, then imag
    double max_imag = 0.0;                     // largest |Im| over the roots
    bool all_real = false;
    bool all_nonneg = false;                   // meaningful only when all_real
};

RootReport restriction_roots(const PolynomialOracle& p, std::span<const double> X,
                             std::span<const double> dir);

// Randomized real-rootedness screen in the all-ones direction.  Each trial
// draws one Gaussian point (roots must be real) and one nonnegative point
// (roots must also be nonnegative).  Deterministic per (seed, trial index).
struct HyperbolicityVerdict {
    bool passed = false;
    int trials_run = 0;
    std::uint64_t seed = 0;
    std::string failure;                 // empty on pass
    std::vector<double> counterexample;  // the offending point on failure
    RootReport report;                   // roots at the counterexample
};

HyperbolicityVerdict check_pos_hyperbolic(const PolynomialOracle& p, int trials,
                                          std::uint64_t seed);

// Coefficient inequalities for a real-rooted u(t) = sum_k d_k t^k of degree n:
//   d_i^2 >= d_{i-1} d_{i+1} C(n,i)^2 / (C(n,i-1) C(n,i+1))        (all i)
// and, when additionally every d_k >= 0,
//   d_i d_0^{i-1} <= (d_1/n)^i C(n,i)                              (i >= 2).
struct NewtonReport {
    bool newton_hold = true;
    bool weak_hold = true;
    int first_newton_violation = -1;
    int first_weak_violation = -1;
    double worst_newton_margin = 0.0;   // min over i of (lhs-rhs)/scale
    double worst_weak_margin = 0.0;     // min over i of (rhs-lhs)/scale
};

NewtonReport newton_inequalities(const std::vector<double>& coefs,
                                 double rel_tol = 1e-7);

// inf_{t > 0} R(t)/t for R with nonnegative coefficients, R(0) >= 0.  The
// stationarity condition t R'(t) - R(t) = 0 is monotone in t, so a bisection
// nails the minimizing point.
double inf_ratio(const std::vector<double>& coefs);

// d_1 >= C * ((n-1)/n)^(n-1) with C = inf R(t)/t; returns the signed relative
// margin (negative = violated).
double linear_coefficient_margin(const std::vector<double>& coefs);

// M_p(X1, X2, Y3..Yn)^2 >= M_p(X1, X1, Y..) * M_p(X2, X2, Y..) for
// nonnegative slots.  X holds the full tuple; slots 0 and 1 are the pair.
struct AfVerdict {
    bool holds = false;
    double lhs = 0.0;   // squared cross form
    double rhs = 0.0;   // product of the diagonal forms
    double margin = 0.0;
};

AfVerdict af_inequality_check(const PolynomialOracle& p,
                              const std::vector<std::vector<double>>& X,
                              double rel_tol = 1e-7);

// For entrywise nonnegative Z, Y the curve t -> p(Y + tZ) factors over the
// reals: nonnegative coefficients, all roots real and <= 0.
struct FactorizationVerdict {
    bool coefficients_nonneg = false;
    bool roots_real = false;
    bool roots_nonpositive = false;
    std::vector<double> coefficients;
    RootReport report;                  // for p(Y - tZ); roots there are >= 0
};

FactorizationVerdict factorization_check(const PolynomialOracle& p,
                                         std::span<const double> Z,
                                         std::span<const double> Y);

// For c in [0,1]^n with sum c = n-1:
//   S_{n-1}(c) - n S_n(c) >= exp(sum_i c_i log c_i),   0 log 0 = 0,
// with equality iff every c_i = (n-1)/n.  Returns (lhs, rhs).
std::pair<double, double> entropic_gap(const std::vector<double>& c);

} // namespace polycap

#endif
