#ifndef POLYCAP_INTERPOLATION_HPP
#define POLYCAP_INTERPOLATION_HPP

#include "polycap/rational.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace polycap::interp {

// Chebyshev-Lobatto nodes on [lo, hi], ascending, endpoints included.
std::vector<double> lobatto_nodes(int count, double lo, double hi);

// Newton divided-difference form over distinct nodes.  Accumulates in long
// double; adequate for the degrees handled here (restrictions up to ~24).
class Fit {
public:
    Fit(const std::vector<double>& nodes, const std::vector<double>& values);

    double eval(double t) const;
    // (value, derivative) in one Horner sweep.
    std::pair<double, double> eval_deriv(double t) const;
    // Monomial coefficients c[0..deg], p(t) = sum c_k t^k.
    std::vector<double> monomial() const;

private:
    std::vector<long double> t_, c_;
};

// Sample f at degree+1 Lobatto nodes on [0, 2*radius + 1] and return monomial
// coefficients.  radius should bound the magnitude of the evaluation region.
std::vector<double> coefficients(const std::function<double(double)>& f,
                                 int degree, double radius);

// Same, but on the symmetric window [-(radius+1), radius+1].  Preferred for
// root extraction, where the roots straddle the origin.
std::vector<double> coefficients_centered(const std::function<double(double)>& f,
                                          int degree, double radius);

// Derivative of the degree-bounded f at t0.  The node interval [0, 2*radius+1]
// should contain t0; callers pass radius >= |t0|.
double derivative_at(const std::function<double(double)>& f,
                     int degree, double radius, double t0);

// Exact path: integer nodes 0..degree, rational divided differences.  Used
// whenever the underlying oracle evaluates exactly.
std::vector<Rat> coefficients_exact(const std::function<Rat(const Rat&)>& f,
                                    int degree);

// Largest k with |c_k| > rel_tol * max_j |c_j|;  -1 if every coefficient is
// below threshold (the zero polynomial).
int detected_degree(const std::vector<double>& coefs, double rel_tol);
int detected_degree_exact(const std::vector<Rat>& coefs);

} // namespace polycap::interp

#endif
