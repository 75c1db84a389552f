#ifndef POLYCAP_POLYNOMIALS_HPP
#define POLYCAP_POLYNOMIALS_HPP

#include "polycap/matrices.hpp"
#include "polycap/oracle.hpp"
#include "polycap/sparse.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace polycap {

// Hard enumeration ceilings.  The 2^n polarization fan-out is capped, and the
// derivative oracle refuses budgets beyond kDerivativeBudget base calls.
inline constexpr int kPolarizationCap = 22;
inline constexpr std::uint64_t kDerivativeBudget = 10'000'000;

// prod_i <row_i(A), x>; exact evaluator attached.
PolynomialOracle build_multilinear(const NonnegativeMatrix& A);

// det(sum_i x_i A_i); complex LU under the hood, imaginary residue discarded
// when it stays below 1e-9 * (1 + |value|).
PolynomialOracle build_determinantal(const HermitianTuple& T);

PolynomialOracle build_sparse(const SparsePolynomial& p);

// Full polarization M_p(X_1,...,X_n), n = p.degree(), one vector per slot.
// 2^n oracle calls; refuses when n exceeds the cap and points at
// derivative_oracle for coefficient work at larger n.
double mixed_form(const PolynomialOracle& p,
                  const std::vector<std::vector<double>>& X,
                  int polarization_cap = kPolarizationCap);
Rat mixed_form_exact(const PolynomialOracle& p,
                     const std::vector<std::vector<Rat>>& X,
                     int polarization_cap = kPolarizationCap);

// Taylor coefficient of x^r:  M_p(X_r) / prod_i r_i!  with X_r the tuple
// holding r_i copies of e_i.
double taylor_coefficient(const PolynomialOracle& p, const std::vector<int>& r,
                          int polarization_cap = kPolarizationCap);
Rat taylor_coefficient_exact(const PolynomialOracle& p, const std::vector<int>& r,
                             int polarization_cap = kPolarizationCap);

// Coefficient of x_1 x_2 ... x_n (requires num_vars == degree).
double top_coefficient(const PolynomialOracle& p,
                       int polarization_cap = kPolarizationCap);
Rat top_coefficient_exact(const PolynomialOracle& p,
                          int polarization_cap = kPolarizationCap);

// d/dx_var p | x_var = 0: one variable fewer, degree one lower.  Every
// evaluation interpolates the restricted slice (degree+1 parent calls).
PolynomialOracle partial_at_zero(const PolynomialOracle& p, int var);

// k-fold mixed partial in the first k variables at zero.  Evaluation costs
// 2^k (degree+1) parent calls; construction refuses when that exceeds budget.
PolynomialOracle derivative_oracle(const PolynomialOracle& p, int k,
                                   std::uint64_t budget = kDerivativeBudget);

// Permanent surrogate built from a Laplace split along the given rows:
//   q(y) = sum_{|T|=|S|} per(A[S,T]) * prod_{j not in T} <A[S^c, j], y>,
// variables indexed by the surviving rows.  The coefficient of y_1...y_{n-k}
// equals per(A).  S empty returns the plain product oracle.
PolynomialOracle laplace_hybrid(const NonnegativeMatrix& A, std::vector<int> rows_s);

// Partial derivative value at a point (degree+1 oracle calls), and the full
// gradient.  Node placement assumes x >= 0, the only region callers need.
double partial_at(const PolynomialOracle& p, std::span<const double> x, int var);
std::vector<double> gradient_at(const PolynomialOracle& p, std::span<const double> x);

} // namespace polycap

#endif
