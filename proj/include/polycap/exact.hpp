#ifndef POLYCAP_EXACT_HPP
#define POLYCAP_EXACT_HPP

#include "polycap/matrices.hpp"
#include "polycap/oracle.hpp"
#include "polycap/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace polycap {

// Reference values used to check the fast paths.  `rational` is set whenever
// the computation ran in exact arithmetic over the stored entries.
struct ExactValue {
    double value = 0.0;
    std::optional<Rat> rational;
    std::string method;
};

// Ryser's formula over a Gray code.  Rational path for n <= 12 or integer
// matrices, 80-bit accumulation otherwise.  Hard cap n <= 24.
ExactValue permanent_exact(const NonnegativeMatrix& A);
Rat permanent_rational(const NonnegativeMatrix& A);
double permanent_longdouble(const NonnegativeMatrix& A);

// Permanent straight from the n! definition; independent of the Ryser path.
Rat permanent_perm_sum(const NonnegativeMatrix& A, int hard_cap = 9);

// Permanent of a k x k minor given as raw rows (zero rows allowed here,
// unlike NonnegativeMatrix).
Rat permanent_minor(const std::vector<std::vector<Rat>>& rows);

// Mixed discriminant D(A_1,...,A_n).  Dispatch: diagonal tuples reduce to a
// permanent; n <= 6 runs an exact rational permutation sum; n <= 10 the same
// sum in long double; n <= 20 an inclusion-exclusion over determinants.
ExactValue mixed_discriminant_exact(const HermitianTuple& T);
double mixed_discriminant_polarization(const HermitianTuple& T);

// Brute-force capacity: nested grid on the log-coordinate hyperplane.
// Returns the smallest p(e^y) value seen; n <= 6.
double capacity_grid(const PolynomialOracle& p, int levels = 3, int steps = 9,
                     double span = 2.0);

// Rank-one-plus-uniform family [a | b | ... | b] with b_i = (1-a_i)/(n-1):
// permanent against its closed form, and the n!/n^n floor when the column
// sums also reach 1.
struct MiniVdw {
    double permanent = 0.0;
    double closed_form = 0.0;
    double vdw_floor = 0.0;
    bool doubly_stochastic = false;
    bool matches_closed_form = false;
    bool floor_holds = false;
};
MiniVdw mini_vdw_verify(const std::vector<double>& a);

} // namespace polycap

#endif
