#ifndef POLYCAP_ORACLE_HPP
#define POLYCAP_ORACLE_HPP

#include "polycap/rational.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace polycap {

enum class Provenance { multilinear, determinantal, sparse, derivative, laplace_hybrid };

std::string provenance_name(Provenance p);

// Evaluation handle for a homogeneous polynomial with nonnegative
// coefficients.  Immutable; evaluation is pure, so copies can be used from
// anywhere.  An oracle may carry an exact rational evaluator alongside the
// double one; numeric code ignores it, structural code prefers it.
class PolynomialOracle {
public:
    using RealEval = std::function<double(std::span<const double>)>;
    using ExactEval = std::function<Rat(std::span<const Rat>)>;

    PolynomialOracle(int num_vars, int degree, Provenance prov,
                     RealEval eval, ExactEval exact_eval = nullptr);

    static PolynomialOracle zero(int num_vars, Provenance prov);

    int num_vars() const { return m_; }
    int degree() const { return n_; }
    Provenance provenance() const { return prov_; }
    bool is_zero() const { return zero_; }
    bool has_exact() const { return static_cast<bool>(exact_); }

    double operator()(std::span<const double> x) const;
    double operator()(const std::vector<double>& x) const {
        return (*this)(std::span<const double>(x));
    }
    Rat exact(std::span<const Rat> x) const;
    Rat exact(const std::vector<Rat>& x) const { return exact(std::span<const Rat>(x)); }

    // p at the all-ones point, cached at construction.  For a polynomial with
    // nonnegative coefficients this is the coefficient sum, so it doubles as
    // the zero test and as the natural scale of the oracle.
    double value_at_ones() const { return at_ones_; }

private:
    PolynomialOracle() = default;

    int m_ = 0, n_ = 0;
    Provenance prov_ = Provenance::sparse;
    bool zero_ = false;
    double at_ones_ = 0;
    RealEval eval_;
    ExactEval exact_;
};

} // namespace polycap

#endif
