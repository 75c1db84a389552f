#include "polycap/oracle.hpp"

#include "polycap/errors.hpp"

#include <cmath>

namespace polycap {

std::string provenance_name(Provenance p) {
    switch (p) {
        case Provenance::multilinear: return "multilinear";
        case Provenance::determinantal: return "determinantal";
        case Provenance::sparse: return "sparse";
        case Provenance::derivative: return "derivative";
        case Provenance::laplace_hybrid: return "laplace-hybrid";
    }
    return "unknown";
}

PolynomialOracle::PolynomialOracle(int num_vars, int degree, Provenance prov,
                                   RealEval eval, ExactEval exact_eval)
    : m_(num_vars), n_(degree), prov_(prov),
      eval_(std::move(eval)), exact_(std::move(exact_eval)) {
    if (m_ < 0 || n_ < 0) throw ValidationError("oracle: negative arity or degree");
    if (!eval_) throw ValidationError("oracle: missing evaluator");
    const std::vector<double> ones(static_cast<std::size_t>(m_), 1.0);
    at_ones_ = eval_(ones);
    if (!std::isfinite(at_ones_))
        throw NumericalError("oracle: non-finite value at the all-ones point");
    if (at_ones_ < 0)
        throw ValidationError("oracle: negative value at the all-ones point");
    // Nonnegative coefficients make p(1,...,1) the coefficient sum, so a
    // (near-)zero value there means the zero polynomial.
    zero_ = (at_ones_ == 0.0);
}

PolynomialOracle PolynomialOracle::zero(int num_vars, Provenance prov) {
    PolynomialOracle p;
    p.m_ = num_vars;
    p.n_ = 0;
    p.prov_ = prov;
    p.zero_ = true;
    p.at_ones_ = 0;
    p.eval_ = [](std::span<const double>) { return 0.0; };
    p.exact_ = [](std::span<const Rat>) { return Rat(0); };
    return p;
}

double PolynomialOracle::operator()(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != m_)
        throw ValidationError("oracle: evaluation point has wrong dimension");
    return eval_(x);
}

Rat PolynomialOracle::exact(std::span<const Rat> x) const {
    if (!exact_) throw ValidationError("oracle: no exact evaluator attached");
    if (static_cast<int>(x.size()) != m_)
        throw ValidationError("oracle: evaluation point has wrong dimension");
    return exact_(x);
}

} // namespace polycap
