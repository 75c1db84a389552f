#ifndef POLYCAP_ERRORS_HPP
#define POLYCAP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace polycap {

// Bad or inconsistent input data (malformed JSON, negative entries, zero rows,
// non-homogeneous term lists, ...).  CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// A requested computation exceeds a hard enumeration budget (polarization width,
// derivative-oracle fan-out, exact permanent size).  CLI maps this to exit code 3.
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical breakdown that the caller cannot repair by changing inputs
// (overflow, non-finite oracle values, eigen solver failure).  CLI exit code 1.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace polycap

#endif
