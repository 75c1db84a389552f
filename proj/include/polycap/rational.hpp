#ifndef POLYCAP_RATIONAL_HPP
#define POLYCAP_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace polycap {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

// Exact: every finite double is a binary rational.
inline Rat rat_from_double(double x) { return Rat(x); }

inline Rat rat_pow(const Rat& base, unsigned e) {
    Rat acc(1), b = base;
    while (e) {
        if (e & 1u) acc *= b;
        b *= b;
        e >>= 1u;
    }
    return acc;
}

inline BigInt factorial(unsigned n) {
    BigInt f(1);
    for (unsigned k = 2; k <= n; ++k) f *= k;
    return f;
}

inline BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt b(1);
    for (unsigned i = 1; i <= k; ++i) {
        b *= (n - k + i);
        b /= i;
    }
    return b;
}

inline std::string rat_str(const Rat& r) { return r.str(); }

// Complex number over the rationals; enough arithmetic for exact Gaussian
// elimination on small Hermitian pencils.
struct RatComplex {
    Rat re, im;

    RatComplex() : re(0), im(0) {}
    RatComplex(Rat r) : re(std::move(r)), im(0) {}
    RatComplex(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }

    RatComplex operator+(const RatComplex& o) const { return {re + o.re, im + o.im}; }
    RatComplex operator-(const RatComplex& o) const { return {re - o.re, im - o.im}; }
    RatComplex operator*(const RatComplex& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    RatComplex operator/(const RatComplex& o) const {
        Rat d = o.re * o.re + o.im * o.im;
        return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
    }
    RatComplex& operator+=(const RatComplex& o) { re += o.re; im += o.im; return *this; }
    RatComplex& operator-=(const RatComplex& o) { re -= o.re; im -= o.im; return *this; }
};

// Exact determinant by fraction-full Gaussian elimination over Q(i).
// Intended for small n (the exact mixed-discriminant path).
RatComplex det_exact(std::vector<std::vector<RatComplex>> m);

} // namespace polycap

#endif
