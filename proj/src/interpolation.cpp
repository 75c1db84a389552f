#include "polycap/interpolation.hpp"

#include "polycap/errors.hpp"

#include <cmath>
#include <cstdlib>

namespace polycap::interp {

std::vector<double> lobatto_nodes(int count, double lo, double hi) {
    std::vector<double> t(count);
    if (count == 1) {
        t[0] = 0.5 * (lo + hi);
        return t;
    }
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (int j = 0; j < count; ++j) {
        // cos runs 1 -> -1; index from the far end so nodes come out ascending
        t[j] = mid - half * std::cos(M_PI * static_cast<double>(j) / (count - 1));
    }
    t.front() = lo;
    t.back() = hi;
    return t;
}

Fit::Fit(const std::vector<double>& nodes, const std::vector<double>& values) {
    const std::size_t n = nodes.size();
    if (values.size() != n || n == 0)
        throw ValidationError("interpolation: node/value count mismatch");
    t_.assign(nodes.begin(), nodes.end());
    c_.assign(values.begin(), values.end());
    // divided differences in place
    for (std::size_t level = 1; level < n; ++level) {
        for (std::size_t i = n - 1; i >= level; --i) {
            const long double dt = t_[i] - t_[i - level];
            c_[i] = (c_[i] - c_[i - 1]) / dt;
            if (i == level) break;
        }
    }
}

double Fit::eval(double t) const {
    long double v = c_.back();
    for (std::size_t i = c_.size() - 1; i-- > 0;)
        v = v * (t - t_[i]) + c_[i];
    return static_cast<double>(v);
}

std::pair<double, double> Fit::eval_deriv(double t) const {
    long double v = c_.back(), d = 0.0L;
    for (std::size_t i = c_.size() - 1; i-- > 0;) {
        d = d * (t - t_[i]) + v;
        v = v * (t - t_[i]) + c_[i];
    }
    return {static_cast<double>(v), static_cast<double>(d)};
}

std::vector<double> Fit::monomial() const {
    const std::size_t n = c_.size();
    std::vector<long double> poly(n, 0.0L);
    std::size_t deg = 0;
    poly[0] = c_[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
        // poly <- poly * (x - t_i) + c_i
        ++deg;
        for (std::size_t k = deg; k >= 1; --k)
            poly[k] = poly[k - 1] - t_[i] * poly[k];
        poly[0] = c_[i] - t_[i] * poly[0];
    }
    return std::vector<double>(poly.begin(), poly.end());
}

std::vector<double> coefficients(const std::function<double(double)>& f,
                                 int degree, double radius) {
    const double hi = 2.0 * std::abs(radius) + 1.0;
    auto nodes = lobatto_nodes(degree + 1, 0.0, hi);
    std::vector<double> vals(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) vals[i] = f(nodes[i]);
    return Fit(nodes, vals).monomial();
}

std::vector<double> coefficients_centered(const std::function<double(double)>& f,
                                          int degree, double radius) {
    // Symmetric nodes condition the monomial extraction far better than a
    // one-sided window when the interesting features (roots) sit on both
    // sides of the origin.
    const double r = std::abs(radius) + 1.0;
    auto nodes = lobatto_nodes(degree + 1, -r, r);
    std::vector<double> vals(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) vals[i] = f(nodes[i]);
    return Fit(nodes, vals).monomial();
}

double derivative_at(const std::function<double(double)>& f,
                     int degree, double radius, double t0) {
    const double hi = 2.0 * std::abs(radius) + 1.0;
    auto nodes = lobatto_nodes(degree + 1, 0.0, hi);
    std::vector<double> vals(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) vals[i] = f(nodes[i]);
    return Fit(nodes, vals).eval_deriv(t0).second;
}

std::vector<Rat> coefficients_exact(const std::function<Rat(const Rat&)>& f,
                                    int degree) {
    const int n = degree + 1;
    std::vector<Rat> c(n);
    for (int i = 0; i < n; ++i) c[i] = f(Rat(i));
    for (int level = 1; level < n; ++level)
        for (int i = n - 1; i >= level; --i)
            c[i] = (c[i] - c[i - 1]) / Rat(level); // node spacing is 1
    // Newton form over nodes 0,1,...,deg -> monomial
    std::vector<Rat> poly(n, Rat(0));
    poly[0] = c[n - 1];
    int deg = 0;
    for (int i = n - 2; i >= 0; --i) {
        ++deg;
        for (int k = deg; k >= 1; --k)
            poly[k] = poly[k - 1] - Rat(i) * poly[k];
        poly[0] = c[i] - Rat(i) * poly[0];
    }
    return poly;
}

int detected_degree(const std::vector<double>& coefs, double rel_tol) {
    double mx = 0;
    for (double c : coefs) mx = std::max(mx, std::abs(c));
    if (mx == 0) return -1;
    int deg = -1;
    for (std::size_t k = 0; k < coefs.size(); ++k)
        if (std::abs(coefs[k]) > rel_tol * mx) deg = static_cast<int>(k);
    return deg;
}

int detected_degree_exact(const std::vector<Rat>& coefs) {
    int deg = -1;
    for (std::size_t k = 0; k < coefs.size(); ++k)
        if (coefs[k] != 0) deg = static_cast<int>(k);
    return deg;
}

} // namespace polycap::interp
