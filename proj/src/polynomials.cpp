#include "polycap/polynomials.hpp"

#include "polycap/errors.hpp"
#include "polycap/exact.hpp"
#include "polycap/interpolation.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>

namespace polycap {

namespace {

// Shared by the polarization loops: index of the bit flipped when moving from
// Gray code of g-1 to Gray code of g.
int flipped_bit(std::uint64_t g) { return std::countr_zero(g); }

std::string bad_tuple_count(int expected, std::size_t got) {
    std::ostringstream os;
    os << "polarization needs one vector per degree slot: expected " << expected
       << ", got " << got;
    return os.str();
}

} // namespace

PolynomialOracle build_multilinear(const NonnegativeMatrix& A) {
    const int n = A.n();
    std::vector<std::vector<double>> rows(n, std::vector<double>(n));
    std::vector<std::vector<Rat>> rows_exact(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            rows[i][j] = A(i, j);
            rows_exact[i][j] = A.at(i, j);
        }

    auto eval = [rows = std::move(rows), n](std::span<const double> x) {
        double prod = 1.0;
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            for (int j = 0; j < n; ++j) s += rows[i][j] * x[j];
            prod *= s;
        }
        return prod;
    };
    auto exact = [rows_exact = std::move(rows_exact), n](std::span<const Rat> x) {
        Rat prod(1);
        for (int i = 0; i < n; ++i) {
            Rat s(0);
            for (int j = 0; j < n; ++j) s += rows_exact[i][j] * x[j];
            prod *= s;
        }
        return prod;
    };
    return PolynomialOracle(n, n, Provenance::multilinear, std::move(eval),
                            std::move(exact));
}

PolynomialOracle build_determinantal(const HermitianTuple& T) {
    const int n = T.n();
    std::vector<Eigen::MatrixXcd> mats = T.matrices();

    auto eval = [mats = std::move(mats), n](std::span<const double> x) {
        Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
        for (int i = 0; i < n; ++i) M += x[i] * mats[i];
        std::complex<double> det = Eigen::PartialPivLU<Eigen::MatrixXcd>(M).determinant();
        double tol = 1e-9 * (1.0 + std::abs(det.real()));
        if (std::abs(det.imag()) > tol) {
            std::ostringstream os;
            os << "determinant came back with imaginary part " << det.imag()
               << " against tolerance " << tol
               << "; the matrix tuple is not Hermitian enough";
            throw NumericalError(os.str());
        }
        return det.real();
    };
    return PolynomialOracle(n, n, Provenance::determinantal, std::move(eval));
}

PolynomialOracle build_sparse(const SparsePolynomial& p) {
    const int m = p.num_vars();
    if (p.is_zero()) return PolynomialOracle::zero(m, Provenance::sparse);
    SparsePolynomial copy = p;
    auto eval = [copy](std::span<const double> x) { return copy.eval(x); };
    auto exact = [copy](std::span<const Rat> x) { return copy.eval_exact(x); };
    return PolynomialOracle(m, p.degree(), Provenance::sparse, std::move(eval),
                            std::move(exact));
}

double mixed_form(const PolynomialOracle& p,
                  const std::vector<std::vector<double>>& X,
                  int polarization_cap) {
    const int n = p.degree();
    const int m = p.num_vars();
    if (static_cast<int>(X.size()) != n)
        throw ValidationError(bad_tuple_count(n, X.size()));
    for (const auto& v : X)
        if (static_cast<int>(v.size()) != m)
            throw ValidationError("polarization vector has wrong dimension");
    if (n > polarization_cap) {
        std::ostringstream os;
        os << "polarization over 2^" << n << " sign patterns exceeds the cap of 2^"
           << polarization_cap << "; use derivative_oracle for coefficients at this size";
        throw BudgetError(os.str());
    }
    if (p.is_zero()) return 0.0;
    if (n == 0) {
        std::vector<double> zeros(m, 0.0);
        return p(zeros);
    }

    // Gray-code walk over the sign patterns b in {-1,+1}^n.  The evaluation
    // point sum_i b_i X_i is updated incrementally; a periodic full rebuild
    // keeps drift out of the (heavily cancelling) alternating sum.
    std::vector<int> b(n, -1);
    std::vector<double> point(m, 0.0);
    auto rebuild = [&] {
        std::fill(point.begin(), point.end(), 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j) point[j] += b[i] * X[i][j];
    };
    rebuild();
    long double sign = (n % 2 == 0) ? 1.0L : -1.0L;
    long double sum = sign * static_cast<long double>(p(point));
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t g = 1; g < total; ++g) {
        const int i = flipped_bit(g);
        b[i] = -b[i];
        if ((g & 0xfff) == 0) {
            rebuild();
        } else {
            const double step = 2.0 * b[i];
            for (int j = 0; j < m; ++j) point[j] += step * X[i][j];
        }
        sign = -sign;
        sum += sign * static_cast<long double>(p(point));
    }
    return static_cast<double>(sum / static_cast<long double>(total));
}

Rat mixed_form_exact(const PolynomialOracle& p,
                     const std::vector<std::vector<Rat>>& X,
                     int polarization_cap) {
    const int n = p.degree();
    const int m = p.num_vars();
    if (static_cast<int>(X.size()) != n)
        throw ValidationError(bad_tuple_count(n, X.size()));
    for (const auto& v : X)
        if (static_cast<int>(v.size()) != m)
            throw ValidationError("polarization vector has wrong dimension");
    if (n > polarization_cap)
        throw BudgetError("polarization pattern count exceeds the cap");
    if (p.is_zero()) return Rat(0);
    if (n == 0) {
        std::vector<Rat> zeros(m, Rat(0));
        return p.exact(zeros);
    }

    std::vector<int> b(n, -1);
    std::vector<Rat> point(m, Rat(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) point[j] += Rat(b[i]) * X[i][j];
    int sign = (n % 2 == 0) ? 1 : -1;
    Rat sum = Rat(sign) * p.exact(point);
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t g = 1; g < total; ++g) {
        const int i = flipped_bit(g);
        b[i] = -b[i];
        const Rat step = Rat(2 * b[i]);
        for (int j = 0; j < m; ++j) point[j] += step * X[i][j];
        sign = -sign;
        sum += Rat(sign) * p.exact(point);
    }
    Rat scale = rat_pow(Rat(2), static_cast<unsigned>(n));
    return sum / scale;
}

namespace {

void check_exponent(const PolynomialOracle& p, const std::vector<int>& r) {
    if (static_cast<int>(r.size()) != p.num_vars())
        throw ValidationError("exponent vector length does not match variable count");
    long total = 0;
    for (int e : r) {
        if (e < 0) throw ValidationError("exponent vector has a negative entry");
        total += e;
    }
    if (total != p.degree()) {
        std::ostringstream os;
        os << "exponent vector sums to " << total << " but the polynomial has degree "
           << p.degree();
        throw ValidationError(os.str());
    }
}

} // namespace

double taylor_coefficient(const PolynomialOracle& p, const std::vector<int>& r,
                          int polarization_cap) {
    check_exponent(p, r);
    const int m = p.num_vars();
    std::vector<std::vector<double>> X;
    X.reserve(p.degree());
    for (int i = 0; i < m; ++i)
        for (int c = 0; c < r[i]; ++c) {
            std::vector<double> e(m, 0.0);
            e[i] = 1.0;
            X.push_back(std::move(e));
        }
    double M = mixed_form(p, X, polarization_cap);
    double denom = 1.0;
    for (int e : r) denom *= to_double(Rat(factorial(static_cast<unsigned>(e))));
    return M / denom;
}

Rat taylor_coefficient_exact(const PolynomialOracle& p, const std::vector<int>& r,
                             int polarization_cap) {
    check_exponent(p, r);
    const int m = p.num_vars();
    std::vector<std::vector<Rat>> X;
    X.reserve(p.degree());
    for (int i = 0; i < m; ++i)
        for (int c = 0; c < r[i]; ++c) {
            std::vector<Rat> e(m, Rat(0));
            e[i] = Rat(1);
            X.push_back(std::move(e));
        }
    Rat M = mixed_form_exact(p, X, polarization_cap);
    Rat denom(1);
    for (int e : r) denom *= Rat(factorial(static_cast<unsigned>(e)));
    return M / denom;
}

double top_coefficient(const PolynomialOracle& p, int polarization_cap) {
    if (p.num_vars() != p.degree())
        throw ValidationError("top coefficient needs degree == variable count");
    return taylor_coefficient(p, std::vector<int>(p.num_vars(), 1), polarization_cap);
}

Rat top_coefficient_exact(const PolynomialOracle& p, int polarization_cap) {
    if (p.num_vars() != p.degree())
        throw ValidationError("top coefficient needs degree == variable count");
    return taylor_coefficient_exact(p, std::vector<int>(p.num_vars(), 1),
                                    polarization_cap);
}

PolynomialOracle partial_at_zero(const PolynomialOracle& p, int var) {
    const int m = p.num_vars();
    const int n = p.degree();
    if (var < 0 || var >= m)
        throw ValidationError("variable index out of range");
    if (p.is_zero() || n == 0)
        return PolynomialOracle::zero(m - 1, Provenance::derivative);

    // Embed a point of the reduced space, leaving slot `var` free.
    auto embed = [m, var](std::span<const double> z, double t) {
        std::vector<double> x(m);
        for (int j = 0, k = 0; j < m; ++j) x[j] = (j == var) ? t : z[k++];
        return x;
    };

    PolynomialOracle parent = p;
    auto eval = [parent, embed, n](std::span<const double> z) {
        double radius = 0.0;
        for (double v : z) radius = std::max(radius, std::abs(v));
        auto slice = [&](double t) { return parent(embed(z, t)); };
        auto coefs = interp::coefficients(slice, n, radius);
        return coefs[1];
    };

    PolynomialOracle::ExactEval exact;
    if (p.has_exact()) {
        auto embed_exact = [m, var](std::span<const Rat> z, const Rat& t) {
            std::vector<Rat> x(m);
            for (int j = 0, k = 0; j < m; ++j) x[j] = (j == var) ? t : z[k++];
            return x;
        };
        exact = [parent, embed_exact, n](std::span<const Rat> z) {
            auto slice = [&](const Rat& t) { return parent.exact(embed_exact(z, t)); };
            auto coefs = interp::coefficients_exact(slice, n);
            return coefs[1];
        };
    }

    PolynomialOracle out(m - 1, n - 1, Provenance::derivative, std::move(eval),
                         std::move(exact));
    // The slice can vanish identically (variable absent from every term).
    // With an exact channel the all-ones probe settles it; otherwise treat a
    // value drowned by the parent's scale as zero.
    if (p.has_exact()) {
        std::vector<Rat> ones(m - 1, Rat(1));
        if (out.has_exact() && out.exact(ones) == 0)
            return PolynomialOracle::zero(m - 1, Provenance::derivative);
    } else if (out.value_at_ones() <= 1e-12 * (1.0 + p.value_at_ones())) {
        return PolynomialOracle::zero(m - 1, Provenance::derivative);
    }
    return out;
}

PolynomialOracle derivative_oracle(const PolynomialOracle& p, int k,
                                   std::uint64_t budget) {
    const int m = p.num_vars();
    const int n = p.degree();
    if (k < 0 || k > m)
        throw ValidationError("derivative order must lie in [0, num_vars]");
    if (k > n)
        throw ValidationError("derivative order exceeds the polynomial degree");
    if (k == 0) return p;
    if (p.is_zero()) return PolynomialOracle::zero(m - k, Provenance::derivative);

    const std::uint64_t calls =
        (std::uint64_t{1} << k) * static_cast<std::uint64_t>(n + 1);
    if (k >= 63 || calls > budget) {
        std::ostringstream os;
        os << "derivative oracle needs 2^" << k << " * " << (n + 1)
           << " base evaluations per call, over the budget of " << budget;
        throw BudgetError(os.str());
    }

    // F(eps) = 2^-k sum_b (prod b) p(eps b (+) Y) is a polynomial in eps whose
    // eps^k coefficient is the mixed partial at zero in the first k slots.
    PolynomialOracle parent = p;
    auto eval = [parent, k, m, n](std::span<const double> y) {
        std::vector<double> x(m, 0.0);
        for (int j = k; j < m; ++j) x[j] = y[j - k];
        double radius = 1.0;
        for (double v : y) radius = std::max(radius, std::abs(v));
        std::vector<int> b(k);
        auto F = [&](double eps) {
            std::fill(b.begin(), b.end(), -1);
            long double acc = 0.0L;
            long double sign = (k % 2 == 0) ? 1.0L : -1.0L;
            for (int i = 0; i < k; ++i) x[i] = -eps;
            acc += sign * static_cast<long double>(parent(x));
            const std::uint64_t total = std::uint64_t{1} << k;
            for (std::uint64_t g = 1; g < total; ++g) {
                const int i = flipped_bit(g);
                b[i] = -b[i];
                x[i] = b[i] * eps;
                sign = -sign;
                acc += sign * static_cast<long double>(parent(x));
            }
            return static_cast<double>(acc / static_cast<long double>(total));
        };
        auto coefs = interp::coefficients(F, n, radius);
        return coefs[k];
    };

    PolynomialOracle::ExactEval exact;
    if (p.has_exact()) {
        exact = [parent, k, m, n](std::span<const Rat> y) {
            std::vector<Rat> x(m, Rat(0));
            for (int j = k; j < m; ++j) x[j] = y[j - k];
            std::vector<int> b(k);
            auto F = [&](const Rat& eps) {
                std::fill(b.begin(), b.end(), -1);
                Rat acc(0);
                int sign = (k % 2 == 0) ? 1 : -1;
                for (int i = 0; i < k; ++i) x[i] = -eps;
                acc += Rat(sign) * parent.exact(x);
                const std::uint64_t total = std::uint64_t{1} << k;
                for (std::uint64_t g = 1; g < total; ++g) {
                    const int i = flipped_bit(g);
                    b[i] = -b[i];
                    x[i] = Rat(b[i]) * eps;
                    sign = -sign;
                    acc += Rat(sign) * parent.exact(x);
                }
                return acc / rat_pow(Rat(2), static_cast<unsigned>(k));
            };
            auto coefs = interp::coefficients_exact(F, n);
            return coefs[k];
        };
    }

    PolynomialOracle out(m - k, n - k, Provenance::derivative, std::move(eval),
                         std::move(exact));
    if (p.has_exact()) {
        std::vector<Rat> ones(m - k, Rat(1));
        if (out.exact(ones) == 0)
            return PolynomialOracle::zero(m - k, Provenance::derivative);
    } else if (out.value_at_ones() <= 1e-12 * (1.0 + p.value_at_ones())) {
        return PolynomialOracle::zero(m - k, Provenance::derivative);
    }
    return out;
}

PolynomialOracle laplace_hybrid(const NonnegativeMatrix& A, std::vector<int> rows_s) {
    const int n = A.n();
    std::sort(rows_s.begin(), rows_s.end());
    if (std::adjacent_find(rows_s.begin(), rows_s.end()) != rows_s.end())
        throw ValidationError("row set contains a duplicate index");
    for (int r : rows_s)
        if (r < 0 || r >= n) throw ValidationError("row index out of range");
    const int k = static_cast<int>(rows_s.size());
    if (k == 0) return build_multilinear(A);

    std::vector<int> rows_c;
    for (int i = 0; i < n; ++i)
        if (!std::binary_search(rows_s.begin(), rows_s.end(), i)) rows_c.push_back(i);
    const int d = n - k;

    // One term per column subset T of size k: an exact permanent of the
    // eliminated block paired with the linear forms of the leftover columns.
    struct Term {
        double coef;
        Rat coef_exact;
        std::vector<std::vector<double>> forms;      // d forms over d variables
        std::vector<std::vector<Rat>> forms_exact;
    };
    std::vector<Term> terms;

    std::vector<int> T(k);
    for (int i = 0; i < k; ++i) T[i] = i;
    auto advance = [&]() -> bool {
        int i = k - 1;
        while (i >= 0 && T[i] == n - k + i) --i;
        if (i < 0) return false;
        ++T[i];
        for (int j = i + 1; j < k; ++j) T[j] = T[j - 1] + 1;
        return true;
    };
    do {
        std::vector<std::vector<Rat>> block(k, std::vector<Rat>(k));
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b) block[a][b] = A.at(rows_s[a], T[b]);
        Rat c = permanent_minor(block);
        if (c == 0) continue;
        Term term;
        term.coef_exact = c;
        term.coef = to_double(c);
        std::vector<bool> in_t(n, false);
        for (int j : T) in_t[j] = true;
        for (int j = 0; j < n; ++j) {
            if (in_t[j]) continue;
            std::vector<double> f(d);
            std::vector<Rat> fe(d);
            for (int a = 0; a < d; ++a) {
                fe[a] = A.at(rows_c[a], j);
                f[a] = to_double(fe[a]);
            }
            term.forms.push_back(std::move(f));
            term.forms_exact.push_back(std::move(fe));
        }
        terms.push_back(std::move(term));
    } while (advance());

    if (terms.empty()) return PolynomialOracle::zero(d, Provenance::laplace_hybrid);

    auto shared = std::make_shared<std::vector<Term>>(std::move(terms));
    auto eval = [shared, d](std::span<const double> y) {
        double total = 0.0;
        for (const Term& t : *shared) {
            double prod = t.coef;
            for (const auto& f : t.forms) {
                double s = 0.0;
                for (int a = 0; a < d; ++a) s += f[a] * y[a];
                prod *= s;
            }
            total += prod;
        }
        return total;
    };
    auto exact = [shared, d](std::span<const Rat> y) {
        Rat total(0);
        for (const Term& t : *shared) {
            Rat prod = t.coef_exact;
            for (const auto& f : t.forms_exact) {
                Rat s(0);
                for (int a = 0; a < d; ++a) s += f[a] * y[a];
                prod *= s;
            }
            total += prod;
        }
        return total;
    };
    return PolynomialOracle(d, d, Provenance::laplace_hybrid, std::move(eval),
                            std::move(exact));
}

double partial_at(const PolynomialOracle& p, std::span<const double> x, int var) {
    const int m = p.num_vars();
    const int n = p.degree();
    if (static_cast<int>(x.size()) != m)
        throw ValidationError("point has wrong dimension");
    if (var < 0 || var >= m)
        throw ValidationError("variable index out of range");
    if (p.is_zero() || n == 0) return 0.0;
    std::vector<double> pt(x.begin(), x.end());
    double radius = 0.0;
    for (double v : pt) radius = std::max(radius, std::abs(v));
    auto slice = [&](double t) {
        pt[var] = t;
        return p(pt);
    };
    double at = x[var];
    return interp::derivative_at(slice, n, radius, at);
}

std::vector<double> gradient_at(const PolynomialOracle& p, std::span<const double> x) {
    std::vector<double> g(p.num_vars());
    for (int i = 0; i < p.num_vars(); ++i) g[i] = partial_at(p, x, i);
    return g;
}

} // namespace polycap
