#include "polycap/structure.hpp"

#include "polycap/errors.hpp"
#include "polycap/hyperbolicity.hpp"
#include "polycap/interpolation.hpp"
#include "polycap/polynomials.hpp"
#include "polycap/rng.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>

namespace polycap {

namespace {

void check_mask(const PolynomialOracle& p, std::uint32_t mask) {
    const int m = p.num_vars();
    if (m > 31) throw BudgetError("bitmask support handling is limited to 31 variables");
    if (m < 31 && (mask >> m) != 0)
        throw ValidationError("mask references variables beyond the oracle");
}

} // namespace

int support_degree(const PolynomialOracle& p, std::uint32_t mask) {
    if (p.is_zero())
        throw ValidationError("support degree of the zero polynomial");
    check_mask(p, mask);
    const int m = p.num_vars();
    const int n = p.degree();
    if (mask == 0 || n == 0) return 0;

    if (p.has_exact()) {
        std::vector<Rat> x(m);
        auto slice = [&](const Rat& t) {
            for (int i = 0; i < m; ++i)
                x[i] = (mask >> i) & 1u ? t + 1 : Rat(1);
            return p.exact(x);
        };
        auto coefs = interp::coefficients_exact(slice, n);
        const int deg = interp::detected_degree_exact(coefs);
        return deg < 0 ? 0 : deg;
    }
    std::vector<double> x(m);
    auto slice = [&](double t) {
        for (int i = 0; i < m; ++i)
            x[i] = (mask >> i) & 1u ? t + 1.0 : 1.0;
        return p(x);
    };
    // Positive coefficients mean no cancellation can hide the top power, so a
    // relative threshold on interpolated coefficients is a safe degree test.
    auto coefs = interp::coefficients(slice, n, 1.0);
    const int deg = interp::detected_degree(coefs, 1e-9);
    return deg < 0 ? 0 : deg;
}

SupportTable::SupportTable(PolynomialOracle p) : p_(std::move(p)), n_(p_.num_vars()) {
    if (n_ > 22)
        throw BudgetError("support table limited to 22 variables (4M masks)");
    cache_.assign(std::size_t{1} << n_, -2);
}

int SupportTable::operator()(std::uint32_t mask) const {
    int& slot = cache_[mask];
    if (slot == -2) slot = support_degree(p_, mask);
    return slot;
}

int rank_at(const PolynomialOracle& p, std::span<const double> X) {
    const int m = p.num_vars();
    if (static_cast<int>(X.size()) != m)
        throw ValidationError("point has wrong dimension");

    bool indicator = true;
    std::uint32_t mask = 0;
    for (int i = 0; i < m && indicator; ++i) {
        if (std::abs(X[i] - 1.0) <= 1e-12)
            mask |= 1u << i;
        else if (std::abs(X[i]) > 1e-12)
            indicator = false;
    }
    if (indicator && m <= 31) return support_degree(p, mask);

    std::vector<double> ones(m, 1.0);
    RootReport rep = restriction_roots(p, X, ones);
    // Counting nonzero roots by magnitude is hopeless when noise splits a
    // multiple root at 0 into a star; the trailing-coefficient order is the
    // stable way to read off the same number.
    return rep.degree - rep.vanish_order;
}

SubmodularityReport is_submodular(const SupportTable& S, long long sample_budget,
                                  std::uint64_t seed) {
    const int n = S.n();
    SubmodularityReport rep;
    auto violated = [&](std::uint32_t mask, int i, int j) {
        const std::uint32_t mi = mask | (1u << i);
        const std::uint32_t mj = mask | (1u << j);
        const int lhs = S(mi) + S(mj);
        const int rhs = S(mi | mj) + S(mask);
        if (lhs < rhs) {
            rep.submodular = false;
            rep.witness_mask = mask;
            rep.witness_i = i;
            rep.witness_j = j;
            return true;
        }
        return false;
    };

    if (n <= 20) {
        const std::uint32_t end = std::uint32_t{1} << n;
        for (std::uint32_t mask = 0; mask < end; ++mask)
            for (int i = 0; i < n; ++i) {
                if ((mask >> i) & 1u) continue;
                for (int j = i + 1; j < n; ++j) {
                    if ((mask >> j) & 1u) continue;
                    ++rep.checks;
                    if (violated(mask, i, j)) return rep;
                }
            }
        return rep;
    }

    rep.exhaustive = false;
    Rng rng(seed);
    const std::uint32_t all = (std::uint32_t{1} << n) - 1;
    for (long long t = 0; t < sample_budget; ++t) {
        std::uint32_t mask = static_cast<std::uint32_t>(rng.gen()) & all;
        const int i = static_cast<int>(rng.index(n));
        int j = static_cast<int>(rng.index(n));
        if (i == j) continue;
        mask &= ~((1u << i) | (1u << j));
        ++rep.checks;
        if (violated(mask, std::min(i, j), std::max(i, j))) return rep;
    }
    return rep;
}

SupportMembership in_support(const PolynomialOracle& p, const std::vector<int>& r) {
    const int m = p.num_vars();
    const int n = p.degree();
    if (static_cast<int>(r.size()) != m)
        throw ValidationError("exponent vector length does not match variable count");
    long long total = 0;
    for (int e : r) {
        if (e < 0) throw ValidationError("exponent vector has a negative entry");
        total += e;
    }
    if (total != n)
        throw ValidationError("exponent vector does not sum to the degree");

    SupportTable S(p);
    SupportMembership out;
    const std::uint32_t end = std::uint32_t{1} << m;
    for (std::uint32_t mask = 1; mask < end; ++mask) {
        long long lhs = 0;
        for (int i = 0; i < m; ++i)
            if ((mask >> i) & 1u) lhs += r[i];
        const int rhs = S(mask);
        if (lhs > rhs) {
            out.inside = false;
            out.witness_mask = mask;
            out.lhs = lhs;
            out.rhs = rhs;
            return out;
        }
    }
    return out;
}

PolytopeMembership in_newton_polytope(const PolynomialOracle& p,
                                      std::span<const double> x, double tol) {
    const int m = p.num_vars();
    const int n = p.degree();
    if (static_cast<int>(x.size()) != m)
        throw ValidationError("point has wrong dimension");
    double total = 0.0;
    for (double v : x) total += v;
    if (std::abs(total - n) > 1e-9 * (1.0 + std::abs(total)))
        throw ValidationError("coordinates must sum to the degree");

    PolytopeMembership out;
    out.min_slack = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
        if (x[i] < out.min_slack) {
            out.min_slack = x[i];
            out.witness_mask = 0;
        }
    }

    SupportTable S(p);
    const std::uint32_t end = std::uint32_t{1} << m;
    for (std::uint32_t mask = 1; mask < end; ++mask) {
        double lhs = 0.0;
        for (int i = 0; i < m; ++i)
            if ((mask >> i) & 1u) lhs += x[i];
        const double slack = S(mask) - lhs;
        if (slack < out.min_slack) {
            out.min_slack = slack;
            out.witness_mask = mask;
        }
    }
    out.inside = out.min_slack >= -tol;
    return out;
}

IndecomposabilityReport is_indecomposable(const PolynomialOracle& p) {
    if (p.is_zero())
        throw ValidationError("the zero polynomial is not screened");
    if (p.num_vars() != p.degree())
        throw ValidationError("indecomposability screen needs degree == variable count");
    const int n = p.num_vars();
    IndecomposabilityReport rep;
    if (n <= 1) return rep;

    SupportTable S(p);
    const std::uint32_t end = std::uint32_t{1} << n;
    for (std::uint32_t mask = 1; mask + 1 < end; ++mask) {
        const int size = std::popcount(mask);
        const int deg = S(mask);
        if (deg <= size) {
            rep.indecomposable = false;
            rep.witness_mask = mask;
            rep.witness_size = size;
            rep.witness_degree = deg;
            return rep;
        }
    }
    return rep;
}

std::optional<Decomposition> detect_decomposition(const PolynomialOracle& p,
                                                  std::uint64_t seed, double rel_tol) {
    IndecomposabilityReport rep = is_indecomposable(p);
    if (rep.indecomposable) return std::nullopt;

    const int m = p.num_vars();
    Decomposition dec;
    for (int i = 0; i < m; ++i) {
        if ((rep.witness_mask >> i) & 1u)
            dec.part.push_back(i);
        else
            dec.complement.push_back(i);
    }

    // Multiplicativity across the split:  p(x) p(1) = p(x_A, 1) p(1, x_rest).
    Rng rng(seed);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> x(m), ya(m, 1.0), yc(m, 1.0);
        for (int i = 0; i < m; ++i) {
            x[i] = rng.uniform(0.5, 1.5);
            if ((rep.witness_mask >> i) & 1u)
                ya[i] = x[i];
            else
                yc[i] = x[i];
        }
        const double lhs = p(x) * p.value_at_ones();
        const double rhs = p(ya) * p(yc);
        const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
        worst = std::max(worst, std::abs(lhs - rhs) / scale);
    }
    dec.worst_residual = worst;
    dec.verified = worst <= rel_tol;
    return dec;
}

bool indecomposable_via_pair_coefficients(const PolynomialOracle& p) {
    if (p.is_zero())
        throw ValidationError("the zero polynomial is not screened");
    if (p.num_vars() != p.degree())
        throw ValidationError("pair-coefficient screen needs degree == variable count");
    const int n = p.num_vars();
    if (n <= 1) return true;

    std::vector<int> r(n, 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            r[i] = 2;
            r[j] = 0;
            bool positive;
            if (p.has_exact()) {
                positive = taylor_coefficient_exact(p, r) > 0;
            } else {
                positive = taylor_coefficient(p, r) > 1e-12 * (1.0 + p.value_at_ones());
            }
            r[i] = 1;
            r[j] = 1;
            if (!positive) return false;
        }
    return true;
}

} // namespace polycap
