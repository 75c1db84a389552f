#include "polycap/verify.hpp"

#include "polycap/bounds.hpp"
#include "polycap/capacity.hpp"
#include "polycap/errors.hpp"
#include "polycap/exact.hpp"
#include "polycap/hyperbolicity.hpp"
#include "polycap/io.hpp"
#include "polycap/polynomials.hpp"
#include "polycap/rng.hpp"
#include "polycap/structure.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace polycap {

namespace {

struct CheckFail {
    std::string msg;
};

[[noreturn]] void fail(const std::string& msg) { throw CheckFail{msg}; }

void require(bool ok, const std::string& msg) {
    if (!ok) fail(msg);
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

bool close_rel(double a, double b, double rel) {
    return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

// ---- instance generators ------------------------------------------------

NonnegativeMatrix random_positive(Rng& rng, int n, double lo = 0.25, double hi = 2.0) {
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(n),
                                          std::vector<double>(static_cast<std::size_t>(n)));
    for (auto& r : rows)
        for (auto& v : r) v = rng.uniform(lo, hi);
    return NonnegativeMatrix::from_rows(rows);
}

// 0-1 matrix with every row and column hit (so the product oracle is valid
// and no variable is absent).
NonnegativeMatrix random_01(Rng& rng, int n, double density = 0.55) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<std::vector<double>> rows(static_cast<std::size_t>(n),
                                              std::vector<double>(static_cast<std::size_t>(n), 0.0));
        for (auto& r : rows)
            for (auto& v : r) v = (rng.uniform01() < density) ? 1.0 : 0.0;
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            double rs = 0, cs = 0;
            for (int j = 0; j < n; ++j) rs += rows[i][j], cs += rows[j][i];
            ok = rs > 0 && cs > 0;
        }
        if (ok) return NonnegativeMatrix::from_rows(rows);
    }
    return NonnegativeMatrix::identity(n);
}

NonnegativeMatrix random_01_positive_per(Rng& rng, int n) {
    for (int attempt = 0; attempt < 2000; ++attempt) {
        NonnegativeMatrix A = random_01(rng, n);
        if (permanent_rational(A) > 0) return A;
    }
    return NonnegativeMatrix::identity(n);
}

NonnegativeMatrix random_doubly_stochastic(Rng& rng, int n) {
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(n),
                                          std::vector<double>(static_cast<std::size_t>(n)));
    for (auto& r : rows)
        for (auto& v : r) v = std::exp(rng.uniform(-1.0, 1.0));
    ScalingResult s = sinkhorn_scale(NonnegativeMatrix::from_rows(rows));
    return NonnegativeMatrix::from_rows(s.B);
}

HermitianTuple random_psd_tuple(Rng& rng, int n, bool complex_entries) {
    std::vector<Eigen::MatrixXcd> mats;
    mats.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        Eigen::MatrixXcd G(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                G(i, j) = std::complex<double>(rng.normal(),
                                               complex_entries ? rng.normal() : 0.0);
        Eigen::MatrixXcd M = G.adjoint() * G / double(n);
        M = ((M + M.adjoint()) / 2.0).eval();
        mats.push_back(std::move(M));
    }
    return HermitianTuple(std::move(mats));
}

// Random element of Hom_+(n, n) with a handful of terms; variable 1 always
// appears and every variable shows up somewhere.
SparsePolynomial random_square_sparse(Rng& rng, int n, int extra_terms = 4) {
    SparsePolynomial::Terms terms;
    std::vector<int> diag(static_cast<std::size_t>(n), 1);
    terms[diag] = rat_from_double(rng.uniform(0.5, 2.0));
    for (int t = 0; t < extra_terms; ++t) {
        std::vector<int> e(static_cast<std::size_t>(n), 0);
        for (int u = 0; u < n; ++u) e[rng.index(static_cast<std::uint64_t>(n))]++;
        terms[e] += rat_from_double(rng.uniform(0.5, 2.0));
    }
    return SparsePolynomial(n, terms);
}

std::vector<double> random_point(Rng& rng, int m, double lo, double hi) {
    std::vector<double> x(static_cast<std::size_t>(m));
    for (auto& v : x) v = rng.uniform(lo, hi);
    return x;
}

std::vector<double> gaussian_point(Rng& rng, int m) {
    std::vector<double> x(static_cast<std::size_t>(m));
    for (auto& v : x) v = rng.normal();
    return x;
}

// A few POS-hyperbolic oracles of mixed provenance for the sampling suites.
std::vector<PolynomialOracle> hyperbolic_zoo(Rng& rng, int count) {
    std::vector<PolynomialOracle> zoo;
    zoo.push_back(build_multilinear(NonnegativeMatrix::uniform(3)));
    zoo.push_back(build_multilinear(random_positive(rng, 4)));
    zoo.push_back(build_multilinear(random_01_positive_per(rng, 4)));
    zoo.push_back(build_determinantal(random_psd_tuple(rng, 3, false)));
    zoo.push_back(build_determinantal(random_psd_tuple(rng, 3, true)));
    zoo.push_back(build_sparse(SparsePolynomial::multilinear_expansion(random_positive(rng, 3))));
    while (static_cast<int>(zoo.size()) < count)
        zoo.push_back(build_multilinear(random_positive(rng, 3 + static_cast<int>(rng.index(3)))));
    zoo.resize(static_cast<std::size_t>(count), zoo.front());
    return zoo;
}

// ---- suite runner --------------------------------------------------------

struct Runner {
    bool full;
    std::uint64_t seed;
    std::vector<CheckResult> results;

    void run(const std::string& name, const std::function<std::string()>& body) {
        CheckResult r;
        r.name = name;
        try {
            r.detail = body();
            r.passed = true;
        } catch (const CheckFail& f) {
            r.passed = false;
            r.detail = f.msg;
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("unexpected exception: ") + e.what();
        }
        results.push_back(std::move(r));
    }
};

// ---- individual suites ---------------------------------------------------

std::string euler_identity(Rng& rng, bool full) {
    auto zoo = hyperbolic_zoo(rng, 6);
    const int pts = full ? 20 : 5;
    int checked = 0;
    for (const auto& p : zoo) {
        for (int t = 0; t < pts; ++t) {
            auto x = random_point(rng, p.num_vars(), 0.3, 2.0);
            auto g = gradient_at(p, x);
            double lhs = 0;
            for (int i = 0; i < p.num_vars(); ++i) lhs += x[static_cast<std::size_t>(i)] * g[static_cast<std::size_t>(i)];
            double rhs = p.degree() * p(x);
            require(close_rel(lhs, rhs, 1e-8),
                    "degree identity failed: sum x_i d_i p = " + fmt(lhs) + " vs n p = " + fmt(rhs));
            ++checked;
        }
    }
    return std::to_string(checked) + " gradient/degree identities within 1e-8";
}

std::string slice_decomposition(Rng& rng, bool full) {
    const int pts = full ? 10 : 4;
    // First column supported on a single row keeps the product form degree 1
    // in x_1; with a full column the variable shows up in every factor.
    std::vector<std::vector<double>> rows(4, std::vector<double>(4));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            rows[i][j] = (j == 0 && i != 0) ? 0.0 : 0.25 + 1.75 * rng.uniform01();
    NonnegativeMatrix A = NonnegativeMatrix::from_rows(rows);
    PolynomialOracle p = build_multilinear(A);
    PolynomialOracle p0 = partial_at_zero(p, 0);
    int checked = 0;
    for (int t = 0; t < pts; ++t) {
        auto rest = random_point(rng, 3, 0.3, 2.0);
        std::vector<double> x(4);
        std::copy(rest.begin(), rest.end(), x.begin() + 1);
        // multilinear in x_1, so p - x_1 * (d p / d x_1 at 0) is x_1-free
        auto residual = [&](double x1) {
            x[0] = x1;
            return p(x) - x1 * p0(rest);
        };
        double r0 = residual(0.0), ra = residual(0.7), rb = residual(1.9);
        double scale = 1.0 + std::abs(r0);
        require(std::abs(ra - r0) <= 1e-9 * scale && std::abs(rb - r0) <= 1e-9 * scale,
                "residual of the first-variable split still depends on x_1: " + fmt(ra - r0));
        ++checked;
    }
    return std::to_string(checked) + " first-variable splits exact for a product form";
}

std::string polarization_taylor(Rng& rng, bool full) {
    int checked = 0;
    for (int inst = 0; inst < (full ? 3 : 2); ++inst) {
        int n = 3;
        SparsePolynomial sp = SparsePolynomial::multilinear_expansion(random_positive(rng, n));
        PolynomialOracle p = build_sparse(sp);
        for (const auto& [r, coef] : sp.terms()) {
            double got = taylor_coefficient(p, r);
            require(close_rel(got, to_double(coef), 1e-9),
                    "polarization coefficient " + fmt(got) + " vs expansion " + fmt(to_double(coef)));
            Rat got_exact = taylor_coefficient_exact(p, r);
            require(got_exact == coef, "exact polarization coefficient mismatch");
            ++checked;
        }
    }
    return std::to_string(checked) + " coefficients recovered from polarization, float and exact";
}

std::string derivative_support_monotone(Rng& rng, bool full) {
    int checked = 0;
    for (int inst = 0; inst < (full ? 8 : 3); ++inst) {
        const int n = 4;
        SparsePolynomial sp = random_square_sparse(rng, n);
        PolynomialOracle p = build_sparse(sp);
        PolynomialOracle p1 = partial_at_zero(p, 0);
        if (p1.is_zero()) continue;
        SupportTable Sp(p), S1(p1);
        for (std::uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
            int lhs = S1(mask);
            int rhs = std::min(n - 1, Sp(mask << 1));
            require(lhs <= rhs, "derivative support degree grew: " + std::to_string(lhs) +
                                    " > " + std::to_string(rhs));
            ++checked;
        }
    }
    return std::to_string(checked) + " subset degrees monotone under the first-variable derivative";
}

std::string derivative_consistency(Rng& rng, bool full) {
    const int pts = full ? 10 : 6;
    int checked = 0;
    std::vector<PolynomialOracle> ps = {
        build_multilinear(random_positive(rng, 4)),
        build_sparse(SparsePolynomial::multilinear_expansion(random_positive(rng, 3)))};
    for (const auto& p : ps) {
        PolynomialOracle d1 = derivative_oracle(p, 1);
        PolynomialOracle s1 = partial_at_zero(p, 0);
        for (int t = 0; t < pts; ++t) {
            auto y = random_point(rng, p.num_vars() - 1, 0.2, 1.8);
            require(close_rel(d1(y), s1(y), 1e-8),
                    "two derivative paths disagree: " + fmt(d1(y)) + " vs " + fmt(s1(y)));
            ++checked;
        }
    }
    // full-order derivative is the constant equal to the top coefficient
    NonnegativeMatrix J3 = NonnegativeMatrix::uniform(3);
    PolynomialOracle pj = build_multilinear(J3);
    PolynomialOracle all3 = derivative_oracle(pj, 3);
    double per = permanent_exact(J3).value;
    std::vector<double> empty;
    require(close_rel(all3(empty), per, 1e-10),
            "full derivative constant " + fmt(all3(empty)) + " vs permanent " + fmt(per));
    return std::to_string(checked) + " points agree across derivative implementations";
}

std::string laplace_permanent(Rng& rng, bool full) {
    NonnegativeMatrix A = random_positive(rng, 4, 0.3, 1.7);
    Rat per = permanent_rational(A);
    int checked = 0;
    std::vector<std::vector<int>> splits = {{0}, {0, 2}};
    if (full) splits.push_back({1, 2, 3});
    for (const auto& S : splits) {
        PolynomialOracle q = laplace_hybrid(A, S);
        require(q.num_vars() == 4 - static_cast<int>(S.size()), "wrong variable count after the split");
        Rat top = top_coefficient_exact(q);
        require(top == per, "split oracle coefficient " + fmt(to_double(top)) +
                                " vs permanent " + fmt(to_double(per)));
        ++checked;
    }
    // empty split returns the plain product form
    PolynomialOracle q0 = laplace_hybrid(A, {});
    PolynomialOracle p = build_multilinear(A);
    for (int t = 0; t < 3; ++t) {
        auto x = random_point(rng, 4, 0.2, 2.0);
        require(close_rel(q0(x), p(x), 1e-12), "empty split changed the oracle");
    }
    // identity matrix, first row split: surviving oracle is y_1 y_2
    PolynomialOracle qi = laplace_hybrid(NonnegativeMatrix::identity(3), {0});
    require(qi.num_vars() == 2 && qi.degree() == 2, "identity split has wrong shape");
    require(close_rel(qi({1.0, 1.0}), 1.0, 1e-12) && close_rel(qi({2.0, 3.0}), 6.0, 1e-12),
            "identity split oracle is not the product of the surviving variables");
    return std::to_string(checked) + " splits reproduce the permanent exactly";
}

std::string capacity_certificates(Rng& rng, bool full) {
    std::vector<PolynomialOracle> ps = {
        build_multilinear(NonnegativeMatrix::uniform(3)),
        build_multilinear(random_positive(rng, 4)),
        build_sparse(SparsePolynomial::multilinear_expansion(random_positive(rng, 3)))};
    const int probes = full ? 200 : 60;
    int checked = 0;
    for (const auto& p : ps) {
        CapacityResult c = capacity(p, 1e-6);
        require(c.status == "converged", "solve did not converge: " + c.status);
        require(c.gap_bound >= 0 && c.gap_bound <= 1e-6 + 1e-12,
                "certificate gap " + fmt(c.gap_bound) + " outside [0, tol]");
        double sum = 0;
        for (double y : c.minimizer) sum += y;
        require(std::abs(sum) <= 1e-9, "minimizer left the log hyperplane, sum = " + fmt(sum));
        std::vector<double> x(c.minimizer.size());
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::exp(c.minimizer[i]);
        require(close_rel(p(x), c.cap_estimate, 1e-12), "estimate is not the value at the minimizer");
        std::vector<double> ones(static_cast<std::size_t>(p.num_vars()), 1.0);
        require(c.cap_estimate <= p(ones) * (1 + 1e-12), "estimate above the all-ones value");
        // no probe on the hyperplane may undercut the certified lower value
        const double lower = c.cap_estimate * std::exp(-c.gap_bound);
        const int m = p.num_vars();
        for (int t = 0; t < probes; ++t) {
            auto y = gaussian_point(rng, m);
            double mean = 0;
            for (double v : y) mean += v;
            mean /= m;
            double norm = 0;
            for (auto& v : y) v -= mean, norm += v * v;
            norm = std::sqrt(std::max(norm, 1e-30));
            double r = rng.uniform(0.0, 2.0) / norm;
            std::vector<double> probe(static_cast<std::size_t>(m));
            for (int i = 0; i < m; ++i) probe[static_cast<std::size_t>(i)] = std::exp(y[static_cast<std::size_t>(i)] * r);
            double val = p(probe);
            require(val >= lower * (1 - 1e-9),
                    "probe value " + fmt(val) + " undercuts certified lower value " + fmt(lower));
            require(c.cap_estimate <= val * (1 + 2e-6), "probe beat the converged estimate");
            ++checked;
        }
    }
    return std::to_string(checked) + " hyperplane probes consistent with the certificates";
}

std::string bound_chain(Rng& rng, bool full) {
    int checked = 0;
    const int mats = full ? 40 : 8;
    for (int t = 0; t < mats; ++t) {
        const int n = 3 + static_cast<int>(rng.index(full ? 3 : 2));
        NonnegativeMatrix A = (t % 2 == 0) ? random_01_positive_per(rng, n) : random_positive(rng, n);
        Rat per = permanent_rational(A);
        BoundReport b = permanent_lower_bound(A);
        double perd = to_double(per);
        require(perd >= b.coefficient_lower * (1 - 1e-9),
                "permanent " + fmt(perd) + " below certified lower bound " + fmt(b.coefficient_lower));
        require(perd <= b.coefficient_upper * (1 + 1e-9),
                "permanent " + fmt(perd) + " above capacity estimate " + fmt(b.coefficient_upper));
        require(b.factor > 0 && b.factor <= 1 + 1e-12, "damping factor outside (0,1]");
        ++checked;
    }
    // sparse instance with an exactly known coefficient
    SparsePolynomial sp = SparsePolynomial::multilinear_expansion(random_positive(rng, 3));
    PolynomialOracle p = build_sparse(sp);
    std::vector<int> ones_exp(3, 1);
    double C = to_double(sp.coefficient(ones_exp));
    CapacityResult c = capacity(p, 1e-8);
    SupportTable S(p);
    std::vector<int> degs;
    for (int i = 0; i < 3; ++i) degs.push_back(S(1u << i));
    FactorResult f = generalized_factor(degs);
    require(C <= c.cap_estimate * (1 + 1e-6), "coefficient exceeds the capacity estimate");
    require(C >= to_double(f.factor) * c.cap_estimate * std::exp(-c.gap_bound) * (1 - 1e-9),
            "coefficient fell below the damped capacity lower value");
    return std::to_string(checked + 1) + " instances kept the coefficient inside the certified bracket";
}

std::string coefficient_upper(Rng& rng, bool full) {
    int checked = 0;
    for (int t = 0; t < (full ? 10 : 4); ++t) {
        const int n = 3 + static_cast<int>(rng.index(2));
        PolynomialOracle p = (t % 2 == 0)
                                 ? build_multilinear(random_positive(rng, n))
                                 : build_determinantal(random_psd_tuple(rng, 3, t % 4 == 1));
        double C = top_coefficient(p);
        CapacityResult c = capacity(p, 1e-7);
        require(C <= c.cap_estimate * (1 + 1e-6),
                "top coefficient " + fmt(C) + " above capacity estimate " + fmt(c.cap_estimate));
        ++checked;
    }
    return std::to_string(checked) + " top coefficients below their capacity estimates";
}

std::string derivative_capacity_monotone(Rng& rng, bool full) {
    int checked = 0;
    const int mul_count = full ? 6 : 3, det_count = full ? 3 : 1;
    for (int t = 0; t < mul_count + det_count; ++t) {
        PolynomialOracle p = (t < mul_count)
                                 ? build_multilinear(random_positive(rng, 4))
                                 : build_determinantal(random_psd_tuple(rng, 3, false));
        PolynomialOracle p1 = partial_at_zero(p, 0);
        if (p1.is_zero()) continue;
        int rank1 = support_degree(p, 1u);
        CapacityResult cp = capacity(p, 1e-8);
        CapacityResult c1 = capacity(p1, 1e-8);
        require(cp.status == "converged" && c1.status == "converged", "capacity solve failed");
        double floor_val = g_factor(rank1) * cp.cap_estimate * std::exp(-cp.gap_bound);
        require(c1.cap_estimate * std::exp(c1.gap_bound) >= floor_val * (1 - 1e-5),
                "derivative capacity " + fmt(c1.cap_estimate) + " under the damped floor " + fmt(floor_val));
        ++checked;
    }
    return std::to_string(checked) + " derivative capacities above the single-variable damping floor";
}

std::string scaling_equivariance(Rng& rng, bool full) {
    int checked = 0;
    for (int t = 0; t < (full ? 5 : 2); ++t) {
        const int n = 3 + static_cast<int>(rng.index(2));
        NonnegativeMatrix A = random_positive(rng, n);
        std::vector<double> d1 = random_point(rng, n, 0.5, 2.0);
        std::vector<double> d2 = random_point(rng, n, 0.5, 2.0);
        std::vector<std::vector<double>> rows(static_cast<std::size_t>(n),
                                              std::vector<double>(static_cast<std::size_t>(n)));
        double prod = 1.0;
        for (int i = 0; i < n; ++i) prod *= d1[static_cast<std::size_t>(i)] * d2[static_cast<std::size_t>(i)];
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    d1[static_cast<std::size_t>(i)] * A(i, j) * d2[static_cast<std::size_t>(j)];
        double ca = capacity(build_multilinear(A), 1e-9).cap_estimate;
        double cs = capacity(build_multilinear(NonnegativeMatrix::from_rows(rows)), 1e-9).cap_estimate;
        require(close_rel(cs, prod * ca, 1e-6),
                "diagonal scaling moved the capacity: " + fmt(cs) + " vs " + fmt(prod * ca));
        ++checked;
    }
    return std::to_string(checked) + " diagonal scalings carried through the capacity";
}

std::string sinkhorn_roundtrip(Rng& rng, bool full) {
    int checked = 0;
    for (int t = 0; t < (full ? 10 : 3); ++t) {
        const int n = 3 + static_cast<int>(rng.index(3));
        NonnegativeMatrix A = random_positive(rng, n);
        ScalingResult s = sinkhorn_scale(A);
        require(s.converged, "balancing did not converge");
        require(s.max_defect <= 1e-10 * 1.5, "row/column residual " + fmt(s.max_defect));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double back = s.d1[static_cast<std::size_t>(i)] *
                              s.B[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                              s.d2[static_cast<std::size_t>(j)];
                require(close_rel(back, A(i, j), 1e-8), "scaling reconstruction drifted");
            }
        double cap = capacity(build_multilinear(A), 1e-9).cap_estimate;
        require(close_rel(s.cap_product, cap, 1e-6),
                "scaling product " + fmt(s.cap_product) + " vs capacity " + fmt(cap));
        ++checked;
    }
    return std::to_string(checked) + " balancings reconstructed and matched the capacity";
}

std::string doubly_stochastic_form(Rng& rng, bool full) {
    int checked = 0;
    for (int t = 0; t < (full ? 4 : 2); ++t) {
        PolynomialOracle p = build_multilinear(random_positive(rng, 4));
        StochasticForm sf = scale_to_doubly_stochastic(p);
        require(sf.defect <= 1e-6, "scaled form still has derivative defect " + fmt(sf.defect));
        std::vector<double> ones(4, 1.0);
        require(close_rel(sf.q(ones), 1.0, 1e-9), "scaled form is not normalized at the ones point");
        require(close_rel(ds_defect(sf.q), sf.defect, 1e-9 + 1e-6), "reported defect disagrees");
        ++checked;
    }
    return std::to_string(checked) + " conjugated forms normalized with unit derivatives";
}

std::string grid_vs_solver(Rng& rng, bool full) {
    int checked = 0;
    for (int t = 0; t < (full ? 4 : 2); ++t) {
        PolynomialOracle p = (t % 2 == 0)
                                 ? build_multilinear(random_positive(rng, 3))
                                 : build_sparse(SparsePolynomial::multilinear_expansion(
                                       random_positive(rng, 3)));
        double grid = capacity_grid(p, 3, 7, 2.0);
        double est = capacity(p, 1e-9).cap_estimate;
        require(grid >= est * (1 - 1e-8), "grid found a value below the converged solver");
        require(est <= grid * (1 + 1e-8), "solver failed to match the grid incumbent");
        ++checked;
    }
    return std::to_string(checked) + " grid searches dominated by the solver";
}

std::string vdw_product_identity(Rng&, bool) {
    for (int n = 1; n <= 20; ++n) {
        Rat prod(1);
        for (int k = 1; k <= n; ++k) prod *= g_factor_exact(k);
        Rat direct = Rat(factorial(static_cast<unsigned>(n))) / rat_pow(Rat(n), static_cast<unsigned>(n));
        require(prod == vdw_factor(n), "damping product disagrees with the floor factor at n = " +
                                           std::to_string(n));
        require(prod == direct, "damping product is not n!/n^n at n = " + std::to_string(n));
    }
    return "product of per-step factors equals n!/n^n exactly for n = 1..20";
}

std::string g_monotone(Rng&, bool) {
    require(g_factor_exact(0) == 1 && g_factor_exact(1) == 1, "g(0), g(1) must be 1");
    for (int k = 1; k < 50; ++k)
        require(k == 1 ? g_factor_exact(2) < g_factor_exact(1)
                       : g_factor_exact(k + 1) < g_factor_exact(k),
                "damping factor not strictly decreasing at k = " + std::to_string(k));
    for (int k = 0; k <= 50; ++k)
        require(close_rel(g_factor(k), to_double(g_factor_exact(k)), 1e-14),
                "float and exact damping factors disagree at k = " + std::to_string(k));
    return "damping factor strictly decreasing on 1..50, float path matches exact";
}

std::string bound_sandwich(Rng& rng, bool full) {
    int checked = 0;
    // exhaustive over tiny 0-1 matrices with positive permanent
    const int n0 = 2;
    for (std::uint32_t bits = 0; bits < (1u << (n0 * n0)); ++bits) {
        std::vector<std::vector<double>> rows(n0, std::vector<double>(n0, 0.0));
        for (int i = 0; i < n0 * n0; ++i)
            rows[static_cast<std::size_t>(i / n0)][static_cast<std::size_t>(i % n0)] = (bits >> i) & 1 ? 1.0 : 0.0;
        bool rows_ok = true;
        for (int i = 0; i < n0; ++i) {
            double rs = 0, cs = 0;
            for (int j = 0; j < n0; ++j) rs += rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                                         cs += rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
            if (rs == 0 || cs == 0) rows_ok = false;
        }
        if (!rows_ok) continue;
        NonnegativeMatrix A = NonnegativeMatrix::from_rows(rows);
        Rat per = permanent_rational(A);
        if (per == 0) continue;
        BoundReport b = permanent_lower_bound(A);
        double perd = to_double(per);
        require(perd >= b.coefficient_lower * (1 - 1e-9) && perd <= b.coefficient_upper * (1 + 1e-9),
                "2x2 bracket missed the permanent");
        ++checked;
    }
    const int samples = full ? 150 : 40;
    for (int t = 0; t < samples; ++t) {
        const int n = 3 + static_cast<int>(rng.index(full ? 3 : 2));
        NonnegativeMatrix A = random_01_positive_per(rng, n);
        Rat per = permanent_rational(A);
        BoundReport b = permanent_lower_bound(A);
        double perd = to_double(per);
        require(perd >= b.coefficient_lower * (1 - 1e-9) && perd <= b.coefficient_upper * (1 + 1e-9),
                "bracket missed the permanent for a 0-1 matrix, n = " + std::to_string(n));
        ++checked;
    }
    return std::to_string(checked) + " 0-1 permanents inside their certified brackets";
}

std::string ordering_dominance(Rng& rng, bool full) {
    const int profiles = full ? 1000 : 200;
    int checked = 0;
    for (int t = 0; t < profiles; ++t) {
        const int n = 2 + static_cast<int>(rng.index(11));
        std::vector<int> S(static_cast<std::size_t>(n));
        for (auto& s : S) s = 1 + static_cast<int>(rng.index(static_cast<std::uint64_t>(n)));
        FactorResult best = generalized_factor(S, "best");
        FactorResult ident = generalized_factor(S, "identity");
        require(best.factor >= ident.factor, "search returned a worse ordering than identity");
        std::vector<int> sorted = S;
        std::sort(sorted.begin(), sorted.end());
        FactorResult greedy = generalized_factor(sorted, "identity");
        require(best.factor >= greedy.factor, "search lost to the sorted ordering");
        if (n <= 8) {
            // exhaustive search really is the max over all orderings
            std::vector<int> perm(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
            Rat max_seen(0);
            do {
                std::vector<int> arranged(static_cast<std::size_t>(n));
                for (int i = 0; i < n; ++i) arranged[static_cast<std::size_t>(i)] = S[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
                Rat f = generalized_factor(arranged, "identity").factor;
                if (f > max_seen) max_seen = f;
            } while (std::next_permutation(perm.begin(), perm.end()) && t % 37 == 0);
            if (t % 37 == 0)
                require(best.factor == max_seen, "search missed the best ordering");
        }
        ++checked;
    }
    // uniform profiles collapse to the closed forms
    for (int n = 2; n <= 10; ++n) {
        std::vector<int> all_n(static_cast<std::size_t>(n), n);
        FactorResult f = generalized_factor(all_n);
        require(f.factor == vdw_factor(n) && f.formula == "uniform-floor",
                "full-support profile must give the n!/n^n floor");
        for (int k = 1; k < n; ++k) {
            std::vector<int> all_k(static_cast<std::size_t>(n), k);
            FactorResult fk = generalized_factor(all_k);
            Rat expect = rat_pow(g_factor_exact(k), static_cast<unsigned>(n - k)) *
                         Rat(factorial(static_cast<unsigned>(k))) /
                         rat_pow(Rat(k), static_cast<unsigned>(k));
            require(fk.factor == expect && fk.formula == "uniform-support",
                    "uniform profile factor mismatch at k = " + std::to_string(k));
        }
    }
    return std::to_string(checked) + " random profiles ordered no worse than identity";
}

std::string schrijver_sharper(Rng&, bool) {
    for (int n = 1; n <= 10; ++n)
        for (int k = 1; k <= n; ++k) {
            RegularComparison rc = schrijver_comparison(k, n);
            require(rc.support_wins_or_ties && rc.support_based >= rc.classic,
                    "support-based factor lost at k = " + std::to_string(k) + ", n = " + std::to_string(n));
            if (k >= 2)
                require(rc.support_based > rc.classic, "expected a strict win for k >= 2");
            if (k == n)
                require(rc.support_based == vdw_factor(n), "k = n case must reduce to n!/n^n");
        }
    return "regular-support factor at least the classic one on the full k <= n <= 10 grid";
}

std::string rank_degree_consistency(Rng& rng, bool full) {
    std::vector<PolynomialOracle> ps = {
        build_multilinear(random_positive(rng, 4)),
        build_multilinear(random_01_positive_per(rng, 4)),
        build_sparse(SparsePolynomial::multilinear_expansion(random_positive(rng, 3)))};
    HermitianTuple T = random_psd_tuple(rng, 3, full);
    ps.push_back(build_determinantal(T));
    int checked = 0;
    for (const auto& p : ps) {
        const int m = p.num_vars();
        std::vector<double> ones(static_cast<std::size_t>(m), 1.0);
        for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
            std::vector<double> X(static_cast<std::size_t>(m), 0.0);
            for (int i = 0; i < m; ++i)
                if (mask >> i & 1u) X[static_cast<std::size_t>(i)] = 1.0;
            RootReport rep = restriction_roots(p, X, ones);
            const int nonzero = rep.degree - rep.vanish_order;
            int deg = support_degree(p, mask);
            require(nonzero == deg, "root count " + std::to_string(nonzero) +
                                        " vs restriction degree " + std::to_string(deg));
            ++checked;
        }
    }
    // determinantal coordinate ranks match the eigenvalue ranks
    for (int j = 0; j < 3; ++j) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(T[j]);
        double top = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
        int eig_rank = 0;
        for (int i = 0; i < 3; ++i)
            if (std::abs(es.eigenvalues()[i]) > 1e-9 * top) ++eig_rank;
        require(support_degree(ps.back(), 1u << j) == eig_rank,
                "determinantal coordinate rank disagrees with the eigenvalue count");
        ++checked;
    }
    return std::to_string(checked) + " subset ranks equal to nonzero root counts";
}

std::string submodularity(Rng& rng, bool full) {
    std::vector<PolynomialOracle> ps = {
        build_multilinear(random_positive(rng, 4)),
        build_multilinear(random_01_positive_per(rng, 4)),
        build_determinantal(random_psd_tuple(rng, 3, false)),
        build_sparse(SparsePolynomial::multilinear_expansion(random_positive(rng, 3)))};
    if (full) {
        ps.push_back(build_multilinear(random_01_positive_per(rng, 5)));
        ps.push_back(build_determinantal(random_psd_tuple(rng, 4, true)));
    }
    for (const auto& p : ps) {
        SupportTable S(p);
        SubmodularityReport r = is_submodular(S);
        require(r.submodular && r.exhaustive, "a product/determinant instance came out non-submodular");
    }
    // the known non-submodular support function
    SparsePolynomial::Terms terms;
    terms[{1, 1, 1, 1}] = 1;
    terms[{0, 2, 0, 2}] = 1;
    PolynomialOracle bad = build_sparse(SparsePolynomial(4, terms));
    SupportTable Sb(bad);
    require(Sb(0b0011u) == 2 && Sb(0b0110u) == 2 && Sb(0b0010u) == 2 && Sb(0b0111u) == 3,
            "witness polynomial has unexpected subset degrees");
    SubmodularityReport rb = is_submodular(Sb);
    require(!rb.submodular, "witness polynomial was reported submodular");
    return std::to_string(ps.size()) + " hyperbolic supports submodular; witness rejected with degrees 2,2,2,3";
}

std::string newton_polytope_hull(Rng& rng, bool full) {
    int checked = 0;
    for (int inst = 0; inst < (full ? 3 : 1); ++inst) {
        SparsePolynomial sp = SparsePolynomial::multilinear_expansion(
            random_01_positive_per(rng, 4));
        for (int redraw = 0; sp.term_count() > 18 && redraw < 40; ++redraw)
            sp = SparsePolynomial::multilinear_expansion(random_01_positive_per(rng, 4));
        if (sp.term_count() > 18)
            sp = SparsePolynomial::multilinear_expansion(NonnegativeMatrix::identity(4));
        PolynomialOracle p = build_sparse(sp);
        const int m = sp.num_vars(), n = sp.degree();
        std::vector<std::vector<Rat>> verts;
        for (const auto& [e, c] : sp.terms()) {
            std::vector<Rat> v;
            for (int r : e) v.emplace_back(r);
            verts.push_back(std::move(v));
        }
        auto agree_at = [&](const std::vector<double>& x) {
            double sum = 0;
            for (double v : x) sum += v;
            if (std::abs(sum - n) > 1e-9) return;
            bool neg = false;
            for (double v : x) neg = neg || v < 0;
            if (neg) return;
            std::vector<Rat> xr;
            for (double v : x) xr.push_back(rat_from_double(v));
            // dyadic rounding leaves the exact image a hair off the degree
            // hyperplane, where the rational hull test would reject it for
            // the wrong reason; park the slack on the largest coordinate
            Rat acc(0);
            for (const auto& r : xr) acc += r;
            std::size_t big = 0;
            for (std::size_t i = 1; i < xr.size(); ++i)
                if (xr[i] > xr[big]) big = i;
            xr[big] += Rat(n) - acc;
            bool sub = in_newton_polytope(p, x).inside;
            bool hull = in_convex_hull(verts, xr);
            require(sub == hull, "polytope membership disagrees with the exact hull at a test point");
            ++checked;
        };
        std::vector<double> centroid(static_cast<std::size_t>(m), 0.0);
        for (const auto& v : verts)
            for (int i = 0; i < m; ++i) centroid[static_cast<std::size_t>(i)] += to_double(v[static_cast<std::size_t>(i)]);
        for (auto& c : centroid) c /= static_cast<double>(verts.size());
        agree_at(centroid);
        int shifts = 0;
        for (const auto& v : verts) {
            std::vector<double> x(static_cast<std::size_t>(m));
            for (int i = 0; i < m; ++i) x[static_cast<std::size_t>(i)] = to_double(v[static_cast<std::size_t>(i)]);
            agree_at(x);
            if (shifts < 4) {
                std::vector<double> y = x;
                y[0] += 1.0;
                y[1] -= 1.0;
                agree_at(y);
                ++shifts;
            }
        }
    }
    // a polynomial whose subset polytope strictly contains the support hull
    SparsePolynomial::Terms terms;
    terms[{1, 2, 0}] = 1;
    terms[{0, 1, 2}] = 1;
    terms[{2, 0, 1}] = 1;
    PolynomialOracle cyc = build_sparse(SparsePolynomial(3, terms));
    std::vector<double> pt = {2.0, 1.0, 0.0};
    require(in_newton_polytope(cyc, pt).inside, "expected the subset polytope to accept (2,1,0)");
    std::vector<std::vector<Rat>> cyc_verts = {{Rat(1), Rat(2), Rat(0)},
                                               {Rat(0), Rat(1), Rat(2)},
                                               {Rat(2), Rat(0), Rat(1)}};
    require(!in_convex_hull(cyc_verts, {Rat(2), Rat(1), Rat(0)}),
            "(2,1,0) must lie outside the support hull of the cyclic cubic");
    return std::to_string(checked) + " membership agreements plus the strict-containment example";
}

std::string indecomposability_equivalence(Rng& rng, bool full) {
    std::vector<PolynomialOracle> ps;
    ps.push_back(build_multilinear(NonnegativeMatrix::uniform(4)));
    ps.push_back(build_multilinear(random_positive(rng, 4)));
    ps.push_back(build_multilinear(random_01_positive_per(rng, 4)));
    {
        // block diagonal: decomposable by construction
        std::vector<std::vector<double>> rows(4, std::vector<double>(4, 0.0));
        Rng sub = Rng::for_sample(rng.gen(), 7);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = sub.uniform(0.5, 1.5);
                rows[static_cast<std::size_t>(i + 2)][static_cast<std::size_t>(j + 2)] = sub.uniform(0.5, 1.5);
            }
        ps.push_back(build_multilinear(NonnegativeMatrix::from_rows(rows)));
    }
    {
        SparsePolynomial::Terms t;
        t[{1, 1, 1}] = 1;
        ps.push_back(build_sparse(SparsePolynomial(3, t)));
    }
    if (full) ps.push_back(build_sparse(SparsePolynomial::multilinear_expansion(
        random_01_positive_per(rng, 4))));
    int checked = 0;
    for (const auto& p : ps) {
        bool via_degrees = is_indecomposable(p).indecomposable;
        bool via_coefs = indecomposable_via_pair_coefficients(p);
        require(via_degrees == via_coefs,
                "subset-degree and pair-coefficient verdicts disagree");
        ++checked;
    }
    return std::to_string(checked) + " instances with matching indecomposability verdicts";
}

std::string decomposition_roundtrip(Rng& rng, bool) {
    // block diagonal product structure
    std::vector<std::vector<double>> rows(4, std::vector<double>(4, 0.0));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = rng.uniform(0.5, 1.5);
            rows[static_cast<std::size_t>(i + 2)][static_cast<std::size_t>(j + 2)] = rng.uniform(0.5, 1.5);
        }
    auto dec = detect_decomposition(build_multilinear(NonnegativeMatrix::from_rows(rows)));
    require(dec.has_value(), "block matrix not recognized as decomposable");
    require(dec->verified, "block split failed point verification");
    require(dec->part.size() + dec->complement.size() == 4, "split does not partition the variables");

    require(!detect_decomposition(build_multilinear(NonnegativeMatrix::uniform(3))).has_value(),
            "all-positive product form falsely decomposed");

    SparsePolynomial::Terms t;
    t[{1, 1, 2, 0}] = 1;
    t[{1, 1, 1, 1}] = 2;
    t[{1, 1, 0, 2}] = 1;
    auto dec2 = detect_decomposition(build_sparse(SparsePolynomial(4, t)));
    require(dec2.has_value() && dec2->verified, "separable quartic not split and verified");

    SparsePolynomial::Terms mono;
    mono[{1, 1, 1, 1}] = 1;
    auto dec3 = detect_decomposition(build_sparse(SparsePolynomial(4, mono)));
    require(dec3.has_value() && dec3->verified, "monomial not split");
    return "block, separable, and monomial instances split and verified; positive instance kept whole";
}

std::string pos_hyperbolic_verdicts(Rng& rng, bool full) {
    const int trials = full ? 200 : 50;
    std::vector<PolynomialOracle> good = {
        build_multilinear(random_positive(rng, 4)),
        build_multilinear(random_01_positive_per(rng, 4)),
        build_determinantal(random_psd_tuple(rng, 3, false)),
        build_determinantal(random_psd_tuple(rng, 3, true)),
    };
    for (const auto& p : good) {
        HyperbolicityVerdict v = check_pos_hyperbolic(p, trials, rng.gen());
        require(v.passed, "hyperbolic instance rejected: " + v.failure);
        require(v.trials_run == trials, "trial count not honored");
    }
    SparsePolynomial::Terms t;
    t[{2, 0}] = 1;
    t[{0, 2}] = 1;
    HyperbolicityVerdict bad = check_pos_hyperbolic(build_sparse(SparsePolynomial(2, t)), trials, 42);
    require(!bad.passed, "sum of squares passed the real-rootedness screen");
    require(!bad.counterexample.empty(), "failure carries no counterexample point");
    require(!bad.report.all_real, "counterexample report claims real roots");
    return std::to_string(good.size()) + " instances passed " + std::to_string(trials) +
           " trials each; sum of squares rejected with a witness";
}

std::string real_rooted_closure(Rng& rng, bool full) {
    const int pts = full ? 60 : 20;
    int checked = 0;
    std::vector<PolynomialOracle> ps = {build_multilinear(random_positive(rng, 4)),
                                        build_determinantal(random_psd_tuple(rng, 3, false))};
    for (const auto& p : ps) {
        PolynomialOracle p1 = partial_at_zero(p, 0);
        if (p1.is_zero()) continue;
        std::vector<double> ones(static_cast<std::size_t>(p1.num_vars()), 1.0);
        for (int t = 0; t < pts; ++t) {
            auto X = gaussian_point(rng, p1.num_vars());
            RootReport rep = restriction_roots(p1, X, ones);
            require(rep.all_real, "derivative restriction picked up complex roots");
            ++checked;
        }
    }
    return std::to_string(checked) + " derivative restrictions stayed real-rooted";
}

std::string root_product_reconstruction(Rng& rng, bool full) {
    const int pts = full ? 20 : 8;
    auto zoo = hyperbolic_zoo(rng, 5);
    int checked = 0;
    for (const auto& p : zoo) {
        const int m = p.num_vars();
        std::vector<double> ones(static_cast<std::size_t>(m), 1.0);
        double pe = p(ones);
        for (int t = 0; t < pts; ++t) {
            auto X = gaussian_point(rng, m);
            RootReport rep = restriction_roots(p, X, ones);
            if (rep.degree < p.degree()) continue; // leading coefficient cancelled
            std::complex<double> prod(1.0, 0.0);
            for (const auto& z : rep.roots) prod *= z;
            double recon = pe * prod.real();
            require(close_rel(recon, p(X), 1e-7 * std::max(1.0, std::abs(pe))),
                    "root product " + fmt(recon) + " vs direct value " + fmt(p(X)));
            ++checked;
        }
    }
    return std::to_string(checked) + " values rebuilt from restriction roots";
}

std::string newton_on_restrictions(Rng& rng, bool full) {
    const int pts = full ? 200 : 40;
    auto zoo = hyperbolic_zoo(rng, 4);
    int checked = 0;
    for (const auto& p : zoo) {
        const int m = p.num_vars();
        std::vector<double> ones(static_cast<std::size_t>(m), 1.0);
        for (int t = 0; t < pts / static_cast<int>(zoo.size()) + 1; ++t) {
            auto X = gaussian_point(rng, m);
            RootReport rep = restriction_roots(p, X, ones);
            if (!rep.all_real) continue;
            std::vector<double> coefs(rep.coefficients.begin(),
                                      rep.coefficients.begin() + rep.degree + 1);
            NewtonReport nr = newton_inequalities(coefs);
            require(nr.newton_hold, "real-rooted restriction violated the coefficient inequalities");
            ++checked;
        }
    }
    NewtonReport good = newton_inequalities({1.0, 2.0, 1.0});
    require(good.newton_hold && std::abs(good.worst_newton_margin) <= 1e-15,
            "squared binomial must sit exactly on the equality case");
    NewtonReport bad = newton_inequalities({1.0, 1.0, 1.0});
    require(!bad.newton_hold && bad.first_newton_violation == 1,
            "all-ones coefficients must violate at the middle index");
    return std::to_string(checked) + " real-rooted restrictions satisfied the inequalities";
}

std::string entropic_inequality(Rng& rng, bool full) {
    const int total = full ? 100000 : 2000;
    int checked = 0;
    for (int t = 0; t < total; ++t) {
        const int n = 2 + static_cast<int>(rng.index(9));
        std::vector<double> c;
        for (int attempt = 0; attempt < 4000; ++attempt) {
            auto s = rng.simplex(n);
            bool ok = true;
            for (auto& v : s) {
                v *= (n - 1);
                ok = ok && v <= 1.0;
            }
            if (ok) { c = std::move(s); break; }
        }
        if (c.empty()) continue;
        auto [lhs, rhs] = entropic_gap(c);
        require(lhs >= rhs - 1e-9 * std::max(1.0, std::abs(rhs)),
                "entropy floor violated: lhs " + fmt(lhs) + " rhs " + fmt(rhs));
        ++checked;
    }
    for (int n = 2; n <= 10; ++n) {
        std::vector<double> uniform(static_cast<std::size_t>(n), double(n - 1) / n);
        auto [lhs, rhs] = entropic_gap(uniform);
        require(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)),
                "uniform point not an equality case at n = " + std::to_string(n));
    }
    return std::to_string(checked) + " feasible vectors above the entropy floor, equality at uniform";
}

std::string linear_coefficient_floor(Rng& rng, bool full) {
    const int total = full ? 10000 : 1000;
    int checked = 0;
    for (int t = 0; t < total; ++t) {
        const int n = 2 + static_cast<int>(rng.index(7));
        std::vector<double> coefs = {1.0};
        for (int i = 0; i < n; ++i) {
            double a = rng.uniform(0.1, 2.0), b = rng.uniform(0.1, 2.0);
            std::vector<double> next(coefs.size() + 1, 0.0);
            for (std::size_t k = 0; k < coefs.size(); ++k) {
                next[k] += coefs[k] * b;
                next[k + 1] += coefs[k] * a;
            }
            coefs = std::move(next);
        }
        NewtonReport nr = newton_inequalities(coefs);
        require(nr.weak_hold, "factored polynomial failed the weak inequalities");
        require(linear_coefficient_margin(coefs) >= -1e-7,
                "linear coefficient fell below the ratio floor");
        ++checked;
    }
    for (int n = 2; n <= 8; ++n) {
        std::vector<double> binom(static_cast<std::size_t>(n) + 1);
        for (int k = 0; k <= n; ++k)
            binom[static_cast<std::size_t>(k)] =
                to_double(Rat(binomial(static_cast<unsigned>(n), static_cast<unsigned>(k))));
        double margin = linear_coefficient_margin(binom);
        require(std::abs(margin) <= 1e-10,
                "shifted power case should meet the floor exactly, margin " + fmt(margin));
    }
    // zero constant term: the ratio floor degenerates to the linear coefficient
    std::vector<double> dropped = {0.0, 1.0, 2.0, 1.0}; // t (t+1)^2
    require(linear_coefficient_margin(dropped) >= 0, "degenerate case lost the floor");
    return std::to_string(checked) + " factored polynomials above the ratio floor, equality on powers";
}

std::string af_inequality(Rng& rng, bool full) {
    const int pts = full ? 40 : 10;
    std::vector<PolynomialOracle> ps = {
        build_multilinear(NonnegativeMatrix::uniform(3)),
        build_multilinear(random_positive(rng, 4)),
        build_determinantal(random_psd_tuple(rng, 3, false))};
    int checked = 0;
    for (const auto& p : ps) {
        const int n = p.degree(), m = p.num_vars();
        for (int t = 0; t < pts; ++t) {
            std::vector<std::vector<double>> X;
            for (int s = 0; s < n; ++s) X.push_back(random_point(rng, m, 0.0, 2.0));
            AfVerdict v = af_inequality_check(p, X);
            require(v.holds, "quadratic mixed-form inequality violated, margin " + fmt(v.margin));
            ++checked;
        }
    }
    // orthogonal pair: the cross form dominates a vanishing diagonal form
    PolynomialOracle prod2 = build_multilinear(NonnegativeMatrix::identity(2));
    AfVerdict v = af_inequality_check(prod2, {{1.0, 0.0}, {0.0, 1.0}});
    require(v.holds && v.rhs <= 1e-15 && close_rel(v.lhs, 1.0, 1e-9),
            "orthogonal pair must give cross form 1 against product 0");
    return std::to_string(checked) + " sampled tuples satisfied the quadratic inequality";
}

std::string factorization_curves(Rng& rng, bool full) {
    const int pts = full ? 20 : 6;
    std::vector<PolynomialOracle> ps = {build_multilinear(random_positive(rng, 4)),
                                        build_determinantal(random_psd_tuple(rng, 3, false))};
    int checked = 0;
    for (const auto& p : ps) {
        const int m = p.num_vars();
        for (int t = 0; t < pts; ++t) {
            auto Z = random_point(rng, m, 0.0, 2.0);
            auto Y = random_point(rng, m, 0.1, 2.0);
            FactorizationVerdict v = factorization_check(p, Z, Y);
            require(v.coefficients_nonneg, "mixing two nonnegative points produced a negative coefficient");
            require(v.roots_real && v.roots_nonpositive,
                    "curve through two nonnegative points is not real-rooted toward zero");
            ++checked;
        }
        std::vector<double> e(static_cast<std::size_t>(m), 1.0);
        FactorizationVerdict ve = factorization_check(p, e, e);
        require(ve.roots_real && ve.roots_nonpositive, "diagonal curve must factor with roots at -1");
    }
    return std::to_string(checked) + " nonnegative curves factored over the reals";
}

std::string diagonal_reduction(Rng& rng, bool full) {
    std::vector<int> sizes = full ? std::vector<int>{3, 5, 8} : std::vector<int>{3, 5};
    int checked = 0;
    for (int n : sizes) {
        std::vector<Eigen::MatrixXcd> mats;
        std::vector<Rat> row_major(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
            Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(n, n);
            for (int i = 0; i < n; ++i) {
                int v = static_cast<int>(rng.index(4));
                if (i == k && v == 0) v = 1; // keep the sum positive definite
                D(i, i) = v;
                row_major[static_cast<std::size_t>(i) * n + k] = v;
            }
            mats.push_back(std::move(D));
        }
        HermitianTuple T(std::move(mats));
        ExactValue d = mixed_discriminant_exact(T);
        require(d.rational.has_value(), "diagonal tuple did not take the exact path");
        Rat per = permanent_rational(NonnegativeMatrix::from_rationals(n, row_major));
        require(*d.rational == per, "diagonal mixed discriminant differs from the permanent");
        require(d.method.find("diagonal") != std::string::npos,
                "diagonal tuple did not dispatch to the permanent reduction");
        ++checked;
    }
    return std::to_string(checked) + " diagonal tuples reduced exactly to permanents";
}

std::string mixed_disc_agreement(Rng& rng, bool full) {
    std::vector<int> sizes = full ? std::vector<int>{3, 4, 5, 6} : std::vector<int>{3, 4};
    int checked = 0;
    for (int n : sizes) {
        HermitianTuple T = random_psd_tuple(rng, n, n % 2 == 0);
        ExactValue d = mixed_discriminant_exact(T);
        PolynomialOracle p = build_determinantal(T);
        std::vector<std::vector<double>> basis;
        for (int i = 0; i < n; ++i) {
            std::vector<double> e(static_cast<std::size_t>(n), 0.0);
            e[static_cast<std::size_t>(i)] = 1.0;
            basis.push_back(std::move(e));
        }
        double mf = mixed_form(p, basis);
        require(close_rel(mf, d.value, 1e-9),
                "polarized determinant " + fmt(mf) + " vs reference " + fmt(d.value));
        double pol = mixed_discriminant_polarization(T);
        require(close_rel(pol, d.value, 1e-9), "matrix-level polarization disagrees");
        ++checked;
    }
    return std::to_string(checked) + " mixed discriminants agreed across three computations";
}

std::string falikman_floor(Rng& rng, bool full) {
    const int total = full ? 10000 : 300;
    int checked = 0;
    for (int t = 0; t < total; ++t) {
        const int n = 3 + static_cast<int>(rng.index(4));
        NonnegativeMatrix B = random_doubly_stochastic(rng, n);
        Rat per = permanent_rational(B);
        Rat floor_rat = Rat(factorial(static_cast<unsigned>(n))) /
                        rat_pow(Rat(n), static_cast<unsigned>(n));
        require(per >= floor_rat * Rat(999999, 1000000),
                "balanced matrix undercut the n!/n^n floor at n = " + std::to_string(n));
        ++checked;
    }
    return std::to_string(checked) + " balanced matrices above the n!/n^n floor";
}

std::string permanent_path_agreement(Rng& rng, bool full) {
    int checked = 0;
    for (int t = 0; t < (full ? 60 : 20); ++t) {
        const int n = 2 + static_cast<int>(rng.index(6));
        std::vector<Rat> row_major;
        for (int i = 0; i < n * n; ++i) row_major.emplace_back(Rat(static_cast<int>(rng.index(9)), 8));
        for (int i = 0; i < n; ++i) {
            bool zero_row = true;
            for (int j = 0; j < n; ++j) zero_row = zero_row && row_major[static_cast<std::size_t>(i) * n + j] == 0;
            if (zero_row) row_major[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(rng.index(static_cast<std::uint64_t>(n)))] = Rat(1, 2);
        }
        NonnegativeMatrix A = NonnegativeMatrix::from_rationals(n, row_major);
        Rat via_ryser = permanent_rational(A);
        Rat via_sum = permanent_perm_sum(A);
        require(via_ryser == via_sum, "subset and permutation sums disagree");
        require(close_rel(permanent_longdouble(A), to_double(via_ryser), 1e-12),
                "extended-precision path drifted");
        ++checked;
    }
    for (int n = 1; n <= 8; ++n) {
        ExactValue v = permanent_exact(NonnegativeMatrix::uniform(n));
        Rat expect = Rat(factorial(static_cast<unsigned>(n))) /
                     rat_pow(Rat(n), static_cast<unsigned>(n));
        require(v.rational.has_value() && *v.rational == expect,
                "uniform matrix permanent is not n!/n^n at n = " + std::to_string(n));
    }
    return std::to_string(checked) + " random matrices agree across permanent implementations";
}

std::string mini_vdw_family(Rng& rng, bool full) {
    int checked = 0;
    for (int n : {2, 4, 7, 10}) {
        for (int t = 0; t < (full ? 8 : 3); ++t) {
            auto a = rng.simplex(n);
            MiniVdw r = mini_vdw_verify(a);
            require(r.matches_closed_form, "closed form mismatch for a rank-one-plus-uniform matrix");
            require(r.floor_holds, "family member fell below the floor");
            require(r.doubly_stochastic, "construction must be doubly stochastic");
            ++checked;
        }
    }
    std::vector<double> corner(4, 0.0);
    corner[0] = 1.0;
    MiniVdw rc = mini_vdw_verify(corner);
    require(rc.matches_closed_form && rc.floor_holds, "corner case failed");
    std::vector<double> uniform(5, 0.2);
    MiniVdw ru = mini_vdw_verify(uniform);
    require(std::abs(ru.permanent - ru.vdw_floor) <= 1e-12 * std::max(1.0, ru.vdw_floor),
            "uniform member must sit exactly on the floor");
    return std::to_string(checked) + " family members matched the closed form and the floor";
}

std::string io_validation(Rng&, bool) {
    using nlohmann::json;
    json m = {{"kind", "matrix"}, {"n", 2}, {"entries", {{1.0, 0.0}, {0.0, 1.0}}}};
    ProblemInput pi = parse_input(m);
    require(pi.kind == "matrix" && pi.matrix && pi.oracle.num_vars() == 2,
            "identity matrix input parsed wrong");
    require(close_rel(pi.oracle({2.0, 3.0}), 6.0, 1e-12), "parsed oracle evaluates wrong");

    json s = {{"kind", "sparse"}, {"n", 2}, {"m", 2},
              {"terms", {{{"exp", {1, 1}}, {"coef", "1/3"}}}}};
    ProblemInput ps = parse_input(s);
    require(ps.sparse && ps.sparse->coefficient({1, 1}) == Rat(1, 3),
            "string coefficient not parsed exactly");

    json tup = {{"kind", "tuple"}, {"n", 2},
                {"matrices", {{{"re", {{1.0, 0.0}, {0.0, 0.0}}}},
                              {{"re", {{0.0, 0.0}, {0.0, 1.0}}}}}}};
    ProblemInput pt = parse_input(tup);
    require(pt.kind == "tuple" && pt.oracle.degree() == 2, "diagonal tuple input parsed wrong");

    auto expect_reject = [&](const json& doc, const char* what) {
        try {
            parse_input(doc);
        } catch (const ValidationError&) {
            return;
        }
        fail(std::string("expected a validation failure for ") + what);
    };
    expect_reject({{"kind", "nope"}}, "an unknown kind");
    expect_reject({{"kind", "matrix"}, {"n", 2}, {"entries", {{1.0}, {0.0, 1.0}}}}, "a ragged matrix");
    expect_reject({{"kind", "matrix"}, {"n", 2}, {"entries", {{1.0, -1.0}, {0.0, 1.0}}}},
                  "a negative entry");
    expect_reject({{"kind", "sparse"}, {"n", 2}, {"m", 2},
                   {"terms", {{{"exp", {1, 1, 1}}, {"coef", 1.0}}}}},
                  "a wrong exponent length");
    expect_reject({{"kind", "tuple"}, {"n", 2},
                   {"matrices", {{{"re", {{0.0, 1.0}, {0.0, 0.0}}}},
                                 {{"re", {{0.0, 0.0}, {0.0, 1.0}}}}}}},
                  "a non-symmetric tuple entry");

    std::string once = dump_report(m), twice = dump_report(m);
    require(once == twice && !once.empty() && once.back() == '\n', "serialization is not stable");
    return "parse, exact coefficients, five rejections, and stable serialization";
}

std::string approx_coef_consistency(Rng& rng, bool full) {
    PolynomialOracle p = build_multilinear(random_positive(rng, 4));
    ApproxResult plain = approximate_coefficient(p);
    ImprovedResult zero = improved_approximate(p, 0);
    require(zero.k == 0 && !zero.fell_back, "zero-level run must not derive or fall back");
    require(close_rel(zero.approx.estimate, plain.estimate, 1e-12) &&
                close_rel(zero.approx.coefficient_lower, plain.coefficient_lower, 1e-12) &&
                close_rel(zero.approx.coefficient_upper, plain.coefficient_upper, 1e-12),
            "zero-level run differs from the plain estimator");
    double C = top_coefficient(p);
    require(C >= plain.coefficient_lower * (1 - 1e-9) && C <= plain.coefficient_upper * (1 + 1e-9),
            "true coefficient escaped the plain bracket");
    if (full) {
        NonnegativeMatrix J4 = NonnegativeMatrix::uniform(4);
        PolynomialOracle pj = build_multilinear(J4);
        ImprovedResult lifted = improved_approximate(pj, 1);
        double per = permanent_exact(J4).value;
        require(per >= lifted.approx.coefficient_lower * (1 - 1e-9) &&
                    per <= lifted.approx.coefficient_upper * (1 + 1e-9),
                "true coefficient escaped the derivative-level bracket");
        require(lifted.k > 0, "level-1 run did not derive");
    }
    return "derivative-level estimator consistent with the plain one";
}

} // namespace

bool in_convex_hull(const std::vector<std::vector<Rat>>& points, const std::vector<Rat>& x) {
    if (points.empty()) return false;
    const int d = static_cast<int>(x.size());
    const int m = static_cast<int>(points.size());
    for (const auto& p : points)
        if (static_cast<int>(p.size()) != d)
            throw ValidationError("hull points and query must share a dimension");
    for (const auto& p : points)
        if (p == x) return true;

    const int max_k = std::min(m, d + 1);
    std::vector<int> comb;
    std::function<bool(int, int)> search = [&](int start, int need) -> bool {
        if (need == 0) {
            const int k = static_cast<int>(comb.size());
            // solve sum_j lambda_j * P[comb[j]] = x with sum lambda = 1
            std::vector<std::vector<Rat>> aug(static_cast<std::size_t>(d) + 1,
                                              std::vector<Rat>(static_cast<std::size_t>(k) + 1));
            for (int r = 0; r < d; ++r) {
                for (int j = 0; j < k; ++j)
                    aug[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] =
                        points[static_cast<std::size_t>(comb[static_cast<std::size_t>(j)])]
                              [static_cast<std::size_t>(r)];
                aug[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] = x[static_cast<std::size_t>(r)];
            }
            for (int j = 0; j <= k; ++j) aug[static_cast<std::size_t>(d)][static_cast<std::size_t>(j)] = 1;

            std::vector<int> pivot_col;
            int row = 0;
            for (int col = 0; col < k && row <= d; ++col) {
                int pr = -1;
                for (int r = row; r <= d; ++r)
                    if (aug[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] != 0) { pr = r; break; }
                if (pr < 0) continue;
                std::swap(aug[static_cast<std::size_t>(pr)], aug[static_cast<std::size_t>(row)]);
                Rat pv = aug[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
                for (int j = col; j <= k; ++j) aug[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)] /= pv;
                for (int r = 0; r <= d; ++r) {
                    if (r == row) continue;
                    Rat f = aug[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
                    if (f == 0) continue;
                    for (int j = col; j <= k; ++j)
                        aug[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] -=
                            f * aug[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)];
                }
                pivot_col.push_back(col);
                ++row;
            }
            if (static_cast<int>(pivot_col.size()) < k) return false; // affinely dependent subset
            for (int r = row; r <= d; ++r)
                if (aug[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] != 0) return false;
            for (int j = 0; j < k; ++j)
                if (aug[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] < 0) return false;
            return true;
        }
        for (int i = start; i <= m - need; ++i) {
            comb.push_back(i);
            if (search(i + 1, need - 1)) { comb.pop_back(); return true; }
            comb.pop_back();
        }
        return false;
    };
    for (int k = 1; k <= max_k; ++k)
        if (search(0, k)) return true;
    return false;
}

std::vector<CheckResult> run_checks(const std::string& level, std::uint64_t seed) {
    if (level != "quick" && level != "full")
        throw ValidationError("level must be quick or full");
    Runner R{level == "full", seed, {}};

    struct Suite {
        const char* name;
        std::string (*body)(Rng&, bool);
    };
    const Suite suites[] = {
        {"euler-identity", euler_identity},
        {"slice-decomposition", slice_decomposition},
        {"polarization-taylor", polarization_taylor},
        {"derivative-support-monotone", derivative_support_monotone},
        {"derivative-consistency", derivative_consistency},
        {"laplace-permanent", laplace_permanent},
        {"capacity-certificates", capacity_certificates},
        {"bound-chain", bound_chain},
        {"coefficient-upper", coefficient_upper},
        {"derivative-capacity-monotone", derivative_capacity_monotone},
        {"scaling-equivariance", scaling_equivariance},
        {"sinkhorn-roundtrip", sinkhorn_roundtrip},
        {"doubly-stochastic-form", doubly_stochastic_form},
        {"grid-vs-solver", grid_vs_solver},
        {"vdw-product-identity", vdw_product_identity},
        {"g-monotone", g_monotone},
        {"bound-sandwich", bound_sandwich},
        {"ordering-dominance", ordering_dominance},
        {"schrijver-sharper", schrijver_sharper},
        {"rank-degree-consistency", rank_degree_consistency},
        {"submodularity", submodularity},
        {"newton-polytope-hull", newton_polytope_hull},
        {"indecomposability-equivalence", indecomposability_equivalence},
        {"decomposition-roundtrip", decomposition_roundtrip},
        {"pos-hyperbolic-verdicts", pos_hyperbolic_verdicts},
        {"real-rooted-closure", real_rooted_closure},
        {"root-product-reconstruction", root_product_reconstruction},
        {"newton-on-restrictions", newton_on_restrictions},
        {"entropic-inequality", entropic_inequality},
        {"linear-coefficient-floor", linear_coefficient_floor},
        {"af-inequality", af_inequality},
        {"factorization-curves", factorization_curves},
        {"diagonal-reduction", diagonal_reduction},
        {"mixed-disc-agreement", mixed_disc_agreement},
        {"falikman-floor", falikman_floor},
        {"permanent-path-agreement", permanent_path_agreement},
        {"mini-vdw-family", mini_vdw_family},
        {"io-validation", io_validation},
        {"approx-coef-consistency", approx_coef_consistency},
    };
    int suite_index = 0;
    for (const auto& s : suites) {
        Rng rng = Rng::for_sample(seed, 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(++suite_index));
        R.run(s.name, [&] { return s.body(rng, R.full); });
    }
    return R.results;
}

} // namespace polycap
