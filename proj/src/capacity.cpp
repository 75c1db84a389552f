#include "polycap/capacity.hpp"

#include "polycap/bounds.hpp"
#include "polycap/errors.hpp"
#include "polycap/polynomials.hpp"
#include "polycap/structure.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace polycap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// log of the smallest positive normal double, rounded in: an oracle value
// underflowing to 0 means the true log sits below this.
constexpr double kLogTiny = -744.0;

// One visited point, kept so gradient-based lower bounds can be re-evaluated
// when the search radius changes:  phi(z) >= f - gnorm * (ynorm + R) for any
// z in the radius-R hyperplane ball around the origin.
struct VisitRecord {
    double f;
    double gnorm;
    double ynorm;
};

} // namespace

CapacityResult capacity(const PolynomialOracle& p, double tol, int max_iterations) {
    if (p.is_zero())
        throw ValidationError("the zero polynomial has no capacity");
    if (p.num_vars() != p.degree())
        throw ValidationError("capacity needs degree == variable count");
    if (!(tol > 0.0)) throw ValidationError("tolerance must be positive");
    if (max_iterations < 1) throw ValidationError("iteration budget must be positive");

    const int m = p.num_vars();
    CapacityResult res;
    if (m <= 1) {
        // Constant, or c * x_1 on the one-point feasible set {x = 1}.
        res.cap_estimate = p.value_at_ones();
        res.gap_bound = 0.0;
        res.minimizer.assign(m, 0.0);
        res.status = "converged";
        res.iterations = 0;
        return res;
    }

    const double n = static_cast<double>(m);
    const double pe = p.value_at_ones();
    // The multiplicative gradient v_i = x_i d_i p / p lists nonnegative
    // numbers summing to n, so the projected gradient norm never exceeds
    // sqrt(n(n-1)): a global Lipschitz constant for phi on the hyperplane.
    const double L = std::sqrt(n * (n - 1.0));
    double R = std::sqrt(n) * std::max(std::log(2.0 * pe), std::log(2.0));

    std::vector<double> xbuf(m);
    auto phi = [&](const std::vector<double>& y) {
        for (int i = 0; i < m; ++i) xbuf[i] = std::exp(y[i]);
        const double v = p(xbuf);
        if (v == 0.0) return kLogTiny;     // underflow: genuinely tiny value
        if (!std::isfinite(v) || v < 0.0) return kInf;
        return std::log(v);
    };
    // Projected gradient of phi at y; the multiplicative gradient norm comes
    // back through gnorm.
    auto grad = [&](const std::vector<double>& y, double& gnorm) {
        for (int i = 0; i < m; ++i) xbuf[i] = std::exp(y[i]);
        const double pv = p(xbuf);
        if (!std::isfinite(pv) || pv <= 0.0)
            throw NumericalError("oracle value left the representable range "
                                 "during the capacity solve");
        std::vector<double> g = gradient_at(p, xbuf);
        double mean = 0.0;
        for (int i = 0; i < m; ++i) {
            g[i] = std::max(0.0, xbuf[i] * g[i] / pv);
            mean += g[i];
        }
        mean /= m;
        gnorm = 0.0;
        for (int i = 0; i < m; ++i) {
            g[i] -= mean;
            gnorm += g[i] * g[i];
        }
        gnorm = std::sqrt(gnorm);
        return g;
    };
    auto norm = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double e : v) s += e * e;
        return std::sqrt(s);
    };

    std::vector<VisitRecord> records;
    records.reserve(512);
    // Running max of the gradient bounds under the current radius; rebuilt
    // from the records whenever R doubles.
    double grad_lb = -kInf;
    auto push_record = [&](double f, double gn, double yn) {
        records.push_back({f, gn, yn});
        grad_lb = std::max(grad_lb, f - gn * (yn + R));
    };
    auto rebuild_lb = [&] {
        grad_lb = -kInf;
        for (const auto& r : records)
            grad_lb = std::max(grad_lb, r.f - r.gnorm * (r.ynorm + R));
    };

    int iterations = 0;
    bool suspected = false;
    bool converged = false;
    double certified_gap = kInf;

    std::vector<double> y(m, 0.0);
    std::vector<double> best_y = y;
    double best_f = phi(y);
    double fy = best_f;

    // ---- Projected gradient with Armijo backtracking ---------------------
    const int pg_max = std::min(2000, max_iterations / 2 + 1);
    double step = 1.0;
    int doublings = 0;
    for (int it = 0; it < pg_max && !converged && !suspected; ++it) {
        ++iterations;
        if (fy <= kLogTiny + 1.0) { suspected = true; break; }
        double gn = 0.0;
        std::vector<double> g = grad(y, gn);
        push_record(fy, gn, norm(y));
        if (fy < best_f) { best_f = fy; best_y = y; }

        if (best_f - grad_lb <= tol) {
            converged = true;
            certified_gap = std::max(0.0, best_f - grad_lb);
            break;
        }
        if (gn <= 1e-13 * (1.0 + std::abs(fy))) break;  // stationary point;
                                                        // the bound says how good
        step = std::min(step * 2.0, 1e6 / (gn + 1e-300));
        bool moved = false;
        std::vector<double> cand(m);
        for (int h = 0; h < 60; ++h) {
            for (int i = 0; i < m; ++i) cand[i] = y[i] - step * g[i];
            const double fc = phi(cand);
            if (fc <= fy - 0.25 * step * gn * gn) {
                y = cand;
                fy = fc;
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved) break;
        if (norm(y) > R) {
            R *= 2.0;
            rebuild_lb();
            if (++doublings >= 3) { suspected = true; break; }
        }
        if (iterations >= max_iterations) break;
    }
    if (fy < best_f && fy > kLogTiny + 1.0) { best_f = fy; best_y = y; }

    if (!converged && !suspected && iterations < max_iterations) {
        // ---- Central-cut ellipsoid on the hyperplane ----------------------
        // Orthonormal basis of {sum y = 0}: trailing columns of the Q factor
        // of the all-ones column.
        const int d = m - 1;
        Eigen::MatrixXd ones_col = Eigen::MatrixXd::Ones(m, 1);
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(ones_col);
        Eigen::MatrixXd Q = qr.householderQ();
        Eigen::MatrixXd V = Q.rightCols(d);

        // Per-cut volume ratio of the central-cut ellipsoid, as a log.
        const double rho_log =
            d == 1 ? std::log(0.5)
                   : std::log(d / (d + 1.0)) +
                         0.5 * (d - 1.0) *
                             std::log((double)d * d / ((double)d * d - 1.0));

        Eigen::VectorXd c = Eigen::VectorXd::Zero(d);
        Eigen::MatrixXd P = (R * R) * Eigen::MatrixXd::Identity(d, d);
        double center_min = kInf;
        bool vol_valid = true;
        long long cuts = 0;
        std::vector<double> ywork(m);

        while (iterations < max_iterations) {
            ++iterations;
            Eigen::VectorXd yv = V * c;
            for (int i = 0; i < m; ++i) ywork[i] = yv[i];
            const double f = phi(ywork);
            if (f <= kLogTiny + 1.0) { suspected = true; break; }

            Eigen::VectorXd gz;
            if (!std::isfinite(f)) {
                // Overflow region.  The true value out here exceeds the
                // double range, far above anything near the start, so cutting
                // the far half-space keeps every candidate minimizer --
                // unless the whole run lives at absurd magnitudes.
                if (center_min > 700.0) vol_valid = false;
                if (c.norm() < 1e-12)
                    throw NumericalError("objective not finite at the hyperplane origin");
                gz = c;
            } else {
                double gn_full = 0.0;
                std::vector<double> g = grad(ywork, gn_full);
                Eigen::VectorXd gv(m);
                for (int i = 0; i < m; ++i) gv[i] = g[i];
                gz = V.transpose() * gv;
                const double gn = gz.norm();
                push_record(f, gn, c.norm());
                if (f < center_min) center_min = f;
                if (f < best_f) {
                    best_f = f;
                    for (int i = 0; i < m; ++i) best_y[i] = ywork[i];
                }
                if (gn <= 1e-300) {
                    converged = true;  // stationary point of a convex function
                    certified_gap = 0.0;
                    break;
                }
            }

            double lb = grad_lb;
            if (vol_valid && cuts > 0 && center_min < kInf) {
                // Every cut-away point saw a value >= its center's, and the
                // remaining ellipsoid sits inside a ball of radius
                // sqrt(lambda_max(P)) <= sqrt(tr P) around the center.  The
                // volume shrink factor is NOT a diameter bound (slivers!), so
                // the reach has to come from P itself.
                const double reach = std::sqrt(std::max(P.trace(), 0.0));
                lb = std::max(lb, center_min - L * reach);
            }
            if (best_f - lb <= tol) {
                converged = true;
                certified_gap = std::max(0.0, best_f - lb);
                break;
            }

            Eigen::VectorXd gu = gz / gz.norm();
            Eigen::VectorXd Pg = P * gu;
            double s2 = gu.dot(Pg);
            if (!(s2 > 0.0) || !std::isfinite(s2)) {
                // Thousands of rank-one downdates erode P to numerical
                // semidefiniteness once its condition number spans the
                // double range.  Swap in the enclosing ball of the current
                // ellipsoid and re-base the cut count to that ball's volume;
                // the certificate only weakens, so it stays sound.
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(P);
                const double lam = es.eigenvalues().maxCoeff();
                if (!std::isfinite(lam) || lam <= 0.0) break;
                P = lam * Eigen::MatrixXd::Identity(d, d);
                const double r_eq = std::max(std::sqrt(lam), 1e-280);
                cuts = std::max<long long>(
                    0, (long long)std::floor(d * std::log(r_eq / R) / rho_log));
                Pg = P * gu;
                s2 = gu.dot(Pg);
                if (!(s2 > 0.0) || !std::isfinite(s2)) break;
            }
            const double s = std::sqrt(s2);
            Eigen::VectorXd dir = Pg / s;
            if (d == 1) {
                c -= dir / 2.0;
                P /= 4.0;
            } else {
                c -= dir / (d + 1.0);
                P = ((double)d * d / ((double)d * d - 1.0)) *
                    (P - (2.0 / (d + 1.0)) * dir * dir.transpose());
                P = 0.5 * (P + P.transpose());
            }
            ++cuts;
            if (P.trace() > 1e60 * R * R) break;  // no progress left at this radius
        }
    }

    if (!converged) {
        certified_gap = std::max(0.0, best_f - grad_lb);
        if (!suspected && certified_gap <= tol) converged = true;
    }

    // Pin the iterate to the hyperplane and report the value at the pinned
    // point, keeping cap_estimate and minimizer consistent to the last bit.
    double mean = 0.0;
    for (double v : best_y) mean += v;
    mean /= m;
    for (double& v : best_y) v -= mean;
    for (int i = 0; i < m; ++i) xbuf[i] = std::exp(best_y[i]);
    res.cap_estimate = p(xbuf);
    res.minimizer = best_y;
    res.iterations = iterations;
    res.radius = R;
    res.gap_bound = std::isfinite(certified_gap) ? certified_gap : kInf;
    res.status = suspected ? "unbounded-below-suspected"
                           : (converged ? "converged" : "budget-exhausted");
    return res;
}

ScalingResult sinkhorn_scale(const NonnegativeMatrix& A, double ds_tol,
                             int max_iterations) {
    const int n = A.n();
    for (int j = 0; j < n; ++j)
        if (A.col_support(j) == 0)
            throw ValidationError("column " + std::to_string(j) +
                                  " is zero; the matrix cannot be balanced");
    if (!(ds_tol > 0.0)) throw ValidationError("tolerance must be positive");

    ScalingResult out;
    out.d1.assign(n, 1.0);
    out.d2.assign(n, 1.0);
    out.B.assign(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.B[i][j] = A(i, j);

    for (int it = 0; it < max_iterations; ++it) {
        for (int i = 0; i < n; ++i) {
            double r = 0.0;
            for (int j = 0; j < n; ++j) r += out.B[i][j];
            out.d1[i] *= r;
            for (int j = 0; j < n; ++j) out.B[i][j] /= r;
        }
        for (int j = 0; j < n; ++j) {
            double csum = 0.0;
            for (int i = 0; i < n; ++i) csum += out.B[i][j];
            out.d2[j] *= csum;
            for (int i = 0; i < n; ++i) out.B[i][j] /= csum;
        }
        out.iterations = it + 1;

        double defect = 0.0;
        for (int i = 0; i < n; ++i) {
            double r = 0.0;
            for (int j = 0; j < n; ++j) r += out.B[i][j];
            defect = std::max(defect, std::abs(r - 1.0));
        }
        for (int j = 0; j < n; ++j) {
            double csum = 0.0;
            for (int i = 0; i < n; ++i) csum += out.B[i][j];
            defect = std::max(defect, std::abs(csum - 1.0));
        }
        out.max_defect = defect;
        bool finite = true;
        for (int i = 0; i < n && finite; ++i)
            finite = std::isfinite(out.d1[i]) && std::isfinite(out.d2[i]);
        if (!finite) break;
        if (defect <= ds_tol) {
            out.converged = true;
            break;
        }
    }
    out.cap_product = 1.0;
    for (double v : out.d1) out.cap_product *= v;
    for (double v : out.d2) out.cap_product *= v;
    return out;
}

double ds_defect(const PolynomialOracle& q) {
    if (q.is_zero()) throw ValidationError("zero polynomial");
    const int m = q.num_vars();
    std::vector<double> ones(m, 1.0);
    double defect = 0.0;
    for (int i = 0; i < m; ++i) {
        const double v = partial_at(q, ones, i);
        defect += (v - 1.0) * (v - 1.0);
    }
    return defect;
}

StochasticForm scale_to_doubly_stochastic(const PolynomialOracle& p,
                                          double defect_tol, int max_iterations) {
    StochasticForm out{{}, PolynomialOracle::zero(p.num_vars(), p.provenance()), 0.0, {}};
    out.cap = capacity(p, 1e-10, max_iterations);
    if (out.cap.status != "converged") {
        std::ostringstream os;
        os << "cannot bring the oracle to doubly stochastic form: capacity solve "
              "ended with status '"
           << out.cap.status << "' (gap " << out.cap.gap_bound << ")";
        throw NumericalError(os.str());
    }
    const int m = p.num_vars();
    out.beta.resize(m);
    for (int i = 0; i < m; ++i) out.beta[i] = std::exp(out.cap.minimizer[i]);
    const double pb = p(out.beta);

    PolynomialOracle parent = p;
    std::vector<double> beta = out.beta;
    auto eval = [parent, beta, pb, m](std::span<const double> x) {
        std::vector<double> scaled(m);
        for (int i = 0; i < m; ++i) scaled[i] = beta[i] * x[i];
        return parent(scaled) / pb;
    };
    PolynomialOracle::ExactEval exact;
    if (p.has_exact()) {
        std::vector<Rat> beta_rat(m);
        for (int i = 0; i < m; ++i) beta_rat[i] = rat_from_double(beta[i]);
        Rat pb_rat = p.exact(beta_rat);
        exact = [parent, beta_rat, pb_rat, m](std::span<const Rat> x) {
            std::vector<Rat> scaled(m);
            for (int i = 0; i < m; ++i) scaled[i] = beta_rat[i] * x[i];
            return parent.exact(scaled) / pb_rat;
        };
    }
    out.q = PolynomialOracle(m, p.degree(), p.provenance(), std::move(eval),
                             std::move(exact));
    out.defect = ds_defect(out.q);
    if (out.defect > defect_tol) {
        std::ostringstream os;
        os << "scaled oracle misses double stochasticity: defect " << out.defect
           << " over tolerance " << defect_tol
           << "; the capacity minimizer is not accurate enough";
        throw NumericalError(os.str());
    }
    return out;
}

ApproxResult approximate_coefficient(const PolynomialOracle& p, int max_iterations) {
    if (p.is_zero()) throw ValidationError("zero polynomial");
    if (p.num_vars() != p.degree())
        throw ValidationError("coefficient estimation needs degree == variable count");
    const int n = p.num_vars();

    ApproxResult out;
    out.support_degrees.resize(n);
    for (int i = 0; i < n; ++i)
        out.support_degrees[i] = support_degree(p, 1u << i);

    FactorResult fac = generalized_factor(out.support_degrees, "best");
    out.factor = to_double(fac.factor);

    out.cap = capacity(p, std::log(2.0), max_iterations);
    if (out.cap.status == "unbounded-below-suspected")
        throw ValidationError("the capacity infimum looks unattained (decomposable "
                              "input?); the coefficient estimate would be meaningless");
    out.estimate = out.cap.cap_estimate;
    out.cap_lower = out.estimate / 2.0;
    out.coefficient_lower = out.estimate * out.factor / 2.0;
    out.coefficient_upper = out.estimate;
    return out;
}

ImprovedResult improved_approximate(const PolynomialOracle& p, int levels,
                                    int max_iterations) {
    if (levels < 0) throw ValidationError("level count must be nonnegative");
    if (p.is_zero()) throw ValidationError("zero polynomial");
    if (p.num_vars() != p.degree())
        throw ValidationError("coefficient estimation needs degree == variable count");
    const int n = p.num_vars();

    ImprovedResult out;
    int k = 0;
    if (levels > 0 && n >= 2)
        k = static_cast<int>(std::ceil(levels * std::log2(static_cast<double>(n))));
    k = std::min(k, n);

    // The derivative oracle multiplies every base evaluation by 2^k (n+1),
    // and the capacity solve on top multiplies again by its gradient stencil.
    // Gate on the combined per-gradient cost so the solve stays tractable.
    if (k > 0) {
        const std::uint64_t fanout = std::uint64_t{1} << std::min(k, 62);
        const std::uint64_t stencil =
            static_cast<std::uint64_t>(std::max(1, n - k)) *
            static_cast<std::uint64_t>(n - k + 1);
        const std::uint64_t per_gradient =
            fanout * static_cast<std::uint64_t>(n + 1) * stencil;
        if (k >= 62 || per_gradient > 50'000'000) {
            out.fell_back = true;
            std::ostringstream os;
            os << "derivative order " << k << " needs about " << per_gradient
               << " base evaluations per gradient; falling back to the plain estimate";
            out.warning = os.str();
            k = 0;
        }
    }
    out.k = k;

    if (k == 0) {
        out.approx = approximate_coefficient(p, max_iterations);
        return out;
    }
    PolynomialOracle pk = derivative_oracle(p, k);
    if (pk.is_zero())
        throw ValidationError("the k-fold derivative vanishes; the target "
                              "coefficient is 0");
    out.approx = approximate_coefficient(pk, max_iterations);
    return out;
}

} // namespace polycap
