#include "polycap/hyperbolicity.hpp"

#include "polycap/errors.hpp"
#include "polycap/interpolation.hpp"
#include "polycap/polynomials.hpp"
#include "polycap/rng.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

namespace polycap {

namespace {

// Parlett-Reinsch balancing: diagonal similarity with radix-2 powers until
// row and column norms agree.  Companion matrices are badly scaled whenever
// the coefficients spread over many orders, and the QR eigensolver rewards
// balancing with several extra digits.
void balance(Eigen::MatrixXd& A) {
    const int n = static_cast<int>(A.rows());
    const double radix = 2.0;
    bool again = true;
    int sweeps = 0;
    while (again && sweeps++ < 100) {
        again = false;
        for (int i = 0; i < n; ++i) {
            double c = 0.0, r = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::abs(A(j, i));
                r += std::abs(A(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            double f = 1.0;
            const double s = c + r;
            while (c < r / radix) { c *= radix; r /= radix; f *= radix; }
            while (c >= r * radix) { c /= radix; r *= radix; f /= radix; }
            if ((c + r) < 0.95 * s) {
                again = true;
                for (int j = 0; j < n; ++j) A(i, j) /= f;
                for (int j = 0; j < n; ++j) A(j, i) *= f;
            }
        }
    }
}

// Coefficient noise splits an m-fold root into a star of radius roughly
// noise^(1/m), but the star's centroid stays put to about the noise level
// itself: the QR eigenvalues of the companion keep sums and products
// coefficient-consistent, so cluster means are far more accurate than any
// member.  Collapse such clusters onto their centroid; that also restores
// exact conjugate symmetry (a symmetric star averages to a real point).
//
// Top-down refinement: group liberally, accept a group only when its radius
// is consistent with a noise-split root of that multiplicity, otherwise
// regroup tighter.
void collapse_clusters(std::vector<std::complex<double>>& roots, double scale) {
    const int k = static_cast<int>(roots.size());
    if (k < 2) return;

    struct Item {
        std::vector<int> idx;
        double radius;
    };
    std::vector<Item> work;
    {
        std::vector<int> all(k);
        for (int i = 0; i < k; ++i) all[i] = i;
        work.push_back({std::move(all), 6.0 * scale * std::pow(1e-11, 1.0 / k)});
    }
    while (!work.empty()) {
        Item item = std::move(work.back());
        work.pop_back();
        const int m = static_cast<int>(item.idx.size());
        // union-find over the members at this radius
        std::vector<int> parent(m);
        for (int i = 0; i < m; ++i) parent[i] = i;
        std::function<int(int)> find = [&](int a) {
            while (parent[a] != a) a = parent[a] = parent[parent[a]];
            return a;
        };
        for (int a = 0; a < m; ++a)
            for (int b = a + 1; b < m; ++b)
                if (std::abs(roots[item.idx[a]] - roots[item.idx[b]]) <= item.radius)
                    parent[find(a)] = find(b);
        std::vector<std::vector<int>> groups(m);
        for (int i = 0; i < m; ++i) groups[find(i)].push_back(item.idx[i]);

        for (auto& g : groups) {
            if (g.size() < 2) continue;
            std::complex<double> c(0.0, 0.0);
            for (int i : g) c += roots[i];
            c /= static_cast<double>(g.size());
            double r = 0.0;
            for (int i : g) r = std::max(r, std::abs(roots[i] - c));
            if (r <= 3.0 * scale * std::pow(1e-11, 1.0 / static_cast<double>(g.size()))) {
                for (int i : g) roots[i] = c;
            } else if (item.radius > 1e-14 * scale) {
                work.push_back({g, item.radius / 4.0});
            }
        }
    }
}

std::vector<std::complex<double>> poly_roots(const std::vector<double>& coefs,
                                             int degree) {
    std::vector<std::complex<double>> roots;
    if (degree <= 0) return roots;
    std::vector<double> c(coefs.begin(), coefs.begin() + degree + 1);
    if (degree == 1) {
        roots.emplace_back(-c[0] / c[1], 0.0);
        return roots;
    }
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(degree, degree);
    for (int i = 1; i < degree; ++i) C(i, i - 1) = 1.0;
    for (int i = 0; i < degree; ++i) C(i, degree - 1) = -c[i] / c[degree];
    balance(C);
    Eigen::EigenSolver<Eigen::MatrixXd> es(C, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw NumericalError("eigenvalue iteration for the root solve failed");
    roots.reserve(degree);
    for (int i = 0; i < degree; ++i) roots.push_back(es.eigenvalues()[i]);
    double maxmod = 0.0;
    for (const auto& z : roots) maxmod = std::max(maxmod, std::abs(z));
    collapse_clusters(roots, 1.0 + maxmod);
    std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return roots;
}

// When the restriction coefficients are exact rationals, real-rootedness is
// decidable outright: Sturm's theorem counts the distinct real roots of the
// squarefree part, and recursing on gcd(u, u') accounts for multiplicities.
// No tolerance enters anywhere, so this is immune to the conjugate-pair
// artifacts the QR solve produces for real roots closer together than the
// noise floor allows it to resolve.

using RatPoly = std::vector<Rat>; // ascending coefficients, nonzero lead

int rat_sign(const Rat& a) { return a == 0 ? 0 : (a > 0 ? 1 : -1); }

void trim_poly(RatPoly& u) {
    while (!u.empty() && u.back() == 0) u.pop_back();
}

RatPoly poly_diff(const RatPoly& u) {
    RatPoly d;
    for (std::size_t k = 1; k < u.size(); ++k) d.push_back(Rat(static_cast<int>(k)) * u[k]);
    return d;
}

// Dividing by |lead| after every step keeps the chain's numerators from the
// classic remainder-sequence blowup; a positive scale never touches a sign,
// which is all the variation counts care about.
void scale_to_unit_lead(RatPoly& u) {
    if (u.empty()) return;
    Rat lead = u.back();
    if (lead < 0) lead = -lead;
    for (auto& c : u) c /= lead;
}

RatPoly poly_rem(RatPoly a, const RatPoly& b) {
    while (a.size() >= b.size()) {
        const Rat q = a.back() / b.back();
        const std::size_t off = a.size() - b.size();
        for (std::size_t k = 0; k + 1 < b.size(); ++k) a[off + k] -= q * b[k];
        a.pop_back();
        trim_poly(a);
    }
    return a;
}

RatPoly poly_gcd(RatPoly a, RatPoly b) {
    trim_poly(a);
    trim_poly(b);
    while (!b.empty()) {
        RatPoly r = poly_rem(std::move(a), b);
        scale_to_unit_lead(r);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

RatPoly poly_div_exact(RatPoly a, const RatPoly& b) {
    RatPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 1, Rat(0));
    while (a.size() >= b.size()) {
        const Rat c = a.back() / b.back();
        const std::size_t off = a.size() - b.size();
        q[off] = c;
        for (std::size_t k = 0; k + 1 < b.size(); ++k) a[off + k] -= c * b[k];
        a.pop_back();
        trim_poly(a);
    }
    return q;
}

int count_sign_flips(const std::vector<int>& signs) {
    int flips = 0, prev = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++flips;
        prev = s;
    }
    return flips;
}

// Distinct real roots of a squarefree u: total count and the count in
// (-inf, 0).  The caller guarantees u(0) != 0; zeros of intermediate chain
// elements at an evaluation point are skipped, per the usual convention.
std::pair<int, int> sturm_root_counts(const RatPoly& u) {
    std::vector<RatPoly> chain;
    chain.push_back(u);
    RatPoly d = poly_diff(u);
    trim_poly(d);
    if (!d.empty()) chain.push_back(std::move(d));
    while (chain.back().size() > 1) {
        RatPoly r = poly_rem(chain[chain.size() - 2], chain.back());
        if (r.empty()) break; // only reachable when u has a repeated root
        for (auto& c : r) c = -c;
        scale_to_unit_lead(r);
        chain.push_back(std::move(r));
    }
    std::vector<int> at_neg, at_zero, at_pos;
    for (const auto& s : chain) {
        const int lead = rat_sign(s.back());
        const int deg = static_cast<int>(s.size()) - 1;
        at_pos.push_back(lead);
        at_neg.push_back(deg % 2 == 0 ? lead : -lead);
        at_zero.push_back(rat_sign(s.front()));
    }
    const int vn = count_sign_flips(at_neg);
    const int vz = count_sign_flips(at_zero);
    const int vp = count_sign_flips(at_pos);
    return {vn - vp, vn - vz};
}

struct ExactRootFlags {
    bool all_real;
    bool any_negative;
};

// u is real-rooted iff its squarefree part is and the repeated-root cofactor
// gcd(u, u') is; peeling one multiplicity layer per pass terminates because
// the gcd's degree drops strictly.  Negative roots only need the first pass,
// since the squarefree part already carries every distinct root.
ExactRootFlags classify_roots_exact(RatPoly u) {
    ExactRootFlags f{true, false};
    while (u.size() > 1) {
        RatPoly g = poly_gcd(u, poly_diff(u));
        RatPoly s = poly_div_exact(std::move(u), g);
        auto [total, negative] = sturm_root_counts(s);
        if (total != static_cast<int>(s.size()) - 1) f.all_real = false;
        if (negative > 0) f.any_negative = true;
        if (!f.all_real && f.any_negative) break;
        u = std::move(g);
    }
    return f;
}

} // namespace

RootReport restriction_roots(const PolynomialOracle& p, std::span<const double> X,
                             std::span<const double> dir) {
    const int m = p.num_vars();
    const int n = p.degree();
    if (static_cast<int>(X.size()) != m || static_cast<int>(dir.size()) != m)
        throw ValidationError("point and direction must match the variable count");
    if (p.is_zero())
        throw ValidationError("restriction of the zero polynomial has no roots");

    RootReport rep;
    bool classified_exactly = false;
    if (p.has_exact()) {
        // The inputs are dyadic, so the sliced coefficients are exact
        // rationals; computing them that way removes the interpolation noise
        // that otherwise splits close root pairs into conjugate pairs.  Only
        // the rounding to double and the QR solve contribute error here.
        std::vector<Rat> Xr(static_cast<std::size_t>(m)), dr(static_cast<std::size_t>(m)),
            pr(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) Xr[static_cast<std::size_t>(i)] = rat_from_double(X[i]);
        for (int i = 0; i < m; ++i) dr[static_cast<std::size_t>(i)] = rat_from_double(dir[i]);
        auto slice_exact = [&](const Rat& t) -> Rat {
            for (int i = 0; i < m; ++i)
                pr[static_cast<std::size_t>(i)] =
                    Xr[static_cast<std::size_t>(i)] - t * dr[static_cast<std::size_t>(i)];
            return p.exact(pr);
        };
        std::vector<Rat> ce = interp::coefficients_exact(slice_exact, n);
        rep.coefficients.resize(ce.size());
        for (std::size_t k = 0; k < ce.size(); ++k) rep.coefficients[k] = to_double(ce[k]);
        const int deg = interp::detected_degree_exact(ce);
        rep.degree = deg < 0 ? 0 : deg;
        rep.roots = poly_roots(rep.coefficients, rep.degree);
        rep.vanish_order = 0;
        while (rep.vanish_order < rep.degree &&
               ce[static_cast<std::size_t>(rep.vanish_order)] == 0)
            ++rep.vanish_order;

        // Exact coefficients make the verdicts decidable, so decide them:
        // strip the exact t = 0 factors and Sturm-count the rest.  The
        // numeric classifier below would have to absorb the QR solve's pair
        // resolution limit (about sqrt of the coefficient noise), which
        // false-flags genuinely real pairs closer than ~1e-5; counting
        // exactly sidesteps that cliff altogether.
        RatPoly u(ce.begin() + rep.vanish_order, ce.begin() + rep.degree + 1);
        ExactRootFlags flags{true, false};
        if (u.size() > 1) flags = classify_roots_exact(std::move(u));
        rep.all_real = flags.all_real;
        rep.all_nonneg = flags.all_real && !flags.any_negative;
        classified_exactly = true;
    } else {
        double radius = 1.0;
        for (double v : X) radius = std::max(radius, std::abs(v));
        std::vector<double> pt(static_cast<std::size_t>(m));
        auto slice = [&](double t) {
            for (int i = 0; i < m; ++i) pt[static_cast<std::size_t>(i)] = X[i] - t * dir[i];
            return p(pt);
        };

        rep.coefficients = interp::coefficients_centered(slice, n, radius);
        rep.degree = interp::detected_degree(rep.coefficients, 1e-9);
        if (rep.degree < 0) rep.degree = 0;
        rep.roots = poly_roots(rep.coefficients, rep.degree);

        // The direction can squash t badly, putting roots far outside the
        // sampled window; coefficients conditioned on the actual root scale
        // give much cleaner roots, so widen and resample when that happens.
        // Widening on spec (e.g. off a loose coefficient bound) is
        // counterproductive: a needlessly wide window inflates the noise
        // floor for clustered roots.
        double window = radius + 1.0;
        for (int pass = 0; pass < 2; ++pass) {
            double spread = 0.0;
            for (const auto& z : rep.roots) spread = std::max(spread, std::abs(z));
            if (!std::isfinite(spread) || spread <= 0.9 * window || spread > 1e8) break;
            window = 1.5 * spread + 1.0;
            rep.coefficients = interp::coefficients_centered(slice, n, window - 1.0);
            const int d2 = interp::detected_degree(rep.coefficients, 1e-9);
            rep.degree = d2 < 0 ? 0 : d2;
            rep.roots = poly_roots(rep.coefficients, rep.degree);
        }

        double maxc = 0.0;
        for (double c : rep.coefficients) maxc = std::max(maxc, std::abs(c));
        rep.vanish_order = 0;
        while (rep.vanish_order < rep.degree &&
               std::abs(rep.coefficients[rep.vanish_order]) <= 1e-9 * maxc)
            ++rep.vanish_order;
    }

    double maxmod = 0.0;
    for (const auto& z : rep.roots) maxmod = std::max(maxmod, std::abs(z));
    rep.max_imag = 0.0;
    for (const auto& z : rep.roots)
        rep.max_imag = std::max(rep.max_imag, std::abs(z.imag()));

    if (!classified_exactly) {
        // Coefficient noise splits an m-fold root into a cluster of radius
        // about noise^(1/m), so a root is judged against the size of the
        // cluster it sits in: simple roots get the tight tolerance, an
        // m-cluster gets noise^(1/m).  The 1e-9 base is measured, not
        // theoretical: by degree 6 the centered fit plus the QR solve lose
        // that much relative accuracy in the worst case, which merges (or
        // splits) real pairs closer than ~3e-5 of the root scale.  Verdicts
        // below that resolution are not trustworthy either way, so the
        // allowance owns up to it.
        const double tol0 = 1e-7 * (1.0 + maxmod);
        auto allowance = [&](std::size_t i, double dev) {
            const double rad = 8.0 * dev;
            int cluster = 0;
            for (const auto& w : rep.roots)
                if (std::abs(w - rep.roots[i]) <= rad) ++cluster;
            cluster = std::clamp(cluster, 1, 8);
            return std::max(tol0, std::pow(1e-9, 1.0 / cluster) * (1.0 + maxmod));
        };
        rep.all_real = true;
        bool negative = false;
        for (std::size_t i = 0; i < rep.roots.size(); ++i) {
            const double im = std::abs(rep.roots[i].imag());
            const double re = rep.roots[i].real();
            if (im > tol0 && im > allowance(i, im)) rep.all_real = false;
            if (re < -tol0 && -re > allowance(i, std::max(im, -re))) negative = true;
        }
        rep.all_nonneg = rep.all_real && !negative;
    }
    return rep;
}

HyperbolicityVerdict check_pos_hyperbolic(const PolynomialOracle& p, int trials,
                                          std::uint64_t seed) {
    if (p.is_zero())
        throw ValidationError("cannot screen the zero polynomial");
    if (trials < 1) throw ValidationError("need at least one trial");
    const int m = p.num_vars();
    const std::vector<double> ones(m, 1.0);

    HyperbolicityVerdict v;
    v.seed = seed;
    for (int s = 0; s < trials; ++s) {
        Rng rng = Rng::for_sample(seed, static_cast<std::uint64_t>(s));
        std::vector<double> x(m);
        for (int i = 0; i < m; ++i) x[i] = rng.normal();
        RootReport rep = restriction_roots(p, x, ones);
        v.trials_run = s + 1;
        if (!rep.all_real) {
            std::ostringstream os;
            os << "restriction along the all-ones direction has a root with "
                  "imaginary part "
               << rep.max_imag << " at trial " << s;
            v.failure = os.str();
            v.counterexample = x;
            v.report = std::move(rep);
            return v;
        }
        for (int i = 0; i < m; ++i) x[i] = rng.uniform01();
        rep = restriction_roots(p, x, ones);
        if (!rep.all_real || !rep.all_nonneg) {
            std::ostringstream os;
            os << (rep.all_real ? "negative root" : "nonreal root")
               << " at a nonnegative point, trial " << s;
            v.failure = os.str();
            v.counterexample = x;
            v.report = std::move(rep);
            return v;
        }
    }
    v.passed = true;
    return v;
}

NewtonReport newton_inequalities(const std::vector<double>& coefs, double rel_tol) {
    if (coefs.size() < 2) throw ValidationError("need a polynomial of degree >= 1");
    const int n = static_cast<int>(coefs.size()) - 1;
    std::vector<long double> d(coefs.begin(), coefs.end());
    std::vector<long double> binom(n + 1);
    for (int i = 0; i <= n; ++i)
        binom[i] = static_cast<long double>(
            to_double(Rat(binomial(static_cast<unsigned>(n), static_cast<unsigned>(i)))));

    NewtonReport rep;
    rep.worst_newton_margin = 1.0;
    long double big = 0.0L;
    for (long double v : d) big = std::max(big, std::abs(v));
    // Coefficients that reach us through interpolation carry absolute noise
    // on the order of eps * max|c|.  When an inequality sits near equality
    // with all three coefficients tiny against that maximum, the products
    // below cannot be resolved better than noise * max|c|, so deficits under
    // this floor are measurement artifacts, not violations.
    const long double noise_floor = 1e-6L * big * big;
    for (int i = 1; i < n; ++i) {
        const long double lhs = d[i] * d[i];
        const long double rhs =
            d[i - 1] * d[i + 1] * (binom[i] * binom[i]) / (binom[i - 1] * binom[i + 1]);
        const long double scale =
            std::max({std::abs(lhs), std::abs(rhs), noise_floor, (long double)1e-300});
        const double margin = static_cast<double>((lhs - rhs) / scale);
        rep.worst_newton_margin = std::min(rep.worst_newton_margin, margin);
        if (margin < -rel_tol && rep.first_newton_violation < 0) {
            rep.newton_hold = false;
            rep.first_newton_violation = i;
        }
    }

    bool nonneg = true;
    for (long double v : d)
        if (v < 0.0L) { nonneg = false; break; }
    rep.worst_weak_margin = 1.0;
    if (nonneg && n >= 2) {
        for (int i = 2; i <= n; ++i) {
            long double lhs = d[i];
            for (int k = 0; k < i - 1; ++k) lhs *= d[0];
            long double rhs = binom[i];
            for (int k = 0; k < i; ++k) rhs *= d[1] / n;
            const long double scale =
                std::max({std::abs(lhs), std::abs(rhs), (long double)1e-300});
            const double margin = static_cast<double>((rhs - lhs) / scale);
            rep.worst_weak_margin = std::min(rep.worst_weak_margin, margin);
            if (margin < -rel_tol && rep.first_weak_violation < 0) {
                rep.weak_hold = false;
                rep.first_weak_violation = i;
            }
        }
    }
    return rep;
}

double inf_ratio(const std::vector<double>& coefs) {
    if (coefs.empty()) throw ValidationError("empty coefficient vector");
    double maxabs = 0.0;
    for (double v : coefs) maxabs = std::max(maxabs, std::abs(v));
    if (maxabs == 0.0) throw ValidationError("zero polynomial has no ratio");
    std::vector<long double> d(coefs.begin(), coefs.end());
    for (auto& v : d) {
        if (v < -1e-12L * maxabs)
            throw ValidationError("ratio bound needs nonnegative coefficients");
        if (v < 0.0L) v = 0.0L;
    }
    const int n = static_cast<int>(d.size()) - 1;
    const long double d0 = d[0];
    const long double d1 = d.size() > 1 ? d[1] : 0.0L;
    bool superlinear = false;
    for (int i = 2; i <= n; ++i)
        if (d[i] > 0.0L) { superlinear = true; break; }
    // R = d0 + d1 t: the ratio decreases toward d1.  d0 = 0: minimum sits at
    // t -> 0 with value d1.  Either way no search is needed.
    if (!superlinear || d0 == 0.0L) return static_cast<double>(d1);

    auto R = [&](long double t) {
        long double v = 0.0L;
        for (int i = n; i >= 0; --i) v = v * t + d[i];
        return v;
    };
    // s(t) = t R'(t) - R(t) = sum (i-1) d_i t^i is increasing with s(0) < 0,
    // so its unique root is the stationary point of R(t)/t.
    auto s = [&](long double t) {
        long double v = 0.0L;
        for (int i = n; i >= 0; --i) v = v * t + (i - 1) * d[i];
        return v;
    };
    long double hi = 1.0L;
    int guard = 0;
    while (s(hi) <= 0.0L && guard++ < 200) hi *= 2.0L;
    if (guard >= 200) throw NumericalError("stationary point search overflowed");
    long double lo = 0.0L;
    for (int it = 0; it < 160; ++it) {
        const long double mid = 0.5L * (lo + hi);
        if (s(mid) <= 0.0L)
            lo = mid;
        else
            hi = mid;
    }
    const long double t = 0.5L * (lo + hi);
    return static_cast<double>(R(t) / t);
}

double linear_coefficient_margin(const std::vector<double>& coefs) {
    if (coefs.size() < 2) throw ValidationError("need a polynomial of degree >= 1");
    const int n = static_cast<int>(coefs.size()) - 1;
    const double c = inf_ratio(coefs);
    const double g = (n <= 1) ? 1.0
                              : std::pow((n - 1.0) / n, n - 1.0);
    const double bound = c * g;
    const double d1 = coefs[1];
    const double scale = std::max({std::abs(d1), std::abs(bound), 1e-300});
    return (d1 - bound) / scale;
}

AfVerdict af_inequality_check(const PolynomialOracle& p,
                              const std::vector<std::vector<double>>& X,
                              double rel_tol) {
    const int n = p.degree();
    if (static_cast<int>(X.size()) != n)
        throw ValidationError("need one vector per degree slot");
    if (n < 2) throw ValidationError("the pair inequality needs degree >= 2");
    for (const auto& v : X)
        for (double e : v)
            if (e < 0.0)
                throw ValidationError("pair inequality applies to nonnegative slots");

    const double cross = mixed_form(p, X);
    auto X11 = X;
    X11[1] = X[0];
    auto X22 = X;
    X22[0] = X[1];
    const double m11 = mixed_form(p, X11);
    const double m22 = mixed_form(p, X22);

    AfVerdict v;
    v.lhs = cross * cross;
    v.rhs = m11 * m22;
    const double scale = std::max({std::abs(v.lhs), std::abs(v.rhs), 1e-300});
    v.margin = (v.lhs - v.rhs) / scale;
    v.holds = v.margin >= -rel_tol;
    return v;
}

FactorizationVerdict factorization_check(const PolynomialOracle& p,
                                         std::span<const double> Z,
                                         std::span<const double> Y) {
    const int m = p.num_vars();
    if (static_cast<int>(Z.size()) != m || static_cast<int>(Y.size()) != m)
        throw ValidationError("points must match the variable count");
    for (double v : Z)
        if (v < 0.0) throw ValidationError("Z must be entrywise nonnegative");
    for (double v : Y)
        if (v < 0.0) throw ValidationError("Y must be entrywise nonnegative");

    FactorizationVerdict out;
    double radius = 1.0;
    for (double v : Z) radius = std::max(radius, std::abs(v));
    for (double v : Y) radius = std::max(radius, std::abs(v));
    std::vector<double> pt(m);
    auto curve = [&](double t) {
        for (int i = 0; i < m; ++i) pt[i] = Y[i] + t * Z[i];
        return p(pt);
    };
    out.coefficients = interp::coefficients(curve, p.degree(), radius);
    double maxabs = 0.0;
    for (double c : out.coefficients) maxabs = std::max(maxabs, std::abs(c));
    out.coefficients_nonneg = true;
    for (double c : out.coefficients)
        if (c < -1e-9 * maxabs) { out.coefficients_nonneg = false; break; }

    // p(Y + tZ) has roots <= 0 exactly when p(Y - tZ) has roots >= 0.
    out.report = restriction_roots(p, Y, Z);
    out.roots_real = out.report.all_real;
    out.roots_nonpositive = out.report.all_nonneg;
    return out;
}

std::pair<double, double> entropic_gap(const std::vector<double>& c) {
    const int n = static_cast<int>(c.size());
    if (n < 1) throw ValidationError("empty tuple");
    double total = 0.0;
    for (double v : c) {
        if (v < -1e-12 || v > 1.0 + 1e-9)
            throw ValidationError("entries must lie in [0, 1]");
        total += v;
    }
    if (std::abs(total - (n - 1.0)) > 1e-6)
        throw ValidationError("entries must sum to n - 1");

    int zeros = 0;
    int zero_at = -1;
    long double prod = 1.0L;
    for (int i = 0; i < n; ++i) {
        if (c[i] <= 0.0) {
            ++zeros;
            zero_at = i;
        } else {
            prod *= c[i];
        }
    }
    long double s_n = 0.0L, s_n1 = 0.0L;
    if (zeros == 0) {
        s_n = prod;
        for (int i = 0; i < n; ++i) s_n1 += prod / c[i];
    } else if (zeros == 1) {
        s_n1 = prod;  // only the term skipping the zero entry survives
        (void)zero_at;
    }
    long double entropy = 0.0L;
    for (double v : c)
        if (v > 0.0) entropy += static_cast<long double>(v) * std::log(v);
    const double lhs = static_cast<double>(s_n1 - n * s_n);
    const double rhs = static_cast<double>(std::exp(entropy));
    return {lhs, rhs};
}

} // namespace polycap
