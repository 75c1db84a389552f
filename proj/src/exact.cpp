#include "polycap/exact.hpp"

#include "polycap/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <vector>

namespace polycap {

RatComplex det_exact(std::vector<std::vector<RatComplex>> m) {
    const int n = static_cast<int>(m.size());
    RatComplex det(Rat(1));
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (!m[r][col].is_zero()) { pivot = r; break; }
        if (pivot < 0) return RatComplex();
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            det = RatComplex(Rat(-1)) * det;
        }
        det = det * m[col][col];
        for (int r = col + 1; r < n; ++r) {
            if (m[r][col].is_zero()) continue;
            RatComplex f = m[r][col] / m[col][col];
            for (int c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

namespace {

// Ryser over a Gray code: per(A) = (-1)^n sum_S (-1)^|S| prod_i sum_{j in S} A_ij.
// The row partial sums are updated one column flip at a time.
template <typename Num, typename Fetch>
Num ryser(int n, Fetch entry) {
    std::vector<Num> rowsum(n, Num(0));
    Num total(0);
    std::uint64_t prev = 0;
    const std::uint64_t end = std::uint64_t{1} << n;
    for (std::uint64_t g = 1; g < end; ++g) {
        const std::uint64_t gray = g ^ (g >> 1);
        const std::uint64_t diff = gray ^ prev;
        const int j = std::countr_zero(diff);
        const bool added = gray & diff;
        for (int i = 0; i < n; ++i) {
            if (added)
                rowsum[i] += entry(i, j);
            else
                rowsum[i] -= entry(i, j);
        }
        prev = gray;
        Num prod(1);
        for (int i = 0; i < n; ++i) prod *= rowsum[i];
        if (std::popcount(gray) % 2 == 0)
            total += prod;
        else
            total -= prod;
    }
    if (n % 2 != 0) total = -total;
    return total;
}

} // namespace

Rat permanent_rational(const NonnegativeMatrix& A) {
    const int n = A.n();
    if (n > 24) throw BudgetError("permanent limited to n <= 24");
    return ryser<Rat>(n, [&](int i, int j) { return A.at(i, j); });
}

double permanent_longdouble(const NonnegativeMatrix& A) {
    const int n = A.n();
    if (n > 24) throw BudgetError("permanent limited to n <= 24");
    long double v = ryser<long double>(
        n, [&](int i, int j) { return static_cast<long double>(A(i, j)); });
    return static_cast<double>(v);
}

ExactValue permanent_exact(const NonnegativeMatrix& A) {
    const int n = A.n();
    if (n > 24) {
        std::ostringstream os;
        os << "permanent of a " << n << " x " << n
           << " matrix is over the n <= 24 enumeration cap";
        throw BudgetError(os.str());
    }
    ExactValue out;
    if (n <= 12 || A.is_integer()) {
        Rat r = permanent_rational(A);
        out.rational = r;
        out.value = to_double(r);
        out.method = "ryser-rational";
    } else {
        out.value = permanent_longdouble(A);
        out.method = "ryser-longdouble";
    }
    return out;
}

Rat permanent_perm_sum(const NonnegativeMatrix& A, int hard_cap) {
    const int n = A.n();
    if (n > hard_cap) throw BudgetError("permutation-sum permanent cap exceeded");
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Rat total(0);
    do {
        Rat prod(1);
        for (int i = 0; i < n; ++i) prod *= A.at(i, perm[i]);
        total += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

Rat permanent_minor(const std::vector<std::vector<Rat>>& rows) {
    const int n = static_cast<int>(rows.size());
    if (n == 0) return Rat(1);
    for (const auto& r : rows)
        if (static_cast<int>(r.size()) != n)
            throw ValidationError("minor is not square");
    if (n > 24) throw BudgetError("permanent limited to n <= 24");
    return ryser<Rat>(n, [&](int i, int j) { return rows[i][j]; });
}

double mixed_discriminant_polarization(const HermitianTuple& T) {
    const int n = T.n();
    if (n > 20) throw BudgetError("mixed discriminant polarization limited to n <= 20");
    // D(A_1..A_n) = sum_{S != empty} (-1)^{n-|S|} det(sum_{i in S} A_i);
    // subset sums built by Gray-code updates on a running accumulator.
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, n);
    std::uint64_t prev = 0;
    long double total = 0.0L;
    const std::uint64_t end = std::uint64_t{1} << n;
    for (std::uint64_t g = 1; g < end; ++g) {
        const std::uint64_t gray = g ^ (g >> 1);
        const std::uint64_t diff = gray ^ prev;
        const int i = std::countr_zero(diff);
        if (gray & diff)
            acc += T[i];
        else
            acc -= T[i];
        prev = gray;
        std::complex<double> det = Eigen::PartialPivLU<Eigen::MatrixXcd>(acc).determinant();
        if ((n - std::popcount(gray)) % 2 == 0)
            total += det.real();
        else
            total -= det.real();
    }
    return static_cast<double>(total);
}

namespace {

ExactValue mixed_discriminant_perm_sum(const HermitianTuple& T, bool rational) {
    const int n = T.n();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    if (rational) {
        // Entries converted exactly (doubles are binary rationals), so the
        // permutation sum is exact over the stored tuple.
        Rat re(0), im(0);
        do {
            std::vector<std::vector<RatComplex>> B(n, std::vector<RatComplex>(n));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const std::complex<double> z = T[perm[i]](i, j);
                    B[i][j] = RatComplex(rat_from_double(z.real()),
                                         rat_from_double(z.imag()));
                }
            RatComplex d = det_exact(std::move(B));
            re += d.re;
            im += d.im;
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (im != 0) {
            // Only reachable when the inputs passed the Hermitian tolerance
            // check without being exactly Hermitian.
            double scale = 1.0 + std::abs(to_double(re));
            if (std::abs(to_double(im)) > 1e-9 * scale)
                throw NumericalError("mixed discriminant has a nonreal value; "
                                     "tuple is not exactly Hermitian");
        }
        ExactValue out;
        out.rational = re;
        out.value = to_double(re);
        out.method = "permutation-sum-rational";
        return out;
    }
    std::complex<long double> total(0.0L, 0.0L);
    do {
        std::vector<std::vector<std::complex<long double>>> B(
            n, std::vector<std::complex<long double>>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const std::complex<double> z = T[perm[i]](i, j);
                B[i][j] = {static_cast<long double>(z.real()),
                           static_cast<long double>(z.imag())};
            }
        // Fraction-free elimination is overkill here; plain partial pivoting
        // in extended precision.
        std::complex<long double> det(1.0L, 0.0L);
        bool singular = false;
        for (int col = 0; col < n && !singular; ++col) {
            int pivot = col;
            long double best = std::norm(B[col][col]);
            for (int r = col + 1; r < n; ++r) {
                long double cand = std::norm(B[r][col]);
                if (cand > best) { best = cand; pivot = r; }
            }
            if (best == 0.0L) { singular = true; break; }
            if (pivot != col) { std::swap(B[pivot], B[col]); det = -det; }
            det *= B[col][col];
            for (int r = col + 1; r < n; ++r) {
                auto f = B[r][col] / B[col][col];
                for (int c = col; c < n; ++c) B[r][c] -= f * B[col][c];
            }
        }
        if (!singular) total += det;
    } while (std::next_permutation(perm.begin(), perm.end()));
    ExactValue out;
    out.value = static_cast<double>(total.real());
    out.method = "permutation-sum";
    double tol = 1e-9 * (1.0 + std::abs(out.value));
    if (std::abs(static_cast<double>(total.imag())) > tol)
        throw NumericalError("mixed discriminant has a nonreal value; "
                             "tuple is not Hermitian enough");
    return out;
}

} // namespace

ExactValue mixed_discriminant_exact(const HermitianTuple& T) {
    const int n = T.n();
    if (T.all_diagonal_real()) {
        // Diagonal tuples reduce to a permanent: row i of the reduced matrix
        // is the diagonal of A_i.
        if (n <= 24) {
            std::vector<Rat> entries;
            entries.reserve(static_cast<std::size_t>(n) * n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    entries.push_back(rat_from_double(T[i](j, j).real()));
            Rat r = ryser<Rat>(n, [&](int i, int j) {
                return entries[static_cast<std::size_t>(i) * n + j];
            });
            ExactValue out;
            out.rational = r;
            out.value = to_double(r);
            out.method = "diagonal-permanent";
            return out;
        }
    }
    if (n <= 6) return mixed_discriminant_perm_sum(T, true);
    if (n <= 10) return mixed_discriminant_perm_sum(T, false);
    if (n <= 20) {
        ExactValue out;
        out.value = mixed_discriminant_polarization(T);
        out.method = "polarization";
        return out;
    }
    throw BudgetError("mixed discriminant limited to n <= 20");
}

double capacity_grid(const PolynomialOracle& p, int levels, int steps, double span) {
    const int m = p.num_vars();
    if (m > 6) throw BudgetError("grid capacity limited to n <= 6 variables");
    if (p.is_zero()) throw ValidationError("grid capacity of the zero polynomial");
    if (steps < 2 || levels < 1 || !(span > 0.0))
        throw ValidationError("grid needs steps >= 2, levels >= 1, span > 0");
    if (m <= 1) return p.value_at_ones();

    const int d = m - 1;
    std::vector<double> center(d, 0.0);
    double best = p(std::vector<double>(m, 1.0));
    std::vector<double> best_y(d, 0.0);
    double width = span;
    for (int level = 0; level < levels; ++level) {
        std::vector<int> idx(d, 0);
        std::vector<double> y(m, 0.0);
        while (true) {
            double sum = 0.0;
            for (int i = 0; i < d; ++i) {
                y[i] = center[i] - width + 2.0 * width * idx[i] / (steps - 1);
                sum += y[i];
            }
            y[d] = -sum;
            std::vector<double> x(m);
            for (int i = 0; i < m; ++i) x[i] = std::exp(y[i]);
            double v = p(x);
            if (std::isfinite(v) && v < best) {
                best = v;
                for (int i = 0; i < d; ++i) best_y[i] = y[i];
            }
            int k = 0;
            while (k < d && ++idx[k] == steps) idx[k++] = 0;
            if (k == d) break;
        }
        center = best_y;
        width = 2.0 * width / (steps - 1);
    }
    return best;
}

MiniVdw mini_vdw_verify(const std::vector<double>& a) {
    const int n = static_cast<int>(a.size());
    if (n < 2) throw ValidationError("need at least two entries");
    double total = 0.0;
    for (double v : a) {
        if (!(v >= 0.0 && v <= 1.0))
            throw ValidationError("entries must lie in [0, 1]");
        total += v;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw ValidationError("entries must sum to 1");

    std::vector<std::vector<double>> rows(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i) {
        rows[i][0] = a[i];
        const double b = (1.0 - a[i]) / (n - 1);
        for (int j = 1; j < n; ++j) rows[i][j] = b;
    }

    MiniVdw out;
    // Row sums equal 1 by construction, so the matrix constructor's positive
    // row-sum requirement always holds.
    NonnegativeMatrix A = NonnegativeMatrix::from_rows(rows);
    out.permanent = to_double(permanent_rational(A));

    // per([a | b | ... | b]) = (n-1)!/(n-1)^(n-1) * sum_i a_i prod_{j != i} (1 - a_j)
    Rat lead = Rat(factorial(static_cast<unsigned>(n - 1))) /
               rat_pow(Rat(n - 1), static_cast<unsigned>(n - 1));
    Rat sum(0);
    for (int i = 0; i < n; ++i) {
        Rat prod = rat_from_double(a[i]);
        for (int j = 0; j < n; ++j)
            if (j != i) prod *= (Rat(1) - rat_from_double(a[j]));
        sum += prod;
    }
    out.closed_form = to_double(lead * sum);
    out.vdw_floor = to_double(Rat(factorial(static_cast<unsigned>(n))) /
                              rat_pow(Rat(n), static_cast<unsigned>(n)));

    out.doubly_stochastic = true;  // row sums 1 by construction, sum a = 1 checked

    const double scale = 1.0 + std::abs(out.permanent);
    out.matches_closed_form = std::abs(out.permanent - out.closed_form) <= 1e-10 * scale;
    out.floor_holds = !out.doubly_stochastic || out.permanent >= out.vdw_floor - 1e-10;
    return out;
}

} // namespace polycap
