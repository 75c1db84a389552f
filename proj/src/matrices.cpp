#include "polycap/matrices.hpp"

#include "polycap/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

namespace polycap {

NonnegativeMatrix::NonnegativeMatrix(int n, std::vector<Rat> e)
    : n_(n), exact_(std::move(e)) {
    if (n_ <= 0) throw ValidationError("matrix: dimension must be positive");
    if (exact_.size() != static_cast<std::size_t>(n_) * n_)
        throw ValidationError("matrix: entry count does not match dimension");
    num_.resize(exact_.size());
    for (std::size_t k = 0; k < exact_.size(); ++k) {
        if (exact_[k] < 0) {
            const int i = static_cast<int>(k) / n_, j = static_cast<int>(k) % n_;
            throw ValidationError("matrix: negative entry at (" + std::to_string(i) +
                                  "," + std::to_string(j) + ")");
        }
        num_[k] = to_double(exact_[k]);
    }
    for (int i = 0; i < n_; ++i) {
        Rat s(0);
        for (int j = 0; j < n_; ++j) s += at(i, j);
        if (s == 0)
            throw ValidationError("matrix: row " + std::to_string(i) + " sums to zero");
    }
}

NonnegativeMatrix NonnegativeMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    const int n = static_cast<int>(rows.size());
    std::vector<Rat> e;
    e.reserve(static_cast<std::size_t>(n) * n);
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != n)
            throw ValidationError("matrix: ragged row (expected " + std::to_string(n) +
                                  " entries)");
        for (double v : r) {
            if (!std::isfinite(v)) throw ValidationError("matrix: non-finite entry");
            e.emplace_back(rat_from_double(v));
        }
    }
    return NonnegativeMatrix(n, std::move(e));
}

NonnegativeMatrix NonnegativeMatrix::from_rationals(int n, std::vector<Rat> row_major) {
    return NonnegativeMatrix(n, std::move(row_major));
}

NonnegativeMatrix NonnegativeMatrix::identity(int n) {
    std::vector<Rat> e(static_cast<std::size_t>(n) * n, Rat(0));
    for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i) * n + i] = 1;
    return NonnegativeMatrix(n, std::move(e));
}

NonnegativeMatrix NonnegativeMatrix::uniform(int n) {
    std::vector<Rat> e(static_cast<std::size_t>(n) * n, Rat(1, n));
    return NonnegativeMatrix(n, std::move(e));
}

double NonnegativeMatrix::row_sum(int i) const {
    double s = 0;
    for (int j = 0; j < n_; ++j) s += (*this)(i, j);
    return s;
}

double NonnegativeMatrix::col_sum(int j) const {
    double s = 0;
    for (int i = 0; i < n_; ++i) s += (*this)(i, j);
    return s;
}

int NonnegativeMatrix::col_support(int j) const {
    int c = 0;
    for (int i = 0; i < n_; ++i)
        if (at(i, j) != 0) ++c;
    return c;
}

bool NonnegativeMatrix::is_integer() const {
    for (const auto& v : exact_)
        if (denominator(v) != 1) return false;
    return true;
}

NonnegativeMatrix NonnegativeMatrix::transposed() const {
    std::vector<Rat> e(exact_.size());
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            e[static_cast<std::size_t>(j) * n_ + i] = at(i, j);
    return NonnegativeMatrix(n_, std::move(e));
}

NonnegativeMatrix NonnegativeMatrix::minor_unchecked(const std::vector<int>& rows,
                                                     const std::vector<int>& cols) const {
    const int m = static_cast<int>(rows.size());
    if (rows.size() != cols.size() || m == 0)
        throw ValidationError("matrix minor: need equally many rows and columns");
    std::vector<Rat> e;
    e.reserve(static_cast<std::size_t>(m) * m);
    for (int i : rows)
        for (int j : cols) e.push_back(at(i, j));
    // Bypasses the positive-row-sum check on purpose: minors of valid
    // matrices may have zero rows and are only fed to the permanent.
    NonnegativeMatrix out(m, std::vector<Rat>(static_cast<std::size_t>(m) * m, Rat(1)));
    out.exact_ = std::move(e);
    for (std::size_t k = 0; k < out.exact_.size(); ++k) out.num_[k] = to_double(out.exact_[k]);
    return out;
}

namespace {

void check_hermitian_psd(const Eigen::MatrixXcd& A, int index, int n,
                         bool* diag_real) {
    if (A.rows() != n || A.cols() != n)
        throw ValidationError("tuple: matrix " + std::to_string(index) +
                              " has wrong dimensions");
    const double scale = 1.0 + A.cwiseAbs().maxCoeff();
    const double herm_tol = 1e-9 * scale;
    if ((A - A.adjoint()).cwiseAbs().maxCoeff() > herm_tol)
        throw ValidationError("tuple: matrix " + std::to_string(index) +
                              " is not Hermitian within tolerance");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (A + A.adjoint()),
                                                       Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -1e-9 * scale)
        throw ValidationError("tuple: matrix " + std::to_string(index) +
                              " is not PSD (min eigenvalue " + std::to_string(min_eig) + ")");
    if (diag_real) {
        bool d = true;
        for (int i = 0; i < n && d; ++i)
            for (int j = 0; j < n; ++j)
                if ((i != j && A(i, j) != std::complex<double>(0, 0)) ||
                    (i == j && A(i, i).imag() != 0.0)) { d = false; break; }
        *diag_real = *diag_real && d;
    }
}

} // namespace

HermitianTuple::HermitianTuple(std::vector<Eigen::MatrixXcd> mats) : mats_(std::move(mats)) {
    const int n = static_cast<int>(mats_.size());
    if (n == 0) throw ValidationError("tuple: empty");
    bool ignored = true;
    for (int k = 0; k < n; ++k) check_hermitian_psd(mats_[k], k, n, &ignored);
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(n, n);
    for (const auto& A : mats_) sum += A;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (sum + sum.adjoint()),
                                                       Eigen::EigenvaluesOnly);
    const double scale = 1.0 + sum.cwiseAbs().maxCoeff();
    if (es.eigenvalues().minCoeff() <= 1e-9 * scale)
        throw ValidationError("tuple: sum of matrices is not positive definite");
}

bool HermitianTuple::all_diagonal_real() const {
    const int n = this->n();
    for (const auto& A : mats_)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i != j && A(i, j) != std::complex<double>(0, 0)) return false;
                if (i == j && A(i, i).imag() != 0.0) return false;
            }
    return true;
}

HermitianTuple HermitianTuple::from_diagonals(const std::vector<std::vector<double>>& diags) {
    const int n = static_cast<int>(diags.size());
    std::vector<Eigen::MatrixXcd> mats;
    mats.reserve(diags.size());
    for (const auto& d : diags) {
        Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(n, n);
        for (int i = 0; i < n && i < static_cast<int>(d.size()); ++i) A(i, i) = d[i];
        mats.push_back(std::move(A));
    }
    return HermitianTuple(std::move(mats));
}

} // namespace polycap
