#ifndef POLYCAP_MATRICES_HPP
#define POLYCAP_MATRICES_HPP

#include "polycap/rational.hpp"

#include <Eigen/Dense>

#include <vector>

namespace polycap {

// Square matrix with entries >= 0 and every row sum strictly positive (the
// standing assumption for the product-form oracle).  Entries are stored as
// exact rationals with a cached double mirror; matrices built from doubles are
// exact too since doubles are binary rationals.
class NonnegativeMatrix {
public:
    static NonnegativeMatrix from_rows(const std::vector<std::vector<double>>& rows);
    static NonnegativeMatrix from_rationals(int n, std::vector<Rat> row_major);
    static NonnegativeMatrix identity(int n);
    // All entries 1/n (exact).
    static NonnegativeMatrix uniform(int n);

    int n() const { return n_; }
    double operator()(int i, int j) const { return num_[static_cast<std::size_t>(i) * n_ + j]; }
    const Rat& at(int i, int j) const { return exact_[static_cast<std::size_t>(i) * n_ + j]; }

    double row_sum(int i) const;
    double col_sum(int j) const;
    // Nonzero count of column j (the support degree of variable j).
    int col_support(int j) const;
    bool is_integer() const;

    NonnegativeMatrix transposed() const;
    // Submatrix with the given (sorted) row and column index lists.
    NonnegativeMatrix minor_unchecked(const std::vector<int>& rows,
                                      const std::vector<int>& cols) const;

private:
    NonnegativeMatrix(int n, std::vector<Rat> e);

    int n_ = 0;
    std::vector<Rat> exact_;
    std::vector<double> num_;
};

// Tuple of n Hermitian PSD n x n matrices whose sum is positive definite;
// the coefficient data for the determinantal oracle.
class HermitianTuple {
public:
    explicit HermitianTuple(std::vector<Eigen::MatrixXcd> mats);

    int n() const { return static_cast<int>(mats_.size()); }
    const Eigen::MatrixXcd& operator[](int k) const { return mats_[static_cast<std::size_t>(k)]; }
    const std::vector<Eigen::MatrixXcd>& matrices() const { return mats_; }

    // True when every matrix is real diagonal (exactly); enables the
    // permanent reduction for the exact mixed discriminant.
    bool all_diagonal_real() const;

    static HermitianTuple from_diagonals(const std::vector<std::vector<double>>& diags);

private:
    std::vector<Eigen::MatrixXcd> mats_;
};

} // namespace polycap

#endif
