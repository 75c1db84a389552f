#ifndef POLYCAP_SPARSE_HPP
#define POLYCAP_SPARSE_HPP

#include "polycap/rational.hpp"

#include <map>
#include <span>
#include <vector>

namespace polycap {

class NonnegativeMatrix;

// Homogeneous polynomial with strictly positive coefficients, stored as an
// exponent -> coefficient map.  The empty map is the zero polynomial.
class SparsePolynomial {
public:
    using Terms = std::map<std::vector<int>, Rat>;

    SparsePolynomial(int num_vars, Terms terms);

    int num_vars() const { return m_; }
    int degree() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    const Terms& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    bool contains(const std::vector<int>& exponent) const;
    Rat coefficient(const std::vector<int>& exponent) const; // 0 if absent

    double eval(std::span<const double> x) const;
    Rat eval_exact(std::span<const Rat> x) const;

    // Expand prod_i <row_i(A), x> into explicit terms.  Exact; the term count
    // grows like C(2n-1, n), so this is gated to small n.
    static SparsePolynomial multilinear_expansion(const NonnegativeMatrix& A,
                                                  int max_n = 10);

private:
    int m_ = 0, n_ = 0;
    Terms terms_;
};

} // namespace polycap

#endif
