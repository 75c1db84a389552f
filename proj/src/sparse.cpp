#include "polycap/sparse.hpp"

#include "polycap/errors.hpp"
#include "polycap/matrices.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace polycap {

SparsePolynomial::SparsePolynomial(int num_vars, Terms terms)
    : m_(num_vars), terms_(std::move(terms)) {
    if (m_ < 0) throw ValidationError("sparse: negative variable count");
    n_ = 0;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (static_cast<int>(e.size()) != m_)
            throw ValidationError("sparse: exponent length does not match variable count");
        int total = 0;
        for (int r : e) {
            if (r < 0) throw ValidationError("sparse: negative exponent");
            total += r;
        }
        if (c <= 0)
            throw ValidationError("sparse: coefficients must be strictly positive");
        if (first) { n_ = total; first = false; }
        else if (total != n_)
            throw ValidationError("sparse: non-homogeneous term (degree " +
                                  std::to_string(total) + " vs " + std::to_string(n_) + ")");
    }
}

bool SparsePolynomial::contains(const std::vector<int>& exponent) const {
    return terms_.count(exponent) > 0;
}

Rat SparsePolynomial::coefficient(const std::vector<int>& exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? Rat(0) : it->second;
}

double SparsePolynomial::eval(std::span<const double> x) const {
    double acc = 0;
    for (const auto& [e, c] : terms_) {
        double t = to_double(c);
        for (int i = 0; i < m_; ++i)
            for (int k = 0; k < e[i]; ++k) t *= x[i];
        acc += t;
    }
    return acc;
}

Rat SparsePolynomial::eval_exact(std::span<const Rat> x) const {
    Rat acc(0);
    for (const auto& [e, c] : terms_) {
        Rat t = c;
        for (int i = 0; i < m_; ++i)
            for (int k = 0; k < e[i]; ++k) t *= x[i];
        acc += t;
    }
    return acc;
}

SparsePolynomial SparsePolynomial::multilinear_expansion(const NonnegativeMatrix& A,
                                                         int max_n) {
    const int n = A.n();
    if (n > max_n)
        throw BudgetError("multilinear expansion: n = " + std::to_string(n) +
                          " exceeds the term-count budget (max " + std::to_string(max_n) + ")");
    Terms acc;
    acc.emplace(std::vector<int>(n, 0), Rat(1));
    for (int i = 0; i < n; ++i) {
        Terms next;
        for (const auto& [e, c] : acc) {
            for (int j = 0; j < n; ++j) {
                if (A.at(i, j) == 0) continue;
                auto e2 = e;
                ++e2[j];
                next[e2] += c * A.at(i, j);
            }
        }
        acc = std::move(next);
    }
    // rows with all zeros cannot happen (positive row sums), so acc is the
    // full degree-n expansion; drop exact zeros just in case of cancellation
    for (auto it = acc.begin(); it != acc.end();)
        it = (it->second == 0) ? acc.erase(it) : std::next(it);
    return SparsePolynomial(n, std::move(acc));
}

} // namespace polycap
