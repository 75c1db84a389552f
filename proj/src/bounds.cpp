#include "polycap/bounds.hpp"

#include "polycap/errors.hpp"
#include "polycap/polynomials.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

namespace polycap {

double g_factor(int k) {
    if (k < 0) throw ValidationError("negative argument");
    if (k <= 1) return 1.0;
    return std::pow((k - 1.0) / k, k - 1.0);
}

Rat g_factor_exact(int k) {
    if (k < 0) throw ValidationError("negative argument");
    if (k <= 1) return Rat(1);
    return rat_pow(Rat(k - 1, k), static_cast<unsigned>(k - 1));
}

Rat vdw_factor(int n) {
    if (n < 0) throw ValidationError("negative argument");
    if (n == 0) return Rat(1);
    return Rat(factorial(static_cast<unsigned>(n))) /
           rat_pow(Rat(n), static_cast<unsigned>(n));
}

namespace {

// Perfect matching on the positive entries (rows to columns), augmenting-path
// style.  Returns row -> column, or an empty vector when none exists.
std::vector<int> perfect_matching(const NonnegativeMatrix& A) {
    const int n = A.n();
    std::vector<int> col_of_row(n, -1), row_of_col(n, -1);
    std::vector<char> seen(n);
    std::function<bool(int)> augment = [&](int i) -> bool {
        for (int j = 0; j < n; ++j) {
            if (A(i, j) <= 0.0 || seen[j]) continue;
            seen[j] = 1;
            if (row_of_col[j] < 0 || augment(row_of_col[j])) {
                row_of_col[j] = i;
                col_of_row[i] = j;
                return true;
            }
        }
        return false;
    };
    for (int i = 0; i < n; ++i) {
        std::fill(seen.begin(), seen.end(), 0);
        if (!augment(i)) return {};
    }
    return col_of_row;
}

// Entries lying on at least one positive diagonal, given a perfect matching:
// entry (i, j) qualifies iff j is i's matched column or swapping along an
// alternating cycle can bring it in, i.e. rows i and match(j) share a
// strongly connected component of the exchange digraph.
std::vector<std::vector<char>> diagonal_support(const NonnegativeMatrix& A,
                                                const std::vector<int>& match) {
    const int n = A.n();
    std::vector<int> row_of_col(n);
    for (int i = 0; i < n; ++i) row_of_col[match[i]] = i;

    // arcs i -> k when row i could take row k's column
    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (A(i, j) > 0.0 && row_of_col[j] != i)
                adj[i].push_back(row_of_col[j]);

    // Kosaraju: order by finish time, then sweep the transpose.
    std::vector<int> order;
    order.reserve(n);
    std::vector<char> vis(n, 0);
    std::function<void(int)> dfs1 = [&](int u) {
        vis[u] = 1;
        for (int v : adj[u])
            if (!vis[v]) dfs1(v);
        order.push_back(u);
    };
    for (int i = 0; i < n; ++i)
        if (!vis[i]) dfs1(i);
    std::vector<std::vector<int>> radj(n);
    for (int u = 0; u < n; ++u)
        for (int v : adj[u]) radj[v].push_back(u);
    std::vector<int> comp(n, -1);
    int ncomp = 0;
    std::function<void(int)> dfs2 = [&](int u) {
        comp[u] = ncomp;
        for (int v : radj[u])
            if (comp[v] < 0) dfs2(v);
    };
    for (int k = n - 1; k >= 0; --k)
        if (comp[order[k]] < 0) { dfs2(order[k]); ++ncomp; }

    std::vector<std::vector<char>> keep(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (A(i, j) > 0.0)
                keep[i][j] = (match[i] == j) || (comp[i] == comp[row_of_col[j]]);
    return keep;
}

Rat factor_for_ordering(const std::vector<int>& S, const std::vector<int>& order,
                        const std::vector<Rat>& g_table) {
    const int n = static_cast<int>(S.size());
    Rat f(1);
    for (int i = 0; i < n; ++i) {
        const int cap = n - i;  // position i (0-based) caps the factor at n-i
        f *= g_table[static_cast<std::size_t>(std::min(S[order[i]], cap))];
    }
    return f;
}

} // namespace

FactorResult generalized_factor(const std::vector<int>& support_degrees,
                                const std::string& ordering) {
    const int n = static_cast<int>(support_degrees.size());
    if (n == 0) return {Rat(1), {}, "general"};
    for (int s : support_degrees)
        if (s < 0) throw ValidationError("support degrees must be nonnegative");
    if (ordering != "identity" && ordering != "best")
        throw ValidationError("ordering must be 'identity' or 'best'");

    std::vector<Rat> g_table(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) g_table[static_cast<std::size_t>(k)] = g_factor_exact(k);

    FactorResult out;
    out.ordering.resize(n);
    std::iota(out.ordering.begin(), out.ordering.end(), 0);

    if (ordering == "identity") {
        out.factor = factor_for_ordering(support_degrees, out.ordering, g_table);
    } else if (n <= 8) {
        // Small enough to try every assignment of variables to positions.
        std::vector<int> perm = out.ordering;
        std::sort(perm.begin(), perm.end());
        Rat best(-1);
        do {
            Rat f = factor_for_ordering(support_degrees, perm, g_table);
            if (f > best) {
                best = f;
                out.ordering = perm;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        out.factor = best;
    } else {
        // Ascending support degrees: small degrees burn the loose early caps,
        // large degrees meet the tight late caps.  Matches the exhaustive
        // search wherever that is feasible.
        std::sort(out.ordering.begin(), out.ordering.end(), [&](int a, int b) {
            if (support_degrees[a] != support_degrees[b])
                return support_degrees[a] < support_degrees[b];
            return a < b;
        });
        out.factor = factor_for_ordering(support_degrees, out.ordering, g_table);
    }

    bool floor_everywhere = true;
    for (int i = 0; i < n; ++i)
        if (support_degrees[out.ordering[i]] < n - i) { floor_everywhere = false; break; }
    const bool uniform =
        std::all_of(support_degrees.begin(), support_degrees.end(),
                    [&](int s) { return s == support_degrees[0]; });
    out.formula = floor_everywhere ? "uniform-floor"
                                   : (uniform ? "uniform-support" : "general");
    return out;
}

BoundReport permanent_lower_bound(const NonnegativeMatrix& A,
                                  const std::string& ordering, double tol,
                                  int max_iterations) {
    const int n = A.n();
    BoundReport out;
    out.column_supports.resize(n);
    for (int j = 0; j < n; ++j) {
        out.column_supports[j] = A.col_support(j);
        if (out.column_supports[j] == 0) {
            std::ostringstream os;
            os << "column " << j << " is zero, so the permanent is 0 and the "
                  "capacity route does not apply";
            throw ValidationError(os.str());
        }
    }

    // Entries off every positive diagonal contribute nothing to the
    // permanent, and scalings can push them to zero without moving the
    // capacity, so the bracket is computed on the diagonal-support core.
    // That restriction also makes the capacity infimum attained (the core
    // admits a doubly stochastic scaling), which is what keeps the solver's
    // gap certificate meaningful.
    std::vector<int> match = perfect_matching(A);
    if (match.empty()) {
        // No positive diagonal at all: the permanent is exactly 0.
        out.cap.cap_estimate = 0.0;
        out.cap.gap_bound = 0.0;
        out.cap.status = "converged";
        out.cap.minimizer.assign(n, 0.0);
        out.coefficient_lower = 0.0;
        out.coefficient_upper = 0.0;
        FactorResult fac = generalized_factor(out.column_supports, ordering);
        out.factor_exact = fac.factor;
        out.factor = to_double(fac.factor);
        out.ordering = fac.ordering;
        out.formula = fac.formula;
        return out;
    }
    std::vector<std::vector<char>> keep = diagonal_support(A, match);
    std::vector<Rat> core_entries(static_cast<std::size_t>(n) * n, Rat(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (keep[i][j]) core_entries[static_cast<std::size_t>(i) * n + j] = A.at(i, j);
    NonnegativeMatrix core = NonnegativeMatrix::from_rationals(n, std::move(core_entries));
    for (int j = 0; j < n; ++j) out.column_supports[j] = core.col_support(j);

    FactorResult fac = generalized_factor(out.column_supports, ordering);
    out.factor_exact = fac.factor;
    out.factor = to_double(fac.factor);
    out.ordering = fac.ordering;
    out.formula = fac.formula;

    out.cap = capacity(build_multilinear(core), tol, max_iterations);
    out.coefficient_upper = out.cap.cap_estimate;
    if (out.cap.status == "unbounded-below-suspected" ||
        !std::isfinite(out.cap.gap_bound)) {
        // No certified floor under the capacity estimate; 0 is always sound.
        out.coefficient_lower = 0.0;
    } else {
        out.coefficient_lower =
            out.factor * out.cap.cap_estimate * std::exp(-out.cap.gap_bound);
    }
    return out;
}

RegularComparison schrijver_comparison(int k, int n) {
    if (k < 1 || n < 1 || k > n)
        throw ValidationError("need 1 <= k <= n");
    RegularComparison out;
    out.k = k;
    out.n = n;
    out.support_based = rat_pow(g_factor_exact(k), static_cast<unsigned>(n - k)) *
                        Rat(factorial(static_cast<unsigned>(k))) /
                        rat_pow(Rat(k), static_cast<unsigned>(k));
    out.classic = rat_pow(g_factor_exact(k), static_cast<unsigned>(n));
    out.support_wins_or_ties = out.support_based >= out.classic;
    return out;
}

} // namespace polycap
