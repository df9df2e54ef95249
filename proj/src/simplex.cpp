#include "kn/simplex.hpp"

namespace kn {

std::optional<std::vector<Rational>> simplex_equality_feasible(
    const std::vector<std::vector<Rational>>& a_rows,
    const std::vector<Rational>& b) {
    const std::size_t m = a_rows.size();
    if (b.size() != m) throw DimensionError("simplex: rhs size mismatch");
    const std::size_t n = m == 0 ? 0 : a_rows.front().size();
    for (const auto& row : a_rows)
        if (row.size() != n) throw DimensionError("simplex: ragged constraint matrix");
    if (m == 0) return std::vector<Rational>(n, Rational(0));

    // Tableau: n structural columns, m artificial columns, rhs.
    const std::size_t cols = n + m + 1;
    std::vector<std::vector<Rational>> t(m, std::vector<Rational>(cols, Rational(0)));
    for (std::size_t i = 0; i < m; ++i) {
        bool flip = b[i] < 0;
        for (std::size_t j = 0; j < n; ++j)
            t[i][j] = flip ? -a_rows[i][j] : a_rows[i][j];
        t[i][n + i] = 1;
        t[i][cols - 1] = flip ? -b[i] : b[i];
    }
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

    // Phase-1 objective: minimize the sum of artificials. Reduced-cost row
    // for the initial artificial basis.
    std::vector<Rational> red(cols, Rational(0));
    for (std::size_t j = 0; j < cols; ++j) {
        Rational s(0);
        for (std::size_t i = 0; i < m; ++i) s += t[i][j];
        if (j < n)
            red[j] = -s;
        else if (j < n + m)
            red[j] = Rational(1) - s; // cost 1 minus column sum
        else
            red[j] = -s; // objective value (negated) in the rhs slot
    }

    while (true) {
        // Bland: entering column = smallest index with negative reduced cost.
        std::size_t enter = cols;
        for (std::size_t j = 0; j + 1 < cols; ++j)
            if (red[j] < 0) {
                enter = j;
                break;
            }
        if (enter == cols) break;

        // Ratio test; Bland tie-break on the smallest basis variable.
        std::size_t leave = m;
        Rational best_ratio(0);
        for (std::size_t i = 0; i < m; ++i) {
            if (t[i][enter] <= 0) continue;
            Rational ratio = t[i][cols - 1] / t[i][enter];
            if (leave == m || ratio < best_ratio ||
                (ratio == best_ratio && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave == m) break; // unbounded column cannot happen in phase 1

        // Pivot.
        Rational piv = t[leave][enter];
        for (std::size_t j = 0; j < cols; ++j) t[leave][j] /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || t[i][enter] == 0) continue;
            Rational f = t[i][enter];
            for (std::size_t j = 0; j < cols; ++j) t[i][j] -= f * t[leave][j];
        }
        if (red[enter] != 0) {
            Rational f = red[enter];
            for (std::size_t j = 0; j < cols; ++j) red[j] -= f * t[leave][j];
        }
        basis[leave] = enter;
    }

    // Feasible iff the phase-1 optimum is zero.
    if (red[cols - 1] != 0) return std::nullopt;

    std::vector<Rational> x(n, Rational(0));
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < n) x[basis[i]] = t[i][cols - 1];
    return x;
}

} // namespace kn
