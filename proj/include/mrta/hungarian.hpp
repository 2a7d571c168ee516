#pragma once

#include <cassert>
#include <cmath>
#include <limits>
#include <vector>

namespace mrta {

namespace detail {

// Jonker-Volgenant style shortest augmenting path solver. Fills row->col
// assignment and the dual potentials (u, v).
inline void solve_assignment(const std::vector<std::vector<double>>& cost,
                             std::vector<int>& row_to_col,
                             std::vector<double>& u, std::vector<double>& v) {
    int n = static_cast<int>(cost.size());
    u.assign(n + 1, 0);
    v.assign(n + 1, 0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, std::numeric_limits<double>::infinity());
        std::vector<char> used(n + 1, false);
        do {
            used[j0] = true;
            int i0 = p[j0], j1 = 0;
            double delta = std::numeric_limits<double>::infinity();
            for (int j = 1; j <= n; ++j)
                if (!used[j]) {
                    double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                    if (cur < minv[j]) {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if (minv[j] < delta) {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    row_to_col.assign(n, -1);
    for (int j = 1; j <= n; ++j)
        if (p[j] > 0) row_to_col[p[j] - 1] = j - 1;
}

// Augmenting search on the tight-edge graph, skipping one forbidden row.
inline bool try_kuhn(int row, const std::vector<std::vector<int>>& tight,
                     std::vector<char>& visited, std::vector<int>& col_match,
                     const std::vector<char>& col_frozen) {
    for (int c : tight[row]) {
        if (col_frozen[c] || visited[c]) continue;
        visited[c] = true;
        if (col_match[c] < 0 ||
            try_kuhn(col_match[c], tight, visited, col_match, col_frozen)) {
            col_match[c] = row;
            return true;
        }
    }
    return false;
}

} // namespace detail

// Minimum-cost assignment of a square matrix. Among optimal assignments the
// lexicographically smallest row->column mapping is returned: every optimal
// assignment uses only edges that are tight under the optimal duals, so the
// refinement is a lexicographic perfect matching on the tight-edge graph.
inline std::vector<int> hungarian(const std::vector<std::vector<double>>& cost) {
    int n = static_cast<int>(cost.size());
    if (n == 0) return {};
    std::vector<int> row_to_col;
    std::vector<double> u, v;
    detail::solve_assignment(cost, row_to_col, u, v);

    double scale = 1.0;
    for (const auto& row : cost)
        for (double c : row) scale = std::max(scale, std::fabs(c));
    const double eps = 1e-9 * scale;

    std::vector<std::vector<int>> tight(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (cost[i][j] - u[i + 1] - v[j + 1] <= eps) tight[i].push_back(j);

    std::vector<int> col_match(n, -1);
    for (int i = 0; i < n; ++i) col_match[row_to_col[i]] = i;
    std::vector<char> col_frozen(n, false);
    std::vector<int> result(n, -1);

    for (int i = 0; i < n; ++i) {
        int current = -1;
        for (int c = 0; c < n; ++c)
            if (col_match[c] == i) current = c;
        for (int c : tight[i]) {
            if (col_frozen[c]) continue;
            if (c >= current && current >= 0) {
                c = current; // cannot beat the current column
            }
            if (c == current) {
                result[i] = c;
                break;
            }
            // Rematch the current owner of c elsewhere, keeping row i out.
            int owner = col_match[c];
            std::vector<int> saved = col_match;
            col_match[c] = i;
            if (current >= 0) col_match[current] = -1;
            bool ok = true;
            if (owner >= 0 && owner != i) {
                std::vector<char> visited(n, false);
                visited[c] = true;
                ok = detail::try_kuhn(owner, tight, visited, col_match,
                                      col_frozen);
            }
            if (ok) {
                result[i] = c;
                break;
            }
            col_match = saved;
        }
        assert(result[i] >= 0);
        col_frozen[result[i]] = true;
    }
    return result;
}

inline double assignment_cost(const std::vector<std::vector<double>>& cost,
                              const std::vector<int>& row_to_col) {
    double total = 0;
    for (size_t i = 0; i < row_to_col.size(); ++i)
        total += cost[i][row_to_col[i]];
    return total;
}

} // namespace mrta
