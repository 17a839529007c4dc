#include "steinpp/matching.hpp"

#include <limits>
#include <stdexcept>

namespace steinpp {

double min_cost_assignment(const std::vector<std::vector<double>>& cost,
                           std::vector<int>& row_to_col) {
    const int n = static_cast<int>(cost.size());
    row_to_col.assign(n, -1);
    if (n == 0) return 0.0;
    for (const auto& row : cost)
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("min_cost_assignment: matrix not square");

    const double inf = std::numeric_limits<double>::infinity();
    // Potentials and column ownership, 1-based with a virtual 0 column.
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);

    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            int i0 = p[j0], j1 = 0;
            double delta = inf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
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

    double total = 0.0;
    for (int j = 1; j <= n; ++j) {
        if (p[j]) {
            row_to_col[p[j] - 1] = j - 1;
            total += cost[p[j] - 1][j - 1];
        }
    }
    return total;
}

MatchingResult d1_prime_matching(const Configuration& a, const Configuration& b) {
    std::vector<double> small = a.expand();
    std::vector<double> large = b.expand();
    if (small.size() > large.size()) std::swap(small, large);
    const int n = static_cast<int>(small.size());
    const int m = static_cast<int>(large.size());

    MatchingResult res;
    if (m == 0) return res;
    if (n == 0) {
        res.cost = static_cast<double>(m);
        return res;
    }

    // Square m x m matrix; the m-n dummy rows cost 0 against every column,
    // so the solver minimizes exactly the injection cost.
    std::vector<std::vector<double>> cost(m, std::vector<double>(m, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) cost[i][j] = d0(small[i], large[j]);

    std::vector<int> row_to_col;
    double matched = min_cost_assignment(cost, row_to_col);
    res.cost = matched + static_cast<double>(m - n);
    for (int i = 0; i < n; ++i) res.assignment.emplace_back(i, row_to_col[i]);
    return res;
}

double d1_prime(const Configuration& a, const Configuration& b) {
    return d1_prime_matching(a, b).cost;
}

double d1(const Configuration& a, const Configuration& b) {
    const long na = a.total_mass(), nb = b.total_mass();
    if (na == 0 && nb == 0) return 0.0;
    if (na != nb) return 1.0;
    return d1_prime_matching(a, b).cost / static_cast<double>(na);
}

} // namespace steinpp
