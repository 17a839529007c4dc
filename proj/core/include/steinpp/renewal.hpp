#pragma once

#include <string>
#include <vector>

#include "steinpp/processes.hpp"

namespace steinpp {

// Discretized solutions of V = G + V*F and V2 = 2V + V2*F on a uniform grid.
// V(t) = E N_t, V2(t) = E[N_t (N_t + 1)].
struct RenewalSolution {
    std::vector<double> t;
    std::vector<double> V;
    std::vector<double> V2;
    double h = 0.0;
    // Max over the grid of |V - G - sum V(t-s) dF(s)| under the same rule.
    double residual = 0.0;
};

// Left-endpoint Stieltjes forward march; h must divide T. First-order
// accurate, which also handles discontinuous F.
RenewalSolution solve_renewal(const RenewalSpec& spec, double h);

struct Lemma41Report {
    // Worst violations (positive = violated by that much) of
    //   G(t) <= V(t), V(t) <= G(t)/(1-F(t)),
    //   V2(t) - 2V(t) <= 2 F(t) G(t) / (1-F(t))^2.
    double worst_lower = 0.0;
    double worst_upper = 0.0;
    double worst_second = 0.0;
    double slack_tolerance = 0.0;

    bool ok() const {
        return worst_lower <= slack_tolerance && worst_upper <= slack_tolerance &&
               worst_second <= slack_tolerance;
    }
};

// Checks the renewal inequalities at every grid point with slack 10h.
Lemma41Report check_lemma41(const RenewalSpec& spec, const RenewalSolution& sol);

// CSV: t, G(t), F(t), V(t), V2(t), and the two inequality ceilings.
std::string renewal_solution_csv(const RenewalSpec& spec, const RenewalSolution& sol);

} // namespace steinpp
