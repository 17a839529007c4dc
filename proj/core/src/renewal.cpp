#include "steinpp/renewal.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace steinpp {

RenewalSolution solve_renewal(const RenewalSpec& spec, double h) {
    spec.validate();
    if (!(h > 0.0)) throw std::invalid_argument("solve_renewal: step must be positive");
    const double cells = spec.T / h;
    const long M = std::lround(cells);
    if (M < 1 || std::abs(cells - static_cast<double>(M)) > 1e-9)
        throw std::invalid_argument("solve_renewal: h must divide T");

    RenewalSolution sol;
    sol.h = h;
    sol.t.resize(static_cast<std::size_t>(M) + 1);
    sol.V.resize(sol.t.size());
    sol.V2.resize(sol.t.size());

    // dF mass of cell j is F(t_j) - F(t_{j-1}), placed at t_j; the
    // convolution then only touches already-computed grid values.
    std::vector<double> dF(sol.t.size(), 0.0);
    std::vector<double> Fg(sol.t.size(), 0.0), Gg(sol.t.size(), 0.0);
    for (long k = 0; k <= M; ++k) {
        std::size_t uk = static_cast<std::size_t>(k);
        sol.t[uk] = h * static_cast<double>(k);
        Fg[uk] = spec.F.cdf(sol.t[uk]);
        Gg[uk] = spec.G.cdf(sol.t[uk]);
        if (k > 0) dF[uk] = Fg[uk] - Fg[uk - 1];
    }

    for (long k = 0; k <= M; ++k) {
        std::size_t uk = static_cast<std::size_t>(k);
        double conv_v = 0.0, conv_v2 = 0.0;
        for (long j = 1; j <= k; ++j) {
            std::size_t uj = static_cast<std::size_t>(j);
            std::size_t back = static_cast<std::size_t>(k - j);
            conv_v += sol.V[back] * dF[uj];
            conv_v2 += sol.V2[back] * dF[uj];
        }
        sol.V[uk] = Gg[uk] + conv_v;
        sol.V2[uk] = 2.0 * sol.V[uk] + conv_v2;
    }

    double residual = 0.0;
    for (long k = 0; k <= M; ++k) {
        std::size_t uk = static_cast<std::size_t>(k);
        double conv = 0.0;
        for (long j = 1; j <= k; ++j)
            conv += sol.V[static_cast<std::size_t>(k - j)] * dF[static_cast<std::size_t>(j)];
        residual = std::max(residual, std::abs(sol.V[uk] - Gg[uk] - conv));
    }
    sol.residual = residual;
    return sol;
}

Lemma41Report check_lemma41(const RenewalSpec& spec, const RenewalSolution& sol) {
    Lemma41Report rep;
    rep.slack_tolerance = 10.0 * sol.h;
    for (std::size_t k = 0; k < sol.t.size(); ++k) {
        const double t = sol.t[k];
        const double F = spec.F.cdf(t), G = spec.G.cdf(t);
        const double V = sol.V[k], V2 = sol.V2[k];
        rep.worst_lower = std::max(rep.worst_lower, G - V);
        if (F < 1.0) {
            rep.worst_upper = std::max(rep.worst_upper, V - G / (1.0 - F));
            rep.worst_second = std::max(
                rep.worst_second, (V2 - 2.0 * V) - 2.0 * F * G / ((1.0 - F) * (1.0 - F)));
        }
    }
    return rep;
}

std::string renewal_solution_csv(const RenewalSpec& spec, const RenewalSolution& sol) {
    std::ostringstream os;
    os.precision(17);
    os << "t,G,F,V,V2,V_upper,second_moment_upper\n";
    for (std::size_t k = 0; k < sol.t.size(); ++k) {
        const double t = sol.t[k];
        const double F = spec.F.cdf(t), G = spec.G.cdf(t);
        const double vu = F < 1.0 ? G / (1.0 - F) : std::numeric_limits<double>::infinity();
        const double su =
            F < 1.0 ? 2.0 * F * G / ((1.0 - F) * (1.0 - F))
                    : std::numeric_limits<double>::infinity();
        os << t << "," << G << "," << F << "," << sol.V[k] << "," << sol.V2[k] << ","
           << vu << "," << su << "\n";
    }
    return os.str();
}

} // namespace steinpp
