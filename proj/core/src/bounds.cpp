#include "steinpp/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "steinpp/matching.hpp"
#include "steinpp/parallel.hpp"

namespace steinpp {

namespace {

double mean_of(const std::vector<double>& xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

// Standard error of the mean.
double stderr_of(const std::vector<double>& xs) {
    if (xs.size() < 2) return 0.0;
    const double m = mean_of(xs);
    double ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    return std::sqrt(ss / (static_cast<double>(xs.size()) *
                           static_cast<double>(xs.size() - 1)));
}

void finalize(BoundReport& r) {
    r.vacuous = r.value > 1.0;
    if (r.value < 0.0) throw std::logic_error("bound evaluated negative");
}

double kappa_prefactor(double lambda, double kappa, double denom) {
    return 3.5 / lambda +
           2.5 * (std::sqrt(kappa * (1.0 + kappa / 4.0)) + 1.0 + kappa / 2.0) / denom;
}

} // namespace

std::string metric_name(Metric m) {
    switch (m) {
        case Metric::dtv: return "dtv";
        case Metric::d2: return "d2";
        case Metric::dTV: return "dTV";
    }
    return "?";
}

Metric parse_metric(const std::string& name) {
    if (name == "dtv") return Metric::dtv;
    if (name == "d2") return Metric::d2;
    if (name == "dTV") return Metric::dTV;
    throw std::invalid_argument("unknown metric: " + name);
}

std::string BoundReport::to_json() const {
    nlohmann::json j;
    j["metric"] = metric_name(metric);
    j["value"] = value;
    j["formula_id"] = formula_id;
    j["vacuous"] = vacuous;
    if (mc_stderr) j["mc_stderr"] = *mc_stderr;
    nlohmann::json t = nlohmann::json::object();
    for (const auto& [label, v] : terms) t[label] = v;
    j["terms"] = t;
    if (!notes.empty()) j["notes"] = notes;
    return j.dump(2);
}

std::string BoundReport::to_csv_row() const {
    std::ostringstream os;
    os.precision(17);
    os << formula_id << "," << metric_name(metric) << "," << value << ","
       << (mc_stderr ? *mc_stderr : 0.0) << "," << (vacuous ? 1 : 0);
    return os.str();
}

double stein_factor_tv(double lambda) {
    if (lambda <= 0.0) return 1.0;
    return -std::expm1(-lambda) / lambda;
}

BoundReport mc_bound_theorem21(const PalmCoupling& pc, Metric metric,
                               long replicates, SeededStream stream) {
    if (replicates < 1)
        throw std::invalid_argument("mc_bound_theorem21: need at least one replicate");
    const int n = pc.index_count();
    const double lambda = pc.lambda();

    BoundReport rep;
    rep.metric = metric;
    rep.formula_id = metric == Metric::dtv ? "2.1" : metric == Metric::d2 ? "2.2" : "2.3";
    if (!pc.verified()) rep.notes.push_back("palm coupling declared, unverified");
    if (lambda == 0.0) {
        rep.mc_stderr = 0.0;
        finalize(rep);
        return rep;
    }

    const std::size_t R = static_cast<std::size_t>(replicates);
    const std::size_t un = static_cast<std::size_t>(n);

    if (metric == Metric::dtv || metric == Metric::dTV) {
        // Per-replicate integrand totals, index-addressed for determinism.
        std::vector<std::vector<double>> per_i(un, std::vector<double>(R, 0.0));
        parallel_for(R, [&](std::size_t r) {
            RandomStream rng(stream.substream(r));
            for (int i = 0; i < n; ++i) {
                const double li = pc.lambda_i(i);
                if (li == 0.0) continue;
                PalmDraw d = pc.sample(i, rng);
                double integrand;
                if (metric == Metric::dtv) {
                    integrand =
                        std::abs(static_cast<double>(d.v_i.total_mass() -
                                                     d.v_i_palm.total_mass())) +
                        std::abs(static_cast<double>(d.xi_i.total_mass() -
                                                     d.xi_i_palm.total_mass()));
                } else {
                    integrand =
                        static_cast<double>(variation_norm_diff(d.v_i, d.v_i_palm)) +
                        static_cast<double>(variation_norm_diff(d.xi_i, d.xi_i_palm));
                }
                per_i[static_cast<std::size_t>(i)][r] = li * integrand;
            }
        });

        const double factor = metric == Metric::dtv ? stein_factor_tv(lambda) : 1.0;
        std::vector<double> totals(R, 0.0);
        for (std::size_t i = 0; i < un; ++i) {
            double ti = factor * mean_of(per_i[i]);
            rep.terms.emplace_back("i=" + std::to_string(i), ti);
            rep.value += ti;
            for (std::size_t r = 0; r < R; ++r) totals[r] += factor * per_i[i][r];
        }
        rep.mc_stderr = stderr_of(totals);
        finalize(rep);
        return rep;
    }

    // d2: the V-term multiplies the random factor inside the expectation
    // (joint draw); the Xi-term averages factor and integrand separately,
    // using the independence of Xi^(i) from (Xi_i, Xi_{i,alpha}).
    std::vector<std::vector<double>> v_term(un, std::vector<double>(R, 0.0));
    std::vector<std::vector<double>> factor_i(un, std::vector<double>(R, 0.0));
    std::vector<std::vector<double>> xi_term(un, std::vector<double>(R, 0.0));
    parallel_for(R, [&](std::size_t r) {
        RandomStream rng(stream.substream(r));
        for (int i = 0; i < n; ++i) {
            const double li = pc.lambda_i(i);
            const std::size_t ui = static_cast<std::size_t>(i);
            if (li == 0.0) continue;
            PalmDraw d = pc.sample(i, rng);
            const double f =
                2.5 / (static_cast<double>(d.xi_rest.total_mass()) + 1.0);
            v_term[ui][r] = li * (3.5 / lambda + f) * d1_prime(d.v_i, d.v_i_palm);
            factor_i[ui][r] = f;
            xi_term[ui][r] = li * d1_prime(d.xi_i, d.xi_i_palm);
        }
    });

    std::vector<double> v_totals(R, 0.0);
    double se2 = 0.0;
    for (std::size_t i = 0; i < un; ++i) {
        const double vi = mean_of(v_term[i]);
        const double fbar = 3.5 / lambda + mean_of(factor_i[i]);
        const double gbar = mean_of(xi_term[i]);
        const double ti = vi + fbar * gbar;
        rep.terms.emplace_back("i=" + std::to_string(i), ti);
        rep.value += ti;
        for (std::size_t r = 0; r < R; ++r) v_totals[r] += v_term[i][r];
        // Delta method for the product of the two independent averages.
        const double se_f = stderr_of(factor_i[i]);
        const double se_g = stderr_of(xi_term[i]);
        se2 += gbar * gbar * se_f * se_f + fbar * fbar * se_g * se_g;
    }
    const double se_v = stderr_of(v_totals);
    rep.mc_stderr = std::sqrt(se_v * se_v + se2);
    finalize(rep);
    return rep;
}

BoundReport bound_cor22(const IndependentMoments& m, Metric metric) {
    const std::size_t n = m.lambda_i.size();
    if (m.second_moment.size() != n || m.variance.size() != n)
        throw std::invalid_argument("bound_cor22: moment vectors disagree in size");
    double lambda = 0.0, max_lambda = 0.0, var_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (m.variance[i] < 0.0)
            throw std::invalid_argument("bound_cor22: negative variance");
        lambda += m.lambda_i[i];
        max_lambda = std::max(max_lambda, m.lambda_i[i]);
        var_sum += m.variance[i];
    }

    BoundReport rep;
    rep.metric = metric;
    rep.formula_id = metric == Metric::dtv ? "2.6" : metric == Metric::d2 ? "2.8" : "2.9";
    if (lambda == 0.0) {
        finalize(rep);
        return rep;
    }

    double factor;
    if (metric == Metric::dtv) {
        factor = stein_factor_tv(lambda);
    } else if (metric == Metric::dTV) {
        factor = 1.0;
    } else {
        const double denom = lambda - max_lambda + 1.0;
        const double kappa = var_sum / denom;
        factor = kappa_prefactor(lambda, kappa, denom);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double ti =
            factor * (m.lambda_i[i] * m.lambda_i[i] + m.second_moment[i] - m.lambda_i[i]);
        rep.terms.emplace_back("i=" + std::to_string(i), ti);
        rep.value += ti;
    }
    finalize(rep);
    return rep;
}

BoundReport bound_cor23(const IndicatorModel& m, Metric metric,
                        Cor23Variant variant, long replicates, SeededStream stream) {
    m.validate();
    const int n = m.size();
    const double lambda = m.lambda();

    BoundReport rep;
    rep.metric = metric;
    if (lambda == 0.0) {
        rep.formula_id = "2.10";
        finalize(rep);
        return rep;
    }

    // Neighborhood moment sum per i: sum_{j in A_i \ {i}} E I_i I_j
    //                               + sum_{j in A_i} p_i p_j.
    std::vector<double> pair_sum(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        const std::size_t ui = static_cast<std::size_t>(i);
        for (int j : m.A[ui]) {
            if (j != i) pair_sum[ui] += m.joint_moment(i, j);
            pair_sum[ui] += m.p[ui] * m.p[static_cast<std::size_t>(j)];
        }
    }

    if (metric != Metric::d2) {
        if (variant != Cor23Variant::closed)
            throw std::invalid_argument("bound_cor23: dtv/dTV use the closed variant");
        rep.formula_id = metric == Metric::dtv ? "2.10" : "2.12";
        const double factor = metric == Metric::dtv ? stein_factor_tv(lambda) : 1.0;
        for (int i = 0; i < n; ++i) {
            const double ti = factor * pair_sum[static_cast<std::size_t>(i)];
            rep.terms.emplace_back("i=" + std::to_string(i), ti);
            rep.value += ti;
        }
        finalize(rep);
        return rep;
    }

    if (variant == Cor23Variant::kappa) {
        rep.formula_id = "2.14";
        for (int i = 0; i < n; ++i) {
            const std::size_t ui = static_cast<std::size_t>(i);
            const auto& Bi = m.B[ui];
            auto in_B = [&](int j) {
                return std::find(Bi.begin(), Bi.end(), j) != Bi.end();
            };
            double p_out = 0.0;
            for (int j = 0; j < n; ++j)
                if (!in_B(j)) p_out += m.p[static_cast<std::size_t>(j)];
            const double denom = p_out + 1.0;
            double cov_sum = 0.0;
            for (int j1 = 0; j1 < n; ++j1) {
                if (in_B(j1)) continue;
                for (int j2 : m.A[static_cast<std::size_t>(j1)]) {
                    if (in_B(j2)) continue;
                    cov_sum += m.joint_moment(j1, j2) -
                               m.p[static_cast<std::size_t>(j1)] *
                                   m.p[static_cast<std::size_t>(j2)];
                }
            }
            const double kappa = cov_sum / denom;
            const double ti = kappa_prefactor(lambda, kappa, denom) * pair_sum[ui];
            rep.terms.emplace_back("i=" + std::to_string(i), ti);
            rep.value += ti;
        }
        finalize(rep);
        return rep;
    }

    // MC variants (2.11) and (2.13).
    if (replicates < 1)
        throw std::invalid_argument("bound_cor23: MC variant needs replicates");
    const std::size_t R = static_cast<std::size_t>(replicates);
    std::vector<std::vector<char>> draws(R);
    parallel_for(R, [&](std::size_t r) {
        RandomStream rng(stream.substream(r));
        draws[r] = m.sampler(rng);
    });

    auto s_mass = [&](const std::vector<char>& ind, int i) {
        const auto& Ai = m.A[static_cast<std::size_t>(i)];
        long s = 0;
        for (int j = 0; j < n; ++j)
            if (std::find(Ai.begin(), Ai.end(), j) == Ai.end())
                s += ind[static_cast<std::size_t>(j)];
        return s;
    };
    auto w_mass = [&](const std::vector<char>& ind, int i) {
        const auto& Bi = m.B[static_cast<std::size_t>(i)];
        long s = 0;
        for (int j = 0; j < n; ++j)
            if (std::find(Bi.begin(), Bi.end(), j) == Bi.end())
                s += ind[static_cast<std::size_t>(j)];
        return s;
    };

    if (variant == Cor23Variant::w_unconditional) {
        rep.formula_id = "2.13";
        for (int i = 0; i < n; ++i) {
            const std::size_t ui = static_cast<std::size_t>(i);
            double acc = 0.0;
            for (const auto& ind : draws)
                acc += 2.5 / (static_cast<double>(w_mass(ind, i)) + 1.0);
            const double ti = (3.5 / lambda + acc / static_cast<double>(R)) * pair_sum[ui];
            rep.terms.emplace_back("i=" + std::to_string(i), ti);
            rep.value += ti;
        }
        rep.mc_stderr = 0.0; // factors only; integrands are exact moments
        finalize(rep);
        return rep;
    }

    rep.formula_id = "2.11";
    constexpr long kMinAccepted = 100;
    for (int i = 0; i < n; ++i) {
        const std::size_t ui = static_cast<std::size_t>(i);
        double ti = 0.0;
        // First sum: E[(3.5/lambda + 2.5/(S_i+1)) I_i I_j], j in A_i \ {i}.
        for (int j : m.A[ui]) {
            if (j == i) continue;
            double acc = 0.0;
            for (const auto& ind : draws) {
                if (ind[ui] && ind[static_cast<std::size_t>(j)])
                    acc += 3.5 / lambda +
                           2.5 / (static_cast<double>(s_mass(ind, i)) + 1.0);
            }
            ti += acc / static_cast<double>(R);
        }
        // Second sum: (3.5/lambda + E[2.5/(S_i+1) | I_j = 1]) p_i p_j,
        // with the conditional expectation by rejection on I_j = 1.
        for (int j : m.A[ui]) {
            long accepted = 0;
            double acc = 0.0;
            for (const auto& ind : draws) {
                if (!ind[static_cast<std::size_t>(j)]) continue;
                ++accepted;
                acc += 2.5 / (static_cast<double>(s_mass(ind, i)) + 1.0);
            }
            double cond;
            if (accepted >= kMinAccepted) {
                cond = acc / static_cast<double>(accepted);
            } else {
                // Too few conditioning events: substitute the unconditioned
                // average and flag it.
                double uacc = 0.0;
                for (const auto& ind : draws)
                    uacc += 2.5 / (static_cast<double>(s_mass(ind, i)) + 1.0);
                cond = uacc / static_cast<double>(R);
                rep.notes.push_back("unconditioned substitution at (i=" +
                                    std::to_string(i) + ",j=" + std::to_string(j) + ")");
            }
            ti += (3.5 / lambda + cond) * m.p[ui] * m.p[static_cast<std::size_t>(j)];
        }
        rep.terms.emplace_back("i=" + std::to_string(i), ti);
        rep.value += ti;
    }
    rep.mc_stderr = 0.0;
    finalize(rep);
    return rep;
}

BoundReport bound_bernoulli(std::span<const double> p, Metric metric) {
    double lambda = 0.0, max_p = 0.0, sum_sq = 0.0;
    for (double pi : p) {
        if (!(pi >= 0.0 && pi <= 1.0))
            throw std::invalid_argument("bound_bernoulli: probability outside [0,1]");
        lambda += pi;
        max_p = std::max(max_p, pi);
        sum_sq += pi * pi;
    }
    BoundReport rep;
    rep.metric = metric;
    rep.formula_id = "example-bernoulli";
    if (lambda == 0.0) {
        finalize(rep);
        return rep;
    }
    double factor;
    if (metric == Metric::dtv) {
        factor = stein_factor_tv(lambda);
    } else if (metric == Metric::dTV) {
        factor = 1.0;
    } else {
        if (!(lambda > max_p))
            throw std::invalid_argument("bound_bernoulli: d2 needs lambda > max p_i");
        factor = 6.0 / (lambda - max_p);
    }
    rep.value = factor * sum_sq;
    for (std::size_t i = 0; i < p.size(); ++i)
        rep.terms.emplace_back("i=" + std::to_string(i), factor * p[i] * p[i]);
    finalize(rep);
    return rep;
}

BoundReport bound_uniform_points(long n, double T) {
    if (n < 2) throw std::invalid_argument("bound_uniform_points: need n >= 2");
    BoundReport rep;
    rep.metric = Metric::d2;
    rep.formula_id = "example-uniform-points";
    rep.value = 6.0 * T / static_cast<double>(n - 1);
    rep.terms.emplace_back("6T/(n-1)", rep.value);
    finalize(rep);
    return rep;
}

BoundReport bound_thinning(const ThinningMoments& m, double retention, Metric metric) {
    const std::size_t n = m.mean_xi.size();
    if (m.mean_v.size() != n || m.mean_v_xi.size() != n || m.second_xi.size() != n)
        throw std::invalid_argument("bound_thinning: moment vectors disagree in size");
    if (!(retention >= 0.0 && retention <= 1.0))
        throw std::invalid_argument("bound_thinning: retention outside [0,1]");
    if (metric == Metric::d2)
        throw std::invalid_argument("bound_thinning: d2 requires the MC form");
    double lambda = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (m.second_xi[i] < m.mean_xi[i] * m.mean_xi[i] - 1e-12)
            throw std::invalid_argument("bound_thinning: inconsistent moments");
        lambda += m.mean_xi[i];
    }

    BoundReport rep;
    rep.metric = metric;
    rep.formula_id = metric == Metric::dtv ? "3.1" : "3.3";
    const double factor =
        metric == Metric::dtv ? retention * std::min(1.0, lambda > 0.0 ? 1.0 / lambda : 1.0)
                              : retention;
    for (std::size_t i = 0; i < n; ++i) {
        const double li = m.mean_xi[i];
        const double term = (m.mean_v[i] + m.mean_xi[i]) * li + m.mean_v_xi[i] +
                            m.second_xi[i] - m.mean_xi[i];
        const double ti = factor * term;
        rep.terms.emplace_back("i=" + std::to_string(i), ti);
        rep.value += ti;
    }
    finalize(rep);
    return rep;
}

BoundReport bound_thinning_d2(const std::function<ThinningJointDraw(RandomStream&)>& sampler,
                              std::span<const double> lambda_i, double retention,
                              long replicates, SeededStream stream) {
    if (replicates < 1)
        throw std::invalid_argument("bound_thinning_d2: need at least one replicate");
    if (!(retention >= 0.0 && retention <= 1.0))
        throw std::invalid_argument("bound_thinning_d2: retention outside [0,1]");
    double lambda = 0.0;
    for (double l : lambda_i) lambda += l;

    BoundReport rep;
    rep.metric = Metric::d2;
    rep.formula_id = "3.2";
    if (lambda == 0.0 || retention == 0.0) {
        rep.mc_stderr = 0.0;
        finalize(rep);
        return rep;
    }

    const std::size_t R = static_cast<std::size_t>(replicates);
    const std::size_t n = lambda_i.size();
    std::vector<std::vector<double>> per_i(n, std::vector<double>(R, 0.0));
    parallel_for(R, [&](std::size_t r) {
        RandomStream rng(stream.substream(r));
        ThinningJointDraw d = sampler(rng);
        for (std::size_t i = 0; i < n; ++i) {
            const double v = static_cast<double>(d.v_mass[i]);
            const double x = static_cast<double>(d.xi_mass[i]);
            const double rest = static_cast<double>(d.rest_mass[i]);
            per_i[i][r] = (3.5 / lambda + 2.5 / (rest + 1.0)) *
                          ((v + x) * lambda_i[i] + (v + x - 1.0) * x);
        }
    });

    std::vector<double> totals(R, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double ti = retention * mean_of(per_i[i]);
        rep.terms.emplace_back("i=" + std::to_string(i), ti);
        rep.value += ti;
        for (std::size_t r = 0; r < R; ++r) totals[r] += retention * per_i[i][r];
    }
    rep.mc_stderr = stderr_of(totals);
    finalize(rep);
    return rep;
}

BoundReport bound_renewal(std::span<const RenewalSpec> specs, double retention) {
    const std::size_t n = specs.size();
    if (n < 2) throw std::invalid_argument("bound_renewal: need at least two processes");
    if (!(retention >= 0.0 && retention <= 1.0))
        throw std::invalid_argument("bound_renewal: retention outside [0,1]");

    double g_sum = 0.0, g_max = 0.0;
    std::vector<double> F(n), G(n);
    for (std::size_t i = 0; i < n; ++i) {
        specs[i].validate();
        F[i] = specs[i].F.cdf(specs[i].T);
        G[i] = specs[i].G.cdf(specs[i].T);
        g_sum += G[i];
        g_max = std::max(g_max, G[i]);
    }
    const double denom = g_sum - g_max;
    if (!(denom > 0.0))
        throw std::invalid_argument("bound_renewal: sum G_i(T) must exceed max G_j(T)");

    BoundReport rep;
    rep.metric = Metric::d2;
    rep.formula_id = "4.3(per-summand)";
    rep.notes.push_back("squared survival factor applied per summand");
    if (retention < 1.0) rep.formula_id = "prop-4.5(per-summand)";
    for (std::size_t i = 0; i < n; ++i) {
        const double surv = 1.0 - F[i];
        const double ti =
            6.0 * retention * (2.0 * F[i] + G[i]) * G[i] / (denom * surv * surv);
        rep.terms.emplace_back("i=" + std::to_string(i), ti);
        rep.value += ti;
    }
    finalize(rep);
    return rep;
}

BoundReport bound_renewal_iid(const RenewalSpec& spec, long n, double retention) {
    if (n < 2) throw std::invalid_argument("bound_renewal_iid: need n >= 2");
    spec.validate();
    const double F = spec.F.cdf(spec.T);
    const double G = spec.G.cdf(spec.T);
    if (!(G > 0.0))
        throw std::invalid_argument("bound_renewal_iid: G(T) must be positive");

    BoundReport rep;
    rep.metric = Metric::d2;
    rep.formula_id = retention < 1.0 ? "prop-4.5(iid)" : "remark-4.3";
    rep.value = 6.0 * retention * static_cast<double>(n) * (2.0 * F + G) /
                (static_cast<double>(n - 1) * (1.0 - F) * (1.0 - F));
    rep.terms.emplace_back("iid", rep.value);
    finalize(rep);
    return rep;
}

double bound_schuhmacher_comparison(long n, double F_T, double G_T, double theta) {
    if (theta < 0.0)
        throw std::invalid_argument("bound_schuhmacher_comparison: negative theta");
    if (n < 1) throw std::invalid_argument("bound_schuhmacher_comparison: n < 1");
    const double lnp = n > 1 ? std::log(static_cast<double>(n)) : 0.0;
    return static_cast<double>(n) * (F_T + G_T) + theta * G_T * (1.0 + lnp);
}

} // namespace steinpp
