#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "steinpp/processes.hpp"

namespace steinpp {

enum class Metric { dtv, d2, dTV };

std::string metric_name(Metric m);
Metric parse_metric(const std::string& name);

struct BoundReport {
    Metric metric = Metric::dtv;
    double value = 0.0;
    std::vector<std::pair<std::string, double>> terms;
    std::string formula_id;
    std::optional<double> mc_stderr;
    bool vacuous = false; // value > 1, so the bound says nothing about a distance
    std::vector<std::string> notes;

    std::string to_json() const;
    std::string to_csv_row() const;
};

// Stein factor (1 - e^{-lambda}) / lambda, continuous at 0.
double stein_factor_tv(double lambda);

// Monte Carlo evaluation of the general locally-dependent superposition
// bounds, one coupling draw per (replicate, index).
BoundReport mc_bound_theorem21(const PalmCoupling& pc, Metric metric,
                               long replicates, SeededStream stream);

// Per-process count moments for independent superpositions.
struct IndependentMoments {
    std::vector<double> lambda_i;       // E |Xi_i|
    std::vector<double> second_moment;  // E |Xi_i|^2
    std::vector<double> variance;       // Var |Xi_i|
};

BoundReport bound_cor22(const IndependentMoments& m, Metric metric);

enum class Cor23Variant {
    closed,          // dtv / dTV closed forms
    s_conditional,   // d2 with conditional 1/(S_i+1) factors (MC)
    w_unconditional, // d2 with 1/(W_i+1) factors (MC)
    kappa            // d2 closed form via kappa_i
};

BoundReport bound_cor23(const IndicatorModel& m, Metric metric,
                        Cor23Variant variant, long replicates = 0,
                        SeededStream stream = {});

BoundReport bound_bernoulli(std::span<const double> p, Metric metric);

BoundReport bound_uniform_points(long n, double T);

// Per-process moments of the unthinned locally dependent superposition.
struct ThinningMoments {
    std::vector<double> mean_v;      // E |V_i|
    std::vector<double> mean_xi;     // E |Xi_i| (= lambda_i)
    std::vector<double> mean_v_xi;   // E |V_i| |Xi_i|
    std::vector<double> second_xi;   // E |Xi_i|^2
};

// Closed-form thinning bounds from moments (the dtv and dTV displays).
BoundReport bound_thinning(const ThinningMoments& m, double retention, Metric metric);

// Joint masses (|V_i|, |Xi_i|, |sum over the complement of A_i|) per index,
// for the d2 thinning bound estimated by Monte Carlo.
struct ThinningJointDraw {
    std::vector<long> v_mass;
    std::vector<long> xi_mass;
    std::vector<long> rest_mass;
};

BoundReport bound_thinning_d2(const std::function<ThinningJointDraw(RandomStream&)>& sampler,
                              std::span<const double> lambda_i, double retention,
                              long replicates, SeededStream stream);

// d2 bound for superposed independent renewal processes; retention < 1 gives
// the thinned variant. The squared survival factor is applied per summand.
BoundReport bound_renewal(std::span<const RenewalSpec> specs, double retention = 1.0);
BoundReport bound_renewal_iid(const RenewalSpec& spec, long n, double retention = 1.0);

// Comparison bound n[F(T)+G(T)] + theta G(T)(1 + ln+ n), reported alongside
// the renewal bound; theta is user-supplied.
double bound_schuhmacher_comparison(long n, double F_T, double G_T, double theta);

} // namespace steinpp
