#include "steinpp/harness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "steinpp/count_dist.hpp"
#include "steinpp/matching.hpp"
#include "steinpp/parallel.hpp"
#include "steinpp/renewal.hpp"

namespace steinpp {

namespace {

using nlohmann::json;

// Stream roles, so replicate streams never collide across uses.
constexpr std::uint64_t kSimStream = 1;
constexpr std::uint64_t kBootstrapStream = 2;
constexpr std::uint64_t kBoundStream = 3;

constexpr int kBootstrapResamples = 1000;
constexpr double kExactTol = 1e-12;

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

json parse_params(const ExperimentConfig& cfg) {
    return cfg.params_json.empty() ? json::object() : json::parse(cfg.params_json);
}

TimeDistribution time_dist_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "exponential") return TimeDistribution::exponential(j.at("rate").get<double>());
    if (kind == "deterministic") return TimeDistribution::deterministic(j.at("value").get<double>());
    if (kind == "uniform") return TimeDistribution::uniform(j.at("lo").get<double>(), j.at("hi").get<double>());
    if (kind == "never") return TimeDistribution::never();
    if (kind == "empirical") {
        if (j.contains("csv_path"))
            return TimeDistribution::from_csv(read_file(j.at("csv_path").get<std::string>()));
        return TimeDistribution::empirical(j.at("grid_step").get<double>(),
                                           j.at("cdf").get<std::vector<double>>());
    }
    throw std::invalid_argument("unknown time distribution kind: " + kind);
}

struct RenewalSetup {
    std::vector<RenewalSpec> specs;
    bool iid = false;
    double h = 0.0;
};

RenewalSetup renewal_setup(const json& params) {
    RenewalSetup setup;
    if (params.contains("specs")) {
        for (const auto& js : params.at("specs")) {
            RenewalSpec s{time_dist_from_json(js.at("F")), time_dist_from_json(js.at("G")),
                          js.at("T").get<double>()};
            s.validate();
            setup.specs.push_back(std::move(s));
        }
    } else {
        const long n = params.at("n").get<long>();
        const double T = params.at("T").get<double>();
        const std::string family = params.value("family", "exponential");
        auto make_spec = [&]() -> RenewalSpec {
            if (family == "exponential") {
                const double rate = params.at("rate").get<double>();
                if (params.value("stationary", true))
                    return RenewalSpec::iid_stationary_exponential(rate, T);
                return RenewalSpec{TimeDistribution::exponential(rate),
                                   time_dist_from_json(params.at("G")), T};
            }
            return RenewalSpec{time_dist_from_json(params.at("F")),
                               time_dist_from_json(params.at("G")), T};
        };
        RenewalSpec spec = make_spec();
        spec.validate();
        setup.iid = true;
        setup.specs.assign(static_cast<std::size_t>(n), spec);
    }
    const double T = setup.specs.front().T;
    setup.h = params.value("h", T / 1000.0);
    return setup;
}

IndicatorModel thinning_base_model(const json& params) {
    const std::string base = params.value("base", "single_point");
    if (base == "single_point") {
        const double pos = params.value("position", 0.5);
        return IndicatorModel::independent_bernoulli({1.0}, {pos});
    }
    if (base == "bernoulli")
        return IndicatorModel::independent_bernoulli(params.at("p").get<std::vector<double>>());
    throw std::invalid_argument("unknown thinning base model: " + base);
}

std::unique_ptr<PalmCoupling> palm_from_json(const json& params) {
    const std::string model = params.at("model").get<std::string>();
    if (model == "poisson")
        return make_poisson_palm(params.at("lambdas").get<std::vector<double>>());
    if (model == "bernoulli")
        return make_indicator_palm(
            IndicatorModel::independent_bernoulli(params.at("p").get<std::vector<double>>()));
    if (model == "correlated_pairs")
        return make_indicator_palm(IndicatorModel::correlated_pairs(
            params.at("q").get<std::vector<double>>(),
            params.at("positions").get<std::vector<double>>()));
    throw std::invalid_argument("unknown palm model: " + model);
}

void judge(VerificationRow& row) {
    if (row.skipped) {
        row.satisfied = true;
        return;
    }
    const double ceiling =
        row.bound + row.halfwidth + (row.exact ? kExactTol : 0.0);
    row.margin = ceiling - row.distance;
    row.satisfied = row.distance <= ceiling;
    if (!row.satisfied)
        row.inconclusive = (row.distance - row.bound) < 2.0 * row.halfwidth;
}

// Simulated count law over cfg.replicates draws, with bootstrap halfwidth.
struct EmpiricalCounts {
    std::vector<long> counts;
    double tv = 0.0;
    double halfwidth = 0.0;
};

template <typename SampleFn>
EmpiricalCounts empirical_count_tv(const ExperimentConfig& cfg,
                                   const CountDistribution& reference,
                                   SampleFn&& draw_count) {
    EmpiricalCounts e;
    e.counts.assign(static_cast<std::size_t>(cfg.replicates), 0);
    SeededStream root{cfg.seed, 0};
    parallel_for(e.counts.size(), [&](std::size_t r) {
        RandomStream rng(root.substream(kSimStream, r));
        e.counts[r] = draw_count(rng);
    });
    e.tv = tv_distance(CountDistribution::from_samples(e.counts), reference).value;
    e.halfwidth = bootstrap_tv_halfwidth(e.counts, kBootstrapResamples,
                                         root.substream(kBootstrapStream, 0));
    return e;
}

bool wants(const ExperimentConfig& cfg, Metric m) {
    return cfg.metrics.empty() ||
           std::find(cfg.metrics.begin(), cfg.metrics.end(), m) != cfg.metrics.end();
}

std::string format_fixed(double v, int digits) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(digits);
    os << v;
    return os.str();
}

} // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    json j = json::parse(text);
    ExperimentConfig cfg;
    cfg.experiment = j.at("experiment").get<std::string>();
    cfg.params_json = j.value("params", json::object()).dump();
    for (const auto& m : j.value("metrics", std::vector<std::string>{}))
        cfg.metrics.push_back(parse_metric(m));
    cfg.replicates = j.value("replicates", 1L);
    if (!j.contains("seed"))
        throw std::invalid_argument("config: seed is required (no wall-clock seeding)");
    cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.output_dir = j.value("output_dir", std::string{});
    if (cfg.replicates < 1) throw std::invalid_argument("config: replicates must be >= 1");
    return cfg;
}

ExperimentConfig ExperimentConfig::load_file(const std::string& path) {
    return from_json_text(read_file(path));
}

bool VerificationReport::all_satisfied() const {
    return std::all_of(rows.begin(), rows.end(),
                       [](const VerificationRow& r) { return r.satisfied; });
}

bool VerificationReport::deterministic_failure() const {
    return std::any_of(rows.begin(), rows.end(), [](const VerificationRow& r) {
        return !r.satisfied && !r.inconclusive;
    });
}

std::string VerificationReport::to_json() const {
    json j;
    j["experiment"] = experiment;
    j["notes"] = notes;
    json jr = json::array();
    for (const auto& r : rows) {
        json row;
        row["label"] = r.label;
        row["metric"] = r.metric;
        row["distance"] = r.distance;
        row["halfwidth"] = r.halfwidth;
        row["bound"] = r.bound;
        row["bound_stderr"] = r.bound_stderr;
        row["exact"] = r.exact;
        row["bound_vacuous"] = r.bound_vacuous;
        row["skipped"] = r.skipped;
        row["satisfied"] = r.satisfied;
        row["inconclusive"] = r.inconclusive;
        row["margin"] = r.margin;
        row["note"] = r.note;
        jr.push_back(row);
    }
    j["rows"] = jr;
    return j.dump(2);
}

std::string VerificationReport::to_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "param,metric,distance,halfwidth,bound,satisfied\n";
    for (const auto& r : rows)
        os << r.label << "," << r.metric << "," << r.distance << "," << r.halfwidth
           << "," << r.bound << "," << (r.satisfied ? 1 : 0) << "\n";
    return os.str();
}

VerificationReport verify_bernoulli(const ExperimentConfig& cfg) {
    const json params = parse_params(cfg);
    const auto p = params.at("p").get<std::vector<double>>();
    double lambda = 0.0, max_p = 0.0;
    for (double pi : p) {
        lambda += pi;
        max_p = std::max(max_p, pi);
    }

    VerificationReport rep;
    rep.experiment = "bernoulli";
    const CountDistribution exact_counts = CountDistribution::poisson_binomial(p);
    const CountDistribution target = CountDistribution::poisson(lambda);
    const TvResult tv = tv_distance(exact_counts, target);

    for (Metric m : {Metric::dtv, Metric::dTV}) {
        if (!wants(cfg, m)) continue;
        BoundReport b = bound_bernoulli(p, m);
        VerificationRow row;
        row.label = metric_name(m);
        row.metric = metric_name(m);
        row.distance = tv.value;
        row.halfwidth = tv.error_bar;
        row.bound = b.value;
        row.bound_vacuous = b.vacuous;
        row.exact = true;
        row.note = m == Metric::dtv ? "exact dtv = count TV"
                                    : "count TV lower-bounds dTV";
        judge(row);
        rep.rows.push_back(row);
    }

    if (wants(cfg, Metric::d2)) {
        VerificationRow row;
        row.label = "d2";
        row.metric = "d2";
        if (!(lambda > max_p)) {
            row.skipped = true;
            row.note = "d2 bound needs lambda > max p_i; assertion skipped";
            judge(row);
        } else {
            const IndicatorModel model = IndicatorModel::independent_bernoulli(p);
            EmpiricalCounts e = empirical_count_tv(cfg, target, [&](RandomStream& rng) {
                return sample_bernoulli_process(model, rng).total_mass();
            });
            BoundReport b = bound_bernoulli(p, Metric::d2);
            row.distance = e.tv;
            row.halfwidth = e.halfwidth;
            row.bound = b.value;
            row.bound_vacuous = b.vacuous;
            row.note = "count TV lower-bounds d2";
            judge(row);
        }
        rep.rows.push_back(row);
    }
    return rep;
}

VerificationReport verify_uniform(const ExperimentConfig& cfg) {
    const json params = parse_params(cfg);
    const long n = params.at("n").get<long>();
    const double T = params.at("T").get<double>();
    if (n < 2) throw std::invalid_argument("verify_uniform: need n >= 2");
    if (T < 0.0 || T > static_cast<double>(n))
        throw std::invalid_argument("verify_uniform: need 0 <= T <= n");

    VerificationReport rep;
    rep.experiment = "uniform_points";
    const CountDistribution bin = CountDistribution::binomial(n, T / static_cast<double>(n));
    const CountDistribution target = CountDistribution::poisson(T);
    const TvResult tv = tv_distance(bin, target);
    BoundReport b = bound_uniform_points(n, T);

    VerificationRow row;
    row.label = "d2";
    row.metric = "d2";
    row.distance = tv.value;
    row.halfwidth = tv.error_bar;
    row.bound = b.value;
    row.bound_vacuous = b.vacuous;
    row.exact = true;
    row.note = "count TV lower-bounds d2";
    judge(row);
    rep.rows.push_back(row);
    if (tv.value > 0.0)
        rep.notes.push_back("tightness ratio distance/bound = " +
                            format_fixed(tv.value / b.value, 6));
    return rep;
}

VerificationReport verify_renewal(const ExperimentConfig& cfg) {
    const json params = parse_params(cfg);
    const RenewalSetup setup = renewal_setup(params);
    const std::size_t n = setup.specs.size();
    if (cfg.replicates < 10000)
        throw std::invalid_argument("verify_renewal: needs replicates >= 10^4");

    VerificationReport rep;
    rep.experiment = "renewal";

    // Reference mean from the renewal solver, not from simulation.
    double lambda_hat = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        RenewalSolution sol = solve_renewal(setup.specs[i], setup.h);
        lambda_hat += sol.V.back();
        Lemma41Report lem = check_lemma41(setup.specs[i], sol);
        if (!lem.ok())
            rep.notes.push_back("lemma 4.1 violated for spec " + std::to_string(i));
        if (setup.iid) {
            lambda_hat *= static_cast<double>(n);
            rep.notes.push_back(
                "lemma 4.1 slack (lower,upper,second) = (" +
                format_fixed(lem.worst_lower, 9) + "," + format_fixed(lem.worst_upper, 9) +
                "," + format_fixed(lem.worst_second, 9) + ")");
            break;
        }
    }

    const CountDistribution target = CountDistribution::poisson(lambda_hat);
    EmpiricalCounts e = empirical_count_tv(cfg, target, [&](RandomStream& rng) {
        long total = 0;
        for (const auto& spec : setup.specs) total += sample_renewal(spec, rng).total_mass();
        return total;
    });

    VerificationRow row;
    row.label = "d2";
    row.metric = "d2";
    row.distance = e.tv;
    row.halfwidth = e.halfwidth;
    if (n < 2) {
        row.skipped = true;
        row.note = "renewal bound needs n >= 2; assertion skipped";
    } else {
        BoundReport b = setup.iid ? bound_renewal_iid(setup.specs.front(),
                                                      static_cast<long>(n))
                                  : bound_renewal(setup.specs);
        row.bound = b.value;
        row.bound_vacuous = b.vacuous;
        if (b.vacuous) {
            row.skipped = true;
            row.note = "bound vacuous (> 1); assertion skipped";
        } else {
            row.note = "count TV lower-bounds d2; lambda from renewal solver";
        }
    }
    judge(row);
    rep.rows.push_back(row);
    return rep;
}

VerificationReport verify_thinning(const ExperimentConfig& cfg) {
    const json params = parse_params(cfg);
    const IndicatorModel base = thinning_base_model(params);
    std::vector<double> p_values =
        params.value("p_values", std::vector<double>{0.5, 0.25, 0.125});

    // Exact moments for an independent indicator base: V_i = 0,
    // E|Xi_i| = E|Xi_i|^2 = p_i.
    ThinningMoments moments;
    for (double pi : base.p) {
        moments.mean_v.push_back(0.0);
        moments.mean_xi.push_back(pi);
        moments.mean_v_xi.push_back(0.0);
        moments.second_xi.push_back(pi);
    }
    const double lambda = base.lambda();

    VerificationReport rep;
    rep.experiment = "thinning";
    std::vector<double> log_p, log_tv;
    for (double p : p_values) {
        const CountDistribution target = CountDistribution::poisson(p * lambda);
        ExperimentConfig sub = cfg;
        sub.seed = hash_combine(cfg.seed, static_cast<std::uint64_t>(p * 1e6));
        EmpiricalCounts e = empirical_count_tv(sub, target, [&](RandomStream& rng) {
            Configuration c = sample_bernoulli_process(base, rng);
            return thin(c, p, rng).total_mass();
        });
        for (Metric m : {Metric::dtv, Metric::dTV}) {
            if (!wants(cfg, m)) continue;
            BoundReport b = bound_thinning(moments, p, m);
            VerificationRow row;
            row.label = "p=" + format_fixed(p, 3) + "/" + metric_name(m);
            row.metric = metric_name(m);
            row.distance = e.tv;
            row.halfwidth = e.halfwidth;
            row.bound = b.value;
            row.bound_vacuous = b.vacuous;
            if (b.vacuous) {
                row.skipped = true;
                row.note = "bound vacuous (> 1); assertion skipped";
            }
            judge(row);
            rep.rows.push_back(row);
        }
        if (e.tv > 0.0 && p > 0.0) {
            log_p.push_back(std::log(p));
            log_tv.push_back(std::log(e.tv));
        }
    }

    if (log_p.size() >= 2) {
        double mx = 0.0, my = 0.0;
        for (std::size_t i = 0; i < log_p.size(); ++i) {
            mx += log_p[i];
            my += log_tv[i];
        }
        mx /= static_cast<double>(log_p.size());
        my /= static_cast<double>(log_p.size());
        double sxy = 0.0, sxx = 0.0;
        for (std::size_t i = 0; i < log_p.size(); ++i) {
            sxy += (log_p[i] - mx) * (log_tv[i] - my);
            sxx += (log_p[i] - mx) * (log_p[i] - mx);
        }
        rep.notes.push_back("log TV vs log p slope = " + format_fixed(sxy / sxx, 4) +
                            " (informational, expect about 1)");
    }
    return rep;
}

VerificationReport verify_custom_palm(const ExperimentConfig& cfg) {
    const json params = parse_params(cfg);
    std::unique_ptr<PalmCoupling> pc = palm_from_json(params);
    const double lambda = pc->lambda();

    VerificationReport rep;
    rep.experiment = "custom_palm";
    if (!pc->verified()) rep.notes.push_back("palm coupling declared, unverified");

    const CountDistribution target = CountDistribution::poisson(lambda);
    EmpiricalCounts e = empirical_count_tv(cfg, target, [&](RandomStream& rng) {
        return pc->sample_process(rng).total_mass();
    });

    SeededStream root{cfg.seed, 0};
    for (Metric m : {Metric::dtv, Metric::d2, Metric::dTV}) {
        if (!wants(cfg, m)) continue;
        BoundReport b = mc_bound_theorem21(*pc, m, cfg.replicates,
                                           root.substream(kBoundStream,
                                                          static_cast<std::uint64_t>(m)));
        VerificationRow row;
        row.label = metric_name(m);
        row.metric = metric_name(m);
        row.distance = e.tv;
        row.halfwidth = e.halfwidth;
        row.bound = b.value;
        row.bound_stderr = b.mc_stderr.value_or(0.0);
        row.bound_vacuous = b.vacuous;
        if (b.vacuous) {
            row.skipped = true;
            row.note = "bound vacuous (> 1); assertion skipped";
        } else {
            row.note = "count TV lower-bounds all three metrics";
        }
        judge(row);
        rep.rows.push_back(row);
    }
    return rep;
}

VerificationReport run_experiment(const ExperimentConfig& cfg) {
    if (cfg.experiment == "bernoulli") return verify_bernoulli(cfg);
    if (cfg.experiment == "uniform_points") return verify_uniform(cfg);
    if (cfg.experiment == "renewal") return verify_renewal(cfg);
    if (cfg.experiment == "thinning") return verify_thinning(cfg);
    if (cfg.experiment == "custom_palm") return verify_custom_palm(cfg);
    throw std::invalid_argument("unknown experiment: " + cfg.experiment);
}

namespace {

std::vector<BoundReport> evaluate_bounds(const ExperimentConfig& cfg) {
    const json params = parse_params(cfg);
    std::vector<BoundReport> out;
    if (cfg.experiment == "bernoulli") {
        const auto p = params.at("p").get<std::vector<double>>();
        for (Metric m : {Metric::dtv, Metric::d2, Metric::dTV})
            if (wants(cfg, m)) out.push_back(bound_bernoulli(p, m));
    } else if (cfg.experiment == "uniform_points") {
        out.push_back(bound_uniform_points(params.at("n").get<long>(),
                                           params.at("T").get<double>()));
    } else if (cfg.experiment == "renewal") {
        RenewalSetup setup = renewal_setup(params);
        const double retention = params.value("retention", 1.0);
        BoundReport b = setup.iid
                            ? bound_renewal_iid(setup.specs.front(),
                                                static_cast<long>(setup.specs.size()),
                                                retention)
                            : bound_renewal(setup.specs, retention);
        if (params.contains("theta")) {
            const RenewalSpec& s = setup.specs.front();
            b.notes.push_back(
                "comparison bound = " +
                format_fixed(bound_schuhmacher_comparison(
                                 static_cast<long>(setup.specs.size()), s.F.cdf(s.T),
                                 s.G.cdf(s.T), params.at("theta").get<double>()),
                             9));
        }
        out.push_back(std::move(b));
    } else if (cfg.experiment == "thinning") {
        const IndicatorModel base = thinning_base_model(params);
        ThinningMoments moments;
        for (double pi : base.p) {
            moments.mean_v.push_back(0.0);
            moments.mean_xi.push_back(pi);
            moments.mean_v_xi.push_back(0.0);
            moments.second_xi.push_back(pi);
        }
        for (double p : params.value("p_values", std::vector<double>{0.5, 0.25, 0.125}))
            for (Metric m : {Metric::dtv, Metric::dTV})
                if (wants(cfg, m)) out.push_back(bound_thinning(moments, p, m));
    } else if (cfg.experiment == "custom_palm") {
        std::unique_ptr<PalmCoupling> pc = palm_from_json(params);
        SeededStream root{cfg.seed, 0};
        for (Metric m : {Metric::dtv, Metric::d2, Metric::dTV})
            if (wants(cfg, m))
                out.push_back(mc_bound_theorem21(
                    *pc, m, cfg.replicates,
                    root.substream(kBoundStream, static_cast<std::uint64_t>(m))));
    } else {
        throw std::invalid_argument("unknown experiment: " + cfg.experiment);
    }
    return out;
}

Configuration simulate_once(const ExperimentConfig& cfg, const json& params,
                            RandomStream& rng) {
    if (cfg.experiment == "bernoulli") {
        const IndicatorModel m =
            IndicatorModel::independent_bernoulli(params.at("p").get<std::vector<double>>());
        return sample_bernoulli_process(m, rng);
    }
    if (cfg.experiment == "uniform_points")
        return sample_uniform_points_restriction(params.at("n").get<long>(),
                                                 params.at("T").get<double>(), rng);
    if (cfg.experiment == "renewal") {
        RenewalSetup setup = renewal_setup(params);
        std::vector<Configuration> parts;
        for (const auto& spec : setup.specs) parts.push_back(sample_renewal(spec, rng));
        return superpose(parts);
    }
    if (cfg.experiment == "thinning") {
        const IndicatorModel base = thinning_base_model(params);
        const auto ps = params.value("p_values", std::vector<double>{0.5, 0.25, 0.125});
        return thin(sample_bernoulli_process(base, rng), ps.front(), rng);
    }
    if (cfg.experiment == "custom_palm") return palm_from_json(params)->sample_process(rng);
    throw std::invalid_argument("unknown experiment: " + cfg.experiment);
}

int cmd_verify(const std::string& config_path, std::optional<std::uint64_t> seed) {
    ExperimentConfig cfg = ExperimentConfig::load_file(config_path);
    if (seed) cfg.seed = *seed;
    VerificationReport rep = run_experiment(cfg);

    if (!cfg.output_dir.empty()) {
        namespace fs = std::filesystem;
        fs::create_directories(fs::path(cfg.output_dir) / "tables");
        std::ofstream(fs::path(cfg.output_dir) / "report.json") << rep.to_json() << "\n";
        std::ofstream(fs::path(cfg.output_dir) / "tables" / (rep.experiment + ".csv"))
            << rep.to_csv();
    }

    for (const auto& r : rep.rows) {
        std::cout << (r.satisfied ? (r.skipped ? "[SKIP] " : "[ OK ] ")
                                  : (r.inconclusive ? "[WARN] " : "[FAIL] "))
                  << r.label << ": distance=" << r.distance
                  << " halfwidth=" << r.halfwidth << " bound=" << r.bound;
        if (!r.note.empty()) std::cout << "  (" << r.note << ")";
        std::cout << "\n";
    }
    for (const auto& n : rep.notes) std::cout << "note: " << n << "\n";

    if (rep.deterministic_failure()) return 2;
    if (!rep.all_satisfied())
        std::cout << "warning: failure within Monte Carlo noise; inconclusive\n";
    return 0;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Poisson process approximation bounds: evaluate, simulate, verify"};
    app.require_subcommand(1);

    std::string config_path, out_path, a_path, b_path, metric_str = "d1prime";
    std::optional<std::uint64_t> seed_override;
    double h_override = 0.0;

    auto* verify = app.add_subcommand("verify", "run a verification experiment");
    verify->add_option("--config", config_path, "experiment JSON")->required();
    verify->add_option("--seed", seed_override, "override config seed");

    auto* bound = app.add_subcommand("bound", "evaluate bounds from a config");
    bound->add_option("--config", config_path, "experiment JSON")->required();
    bound->add_option("--seed", seed_override, "override config seed");

    auto* simulate = app.add_subcommand("simulate", "emit sampled configurations");
    simulate->add_option("--config", config_path, "experiment JSON")->required();
    simulate->add_option("--seed", seed_override, "override config seed");
    simulate->add_option("--out", out_path, "output file (default stdout)");

    auto* renewal = app.add_subcommand("renewal", "solve the renewal equation, export CSV");
    renewal->add_option("--config", config_path, "experiment JSON")->required();
    renewal->add_option("--step", h_override, "grid step override");
    renewal->add_option("--out", out_path, "output file (default stdout)");

    auto* metrics = app.add_subcommand("metrics", "distance between two configuration files");
    metrics->add_option("--a", a_path, "first configuration JSON")->required();
    metrics->add_option("--b", b_path, "second configuration JSON")->required();
    metrics->add_option("--metric", metric_str, "d1 | d1prime | variation");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (verify->parsed()) return cmd_verify(config_path, seed_override);

        if (bound->parsed()) {
            ExperimentConfig cfg = ExperimentConfig::load_file(config_path);
            if (seed_override) cfg.seed = *seed_override;
            for (const auto& b : evaluate_bounds(cfg)) std::cout << b.to_json() << "\n";
            return 0;
        }

        if (simulate->parsed()) {
            ExperimentConfig cfg = ExperimentConfig::load_file(config_path);
            if (seed_override) cfg.seed = *seed_override;
            const json params = parse_params(cfg);
            std::ofstream file;
            std::ostream* os = &std::cout;
            if (!out_path.empty()) {
                file.open(out_path);
                if (!file) throw std::invalid_argument("cannot open output: " + out_path);
                os = &file;
            }
            SeededStream root{cfg.seed, 0};
            for (long r = 0; r < cfg.replicates; ++r) {
                RandomStream rng(root.substream(kSimStream, static_cast<std::uint64_t>(r)));
                *os << simulate_once(cfg, params, rng).to_json() << "\n";
            }
            return 0;
        }

        if (renewal->parsed()) {
            ExperimentConfig cfg = ExperimentConfig::load_file(config_path);
            RenewalSetup setup = renewal_setup(parse_params(cfg));
            const double h = h_override > 0.0 ? h_override : setup.h;
            const RenewalSpec& spec = setup.specs.front();
            RenewalSolution sol = solve_renewal(spec, h);
            Lemma41Report lem = check_lemma41(spec, sol);
            std::ofstream file;
            std::ostream* os = &std::cout;
            if (!out_path.empty()) {
                file.open(out_path);
                if (!file) throw std::invalid_argument("cannot open output: " + out_path);
                os = &file;
            }
            *os << renewal_solution_csv(spec, sol);
            std::cerr << "residual=" << sol.residual << " lemma41_ok=" << lem.ok()
                      << " V(T)=" << sol.V.back() << "\n";
            return 0;
        }

        if (metrics->parsed()) {
            Configuration a = Configuration::parse_json(read_file(a_path));
            Configuration b = Configuration::parse_json(read_file(b_path));
            double value;
            if (metric_str == "d1") value = d1(a, b);
            else if (metric_str == "d1prime") value = d1_prime(a, b);
            else if (metric_str == "variation")
                value = static_cast<double>(variation_norm_diff(a, b));
            else throw std::invalid_argument("unknown metric: " + metric_str);
            std::cout << value << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

} // namespace steinpp
