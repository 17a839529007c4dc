#pragma once

#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "steinpp/carrier.hpp"
#include "steinpp/random.hpp"
#include "steinpp/time_dist.hpp"

namespace steinpp {

// Dependent indicator array with one- and two-level neighborhoods
// (A_i contains i, B_i contains A_i). joint holds E[I_i I_j] for j in
// A_i \ {i}. sampler draws the full indicator vector jointly.
struct IndicatorModel {
    std::vector<double> p;
    std::vector<std::vector<int>> A;
    std::vector<std::vector<int>> B;
    std::map<std::pair<int, int>, double> joint;
    std::vector<double> positions;
    std::function<std::vector<char>(RandomStream&)> sampler;

    int size() const { return static_cast<int>(p.size()); }
    double lambda() const;
    bool independent() const; // every A_i == {i}
    double joint_moment(int i, int j) const;
    void validate() const;

    // Independent indicators at positions (i+1)/n (the canonical lattice).
    static IndicatorModel independent_bernoulli(std::vector<double> p);
    static IndicatorModel independent_bernoulli(std::vector<double> p,
                                                std::vector<double> positions);
    // Blocks of perfectly correlated pairs: I_{2k+1} = I_{2k} ~ Bern(q_k),
    // A and B both cover the pair.
    static IndicatorModel correlated_pairs(std::vector<double> q,
                                           std::vector<double> positions);
};

// Delay G, inter-arrival F, horizon T. Emitted configurations are rescaled
// by t -> t/T onto [0,1]. The renewal bounds need F(T) < 1.
struct RenewalSpec {
    TimeDistribution F;
    TimeDistribution G;
    double T = 1.0;

    void validate() const;
    static RenewalSpec iid_stationary_exponential(double rate, double T);
};

// One draw of the Palm-coupling quadruple at index i: a point location
// alpha from the normalized mean measure, the process Xi_i with its reduced
// Palm version, the neighborhood remainder V_i with its Palm version on the
// same space, and the independent out-of-neighborhood sum Xi^(i).
struct PalmDraw {
    double alpha = 0.0;
    Configuration xi_i;
    Configuration xi_i_palm;
    Configuration v_i;
    Configuration v_i_palm;
    Configuration xi_rest;
};

class PalmCoupling {
public:
    virtual ~PalmCoupling() = default;
    virtual int index_count() const = 0;
    virtual double lambda_i(int i) const = 0;
    virtual PalmDraw sample(int i, RandomStream& rng) const = 0;
    // Full superposition draw, for count-law comparisons.
    virtual Configuration sample_process(RandomStream& rng) const = 0;
    // Built-in models ship couplings with known Palm marginals; custom
    // couplings are declared by the builder and flagged unverified.
    virtual bool verified() const { return true; }

    double lambda() const;
};

// Independent Poisson processes with uniform locations; identity coupling
// (the reduced Palm law of a Poisson process is its own law).
std::unique_ptr<PalmCoupling> make_poisson_palm(std::vector<double> lambdas);

// Locally dependent indicator processes Xi_i = I_i delta_{u_i}; the reduced
// Palm process of an indicator is empty, and the neighborhood Palm draw is
// an independent redraw conditioned on I_i = 1 (rejection sampling).
std::unique_ptr<PalmCoupling> make_indicator_palm(IndicatorModel model);

// Samplers. Every sampler is a pure function of (inputs, stream state).
Configuration sample_poisson_process(double lambda_total,
                                     const std::function<double(RandomStream&)>& location,
                                     RandomStream& rng);
Configuration sample_poisson_process_uniform(double lambda_total, RandomStream& rng);

// Independent-indicator Bernoulli process; rejects dependent models.
Configuration sample_bernoulli_process(const IndicatorModel& m, RandomStream& rng);

// n points uniform on [0,n], restricted to the window [0,T] and rescaled.
Configuration sample_uniform_points_restriction(long n, double T, RandomStream& rng);

// Independent thinning with constant retention probability.
Configuration thin(const Configuration& c, double p, RandomStream& rng);

Configuration sample_renewal(const RenewalSpec& spec, RandomStream& rng);

} // namespace steinpp
