#pragma once

#include <string>
#include <vector>

#include "steinpp/random.hpp"

namespace steinpp {

// Distribution of a non-negative time: parametric families plus empirical
// CDFs that are piecewise-constant on a uniform grid.
class TimeDistribution {
public:
    enum class Kind { exponential, deterministic, uniform, empirical, never };

    static TimeDistribution exponential(double rate);
    static TimeDistribution deterministic(double value);
    static TimeDistribution uniform(double lo, double hi);
    // cdf_values[k] = F(grid_step * (k+1)); must be non-decreasing in [0,1].
    static TimeDistribution empirical(double grid_step, std::vector<double> cdf_values);
    // No arrival ever: F(t) = 0 for all t.
    static TimeDistribution never();

    // Two-column CSV "t,F(t)" on a uniform grid starting at the step.
    static TimeDistribution from_csv(const std::string& text);

    Kind kind() const { return kind_; }
    double cdf(double t) const;
    double sample(RandomStream& rng) const;

private:
    TimeDistribution() = default;

    Kind kind_ = Kind::never;
    double a_ = 0.0, b_ = 0.0;      // rate / value / (lo,hi)
    double grid_step_ = 0.0;
    std::vector<double> cdf_;       // empirical kind
};

// Stationary delay G(t) = int_0^t (1-F) / int_0^inf (1-F), discretized on a
// uniform grid over [0, t_max]. Rejects heavy tails: survival mass left at
// t_max above 1e-6.
TimeDistribution stationary_delay(const TimeDistribution& F, double t_max,
                                  int grid_cells);

} // namespace steinpp
