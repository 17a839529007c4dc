#pragma once

#include <span>
#include <string>
#include <vector>

#include "steinpp/random.hpp"

namespace steinpp {

// Probability mass function on the non-negative integers with controlled
// tail truncation. tail_bound is the mass beyond the stored support.
class CountDistribution {
public:
    static constexpr double kDefaultTailTol = 1e-12;

    CountDistribution(std::vector<double> pmf, double tail_bound);

    static CountDistribution point_mass(long k);
    static CountDistribution poisson(double lambda, double tail_tol = kDefaultTailTol);
    // Exact convolution over independent indicators (dynamic programming).
    static CountDistribution poisson_binomial(std::span<const double> p);
    static CountDistribution binomial(long n, double p);
    static CountDistribution from_samples(std::span<const long> samples);

    const std::vector<double>& pmf() const { return pmf_; }
    double pmf(std::size_t k) const { return k < pmf_.size() ? pmf_[k] : 0.0; }
    double tail_bound() const { return tail_bound_; }
    std::size_t support_size() const { return pmf_.size(); }
    double mean() const;
    double variance() const;

    // CSV with columns k,pmf and a trailing tail_bound footer row.
    std::string to_csv() const;

private:
    std::vector<double> pmf_;
    double tail_bound_;
};

struct TvResult {
    double value = 0.0;
    // Contribution the truncated tails could add, at most (tail_a + tail_b)/2.
    double error_bar = 0.0;
};

// Total variation between integer laws: half the l1 distance over the union
// support.
TvResult tv_distance(const CountDistribution& a, const CountDistribution& b);

// 99th percentile over B bootstrap resamples of TV(resample, point estimate).
double bootstrap_tv_halfwidth(std::span<const long> samples, int resamples,
                              SeededStream stream);

} // namespace steinpp
