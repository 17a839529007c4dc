#include "steinpp/time_dist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace steinpp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TimeDistribution TimeDistribution::exponential(double rate) {
    if (!(rate > 0.0)) throw std::invalid_argument("exponential: rate must be positive");
    TimeDistribution d;
    d.kind_ = Kind::exponential;
    d.a_ = rate;
    return d;
}

TimeDistribution TimeDistribution::deterministic(double value) {
    if (!(value >= 0.0)) throw std::invalid_argument("deterministic: negative value");
    TimeDistribution d;
    d.kind_ = Kind::deterministic;
    d.a_ = value;
    return d;
}

TimeDistribution TimeDistribution::uniform(double lo, double hi) {
    if (!(0.0 <= lo && lo < hi)) throw std::invalid_argument("uniform: need 0 <= lo < hi");
    TimeDistribution d;
    d.kind_ = Kind::uniform;
    d.a_ = lo;
    d.b_ = hi;
    return d;
}

TimeDistribution TimeDistribution::empirical(double grid_step,
                                             std::vector<double> cdf_values) {
    if (!(grid_step > 0.0)) throw std::invalid_argument("empirical: grid step must be positive");
    if (cdf_values.empty()) throw std::invalid_argument("empirical: empty CDF");
    double prev = 0.0;
    for (double v : cdf_values) {
        if (v < prev - 1e-12 || v > 1.0 + 1e-12)
            throw std::invalid_argument("empirical: CDF not non-decreasing in [0,1]");
        prev = v;
    }
    TimeDistribution d;
    d.kind_ = Kind::empirical;
    d.grid_step_ = grid_step;
    d.cdf_ = std::move(cdf_values);
    return d;
}

TimeDistribution TimeDistribution::never() { return TimeDistribution(); }

TimeDistribution TimeDistribution::from_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::vector<double> ts, fs;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string t_str, f_str;
        if (!std::getline(ls, t_str, ',') || !std::getline(ls, f_str)) continue;
        try {
            ts.push_back(std::stod(t_str));
            fs.push_back(std::stod(f_str));
        } catch (const std::exception&) {
            continue; // header row
        }
    }
    if (ts.size() < 1) throw std::invalid_argument("from_csv: no data rows");
    const double step = ts[0];
    if (!(step > 0.0)) throw std::invalid_argument("from_csv: grid must start after 0");
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (std::abs(ts[i] - step * static_cast<double>(i + 1)) > 1e-9 * step * (i + 1))
            throw std::invalid_argument("from_csv: grid not uniform");
    }
    return empirical(step, std::move(fs));
}

double TimeDistribution::cdf(double t) const {
    if (t < 0.0) return 0.0;
    switch (kind_) {
        case Kind::exponential:
            return -std::expm1(-a_ * t);
        case Kind::deterministic:
            return t >= a_ ? 1.0 : 0.0;
        case Kind::uniform:
            if (t <= a_) return 0.0;
            if (t >= b_) return 1.0;
            return (t - a_) / (b_ - a_);
        case Kind::empirical: {
            // Right-continuous step CDF with jumps at grid points.
            double j = std::floor(t / grid_step_ + 1e-9);
            if (j < 1.0) return 0.0;
            std::size_t idx = static_cast<std::size_t>(j) - 1;
            return cdf_[std::min(idx, cdf_.size() - 1)];
        }
        case Kind::never:
            return 0.0;
    }
    return 0.0;
}

double TimeDistribution::sample(RandomStream& rng) const {
    switch (kind_) {
        case Kind::exponential:
            return rng.exponential(a_);
        case Kind::deterministic:
            return a_;
        case Kind::uniform:
            return rng.uniform(a_, b_);
        case Kind::empirical: {
            // Left-continuous inverse: smallest grid point whose CDF >= u.
            double u = rng.uniform();
            auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
            if (it == cdf_.end()) return kInf; // mass beyond the grid horizon
            std::size_t k = static_cast<std::size_t>(it - cdf_.begin());
            return grid_step_ * static_cast<double>(k + 1);
        }
        case Kind::never:
            return kInf;
    }
    return kInf;
}

TimeDistribution stationary_delay(const TimeDistribution& F, double t_max,
                                  int grid_cells) {
    if (!(t_max > 0.0) || grid_cells < 1)
        throw std::invalid_argument("stationary_delay: invalid grid");
    const double h = t_max / static_cast<double>(grid_cells);
    const double tail = 1.0 - F.cdf(t_max);
    if (tail > 1e-6)
        throw std::invalid_argument(
            "stationary_delay: survival mass beyond the grid exceeds 1e-6");

    // Trapezoidal cumulative integral of the survival function.
    std::vector<double> integral(static_cast<std::size_t>(grid_cells) + 1, 0.0);
    double prev_s = 1.0 - F.cdf(0.0);
    for (int k = 1; k <= grid_cells; ++k) {
        double s = 1.0 - F.cdf(h * static_cast<double>(k));
        integral[static_cast<std::size_t>(k)] =
            integral[static_cast<std::size_t>(k - 1)] + 0.5 * h * (prev_s + s);
        prev_s = s;
    }
    const double total = integral.back();
    if (!(total > 0.0))
        throw std::invalid_argument("stationary_delay: F has zero mean on the grid");

    std::vector<double> g(static_cast<std::size_t>(grid_cells));
    for (int k = 1; k <= grid_cells; ++k)
        g[static_cast<std::size_t>(k - 1)] =
            std::min(1.0, integral[static_cast<std::size_t>(k)] / total);
    g.back() = 1.0;
    return TimeDistribution::empirical(h, std::move(g));
}

} // namespace steinpp
