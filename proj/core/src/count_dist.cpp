#include "steinpp/count_dist.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "steinpp/parallel.hpp"

namespace steinpp {

CountDistribution::CountDistribution(std::vector<double> pmf, double tail_bound)
    : pmf_(std::move(pmf)), tail_bound_(tail_bound) {
    double total = tail_bound_;
    for (double q : pmf_) {
        if (q < 0.0) throw std::invalid_argument("CountDistribution: negative mass");
        total += q;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw std::invalid_argument("CountDistribution: mass does not sum to 1");
    while (!pmf_.empty() && pmf_.back() == 0.0) pmf_.pop_back();
}

CountDistribution CountDistribution::point_mass(long k) {
    if (k < 0) throw std::invalid_argument("point_mass: negative support point");
    std::vector<double> pmf(static_cast<std::size_t>(k) + 1, 0.0);
    pmf.back() = 1.0;
    return CountDistribution(std::move(pmf), 0.0);
}

CountDistribution CountDistribution::poisson(double lambda, double tail_tol) {
    if (lambda < 0.0) throw std::invalid_argument("poisson: negative mean");
    std::vector<double> pmf;
    double pk = std::exp(-lambda);
    double cum = pk;
    pmf.push_back(pk);
    std::size_t k = 0;
    while (1.0 - cum > tail_tol) {
        ++k;
        pk *= lambda / static_cast<double>(k);
        pmf.push_back(pk);
        cum += pk;
        if (k > 100000) break; // mass criterion must have stalled numerically
    }
    return CountDistribution(std::move(pmf), std::max(0.0, 1.0 - cum));
}

CountDistribution CountDistribution::poisson_binomial(std::span<const double> p) {
    std::vector<double> pmf{1.0};
    for (double pi : p) {
        if (!(pi >= 0.0 && pi <= 1.0))
            throw std::invalid_argument("poisson_binomial: probability outside [0,1]");
        std::vector<double> next(pmf.size() + 1, 0.0);
        for (std::size_t k = 0; k < pmf.size(); ++k) {
            next[k] += pmf[k] * (1.0 - pi);
            next[k + 1] += pmf[k] * pi;
        }
        pmf = std::move(next);
    }
    return CountDistribution(std::move(pmf), 0.0);
}

CountDistribution CountDistribution::binomial(long n, double p) {
    if (n < 0) throw std::invalid_argument("binomial: negative n");
    std::vector<double> probs(static_cast<std::size_t>(n), p);
    return poisson_binomial(probs);
}

CountDistribution CountDistribution::from_samples(std::span<const long> samples) {
    if (samples.empty()) throw std::invalid_argument("from_samples: empty sample list");
    long max_k = 0;
    for (long s : samples) {
        if (s < 0) throw std::invalid_argument("from_samples: negative count");
        max_k = std::max(max_k, s);
    }
    std::vector<double> pmf(static_cast<std::size_t>(max_k) + 1, 0.0);
    const double w = 1.0 / static_cast<double>(samples.size());
    for (long s : samples) pmf[static_cast<std::size_t>(s)] += w;
    return CountDistribution(std::move(pmf), 0.0);
}

double CountDistribution::mean() const {
    double m = 0.0;
    for (std::size_t k = 0; k < pmf_.size(); ++k) m += static_cast<double>(k) * pmf_[k];
    return m;
}

double CountDistribution::variance() const {
    double m = mean(), s = 0.0;
    for (std::size_t k = 0; k < pmf_.size(); ++k) {
        double d = static_cast<double>(k) - m;
        s += d * d * pmf_[k];
    }
    return s;
}

std::string CountDistribution::to_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "k,pmf\n";
    for (std::size_t k = 0; k < pmf_.size(); ++k) os << k << "," << pmf_[k] << "\n";
    os << "tail_bound," << tail_bound_ << "\n";
    return os.str();
}

TvResult tv_distance(const CountDistribution& a, const CountDistribution& b) {
    const std::size_t n = std::max(a.support_size(), b.support_size());
    double l1 = 0.0;
    for (std::size_t k = 0; k < n; ++k) l1 += std::abs(a.pmf(k) - b.pmf(k));
    return TvResult{0.5 * l1, 0.5 * (a.tail_bound() + b.tail_bound())};
}

double bootstrap_tv_halfwidth(std::span<const long> samples, int resamples,
                              SeededStream stream) {
    if (samples.empty())
        throw std::invalid_argument("bootstrap_tv_halfwidth: empty sample list");
    if (resamples < 1)
        throw std::invalid_argument("bootstrap_tv_halfwidth: need at least one resample");

    const CountDistribution point = CountDistribution::from_samples(samples);
    const std::size_t support = point.support_size();
    std::vector<double> cdf(support);
    double cum = 0.0;
    for (std::size_t k = 0; k < support; ++k) {
        cum += point.pmf(k);
        cdf[k] = cum;
    }
    const std::size_t n = samples.size();

    std::vector<double> tvs(static_cast<std::size_t>(resamples), 0.0);
    parallel_for(tvs.size(), [&](std::size_t r) {
        RandomStream rng(stream.substream(r));
        std::vector<double> counts(support, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double u = rng.uniform();
            std::size_t k = static_cast<std::size_t>(
                std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
            if (k >= support) k = support - 1;
            counts[k] += 1.0;
        }
        double l1 = 0.0;
        for (std::size_t k = 0; k < support; ++k)
            l1 += std::abs(counts[k] / static_cast<double>(n) - point.pmf(k));
        tvs[r] = 0.5 * l1;
    });

    std::sort(tvs.begin(), tvs.end());
    std::size_t idx = static_cast<std::size_t>(
        std::ceil(0.99 * static_cast<double>(tvs.size()))) - 1;
    return tvs[std::min(idx, tvs.size() - 1)];
}

} // namespace steinpp
