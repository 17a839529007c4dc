#include "steinpp/processes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace steinpp {

double IndicatorModel::lambda() const {
    double s = 0.0;
    for (double pi : p) s += pi;
    return s;
}

bool IndicatorModel::independent() const {
    for (int i = 0; i < size(); ++i)
        if (A[static_cast<std::size_t>(i)].size() != 1 ||
            A[static_cast<std::size_t>(i)][0] != i)
            return false;
    return true;
}

double IndicatorModel::joint_moment(int i, int j) const {
    if (i == j) return p[static_cast<std::size_t>(i)];
    auto it = joint.find({std::min(i, j), std::max(i, j)});
    if (it == joint.end())
        throw std::invalid_argument("IndicatorModel: missing joint moment");
    return it->second;
}

void IndicatorModel::validate() const {
    const int n = size();
    if (A.size() != p.size() || B.size() != p.size() || positions.size() != p.size())
        throw std::invalid_argument("IndicatorModel: field sizes disagree");
    for (int i = 0; i < n; ++i) {
        double pi = p[static_cast<std::size_t>(i)];
        if (!(pi >= 0.0 && pi <= 1.0))
            throw std::invalid_argument("IndicatorModel: probability outside [0,1]");
        const auto& Ai = A[static_cast<std::size_t>(i)];
        const auto& Bi = B[static_cast<std::size_t>(i)];
        if (std::find(Ai.begin(), Ai.end(), i) == Ai.end())
            throw std::invalid_argument("IndicatorModel: i not in A_i");
        for (int j : Ai)
            if (std::find(Bi.begin(), Bi.end(), j) == Bi.end())
                throw std::invalid_argument("IndicatorModel: A_i not contained in B_i");
        for (int j : Ai) {
            if (j == i) continue;
            double m = joint_moment(i, j);
            double cap = std::min(pi, p[static_cast<std::size_t>(j)]);
            if (m < -1e-12 || m > cap + 1e-12)
                throw std::invalid_argument("IndicatorModel: joint moment out of range");
        }
    }
}

IndicatorModel IndicatorModel::independent_bernoulli(std::vector<double> p) {
    const int n = static_cast<int>(p.size());
    std::vector<double> pos(p.size());
    for (int i = 0; i < n; ++i)
        pos[static_cast<std::size_t>(i)] =
            static_cast<double>(i + 1) / static_cast<double>(n);
    return independent_bernoulli(std::move(p), std::move(pos));
}

IndicatorModel IndicatorModel::independent_bernoulli(std::vector<double> p,
                                                     std::vector<double> positions) {
    IndicatorModel m;
    m.p = std::move(p);
    m.positions = std::move(positions);
    const int n = m.size();
    m.A.resize(m.p.size());
    m.B.resize(m.p.size());
    for (int i = 0; i < n; ++i) {
        m.A[static_cast<std::size_t>(i)] = {i};
        m.B[static_cast<std::size_t>(i)] = {i};
    }
    std::vector<double> probs = m.p;
    m.sampler = [probs](RandomStream& rng) {
        std::vector<char> ind(probs.size());
        for (std::size_t i = 0; i < probs.size(); ++i) ind[i] = rng.bernoulli(probs[i]);
        return ind;
    };
    m.validate();
    return m;
}

IndicatorModel IndicatorModel::correlated_pairs(std::vector<double> q,
                                                std::vector<double> positions) {
    if (positions.size() != 2 * q.size())
        throw std::invalid_argument("correlated_pairs: need two positions per pair");
    IndicatorModel m;
    const int n = static_cast<int>(positions.size());
    m.positions = std::move(positions);
    m.p.resize(static_cast<std::size_t>(n));
    m.A.resize(static_cast<std::size_t>(n));
    m.B.resize(static_cast<std::size_t>(n));
    for (std::size_t k = 0; k < q.size(); ++k) {
        int i = static_cast<int>(2 * k), j = i + 1;
        m.p[static_cast<std::size_t>(i)] = q[k];
        m.p[static_cast<std::size_t>(j)] = q[k];
        m.A[static_cast<std::size_t>(i)] = {i, j};
        m.A[static_cast<std::size_t>(j)] = {i, j};
        m.B[static_cast<std::size_t>(i)] = {i, j};
        m.B[static_cast<std::size_t>(j)] = {i, j};
        m.joint[{i, j}] = q[k]; // I_j = I_i, so E I_i I_j = q
    }
    std::vector<double> qs = q;
    m.sampler = [qs](RandomStream& rng) {
        std::vector<char> ind(2 * qs.size());
        for (std::size_t k = 0; k < qs.size(); ++k) {
            char v = rng.bernoulli(qs[k]);
            ind[2 * k] = v;
            ind[2 * k + 1] = v;
        }
        return ind;
    };
    m.validate();
    return m;
}

void RenewalSpec::validate() const {
    if (!(T > 0.0)) throw std::invalid_argument("RenewalSpec: horizon must be positive");
    if (F.cdf(T) >= 1.0 - 1e-9)
        throw std::invalid_argument("RenewalSpec: F(T) too close to 1");
}

RenewalSpec RenewalSpec::iid_stationary_exponential(double rate, double T) {
    // Stationary delay of Exp(rate) is Exp(rate) again.
    RenewalSpec s{TimeDistribution::exponential(rate),
                  TimeDistribution::exponential(rate), T};
    s.validate();
    return s;
}

double PalmCoupling::lambda() const {
    double s = 0.0;
    for (int i = 0; i < index_count(); ++i) s += lambda_i(i);
    return s;
}

namespace {

class PoissonPalm final : public PalmCoupling {
public:
    explicit PoissonPalm(std::vector<double> lambdas) : lambdas_(std::move(lambdas)) {
        for (double l : lambdas_)
            if (l < 0.0) throw std::invalid_argument("make_poisson_palm: negative intensity");
    }

    int index_count() const override { return static_cast<int>(lambdas_.size()); }
    double lambda_i(int i) const override { return lambdas_[static_cast<std::size_t>(i)]; }

    PalmDraw sample(int i, RandomStream& rng) const override {
        if (lambda_i(i) <= 0.0)
            throw std::invalid_argument("PoissonPalm: cannot condition on an empty index");
        PalmDraw d;
        d.alpha = rng.uniform();
        d.xi_i = sample_poisson_process_uniform(lambda_i(i), rng);
        d.xi_i_palm = d.xi_i; // reduced Palm of Poisson is its own law
        std::vector<Configuration> rest;
        for (int j = 0; j < index_count(); ++j) {
            if (j == i) continue;
            rest.push_back(sample_poisson_process_uniform(lambda_i(j), rng));
        }
        d.xi_rest = superpose(rest);
        return d;
    }

    Configuration sample_process(RandomStream& rng) const override {
        std::vector<Configuration> parts;
        parts.reserve(lambdas_.size());
        for (double l : lambdas_) parts.push_back(sample_poisson_process_uniform(l, rng));
        return superpose(parts);
    }

private:
    std::vector<double> lambdas_;
};

class IndicatorPalm final : public PalmCoupling {
public:
    explicit IndicatorPalm(IndicatorModel m) : m_(std::move(m)) { m_.validate(); }

    int index_count() const override { return m_.size(); }
    double lambda_i(int i) const override { return m_.p[static_cast<std::size_t>(i)]; }

    PalmDraw sample(int i, RandomStream& rng) const override {
        const std::size_t ui = static_cast<std::size_t>(i);
        if (m_.p[ui] <= 0.0)
            throw std::invalid_argument("IndicatorPalm: cannot condition on p_i = 0");
        PalmDraw d;
        d.alpha = m_.positions[ui];

        std::vector<char> plain = m_.sampler(rng);
        d.xi_i = plain[ui] ? Configuration::single(d.alpha) : Configuration();
        d.xi_i_palm = Configuration(); // indicator has no second point
        d.v_i = neighborhood_sum(i, plain);

        // Palm draw for V_i: independent redraw conditioned on I_i = 1.
        std::vector<char> cond;
        do {
            cond = m_.sampler(rng);
        } while (!cond[ui]);
        d.v_i_palm = neighborhood_sum(i, cond);

        std::vector<char> indep = m_.sampler(rng);
        std::vector<Configuration> rest;
        const auto& Ai = m_.A[ui];
        for (int j = 0; j < m_.size(); ++j) {
            if (std::find(Ai.begin(), Ai.end(), j) != Ai.end()) continue;
            if (indep[static_cast<std::size_t>(j)])
                rest.push_back(Configuration::single(m_.positions[static_cast<std::size_t>(j)]));
        }
        d.xi_rest = superpose(rest);
        return d;
    }

    Configuration sample_process(RandomStream& rng) const override {
        std::vector<char> ind = m_.sampler(rng);
        std::vector<Configuration> parts;
        for (int j = 0; j < m_.size(); ++j)
            if (ind[static_cast<std::size_t>(j)])
                parts.push_back(Configuration::single(m_.positions[static_cast<std::size_t>(j)]));
        return superpose(parts);
    }

    const IndicatorModel& model() const { return m_; }

private:
    Configuration neighborhood_sum(int i, const std::vector<char>& ind) const {
        std::vector<Configuration> parts;
        for (int j : m_.A[static_cast<std::size_t>(i)]) {
            if (j == i) continue;
            if (ind[static_cast<std::size_t>(j)])
                parts.push_back(Configuration::single(m_.positions[static_cast<std::size_t>(j)]));
        }
        return superpose(parts);
    }

    IndicatorModel m_;
};

} // namespace

std::unique_ptr<PalmCoupling> make_poisson_palm(std::vector<double> lambdas) {
    return std::make_unique<PoissonPalm>(std::move(lambdas));
}

std::unique_ptr<PalmCoupling> make_indicator_palm(IndicatorModel model) {
    return std::make_unique<IndicatorPalm>(std::move(model));
}

Configuration sample_poisson_process(double lambda_total,
                                     const std::function<double(RandomStream&)>& location,
                                     RandomStream& rng) {
    if (lambda_total < 0.0)
        throw std::invalid_argument("sample_poisson_process: negative intensity");
    long count = rng.poisson(lambda_total);
    std::vector<Atom> atoms;
    atoms.reserve(static_cast<std::size_t>(count));
    for (long k = 0; k < count; ++k) atoms.push_back({location(rng), 1});
    return Configuration(std::move(atoms));
}

Configuration sample_poisson_process_uniform(double lambda_total, RandomStream& rng) {
    return sample_poisson_process(
        lambda_total, [](RandomStream& r) { return r.uniform(); }, rng);
}

Configuration sample_bernoulli_process(const IndicatorModel& m, RandomStream& rng) {
    if (!m.independent())
        throw std::invalid_argument("sample_bernoulli_process: model is not independent");
    std::vector<char> ind = m.sampler(rng);
    std::vector<Atom> atoms;
    for (int i = 0; i < m.size(); ++i)
        if (ind[static_cast<std::size_t>(i)])
            atoms.push_back({m.positions[static_cast<std::size_t>(i)], 1});
    return Configuration(std::move(atoms));
}

Configuration sample_uniform_points_restriction(long n, double T, RandomStream& rng) {
    if (n < 1) throw std::invalid_argument("sample_uniform_points_restriction: n < 1");
    if (!(T > 0.0) || T > static_cast<double>(n))
        throw std::invalid_argument("sample_uniform_points_restriction: need 0 < T <= n");
    const double keep = T / static_cast<double>(n);
    std::vector<Atom> atoms;
    for (long k = 0; k < n; ++k)
        if (rng.bernoulli(keep)) atoms.push_back({rng.uniform(), 1});
    return Configuration(std::move(atoms));
}

Configuration thin(const Configuration& c, double p, RandomStream& rng) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("thin: p outside [0,1]");
    std::vector<Atom> kept;
    for (const auto& a : c.atoms()) {
        long m = 0;
        for (long k = 0; k < a.multiplicity; ++k)
            if (rng.bernoulli(p)) ++m;
        if (m > 0) kept.push_back({a.position, m});
    }
    return Configuration(std::move(kept));
}

Configuration sample_renewal(const RenewalSpec& spec, RandomStream& rng) {
    spec.validate();
    std::vector<Atom> atoms;
    double t = spec.G.sample(rng);
    while (t <= spec.T) {
        atoms.push_back({t / spec.T, 1});
        t += spec.F.sample(rng);
    }
    return Configuration(std::move(atoms));
}

} // namespace steinpp
