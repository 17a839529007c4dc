#include "steinpp/carrier.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

namespace steinpp {

namespace {

void canonicalize(std::vector<Atom>& atoms) {
    for (const auto& a : atoms) {
        if (!(a.position >= 0.0 && a.position <= 1.0))
            throw std::invalid_argument("Configuration: position outside [0,1]");
        if (a.multiplicity < 0)
            throw std::invalid_argument("Configuration: negative multiplicity");
    }
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& a, const Atom& b) { return a.position < b.position; });
    std::vector<Atom> merged;
    merged.reserve(atoms.size());
    for (const auto& a : atoms) {
        if (a.multiplicity == 0) continue;
        if (!merged.empty() && merged.back().position == a.position)
            merged.back().multiplicity += a.multiplicity;
        else
            merged.push_back(a);
    }
    atoms = std::move(merged);
}

} // namespace

Configuration::Configuration(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    canonicalize(atoms_);
}

Configuration Configuration::single(double position, long multiplicity) {
    return Configuration({{position, multiplicity}});
}

long Configuration::total_mass() const {
    long m = 0;
    for (const auto& a : atoms_) m += a.multiplicity;
    return m;
}

std::vector<double> Configuration::expand() const {
    std::vector<double> pts;
    pts.reserve(static_cast<std::size_t>(total_mass()));
    for (const auto& a : atoms_)
        for (long k = 0; k < a.multiplicity; ++k) pts.push_back(a.position);
    return pts;
}

std::string Configuration::to_json() const {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& a : atoms_) j.push_back({a.position, a.multiplicity});
    return j.dump();
}

Configuration Configuration::parse_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (!j.is_array()) throw std::invalid_argument("Configuration: expected JSON array");
    std::vector<Atom> atoms;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2)
            throw std::invalid_argument("Configuration: expected [position, multiplicity]");
        atoms.push_back({e[0].get<double>(), e[1].get<long>()});
    }
    return Configuration(std::move(atoms));
}

Configuration superpose(std::span<const Configuration> cs) {
    std::vector<Atom> all;
    for (const auto& c : cs)
        all.insert(all.end(), c.atoms().begin(), c.atoms().end());
    return Configuration(std::move(all));
}

Configuration superpose(const Configuration& a, const Configuration& b) {
    const Configuration cs[] = {a, b};
    return superpose(std::span<const Configuration>(cs));
}

long variation_norm_diff(const Configuration& a, const Configuration& b) {
    const auto& xs = a.atoms();
    const auto& ys = b.atoms();
    std::size_t i = 0, j = 0;
    long total = 0;
    while (i < xs.size() || j < ys.size()) {
        if (j == ys.size() || (i < xs.size() && xs[i].position < ys[j].position)) {
            total += xs[i++].multiplicity;
        } else if (i == xs.size() || ys[j].position < xs[i].position) {
            total += ys[j++].multiplicity;
        } else {
            long d = xs[i++].multiplicity - ys[j++].multiplicity;
            total += d < 0 ? -d : d;
        }
    }
    return total;
}

} // namespace steinpp
