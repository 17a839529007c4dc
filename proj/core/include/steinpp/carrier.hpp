#pragma once

#include <span>
#include <string>
#include <vector>

namespace steinpp {

// Carrier space is [0,1] with d0(x,y) = |x-y|; callers rescale other
// intervals onto it.
inline double d0(double x, double y) { return x < y ? y - x : x - y; }

struct Atom {
    double position = 0.0;
    long multiplicity = 0;

    friend bool operator==(const Atom&, const Atom&) = default;
};

// A finite integer-weighted point multiset on [0,1], kept in canonical form:
// atoms sorted by position, positions distinct, multiplicities positive.
class Configuration {
public:
    Configuration() = default;
    explicit Configuration(std::vector<Atom> atoms);

    static Configuration single(double position, long multiplicity = 1);

    const std::vector<Atom>& atoms() const { return atoms_; }
    long total_mass() const;
    bool empty() const { return atoms_.empty(); }

    // Positions repeated by multiplicity, ascending.
    std::vector<double> expand() const;

    // JSON array of [position, multiplicity] pairs.
    std::string to_json() const;
    static Configuration parse_json(const std::string& text);

    friend bool operator==(const Configuration&, const Configuration&) = default;

private:
    std::vector<Atom> atoms_;
};

Configuration superpose(std::span<const Configuration> cs);
Configuration superpose(const Configuration& a, const Configuration& b);

// Variation norm of the signed measure a - b: sum over the joint support of
// |a({x}) - b({x})|.
long variation_norm_diff(const Configuration& a, const Configuration& b);

} // namespace steinpp
