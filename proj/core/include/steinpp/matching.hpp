#pragma once

#include <utility>
#include <vector>

#include "steinpp/carrier.hpp"

namespace steinpp {

struct MatchingResult {
    double cost = 0.0;
    // Pairs (index into the smaller configuration's expanded point list,
    // index into the larger's); injective on both sides.
    std::vector<std::pair<int, int>> assignment;
};

// Exact minimum-cost assignment on a square cost matrix (Kuhn-Munkres,
// O(n^3)). Returns row -> column.
double min_cost_assignment(const std::vector<std::vector<double>>& cost,
                           std::vector<int>& row_to_col);

// d1'(a,b) = min over injections of the smaller point list into the larger of
// the summed d0 distances, plus 1 per unmatched point of the larger.
double d1_prime(const Configuration& a, const Configuration& b);
MatchingResult d1_prime_matching(const Configuration& a, const Configuration& b);

// d1(a,b): 0 if both empty, 1 if total masses differ, else the minimum-cost
// perfect matching divided by the common total mass. Always in [0,1].
double d1(const Configuration& a, const Configuration& b);

} // namespace steinpp
