#pragma once

// Exhaustive subset search for the fractional capacity separation problem,
// and a generator of random support graphs to feed it.

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "cirp/cirp.hpp"

namespace oracle {

struct SubsetBest {
    double value = 0.0; // the empty set scores 0
    std::vector<int> set;
};

// max over S of sum(min_demand_i / q) - w_in(S); with `forced` > 0 only sets
// containing it count.
inline SubsetBest max_fractional(const cirp::SupportGraph& g, const cirp::DerivedData& d, double q, int forced = -1) {
    const int n = g.num_sites() - 1;
    SubsetBest b;
    if (forced > 0) b.value = -std::numeric_limits<double>::infinity();
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        if (forced > 0 && !(mask & (1u << (forced - 1)))) continue;
        std::vector<char> in(static_cast<std::size_t>(n + 1), 0);
        std::vector<int> s;
        double dem = 0.0;
        for (int i = 1; i <= n; ++i)
            if (mask & (1u << (i - 1))) {
                in[static_cast<std::size_t>(i)] = 1;
                s.push_back(i);
                dem += d.min_demand[static_cast<std::size_t>(i)] / q;
            }
        const double v = dem - g.in_weight(in);
        if (v > b.value) {
            b.value = v;
            b.set = s;
        }
    }
    return b;
}

// Weights in cents on a random share of the arcs; integer demands and capacity.
inline cirp::SupportGraph random_support_graph(std::mt19937& rng, int n, cirp::DerivedData& d, double& q) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    cirp::SupportGraph g(n + 1);
    const double density = 0.2 + 0.6 * u(rng);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
            if (i != j && u(rng) < density) g.add(i, j, std::round(100.0 * u(rng)) / 100.0);
    d.min_demand.assign(static_cast<std::size_t>(n + 1), 0.0);
    for (int i = 1; i <= n; ++i) d.min_demand[static_cast<std::size_t>(i)] = 1.0 + std::floor(40.0 * u(rng));
    q = 10.0 + std::floor(50.0 * u(rng));
    return g;
}

} // namespace oracle
