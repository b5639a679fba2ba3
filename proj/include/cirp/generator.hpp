#pragma once

// Synthetic instances in the style of the clustered / random benchmark
// families: points in a 20 x 20 square, depot in the middle, travel time
// and cost both equal to the Euclidean distance rounded to two decimals.
// Rounding can break the triangle inequality, so distances are replaced by
// shortest-path values afterwards (still exact multiples of 0.01).

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "cirp/instance.hpp"

namespace cirp {

enum class Layout { clustered, random };

struct GeneratorOptions {
    int customers = 5;
    int vehicles = 2;
    Layout layout = Layout::random;
    // Tank size as a multiple of the horizon's consumption (U levels) and
    // vehicle capacity as a multiple of the mean tank size (Q levels).
    double tank_factor = 0.5;
    double capacity_factor = 1.5;
    double horizon = 60.0;
    unsigned seed = 1;
};

inline double round2(double v) { return std::round(v * 100.0) / 100.0; }

inline Instance generate_instance(const GeneratorOptions& g) {
    if (g.customers < 1) throw std::invalid_argument("customers must be at least 1");
    if (g.vehicles < 1) throw std::invalid_argument("vehicles must be at least 1");
    std::mt19937 rng(g.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    Instance inst;
    inst.name = std::string(g.layout == Layout::clustered ? "S-C" : "S-R") + std::to_string(g.customers) + "-k" +
                std::to_string(g.vehicles) + "-s" + std::to_string(g.seed);
    inst.fleet_size = g.vehicles;
    inst.depot_coords = std::make_pair(10.0, 10.0);

    std::vector<std::pair<double, double>> pts{{10.0, 10.0}};
    std::vector<std::pair<double, double>> centers;
    for (int c = 0; c < 3; ++c) centers.emplace_back(2.0 + 16.0 * unit(rng), 2.0 + 16.0 * unit(rng));
    std::normal_distribution<double> spread(0.0, 1.5);
    for (int i = 1; i <= g.customers; ++i) {
        double x, y;
        if (g.layout == Layout::clustered) {
            const auto& c = centers[static_cast<std::size_t>(rng() % centers.size())];
            x = std::clamp(c.first + spread(rng), 0.0, 20.0);
            y = std::clamp(c.second + spread(rng), 0.0, 20.0);
        } else {
            x = 20.0 * unit(rng);
            y = 20.0 * unit(rng);
        }
        pts.emplace_back(round2(x), round2(y));
    }

    const auto n = pts.size();
    SquareMatrix dist(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            dist(i, j) = i == j ? 0.0
                                : round2(std::hypot(pts[i].first - pts[j].first, pts[i].second - pts[j].second));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (dist(i, k) + dist(k, j) < dist(i, j)) dist(i, j) = round2(dist(i, k) + dist(k, j));
    inst.travel_time = dist;
    inst.travel_cost = dist;

    inst.horizon = g.horizon;

    double tank_sum = 0.0;
    for (int i = 1; i <= g.customers; ++i) {
        Customer c;
        c.id = i;
        c.coords = pts[static_cast<std::size_t>(i)];
        c.rate = round2(0.5 + 1.5 * unit(rng));
        const double use = c.rate * inst.horizon;
        c.inv_min = 0.0;
        c.inv_max = std::round(std::max(10.0, g.tank_factor * use));
        // Start between one quarter and three quarters full, never able to last the horizon.
        c.inv_init = std::round(c.inv_max * (0.25 + 0.5 * unit(rng)));
        c.inv_end_target = std::round(0.2 * c.inv_max);
        tank_sum += c.inv_max;
        inst.customers.push_back(c);
    }
    inst.capacity = std::round(std::max(1.0, g.capacity_factor * tank_sum / g.customers));
    validate_instance(inst);
    return inst;
}

} // namespace cirp
