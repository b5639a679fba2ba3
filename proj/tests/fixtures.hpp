#pragma once

#include <filesystem>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "cirp/cirp.hpp"

namespace fixtures {

inline std::filesystem::path sample(const std::string& name) { return std::filesystem::path(CIRP_SAMPLES_DIR) / name; }

inline cirp::Customer customer(int id, double rate, double init, double lo, double hi, double end) {
    cirp::Customer c;
    c.id = id;
    c.rate = rate;
    c.inv_init = init;
    c.inv_min = lo;
    c.inv_max = hi;
    c.inv_end_target = end;
    return c;
}

// Travel costs equal travel times.
inline cirp::Instance make(double horizon, int fleet, double capacity, std::vector<cirp::Customer> cs,
                           const std::vector<std::vector<double>>& times, std::string name = "toy") {
    cirp::Instance inst;
    inst.name = std::move(name);
    inst.horizon = horizon;
    inst.fleet_size = fleet;
    inst.capacity = capacity;
    inst.customers = std::move(cs);
    const std::size_t n = times.size();
    inst.travel_time = cirp::SquareMatrix(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inst.travel_time(i, j) = times[i][j];
    inst.travel_cost = inst.travel_time;
    return inst;
}

// I0=10, Il=0, Iu=20, IH=0, r=2, H=10, Q=15, one time unit from the depot.
inline cirp::Instance one_customer() {
    return make(10.0, 1, 15.0, {customer(1, 2.0, 10.0, 0.0, 20.0, 0.0)}, {{0, 1}, {1, 0}}, "one");
}

// depot -> arrive at `arrival`, deliver `q`, leave at once -> depot.
inline cirp::Solution single_visit_route(const cirp::Instance& inst, double arrival, double q) {
    using cirp::EventKind;
    const double t = inst.time(0, 1);
    cirp::Route r;
    r.events.push_back({EventKind::depot_start, 0, 0, arrival - t, arrival - t, q, q});
    r.events.push_back({EventKind::visit, 1, 1, arrival, arrival, q, 0.0});
    r.events.push_back({EventKind::depot_end, 0, 0, arrival + inst.time(1, 0), arrival + inst.time(1, 0), 0.0, 0.0});
    cirp::Solution s;
    s.routes.push_back(r);
    s.objective = inst.cost(0, 1) + inst.cost(1, 0);
    s.per_customer_visits = {0, 1};
    return s;
}

// Small random instance on a grid; costs with two decimals.
inline cirp::Instance random_tiny(std::mt19937& rng, int customers, double horizon = 20.0) {
    std::uniform_real_distribution<double> coord(0.0, 6.0), rate(0.5, 1.5), frac(0.2, 0.8);
    std::vector<std::pair<double, double>> pts{{3.0, 3.0}};
    for (int i = 0; i < customers; ++i) pts.push_back({coord(rng), coord(rng)});
    std::vector<std::vector<double>> t(pts.size(), std::vector<double>(pts.size(), 0.0));
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = 0; j < pts.size(); ++j)
            if (i != j) t[i][j] = std::round(100.0 * std::hypot(pts[i].first - pts[j].first, pts[i].second - pts[j].second)) / 100.0;
    // Rounding can break the triangle inequality by a cent; repair by shortest paths.
    for (std::size_t k = 0; k < pts.size(); ++k)
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = 0; j < pts.size(); ++j)
                t[i][j] = std::min(t[i][j], std::round(100.0 * (t[i][k] + t[k][j])) / 100.0);
    std::vector<cirp::Customer> cs;
    double tank_sum = 0.0;
    for (int i = 1; i <= customers; ++i) {
        const double r = std::round(10.0 * rate(rng)) / 10.0;
        const double tank = std::round(r * horizon * frac(rng) + 2.0);
        const double init = std::round(tank * frac(rng));
        cs.push_back(customer(i, r, init, 0.0, tank, std::round(0.2 * tank)));
        tank_sum += tank;
    }
    return make(horizon, 1 + static_cast<int>(rng() % 2), std::round(tank_sum / customers * (0.6 + frac(rng))), cs, t,
                "tiny");
}

// Model variable values that encode a plan; throws if the plan uses an arc
// the network does not have.
inline std::vector<double> plan_values(const cirp::Solution& sol, const cirp::PreparedModel& p) {
    using namespace cirp;
    const ExpandedNetwork& net = p.net;
    const VariableSpace& vs = p.model.vars;
    std::vector<double> x(static_cast<std::size_t>(p.model.milp.num_variables()), 0.0);
    auto set = [&](int var, double v) {
        if (var < 0) throw std::runtime_error("plan touches a variable the model lacks");
        x[static_cast<std::size_t>(var)] = v;
    };
    for (const Route& r : sol.routes) {
        int from = ExpandedNetwork::kDepot;
        double load = r.events.front().load_after;
        bool detour = false;
        double reload = 0.0;
        for (std::size_t k = 1; k < r.events.size(); ++k) {
            const RouteEvent& e = r.events[k];
            if (e.kind == EventKind::depot_reload) {
                detour = true;
                reload = e.quantity;
                continue;
            }
            const int to = e.kind == EventKind::visit ? net.node_index(e.site, e.visit) : ExpandedNetwork::kDepot;
            const ArcMode mode = detour ? ArcMode::detour : ArcMode::direct;
            int arc = -1;
            for (int a : net.out_arcs(from, mode))
                if (net.arc(a).to == to && net.arc(a).alive) arc = a;
            if (arc < 0) throw std::runtime_error("plan uses a missing arc");
            set(vs.x_of(arc), 1.0);
            set(vs.atilde[static_cast<std::size_t>(arc)], e.arrival);
            if (!detour) set(vs.f[static_cast<std::size_t>(arc)], load);
            if (e.kind == EventKind::visit) {
                const auto n = static_cast<std::size_t>(to);
                set(vs.y[n], 1.0);
                set(vs.a[n], e.arrival);
                set(vs.d[n], e.departure);
                set(vs.q[n], e.quantity);
                if (detour) set(vs.reload[n], reload);
            }
            from = to;
            load = e.load_after;
            detour = false;
        }
    }
    return x;
}

} // namespace fixtures
