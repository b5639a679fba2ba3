#pragma once

// Continuous-time feasibility check of a Solution against the raw Instance.
// Only instance data and the solution document are consulted: no windows,
// no network, no model.
//
// Within a stay [a, d] product can be dispensed at any pace, so the stay is
// feasible iff the level on arrival (before delivery) is at least I^l and the
// level on departure is at most I^u. Between stays the level only falls, so
// checking every arrival and the level at H covers the whole horizon.

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "cirp/instance.hpp"
#include "cirp/solution.hpp"

namespace cirp {

struct Violation {
    std::string kind;
    std::string location;
    double magnitude = 0.0;
    std::string detail;
};

struct ViolationReport {
    bool ok = true;
    std::vector<Violation> violations;
    double recomputed_objective = 0.0;

    int count(std::string_view kind) const {
        return static_cast<int>(std::count_if(violations.begin(), violations.end(),
                                              [&](const Violation& v) { return v.kind == kind; }));
    }
};

namespace detail {

inline std::string route_loc(std::size_t r, std::size_t e) {
    return "route " + std::to_string(r) + " event " + std::to_string(e);
}

} // namespace detail

inline ViolationReport validate(const Instance& inst, const Solution& sol, double eps = 1e-6) {
    ViolationReport rep;
    auto flag = [&](std::string kind, std::string loc, double mag, std::string detail = {}) {
        rep.violations.push_back({std::move(kind), std::move(loc), mag, std::move(detail)});
    };
    const double H = inst.horizon;
    const double Q = inst.capacity;

    struct Stay {
        int visit;
        double arrival, departure, quantity;
        std::size_t route, event;
    };
    std::vector<std::vector<Stay>> stays(static_cast<std::size_t>(inst.num_sites()));
    double cost = 0.0;

    if (static_cast<int>(sol.routes.size()) > inst.fleet_size)
        flag("fleet", "solution", static_cast<double>(sol.routes.size()) - inst.fleet_size,
             std::to_string(sol.routes.size()) + " routes for " + std::to_string(inst.fleet_size) + " vehicles");

    for (std::size_t r = 0; r < sol.routes.size(); ++r) {
        const auto& ev = sol.routes[r].events;
        const std::string rloc = "route " + std::to_string(r);
        if (ev.size() < 2 || ev.front().kind != EventKind::depot_start || ev.back().kind != EventKind::depot_end) {
            flag("structure", rloc, 1.0, "route must start with depot_start and end with depot_end");
            continue;
        }
        bool broken = false;
        for (std::size_t e = 0; e < ev.size(); ++e) {
            const RouteEvent& x = ev[e];
            const bool at_depot = x.kind != EventKind::visit;
            const bool inner = e > 0 && e + 1 < ev.size();
            if ((x.kind == EventKind::depot_start && e != 0) || (x.kind == EventKind::depot_end && e + 1 != ev.size()) ||
                (inner && x.kind != EventKind::visit && x.kind != EventKind::depot_reload)) {
                flag("structure", detail::route_loc(r, e), 1.0, "depot_start/depot_end out of place");
                broken = true;
            }
            if (at_depot ? x.site != 0 : (x.site < 1 || x.site >= inst.num_sites())) {
                flag("structure", detail::route_loc(r, e), 1.0, "site " + std::to_string(x.site) + " invalid for event");
                broken = true;
            }
            if (!std::isfinite(x.arrival) || !std::isfinite(x.departure) || !std::isfinite(x.quantity) ||
                !std::isfinite(x.load_after)) {
                flag("structure", detail::route_loc(r, e), 1.0, "non-finite value");
                broken = true;
            }
        }
        if (broken) continue;

        // (1) closure and horizon
        if (ev.front().departure < -eps) flag("horizon", rloc, -ev.front().departure, "departs before time 0");
        if (ev.back().arrival > H + eps) flag("horizon", rloc, ev.back().arrival - H, "returns after the horizon");

        double load = 0.0;
        double trip_delivered = 0.0;
        for (std::size_t e = 0; e < ev.size(); ++e) {
            const RouteEvent& x = ev[e];
            const std::string loc = detail::route_loc(r, e);
            if (x.departure < x.arrival - eps && x.kind != EventKind::depot_end)
                flag("chronology", loc, x.arrival - x.departure, "departure before arrival");
            if (x.quantity < -eps) flag("quantity", loc, -x.quantity, "negative quantity");

            if (e > 0) {
                // (2) travel time and leg cost
                const RouteEvent& p = ev[e - 1];
                const double need = p.departure + inst.time(p.site, x.site);
                if (x.arrival < need - eps) flag("travel_time", loc, need - x.arrival);
                cost += inst.cost(p.site, x.site);
            }

            switch (x.kind) {
            case EventKind::depot_start:
            case EventKind::depot_reload:
            case EventKind::depot_end:
                // (3) a trip ends here: the vehicle must come back empty
                if (e > 0 && load > eps) flag("empty_return", loc, load);
                if (e > 0 && trip_delivered > Q + eps) flag("capacity", loc, trip_delivered - Q, "trip delivers more than Q");
                load = x.kind == EventKind::depot_end ? 0.0 : x.quantity;
                trip_delivered = 0.0;
                if (load > Q + eps) flag("capacity", loc, load - Q, "loads more than Q");
                break;
            case EventKind::visit:
                load -= x.quantity;
                trip_delivered += x.quantity;
                if (load < -eps) flag("capacity", loc, -load, "delivers more than is on board");
                stays[static_cast<std::size_t>(x.site)].push_back({x.visit, x.arrival, x.departure, x.quantity, r, e});
                break;
            }
            if (x.kind != EventKind::depot_end && std::abs(x.load_after - load) > eps)
                flag("load", loc, std::abs(x.load_after - load), "reported load disagrees with quantities");
        }
    }

    // (5) per-customer chronology and (6) inventory trajectory
    for (int i = 1; i < inst.num_sites(); ++i) {
        const Customer& c = inst.customer(i);
        auto& v = stays[static_cast<std::size_t>(i)];
        // Reported visit indices fix the order when they are 1..k; the overlap
        // check below then catches any order that is not chronological.
        std::vector<int> idx;
        for (const Stay& s : v) idx.push_back(s.visit);
        std::sort(idx.begin(), idx.end());
        bool indexed = true;
        for (std::size_t k = 0; k < idx.size(); ++k) indexed = indexed && idx[k] == static_cast<int>(k) + 1;
        if (indexed)
            std::sort(v.begin(), v.end(), [](const Stay& a, const Stay& b) { return a.visit < b.visit; });
        else
            std::stable_sort(v.begin(), v.end(), [](const Stay& a, const Stay& b) {
                return a.arrival != b.arrival ? a.arrival < b.arrival : a.departure < b.departure;
            });
        const std::string loc = "customer " + std::to_string(i);
        double delivered = 0.0;
        for (std::size_t k = 0; k < v.size(); ++k) {
            const Stay& s = v[k];
            const std::string visit = "visit " + std::to_string(k + 1);
            if (k > 0 && v[k - 1].departure > s.arrival + eps)
                flag("overlap", loc, v[k - 1].departure - s.arrival, visit + " starts before the previous one ends");
            const double at_arrival = c.inv_init - c.rate * s.arrival + delivered;
            if (at_arrival < c.inv_min - eps) flag("inventory_lower", loc, c.inv_min - at_arrival, visit);
            delivered += s.quantity;
            const double at_departure = c.inv_init - c.rate * s.departure + delivered;
            if (at_departure > c.inv_max + eps) flag("inventory_upper", loc, at_departure - c.inv_max, visit);
        }
        const double at_end = c.inv_init - c.rate * H + delivered;
        if (at_end < c.inv_end_target - eps) flag("end_inventory", loc, c.inv_end_target - at_end);
    }

    // (7) objective
    rep.recomputed_objective = cost;
    if (std::abs(cost - sol.objective) > eps)
        flag("objective", "solution", std::abs(cost - sol.objective),
             "reported " + std::to_string(sol.objective) + ", recomputed " + std::to_string(cost));

    rep.ok = rep.violations.empty();
    return rep;
}

inline std::string format_report(const ViolationReport& rep) {
    std::ostringstream os;
    os.precision(10);
    os << (rep.ok ? "ok" : "INVALID") << " violations=" << rep.violations.size()
       << " recomputed_objective=" << rep.recomputed_objective << "\n";
    for (const Violation& v : rep.violations) {
        os << "  " << v.kind << " at " << v.location << " magnitude " << v.magnitude;
        if (!v.detail.empty()) os << " (" << v.detail << ")";
        os << "\n";
    }
    return os.str();
}

} // namespace cirp
