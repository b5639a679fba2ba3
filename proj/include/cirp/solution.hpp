#pragma once

// Solution document: routes as event lists plus bounds and run statistics.
// This JSON document is what `cirp validate` consumes.

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "cirp/common.hpp"
#include "cirp/instance_io.hpp"

namespace cirp {

enum class EventKind { depot_start, visit, depot_reload, depot_end };

inline std::string_view to_string(EventKind k) {
    switch (k) {
    case EventKind::depot_start: return "depot_start";
    case EventKind::visit: return "visit";
    case EventKind::depot_reload: return "depot_reload";
    case EventKind::depot_end: return "depot_end";
    }
    return "?";
}

inline std::optional<EventKind> parse_event_kind(std::string_view s) {
    if (s == "depot_start") return EventKind::depot_start;
    if (s == "visit") return EventKind::visit;
    if (s == "depot_reload") return EventKind::depot_reload;
    if (s == "depot_end") return EventKind::depot_end;
    return std::nullopt;
}

// One stop of a vehicle. For visits `quantity` is the amount delivered; for
// depot_start and depot_reload it is the amount loaded. `load_after` is the
// amount on board when the vehicle leaves the stop.
struct RouteEvent {
    EventKind kind = EventKind::visit;
    int site = 0;
    int visit = 0; // visit index for customer stops, 0 at the depot
    double arrival = 0.0;
    double departure = 0.0;
    double quantity = 0.0;
    double load_after = 0.0;
};

struct Route {
    std::vector<RouteEvent> events;
};

struct Solution {
    std::vector<Route> routes;
    double objective = 0.0;
    std::vector<int> per_customer_visits; // indexed by site, entry 0 unused

    double average_visits() const {
        if (per_customer_visits.size() <= 1) return 0.0;
        double s = 0.0;
        for (std::size_t i = 1; i < per_customer_visits.size(); ++i) s += per_customer_visits[i];
        return s / static_cast<double>(per_customer_visits.size() - 1);
    }
};

enum class SolveStatus { optimal, time_limit, infeasible, error };

inline std::string_view to_string(SolveStatus s) {
    switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::time_limit: return "time_limit";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::error: return "error";
    }
    return "?";
}

inline SolveStatus parse_solve_status(std::string_view s) {
    if (s == "optimal") return SolveStatus::optimal;
    if (s == "time_limit") return SolveStatus::time_limit;
    if (s == "infeasible") return SolveStatus::infeasible;
    if (s == "error") return SolveStatus::error;
    throw ParseError("unknown status '" + std::string(s) + "'");
}

struct Bounds {
    double upper = kInf;
    double lower = -kInf;
    SolveStatus status = SolveStatus::error;

    double gap_abs() const { return upper - lower; }
    double gap_rel() const { return upper == kInf || upper == 0.0 ? kInf : (upper - lower) / upper; }
};

struct SolveStats {
    long long nodes = 0;
    long long lp_solves = 0;
    int rci_added = 0;
    int arcs_removed = 0;
    int visits_fixed = 0;
    double root_bound = -kInf;
    double wall_seconds = 0.0;
    std::string backend;
    std::string driver;
};

struct SolutionDocument {
    std::string instance;
    std::optional<Solution> solution;
    Bounds bounds;
    SolveStats stats;
    // False when some cost has more than two decimals: "optimal" then only
    // means optimal within the absolute gap.
    bool exact_at_two_decimals = true;
    std::string message;
};

namespace detail {

inline nlohmann::ordered_json number_or_null(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

inline double number_or_inf(const nlohmann::json& j, double fallback) {
    return j.is_number() ? j.get<double>() : fallback;
}

} // namespace detail

inline std::string to_json(const SolutionDocument& doc) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["format"] = "cirp-solution";
    j["version"] = 1;
    j["instance"] = doc.instance;
    j["status"] = std::string(to_string(doc.bounds.status));
    j["objective"] = doc.solution ? ordered_json(doc.solution->objective) : ordered_json(nullptr);
    j["exact_at_two_decimals"] = doc.exact_at_two_decimals;
    j["bounds"] = {{"upper", detail::number_or_null(doc.bounds.upper)},
                   {"lower", detail::number_or_null(doc.bounds.lower)},
                   {"gap_abs", detail::number_or_null(doc.bounds.gap_abs())},
                   {"gap_rel", detail::number_or_null(doc.bounds.gap_rel())}};
    j["stats"] = {{"nodes", doc.stats.nodes},
                  {"lp_solves", doc.stats.lp_solves},
                  {"rci_added", doc.stats.rci_added},
                  {"arcs_removed", doc.stats.arcs_removed},
                  {"visits_fixed", doc.stats.visits_fixed},
                  {"root_bound", detail::number_or_null(doc.stats.root_bound)},
                  {"wall_seconds", doc.stats.wall_seconds},
                  {"backend", doc.stats.backend},
                  {"driver", doc.stats.driver}};
    if (!doc.message.empty()) j["message"] = doc.message;
    ordered_json routes = ordered_json::array();
    if (doc.solution) {
        for (const Route& r : doc.solution->routes) {
            ordered_json ev = ordered_json::array();
            for (const RouteEvent& e : r.events) {
                ordered_json je;
                je["kind"] = std::string(to_string(e.kind));
                je["site"] = e.site;
                if (e.kind == EventKind::visit) je["visit"] = e.visit;
                je["arrival"] = e.arrival;
                je["departure"] = e.departure;
                je["quantity"] = e.quantity;
                je["load_after"] = e.load_after;
                ev.push_back(std::move(je));
            }
            routes.push_back({{"events", std::move(ev)}});
        }
        j["per_customer_visits"] = doc.solution->per_customer_visits;
    }
    j["routes"] = std::move(routes);
    return j.dump(2) + "\n";
}

inline SolutionDocument parse_solution(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed solution document: ") + e.what());
    }
    try {
        if (!j.is_object() || j.value("format", std::string{}) != "cirp-solution")
            throw ParseError("not a cirp-solution document");
        SolutionDocument doc;
        doc.instance = j.value("instance", std::string{});
        doc.bounds.status = parse_solve_status(j.at("status").get<std::string>());
        doc.exact_at_two_decimals = j.value("exact_at_two_decimals", true);
        doc.message = j.value("message", std::string{});
        if (j.contains("bounds")) {
            doc.bounds.upper = detail::number_or_inf(j["bounds"].value("upper", nlohmann::json()), kInf);
            doc.bounds.lower = detail::number_or_inf(j["bounds"].value("lower", nlohmann::json()), -kInf);
        }
        if (j.contains("stats")) {
            const auto& s = j["stats"];
            doc.stats.nodes = s.value("nodes", 0LL);
            doc.stats.lp_solves = s.value("lp_solves", 0LL);
            doc.stats.rci_added = s.value("rci_added", 0);
            doc.stats.arcs_removed = s.value("arcs_removed", 0);
            doc.stats.visits_fixed = s.value("visits_fixed", 0);
            doc.stats.root_bound = detail::number_or_inf(s.value("root_bound", nlohmann::json()), -kInf);
            doc.stats.wall_seconds = s.value("wall_seconds", 0.0);
            doc.stats.backend = s.value("backend", std::string{});
            doc.stats.driver = s.value("driver", std::string{});
        }
        if (j.contains("objective") && j["objective"].is_number()) {
            Solution sol;
            sol.objective = j["objective"].get<double>();
            for (const auto& jr : j.at("routes")) {
                Route r;
                for (const auto& je : jr.at("events")) {
                    RouteEvent e;
                    const auto kind = parse_event_kind(je.at("kind").get<std::string>());
                    if (!kind) throw ParseError("unknown event kind '" + je.at("kind").get<std::string>() + "'");
                    e.kind = *kind;
                    e.site = je.at("site").get<int>();
                    e.visit = je.value("visit", 0);
                    e.arrival = je.at("arrival").get<double>();
                    e.departure = je.at("departure").get<double>();
                    e.quantity = je.value("quantity", 0.0);
                    e.load_after = je.value("load_after", 0.0);
                    r.events.push_back(e);
                }
                sol.routes.push_back(std::move(r));
            }
            sol.per_customer_visits = j.value("per_customer_visits", std::vector<int>{});
            doc.solution = std::move(sol);
        }
        return doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad solution document: ") + e.what());
    }
}

} // namespace cirp
