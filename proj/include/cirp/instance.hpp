#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cirp/common.hpp"

namespace cirp {

class InstanceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised when the data proves that no feasible plan exists (for example a
// visit that must happen has an empty time window).
class InfeasibleInstance : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t n, double fill = 0.0) : n_(n), values_(n * n, fill) {}

    std::size_t size() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return values_[i * n_ + j]; }

    friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<double> values_;
};

struct Customer {
    int id = 0;
    double rate = 0.0;
    double inv_init = 0.0;
    double inv_min = 0.0;
    double inv_max = 0.0;
    double inv_end_target = 0.0;
    std::optional<std::pair<double, double>> coords;

    friend bool operator==(const Customer&, const Customer&) = default;
};

// Node 0 is the depot, node i (1..n) is customers[i - 1].
struct Instance {
    std::string name;
    double horizon = 0.0;
    int fleet_size = 0;
    double capacity = 0.0;
    std::vector<Customer> customers;
    SquareMatrix travel_time;
    SquareMatrix travel_cost;
    std::optional<std::pair<double, double>> depot_coords;

    int num_customers() const { return static_cast<int>(customers.size()); }
    int num_sites() const { return num_customers() + 1; }
    const Customer& customer(int site) const { return customers.at(static_cast<std::size_t>(site - 1)); }
    double time(int i, int j) const { return travel_time(static_cast<std::size_t>(i), static_cast<std::size_t>(j)); }
    double cost(int i, int j) const { return travel_cost(static_cast<std::size_t>(i), static_cast<std::size_t>(j)); }

    friend bool operator==(const Instance&, const Instance&) = default;
};

struct ValidationOptions {
    // Allowed slack in the triangle inequality checks. Readers that round
    // Euclidean distances to two decimals need about 0.015 here.
    double triangle_tolerance = 1e-9;
};

namespace detail {

inline std::string format_triple(int i, int j, int k) {
    std::ostringstream os;
    os << '(' << i << ',' << j << ',' << k << ')';
    return os.str();
}

inline void check_triangle(const SquareMatrix& m, const char* label, double tol) {
    const int n = static_cast<int>(m.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            for (int k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                const double direct = m(i, k);
                const double via = m(i, j) + m(j, k);
                if (direct > via + tol) {
                    std::ostringstream os;
                    os << "triangle inequality violated in " << label << " matrix on " << format_triple(i, j, k)
                       << ": " << direct << " > " << m(i, j) << " + " << m(j, k);
                    throw InstanceError(os.str());
                }
            }
        }
}

} // namespace detail

// Checks every structural invariant; throws InstanceError naming the
// violated invariant and the offending indices.
inline void validate_instance(const Instance& inst, const ValidationOptions& opts = {}) {
    auto fail = [](const std::string& msg) { throw InstanceError(msg); };
    if (!(inst.horizon > 0.0)) fail("horizon must be positive");
    if (inst.fleet_size < 1) fail("fleet_size must be at least 1");
    if (!(inst.capacity > 0.0)) fail("capacity must be positive");
    if (inst.customers.empty()) fail("instance has no customers");

    const std::size_t sites = static_cast<std::size_t>(inst.num_sites());
    if (inst.travel_time.size() != sites) fail("travel_time matrix has wrong dimension");
    if (inst.travel_cost.size() != sites) fail("travel_cost matrix has wrong dimension");

    for (int i = 1; i < inst.num_sites(); ++i) {
        const Customer& c = inst.customer(i);
        const std::string who = "customer " + std::to_string(i);
        if (c.id != i) fail(who + ": id " + std::to_string(c.id) + " does not match its position");
        if (!(c.rate > 0.0)) fail(who + ": rate must be positive");
        if (!(c.inv_min <= c.inv_init && c.inv_init <= c.inv_max))
            fail(who + ": requires inv_min <= inv_init <= inv_max");
        if (!(c.inv_min <= c.inv_end_target && c.inv_end_target <= c.inv_max))
            fail(who + ": requires inv_min <= inv_end_target <= inv_max");
        if (!(c.inv_end_target + c.rate * inst.horizon - c.inv_init > 0.0))
            fail(who + ": minimum demand must be positive (every customer needs a visit)");
    }

    for (std::size_t i = 0; i < sites; ++i)
        for (std::size_t j = 0; j < sites; ++j) {
            const double t = inst.travel_time(i, j);
            const double c = inst.travel_cost(i, j);
            const std::string at = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
            if (!std::isfinite(t) || t < 0.0) fail("travel_time" + at + " must be finite and nonnegative");
            if (!std::isfinite(c) || c < 0.0) fail("travel_cost" + at + " must be finite and nonnegative");
            if (i == j && (t != 0.0 || c != 0.0)) fail("diagonal entry" + at + " must be zero");
        }

    detail::check_triangle(inst.travel_time, "travel_time", opts.triangle_tolerance);
    detail::check_triangle(inst.travel_cost, "travel_cost", opts.triangle_tolerance);
}

// True when every travel cost is an integer multiple of 0.01. Only then does
// an absolute gap of 0.0099 certify exact optimality.
inline bool costs_have_two_decimals(const Instance& inst) {
    const std::size_t n = inst.travel_cost.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double scaled = inst.travel_cost(i, j) * 100.0;
            if (std::abs(scaled - std::round(scaled)) > 1e-6) return false;
        }
    return true;
}

// ---------------------------------------------------------------------------
// Derived quantities

// Least total quantity customer `site` must receive over the horizon.
// The defining expression is read per customer: I^H + r H - I^0.
inline double min_demand(const Instance& inst, int site) {
    const Customer& c = inst.customer(site);
    return c.inv_end_target + c.rate * inst.horizon - c.inv_init;
}

// ceil(a / b) robust against a/b landing a hair above an integer.
inline int ceil_ratio(double a, double b) {
    const double r = a / b;
    const double nearest = std::round(r);
    if (std::abs(r - nearest) <= 1e-9 * std::max(1.0, std::abs(r))) return static_cast<int>(nearest);
    return static_cast<int>(std::ceil(r));
}

struct VisitCounts {
    int min_visits = 0;
    int max_visits = 0;
};

inline VisitCounts visit_counts(const Instance& inst, int site, int max_visits_slack = 2) {
    const int m = ceil_ratio(min_demand(inst, site), inst.capacity);
    return {m, m + max_visits_slack};
}

// W^l bounds the departure of a visit: product keeps being dispensed while
// the vehicle stays, so an arrival before W^l followed by a long stay can be
// feasible. W^u bounds the arrival. The window is therefore "inverted"
// (earliest > latest) in some feasible plans; a visit is impossible only when
// it cannot arrive in time or cannot leave early enough to return by H.
struct TimeWindow {
    double earliest = 0.0; // W^l
    double latest = 0.0;   // W^u
    double first_arrival = 0.0;  // t_0j
    double last_departure = 0.0; // H - t_j0

    bool empty() const { return earliest > latest + kTimeEps; }
    bool impossible() const { return latest < first_arrival - kTimeEps || earliest > last_departure + kTimeEps; }
};

// How W^l enters the model. `departure` uses it as a lower bound on the
// departure time; `arrival` follows the literal reading (arrival time, and an
// inverted window makes the visit impossible).
enum class WindowSemantics { departure, arrival };

// Window of the `visit`-th call at customer `site`, given at most
// `max_visits` calls in total.
inline TimeWindow time_window(const Instance& inst, int site, int visit, int max_visits) {
    const Customer& c = inst.customer(site);
    const double q = inst.capacity;
    const double h = inst.horizon;
    const double early = h - (c.inv_max + (max_visits - visit) * q - c.inv_end_target) / c.rate;
    const double late = (c.inv_init + (visit - 1) * q - c.inv_min) / c.rate;
    const double t_out = inst.time(0, site);
    const double t_back = h - inst.time(site, 0);
    return {std::max(t_out, early), std::min(t_back, late), t_out, t_back};
}

inline TimeWindow trivial_time_window(const Instance& inst, int site) {
    const double t_out = inst.time(0, site);
    const double t_back = inst.horizon - inst.time(site, 0);
    return {t_out, t_back, t_out, t_back};
}

struct DerivedOptions {
    int max_visits_slack = 2;
    bool tighten_windows = true;
    WindowSemantics semantics = WindowSemantics::departure;
};

// Per-site vectors are indexed by site; index 0 (the depot) is unused except
// for `windows[0]`, which holds the depot window [0, H].
struct DerivedData {
    std::vector<double> min_demand;
    std::vector<int> min_visits;
    std::vector<int> max_visits;
    std::vector<std::vector<TimeWindow>> windows; // windows[site][visit - 1]
    WindowSemantics semantics = WindowSemantics::departure;

    // True when visit `visit` of `site` cannot take place in any plan.
    bool impossible(int site, int visit) const {
        const TimeWindow& w = window(site, visit);
        return semantics == WindowSemantics::arrival ? w.empty() : w.impossible();
    }

    const TimeWindow& window(int site, int visit) const {
        return windows[static_cast<std::size_t>(site)][static_cast<std::size_t>(visit - 1)];
    }
    int num_visits(int site) const { return max_visits[static_cast<std::size_t>(site)]; }
    double total_min_demand() const {
        double s = 0.0;
        for (std::size_t i = 1; i < min_demand.size(); ++i) s += min_demand[i];
        return s;
    }
};

// Throws InfeasibleInstance when a visit that must happen (index <= m_i)
// is impossible.
inline DerivedData derive(const Instance& inst, const DerivedOptions& opts = {}) {
    if (opts.max_visits_slack < 0) throw std::invalid_argument("max_visits_slack must be nonnegative");
    const auto n = static_cast<std::size_t>(inst.num_sites());
    DerivedData d;
    d.min_demand.assign(n, 0.0);
    d.min_visits.assign(n, 1);
    d.max_visits.assign(n, 1);
    d.windows.assign(n, {});
    d.semantics = opts.semantics;
    d.windows[0] = {TimeWindow{0.0, inst.horizon, 0.0, inst.horizon}};
    for (int i = 1; i < inst.num_sites(); ++i) {
        const auto s = static_cast<std::size_t>(i);
        d.min_demand[s] = min_demand(inst, i);
        const VisitCounts vc = visit_counts(inst, i, opts.max_visits_slack);
        d.min_visits[s] = vc.min_visits;
        d.max_visits[s] = vc.max_visits;
        for (int beta = 1; beta <= vc.max_visits; ++beta) {
            const TimeWindow w =
                opts.tighten_windows ? time_window(inst, i, beta, vc.max_visits) : trivial_time_window(inst, i);
            const bool impossible = opts.semantics == WindowSemantics::arrival ? w.empty() : w.impossible();
            if (impossible && beta <= vc.min_visits) {
                std::ostringstream os;
                os << "customer " << i << " visit " << beta << " must take place but is impossible: ";
                if (w.latest < w.first_arrival - kTimeEps)
                    os << "its latest arrival " << w.latest << " precedes the earliest possible arrival "
                       << w.first_arrival;
                else if (w.earliest > w.last_departure + kTimeEps)
                    os << "its earliest departure " << w.earliest << " leaves no time to return by " << inst.horizon;
                else
                    os << "its time window [" << w.earliest << ", " << w.latest << "] is empty";
                throw InfeasibleInstance(os.str());
            }
            d.windows[s].push_back(w);
        }
    }
    return d;
}

} // namespace cirp
