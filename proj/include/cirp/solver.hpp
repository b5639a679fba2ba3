#pragma once

// Branch-and-cut over the expanded-network model.
//
// The driver owns the search tree and talks to the backend through its LP
// interface only: bound changes for branching, row additions for cuts. Rows
// added anywhere in the tree are globally valid and stay in the LP.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <map>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include "cirp/highs_backend.hpp"
#include "cirp/instance.hpp"
#include "cirp/milp.hpp"
#include "cirp/model.hpp"
#include "cirp/network.hpp"
#include "cirp/separation.hpp"
#include "cirp/solution.hpp"

namespace cirp {

enum class Driver { branch_and_cut, backend_mip };

inline std::string_view to_string(Driver d) { return d == Driver::branch_and_cut ? "branch-and-cut" : "backend-mip"; }

struct SolveOptions {
    double time_limit = 600.0;
    double absolute_gap = 0.0099;
    double relative_gap = 0.0;
    bool enable_rci = true;
    bool enable_backend_general_cuts = false;
    int threads = 1;
    int max_visits_slack = 2;
    unsigned rng_seed = 0;

    // Tightenings; all on by default.
    bool tighten_windows = true;
    bool eliminate_arcs = true;
    bool fix_visits = true;
    bool aggregate_rci = true;

    WindowSemantics window_semantics = WindowSemantics::departure;

    Driver driver = Driver::branch_and_cut;
    int max_cut_rounds = 5;
    SeparationOptions separation;
    // Share of the time limit given to the backend's own MILP heuristics at
    // the root to find a first incumbent; 0 disables.
    double heuristic_time_share = 0.1;

    void check() const {
        if (!(absolute_gap >= 0.0)) throw std::invalid_argument("absolute_gap must be nonnegative");
        if (!(relative_gap >= 0.0)) throw std::invalid_argument("relative_gap must be nonnegative");
        if (threads < 1) throw std::invalid_argument("threads must be at least 1");
        if (max_visits_slack < 0) throw std::invalid_argument("max_visits_slack must be nonnegative");
        if (!(time_limit > 0.0)) throw std::invalid_argument("time_limit must be positive");
        if (!(heuristic_time_share >= 0.0 && heuristic_time_share < 1.0))
            throw std::invalid_argument("heuristic_time_share must be in [0, 1)");
    }

    // Turns every preprocessing step off.
    SolveOptions& untightened() {
        tighten_windows = eliminate_arcs = fix_visits = aggregate_rci = false;
        return *this;
    }
};

// Backend selected by CIRP_BACKEND: "highs" (default, own branch-and-cut over
// the HiGHS LP) or "highs-mip" (HiGHS branch-and-bound, no dynamic cuts).
inline Driver driver_from_env(Driver fallback = Driver::branch_and_cut) {
    const char* v = std::getenv("CIRP_BACKEND");
    if (v == nullptr || *v == '\0') return fallback;
    const std::string s(v);
    if (s == "highs") return Driver::branch_and_cut;
    if (s == "highs-mip") return Driver::backend_mip;
    throw std::invalid_argument("unknown CIRP_BACKEND '" + s + "' (expected highs or highs-mip)");
}

struct PreparedModel {
    DerivedData derived;
    ExpandedNetwork net;
    ModelHandle model;
    int arcs_removed = 0;
    int visits_fixed = 0;
};

// derive -> network -> eliminate -> model -> fixings -> aggregate RCI
// (the latter only when RCI are enabled at all).
// Throws InfeasibleInstance when preprocessing already proves infeasibility.
inline PreparedModel prepare(const Instance& inst, const SolveOptions& opts) {
    PreparedModel p;
    p.derived = derive(inst, {opts.max_visits_slack, opts.tighten_windows, opts.window_semantics});
    p.net = build_network(inst, p.derived);
    if (opts.eliminate_arcs) p.arcs_removed = eliminate_arcs(p.net, p.derived);
    p.model = build_model(p.net, inst, p.derived);
    if (opts.fix_visits) p.visits_fixed = fix_enforced_visits(p.model, p.net, p.derived);
    if (opts.aggregate_rci && opts.enable_rci) add_aggregate_rci(p.model, p.net, p.derived, inst.capacity);
    return p;
}

// ---------------------------------------------------------------------------
// Solution extraction

class ExtractionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Solution extract_solution(std::span<const double> values, const ModelHandle& h, const ExpandedNetwork& net,
                                 const Instance& inst) {
    const VariableSpace& vs = h.vars;
    auto val = [&](int var) { return var < 0 ? 0.0 : values[static_cast<std::size_t>(var)]; };
    auto nval = [&](const std::vector<int>& v, int node) { return val(v[static_cast<std::size_t>(node)]); };
    auto clean = [](double x) { return std::abs(x) < 1e-9 ? 0.0 : x; };

    std::vector<std::vector<int>> succ(static_cast<std::size_t>(net.num_nodes()));
    int used = 0;
    for (int a = 0; a < net.num_arcs(); ++a)
        if (vs.x_of(a) >= 0 && val(vs.x_of(a)) > 0.5) {
            succ[static_cast<std::size_t>(net.arc(a).from)].push_back(a);
            ++used;
        }
    for (int node = 1; node < net.num_nodes(); ++node)
        if (succ[static_cast<std::size_t>(node)].size() > 1)
            throw ExtractionError("visit node " + std::to_string(node) + " has more than one successor");

    Solution sol;
    sol.per_customer_visits.assign(static_cast<std::size_t>(inst.num_sites()), 0);
    int walked = 0;
    for (int first : succ[ExpandedNetwork::kDepot]) {
        Route route;
        const Arc& out = net.arc(first);
        const int j0 = out.to;
        RouteEvent start;
        start.kind = EventKind::depot_start;
        start.site = 0;
        start.departure = start.arrival = std::max(0.0, clean(nval(vs.a, j0) - out.travel_time));
        start.quantity = clean(val(vs.f[static_cast<std::size_t>(first)]));
        start.load_after = start.quantity;
        route.events.push_back(start);
        int arc = first;
        ++walked;
        for (int guard = 0;; ++guard) {
            if (guard > net.num_nodes()) throw ExtractionError("route does not return to the depot");
            const Arc& e = net.arc(arc);
            if (net.node(e.to).is_depot()) {
                RouteEvent end;
                end.kind = EventKind::depot_end;
                end.arrival = end.departure = clean(nval(vs.d, e.from) + e.travel_time);
                route.events.push_back(end);
                break;
            }
            const int v = e.to;
            const VisitNode& vn = net.node(v);
            if (e.mode == ArcMode::detour) {
                const VisitNode& un = net.node(e.from);
                RouteEvent reload;
                reload.kind = EventKind::depot_reload;
                reload.arrival = clean(nval(vs.d, e.from) + inst.time(un.site, 0));
                reload.departure = std::max(reload.arrival, clean(nval(vs.a, v) - inst.time(0, vn.site)));
                reload.quantity = clean(nval(vs.reload, v));
                reload.load_after = reload.quantity;
                route.events.push_back(reload);
            }
            const auto& nxt = succ[static_cast<std::size_t>(v)];
            if (nxt.empty()) throw ExtractionError("visit node " + std::to_string(v) + " has no successor");
            RouteEvent visit;
            visit.kind = EventKind::visit;
            visit.site = vn.site;
            visit.visit = vn.visit;
            visit.arrival = clean(nval(vs.a, v));
            visit.departure = std::max(visit.arrival, clean(nval(vs.d, v)));
            visit.quantity = clean(nval(vs.q, v));
            const Arc& next = net.arc(nxt.front());
            visit.load_after = next.mode == ArcMode::direct ? clean(val(vs.f[static_cast<std::size_t>(nxt.front())])) : 0.0;
            route.events.push_back(visit);
            ++sol.per_customer_visits[static_cast<std::size_t>(vn.site)];
            arc = nxt.front();
            ++walked;
        }
        sol.routes.push_back(std::move(route));
    }
    if (walked != used) throw ExtractionError("selected arcs contain a cycle that avoids the depot");

    // Deliveries are reported per trip so that loads telescope exactly.
    for (Route& r : sol.routes) {
        double cost = 0.0;
        for (std::size_t k = 1; k < r.events.size(); ++k) cost += inst.cost(r.events[k - 1].site, r.events[k].site);
        sol.objective += cost;
        std::size_t trip_start = 0;
        for (std::size_t k = 1; k < r.events.size(); ++k) {
            if (r.events[k].kind == EventKind::visit) continue;
            double load = 0.0;
            for (std::size_t t = trip_start + 1; t < k; ++t) load += r.events[t].quantity;
            r.events[trip_start].quantity = load;
            double left = load;
            r.events[trip_start].load_after = left;
            for (std::size_t t = trip_start + 1; t < k; ++t) {
                left -= r.events[t].quantity;
                r.events[t].load_after = std::abs(left) < 1e-9 ? 0.0 : left;
            }
            trip_start = k;
        }
    }
    return sol;
}

// ---------------------------------------------------------------------------
// Results

struct SolveResult {
    std::optional<Solution> solution;
    Bounds bounds;
    SolveStats stats;
    std::string message;
    bool exact_at_two_decimals = true;
    std::vector<std::vector<int>> cut_sets; // customer sets of every rounded capacity row added

    SolutionDocument document(const std::string& instance) const {
        SolutionDocument doc;
        doc.instance = instance;
        doc.solution = solution;
        doc.bounds = bounds;
        doc.stats = stats;
        doc.exact_at_two_decimals = exact_at_two_decimals;
        doc.message = message;
        return doc;
    }
};

namespace detail {

using Clock = std::chrono::steady_clock;

inline double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct BoundChange {
    int var;
    double lower, upper;
};

struct TreeNode {
    double bound = -kInf; // parent LP bound
    long long order = 0;  // creation order, breaks ties
    std::vector<BoundChange> changes;
};

struct ByBound {
    bool operator()(const TreeNode& a, const TreeNode& b) const {
        if (a.bound != b.bound) return a.bound > b.bound;
        return a.order > b.order;
    }
};

inline constexpr double kIntTol = 1e-6;

// Rounded capacity rows for the cuts of one separation round.
inline std::vector<Row> cut_rows(const std::vector<CandidateCut>& cuts, const PreparedModel& p, double capacity) {
    std::vector<Row> rows;
    for (const CandidateCut& c : cuts) rows.push_back(make_rci_row(p.model, p.net, p.derived, capacity, c.sites));
    return rows;
}

} // namespace detail

// Branching candidate: highest priority, then most fractional, then smaller
// index. Returns -1 when every binary is integral.
inline int select_branching_variable(const MilpModel& m, std::span<const double> x) {
    int best = -1;
    int best_prio = 0;
    double best_frac = 0.0;
    for (int j = 0; j < m.num_variables(); ++j) {
        const Variable& v = m.variable(j);
        if (v.kind != VarKind::binary) continue;
        const double xv = x[static_cast<std::size_t>(j)];
        const double frac = std::min(xv - std::floor(xv), std::ceil(xv) - xv);
        if (frac <= detail::kIntTol) continue;
        if (best < 0 || v.priority > best_prio || (v.priority == best_prio && frac > best_frac + 1e-12)) {
            best = j;
            best_prio = v.priority;
            best_frac = frac;
        }
    }
    return best;
}

class BranchAndCut {
public:
    BranchAndCut(const Instance& inst, PreparedModel& prep, const SolveOptions& opts, MilpBackend& lp)
        : inst_(inst), p_(prep), opts_(opts), lp_(lp) {}

    SolveResult run(detail::Clock::time_point t0) {
        t0_ = t0;
        SolveResult res;
        res.stats.backend = lp_.name();
        res.stats.driver = std::string(to_string(Driver::branch_and_cut));
        lp_.load(p_.model.milp);
        for (const Variable& v : p_.model.milp.variables()) root_bounds_.push_back({v.lower, v.upper});

        std::priority_queue<detail::TreeNode, std::vector<detail::TreeNode>, detail::ByBound> open;
        open.push({-kInf, order_++, {}});
        double pruned_floor = kInf; // smallest bound among nodes discarded by bound
        bool timed_out = false;
        bool failed = false;

        while (!open.empty()) {
            if (ub_ - open.top().bound <= opts_.absolute_gap) {
                pruned_floor = std::min(pruned_floor, open.top().bound);
                open.pop();
                continue;
            }
            if (out_of_time()) {
                timed_out = true;
                break;
            }
            detail::TreeNode node = open.top();
            open.pop();
            // Dive: keep processing one child until the dive ends.
            std::optional<detail::TreeNode> current = std::move(node);
            while (current) {
                if (out_of_time()) {
                    open.push(std::move(*current));
                    timed_out = true;
                    break;
                }
                Outcome out = process(*current, res);
                if (out.kind == Outcome::error) {
                    failed = true;
                    break;
                }
                if (out.kind == Outcome::time_limit) {
                    open.push(std::move(*current));
                    timed_out = true;
                    break;
                }
                if (out.kind == Outcome::pruned_by_bound) pruned_floor = std::min(pruned_floor, out.bound);
                if (out.kind != Outcome::branched) {
                    current.reset();
                    continue;
                }
                // Children: the one rounding towards the LP value is dived into.
                detail::TreeNode down{out.bound, order_++, current->changes};
                detail::TreeNode up{out.bound, order_++, current->changes};
                down.changes.push_back({out.branch_var, 0.0, 0.0});
                up.changes.push_back({out.branch_var, 1.0, 1.0});
                if (out.branch_value >= 0.5) {
                    open.push(std::move(down));
                    current = std::move(up);
                } else {
                    open.push(std::move(up));
                    current = std::move(down);
                }
            }
            if (failed || timed_out) break;
            if (relative_gap_closed(open)) break;
        }

        double lb = pruned_floor;
        if (!open.empty()) lb = std::min(lb, open.top().bound);
        if (timed_out) {
            // The unexplored part of the tree is bounded by its parents' values.
            while (!open.empty()) {
                lb = std::min(lb, open.top().bound);
                open.pop();
            }
        }
        lb = std::min(lb, ub_);
        res.bounds.upper = ub_;
        res.bounds.lower = lb == kInf ? (ub_ == kInf ? kInf : ub_) : lb;
        if (failed) {
            res.bounds.status = SolveStatus::error;
            if (res.message.empty()) res.message = "LP solve failed";
        } else if (timed_out) {
            res.bounds.status = SolveStatus::time_limit;
            res.message = "time limit reached";
        } else if (ub_ == kInf) {
            res.bounds.status = SolveStatus::infeasible;
            res.bounds.lower = kInf;
            res.message = "no feasible plan exists: the search tree was exhausted without an incumbent";
        } else {
            res.bounds.status = SolveStatus::optimal;
        }
        res.solution = incumbent_;
        res.stats.nodes = nodes_;
        res.stats.lp_solves = lp_solves_;
        return res;
    }

private:
    struct Outcome {
        enum Kind { pruned_infeasible, pruned_by_bound, integral, branched, time_limit, error } kind = error;
        double bound = -kInf;
        int branch_var = -1;
        double branch_value = 0.0;
    };

    bool out_of_time() const { return detail::seconds_since(t0_) >= opts_.time_limit; }

    bool relative_gap_closed(const auto& open) const {
        if (opts_.relative_gap <= 0.0 || ub_ == kInf || open.empty()) return false;
        return ub_ > 0.0 && (ub_ - open.top().bound) / ub_ <= opts_.relative_gap;
    }

    void apply(const std::vector<detail::BoundChange>& changes) {
        std::map<int, std::pair<double, double>> want;
        for (const auto& c : changes) {
            auto [it, fresh] = want.emplace(c.var, std::make_pair(c.lower, c.upper));
            if (!fresh) it->second = {std::max(it->second.first, c.lower), std::min(it->second.second, c.upper)};
        }
        for (auto it = applied_.begin(); it != applied_.end();) {
            if (!want.count(it->first)) {
                const auto& rb = root_bounds_[static_cast<std::size_t>(it->first)];
                lp_.set_bounds(it->first, rb.first, rb.second);
                it = applied_.erase(it);
            } else {
                ++it;
            }
        }
        for (const auto& [var, b] : want) {
            auto it = applied_.find(var);
            if (it != applied_.end() && it->second == b) continue;
            lp_.set_bounds(var, b.first, b.second);
            applied_[var] = b;
        }
    }

    Outcome process(const detail::TreeNode& node, SolveResult& res) {
        Outcome out;
        ++nodes_;
        apply(node.changes);
        const bool root = nodes_ == 1;
        LpResult lp;
        for (int round = 0;; ++round) {
            lp = lp_.solve_lp(std::max(1e-3, opts_.time_limit - detail::seconds_since(t0_)));
            ++lp_solves_;
            if (lp.status == LpStatus::infeasible) {
                out.kind = Outcome::pruned_infeasible;
                return out;
            }
            if (lp.status == LpStatus::time_limit) {
                out.kind = Outcome::time_limit;
                return out;
            }
            if (lp.status != LpStatus::optimal) {
                res.message = "LP relaxation could not be solved at node " + std::to_string(nodes_);
                out.kind = Outcome::error;
                return out;
            }
            out.bound = lp.objective;
            if (lp.objective >= ub_ - opts_.absolute_gap) {
                out.kind = Outcome::pruned_by_bound;
                return out;
            }
            if (!opts_.enable_rci || round >= opts_.max_cut_rounds) break;
            if (select_branching_variable(p_.model.milp, lp.values) < 0) break;
            SeparationOptions sep = opts_.separation;
            sep.tabu.seed = opts_.rng_seed + static_cast<unsigned>(lp_solves_);
            const SeparationResult found =
                separate(FractionalPoint::from_lp(p_.model, lp.values), p_.net, p_.derived, inst_.capacity, pool_, sep);
            if (found.cuts.empty()) break;
            std::vector<Row> rows = detail::cut_rows(found.cuts, p_, inst_.capacity);
            lp_.add_rows(rows);
            for (Row& r : rows) p_.model.milp.add_row(std::move(r));
            for (const CandidateCut& c : found.cuts) res.cut_sets.push_back(c.sites);
            res.stats.rci_added += static_cast<int>(found.cuts.size());
        }
        if (root) res.stats.root_bound = lp.objective;

        const int var = select_branching_variable(p_.model.milp, lp.values);
        if (root && var >= 0) {
            root_heuristic();
            if (lp.objective >= ub_ - opts_.absolute_gap) {
                out.kind = Outcome::pruned_by_bound;
                return out;
            }
        }
        if (var < 0) {
            out.kind = Outcome::integral;
            Solution sol = extract_solution(lp.values, p_.model, p_.net, inst_);
            if (sol.objective < ub_) {
                ub_ = sol.objective;
                incumbent_ = std::move(sol);
            }
            return out;
        }
        out.kind = Outcome::branched;
        out.branch_var = var;
        out.branch_value = lp.values[static_cast<std::size_t>(var)];
        return out;
    }

    // The backend's MILP search on the root model with its cuts; only the
    // incumbent is kept, the bound still comes from this tree.
    void root_heuristic() {
        if (opts_.heuristic_time_share <= 0.0 || !lp_.supports_native_mip()) return;
        MipControl ctl;
        ctl.time_limit = std::min(opts_.heuristic_time_share * opts_.time_limit,
                                  opts_.time_limit - detail::seconds_since(t0_));
        if (ctl.time_limit <= 0.0) return;
        ctl.absolute_gap = opts_.absolute_gap;
        ctl.threads = 1;
        const MipResult mr = lp_.solve_mip(p_.model.milp, ctl);
        if (!mr.has_solution) return;
        Solution sol = extract_solution(mr.values, p_.model, p_.net, inst_);
        if (sol.objective < ub_) {
            ub_ = sol.objective;
            incumbent_ = std::move(sol);
        }
    }

    const Instance& inst_;
    PreparedModel& p_;
    const SolveOptions& opts_;
    MilpBackend& lp_;
    detail::Clock::time_point t0_;
    std::vector<std::pair<double, double>> root_bounds_;
    std::map<int, std::pair<double, double>> applied_;
    CutPool pool_;
    double ub_ = kInf;
    std::optional<Solution> incumbent_;
    long long nodes_ = 0;
    long long lp_solves_ = 0;
    long long order_ = 0;
};

inline SolveResult solve_with_backend_mip(const Instance& inst, PreparedModel& p, const SolveOptions& opts,
                                          MilpBackend& backend, detail::Clock::time_point t0) {
    SolveResult res;
    res.stats.backend = backend.name();
    res.stats.driver = std::string(to_string(Driver::backend_mip));
    MipControl ctl;
    ctl.time_limit = std::max(1e-3, opts.time_limit - detail::seconds_since(t0));
    ctl.absolute_gap = opts.absolute_gap;
    ctl.relative_gap = opts.relative_gap;
    ctl.threads = opts.threads;
    ctl.general_cuts = opts.enable_backend_general_cuts;
    const MipResult mr = backend.solve_mip(p.model.milp, ctl);
    res.stats.nodes = mr.nodes;
    if (mr.has_solution) {
        res.solution = extract_solution(mr.values, p.model, p.net, inst);
        res.bounds.upper = res.solution->objective;
    }
    res.bounds.lower = mr.bound;
    switch (mr.status) {
    case MipStatus::optimal: res.bounds.status = SolveStatus::optimal; break;
    case MipStatus::infeasible:
        res.bounds.status = SolveStatus::infeasible;
        res.message = "no feasible plan exists";
        break;
    case MipStatus::time_limit:
        res.bounds.status = SolveStatus::time_limit;
        res.message = "time limit reached";
        break;
    case MipStatus::error:
        res.bounds.status = SolveStatus::error;
        res.message = "backend MILP solve failed";
        break;
    }
    return res;
}

inline SolveResult solve(const Instance& inst, const SolveOptions& opts,
                         const BackendFactory& factory = make_highs_backend) {
    opts.check();
    const auto t0 = detail::Clock::now();
    SolveResult res;
    res.exact_at_two_decimals = costs_have_two_decimals(inst);
    PreparedModel prep;
    try {
        prep = prepare(inst, opts);
    } catch (const InfeasibleInstance& e) {
        res.bounds.status = SolveStatus::infeasible;
        res.bounds.lower = kInf;
        res.message = e.what();
        res.stats.wall_seconds = detail::seconds_since(t0);
        return res;
    }
    std::unique_ptr<MilpBackend> backend = factory();
    try {
        if (opts.driver == Driver::backend_mip && backend->supports_native_mip()) {
            res = solve_with_backend_mip(inst, prep, opts, *backend, t0);
        } else {
            BranchAndCut bc(inst, prep, opts, *backend);
            res = bc.run(t0);
        }
    } catch (const ExtractionError& e) {
        res.bounds.status = SolveStatus::error;
        res.message = std::string("solution extraction failed: ") + e.what();
    }
    res.exact_at_two_decimals = costs_have_two_decimals(inst);
    res.stats.arcs_removed = prep.arcs_removed;
    res.stats.visits_fixed = prep.visits_fixed;
    res.stats.wall_seconds = detail::seconds_since(t0);
    return res;
}

// Root LP bounds with and without rounded capacity inequalities: `plain` has
// neither the aggregate row nor separated cuts; `with_rci` has the aggregate
// row plus one separation round.
struct RootBounds {
    double plain = -kInf;
    double with_rci = -kInf;
    int cuts_added = 0;
};

inline RootBounds root_bounds(const Instance& inst, SolveOptions opts,
                              const BackendFactory& factory = make_highs_backend) {
    RootBounds rb;
    auto lp_bound = [&](PreparedModel& p, MilpBackend& b) {
        const LpResult r = b.solve_lp(opts.time_limit);
        if (r.status == LpStatus::infeasible) return kInf;
        if (r.status != LpStatus::optimal) throw std::runtime_error("root LP could not be solved");
        (void)p;
        return r.objective;
    };
    {
        SolveOptions o = opts;
        o.aggregate_rci = false;
        PreparedModel p = prepare(inst, o);
        auto b = factory();
        b->load(p.model.milp);
        rb.plain = lp_bound(p, *b);
    }
    {
        SolveOptions o = opts;
        o.aggregate_rci = true;
        PreparedModel p = prepare(inst, o);
        auto b = factory();
        b->load(p.model.milp);
        const LpResult r = b->solve_lp(opts.time_limit);
        if (r.status != LpStatus::optimal) {
            rb.with_rci = r.status == LpStatus::infeasible ? kInf : -kInf;
            return rb;
        }
        CutPool pool;
        SeparationOptions sep = opts.separation;
        sep.tabu.seed = opts.rng_seed;
        const SeparationResult found =
            separate(FractionalPoint::from_lp(p.model, r.values), p.net, p.derived, inst.capacity, pool, sep);
        if (found.cuts.empty()) {
            rb.with_rci = r.objective;
            return rb;
        }
        b->add_rows(detail::cut_rows(found.cuts, p, inst.capacity));
        rb.cuts_added = static_cast<int>(found.cuts.size());
        rb.with_rci = lp_bound(p, *b);
    }
    return rb;
}

} // namespace cirp
