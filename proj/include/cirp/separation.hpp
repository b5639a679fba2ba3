#pragma once

// Rounded capacity inequality separation.
//
// The LP point is aggregated onto the original site graph: a mode-0 arc
// (i,a)->(j,b) adds its value to w(i,j), a mode-1 arc adds it to both w(i,0)
// and w(0,j). For a customer set S the cut left-hand side is then exactly the
// weight entering S, so every heuristic below works on the support graph.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <span>
#include <vector>

#include "cirp/instance.hpp"
#include "cirp/model.hpp"
#include "cirp/network.hpp"

namespace cirp {

inline constexpr double kSupportZero = 1e-7;
inline constexpr double kCutViolationTol = 1e-4;

// Arc-use values of an LP point, one entry per network arc (0 for dead arcs).
struct FractionalPoint {
    std::vector<double> arc_value;

    static FractionalPoint from_lp(const ModelHandle& h, std::span<const double> values) {
        FractionalPoint p;
        p.arc_value.assign(h.vars.x.size(), 0.0);
        for (std::size_t a = 0; a < h.vars.x.size(); ++a)
            if (h.vars.x[a] >= 0) p.arc_value[a] = values[static_cast<std::size_t>(h.vars.x[a])];
        return p;
    }
};

class SupportGraph {
public:
    explicit SupportGraph(int sites = 0) : n_(sites), w_(static_cast<std::size_t>(sites * sites), 0.0) {}

    int num_sites() const { return n_; }
    double weight(int i, int j) const { return w_[static_cast<std::size_t>(i * n_ + j)]; }
    void add(int i, int j, double v) { w_[static_cast<std::size_t>(i * n_ + j)] += v; }

    // Total weight on arcs from outside S into S; `in_set` is indexed by site.
    double in_weight(const std::vector<char>& in_set) const {
        double s = 0.0;
        for (int j = 1; j < n_; ++j) {
            if (!in_set[static_cast<std::size_t>(j)]) continue;
            for (int i = 0; i < n_; ++i)
                if (!in_set[static_cast<std::size_t>(i)]) s += weight(i, j);
        }
        return s;
    }
    double out_degree(int i) const {
        double s = 0.0;
        for (int j = 0; j < n_; ++j) s += weight(i, j);
        return s;
    }
    double in_degree(int j) const {
        double s = 0.0;
        for (int i = 0; i < n_; ++i) s += weight(i, j);
        return s;
    }

private:
    int n_;
    std::vector<double> w_;
};

inline SupportGraph build_support_graph(const FractionalPoint& point, const ExpandedNetwork& net) {
    SupportGraph g(net.num_sites());
    for (int a = 0; a < net.num_arcs(); ++a) {
        const double v = point.arc_value[static_cast<std::size_t>(a)];
        if (v < kSupportZero) continue;
        const Arc& e = net.arc(a);
        const int i = net.node(e.from).site;
        const int j = net.node(e.to).site;
        if (e.mode == ArcMode::direct) {
            g.add(i, j, v);
        } else {
            g.add(i, 0, v);
            g.add(0, j, v);
        }
    }
    return g;
}

// Left-hand side of the rounded capacity row for S evaluated directly on the
// expanded network (mode-1 arcs count even when they start inside S).
inline double evaluate_rci_lhs(std::span<const int> sites, const FractionalPoint& point, const ExpandedNetwork& net) {
    std::vector<char> in_set(static_cast<std::size_t>(net.num_sites()), 0);
    for (int s : sites) in_set[static_cast<std::size_t>(s)] = 1;
    double lhs = 0.0;
    for (int a = 0; a < net.num_arcs(); ++a) {
        const Arc& e = net.arc(a);
        const int to = net.node(e.to).site;
        if (!in_set[static_cast<std::size_t>(to)]) continue;
        const double v = point.arc_value[static_cast<std::size_t>(a)];
        if (e.mode == ArcMode::detour || !in_set[static_cast<std::size_t>(net.node(e.from).site)]) lhs += v;
    }
    return lhs;
}

struct CandidateCut {
    std::vector<int> sites; // sorted customer ids
    int rhs = 0;
    double lhs_value = 0.0;
    double violation = 0.0;
};

namespace detail {

inline std::vector<char> membership(int n_sites, std::span<const int> sites) {
    std::vector<char> in(static_cast<std::size_t>(n_sites), 0);
    for (int s : sites) in[static_cast<std::size_t>(s)] = 1;
    return in;
}

inline CandidateCut make_candidate(std::vector<int> sites, const SupportGraph& g, const DerivedData& derived,
                                   double capacity) {
    std::sort(sites.begin(), sites.end());
    CandidateCut c;
    c.rhs = rci_rhs(derived, capacity, sites);
    c.lhs_value = g.in_weight(membership(g.num_sites(), sites));
    c.violation = c.rhs - c.lhs_value;
    c.sites = std::move(sites);
    return c;
}

inline void sort_by_violation(std::vector<CandidateCut>& cuts) {
    std::stable_sort(cuts.begin(), cuts.end(),
                     [](const CandidateCut& a, const CandidateCut& b) { return a.violation > b.violation; });
}

} // namespace detail

// Weakly connected components of the customer part of the support graph.
inline std::vector<std::vector<int>> customer_components(const SupportGraph& g) {
    const int n = g.num_sites();
    std::vector<int> comp(static_cast<std::size_t>(n), -1);
    std::vector<std::vector<int>> out;
    for (int start = 1; start < n; ++start) {
        if (comp[static_cast<std::size_t>(start)] >= 0) continue;
        std::vector<int> members{start};
        comp[static_cast<std::size_t>(start)] = static_cast<int>(out.size());
        for (std::size_t k = 0; k < members.size(); ++k) {
            const int u = members[k];
            for (int v = 1; v < n; ++v)
                if (comp[static_cast<std::size_t>(v)] < 0 &&
                    (g.weight(u, v) > kSupportZero || g.weight(v, u) > kSupportZero)) {
                    comp[static_cast<std::size_t>(v)] = static_cast<int>(out.size());
                    members.push_back(v);
                }
        }
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    return out;
}

inline std::vector<CandidateCut> separate_connected_components(const SupportGraph& g, const DerivedData& derived,
                                                               double capacity) {
    std::vector<CandidateCut> cuts;
    for (auto& comp : customer_components(g)) {
        CandidateCut c = detail::make_candidate(std::move(comp), g, derived, capacity);
        if (c.violation > kCutViolationTol) cuts.push_back(std::move(c));
    }
    detail::sort_by_violation(cuts);
    return cuts;
}

// ---------------------------------------------------------------------------
// Fractional capacity separation by minimum cut.
//
// Network: source = depot, sink t, arc (i, j) with capacity w(i, j), and
// arc (i, t) with capacity d_i = min_demand_i / Q for each customer. A cut
// with sink side S + t costs w_in(S) + d(V_c \ S), so
//   max_S [ d(S) - w_in(S) ] = d(V_c) - mincut.

class MaxFlow {
public:
    explicit MaxFlow(int n) : adj_(static_cast<std::size_t>(n)) {}

    void add_edge(int u, int v, double cap) {
        adj_[static_cast<std::size_t>(u)].push_back(static_cast<int>(edges_.size()));
        edges_.push_back({v, cap});
        adj_[static_cast<std::size_t>(v)].push_back(static_cast<int>(edges_.size()));
        edges_.push_back({u, 0.0});
    }

    // Dinic's algorithm.
    double run(int s, int t) {
        double flow = 0.0;
        const auto n = adj_.size();
        while (true) {
            level_.assign(n, -1);
            std::queue<int> bfs;
            level_[static_cast<std::size_t>(s)] = 0;
            bfs.push(s);
            while (!bfs.empty()) {
                const int u = bfs.front();
                bfs.pop();
                for (int id : adj_[static_cast<std::size_t>(u)]) {
                    const Edge& e = edges_[static_cast<std::size_t>(id)];
                    if (e.cap > kEps && level_[static_cast<std::size_t>(e.to)] < 0) {
                        level_[static_cast<std::size_t>(e.to)] = level_[static_cast<std::size_t>(u)] + 1;
                        bfs.push(e.to);
                    }
                }
            }
            if (level_[static_cast<std::size_t>(t)] < 0) break;
            iter_.assign(n, 0);
            while (true) {
                const double pushed = dfs(s, t, kInfFlow);
                if (pushed <= kEps) break;
                flow += pushed;
            }
        }
        return flow;
    }

    // Nodes on the source side of the last minimum cut.
    std::vector<char> source_side(int s) const {
        std::vector<char> seen(adj_.size(), 0);
        std::vector<int> stack{s};
        seen[static_cast<std::size_t>(s)] = 1;
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            for (int id : adj_[static_cast<std::size_t>(u)]) {
                const Edge& e = edges_[static_cast<std::size_t>(id)];
                if (e.cap > kEps && !seen[static_cast<std::size_t>(e.to)]) {
                    seen[static_cast<std::size_t>(e.to)] = 1;
                    stack.push_back(e.to);
                }
            }
        }
        return seen;
    }

private:
    struct Edge {
        int to;
        double cap;
    };
    static constexpr double kEps = 1e-12;
    static constexpr double kInfFlow = std::numeric_limits<double>::max();

    double dfs(int u, int t, double limit) {
        if (u == t) return limit;
        auto& it = iter_[static_cast<std::size_t>(u)];
        const auto& edges = adj_[static_cast<std::size_t>(u)];
        for (; it < edges.size(); ++it) {
            const int id = edges[it];
            Edge& e = edges_[static_cast<std::size_t>(id)];
            if (e.cap <= kEps || level_[static_cast<std::size_t>(e.to)] != level_[static_cast<std::size_t>(u)] + 1) continue;
            const double got = dfs(e.to, t, std::min(limit, e.cap));
            if (got > kEps) {
                e.cap -= got;
                edges_[static_cast<std::size_t>(id ^ 1)].cap += got;
                return got;
            }
        }
        return 0.0;
    }

    std::vector<std::vector<int>> adj_;
    std::vector<Edge> edges_;
    std::vector<int> level_;
    std::vector<std::size_t> iter_;
};

struct FractionalCut {
    std::vector<int> sites;
    double violation = 0.0; // d(S) - w_in(S), unrounded right-hand side
};

// Most violated fractional capacity set, optionally forcing customer
// `forced` into S. Returns an empty set when S = {} is optimal.
inline FractionalCut max_fractional_violation(const SupportGraph& g, const DerivedData& derived, double capacity,
                                              int forced = -1) {
    const int n = g.num_sites();
    const int sink = n;
    MaxFlow mf(n + 1);
    double total = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 1; j < n; ++j)
            if (i != j && g.weight(i, j) > 0.0) mf.add_edge(i, j, g.weight(i, j));
    for (int i = 1; i < n; ++i) {
        const double di = derived.min_demand[static_cast<std::size_t>(i)] / capacity;
        total += di;
        mf.add_edge(i, sink, di);
    }
    if (forced > 0) mf.add_edge(forced, sink, 1e30);
    const double cut = mf.run(0, sink);
    const std::vector<char> src = mf.source_side(0);
    FractionalCut res;
    for (int i = 1; i < n; ++i)
        if (!src[static_cast<std::size_t>(i)]) res.sites.push_back(i);
    if (forced > 0) {
        // Recompute exactly; the forcing edge is not part of the objective.
        double d = 0.0;
        for (int s : res.sites) d += derived.min_demand[static_cast<std::size_t>(s)] / capacity;
        res.violation = d - g.in_weight(detail::membership(n, res.sites));
    } else {
        res.violation = total - cut;
    }
    return res;
}

inline std::vector<CandidateCut> separate_fractional_capacity(const SupportGraph& g, const DerivedData& derived,
                                                              double capacity) {
    std::vector<CandidateCut> cuts;
    std::set<std::vector<int>> seen;
    for (int forced = -1; forced < g.num_sites(); ++forced) {
        if (forced == 0) continue;
        FractionalCut fc = max_fractional_violation(g, derived, capacity, forced);
        if (fc.sites.empty() || fc.violation <= kSupportZero) continue;
        if (!seen.insert(fc.sites).second) continue;
        CandidateCut c = detail::make_candidate(std::move(fc.sites), g, derived, capacity);
        if (c.violation > kCutViolationTol) cuts.push_back(std::move(c));
    }
    detail::sort_by_violation(cuts);
    return cuts;
}

// ---------------------------------------------------------------------------
// Tabu search over customer subsets

struct TabuOptions {
    int tenure = 7;
    int iterations_per_seed = 200;
    // Random kick after this many iterations without improving the seed's best.
    int stall_limit = 25;
    unsigned seed = 0;
};

inline std::vector<CandidateCut> separate_tabu(const SupportGraph& g, const DerivedData& derived, double capacity,
                                               const TabuOptions& opts) {
    std::vector<CandidateCut> found;
    if (opts.iterations_per_seed <= 0) return found;
    const int n = g.num_sites();
    std::mt19937 rng(opts.seed);
    std::set<std::vector<int>> emitted;

    auto score = [&](const std::vector<char>& in) {
        double dem = 0.0;
        for (int i = 1; i < n; ++i)
            if (in[static_cast<std::size_t>(i)]) dem += derived.min_demand[static_cast<std::size_t>(i)];
        return ceil_ratio(dem, capacity) - g.in_weight(in);
    };
    auto members = [&](const std::vector<char>& in) {
        std::vector<int> s;
        for (int i = 1; i < n; ++i)
            if (in[static_cast<std::size_t>(i)]) s.push_back(i);
        return s;
    };
    auto record = [&](const std::vector<char>& in, double value) {
        if (value <= kCutViolationTol) return;
        std::vector<int> s = members(in);
        if (!emitted.insert(s).second) return;
        found.push_back(detail::make_candidate(std::move(s), g, derived, capacity));
    };

    std::vector<std::vector<int>> seeds = customer_components(g);
    for (int i = 1; i < n; ++i) seeds.push_back({i});

    for (const auto& seed : seeds) {
        std::vector<char> in = detail::membership(n, seed);
        int size = static_cast<int>(seed.size());
        double current = score(in);
        double best = current;
        record(in, current);
        std::vector<int> tabu_until(static_cast<std::size_t>(n), 0);
        int since_improve = 0;
        for (int iter = 1; iter <= opts.iterations_per_seed; ++iter) {
            int chosen = -1;
            double chosen_val = -std::numeric_limits<double>::infinity();
            // First improving admissible move in id order; otherwise the best
            // admissible move (ties to the smaller id).
            for (int i = 1; i < n; ++i) {
                auto& flag = in[static_cast<std::size_t>(i)];
                if (flag && size == 1) continue; // keep S nonempty
                flag = static_cast<char>(!flag);
                const double v = score(in);
                flag = static_cast<char>(!flag);
                const bool is_tabu = tabu_until[static_cast<std::size_t>(i)] >= iter;
                if (is_tabu && v <= best + 1e-12) continue; // aspiration only for a new best
                if (v > current + 1e-12) {
                    chosen = i;
                    chosen_val = v;
                    break;
                }
                if (v > chosen_val + 1e-12) {
                    chosen = i;
                    chosen_val = v;
                }
            }
            if (since_improve >= opts.stall_limit && n > 2) {
                std::uniform_int_distribution<int> pick(1, n - 1);
                const int k = pick(rng);
                if (!(in[static_cast<std::size_t>(k)] && size == 1)) {
                    chosen = k;
                    auto& flag = in[static_cast<std::size_t>(k)];
                    flag = static_cast<char>(!flag);
                    chosen_val = score(in);
                    flag = static_cast<char>(!flag);
                }
                since_improve = 0;
            }
            if (chosen < 0) break;
            auto& flag = in[static_cast<std::size_t>(chosen)];
            flag = static_cast<char>(!flag);
            size += flag ? 1 : -1;
            current = chosen_val;
            tabu_until[static_cast<std::size_t>(chosen)] = iter + opts.tenure;
            record(in, current);
            if (current > best + 1e-12) {
                best = current;
                since_improve = 0;
            } else {
                ++since_improve;
            }
        }
    }
    detail::sort_by_violation(found);
    return found;
}

// ---------------------------------------------------------------------------
// Separation protocol

struct SeparationOptions {
    int max_cuts_per_round = 50;
    TabuOptions tabu;
};

// Sets already turned into rows, keyed by the sorted customer ids.
class CutPool {
public:
    bool contains(const std::vector<int>& s) const { return sets_.count(s) != 0; }
    bool insert(const std::vector<int>& s) { return sets_.insert(s).second; }
    std::size_t size() const { return sets_.size(); }
    const std::set<std::vector<int>>& sets() const { return sets_; }

private:
    std::set<std::vector<int>> sets_;
};

struct SeparationResult {
    std::vector<CandidateCut> cuts;
    enum class Stage { none, components, fractional, tabu } stage = Stage::none;
};

// Components first, then min-cut, then tabu; each stage runs only if the
// previous ones produced nothing new. New sets are registered in `pool`.
inline SeparationResult separate(const FractionalPoint& point, const ExpandedNetwork& net, const DerivedData& derived,
                                 double capacity, CutPool& pool, const SeparationOptions& opts = {}) {
    const SupportGraph g = build_support_graph(point, net);
    SeparationResult res;
    auto take = [&](std::vector<CandidateCut> cand, SeparationResult::Stage stage) {
        for (auto& c : cand) {
            if (pool.contains(c.sites)) continue;
            // Re-evaluate on the expanded network; it must agree with the support graph.
            c.lhs_value = evaluate_rci_lhs(c.sites, point, net);
            c.violation = c.rhs - c.lhs_value;
            if (c.violation <= kCutViolationTol) continue;
            res.cuts.push_back(std::move(c));
        }
        if (!res.cuts.empty()) res.stage = stage;
        return !res.cuts.empty();
    };
    if (!take(separate_connected_components(g, derived, capacity), SeparationResult::Stage::components) &&
        !take(separate_fractional_capacity(g, derived, capacity), SeparationResult::Stage::fractional))
        take(separate_tabu(g, derived, capacity, opts.tabu), SeparationResult::Stage::tabu);
    detail::sort_by_violation(res.cuts);
    if (static_cast<int>(res.cuts.size()) > opts.max_cuts_per_round)
        res.cuts.resize(static_cast<std::size_t>(opts.max_cuts_per_round));
    for (const auto& c : res.cuts) pool.insert(c.sites);
    return res;
}

} // namespace cirp
