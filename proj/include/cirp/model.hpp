#pragma once

// The compact MILP over the expanded network.
//
// Variables (one per live network object):
//   x[arc]       binary, arc used (mode taken from the arc)
//   y[node]      binary, visit takes place
//   a, d[node]   arrival / departure time in [0, H]
//   at[pair]     arrival time through the (from, to) node pair, 0 if unused;
//                shared by both modes of the pair, depot pairs included
//   f[arc]       mode-0 flow in [0, Q]
//   l[node]      reload at the depot right before the visit, [0, Q]
//   q[node]      delivered quantity, [0, Q]
//
// Every row carries a family tag so tests and diagnostics can address one
// constraint family at a time.

#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "cirp/instance.hpp"
#include "cirp/milp.hpp"
#include "cirp/network.hpp"

namespace cirp {

namespace family {
inline constexpr const char* degree_in = "degree_in";
inline constexpr const char* degree_out = "degree_out";
inline constexpr const char* fleet_size = "fleet_size";
inline constexpr const char* arrival_depot_out = "arrival_link_depot_out";
inline constexpr const char* arrival_depot_return = "arrival_link_depot_return";
inline constexpr const char* arrival_customer = "arrival_link_customer";
inline constexpr const char* arrival_departure = "arrival_departure";
inline constexpr const char* time_flow = "time_flow";
inline constexpr const char* visit_sequence = "visit_sequence";
inline constexpr const char* non_overlap = "non_overlap";
inline constexpr const char* empty_return = "empty_return";
inline constexpr const char* vehicle_capacity = "vehicle_capacity";
inline constexpr const char* reload_capacity = "reload_capacity";
inline constexpr const char* delivery_cap = "delivery_cap";
inline constexpr const char* flow_conservation = "flow_conservation";
inline constexpr const char* inventory_lower = "inventory_lower";
inline constexpr const char* inventory_upper = "inventory_upper";
inline constexpr const char* end_inventory = "end_inventory";
inline constexpr const char* aggregate_rci = "aggregate_rci";
inline constexpr const char* rci = "rci";
} // namespace family

struct VariableSpace {
    std::vector<int> x;      // per arc, -1 when dead
    std::vector<int> atilde; // per arc, -1 when dead; both modes of a pair share one variable
    std::vector<int> f;      // per arc, -1 unless a live mode-0 arc
    std::vector<int> y, a, d, reload, q; // per node, -1 for the depot

    int x_of(int arc) const { return x[static_cast<std::size_t>(arc)]; }
    int y_of(int node) const { return y[static_cast<std::size_t>(node)]; }
};

struct ModelHandle {
    MilpModel milp;
    VariableSpace vars;
    int aggregate_rci_row = -1;
};

namespace detail {

inline std::string node_tag(const VisitNode& v) { return std::to_string(v.site) + "_" + std::to_string(v.visit); }

struct RowBuilder {
    Row row;
    RowBuilder(const char* fam, std::string name) {
        row.family = fam;
        row.name = std::move(name);
    }
    RowBuilder& add(int var, double coef) {
        if (var < 0 || coef == 0.0) return *this;
        for (std::size_t k = 0; k < row.index.size(); ++k)
            if (row.index[k] == var) {
                row.value[k] += coef;
                return *this;
            }
        row.index.push_back(var);
        row.value.push_back(coef);
        return *this;
    }
    Row le(double rhs) { row.upper = rhs; return std::move(row); }
    Row ge(double rhs) { row.lower = rhs; return std::move(row); }
    Row eq(double rhs) { row.lower = row.upper = rhs; return std::move(row); }
};

} // namespace detail

// Arrival/departure linking row for one visit. Service durations, if ever
// modelled, enter here and in add_time_flow_row.
inline void add_arrival_departure_rows(ModelHandle& h, const ExpandedNetwork& net, int node) {
    using detail::RowBuilder;
    const auto& vs = h.vars;
    const std::string tag = detail::node_tag(net.node(node));
    RowBuilder link(family::arrival_departure, "arr_" + tag);
    std::vector<int> seen;
    for (ArcMode m : {ArcMode::direct, ArcMode::detour})
        for (int arc : net.in_arcs(node, m)) {
            const int v = vs.atilde[static_cast<std::size_t>(arc)];
            if (v < 0 || std::find(seen.begin(), seen.end(), v) != seen.end()) continue;
            seen.push_back(v);
            link.add(v, 1.0);
        }
    link.add(vs.a[static_cast<std::size_t>(node)], -1.0);
    h.milp.add_row(link.eq(0.0));
    h.milp.add_row(RowBuilder(family::arrival_departure, "ad_" + tag)
                       .add(vs.a[static_cast<std::size_t>(node)], 1.0)
                       .add(vs.d[static_cast<std::size_t>(node)], -1.0)
                       .le(0.0));
}

// Departure plus travel time bounds the arrival through the chosen out-pair.
// The right-hand side sums the linking variables of every out-pair in either
// mode, so that a same-customer detour (which has no mode-0 twin) is timed.
inline void add_time_flow_row(ModelHandle& h, const ExpandedNetwork& net, int node) {
    using detail::RowBuilder;
    const auto& vs = h.vars;
    RowBuilder r(family::time_flow, "tf_" + detail::node_tag(net.node(node)));
    r.add(vs.d[static_cast<std::size_t>(node)], 1.0);
    std::vector<int> seen;
    for (ArcMode m : {ArcMode::direct, ArcMode::detour})
        for (int arc : net.out_arcs(node, m)) {
            if (!net.arc(arc).alive) continue;
            r.add(vs.x_of(arc), net.arc(arc).travel_time);
            const int v = vs.atilde[static_cast<std::size_t>(arc)];
            if (std::find(seen.begin(), seen.end(), v) != seen.end()) continue;
            seen.push_back(v);
            r.add(v, -1.0);
        }
    h.milp.add_row(r.le(0.0));
}

inline ModelHandle build_model(const ExpandedNetwork& net, const Instance& inst, const DerivedData& derived) {
    using detail::RowBuilder;
    ModelHandle h;
    MilpModel& m = h.milp;
    VariableSpace& vs = h.vars;
    const double H = inst.horizon;
    const double Q = inst.capacity;
    const auto n_arcs = static_cast<std::size_t>(net.num_arcs());
    const auto n_nodes = static_cast<std::size_t>(net.num_nodes());

    vs.x.assign(n_arcs, -1);
    vs.atilde.assign(n_arcs, -1);
    vs.f.assign(n_arcs, -1);
    vs.y.assign(n_nodes, -1);
    vs.a.assign(n_nodes, -1);
    vs.d.assign(n_nodes, -1);
    vs.reload.assign(n_nodes, -1);
    vs.q.assign(n_nodes, -1);

    // Branching priorities: every y above every x; earlier visits first.
    int max_visits = 1;
    for (int i = 1; i < inst.num_sites(); ++i) max_visits = std::max(max_visits, derived.num_visits(i));

    for (int node = 1; node < net.num_nodes(); ++node) {
        const VisitNode& v = net.node(node);
        const std::string tag = detail::node_tag(v);
        const auto s = static_cast<std::size_t>(node);
        vs.y[s] = m.add_variable({"y_" + tag, 0.0, 1.0, 0.0, VarKind::binary, 1 + max_visits - v.visit});
        vs.a[s] = m.add_variable({"a_" + tag, 0.0, H, 0.0, VarKind::continuous, 0});
        vs.d[s] = m.add_variable({"d_" + tag, 0.0, H, 0.0, VarKind::continuous, 0});
        vs.reload[s] = m.add_variable({"l_" + tag, 0.0, Q, 0.0, VarKind::continuous, 0});
        vs.q[s] = m.add_variable({"q_" + tag, 0.0, Q, 0.0, VarKind::continuous, 0});
    }
    std::unordered_map<long long, int> pair_var;
    for (int arc = 0; arc < net.num_arcs(); ++arc) {
        const Arc& e = net.arc(arc);
        if (!e.alive) continue;
        const auto s = static_cast<std::size_t>(arc);
        const std::string tag = detail::node_tag(net.node(e.from)) + "_" + detail::node_tag(net.node(e.to));
        vs.x[s] = m.add_variable(
            {"x" + std::to_string(mode_index(e.mode)) + "_" + tag, 0.0, 1.0, e.travel_cost, VarKind::binary, 0});
        const long long key = static_cast<long long>(e.from) * net.num_nodes() + e.to;
        auto it = pair_var.find(key);
        if (it == pair_var.end())
            it = pair_var.emplace(key, m.add_variable({"at_" + tag, 0.0, kInf, 0.0, VarKind::continuous, 0})).first;
        vs.atilde[s] = it->second;
        if (e.mode == ArcMode::direct) vs.f[s] = m.add_variable({"f_" + tag, 0.0, Q, 0.0, VarKind::continuous, 0});
    }

    auto live = [&](const std::vector<int>& arcs) {
        std::vector<int> out;
        for (int a : arcs)
            if (net.arc(a).alive) out.push_back(a);
        return out;
    };

    // Degree.
    for (int node = 1; node < net.num_nodes(); ++node) {
        const std::string tag = detail::node_tag(net.node(node));
        RowBuilder in(family::degree_in, "din_" + tag), out(family::degree_out, "dout_" + tag);
        for (ArcMode md : {ArcMode::direct, ArcMode::detour}) {
            for (int a : live(net.in_arcs(node, md))) in.add(vs.x_of(a), 1.0);
            for (int a : live(net.out_arcs(node, md))) out.add(vs.x_of(a), 1.0);
        }
        in.add(vs.y_of(node), -1.0);
        out.add(vs.y_of(node), -1.0);
        m.add_row(in.eq(0.0));
        m.add_row(out.eq(0.0));
    }

    // Fleet size.
    {
        RowBuilder r(family::fleet_size, "fleet");
        for (int a : live(net.out_arcs(ExpandedNetwork::kDepot, ArcMode::direct))) r.add(vs.x_of(a), 1.0);
        m.add_row(r.le(inst.fleet_size));
    }

    // Linking arrival-time variables to arc use.
    for (int a : live(net.out_arcs(ExpandedNetwork::kDepot, ArcMode::direct))) {
        const Arc& e = net.arc(a);
        const VisitNode& to = net.node(e.to);
        const TimeWindow& w = derived.window(to.site, to.visit);
        const std::string tag = "0_1_" + detail::node_tag(to);
        const int at = vs.atilde[static_cast<std::size_t>(a)];
        const double lo = derived.semantics == WindowSemantics::arrival ? w.earliest : w.first_arrival;
        m.add_row(RowBuilder(family::arrival_depot_out, "atlo_" + tag).add(at, 1.0).add(vs.x_of(a), -lo).ge(0.0));
        m.add_row(RowBuilder(family::arrival_depot_out, "atup_" + tag).add(at, 1.0).add(vs.x_of(a), -w.latest).le(0.0));
    }
    for (int a : live(net.in_arcs(ExpandedNetwork::kDepot, ArcMode::direct))) {
        const Arc& e = net.arc(a);
        const std::string tag = detail::node_tag(net.node(e.from)) + "_0_1";
        m.add_row(RowBuilder(family::arrival_depot_return, "atup_" + tag)
                      .add(vs.atilde[static_cast<std::size_t>(a)], 1.0)
                      .add(vs.x_of(a), -H)
                      .le(0.0));
    }
    {
        // Customer-to-customer pairs: one row per pair covering both modes.
        std::unordered_map<int, std::size_t> row_of_pair;
        std::vector<RowBuilder> rows;
        for (int a = 0; a < net.num_arcs(); ++a) {
            const Arc& e = net.arc(a);
            if (!e.alive || net.node(e.from).is_depot() || net.node(e.to).is_depot()) continue;
            const int at = vs.atilde[static_cast<std::size_t>(a)];
            auto it = row_of_pair.find(at);
            if (it == row_of_pair.end()) {
                const VisitNode& to = net.node(e.to);
                rows.emplace_back(family::arrival_customer,
                                  "atup_" + detail::node_tag(net.node(e.from)) + "_" + detail::node_tag(to));
                rows.back().add(at, 1.0);
                it = row_of_pair.emplace(at, rows.size() - 1).first;
            }
            const TimeWindow& w = derived.window(net.node(e.to).site, net.node(e.to).visit);
            rows[it->second].add(vs.x_of(a), -w.latest);
        }
        for (auto& r : rows) m.add_row(r.le(0.0));
    }

    for (int node = 1; node < net.num_nodes(); ++node) add_arrival_departure_rows(h, net, node);
    for (int node = 1; node < net.num_nodes(); ++node) add_time_flow_row(h, net, node);

    // Visit ordering and non-overlap.
    for (int i = 1; i < inst.num_sites(); ++i) {
        const double big_m = H - inst.time(i, 0);
        for (int alpha = 1; alpha < net.num_visits(i); ++alpha) {
            const auto cur = static_cast<std::size_t>(net.node_index(i, alpha));
            const auto nxt = static_cast<std::size_t>(net.node_index(i, alpha + 1));
            const std::string tag = std::to_string(i) + "_" + std::to_string(alpha);
            m.add_row(RowBuilder(family::visit_sequence, "seq_" + tag).add(vs.y[nxt], 1.0).add(vs.y[cur], -1.0).le(0.0));
            m.add_row(RowBuilder(family::non_overlap, "ovl_" + tag)
                          .add(vs.d[cur], 1.0)
                          .add(vs.a[nxt], -1.0)
                          .add(vs.y[cur], -big_m)
                          .add(vs.y[nxt], big_m)
                          .le(0.0));
        }
    }

    // Quantities.
    for (int a : live(net.in_arcs(ExpandedNetwork::kDepot, ArcMode::direct)))
        m.add_row(RowBuilder(family::empty_return, "ret_" + detail::node_tag(net.node(net.arc(a).from)))
                      .add(vs.f[static_cast<std::size_t>(a)], 1.0)
                      .eq(0.0));
    for (int a = 0; a < net.num_arcs(); ++a) {
        const Arc& e = net.arc(a);
        if (!e.alive || e.mode != ArcMode::direct || net.node(e.to).is_depot()) continue;
        m.add_row(RowBuilder(family::vehicle_capacity,
                             "cap_" + detail::node_tag(net.node(e.from)) + "_" + detail::node_tag(net.node(e.to)))
                      .add(vs.f[static_cast<std::size_t>(a)], 1.0)
                      .add(vs.x_of(a), -Q)
                      .le(0.0));
    }
    for (int node = 1; node < net.num_nodes(); ++node) {
        const auto s = static_cast<std::size_t>(node);
        const std::string tag = detail::node_tag(net.node(node));
        RowBuilder rl(family::reload_capacity, "rl_" + tag);
        rl.add(vs.reload[s], 1.0);
        for (int a : live(net.in_arcs(node, ArcMode::detour))) rl.add(vs.x_of(a), -Q);
        m.add_row(rl.le(0.0));
        m.add_row(RowBuilder(family::delivery_cap, "qcap_" + tag).add(vs.q[s], 1.0).add(vs.y[s], -Q).le(0.0));
        RowBuilder fc(family::flow_conservation, "fc_" + tag);
        for (int a : live(net.in_arcs(node, ArcMode::direct))) fc.add(vs.f[static_cast<std::size_t>(a)], 1.0);
        for (int a : live(net.out_arcs(node, ArcMode::direct))) fc.add(vs.f[static_cast<std::size_t>(a)], -1.0);
        fc.add(vs.reload[s], 1.0).add(vs.q[s], -1.0);
        m.add_row(fc.eq(0.0));
    }

    // Inventory.
    for (int i = 1; i < inst.num_sites(); ++i) {
        const Customer& c = inst.customer(i);
        for (int alpha = 1; alpha <= net.num_visits(i); ++alpha) {
            const auto s = static_cast<std::size_t>(net.node_index(i, alpha));
            const std::string tag = std::to_string(i) + "_" + std::to_string(alpha);
            RowBuilder lo(family::inventory_lower, "invlo_" + tag);
            lo.add(vs.y[s], c.inv_init - c.inv_min).add(vs.a[s], -c.rate);
            for (int p = 1; p < alpha; ++p) lo.add(vs.q[static_cast<std::size_t>(net.node_index(i, p))], 1.0);
            m.add_row(lo.ge(0.0));

            RowBuilder up(family::inventory_upper, "invup_" + tag);
            up.add(vs.y[s], c.inv_init - c.inv_max).add(vs.d[s], -c.rate);
            for (int p = 1; p <= alpha; ++p) up.add(vs.q[static_cast<std::size_t>(net.node_index(i, p))], 1.0);
            // Slack Q (y_p - y_alpha) for every earlier visit p.
            for (int p = 1; p < alpha; ++p) up.add(vs.y[static_cast<std::size_t>(net.node_index(i, p))], -Q);
            up.add(vs.y[s], Q * (alpha - 1));
            m.add_row(up.le(0.0));
        }
        RowBuilder end(family::end_inventory, "invend_" + std::to_string(i));
        for (int alpha = 1; alpha <= net.num_visits(i); ++alpha)
            end.add(vs.q[static_cast<std::size_t>(net.node_index(i, alpha))], 1.0);
        m.add_row(end.ge(c.inv_end_target + c.rate * H - c.inv_init));
    }
    return h;
}

// Visits that every feasible plan makes: y = 1 and the window opening W^l
// as a lower bound (on the departure, or on the arrival under the literal
// semantics). Returns the number of visits fixed.
inline int fix_enforced_visits(ModelHandle& h, const ExpandedNetwork& net, const DerivedData& derived) {
    int fixed = 0;
    for (int node = 1; node < net.num_nodes(); ++node) {
        const VisitNode& v = net.node(node);
        if (v.visit > derived.min_visits[static_cast<std::size_t>(v.site)]) continue;
        Variable& y = h.milp.variable(h.vars.y_of(node));
        y.lower = y.upper = 1.0;
        const auto& time_var = derived.semantics == WindowSemantics::arrival ? h.vars.a : h.vars.d;
        Variable& t = h.milp.variable(time_var[static_cast<std::size_t>(node)]);
        t.lower = std::max(t.lower, derived.window(v.site, v.visit).earliest);
        ++fixed;
    }
    return fixed;
}

// Right-hand side of a rounded capacity inequality for customer set S.
inline int rci_rhs(const DerivedData& derived, double capacity, std::span<const int> sites) {
    double total = 0.0;
    for (int s : sites) total += derived.min_demand[static_cast<std::size_t>(s)];
    return ceil_ratio(total, capacity);
}

// Rounded capacity row for S: mode-0 arcs entering S from outside plus every
// mode-1 arc ending in S, at least ceil(sum(min demand) / Q).
inline Row make_rci_row(const ModelHandle& h, const ExpandedNetwork& net, const DerivedData& derived, double capacity,
                        std::span<const int> sites, const char* fam = family::rci) {
    std::vector<char> in_set(static_cast<std::size_t>(net.num_sites()), 0);
    for (int s : sites) in_set[static_cast<std::size_t>(s)] = 1;
    Row r;
    r.family = fam;
    r.name = fam;
    for (int s : sites) r.name += "_" + std::to_string(s);
    for (int s : sites)
        for (int vis = 1; vis <= net.num_visits(s); ++vis) {
            const int node = net.node_index(s, vis);
            for (int a : net.in_arcs(node, ArcMode::direct))
                if (net.arc(a).alive && !in_set[static_cast<std::size_t>(net.node(net.arc(a).from).site)]) {
                    r.index.push_back(h.vars.x_of(a));
                    r.value.push_back(1.0);
                }
            for (int a : net.in_arcs(node, ArcMode::detour))
                if (net.arc(a).alive) {
                    r.index.push_back(h.vars.x_of(a));
                    r.value.push_back(1.0);
                }
        }
    r.lower = rci_rhs(derived, capacity, sites);
    return r;
}

// Appends the S = all customers rounded capacity row.
inline int add_aggregate_rci(ModelHandle& h, const ExpandedNetwork& net, const DerivedData& derived, double capacity) {
    std::vector<int> all(static_cast<std::size_t>(net.num_sites() - 1));
    std::iota(all.begin(), all.end(), 1);
    h.aggregate_rci_row = h.milp.add_row(make_rci_row(h, net, derived, capacity, all, family::aggregate_rci));
    return h.aggregate_rci_row;
}

} // namespace cirp
