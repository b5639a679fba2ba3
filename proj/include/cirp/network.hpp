#pragma once

#include <array>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <vector>

#include "cirp/instance.hpp"

namespace cirp {

// A copy of a site in the expanded network: the depot is (0, 1), customer i
// has copies (i, 1) .. (i, n_i), one per potential visit.
struct VisitNode {
    int site = 0;
    int visit = 1;

    bool is_depot() const { return site == 0; }
    friend bool operator==(const VisitNode&, const VisitNode&) = default;
};

// Mode 0 travels directly; mode 1 passes the depot to reload on the way.
enum class ArcMode : std::uint8_t { direct = 0, detour = 1 };

inline int mode_index(ArcMode m) { return static_cast<int>(m); }

struct Arc {
    int from = 0; // node index
    int to = 0;
    ArcMode mode = ArcMode::direct;
    double travel_time = 0.0;
    double travel_cost = 0.0;
    bool alive = true;
};

class ExpandedNetwork {
public:
    static constexpr int kDepot = 0;

    const std::vector<VisitNode>& nodes() const { return nodes_; }
    const std::vector<Arc>& arcs() const { return arcs_; }
    const VisitNode& node(int idx) const { return nodes_[static_cast<std::size_t>(idx)]; }
    const Arc& arc(int idx) const { return arcs_[static_cast<std::size_t>(idx)]; }
    int num_nodes() const { return static_cast<int>(nodes_.size()); }
    int num_arcs() const { return static_cast<int>(arcs_.size()); }

    int node_index(int site, int visit) const {
        return site == 0 ? kDepot : first_node_[static_cast<std::size_t>(site)] + visit - 1;
    }
    int num_visits(int site) const { return site == 0 ? 1 : visits_[static_cast<std::size_t>(site)]; }
    int num_sites() const { return static_cast<int>(visits_.size()); }

    // Arc indices entering / leaving a node in one mode (dead arcs included;
    // filter on Arc::alive).
    const std::vector<int>& in_arcs(int node, ArcMode m) const {
        return in_[static_cast<std::size_t>(mode_index(m))][static_cast<std::size_t>(node)];
    }
    const std::vector<int>& out_arcs(int node, ArcMode m) const {
        return out_[static_cast<std::size_t>(mode_index(m))][static_cast<std::size_t>(node)];
    }

    int count_alive(ArcMode m) const {
        int c = 0;
        for (const Arc& a : arcs_) c += (a.alive && a.mode == m) ? 1 : 0;
        return c;
    }
    int count_alive() const { return count_alive(ArcMode::direct) + count_alive(ArcMode::detour); }

    void kill(int arc) { arcs_[static_cast<std::size_t>(arc)].alive = false; }

    friend ExpandedNetwork build_network(const Instance& inst, const DerivedData& derived);

private:
    std::vector<VisitNode> nodes_;
    std::vector<Arc> arcs_;
    std::vector<int> first_node_;
    std::vector<int> visits_;
    std::array<std::vector<std::vector<int>>, 2> in_;
    std::array<std::vector<std::vector<int>>, 2> out_;
};

inline ExpandedNetwork build_network(const Instance& inst, const DerivedData& derived) {
    ExpandedNetwork net;
    const int sites = inst.num_sites();
    net.first_node_.assign(static_cast<std::size_t>(sites), 0);
    net.visits_.assign(static_cast<std::size_t>(sites), 1);
    net.nodes_.push_back({0, 1});
    for (int i = 1; i < sites; ++i) {
        net.first_node_[static_cast<std::size_t>(i)] = net.num_nodes();
        net.visits_[static_cast<std::size_t>(i)] = derived.num_visits(i);
        for (int a = 1; a <= derived.num_visits(i); ++a) net.nodes_.push_back({i, a});
    }
    for (auto& v : net.in_) v.assign(net.nodes_.size(), {});
    for (auto& v : net.out_) v.assign(net.nodes_.size(), {});

    auto add = [&](int from, int to, ArcMode mode) {
        const VisitNode& u = net.nodes_[static_cast<std::size_t>(from)];
        const VisitNode& v = net.nodes_[static_cast<std::size_t>(to)];
        Arc arc{from, to, mode, 0.0, 0.0, true};
        if (mode == ArcMode::direct) {
            arc.travel_time = inst.time(u.site, v.site);
            arc.travel_cost = inst.cost(u.site, v.site);
        } else {
            arc.travel_time = inst.time(u.site, 0) + inst.time(0, v.site);
            arc.travel_cost = inst.cost(u.site, 0) + inst.cost(0, v.site);
        }
        const int idx = net.num_arcs();
        net.arcs_.push_back(arc);
        net.out_[static_cast<std::size_t>(mode_index(mode))][static_cast<std::size_t>(from)].push_back(idx);
        net.in_[static_cast<std::size_t>(mode_index(mode))][static_cast<std::size_t>(to)].push_back(idx);
    };

    // Mode 0: every ordered pair of copies of distinct sites.
    for (int from = 0; from < net.num_nodes(); ++from)
        for (int to = 0; to < net.num_nodes(); ++to)
            if (net.nodes_[static_cast<std::size_t>(from)].site != net.nodes_[static_cast<std::size_t>(to)].site)
                add(from, to, ArcMode::direct);
    // Mode 1: customer copies only; a same-site pair needs visit order alpha < beta.
    for (int from = 1; from < net.num_nodes(); ++from)
        for (int to = 1; to < net.num_nodes(); ++to) {
            const VisitNode& u = net.nodes_[static_cast<std::size_t>(from)];
            const VisitNode& v = net.nodes_[static_cast<std::size_t>(to)];
            if (u.site == v.site && u.visit >= v.visit) continue;
            add(from, to, ArcMode::detour);
        }
    return net;
}

// Kills every arc that cannot be used within the windows: leaving (i, a) at
// its earliest time W^l still misses the latest arrival W^u at (j, b). The
// depot uses the window [0, H]. Arcs touching an impossible visit are killed
// as well. Returns the number of arcs removed by this call.
//
// Throws InfeasibleInstance if a visit that must happen loses all of its
// entering or leaving arcs.
inline int eliminate_arcs(ExpandedNetwork& net, const DerivedData& derived) {
    auto window = [&](int node) -> const TimeWindow& {
        const VisitNode& v = net.node(node);
        return derived.window(v.site, v.visit);
    };
    int removed = 0;
    for (int idx = 0; idx < net.num_arcs(); ++idx) {
        const Arc& a = net.arc(idx);
        if (!a.alive) continue;
        const TimeWindow& wf = window(a.from);
        const TimeWindow& wt = window(a.to);
        const bool dead = derived.impossible(net.node(a.from).site, net.node(a.from).visit) ||
                          derived.impossible(net.node(a.to).site, net.node(a.to).visit) ||
                          wf.earliest + a.travel_time > wt.latest + kTimeEps;
        if (dead) {
            net.kill(idx);
            ++removed;
        }
    }
    for (int node = 1; node < net.num_nodes(); ++node) {
        const VisitNode& v = net.node(node);
        if (v.visit > derived.min_visits[static_cast<std::size_t>(v.site)]) continue;
        auto any_alive = [&](bool incoming) {
            for (ArcMode m : {ArcMode::direct, ArcMode::detour})
                for (int a : incoming ? net.in_arcs(node, m) : net.out_arcs(node, m))
                    if (net.arc(a).alive) return true;
            return false;
        };
        if (!any_alive(true) || !any_alive(false)) {
            std::ostringstream os;
            os << "customer " << v.site << " visit " << v.visit << " must take place but no arc "
               << (any_alive(true) ? "leaves" : "enters") << " it within the time windows";
            throw InfeasibleInstance(os.str());
        }
    }
    return removed;
}

// Line-oriented dump used by fixtures:
//   node <index> <site> <visit>
//   arc <index> <from-site> <from-visit> <to-site> <to-visit> <mode> <time> <cost> <alive|dead>
inline void dump_network(std::ostream& os, const ExpandedNetwork& net) {
    os << "nodes " << net.num_nodes() << " arcs " << net.num_arcs() << "\n";
    for (int i = 0; i < net.num_nodes(); ++i) os << "node " << i << ' ' << net.node(i).site << ' ' << net.node(i).visit << "\n";
    for (int i = 0; i < net.num_arcs(); ++i) {
        const Arc& a = net.arc(i);
        const VisitNode& u = net.node(a.from);
        const VisitNode& v = net.node(a.to);
        os << "arc " << i << ' ' << u.site << ' ' << u.visit << ' ' << v.site << ' ' << v.visit << ' '
           << mode_index(a.mode) << ' ' << a.travel_time << ' ' << a.travel_cost << ' ' << (a.alive ? "alive" : "dead")
           << "\n";
    }
}

} // namespace cirp
