#include <gtest/gtest.h>

#include <set>
#include <sstream>
#include <tuple>

#include "fixtures.hpp"

using namespace cirp;

namespace {

Instance two_customers() {
    return fixtures::make(20, 1, 15,
                          {fixtures::customer(1, 1, 5, 0, 15, 0), fixtures::customer(2, 1, 5, 0, 15, 0)},
                          {{0, 2, 3}, {2, 0, 2}, {3, 2, 0}});
}

// Windows set by hand; every visit is possible and the first one is mandatory.
DerivedData manual(const Instance& inst, const std::vector<int>& visits, double lo = 0.0, double hi = -1.0) {
    DerivedData d;
    const double h = inst.horizon;
    if (hi < 0) hi = h;
    d.min_demand.assign(visits.size() + 1, 1.0);
    d.min_visits.assign(visits.size() + 1, 1);
    d.max_visits = {1};
    d.windows = {{TimeWindow{0.0, h, 0.0, h}}};
    for (std::size_t i = 0; i < visits.size(); ++i) {
        d.max_visits.push_back(visits[i]);
        d.windows.emplace_back(static_cast<std::size_t>(visits[i]), TimeWindow{lo, hi, 0.0, h});
    }
    return d;
}

using ArcKey = std::tuple<int, int, int, int, int>; // from site, visit, to site, visit, mode

std::set<ArcKey> keys(const ExpandedNetwork& net, bool alive_only = false) {
    std::set<ArcKey> s;
    for (const Arc& a : net.arcs()) {
        if (alive_only && !a.alive) continue;
        const VisitNode& u = net.node(a.from);
        const VisitNode& v = net.node(a.to);
        s.insert({u.site, u.visit, v.site, v.visit, mode_index(a.mode)});
    }
    return s;
}

} // namespace

TEST(Network, OneVisitEachGivesSixDirectAndTwoDetourArcs) {
    const Instance inst = two_customers();
    const ExpandedNetwork net = build_network(inst, manual(inst, {1, 1}));
    EXPECT_EQ(net.num_nodes(), 3);
    EXPECT_EQ(net.count_alive(ArcMode::direct), 6);
    EXPECT_EQ(net.count_alive(ArcMode::detour), 2);
}

TEST(Network, SingleCustomerDetourOnlyForwardInVisitOrder) {
    const Instance inst = fixtures::one_customer();
    const ExpandedNetwork net = build_network(inst, manual(inst, {2}));
    ASSERT_EQ(net.count_alive(ArcMode::detour), 1);
    for (const Arc& a : net.arcs()) {
        if (a.mode != ArcMode::detour) continue;
        EXPECT_EQ(net.node(a.from), (VisitNode{1, 1}));
        EXPECT_EQ(net.node(a.to), (VisitNode{1, 2}));
        EXPECT_DOUBLE_EQ(a.travel_time, 2.0);
    }
    // Direct arcs never join two copies of the same customer.
    EXPECT_EQ(net.count_alive(ArcMode::direct), 4);
}

TEST(Network, MatchesIndependentEnumeration) {
    const Instance inst = two_customers();
    const ExpandedNetwork net = build_network(inst, manual(inst, {2, 2}));
    EXPECT_EQ(net.count_alive(ArcMode::direct), 16);
    EXPECT_EQ(net.count_alive(ArcMode::detour), 10);

    std::vector<std::pair<int, int>> copies{{0, 1}, {1, 1}, {1, 2}, {2, 1}, {2, 2}};
    std::set<ArcKey> expected;
    for (auto [i, a] : copies)
        for (auto [j, b] : copies) {
            if (i != j) expected.insert({i, a, j, b, 0});
            if (i != 0 && j != 0 && (i != j || a < b)) expected.insert({i, a, j, b, 1});
        }
    EXPECT_EQ(keys(net), expected);
    EXPECT_EQ(static_cast<std::size_t>(net.num_arcs()), expected.size());
}

TEST(Network, NoDetourTouchesTheDepot) {
    const Instance inst = two_customers();
    const ExpandedNetwork net = build_network(inst, manual(inst, {3, 2}));
    EXPECT_TRUE(net.in_arcs(ExpandedNetwork::kDepot, ArcMode::detour).empty());
    EXPECT_TRUE(net.out_arcs(ExpandedNetwork::kDepot, ArcMode::detour).empty());
}

TEST(Network, DetourTimeAndCostPassTheDepot) {
    const Instance inst = two_customers();
    const ExpandedNetwork net = build_network(inst, manual(inst, {1, 1}));
    for (const Arc& a : net.arcs()) {
        const int i = net.node(a.from).site, j = net.node(a.to).site;
        const double expect = a.mode == ArcMode::direct ? inst.time(i, j) : inst.time(i, 0) + inst.time(0, j);
        EXPECT_DOUBLE_EQ(a.travel_time, expect);
        EXPECT_DOUBLE_EQ(a.travel_cost, expect);
    }
}

TEST(Elimination, ArcDroppedWhenEarliestPlusTravelExceedsLatest) {
    // t12 = 3 with W^l(1) = 8 and W^u(2) = 10: 11 > 10, dropped.
    auto inst = fixtures::make(20, 1, 15,
                               {fixtures::customer(1, 1, 5, 0, 15, 0), fixtures::customer(2, 1, 5, 0, 15, 0)},
                               {{0, 2, 2}, {2, 0, 3}, {2, 3, 0}});
    DerivedData d = manual(inst, {1, 1});
    d.windows[1][0] = {8.0, 20.0, 0.0, 20.0};
    d.windows[2][0] = {0.0, 10.0, 0.0, 20.0};
    ExpandedNetwork net = build_network(inst, d);
    eliminate_arcs(net, d);
    auto alive = keys(net, true);
    EXPECT_FALSE(alive.count({1, 1, 2, 1, 0}));
    EXPECT_FALSE(alive.count({1, 1, 2, 1, 1})); // 8 + 4 > 10
    EXPECT_TRUE(alive.count({2, 1, 1, 1, 0}));

    // t12 = 2: 10 <= 10, kept.
    inst.travel_time(1, 2) = inst.travel_time(2, 1) = 2.0;
    inst.travel_cost = inst.travel_time;
    net = build_network(inst, d);
    eliminate_arcs(net, d);
    EXPECT_TRUE(keys(net, true).count({1, 1, 2, 1, 0}));
}

TEST(Elimination, ImpossibleOptionalVisitLosesAllArcs) {
    const Instance inst = fixtures::one_customer();
    DerivedData d = manual(inst, {2});
    d.windows[1][1] = {0.0, 0.5, 1.0, 9.0}; // latest before the first possible arrival
    ExpandedNetwork net = build_network(inst, d);
    eliminate_arcs(net, d);
    const int copy2 = net.node_index(1, 2);
    for (ArcMode m : {ArcMode::direct, ArcMode::detour}) {
        for (int a : net.in_arcs(copy2, m)) EXPECT_FALSE(net.arc(a).alive);
        for (int a : net.out_arcs(copy2, m)) EXPECT_FALSE(net.arc(a).alive);
    }
    EXPECT_GT(net.count_alive(), 0);
}

TEST(Elimination, MandatoryVisitWithoutArcsIsInfeasible) {
    const Instance inst = fixtures::one_customer();
    DerivedData d = manual(inst, {1});
    d.windows[1][0] = {0.0, 0.5, 0.0, 10.0}; // depot at 0 plus 1 > 0.5
    ExpandedNetwork net = build_network(inst, d);
    try {
        eliminate_arcs(net, d);
        FAIL() << "expected InfeasibleInstance";
    } catch (const InfeasibleInstance& e) {
        EXPECT_NE(std::string(e.what()).find("customer 1 visit 1"), std::string::npos) << e.what();
    }
}

TEST(Elimination, NeverRemovesArcsOfAnOptimalPlan) {
    // tiny2: optimum 7 is depot -> 1 -> 2 -> depot or the reverse.
    const Instance inst = load_instance(fixtures::sample("tiny2.json"));
    const DerivedData d = derive(inst);
    ExpandedNetwork net = build_network(inst, d);
    eliminate_arcs(net, d);
    const auto alive = keys(net, true);
    const bool forward = alive.count({0, 1, 1, 1, 0}) && alive.count({1, 1, 2, 1, 0}) && alive.count({2, 1, 0, 1, 0});
    const bool backward = alive.count({0, 1, 2, 1, 0}) && alive.count({2, 1, 1, 1, 0}) && alive.count({1, 1, 0, 1, 0});
    EXPECT_TRUE(forward || backward);
}

TEST(Network, DumpFormat) {
    const Instance inst = fixtures::one_customer();
    const ExpandedNetwork net = build_network(inst, manual(inst, {1}));
    std::ostringstream os;
    dump_network(os, net);
    EXPECT_EQ(os.str(), "nodes 2 arcs 2\n"
                        "node 0 0 1\n"
                        "node 1 1 1\n"
                        "arc 0 0 1 1 1 0 1 1 alive\n"
                        "arc 1 1 1 0 1 0 1 1 alive\n");
}
