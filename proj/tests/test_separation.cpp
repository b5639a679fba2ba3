#include <gtest/gtest.h>

#include "cut_oracle.hpp"
#include "fixtures.hpp"

using namespace cirp;

namespace {

DerivedData demands(std::vector<double> d) {
    DerivedData dd;
    dd.min_demand = std::move(d);
    return dd;
}

// Windows wide open, one visit per customer.
DerivedData open_windows(const Instance& inst) {
    DerivedData d;
    const double h = inst.horizon;
    d.semantics = WindowSemantics::departure;
    d.min_demand.assign(static_cast<std::size_t>(inst.num_sites()), 0.0);
    d.min_visits.assign(static_cast<std::size_t>(inst.num_sites()), 1);
    d.max_visits.assign(static_cast<std::size_t>(inst.num_sites()), 1);
    d.windows.assign(static_cast<std::size_t>(inst.num_sites()), {TimeWindow{0.0, h, 0.0, h}});
    return d;
}

Instance triangle(int customers) {
    std::vector<Customer> cs;
    for (int i = 1; i <= customers; ++i) cs.push_back(fixtures::customer(i, 1, 5, 0, 15, 0));
    std::vector<std::vector<double>> t(static_cast<std::size_t>(customers + 1),
                                       std::vector<double>(static_cast<std::size_t>(customers + 1), 1.0));
    for (int i = 0; i <= customers; ++i) t[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 0.0;
    return fixtures::make(20, 2, 10, cs, t);
}

int arc_between(const ExpandedNetwork& net, int i, int j, ArcMode m) {
    for (int a : net.out_arcs(i == 0 ? ExpandedNetwork::kDepot : net.node_index(i, 1), m))
        if (net.node(net.arc(a).to).site == j) return a;
    return -1;
}

} // namespace

TEST(SupportGraph, DetourSplitsThroughTheDepot) {
    const Instance inst = triangle(2);
    const DerivedData d = open_windows(inst);
    const ExpandedNetwork net = build_network(inst, d);
    FractionalPoint p;
    p.arc_value.assign(static_cast<std::size_t>(net.num_arcs()), 0.0);
    p.arc_value[static_cast<std::size_t>(arc_between(net, 0, 1, ArcMode::direct))] = 0.5;
    p.arc_value[static_cast<std::size_t>(arc_between(net, 1, 2, ArcMode::detour))] = 0.3;
    p.arc_value[static_cast<std::size_t>(arc_between(net, 2, 1, ArcMode::direct))] = 1e-9; // below support
    const SupportGraph g = build_support_graph(p, net);
    EXPECT_DOUBLE_EQ(g.weight(0, 1), 0.5);
    EXPECT_DOUBLE_EQ(g.weight(1, 0), 0.3);
    EXPECT_DOUBLE_EQ(g.weight(0, 2), 0.3);
    EXPECT_DOUBLE_EQ(g.weight(2, 1), 0.0);
    EXPECT_DOUBLE_EQ(g.weight(1, 2), 0.0);

    // Detours count even from inside S.
    const std::vector<int> both{1, 2}, two{2};
    EXPECT_DOUBLE_EQ(evaluate_rci_lhs(both, p, net), 0.8);
    EXPECT_DOUBLE_EQ(evaluate_rci_lhs(two, p, net), 0.3);
    EXPECT_NEAR(g.in_weight({0, 1, 1}), 0.8, 1e-12);
}

TEST(Components, SplitOnCustomerArcsOnly) {
    SupportGraph g(5);
    g.add(0, 1, 1.0);
    g.add(1, 2, 0.5);
    g.add(3, 0, 0.2);
    g.add(0, 4, 0.1);
    const auto comps = customer_components(g);
    ASSERT_EQ(comps.size(), 3u);
    EXPECT_EQ(comps[0], (std::vector<int>{1, 2}));
    EXPECT_EQ(comps[1], (std::vector<int>{3}));
    EXPECT_EQ(comps[2], (std::vector<int>{4}));

    const DerivedData d = demands({0, 5, 5, 5, 5});
    const auto cuts = separate_connected_components(g, d, 10.0);
    // {3}: 1 - 0, {4}: 1 - 0.1; {1,2}: 1 - 1 holds.
    ASSERT_EQ(cuts.size(), 2u);
    EXPECT_EQ(cuts[0].sites, (std::vector<int>{3}));
    EXPECT_DOUBLE_EQ(cuts[0].violation, 1.0);
    EXPECT_NEAR(cuts[1].violation, 0.9, 1e-12);
}

TEST(FractionalCapacity, ThreeCustomerExample) {
    SupportGraph g(4);
    for (int i = 1; i <= 3; ++i) g.add(0, i, 0.7);
    const DerivedData d = demands({0, 10, 10, 10});
    const FractionalCut fc = max_fractional_violation(g, d, 10.0);
    EXPECT_EQ(fc.sites, (std::vector<int>{1, 2, 3}));
    EXPECT_NEAR(fc.violation, 0.9, 1e-9);
}

TEST(FractionalCapacity, SingleCustomer) {
    SupportGraph g(2);
    g.add(0, 1, 0.7);
    const FractionalCut fc = max_fractional_violation(g, demands({0, 10}), 10.0);
    EXPECT_EQ(fc.sites, (std::vector<int>{1}));
    EXPECT_NEAR(fc.violation, 0.3, 1e-9);
}

TEST(FractionalCapacity, MatchesBruteForceOnRandomGraphs) {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 10);
        DerivedData d;
        double q = 0.0;
        const SupportGraph g = oracle::random_support_graph(rng, n, d, q);
        const oracle::SubsetBest b = oracle::max_fractional(g, d, q);
        const FractionalCut fc = max_fractional_violation(g, d, q);
        ASSERT_NEAR(fc.violation, b.value, 1e-9) << "trial " << trial;
        if (!fc.sites.empty()) {
            std::vector<char> in(static_cast<std::size_t>(n + 1), 0);
            double dem = 0.0;
            for (int s : fc.sites) {
                in[static_cast<std::size_t>(s)] = 1;
                dem += d.min_demand[static_cast<std::size_t>(s)] / q;
            }
            EXPECT_NEAR(dem - g.in_weight(in), b.value, 1e-9);
        }
        const int forced = 1 + static_cast<int>(rng() % static_cast<unsigned>(n));
        const FractionalCut ff = max_fractional_violation(g, d, q, forced);
        ASSERT_NEAR(ff.violation, oracle::max_fractional(g, d, q, forced).value, 1e-9) << "trial " << trial;
    }
}

TEST(Tabu, FindsViolationThatOnlyRoundingExposes) {
    // d = 0.55, 0.55, 0.9; no fractional violation and the single component holds.
    SupportGraph g(4);
    g.add(0, 1, 1.0);
    g.add(1, 2, 0.9);
    g.add(0, 2, 0.2);
    g.add(0, 3, 1.0);
    g.add(2, 3, 0.01);
    const DerivedData d = demands({0, 5.5, 5.5, 9});
    EXPECT_LE(max_fractional_violation(g, d, 10.0).violation, 1e-9);
    EXPECT_TRUE(separate_connected_components(g, d, 10.0).empty());
    EXPECT_TRUE(separate_fractional_capacity(g, d, 10.0).empty());
    const auto cuts = separate_tabu(g, d, 10.0, TabuOptions{});
    ASSERT_FALSE(cuts.empty());
    EXPECT_EQ(cuts.front().sites, (std::vector<int>{1, 2}));
    EXPECT_NEAR(cuts.front().violation, 0.8, 1e-12);

    TabuOptions none;
    none.iterations_per_seed = 0;
    EXPECT_TRUE(separate_tabu(g, d, 10.0, none).empty());
}

TEST(Tabu, DeterministicForASeed) {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        DerivedData d;
        double q = 0.0;
        const SupportGraph g = oracle::random_support_graph(rng, 8, d, q);
        TabuOptions o;
        o.seed = 42;
        const auto a = separate_tabu(g, d, q, o);
        const auto b = separate_tabu(g, d, q, o);
        ASSERT_EQ(a.size(), b.size());
        for (std::size_t k = 0; k < a.size(); ++k) EXPECT_EQ(a[k].sites, b[k].sites);
        for (const auto& c : a) EXPECT_GT(c.violation, kCutViolationTol);
    }
}

TEST(Separation, ProtocolFallsThroughToTabuAndPoolDeduplicates) {
    Instance inst = triangle(3);
    DerivedData d = open_windows(inst);
    d.min_demand = {0, 5.5, 5.5, 9};
    const ExpandedNetwork net = build_network(inst, d);
    FractionalPoint p;
    p.arc_value.assign(static_cast<std::size_t>(net.num_arcs()), 0.0);
    auto set = [&](int i, int j, double v) {
        p.arc_value[static_cast<std::size_t>(arc_between(net, i, j, ArcMode::direct))] = v;
    };
    set(0, 1, 1.0);
    set(1, 2, 0.9);
    set(0, 2, 0.2);
    set(0, 3, 1.0);
    set(2, 3, 0.01);

    CutPool pool;
    const SeparationResult first = separate(p, net, d, inst.capacity, pool);
    EXPECT_EQ(first.stage, SeparationResult::Stage::tabu);
    ASSERT_FALSE(first.cuts.empty());
    EXPECT_EQ(first.cuts.front().sites, (std::vector<int>{1, 2}));
    EXPECT_TRUE(pool.contains({1, 2}));

    const SeparationResult second = separate(p, net, d, inst.capacity, pool);
    for (const auto& c : second.cuts) EXPECT_NE(c.sites, (std::vector<int>{1, 2}));
}

TEST(Separation, EveryRoundedRowHoldsOnIntegerPlans) {
    std::mt19937 rng(17);
    int checked = 0;
    for (int k = 0; k < 10; ++k) {
        const Instance inst = fixtures::random_tiny(rng, 3);
        SolveOptions o;
        o.time_limit = 30;
        const SolveResult res = solve(inst, o);
        if (!res.solution) continue;
        const PreparedModel p = prepare(inst, o);
        const FractionalPoint pt = FractionalPoint::from_lp(p.model, fixtures::plan_values(*res.solution, p));
        for (unsigned mask = 1; mask < 8u; ++mask) {
            std::vector<int> s;
            for (int i = 1; i <= 3; ++i)
                if (mask & (1u << (i - 1))) s.push_back(i);
            EXPECT_GE(evaluate_rci_lhs(s, pt, p.net) + 1e-9, rci_rhs(p.derived, inst.capacity, s));
        }
        for (const auto& s : res.cut_sets)
            EXPECT_GE(evaluate_rci_lhs(s, pt, p.net) + 1e-9, rci_rhs(p.derived, inst.capacity, s));
        ++checked;
    }
    EXPECT_GT(checked, 3);
}

TEST(Separation, CutsNeverLowerTheRootBound) {
    std::mt19937 rng(8);
    std::vector<Instance> pool{load_instance(fixtures::sample("tiny2.json")),
                               load_instance(fixtures::sample("surrogate/SC5U2Q2.txt"))};
    for (int k = 0; k < 4; ++k) pool.push_back(fixtures::random_tiny(rng, 3));
    for (const Instance& inst : pool) {
        SolveOptions o;
        o.time_limit = 30;
        RootBounds rb;
        try {
            rb = root_bounds(inst, o);
        } catch (const InfeasibleInstance&) {
            continue;
        }
        EXPECT_GE(rb.with_rci, rb.plain - 1e-6) << inst.name;
    }
}
