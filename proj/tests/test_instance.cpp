#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace cirp;

namespace {

// H=10, t=1 both ways, I0=10, Il=0, Iu=20, IH=0, r=2, Q=15.
Instance window_example() { return fixtures::one_customer(); }

} // namespace

TEST(MinDemand, DirectFormula) {
    auto a = fixtures::make(10, 1, 15, {fixtures::customer(1, 2, 10, 0, 20, 0)}, {{0, 1}, {1, 0}});
    EXPECT_DOUBLE_EQ(min_demand(a, 1), 10.0);
    auto b = fixtures::make(10, 1, 15, {fixtures::customer(1, 1, 5, 0, 20, 5)}, {{0, 1}, {1, 0}});
    EXPECT_DOUBLE_EQ(min_demand(b, 1), 10.0);
}

TEST(MinDemand, MatchesHandRecomputationOnSamples) {
    for (const char* f : {"tiny2.json", "surrogate/SC5U1Q1.txt", "surrogate/SR5U3Q2.txt"}) {
        const Instance inst = load_instance(fixtures::sample(f));
        const DerivedData d = derive(inst);
        for (int i = 1; i < inst.num_sites(); ++i) {
            const Customer& c = inst.customer(i);
            const double by_hand = c.inv_end_target - c.inv_init + c.rate * inst.horizon;
            EXPECT_NEAR(d.min_demand[static_cast<std::size_t>(i)], by_hand, 1e-12) << f << " customer " << i;
            EXPECT_GT(d.min_demand[static_cast<std::size_t>(i)], 0.0);
        }
    }
}

TEST(VisitCounts, CeilingAndSlack) {
    auto with_demand = [](double theta) {
        // IH = 0, I0 = 0, r = theta / H.
        return fixtures::make(10, 1, 15, {fixtures::customer(1, theta / 10.0, 0, 0, 100, 0)}, {{0, 1}, {1, 0}});
    };
    auto vc = visit_counts(with_demand(10), 1);
    EXPECT_EQ(vc.min_visits, 1);
    EXPECT_EQ(vc.max_visits, 3);
    vc = visit_counts(with_demand(30), 1);
    EXPECT_EQ(vc.min_visits, 2);
    EXPECT_EQ(vc.max_visits, 4);
    vc = visit_counts(with_demand(31), 1);
    EXPECT_EQ(vc.min_visits, 3);
    EXPECT_EQ(vc.max_visits, 5);
    vc = visit_counts(with_demand(31), 1, 0);
    EXPECT_EQ(vc.max_visits, 3);
}

TEST(TimeWindow, HandComputedExample) {
    const Instance inst = window_example();
    const TimeWindow w1 = time_window(inst, 1, 1, 3);
    EXPECT_DOUBLE_EQ(w1.earliest, 1.0); // max{1, 10 - 50/2}
    EXPECT_DOUBLE_EQ(w1.latest, 5.0);   // min{9, 10/2}
    const TimeWindow w2 = time_window(inst, 1, 2, 3);
    EXPECT_DOUBLE_EQ(w2.latest, 9.0); // min{9, 25/2}
}

TEST(TimeWindow, MonotoneInVisitIndexAndInMaxVisits) {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const Instance inst = fixtures::random_tiny(rng, 3, 30.0);
        for (int i = 1; i < inst.num_sites(); ++i) {
            const int n = visit_counts(inst, i).max_visits;
            for (int b = 1; b < n; ++b) {
                EXPECT_LE(time_window(inst, i, b, n).latest, time_window(inst, i, b + 1, n).latest + 1e-12);
                EXPECT_LE(time_window(inst, i, b, n).earliest, time_window(inst, i, b + 1, n).earliest + 1e-12);
            }
            for (int b = 1; b <= n; ++b) {
                const TimeWindow narrow = time_window(inst, i, b, n);
                const TimeWindow wide = time_window(inst, i, b, n + 1);
                EXPECT_LE(wide.earliest, narrow.earliest + 1e-12);
                EXPECT_GE(wide.latest, narrow.latest - 1e-12);
            }
        }
    }
}

TEST(Derive, MustVisitWindowsAreNotImpossible) {
    std::mt19937 rng(11);
    int checked = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const Instance inst = fixtures::random_tiny(rng, 3, 30.0);
        DerivedData d;
        try {
            d = derive(inst);
        } catch (const InfeasibleInstance&) {
            continue;
        }
        ++checked;
        for (int i = 1; i < inst.num_sites(); ++i)
            for (int b = 1; b <= d.min_visits[static_cast<std::size_t>(i)]; ++b) EXPECT_FALSE(d.impossible(i, b));
    }
    EXPECT_GT(checked, 0);
}

TEST(Derive, InfeasibleMustVisitNamesTheCustomer) {
    const Instance inst = load_instance(fixtures::sample("infeasible.json"));
    try {
        derive(inst);
        FAIL() << "expected InfeasibleInstance";
    } catch (const InfeasibleInstance& e) {
        EXPECT_NE(std::string(e.what()).find("customer 2 visit 1"), std::string::npos) << e.what();
    }
}

TEST(Derive, TrivialWindowsWhenUntightened) {
    const Instance inst = window_example();
    const DerivedData d = derive(inst, {2, false});
    for (int b = 1; b <= d.num_visits(1); ++b) {
        EXPECT_DOUBLE_EQ(d.window(1, b).earliest, 1.0);
        EXPECT_DOUBLE_EQ(d.window(1, b).latest, 9.0);
    }
}

TEST(Derive, DepartureReadingKeepsAFeasibleEarlyArrival) {
    // Two visits are needed and the tank is full on the first arrival, so
    // the vehicle must stay while product drains: W^l = 10 > W^u = 5 for the
    // first visit, yet the plan is feasible.
    const Instance inst =
        fixtures::make(26, 1, 12, {fixtures::customer(1, 1, 5, 0, 5, 1)}, {{0, 2.5}, {2.5, 0}}, "early");
    const DerivedData dep = derive(inst, {0, true, WindowSemantics::departure});
    EXPECT_FALSE(dep.impossible(1, 2));
    EXPECT_THROW(derive(inst, {0, true, WindowSemantics::arrival}), InfeasibleInstance);
}

TEST(Instance, ValidationNamesTheBrokenTriangle) {
    auto inst = fixtures::make(10, 1, 15,
                               {fixtures::customer(1, 1, 5, 0, 15, 0), fixtures::customer(2, 1, 5, 0, 15, 0),
                                fixtures::customer(3, 1, 5, 0, 15, 0)},
                               {{0, 1, 1, 1}, {1, 0, 1, 5}, {1, 1, 0, 1}, {1, 5, 1, 0}});
    try {
        validate_instance(inst);
        FAIL() << "expected InstanceError";
    } catch (const InstanceError& e) {
        EXPECT_NE(std::string(e.what()).find("(1,0,3)"), std::string::npos) << e.what();
    }
}

TEST(Instance, ValidationRejectsBadCustomers) {
    auto bad_rate = fixtures::make(10, 1, 15, {fixtures::customer(1, 0, 5, 0, 15, 0)}, {{0, 1}, {1, 0}});
    EXPECT_THROW(validate_instance(bad_rate), InstanceError);
    auto no_demand = fixtures::make(10, 1, 15, {fixtures::customer(1, 1, 15, 0, 15, 0)}, {{0, 1}, {1, 0}});
    EXPECT_THROW(validate_instance(no_demand), InstanceError);
    auto order = fixtures::make(10, 1, 15, {fixtures::customer(1, 1, 20, 0, 15, 0)}, {{0, 1}, {1, 0}});
    EXPECT_THROW(validate_instance(order), InstanceError);
}

TEST(Instance, TwoDecimalCostCheck) {
    auto inst = fixtures::one_customer();
    EXPECT_TRUE(costs_have_two_decimals(inst));
    inst.travel_cost(0, 1) = 1.005;
    EXPECT_FALSE(costs_have_two_decimals(inst));
}
