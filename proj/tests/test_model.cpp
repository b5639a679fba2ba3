#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace cirp;

namespace {

Instance two_customers() {
    return fixtures::make(20, 1, 15,
                          {fixtures::customer(1, 1, 5, 0, 15, 0), fixtures::customer(2, 1, 5, 0, 15, 0)},
                          {{0, 2, 3}, {2, 0, 2}, {3, 2, 0}});
}

// Every row and bound satisfied to `tol`; returns the first offender.
std::string first_violation(const MilpModel& m, const std::vector<double>& x, double tol = 1e-6) {
    for (int j = 0; j < m.num_variables(); ++j) {
        const Variable& v = m.variable(j);
        const double val = x[static_cast<std::size_t>(j)];
        if (val < v.lower - tol || val > v.upper + tol) return "bound of " + v.name;
        if (v.kind == VarKind::binary && std::abs(val - std::round(val)) > tol) return "integrality of " + v.name;
    }
    for (const Row& r : m.rows())
        if (r.violation(x) > tol) return r.family + " " + r.name;
    return "";
}

LpResult root_lp(const PreparedModel& p) {
    auto b = make_highs_backend();
    b->load(p.model.milp);
    return b->solve_lp();
}

} // namespace

TEST(Model, VariableAndRowCountsForTwoSingleVisitCustomers) {
    const Instance inst = two_customers();
    SolveOptions o;
    o.max_visits_slack = 0;
    o.aggregate_rci = false;
    const PreparedModel p = prepare(inst, o.untightened());
    const VariableSpace& vs = p.model.vars;
    EXPECT_EQ(std::count_if(vs.x.begin(), vs.x.end(), [](int v) { return v >= 0; }), 8);
    EXPECT_EQ(std::count_if(vs.y.begin(), vs.y.end(), [](int v) { return v >= 0; }), 2);

    const std::map<std::string, int> expected{
        {"degree_in", 2},          {"degree_out", 2},       {"fleet_size", 1},
        {"arrival_link_depot_out", 4}, {"arrival_link_depot_return", 2}, {"arrival_link_customer", 2},
        {"arrival_departure", 4},  {"time_flow", 2},        {"empty_return", 2},
        {"vehicle_capacity", 4},   {"reload_capacity", 2},  {"delivery_cap", 2},
        {"flow_conservation", 2},  {"inventory_lower", 2},  {"inventory_upper", 2},
        {"end_inventory", 2}};
    EXPECT_EQ(p.model.milp.family_counts(), expected);
}

TEST(Model, DetourPairsShareTheArrivalVariable) {
    const Instance inst = two_customers();
    const PreparedModel p = prepare(inst, SolveOptions{}.untightened());
    for (int a = 0; a < p.net.num_arcs(); ++a) {
        const Arc& e = p.net.arc(a);
        if (e.mode != ArcMode::detour) continue;
        for (int b : p.net.out_arcs(e.from, ArcMode::direct))
            if (p.net.arc(b).to == e.to) EXPECT_EQ(p.model.vars.atilde[a], p.model.vars.atilde[b]);
    }
}

TEST(Model, FixesMandatoryVisitsOnly) {
    // theta = 6 + 30 - 6 = 30 with Q = 15: two visits required, four allowed.
    const Instance inst = fixtures::make(10, 1, 15, {fixtures::customer(1, 3, 6, 0, 40, 6)}, {{0, 1}, {1, 0}});
    SolveOptions o;
    o.aggregate_rci = false;
    const PreparedModel p = prepare(inst, o);
    ASSERT_EQ(p.derived.min_visits[1], 2);
    ASSERT_EQ(p.net.num_visits(1), 4);
    EXPECT_EQ(p.visits_fixed, 2);
    for (int v = 1; v <= 4; ++v) {
        const int node = p.net.node_index(1, v);
        const Variable& y = p.model.milp.variable(p.model.vars.y_of(node));
        EXPECT_EQ(y.lower, v <= 2 ? 1.0 : 0.0) << v;
        const Variable& d = p.model.milp.variable(p.model.vars.d[static_cast<std::size_t>(node)]);
        if (v <= 2) EXPECT_GE(d.lower, p.derived.window(1, v).earliest);
    }
}

TEST(Model, RoundedCapacityRightHandSide) {
    DerivedData d;
    d.min_demand = {0.0, 10.0, 12.0};
    const std::vector<int> both{1, 2}, one{1};
    EXPECT_EQ(rci_rhs(d, 15.0, both), 2);
    EXPECT_EQ(rci_rhs(d, 15.0, one), 1);
    d.min_demand = {0.0, 7.5, 7.5};
    EXPECT_EQ(rci_rhs(d, 15.0, both), 1);
}

TEST(Model, AggregateRowCountsDepotExitsAndDetours) {
    const Instance inst = two_customers();
    SolveOptions o;
    o.max_visits_slack = 0;
    const PreparedModel p = prepare(inst, o.untightened());
    PreparedModel q = p;
    add_aggregate_rci(q.model, q.net, q.derived, inst.capacity);
    const Row& r = q.model.milp.row(q.model.aggregate_rci_row);
    EXPECT_EQ(r.family, "aggregate_rci");
    EXPECT_EQ(r.index.size(), 4u); // 0->1, 0->2, 1=>2, 2=>1
    EXPECT_DOUBLE_EQ(r.lower, 2.0); // (15 + 15) / 15
}

TEST(Model, HandBuiltPlanSatisfiesEveryRow) {
    const Instance inst = fixtures::one_customer();
    const PreparedModel p = prepare(inst, SolveOptions{});
    const Solution plan = fixtures::single_visit_route(inst, 5.0, 10.0);
    const auto x = fixtures::plan_values(plan, p);
    EXPECT_EQ(first_violation(p.model.milp, x), "");
    EXPECT_NEAR(p.model.milp.objective_value(x), 2.0, 1e-9);
}

TEST(Model, LateArrivalViolatesInventoryLower) {
    const Instance inst = fixtures::one_customer();
    const PreparedModel p = prepare(inst, SolveOptions{}.untightened());
    const auto x = fixtures::plan_values(fixtures::single_visit_route(inst, 5.5, 10.0), p);
    const Row* bad = nullptr;
    for (const Row& r : p.model.milp.rows())
        if (r.violation(x) > 1e-6) {
            bad = &r;
            break;
        }
    ASSERT_NE(bad, nullptr);
    EXPECT_EQ(bad->family, "inventory_lower");
    EXPECT_NEAR(bad->violation(x), 1.0, 1e-9);
}

TEST(Model, SolverPlansSatisfyTheModel) {
    std::mt19937 rng(5);
    std::vector<Instance> pool{load_instance(fixtures::sample("tiny2.json"))};
    for (int k = 0; k < 8; ++k) pool.push_back(fixtures::random_tiny(rng, 2));
    int checked = 0;
    for (const Instance& inst : pool) {
        SolveOptions o;
        o.time_limit = 30;
        const SolveResult res = solve(inst, o);
        if (!res.solution) continue;
        ++checked;
        for (bool tight : {true, false}) {
            SolveOptions po = o;
            if (!tight) po.untightened();
            const PreparedModel p = prepare(inst, po);
            const auto x = fixtures::plan_values(*res.solution, p);
            EXPECT_EQ(first_violation(p.model.milp, x), "") << inst.name << " tight=" << tight;
            EXPECT_NEAR(p.model.milp.objective_value(x), res.solution->objective, 1e-6);
        }
    }
    EXPECT_GT(checked, 3);
}

TEST(Model, RootLpBoundBelowOptimum) {
    const Instance inst = load_instance(fixtures::sample("tiny2.json"));
    for (bool tight : {true, false}) {
        SolveOptions o;
        if (!tight) o.untightened();
        const LpResult r = root_lp(prepare(inst, o));
        ASSERT_EQ(r.status, LpStatus::optimal);
        EXPECT_LE(r.objective, 7.0 + 1e-6);
        EXPECT_GT(r.objective, 0.0);
    }
}

TEST(Model, LpExportNamesEveryVariable) {
    const PreparedModel p = prepare(fixtures::one_customer(), SolveOptions{});
    std::ostringstream os;
    write_lp(os, p.model.milp);
    const std::string text = os.str();
    EXPECT_NE(text.find("Minimize"), std::string::npos);
    for (const Variable& v : p.model.milp.variables()) EXPECT_NE(text.find(v.name), std::string::npos) << v.name;
}
