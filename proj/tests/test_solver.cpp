#include <gtest/gtest.h>

#include "brute_force.hpp"
#include "fixtures.hpp"

using namespace cirp;

namespace {

// One customer, two visits, one vehicle that reloads in between:
// visit 1 over [2.5, 10] delivering 10, reload at 12.5, visit 2 over [15, 22]
// delivering 12, home at 24.5.
Instance reload_instance() {
    return fixtures::make(26, 1, 12, {fixtures::customer(1, 1, 5, 0, 5, 1)}, {{0, 2.5}, {2.5, 0}}, "reload");
}

Solution reload_plan() {
    Route r;
    r.events = {{EventKind::depot_start, 0, 0, 0.0, 0.0, 10.0, 10.0},
                {EventKind::visit, 1, 1, 2.5, 10.0, 10.0, 0.0},
                {EventKind::depot_reload, 0, 0, 12.5, 12.5, 12.0, 12.0},
                {EventKind::visit, 1, 2, 15.0, 22.0, 12.0, 0.0},
                {EventKind::depot_end, 0, 0, 24.5, 24.5, 0.0, 0.0}};
    Solution s;
    s.routes = {r};
    s.objective = 10.0;
    s.per_customer_visits = {0, 2};
    return s;
}

SolveOptions quick(double tl = 30.0) {
    SolveOptions o;
    o.time_limit = tl;
    return o;
}

double two_dp(double v) { return std::round(v * 100.0) / 100.0; }

} // namespace

TEST(Solver, TinySamplesReachKnownOptima) {
    const SolveResult a = solve(load_instance(fixtures::sample("tiny2.json")), quick());
    ASSERT_EQ(a.bounds.status, SolveStatus::optimal) << a.message;
    EXPECT_NEAR(a.solution->objective, 7.0, 1e-9);
    const SolveResult b = solve(load_instance(fixtures::sample("one_customer.json")), quick());
    ASSERT_EQ(b.bounds.status, SolveStatus::optimal);
    EXPECT_NEAR(b.solution->objective, 2.0, 1e-9);
    EXPECT_LE(b.bounds.lower, b.bounds.upper + 1e-9);
}

TEST(Solver, AgreesWithExhaustiveSearch) {
    std::mt19937 rng(99);
    int feasible = 0;
    for (int trial = 0; trial < 25; ++trial) {
        const Instance inst = fixtures::random_tiny(rng, 2);
        SolveOptions o = quick();
        o.max_visits_slack = 1;
        std::vector<int> caps;
        try {
            caps = derive(inst, {o.max_visits_slack}).max_visits;
        } catch (const InfeasibleInstance&) {
            caps.clear();
        }
        const SolveResult res = solve(inst, o);
        if (caps.empty()) {
            EXPECT_EQ(res.bounds.status, SolveStatus::infeasible);
            continue;
        }
        const oracle::Result truth = oracle::solve(inst, caps);
        if (!truth.feasible) {
            EXPECT_EQ(res.bounds.status, SolveStatus::infeasible) << "trial " << trial;
            continue;
        }
        ++feasible;
        ASSERT_EQ(res.bounds.status, SolveStatus::optimal) << "trial " << trial << ": " << res.message;
        EXPECT_EQ(two_dp(res.solution->objective), two_dp(truth.cost)) << "trial " << trial;
        EXPECT_TRUE(validate(inst, *res.solution).ok) << format_report(validate(inst, *res.solution));
    }
    EXPECT_GT(feasible, 5);
}

TEST(Solver, VariantsReachTheSameOptimum) {
    std::mt19937 rng(123);
    int compared = 0;
    for (int trial = 0; trial < 8; ++trial) {
        const Instance inst = fixtures::random_tiny(rng, 3);
        const SolveResult base = solve(inst, quick());
        if (base.bounds.status != SolveStatus::optimal) continue;
        ++compared;
        SolveOptions no_rci = quick();
        no_rci.enable_rci = false;
        SolveOptions loose = quick();
        loose.untightened();
        SolveOptions native = quick();
        native.driver = Driver::backend_mip;
        for (const SolveOptions& o : {no_rci, loose, native}) {
            const SolveResult r = solve(inst, o);
            const double opt = base.solution->objective;
            if (r.bounds.status == SolveStatus::optimal) {
                EXPECT_EQ(two_dp(r.solution->objective), two_dp(opt)) << "trial " << trial;
                continue;
            }
            // Without cuts the tree can outgrow the budget; the bounds must still bracket the optimum.
            ASSERT_EQ(r.bounds.status, SolveStatus::time_limit) << r.message;
            EXPECT_LE(r.bounds.lower, opt + 1e-6) << "trial " << trial;
            EXPECT_GE(r.bounds.upper, opt - 1e-6) << "trial " << trial;
        }
    }
    EXPECT_GT(compared, 3);
}

TEST(Solver, NoCutsWhenRciDisabled) {
    SolveOptions o = quick();
    o.enable_rci = false;
    const SolveResult r = solve(load_instance(fixtures::sample("surrogate/SC5U2Q3.txt")), o);
    EXPECT_EQ(r.stats.rci_added, 0);
    EXPECT_TRUE(r.cut_sets.empty());
}

TEST(Solver, Deterministic) {
    const Instance inst = load_instance(fixtures::sample("surrogate/SR5U3Q2.txt"));
    const SolveResult a = solve(inst, quick(60));
    const SolveResult b = solve(inst, quick(60));
    ASSERT_EQ(a.bounds.status, SolveStatus::optimal);
    EXPECT_EQ(a.solution->objective, b.solution->objective);
    EXPECT_EQ(a.stats.nodes, b.stats.nodes);
    EXPECT_EQ(a.cut_sets, b.cut_sets);
}

TEST(Extraction, ReloadDetourBecomesADepotEvent) {
    const Instance inst = reload_instance();
    const Solution plan = reload_plan();
    ASSERT_TRUE(validate(inst, plan).ok) << format_report(validate(inst, plan));

    SolveOptions o;
    o.max_visits_slack = 0;
    const PreparedModel p = prepare(inst, o);
    const auto values = fixtures::plan_values(plan, p);
    for (const Row& r : p.model.milp.rows()) EXPECT_LE(r.violation(values), 1e-9) << r.name;

    const Solution back = extract_solution(values, p.model, p.net, inst);
    ASSERT_EQ(back.routes.size(), 1u);
    const auto& ev = back.routes[0].events;
    ASSERT_EQ(ev.size(), plan.routes[0].events.size());
    for (std::size_t k = 0; k < ev.size(); ++k) {
        const RouteEvent& want = plan.routes[0].events[k];
        EXPECT_EQ(ev[k].kind, want.kind) << k;
        EXPECT_EQ(ev[k].site, want.site) << k;
        EXPECT_EQ(ev[k].visit, want.visit) << k;
        EXPECT_NEAR(ev[k].arrival, want.arrival, 1e-9) << k;
        EXPECT_NEAR(ev[k].departure, want.departure, 1e-9) << k;
        EXPECT_NEAR(ev[k].quantity, want.quantity, 1e-9) << k;
        EXPECT_NEAR(ev[k].load_after, want.load_after, 1e-9) << k;
    }
    EXPECT_DOUBLE_EQ(back.objective, 10.0);
    EXPECT_EQ(back.per_customer_visits, (std::vector<int>{0, 2}));
}

TEST(Extraction, RejectsCycleAwayFromTheDepot) {
    const Instance inst = load_instance(fixtures::sample("tiny2.json"));
    SolveOptions o;
    o.untightened();
    const PreparedModel p = prepare(inst, o);
    std::vector<double> x(static_cast<std::size_t>(p.model.milp.num_variables()), 0.0);
    for (int a = 0; a < p.net.num_arcs(); ++a) {
        const Arc& e = p.net.arc(a);
        const int i = p.net.node(e.from).site, j = p.net.node(e.to).site;
        const bool in_cycle = e.mode == ArcMode::direct && p.net.node(e.from).visit == 1 && p.net.node(e.to).visit == 1 &&
                              ((i == 1 && j == 2) || (i == 2 && j == 1));
        if (in_cycle) x[static_cast<std::size_t>(p.model.vars.x_of(a))] = 1.0;
    }
    EXPECT_THROW(extract_solution(x, p.model, p.net, inst), ExtractionError);
}

TEST(Solver, OptimumMatchesHandPlan) {
    SolveOptions o = quick();
    o.max_visits_slack = 0;
    const SolveResult r = solve(reload_instance(), o);
    ASSERT_EQ(r.bounds.status, SolveStatus::optimal) << r.message;
    EXPECT_NEAR(r.solution->objective, 10.0, 1e-9);
    EXPECT_TRUE(validate(reload_instance(), *r.solution).ok);
}

TEST(Solver, InfeasibleInstanceNamesTheCustomer) {
    const SolveResult r = solve(load_instance(fixtures::sample("infeasible.json")), quick());
    EXPECT_EQ(r.bounds.status, SolveStatus::infeasible);
    EXPECT_FALSE(r.solution.has_value());
    EXPECT_NE(r.message.find("customer 2"), std::string::npos) << r.message;
}

TEST(Solver, TimeLimitIsReported) {
    SolveOptions o = quick(1.0);
    o.heuristic_time_share = 0.0;
    const Instance inst = load_instance(fixtures::sample("surrogate/SR5U1Q3.txt"));
    const SolveResult r = solve(inst, o);
    EXPECT_EQ(r.bounds.status, SolveStatus::time_limit);
    EXPECT_LT(r.stats.wall_seconds, 5.0);
    EXPECT_LE(r.bounds.lower, r.bounds.upper);
    if (r.solution) EXPECT_TRUE(validate(inst, *r.solution).ok);
}

TEST(Solver, RejectsBadOptions) {
    const Instance inst = fixtures::one_customer();
    SolveOptions o;
    o.time_limit = 0;
    EXPECT_THROW(solve(inst, o), std::invalid_argument);
    o = SolveOptions{};
    o.heuristic_time_share = 1.0;
    EXPECT_THROW(solve(inst, o), std::invalid_argument);
}

TEST(Solver, BranchingPrefersVisitVariables) {
    MilpModel m;
    m.add_variable({"x", 0, 1, 1, VarKind::binary, 0});
    m.add_variable({"y_late", 0, 1, 0, VarKind::binary, 1});
    m.add_variable({"y_early", 0, 1, 0, VarKind::binary, 2});
    m.add_variable({"c", 0, 10, 0, VarKind::continuous, 9});
    const std::vector<double> all{0.5, 0.5, 0.5, 0.5};
    EXPECT_EQ(select_branching_variable(m, all), 2);
    const std::vector<double> ys_integral{0.5, 1.0, 0.0, 0.5};
    EXPECT_EQ(select_branching_variable(m, ys_integral), 0);
    const std::vector<double> integral{1.0, 1.0, 0.0, 0.5};
    EXPECT_EQ(select_branching_variable(m, integral), -1);
}

TEST(SolutionFile, RoundTrip) {
    const SolveResult r = solve(load_instance(fixtures::sample("tiny2.json")), quick());
    const std::string text = to_json(r.document("tiny2"));
    const SolutionDocument doc = parse_solution(text);
    EXPECT_EQ(doc.instance, "tiny2");
    ASSERT_TRUE(doc.solution.has_value());
    EXPECT_EQ(doc.bounds.status, SolveStatus::optimal);
    EXPECT_DOUBLE_EQ(doc.solution->objective, r.solution->objective);
    EXPECT_EQ(to_json(doc), text);
}
