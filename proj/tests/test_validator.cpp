#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace cirp;

namespace {

Solution delayed(Solution s, double by) {
    for (Route& r : s.routes)
        for (RouteEvent& e : r.events) {
            e.arrival += by;
            e.departure += by;
        }
    return s;
}

} // namespace

TEST(Validator, OnTimeDeliveryIsValid) {
    const Instance inst = fixtures::one_customer();
    const ViolationReport rep = validate(inst, fixtures::single_visit_route(inst, 5.0, 10.0));
    EXPECT_TRUE(rep.ok) << format_report(rep);
    EXPECT_DOUBLE_EQ(rep.recomputed_objective, 2.0);
}

TEST(Validator, LateArrivalRunsDry) {
    const Instance inst = fixtures::one_customer();
    const ViolationReport rep = validate(inst, fixtures::single_visit_route(inst, 5.5, 10.0));
    ASSERT_EQ(rep.violations.size(), 1u) << format_report(rep);
    EXPECT_EQ(rep.violations[0].kind, "inventory_lower");
    EXPECT_EQ(rep.violations[0].location, "customer 1");
    EXPECT_NEAR(rep.violations[0].magnitude, 1.0, 1e-12);
}

TEST(Validator, ShiftingAPlanOnlyBreaksTheHorizon) {
    // Large slack in stock: only the horizon can be violated by a shift.
    const Instance inst = fixtures::make(10, 1, 15, {fixtures::customer(1, 1, 8, 0, 30, 0)}, {{0, 3}, {3, 0}});
    const Solution base = fixtures::single_visit_route(inst, 4.0, 5.0);
    ASSERT_TRUE(validate(inst, base).ok);
    for (double by : {4.0, -2.0}) {
        const ViolationReport rep = validate(inst, delayed(base, by));
        ASSERT_EQ(rep.violations.size(), 1u) << format_report(rep);
        EXPECT_EQ(rep.violations[0].kind, "horizon");
        EXPECT_NEAR(rep.violations[0].magnitude, 1.0, 1e-12); // 11 - 10 or 0 - (-1)
    }
}

TEST(Validator, InflatedQuantityBreaksCapacity) {
    const Instance inst = fixtures::one_customer();
    const ViolationReport rep = validate(inst, fixtures::single_visit_route(inst, 5.0, 20.0));
    EXPECT_FALSE(rep.ok);
    EXPECT_GE(rep.count("capacity"), 1) << format_report(rep);
    EXPECT_EQ(rep.count("inventory_upper"), 0);
}

TEST(Validator, ShortDeliveryMissesTheEndTarget) {
    const Instance inst = fixtures::one_customer();
    const ViolationReport rep = validate(inst, fixtures::single_visit_route(inst, 5.0, 9.0));
    ASSERT_EQ(rep.violations.size(), 1u) << format_report(rep);
    EXPECT_EQ(rep.violations[0].kind, "end_inventory");
    EXPECT_NEAR(rep.violations[0].magnitude, 1.0, 1e-12);
}

TEST(Validator, StructuralAndBookkeepingErrors) {
    const Instance inst = fixtures::one_customer();
    Solution s = fixtures::single_visit_route(inst, 5.0, 10.0);

    Solution no_end = s;
    no_end.routes[0].events.pop_back();
    EXPECT_EQ(validate(inst, no_end).count("structure"), 1);

    Solution bad_site = s;
    bad_site.routes[0].events[1].site = 7;
    EXPECT_EQ(validate(inst, bad_site).count("structure"), 1);

    Solution wrong_cost = s;
    wrong_cost.objective = 3.0;
    const ViolationReport rep = validate(inst, wrong_cost);
    EXPECT_EQ(rep.count("objective"), 1);
    EXPECT_DOUBLE_EQ(rep.recomputed_objective, 2.0);

    Solution wrong_load = s;
    wrong_load.routes[0].events[1].load_after = 1.0;
    EXPECT_EQ(validate(inst, wrong_load).count("load"), 1);

    Solution too_fast = s;
    too_fast.routes[0].events[0].departure = 4.5;
    EXPECT_EQ(validate(inst, too_fast).count("travel_time"), 1);

    Solution two = s;
    two.routes.push_back(s.routes[0]);
    EXPECT_GE(validate(inst, two).count("fleet"), 1);
}

TEST(Validator, OverlappingVisitsAreFlagged) {
    // Two vehicles at the same customer at once.
    Instance inst = fixtures::one_customer();
    inst.fleet_size = 2;
    Solution a = fixtures::single_visit_route(inst, 4.0, 5.0);
    Solution b = fixtures::single_visit_route(inst, 4.0, 5.0);
    a.routes[0].events[1].departure = 5.0;
    a.routes[0].events[2].arrival = a.routes[0].events[2].departure = 6.0;
    b.routes[0].events[1].visit = 2;
    b.routes[0].events[1].arrival = b.routes[0].events[1].departure = 4.5;
    b.routes[0].events[0].arrival = b.routes[0].events[0].departure = 3.5;
    b.routes[0].events[2].arrival = b.routes[0].events[2].departure = 5.5;
    a.routes.push_back(b.routes[0]);
    a.objective = 4.0;
    const ViolationReport rep = validate(inst, a);
    EXPECT_EQ(rep.count("overlap"), 1) << format_report(rep);
}

TEST(Validator, ReportFormat) {
    const Instance inst = fixtures::one_customer();
    const std::string text = format_report(validate(inst, fixtures::single_visit_route(inst, 5.5, 10.0)));
    EXPECT_EQ(text.rfind("INVALID violations=1", 0), 0u) << text;
    EXPECT_NE(text.find("inventory_lower at customer 1 magnitude 1"), std::string::npos) << text;
}
