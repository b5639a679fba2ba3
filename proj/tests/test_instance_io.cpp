#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace cirp;

TEST(CanonicalFormat, HandWrittenFileParses) {
    const Instance inst = load_instance(fixtures::sample("tiny2.json"));
    EXPECT_EQ(inst.num_sites(), 3);
    EXPECT_DOUBLE_EQ(inst.horizon, 10.0);
    EXPECT_EQ(inst.fleet_size, 1);
    EXPECT_DOUBLE_EQ(inst.capacity, 15.0);
    EXPECT_DOUBLE_EQ(inst.customer(2).rate, 1.5);
    EXPECT_DOUBLE_EQ(inst.time(1, 2), 2.0);
}

TEST(CanonicalFormat, WriteIsIdempotent) {
    const Instance inst = load_instance(fixtures::sample("tiny2.json"));
    const std::string once = to_canonical_json(inst);
    const std::string twice = to_canonical_json(parse_instance(once, InstanceFormat::canonical));
    EXPECT_EQ(once, twice);
}

TEST(CanonicalFormat, RejectsUnknownKeysAndMissingFields) {
    const std::string text = to_canonical_json(fixtures::one_customer());
    std::string extra = text;
    extra.insert(extra.find("\"horizon\""), "\"bogus\": 1,\n");
    EXPECT_THROW(parse_instance(extra, InstanceFormat::canonical), ParseError);
    std::string missing = text;
    const auto pos = missing.find("\"capacity\"");
    missing.erase(pos, missing.find('\n', pos) - pos + 1);
    EXPECT_THROW(parse_instance(missing, InstanceFormat::canonical), ParseError);
    EXPECT_THROW(parse_instance(text.substr(0, text.size() / 2), InstanceFormat::canonical), ParseError);
}

TEST(CirplibFormat, ConvertsToCanonicalFieldByField) {
    const Instance a = load_instance(fixtures::sample("surrogate/SC5U1Q1.txt"));
    EXPECT_EQ(a.num_customers(), 5);
    const Instance b = parse_instance(to_canonical_json(a), InstanceFormat::canonical);
    EXPECT_EQ(a, b);
}

TEST(CirplibFormat, DistancesFromCoordinatesWhenMatricesAreAbsent) {
    const std::string text = "NAME geo\nHORIZON 20\nVEHICLES 1\nCAPACITY 10\nDEPOT 0 0\nCUSTOMERS 2\n"
                             "1 3 4 1 5 0 10 0\n2 0 1 1 5 0 10 0\n";
    const Instance inst = parse_instance(text, InstanceFormat::cirplib);
    EXPECT_DOUBLE_EQ(inst.time(0, 1), 5.0);
    EXPECT_DOUBLE_EQ(inst.time(0, 2), 1.0);
    EXPECT_DOUBLE_EQ(inst.cost(1, 2), 4.24); // sqrt(18) rounded to cents
}

TEST(KeyedFormats, MalformedFileNamesTheLine) {
    const std::string text = "NAME x\nHORIZON 20\nVEHICLES one\n";
    try {
        parse_instance(text, InstanceFormat::cirplib);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }
}

TEST(KeyedFormats, RoadefRoundTrip) {
    const Instance inst = load_instance(fixtures::sample("tiny2.json"));
    const std::string text = to_keyed_text(inst, InstanceFormat::roadef_adapted);
    const Instance back = parse_instance(text, InstanceFormat::roadef_adapted);
    EXPECT_EQ(back, inst);
    EXPECT_THROW(to_keyed_text(inst, InstanceFormat::cirplib), ParseError); // no coordinates
}

TEST(KeyedFormats, SniffingPicksTheLayout) {
    const Instance inst = load_instance(fixtures::sample("tiny2.json"));
    const std::string roadef = to_keyed_text(inst, InstanceFormat::roadef_adapted);
    EXPECT_EQ(sniff_instance_format("x.txt", roadef), InstanceFormat::roadef_adapted);
    EXPECT_EQ(sniff_instance_format("x.json", roadef), InstanceFormat::canonical);
    EXPECT_EQ(sniff_instance_format("x.dat", "NAME a\nDEPOT 0 0\n"), InstanceFormat::cirplib);
}

TEST(KeyedFormats, NumbersRoundTripExactly) {
    EXPECT_EQ(detail::format_number(200.0), "200");
    EXPECT_EQ(detail::format_number(0.1), "0.1");
    EXPECT_EQ(std::stod(detail::format_number(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(KeyedFormats, CirplibTriangleToleranceAllowsRoundingOnly) {
    // 1-2-3 collinear at unit spacing after rounding: exact in cents.
    std::string text = "NAME t\nHORIZON 20\nVEHICLES 1\nCAPACITY 10\nDEPOT 0 0\nCUSTOMERS 3\n"
                       "1 0.004 0 1 5 0 10 0\n2 1.005 0 1 5 0 10 0\n3 2.006 0 1 5 0 10 0\n";
    EXPECT_NO_THROW(parse_instance(text, InstanceFormat::cirplib));
    const std::string broken = "NAME t\nHORIZON 20\nVEHICLES 1\nCAPACITY 10\nCUSTOMERS 2\n"
                               "1 1 5 0 10 0\n2 1 5 0 10 0\nTRAVEL_TIME\n0 1 1\n1 0 3\n1 3 0\n"
                               "TRAVEL_COST\n0 1 1\n1 0 3\n1 3 0\n";
    EXPECT_THROW(parse_instance(broken, InstanceFormat::roadef_adapted), InstanceError);
}
