#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>

#include "fixtures.hpp"

namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code = -1;
    std::string out;
};

// Runs the CLI through the shell; stderr is merged into the output when asked.
CliRun cli(const std::string& args, bool merge_stderr = false) {
    std::string cmd = std::string("\"") + CIRP_CLI_PATH + "\" " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
    CliRun r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "cirp_cli_test";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace

TEST(Cli, SolvePrintsTheSummaryLine) {
    const CliRun r = cli("solve " + q(fixtures::sample("tiny2.json")));
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("instance=tiny2 objective=7.00 status=optimal ", 0), 0u) << r.out;
    EXPECT_NE(r.out.find(" nodes="), std::string::npos);
    EXPECT_NE(r.out.find(" avg_visits="), std::string::npos);
}

TEST(Cli, SolveThenValidate) {
    const fs::path sol = scratch("tiny2.sol.json");
    ASSERT_EQ(cli("solve " + q(fixtures::sample("tiny2.json")) + " -o " + q(sol)).code, 0);
    const CliRun ok = cli("validate " + q(fixtures::sample("tiny2.json")) + " " + q(sol));
    EXPECT_EQ(ok.code, 0) << ok.out;
    EXPECT_EQ(ok.out.rfind("ok violations=0", 0), 0u) << ok.out;

    // Double every quantity: capacity and stock limits break.
    std::string text = slurp(sol);
    auto doc = nlohmann::json::parse(text);
    for (auto& route : doc["routes"])
        for (auto& e : route["events"]) {
            e["quantity"] = e["quantity"].get<double>() * 2.0;
            e["load_after"] = e["load_after"].get<double>() * 2.0;
        }
    const fs::path bad = scratch("tiny2.bad.json");
    std::ofstream(bad) << doc.dump(2);
    const CliRun inflated = cli("validate " + q(fixtures::sample("tiny2.json")) + " " + q(bad));
    EXPECT_NE(inflated.code, 0);
    EXPECT_NE(inflated.out.find("INVALID"), std::string::npos) << inflated.out;

    const fs::path cut = scratch("tiny2.cut.json");
    std::ofstream(cut) << text.substr(0, text.size() / 2);
    EXPECT_NE(cli("validate " + q(fixtures::sample("tiny2.json")) + " " + q(cut)).code, 0);
}

TEST(Cli, ConvertRoundTripIsByteIdentical) {
    const fs::path a = scratch("tiny2.roadef.txt"), b = scratch("tiny2.back.json"), c = scratch("tiny2.again.txt");
    ASSERT_EQ(cli("convert " + q(fixtures::sample("tiny2.json")) + " " + q(a) + " --to roadef").code, 0);
    ASSERT_EQ(cli("convert " + q(a) + " " + q(b) + " --to canonical").code, 0);
    ASSERT_EQ(cli("convert " + q(b) + " " + q(c) + " --to roadef").code, 0);
    EXPECT_EQ(slurp(a), slurp(c));
    const fs::path d = scratch("tiny2.canon.json");
    ASSERT_EQ(cli("convert " + q(fixtures::sample("tiny2.json")) + " " + q(d)).code, 0);
    EXPECT_EQ(slurp(b), slurp(d));
}

TEST(Cli, EmptyManifestGivesHeaderAndSummary) {
    const fs::path m = scratch("empty.manifest");
    std::ofstream(m) << "# nothing to run\n";
    const CliRun r = cli("bench " + q(m));
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "instance,status,objective,lower_bound,gap_pct,seconds,nodes,rci,avg_visits,valid\n"
                     "# opt=0 tl=0 other=0 avg_t_s=- avg_gap_pct=-\n");
}

TEST(Cli, BenchRunsManifestEntries) {
    const fs::path m = scratch("two.manifest");
    std::ofstream(m) << fixtures::sample("tiny2.json").string() << " 30\n"
                     << fixtures::sample("one_customer.json").string() << "\n";
    const CliRun r = cli("bench " + q(m));
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("\ntiny2,optimal,7.00,"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("\none_customer,optimal,2.00,"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("# opt=2 tl=0 other=0"), std::string::npos) << r.out;
}

TEST(Cli, InfeasibleInstanceExitsThree) {
    const CliRun r = cli("solve " + q(fixtures::sample("infeasible.json")), true);
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.out.find("customer 2"), std::string::npos) << r.out;
}

TEST(Cli, UsageAndInputErrors) {
    EXPECT_NE(cli("solve").code, 0);
    EXPECT_EQ(cli("solve " + q(scratch("does-not-exist.json"))).code, 4);
    const fs::path broken = scratch("broken.txt");
    std::ofstream(broken) << "NAME x\nHORIZON ten\n";
    const CliRun r = cli("solve " + q(broken), true);
    EXPECT_EQ(r.code, 4);
    EXPECT_NE(r.out.find("line 2"), std::string::npos) << r.out;
}

TEST(Cli, NamesResolveAgainstTheDataDirectory) {
    const CliRun r = cli("--data-dir " + q(fixtures::sample("")) + " solve tiny2");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("instance=tiny2 ", 0), 0u) << r.out;
}

TEST(Cli, GenerateDumpAndExport) {
    const fs::path g = scratch("gen.txt");
    ASSERT_EQ(cli("generate " + q(g) + " --customers 3 --seed 4 --to cirplib").code, 0);
    const CliRun net = cli("dump-network " + q(g));
    EXPECT_EQ(net.code, 0);
    EXPECT_EQ(net.out.rfind("nodes ", 0), 0u);
    const fs::path lp = scratch("gen.lp");
    ASSERT_EQ(cli("export-lp " + q(g) + " " + q(lp)).code, 0);
    EXPECT_NE(slurp(lp).find("Minimize"), std::string::npos);
}
