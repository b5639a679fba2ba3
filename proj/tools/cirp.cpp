// cirp: solve, validate, convert and benchmark continuous-time inventory
// routing instances.
//
// Exit codes: 0 optimal / ok, 1 validation failed or usage error,
// 2 time limit with a gap, 3 infeasible, 4 I/O or parse error, 5 solver error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "cirp/cirp.hpp"

namespace fs = std::filesystem;
using namespace cirp;

namespace {

enum Exit { kOk = 0, kInvalid = 1, kTimeLimit = 2, kInfeasible = 3, kIoError = 4, kSolverError = 5 };

int exit_code(SolveStatus s) {
    switch (s) {
    case SolveStatus::optimal: return kOk;
    case SolveStatus::time_limit: return kTimeLimit;
    case SolveStatus::infeasible: return kInfeasible;
    case SolveStatus::error: return kSolverError;
    }
    return kSolverError;
}

std::string data_dir_or_env(const std::string& flag) {
    if (!flag.empty()) return flag;
    const char* env = std::getenv("CIRP_DATA_DIR");
    return env ? env : "";
}

// A path, or an instance name looked up in the data directory.
fs::path find_instance(const std::string& arg, const std::string& data_dir) {
    if (fs::exists(arg)) return arg;
    if (!data_dir.empty() && fs::is_directory(data_dir)) {
        for (const char* ext : {"", ".json", ".dat", ".txt", ".inp"}) {
            const fs::path p = fs::path(data_dir) / (arg + ext);
            if (fs::is_regular_file(p)) return p;
        }
        for (const auto& e : fs::recursive_directory_iterator(data_dir))
            if (e.is_regular_file() && e.path().stem() == arg) return e.path();
    }
    throw ParseError("instance '" + arg + "' not found" +
                     (data_dir.empty() ? std::string(" (no data directory set)") : " (searched " + data_dir + ")"));
}

Instance load(const std::string& arg, const std::string& data_dir, const std::string& format) {
    const fs::path p = find_instance(arg, data_dir);
    if (format.empty() || format == "auto") return load_instance(p);
    return load_instance(p, parse_instance_format(format));
}

struct SolveFlags {
    double time_limit = 600.0;
    double abs_gap = 0.0099;
    double rel_gap = 0.0;
    bool no_rci = false;
    bool untightened = false;
    int max_visits_slack = 2;
    unsigned seed = 0;
    int threads = 1;
    double heuristic_share = 0.1;
    std::string backend;

    void add(CLI::App* app) {
        app->add_option("--time-limit", time_limit, "seconds")->check(CLI::PositiveNumber)->capture_default_str();
        app->add_option("--abs-gap", abs_gap, "absolute gap")->check(CLI::NonNegativeNumber)->capture_default_str();
        app->add_option("--rel-gap", rel_gap, "relative gap, 0 disables")->check(CLI::NonNegativeNumber);
        app->add_flag("--no-rci", no_rci, "no rounded capacity inequalities");
        app->add_flag("--untightened", untightened, "trivial windows, no elimination, no fixings, no aggregate cut");
        app->add_option("--max-visits-slack", max_visits_slack, "extra visits allowed per customer")
            ->check(CLI::NonNegativeNumber)
            ->capture_default_str();
        app->add_option("--seed", seed, "seed for the tabu separator")->capture_default_str();
        app->add_option("--threads", threads, "threads per solve")->check(CLI::PositiveNumber)->capture_default_str();
        app->add_option("--heuristic-share", heuristic_share, "share of the time limit for the root MILP heuristic")
            ->check(CLI::Range(0.0, 0.99))
            ->capture_default_str();
        app->add_option("--backend", backend, "highs (own branch-and-cut) or highs-mip; default from CIRP_BACKEND");
    }

    SolveOptions options() const {
        SolveOptions o;
        o.time_limit = time_limit;
        o.absolute_gap = abs_gap;
        o.relative_gap = rel_gap;
        o.enable_rci = !no_rci;
        o.max_visits_slack = max_visits_slack;
        o.rng_seed = seed;
        o.threads = threads;
        o.heuristic_time_share = heuristic_share;
        if (untightened) o.untightened();
        if (backend.empty()) {
            o.driver = driver_from_env();
        } else if (backend == "highs") {
            o.driver = Driver::branch_and_cut;
        } else if (backend == "highs-mip") {
            o.driver = Driver::backend_mip;
        } else {
            throw std::invalid_argument("unknown backend '" + backend + "'");
        }
        o.check();
        return o;
    }
};

std::string summary_line(const std::string& name, const SolveResult& r) {
    std::ostringstream os;
    os << "instance=" << name << " objective=" << (r.solution ? detail::fixed(r.bounds.upper, 2) : "none")
       << " status=" << to_string(r.bounds.status) << " lower=" << detail::fixed(r.bounds.lower, 4)
       << " nodes=" << r.stats.nodes << " rci=" << r.stats.rci_added << " seconds=" << detail::fixed(r.stats.wall_seconds, 2);
    if (r.solution) os << " avg_visits=" << detail::fixed(r.solution->average_visits(), 2);
    return os.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact branch-and-cut for the continuous-time inventory routing problem"};
    app.require_subcommand(1);
    std::string data_dir_flag;
    app.add_option("--data-dir", data_dir_flag, "where instance names are looked up (default $CIRP_DATA_DIR)");

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "solve one instance");
    std::string solve_inst, solve_out, solve_format;
    SolveFlags sflags;
    solve_cmd->add_option("instance", solve_inst, "instance file or name")->required();
    solve_cmd->add_option("-o,--output", solve_out, "write the solution document here");
    solve_cmd->add_option("--format", solve_format, "canonical, cirplib, roadef or auto")->capture_default_str();
    sflags.add(solve_cmd);

    // validate
    auto* val_cmd = app.add_subcommand("validate", "check a solution document against an instance");
    std::string val_inst, val_sol;
    double val_eps = 1e-6;
    val_cmd->add_option("instance", val_inst, "instance file or name")->required();
    val_cmd->add_option("solution", val_sol, "solution document")->required();
    val_cmd->add_option("--eps", val_eps, "tolerance")->check(CLI::PositiveNumber)->capture_default_str();

    // convert
    auto* conv_cmd = app.add_subcommand("convert", "rewrite an instance in another format");
    std::string conv_in, conv_out, conv_from, conv_to = "canonical";
    conv_cmd->add_option("input", conv_in, "input file")->required();
    conv_cmd->add_option("output", conv_out, "output file")->required();
    conv_cmd->add_option("--from", conv_from, "input format (default: guessed)");
    conv_cmd->add_option("--to", conv_to, "output format")->capture_default_str();

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "solve every instance of a manifest");
    std::string bench_manifest, bench_out;
    int bench_jobs = 1;
    SolveFlags bflags;
    bench_cmd->add_option("manifest", bench_manifest, "manifest file")->required();
    bench_cmd->add_option("-o,--output", bench_out, "also write the table here");
    bench_cmd->add_option("-j,--jobs", bench_jobs, "solves run in parallel")->check(CLI::PositiveNumber);
    bflags.add(bench_cmd);

    // generate
    auto* gen_cmd = app.add_subcommand("generate", "write a random instance");
    GeneratorOptions gen;
    std::string gen_out, gen_layout = "random", gen_to = "canonical";
    gen_cmd->add_option("output", gen_out, "output file")->required();
    gen_cmd->add_option("--customers", gen.customers)->check(CLI::PositiveNumber)->capture_default_str();
    gen_cmd->add_option("--vehicles", gen.vehicles)->check(CLI::PositiveNumber)->capture_default_str();
    gen_cmd->add_option("--layout", gen_layout, "random or clustered")->capture_default_str();
    gen_cmd->add_option("--tank-factor", gen.tank_factor)->check(CLI::PositiveNumber)->capture_default_str();
    gen_cmd->add_option("--capacity-factor", gen.capacity_factor)->check(CLI::PositiveNumber)->capture_default_str();
    gen_cmd->add_option("--horizon", gen.horizon)->check(CLI::PositiveNumber)->capture_default_str();
    gen_cmd->add_option("--seed", gen.seed)->capture_default_str();
    gen_cmd->add_option("--to", gen_to, "output format")->capture_default_str();

    // dump-network / export-lp
    auto* net_cmd = app.add_subcommand("dump-network", "print visit nodes, windows and live arcs");
    std::string net_inst;
    int net_slack = 2;
    bool net_untight = false;
    net_cmd->add_option("instance", net_inst)->required();
    net_cmd->add_option("--max-visits-slack", net_slack)->check(CLI::NonNegativeNumber);
    net_cmd->add_flag("--untightened", net_untight);

    auto* lp_cmd = app.add_subcommand("export-lp", "write the model in LP format");
    std::string lp_inst, lp_out;
    SolveFlags lflags;
    lp_cmd->add_option("instance", lp_inst)->required();
    lp_cmd->add_option("output", lp_out)->required();
    lflags.add(lp_cmd);

    CLI11_PARSE(app, argc, argv);
    const std::string data_dir = data_dir_or_env(data_dir_flag);

    try {
        if (*solve_cmd) {
            const SolveOptions opts = sflags.options();
            const Instance inst = load(solve_inst, data_dir, solve_format);
            const SolveResult r = solve(inst, opts);
            if (!solve_out.empty()) write_text_file(solve_out, to_json(r.document(inst.name)));
            std::cout << summary_line(inst.name, r) << "\n";
            if (!r.message.empty() && r.bounds.status != SolveStatus::optimal) std::cerr << r.message << "\n";
            if (r.solution && !r.exact_at_two_decimals)
                std::cerr << "note: some costs have more than two decimals; optimality is up to the absolute gap\n";
            return exit_code(r.bounds.status);
        }
        if (*val_cmd) {
            const Instance inst = load(val_inst, data_dir, "");
            const SolutionDocument doc = parse_solution(read_text_file(val_sol));
            if (!doc.solution) {
                std::cout << "INVALID: the document holds no solution (status " << to_string(doc.bounds.status) << ")\n";
                return kInvalid;
            }
            const ViolationReport rep = validate(inst, *doc.solution, val_eps);
            std::cout << format_report(rep);
            return rep.ok ? kOk : kInvalid;
        }
        if (*conv_cmd) {
            const Instance inst = load(conv_in, "", conv_from);
            const InstanceFormat to = parse_instance_format(conv_to);
            write_text_file(conv_out, to == InstanceFormat::canonical ? to_canonical_json(inst) : to_keyed_text(inst, to));
            return kOk;
        }
        if (*bench_cmd) {
            const SolveOptions opts = bflags.options();
            const auto entries = parse_manifest(read_text_file(bench_manifest));
            std::ostringstream table;
            table << kBenchHeader << "\n";
            std::cout << kBenchHeader << "\n" << std::flush;
            const auto rows =
                run_bench(entries, fs::path(bench_manifest).parent_path(), data_dir, opts, bench_jobs,
                          [](const BenchRecord& r) { std::cerr << "done " << r.instance << " " << r.status << "\n"; });
            for (const BenchRecord& r : rows) {
                table << format_bench_row(r) << "\n";
                std::cout << format_bench_row(r) << "\n";
                if (!r.message.empty() && r.status == "error") std::cerr << r.instance << ": " << r.message << "\n";
            }
            const std::string sum = format_summary(summarize(rows));
            table << sum << "\n";
            std::cout << sum << "\n";
            if (!bench_out.empty()) write_text_file(bench_out, table.str());
            return kOk;
        }
        if (*gen_cmd) {
            if (gen_layout == "random") gen.layout = Layout::random;
            else if (gen_layout == "clustered") gen.layout = Layout::clustered;
            else throw std::invalid_argument("unknown layout '" + gen_layout + "'");
            const Instance inst = generate_instance(gen);
            const InstanceFormat to = parse_instance_format(gen_to);
            write_text_file(gen_out, to == InstanceFormat::canonical ? to_canonical_json(inst) : to_keyed_text(inst, to));
            return kOk;
        }
        if (*net_cmd) {
            const Instance inst = load(net_inst, data_dir, "");
            const DerivedData d = derive(inst, {net_slack, !net_untight});
            ExpandedNetwork net = build_network(inst, d);
            int removed = 0;
            if (!net_untight) removed = eliminate_arcs(net, d);
            dump_network(std::cout, net);
            std::cout << "# arcs removed by time windows: " << removed << "\n";
            return kOk;
        }
        if (*lp_cmd) {
            const Instance inst = load(lp_inst, data_dir, "");
            const PreparedModel p = prepare(inst, lflags.options());
            std::ofstream out(lp_out);
            if (!out) throw ParseError("cannot write '" + lp_out + "'");
            write_lp(out, p.model.milp);
            return kOk;
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIoError;
    } catch (const InstanceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIoError;
    } catch (const InfeasibleInstance& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kInfeasible;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kSolverError;
    }
    return kOk;
}
