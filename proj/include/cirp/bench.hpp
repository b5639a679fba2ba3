#pragma once

// Benchmark harness: a manifest of instances, one single-threaded solve per
// instance (several in parallel if asked), a CSV table and the Table-1 style
// aggregates.
//
// Manifest: one instance per line, "<path> [time_limit_seconds]". Blank lines
// and lines starting with '#' are skipped. Relative paths are tried against
// the manifest's directory, then against the data directory.

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cirp/instance_io.hpp"
#include "cirp/solver.hpp"
#include "cirp/validator.hpp"

namespace cirp {

struct ManifestEntry {
    std::string path;
    std::optional<double> time_limit;
    int line = 0;
};

inline std::vector<ManifestEntry> parse_manifest(std::string_view text) {
    std::vector<ManifestEntry> out;
    std::istringstream in{std::string(text)};
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        std::istringstream ls(line);
        std::string path;
        if (!(ls >> path) || path[0] == '#') continue;
        ManifestEntry e{path, std::nullopt, no};
        std::string tl;
        if (ls >> tl) {
            char* end = nullptr;
            const double v = std::strtod(tl.c_str(), &end);
            if (end == tl.c_str() || *end != '\0' || !(v > 0.0))
                throw ParseError("manifest line " + std::to_string(no) + ": bad time limit '" + tl + "'");
            e.time_limit = v;
        }
        std::string extra;
        if (ls >> extra && extra[0] != '#')
            throw ParseError("manifest line " + std::to_string(no) + ": unexpected '" + extra + "'");
        out.push_back(std::move(e));
    }
    return out;
}

inline std::filesystem::path resolve_instance_path(const std::string& entry, const std::filesystem::path& manifest_dir,
                                                   const std::filesystem::path& data_dir) {
    namespace fs = std::filesystem;
    const fs::path p(entry);
    if (p.is_absolute()) return p;
    // Bare benchmark names may omit the extension.
    for (const fs::path& base : {manifest_dir, data_dir}) {
        if (base.empty()) continue;
        for (const char* ext : {"", ".txt", ".dat", ".json", ".inp"}) {
            fs::path c = base / p;
            c += ext;
            if (fs::is_regular_file(c)) return c;
        }
    }
    return manifest_dir.empty() ? p : manifest_dir / p;
}

struct BenchRecord {
    std::string instance;
    std::string status;
    double objective = kInf; // incumbent, inf if none
    double lower = -kInf;
    double seconds = 0.0;
    long long nodes = 0;
    int rci = 0;
    double avg_visits = 0.0;
    bool valid = true; // validator verdict on the incumbent
    std::string message;

    double gap_pct() const {
        if (objective == kInf || lower == -kInf || objective == 0.0) return kInf;
        return 100.0 * (objective - lower) / objective;
    }
};

inline BenchRecord bench_one(const std::filesystem::path& path, SolveOptions opts) {
    BenchRecord rec;
    rec.instance = path.stem().string();
    try {
        const Instance inst = load_instance(path);
        rec.instance = inst.name.empty() ? rec.instance : inst.name;
        const SolveResult r = solve(inst, opts);
        rec.status = std::string(to_string(r.bounds.status));
        rec.objective = r.bounds.upper;
        rec.lower = r.bounds.lower;
        rec.seconds = r.stats.wall_seconds;
        rec.nodes = r.stats.nodes;
        rec.rci = r.stats.rci_added;
        rec.message = r.message;
        if (r.solution) {
            rec.avg_visits = r.solution->average_visits();
            rec.valid = validate(inst, *r.solution).ok;
        }
    } catch (const std::exception& e) {
        rec.status = "error";
        rec.message = e.what();
    }
    return rec;
}

// Runs every entry; `jobs` solves at a time. Records come back in manifest order.
inline std::vector<BenchRecord> run_bench(const std::vector<ManifestEntry>& entries,
                                          const std::filesystem::path& manifest_dir,
                                          const std::filesystem::path& data_dir, const SolveOptions& base, int jobs,
                                          const std::function<void(const BenchRecord&)>& on_done = {}) {
    std::vector<BenchRecord> out(entries.size());
    std::atomic<std::size_t> next{0};
    std::mutex done_mu;
    auto worker = [&]() {
        for (std::size_t k = next++; k < entries.size(); k = next++) {
            SolveOptions o = base;
            o.threads = 1;
            if (entries[k].time_limit) o.time_limit = *entries[k].time_limit;
            out[k] = bench_one(resolve_instance_path(entries[k].path, manifest_dir, data_dir), o);
            if (on_done) {
                std::lock_guard<std::mutex> lock(done_mu);
                on_done(out[k]);
            }
        }
    };
    const int n = std::max(1, std::min<int>(jobs, static_cast<int>(entries.size())));
    std::vector<std::thread> pool;
    for (int t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return out;
}

namespace detail {

inline std::string fixed(double v, int decimals) {
    if (v == kInf) return "inf";
    if (v == -kInf) return "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

inline double round_to(double v, int decimals) {
    if (!std::isfinite(v)) return v;
    const double s = std::pow(10.0, decimals);
    return std::round(v * s) / s;
}

} // namespace detail

inline const char* kBenchHeader = "instance,status,objective,lower_bound,gap_pct,seconds,nodes,rci,avg_visits,valid";

inline std::string format_bench_row(const BenchRecord& r) {
    std::ostringstream os;
    os << r.instance << ',' << r.status << ',' << detail::fixed(r.objective, 2) << ',' << detail::fixed(r.lower, 4)
       << ',' << detail::fixed(r.gap_pct(), 2) << ',' << detail::fixed(r.seconds, 2) << ',' << r.nodes << ','
       << r.rci << ',' << detail::fixed(r.avg_visits, 2) << ',' << (r.valid ? "yes" : "no");
    return os.str();
}

struct BenchSummary {
    int optimal = 0;
    int time_limit = 0;
    int other = 0;
    std::optional<double> avg_seconds; // over optimal rows, whole seconds
    std::optional<double> avg_gap_pct; // over time-limited rows with both bounds
};

// Aggregates use the values as printed, so they recompute from the table.
inline BenchSummary summarize(const std::vector<BenchRecord>& rows) {
    BenchSummary s;
    double t = 0.0, g = 0.0;
    int gn = 0;
    for (const BenchRecord& r : rows) {
        if (r.status == "optimal") {
            ++s.optimal;
            t += detail::round_to(r.seconds, 2);
        } else if (r.status == "time_limit") {
            ++s.time_limit;
            if (std::isfinite(r.gap_pct())) {
                g += detail::round_to(r.gap_pct(), 2);
                ++gn;
            }
        } else {
            ++s.other;
        }
    }
    if (s.optimal > 0) s.avg_seconds = std::round(t / s.optimal);
    if (gn > 0) s.avg_gap_pct = detail::round_to(g / gn, 2);
    return s;
}

inline std::string format_summary(const BenchSummary& s) {
    std::ostringstream os;
    os << "# opt=" << s.optimal << " tl=" << s.time_limit << " other=" << s.other
       << " avg_t_s=" << (s.avg_seconds ? detail::fixed(*s.avg_seconds, 0) : "-")
       << " avg_gap_pct=" << (s.avg_gap_pct ? detail::fixed(*s.avg_gap_pct, 2) : "-");
    return os.str();
}

} // namespace cirp
