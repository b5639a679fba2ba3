#pragma once

// Backend-neutral MILP container and the backend interface the solver talks to.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "cirp/common.hpp"

namespace cirp {

enum class VarKind { continuous, binary };

struct Variable {
    std::string name;
    double lower = 0.0;
    double upper = kInf;
    double objective = 0.0;
    VarKind kind = VarKind::continuous;
    int priority = 0; // larger branches first
};

struct Row {
    std::vector<int> index;
    std::vector<double> value;
    double lower = -kInf;
    double upper = kInf;
    std::string family;
    std::string name;

    double activity(std::span<const double> x) const {
        double s = 0.0;
        for (std::size_t k = 0; k < index.size(); ++k) s += value[k] * x[static_cast<std::size_t>(index[k])];
        return s;
    }
    // Amount by which `x` violates the row (0 when satisfied).
    double violation(std::span<const double> x) const {
        const double a = activity(x);
        return std::max({0.0, lower - a, a - upper});
    }
};

class MilpModel {
public:
    int add_variable(Variable v) {
        vars_.push_back(std::move(v));
        return static_cast<int>(vars_.size()) - 1;
    }
    int add_row(Row r) {
        rows_.push_back(std::move(r));
        return static_cast<int>(rows_.size()) - 1;
    }

    const std::vector<Variable>& variables() const { return vars_; }
    const std::vector<Row>& rows() const { return rows_; }
    Variable& variable(int j) { return vars_[static_cast<std::size_t>(j)]; }
    const Variable& variable(int j) const { return vars_[static_cast<std::size_t>(j)]; }
    const Row& row(int i) const { return rows_[static_cast<std::size_t>(i)]; }
    int num_variables() const { return static_cast<int>(vars_.size()); }
    int num_rows() const { return static_cast<int>(rows_.size()); }

    int count_family(std::string_view family) const {
        return static_cast<int>(std::count_if(rows_.begin(), rows_.end(), [&](const Row& r) { return r.family == family; }));
    }
    std::map<std::string, int> family_counts() const {
        std::map<std::string, int> m;
        for (const Row& r : rows_) ++m[r.family];
        return m;
    }

    double objective_value(std::span<const double> x) const {
        double s = 0.0;
        for (std::size_t j = 0; j < vars_.size(); ++j) s += vars_[j].objective * x[j];
        return s;
    }

private:
    std::vector<Variable> vars_;
    std::vector<Row> rows_;
};

// Writes the model in CPLEX LP format.
inline void write_lp(std::ostream& os, const MilpModel& m) {
    auto term = [&](double c, int j, bool first) {
        if (c < 0) os << " - ";
        else if (!first) os << " + ";
        const double a = std::abs(c);
        if (a != 1.0) os << a << ' ';
        os << m.variable(j).name;
    };
    auto wrap = [&](std::size_t& k) {
        if (++k % 8 == 0) os << "\n   ";
    };
    os.precision(17);
    os << "\\ continuous-time inventory routing model\nMinimize\n obj:";
    bool first = true;
    std::size_t k = 0;
    for (int j = 0; j < m.num_variables(); ++j) {
        if (m.variable(j).objective == 0.0) continue;
        term(m.variable(j).objective, j, first);
        first = false;
        wrap(k);
    }
    if (first) os << " 0";
    os << "\nSubject To\n";
    for (int i = 0; i < m.num_rows(); ++i) {
        const Row& r = m.row(i);
        auto body = [&](const std::string& label) {
            os << ' ' << label << ':';
            bool f = true;
            std::size_t kk = 0;
            for (std::size_t t = 0; t < r.index.size(); ++t) {
                term(r.value[t], r.index[t], f);
                f = false;
                wrap(kk);
            }
            if (f) os << " 0 x_dummy_zero";
        };
        const std::string base = r.name.empty() ? "r" + std::to_string(i) : r.name;
        if (r.lower == r.upper) {
            body(base);
            os << " = " << r.lower << "\n";
            continue;
        }
        if (r.lower > -kInf && r.upper < kInf) {
            body(base + "_lo");
            os << " >= " << r.lower << "\n";
            body(base + "_up");
            os << " <= " << r.upper << "\n";
            continue;
        }
        body(base);
        if (r.lower > -kInf) os << " >= " << r.lower << "\n";
        else os << " <= " << r.upper << "\n";
    }
    os << "Bounds\n";
    for (const Variable& v : m.variables()) {
        if (v.lower == -kInf && v.upper == kInf) {
            os << ' ' << v.name << " free\n";
            continue;
        }
        os << ' ';
        if (v.lower == -kInf) os << "-inf";
        else os << v.lower;
        os << " <= " << v.name << " <= ";
        if (v.upper == kInf) os << "+inf";
        else os << v.upper;
        os << "\n";
    }
    bool any_binary = false;
    for (const Variable& v : m.variables()) any_binary = any_binary || v.kind == VarKind::binary;
    if (any_binary) {
        os << "Binaries\n";
        std::size_t kb = 0;
        for (const Variable& v : m.variables())
            if (v.kind == VarKind::binary) {
                os << ' ' << v.name;
                if (++kb % 8 == 0) os << "\n";
            }
        os << "\n";
    }
    os << "End\n";
}

// ---------------------------------------------------------------------------
// Backend interface

enum class LpStatus { optimal, infeasible, unbounded, time_limit, error };

struct LpResult {
    LpStatus status = LpStatus::error;
    double objective = kInf;
    std::vector<double> values;
};

enum class MipStatus { optimal, infeasible, time_limit, error };

struct MipResult {
    MipStatus status = MipStatus::error;
    bool has_solution = false;
    double objective = kInf; // incumbent
    double bound = -kInf;
    std::vector<double> values;
    long long nodes = 0;
};

struct MipControl {
    double time_limit = kInf;
    double absolute_gap = 0.0099;
    double relative_gap = 0.0;
    int threads = 1;
    bool general_cuts = false;
    int max_improving_solutions = 0; // 0: no limit
};

// Offered a fractional LP point during a native MILP solve; returns rows to
// add as globally valid cuts.
using CutCallback = std::function<std::vector<Row>(std::span<const double> point)>;

// Mathematical-programming engine. The LP half is mandatory; native MILP
// support with cut callbacks and branching priorities is optional, and the
// solver falls back to its own branch-and-cut driver over the LP half when a
// capability is missing.
class MilpBackend {
public:
    virtual ~MilpBackend() = default;

    virtual std::string name() const = 0;

    // LP relaxation interface: integrality is ignored.
    virtual void load(const MilpModel& model) = 0;
    virtual void add_rows(std::span<const Row> rows) = 0;
    virtual void set_bounds(int var, double lower, double upper) = 0;
    virtual LpResult solve_lp(double time_limit = kInf) = 0;

    virtual bool supports_native_mip() const { return false; }
    virtual bool supports_cut_callback() const { return false; }
    virtual bool supports_priorities() const { return false; }
    virtual MipResult solve_mip(const MilpModel&, const MipControl&, const CutCallback* = nullptr) {
        return {};
    }
};

using BackendFactory = std::function<std::unique_ptr<MilpBackend>()>;

} // namespace cirp
