#pragma once

#include <memory>
#include <string>
#include <vector>

#include "Highs.h"

#include "cirp/milp.hpp"

namespace cirp {

// HiGHS behind the MilpBackend contract. The LP half keeps the engine alive
// between calls so bound changes and added rows re-solve from the previous
// basis. Native MILP runs are monolithic: HiGHS exposes no user-cut hook, so
// supports_cut_callback() is false and the solver drives branch-and-cut
// itself when cuts are wanted.
class HighsBackend final : public MilpBackend {
public:
    HighsBackend() { configure(lp_); }

    std::string name() const override { return "highs-" + std::to_string(HIGHS_VERSION_MAJOR) + "." +
                                                std::to_string(HIGHS_VERSION_MINOR) + "." +
                                                std::to_string(HIGHS_VERSION_PATCH); }

    void load(const MilpModel& model) override {
        lp_.clearModel();
        const HighsLp lp = to_highs(model, false);
        check(lp_.passModel(lp), "passModel");
    }

    void add_rows(std::span<const Row> rows) override {
        if (rows.empty()) return;
        std::vector<double> lo, up, val;
        std::vector<HighsInt> start, idx;
        for (const Row& r : rows) {
            lo.push_back(r.lower);
            up.push_back(r.upper);
            start.push_back(static_cast<HighsInt>(idx.size()));
            for (std::size_t k = 0; k < r.index.size(); ++k) {
                idx.push_back(r.index[k]);
                val.push_back(r.value[k]);
            }
        }
        check(lp_.addRows(static_cast<HighsInt>(rows.size()), lo.data(), up.data(), static_cast<HighsInt>(idx.size()),
                          start.data(), idx.data(), val.data()),
              "addRows");
    }

    void set_bounds(int var, double lower, double upper) override {
        check(lp_.changeColBounds(var, lower, upper), "changeColBounds");
    }

    LpResult solve_lp(double time_limit) override {
        lp_.setOptionValue("time_limit", time_limit == kInf ? kHighsInf : std::max(time_limit, 1e-3));
        lp_.zeroAllClocks(); // the time limit is measured on cumulative clocks
        LpResult res = run_lp();
        if (res.status != LpStatus::error) return res;
        // Numerical trouble: retry from scratch, then with default tolerances.
        lp_.clearSolver();
        res = run_lp();
        if (res.status != LpStatus::error) return res;
        lp_.clearSolver();
        set_tolerances(lp_, 1e-7);
        res = run_lp();
        set_tolerances(lp_, kFeasTol);
        return res;
    }

    bool supports_native_mip() const override { return true; }

    MipResult solve_mip(const MilpModel& model, const MipControl& ctl, const CutCallback* cb) override {
        MipResult res;
        if (cb != nullptr) return res; // no user-cut hook in this engine
        Highs mip;
        configure(mip);
        mip.setOptionValue("presolve", "on");
        mip.setOptionValue("mip_abs_gap", ctl.absolute_gap);
        mip.setOptionValue("mip_rel_gap", ctl.relative_gap);
        mip.setOptionValue("time_limit", ctl.time_limit == kInf ? kHighsInf : ctl.time_limit);
        if (ctl.max_improving_solutions > 0) mip.setOptionValue("mip_max_improving_sols", ctl.max_improving_solutions);
        check(mip.passModel(to_highs(model, true)), "passModel");
        mip.run();
        const HighsInfo& info = mip.getInfo();
        res.nodes = info.mip_node_count;
        res.bound = info.mip_dual_bound;
        res.has_solution = info.primal_solution_status == kSolutionStatusFeasible;
        if (res.has_solution) {
            res.objective = info.objective_function_value;
            res.values = mip.getSolution().col_value;
        }
        switch (mip.getModelStatus()) {
        case HighsModelStatus::kOptimal: res.status = MipStatus::optimal; break;
        case HighsModelStatus::kInfeasible: res.status = MipStatus::infeasible; break;
        case HighsModelStatus::kTimeLimit:
        case HighsModelStatus::kSolutionLimit: res.status = MipStatus::time_limit; break;
        default: res.status = MipStatus::error; break;
        }
        return res;
    }

private:
    static constexpr double kFeasTol = 1e-9;

    LpResult run_lp() {
        LpResult res;
        if (lp_.run() == HighsStatus::kError) return res;
        switch (lp_.getModelStatus()) {
        case HighsModelStatus::kOptimal:
            res.status = LpStatus::optimal;
            res.objective = lp_.getInfo().objective_function_value;
            res.values = lp_.getSolution().col_value;
            break;
        case HighsModelStatus::kInfeasible: res.status = LpStatus::infeasible; break;
        case HighsModelStatus::kUnbounded:
        case HighsModelStatus::kUnboundedOrInfeasible: res.status = LpStatus::unbounded; break;
        case HighsModelStatus::kTimeLimit: res.status = LpStatus::time_limit; break;
        default: break;
        }
        return res;
    }

    static void set_tolerances(Highs& h, double tol) {
        h.setOptionValue("primal_feasibility_tolerance", tol);
        h.setOptionValue("dual_feasibility_tolerance", tol);
    }

    static void configure(Highs& h) {
        h.setOptionValue("output_flag", false);
        h.setOptionValue("threads", 1);
        h.setOptionValue("presolve", "off");
        h.setOptionValue("random_seed", 0);
        set_tolerances(h, kFeasTol);
    }

    static void check(HighsStatus st, const char* what) {
        if (st == HighsStatus::kError) throw std::runtime_error(std::string("HiGHS ") + what + " failed");
    }

    static HighsLp to_highs(const MilpModel& model, bool integral) {
        HighsLp lp;
        const int n = model.num_variables();
        const int m = model.num_rows();
        lp.num_col_ = n;
        lp.num_row_ = m;
        lp.sense_ = ObjSense::kMinimize;
        lp.col_cost_.resize(static_cast<std::size_t>(n));
        lp.col_lower_.resize(static_cast<std::size_t>(n));
        lp.col_upper_.resize(static_cast<std::size_t>(n));
        if (integral) lp.integrality_.assign(static_cast<std::size_t>(n), HighsVarType::kContinuous);
        for (int j = 0; j < n; ++j) {
            const Variable& v = model.variable(j);
            const auto s = static_cast<std::size_t>(j);
            lp.col_cost_[s] = v.objective;
            lp.col_lower_[s] = v.lower == -kInf ? -kHighsInf : v.lower;
            lp.col_upper_[s] = v.upper == kInf ? kHighsInf : v.upper;
            if (integral && v.kind == VarKind::binary) lp.integrality_[s] = HighsVarType::kInteger;
        }
        lp.row_lower_.resize(static_cast<std::size_t>(m));
        lp.row_upper_.resize(static_cast<std::size_t>(m));
        lp.a_matrix_.format_ = MatrixFormat::kRowwise;
        lp.a_matrix_.num_col_ = n;
        lp.a_matrix_.num_row_ = m;
        lp.a_matrix_.start_.assign(1, 0);
        for (int i = 0; i < m; ++i) {
            const Row& r = model.row(i);
            const auto s = static_cast<std::size_t>(i);
            lp.row_lower_[s] = r.lower == -kInf ? -kHighsInf : r.lower;
            lp.row_upper_[s] = r.upper == kInf ? kHighsInf : r.upper;
            for (std::size_t k = 0; k < r.index.size(); ++k) {
                lp.a_matrix_.index_.push_back(r.index[k]);
                lp.a_matrix_.value_.push_back(r.value[k]);
            }
            lp.a_matrix_.start_.push_back(static_cast<HighsInt>(lp.a_matrix_.index_.size()));
        }
        lp.a_matrix_.ensureColwise();
        return lp;
    }

    Highs lp_;
};

inline std::unique_ptr<MilpBackend> make_highs_backend() { return std::make_unique<HighsBackend>(); }

} // namespace cirp
