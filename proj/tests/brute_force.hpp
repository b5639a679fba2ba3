#pragma once

// Exhaustive oracle for tiny instances. It enumerates visit counts, the
// chronological interleaving of all visits into vehicle routes, and for each
// consecutive pair on a route whether the vehicle passes the depot. Each
// structure has a fixed travel cost; its timing and quantities are checked
// with a feasibility LP written directly against HiGHS. Nothing from the
// solver's model or network is used.

#include <algorithm>
#include <functional>
#include <map>
#include <vector>

#include "Highs.h"

#include "cirp/instance.hpp"

namespace oracle {

struct Stop {
    int site;
    bool reload_before; // vehicle passes the depot between the previous stop and this one
};

struct Structure {
    std::vector<std::vector<Stop>> routes;
    double cost = 0.0;
};

// Feasibility of a structure in continuous time. `order[i]` lists customer
// i's stops as (route, position) in chronological order.
inline bool timing_feasible(const cirp::Instance& inst, const Structure& s,
                            const std::vector<std::vector<std::pair<int, int>>>& order) {
    // Columns: per stop a, d, q.
    std::vector<std::pair<int, int>> stops; // (route, position)
    for (int r = 0; r < static_cast<int>(s.routes.size()); ++r)
        for (int k = 0; k < static_cast<int>(s.routes[static_cast<std::size_t>(r)].size()); ++k) stops.push_back({r, k});
    const int ns = static_cast<int>(stops.size());
    auto A = [](int k) { return 3 * k; };
    auto D = [](int k) { return 3 * k + 1; };
    auto Qv = [](int k) { return 3 * k + 2; };
    const double H = inst.horizon;

    HighsLp lp;
    lp.num_col_ = 3 * ns;
    lp.col_cost_.assign(static_cast<std::size_t>(lp.num_col_), 0.0);
    lp.col_lower_.assign(static_cast<std::size_t>(lp.num_col_), 0.0);
    lp.col_upper_.assign(static_cast<std::size_t>(lp.num_col_), H);
    for (int k = 0; k < ns; ++k) lp.col_upper_[static_cast<std::size_t>(Qv(k))] = inst.capacity;

    std::vector<std::vector<std::pair<int, double>>> rows;
    std::vector<double> lo, up;
    auto add = [&](std::vector<std::pair<int, double>> r, double l, double u) {
        rows.push_back(std::move(r));
        lo.push_back(l);
        up.push_back(u);
    };
    const double inf = kHighsInf;

    std::map<std::pair<int, int>, int> index;
    for (int k = 0; k < ns; ++k) index[stops[static_cast<std::size_t>(k)]] = k;
    for (int r = 0; r < static_cast<int>(s.routes.size()); ++r) {
        const auto& route = s.routes[static_cast<std::size_t>(r)];
        std::vector<int> trip;
        auto close_trip = [&]() {
            std::vector<std::pair<int, double>> row;
            for (int k : trip) row.push_back({Qv(k), 1.0});
            if (!row.empty()) add(row, -inf, inst.capacity);
            trip.clear();
        };
        for (int pos = 0; pos < static_cast<int>(route.size()); ++pos) {
            const int k = index[{r, pos}];
            const int site = route[static_cast<std::size_t>(pos)].site;
            add({{A(k), 1.0}, {D(k), -1.0}}, -inf, 0.0);
            if (pos == 0) {
                add({{A(k), 1.0}}, inst.time(0, site), inf);
            } else {
                const int kp = index[{r, pos - 1}];
                const int prev = route[static_cast<std::size_t>(pos - 1)].site;
                const double t = route[static_cast<std::size_t>(pos)].reload_before ? inst.time(prev, 0) + inst.time(0, site)
                                                                                   : inst.time(prev, site);
                add({{A(k), 1.0}, {D(kp), -1.0}}, t, inf);
                if (route[static_cast<std::size_t>(pos)].reload_before) close_trip();
            }
            trip.push_back(k);
            if (pos + 1 == static_cast<int>(route.size())) add({{D(k), 1.0}}, -inf, H - inst.time(site, 0));
        }
        close_trip();
    }
    for (int i = 1; i < inst.num_sites(); ++i) {
        const cirp::Customer& c = inst.customer(i);
        std::vector<int> mine;
        for (const auto& rp : order[static_cast<std::size_t>(i)]) mine.push_back(index[rp]);
        for (std::size_t p = 0; p < mine.size(); ++p) {
            if (p > 0) add({{A(mine[p]), 1.0}, {D(mine[p - 1]), -1.0}}, 0.0, inf);
            std::vector<std::pair<int, double>> low{{A(mine[p]), -c.rate}};
            for (std::size_t b = 0; b < p; ++b) low.push_back({Qv(mine[b]), 1.0});
            add(low, c.inv_min - c.inv_init, inf);
            std::vector<std::pair<int, double>> high{{D(mine[p]), -c.rate}};
            for (std::size_t b = 0; b <= p; ++b) high.push_back({Qv(mine[b]), 1.0});
            add(high, -inf, c.inv_max - c.inv_init);
        }
        std::vector<std::pair<int, double>> end;
        for (int k : mine) end.push_back({Qv(k), 1.0});
        add(end, c.inv_end_target + c.rate * H - c.inv_init, inf);
    }

    lp.num_row_ = static_cast<HighsInt>(rows.size());
    lp.row_lower_ = lo;
    lp.row_upper_ = up;
    lp.a_matrix_.format_ = MatrixFormat::kRowwise;
    lp.a_matrix_.start_.assign(1, 0);
    for (const auto& r : rows) {
        for (const auto& [j, v] : r) {
            lp.a_matrix_.index_.push_back(j);
            lp.a_matrix_.value_.push_back(v);
        }
        lp.a_matrix_.start_.push_back(static_cast<HighsInt>(lp.a_matrix_.index_.size()));
    }
    lp.a_matrix_.num_col_ = lp.num_col_;
    lp.a_matrix_.num_row_ = lp.num_row_;
    Highs h;
    h.setOptionValue("output_flag", false);
    h.setOptionValue("threads", 1);
    h.passModel(lp);
    h.run();
    return h.getModelStatus() == HighsModelStatus::kOptimal;
}

struct Result {
    bool feasible = false;
    double cost = 0.0;
    long long structures = 0;
};

// `max_visits[i]` bounds the number of visits to customer i (index 0 unused).
inline Result solve(const cirp::Instance& inst, const std::vector<int>& max_visits) {
    const int n = inst.num_customers();
    std::vector<Structure> all;

    // Visit multiset for every combination of counts.
    std::vector<int> counts(static_cast<std::size_t>(n + 1), 1);
    std::function<void(int)> by_counts = [&](int i) {
        if (i > n) {
            std::vector<int> visits;
            for (int c = 1; c <= n; ++c)
                for (int k = 0; k < counts[static_cast<std::size_t>(c)]; ++k) visits.push_back(c);
            std::sort(visits.begin(), visits.end());
            // Every distinct sequence of the visits, cut into at most K routes.
            // Route order is irrelevant, so some structures repeat.
            do {
                const int m = static_cast<int>(visits.size());
                // Gap g between visit g-1 and g: 0 = direct, 1 = reload, 2 = new route.
                std::vector<int> gap(static_cast<std::size_t>(m), 0);
                std::function<void(int)> gaps = [&](int g) {
                    if (g == m) {
                        Structure s;
                        s.routes.push_back({});
                        for (int k = 0; k < m; ++k) {
                            const int kind = gap[static_cast<std::size_t>(k)];
                            if (k > 0 && kind == 2) s.routes.push_back({});
                            s.routes.back().push_back({visits[static_cast<std::size_t>(k)], k > 0 && kind == 1});
                        }
                        if (static_cast<int>(s.routes.size()) > inst.fleet_size) return;
                        for (const auto& r : s.routes) {
                            int prev = 0;
                            for (const Stop& st : r) {
                                if (!st.reload_before && st.site == prev) return; // direct arcs join distinct sites
                                s.cost += st.reload_before ? inst.cost(prev, 0) + inst.cost(0, st.site)
                                                           : inst.cost(prev, st.site);
                                prev = st.site;
                            }
                            s.cost += inst.cost(prev, 0);
                        }
                        all.push_back(std::move(s));
                        return;
                    }
                    for (int kind = 0; kind < 3; ++kind) {
                        gap[static_cast<std::size_t>(g)] = kind;
                        gaps(g + 1);
                    }
                };
                gaps(1);
            } while (std::next_permutation(visits.begin(), visits.end()));
            return;
        }
        for (int c = 1; c <= max_visits[static_cast<std::size_t>(i)]; ++c) {
            counts[static_cast<std::size_t>(i)] = c;
            by_counts(i + 1);
        }
    };
    by_counts(1);

    std::stable_sort(all.begin(), all.end(), [](const Structure& a, const Structure& b) { return a.cost < b.cost; });
    Result res;
    for (const Structure& s : all) {
        ++res.structures;
        // A customer's stays on different routes may interleave in any order.
        std::vector<std::vector<std::pair<int, int>>> order(static_cast<std::size_t>(n + 1));
        for (int r = 0; r < static_cast<int>(s.routes.size()); ++r)
            for (int p = 0; p < static_cast<int>(s.routes[static_cast<std::size_t>(r)].size()); ++p)
                order[static_cast<std::size_t>(s.routes[static_cast<std::size_t>(r)][static_cast<std::size_t>(p)].site)]
                    .push_back({r, p});
        for (auto& o : order) std::sort(o.begin(), o.end());
        std::function<bool(int)> try_orders = [&](int i) -> bool {
            if (i > n) return timing_feasible(inst, s, order);
            auto& o = order[static_cast<std::size_t>(i)];
            std::sort(o.begin(), o.end());
            do {
                if (try_orders(i + 1)) return true;
            } while (std::next_permutation(o.begin(), o.end()));
            return false;
        };
        if (try_orders(1)) {
            res.feasible = true;
            res.cost = s.cost;
            return res;
        }
    }
    return res;
}

} // namespace oracle
