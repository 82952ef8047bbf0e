// Copyright 2026 The balclust Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <queue>
#include <random>
#include <sstream>

#include "balclust/cli.hpp"
#include "support.hpp"

using namespace balclust;

namespace {

/// Collects mismatches for one criterion.
class Check {
 public:
    void eq(const std::string& what, double got, double want, double tol = 0.0) {
        if (std::abs(got - want) > tol + 1e-12) {
            std::ostringstream os;
            os << what << " = " << got << ", expected " << want;
            fails_.push_back(os.str());
        }
    }
    void ok(const std::string& what, bool cond) {
        if (!cond) fails_.push_back(what);
    }
    bool passed() const { return fails_.empty(); }
    std::string detail() const {
        std::string s;
        for (std::size_t i = 0; i < fails_.size() && i < 3; ++i) s += (i ? "; " : "") + fails_[i];
        if (fails_.size() > 3) s += "; +" + std::to_string(fails_.size() - 3) + " more";
        return s;
    }

 private:
    std::vector<std::string> fails_;
};

constexpr double kTol = 1e-9;

void proximity_tables(Check& c) {
    auto compare = [&](const char* tag, const Instance& inst, const ClusteringSolution& sol,
                       const std::vector<std::vector<int>>& want) {
        const auto got = proximity_matrix(summarize_clusters(inst, sol));
        for (std::size_t i = 0; i < want.size(); ++i) {
            for (std::size_t j = 0; j < want.size(); ++j) {
                c.eq(std::string(tag) + "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")",
                     got[i][j], want[i][j]);
            }
        }
    };
    const auto fig4 = testing::load("fig4.json");
    // Row 5, column 3 uses the value printed in row 3.
    compare("fig4", fig4, testing::named(fig4, "x"),
            {{0, 0, 1, 0, 1, 4, 3},
             {0, 0, 1, 0, 1, 4, 3},
             {1, 1, 0, 1, 2, 3, 2},
             {0, 0, 1, 0, 1, 4, 3},
             {1, 1, 2, 1, 0, 5, 4},
             {4, 4, 3, 4, 5, 0, 1},
             {3, 3, 2, 3, 4, 1, 0}});
    const auto fig10 = testing::load("fig10.json");
    // Cell (1,2) follows from e(X1) = e(X3) and d(X3,X2) = 3.
    compare("xprime", fig10, testing::named(fig10, "xprime"),
            {{0, 3, 0, 1}, {3, 0, 3, 4}, {0, 3, 0, 1}, {1, 4, 1, 0}});
    compare("xdprime", fig10, testing::named(fig10, "xdprime"),
            {{0, 5, 2, 1}, {5, 0, 3, 6}, {2, 3, 0, 3}, {1, 6, 3, 0}});
}

void fig4_indices(Check& c) {
    const auto inst = testing::load("fig4.json");
    const auto& x = testing::named(inst, "x");
    const auto sums = summarize_clusters(inst, x);
    const ReferenceParams ref{static_cast<double>(sums[0].size), sums[0].total_weight,
                              sums[0].intra_edge_weight, sums[0].estimate};
    const auto r = evaluate_indices(inst, x, ref);
    c.eq("B^c", r.b_card, 3);
    c.eq("B^s", r.b_struct, 5);
    c.eq("ref B^c", r.ref->card, 2);
    c.eq("ref B^s", r.ref->structure, 4);
}

void summary_rows(Check& c, const std::vector<ClusterSummary>& got,
                  const std::vector<std::tuple<int, double, double, std::vector<int>>>& want) {
    for (std::size_t i = 0; i < want.size(); ++i) {
        const auto tag = "X" + std::to_string(i + 1);
        c.eq(tag + " size", got[i].size, std::get<0>(want[i]));
        c.eq(tag + " weight", got[i].total_weight, std::get<1>(want[i]), kTol);
        c.eq(tag + " intra", got[i].intra_edge_weight, std::get<2>(want[i]), kTol);
        c.ok(tag + " estimate", got[i].estimate == MultisetEstimate(std::get<3>(want[i])));
    }
}

void xprime(Check& c) {
    const auto inst = testing::load("fig10.json");
    const auto& x = testing::named(inst, "xprime");
    const auto r = evaluate_indices(inst, x, load_reference(testing::fixture("ref_xprime.json")));
    c.eq("B^c", r.b_card, 1);
    c.eq("B^w", r.b_weight, 6.7, kTol);
    c.eq("B^v", r.b_edge, 13.6, kTol);
    c.eq("B^s", r.b_struct, 4);
    c.eq("ref B^c", r.ref->card, 1);
    c.eq("ref B^w", r.ref->weight, 4.7, kTol);
    c.eq("ref B^v", r.ref->edge, 7.3, kTol);
    c.eq("ref B^s", r.ref->structure, 2);
    summary_rows(c, summarize_clusters(inst, x),
                 {{4, 12.6, 21.3, {1, 2, 1, 0}},
                  {3, 7.3, 7.7, {1, 0, 2, 1}},
                  {4, 12.3, 14.3, {1, 2, 1, 0}},
                  {4, 14.0, 20.4, {2, 1, 1, 0}}});
}

void xdprime(Check& c) {
    const auto inst = testing::load("fig10.json");
    const auto& x = testing::named(inst, "xdprime");
    const auto r = evaluate_indices(inst, x, load_reference(testing::fixture("ref_xdprime.json")));
    c.eq("B^c", r.b_card, 3);
    c.eq("B^w", r.b_weight, 9.6, kTol);
    c.eq("B^v", r.b_edge, 24.6, kTol);
    c.eq("B^s", r.b_struct, 6);
    c.eq("ref B^c", r.ref->card, 2);
    c.eq("ref B^w", r.ref->weight, 6.7, kTol);
    c.eq("ref B^v", r.ref->edge, 13.7, kTol);
    c.eq("ref B^s", r.ref->structure, 4);
    summary_rows(c, summarize_clusters(inst, x),
                 {{5, 14.6, 27.2, {1, 2, 2, 0}},
                  {2, 5.3, 4.1, {1, 0, 1, 3}},
                  {3, 11.4, 12.5, {1, 2, 0, 2}},
                  {5, 14.9, 28.7, {2, 1, 2, 0}}});
}

TeamSpec students_spec() {
    return parse_team_spec(read_file(testing::fixture("students_team.json")));
}

void team_evaluation(Check& c) {
    const auto inst = testing::load("students.json");
    const auto r = evaluate_teams(inst, testing::named(inst, "published"), students_spec());
    const std::vector<int> compat{8, 8, 8, 15};
    const std::vector<std::vector<int>> skill{{2, 2, 3, 3}, {2, 3, 3, 2}, {3, 3, 3, 3}, {3, 3, 3, 3}};
    c.eq("teams", r.teams.size(), 4);
    for (std::size_t i = 0; i < r.teams.size() && i < 4; ++i) {
        const auto tag = "X" + std::to_string(i + 1);
        c.eq(tag + " eps", r.teams[i].compat, compat[i]);
        c.ok(tag + " skill", r.teams[i].skill == skill[i]);
        c.ok(tag + " checks", r.teams[i].size_ok && r.teams[i].skill_ok && r.teams[i].zero_pair_free);
    }
    c.eq("B^c", r.b_card, 1);
    c.eq("B^v", r.b_compat, 7);
    c.ok("feasible", r.feasible);
}

void exact_at_desk_scale(Check& c) {
    const auto start = std::chrono::steady_clock::now();
    const auto raw = testing::load("students.json");
    const auto inst = with_compatibility_graph(raw);
    PartitionRange range;
    range.lambda_min = range.lambda_max = 4;
    range.size_min = 3;
    range.size_max = 4;
    const auto& published = testing::named(inst, "published");
    int min_card = 1 << 30;
    bool seen = false;
    const auto spec = students_spec();
    ProblemSpec feasibility = to_problem_spec(spec, {});
    const auto count = enumerate_partitions(inst.size(), range, [&](const ClusteringSolution& s) {
        min_card = std::min(min_card, s.max_cluster_size() - s.min_cluster_size());
        if (s == published) seen = check_feasible(inst, s, feasibility).feasible;
        return true;
    });
    c.eq("partitions", static_cast<double>(count), 200200);
    c.eq("min B^c", min_card, 1);
    c.ok("published solution feasible and enumerated", seen);

    ProblemSpec pareto = to_problem_spec(
            spec, {{{IndexKind::Card, Method::Diff, 0}, Direction::Minimize},
                   {{IndexKind::Edge, Method::Min, 0}, Direction::Maximize}});
    pareto.cluster_count = 4;
    const auto front = solve_pareto(inst, pareto);
    bool hit = false;
    for (const auto& p : front.front) {
        hit = hit || (p.objective.values[0] == 1.0 && p.objective.values[1] >= 8.0);
    }
    c.ok("front has B^c=1 with min eps >= 8", hit);
    const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.ok("under 60 s", secs < 60.0);
}

void kernel_heuristic_run(Check& c) {
    const auto inst = testing::load("students.json");
    const auto spec = students_spec();
    const auto run = kernel_heuristic(inst, spec);
    c.ok("kernels {1,3,6,9}", run.kernels == std::vector<ElementId>{0, 2, 5, 8});
    const auto r = evaluate_teams(inst, run.solution, spec);
    c.ok("feasible", r.feasible);
    c.eq("B^c", r.b_card, 1);
    c.ok("min eps >= 8", r.min_compat >= 8);
}

// ---- criterion 8: property suites, each in a compact form ----

void property_suites(Check& c) {
    using E = MultisetEstimate;
    // Metric axioms.
    const auto s47 = enumerate_scale(4, 7);
    std::mt19937 rng(4);
    std::uniform_int_distribution<std::size_t> pick(0, s47.size() - 1);
    bool metric = true;
    for (int i = 0; i < 1000; ++i) {
        const E& a = s47[pick(rng)].estimate;
        const E& b = s47[pick(rng)].estimate;
        const E& d = s47[pick(rng)].estimate;
        metric = metric && ((proximity(a, b) == 0) == (a == b)) && proximity(a, b) == proximity(b, a) &&
                 proximity(a, d) <= proximity(a, b) + proximity(b, d);
    }
    c.ok("metric axioms", metric);

    // Prefix-sum formula against breadth-first search on the Hasse diagram.
    bool hasse = true;
    for (int n : {4, 7}) {
        const auto s = enumerate_scale(4, n);
        for (std::size_t from = 0; from < s.size(); ++from) {
            std::vector<int> dist(s.size(), -1);
            std::queue<int> q;
            dist[from] = 0;
            q.push(static_cast<int>(from));
            while (!q.empty()) {
                const int u = q.front();
                q.pop();
                for (const auto* nb : {&s[u].up, &s[u].down}) {
                    for (int v : *nb) {
                        if (dist[v] < 0) {
                            dist[v] = dist[u] + 1;
                            q.push(v);
                        }
                    }
                }
            }
            for (std::size_t to = 0; to < s.size(); ++to) {
                hasse = hasse && proximity(s[from].estimate, s[to].estimate) == dist[to];
            }
        }
    }
    c.ok("proximity equals Hasse distance", hasse);

    // Stirling numbers.
    bool stirling = true;
    std::vector<std::vector<double>> st(9, std::vector<double>(9, 0.0));
    st[0][0] = 1;
    for (int n = 1; n <= 8; ++n) {
        for (int k = 1; k <= n; ++k) {
            st[n][k] = k * st[n - 1][k] + st[n - 1][k - 1];
            PartitionRange r;
            r.lambda_min = r.lambda_max = k;
            stirling = stirling && static_cast<double>(enumerate_partitions(
                                           n, r, [](const ClusteringSolution&) { return true; })) == st[n][k];
        }
    }
    c.ok("Stirling counts", stirling);

    // Solvers against brute force on 50 random instances.
    bool exact_ok = true, pareto_ok = true;
    for (int round = 0; round < 50; ++round) {
        const int n = std::uniform_int_distribution<int>(3, 8)(rng);
        const auto inst = testing::random_instance(rng, n);
        ProblemSpec spec;
        spec.reference = ReferenceParams{2, 3.0, 1.0, E({0, 1, 1, 0})};
        const IndexKind kinds[] = {IndexKind::Card, IndexKind::Weight, IndexKind::Edge, IndexKind::Struct};
        const IndexSelector first{kinds[round % 4], round % 2 ? Method::Ref : Method::Diff, 0};
        const IndexSelector second{kinds[(round + 1) % 4], Method::Diff, 0};
        spec.objectives = {{first, Direction::Minimize}};
        spec.cluster_count_max = 3;
        spec.constraints.push_back({{IndexKind::Card, Method::Diff, 0}, std::nullopt, 2.0});

        std::vector<ClusteringSolution> feasible;
        for (auto& p : testing::brute_partitions(n)) {
            if (testing::oracle_feasible(inst, p, spec)) feasible.push_back(std::move(p));
        }
        double best = 1e18;
        for (const auto& p : feasible) best = std::min(best, testing::oracle_keys(inst, p, spec)[0]);
        const auto r = solve_exact(inst, spec);
        exact_ok = exact_ok && (r.infeasible() == feasible.empty()) &&
                   (feasible.empty() || std::abs(r.objective.values[0] - best) < 1e-9);

        spec.objectives.push_back({second, Direction::Maximize});
        std::vector<std::vector<double>> keys, front;
        for (const auto& p : feasible) {
            if (testing::oracle_value(inst, p, second, spec.reference)) keys.push_back(testing::oracle_keys(inst, p, spec));
        }
        for (const auto& k : keys) {
            bool dominated = false, repeat = false;
            for (const auto& o : keys) dominated = dominated || testing::oracle_dominates(o, k);
            for (const auto& f : front) repeat = repeat || (std::abs(f[0] - k[0]) < 1e-9 && std::abs(f[1] - k[1]) < 1e-9);
            if (!dominated && !repeat) front.push_back(k);
        }
        const auto pf = solve_pareto(inst, spec);
        bool same = pf.front.size() == front.size();
        for (const auto& p : pf.front) {
            const auto k = testing::oracle_keys(inst, p.solution, spec);
            bool found = false;
            for (const auto& f : front) found = found || (std::abs(f[0] - k[0]) < 1e-9 && std::abs(f[1] - k[1]) < 1e-9);
            same = same && found;
        }
        pareto_ok = pareto_ok && same;
    }
    c.ok("solve_exact equals brute force", exact_ok);
    c.ok("Pareto front equals naive filter", pareto_ok);

    // Local search is monotone.
    bool monotone = true;
    for (int round = 0; round < 20; ++round) {
        const auto inst = testing::random_instance(rng, 8);
        ProblemSpec spec;
        spec.objectives = {{{IndexKind::Weight, Method::Diff, 0}, Direction::Minimize}};
        const auto parts = testing::brute_partitions(8);
        const auto& start = parts[std::uniform_int_distribution<std::size_t>(0, parts.size() - 1)(rng)];
        LocalSearchTrace trace;
        const auto out = local_search_improve(inst, start, spec, 2000, &trace);
        for (std::size_t i = 1; i < trace.objective.size(); ++i) {
            monotone = monotone && trace.objective[i] <= trace.objective[i - 1];
        }
        monotone = monotone && evaluate_objectives(inst, out, spec).values[0] <=
                                       evaluate_objectives(inst, start, spec).values[0];
    }
    c.ok("local search never increases the objective", monotone);

    // Worker count does not change JSON output.
    auto json_for = [](const char* workers) {
        std::ostringstream out, err;
        run_cli({"pareto", testing::fixture("fig10.json").string(),
                 testing::fixture("problem6.json").string(), "--json", "--workers", workers},
                out, err);
        return out.str();
    };
    const auto one = json_for("1");
    c.ok("--workers leaves JSON byte-identical", !one.empty() && one == json_for("4"));
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
            {"proximity tables", proximity_tables},
            {"fig4 indices", fig4_indices},
            {"fig10 solution xprime", xprime},
            {"fig10 solution xdprime", xdprime},
            {"team evaluation", team_evaluation},
            {"exact solver at desk scale", exact_at_desk_scale},
            {"kernel heuristic", kernel_heuristic_run},
            {"property suites", property_suites},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check c;
        try {
            criteria[i].second(c);
        } catch (const std::exception& e) {
            c.ok(std::string("exception: ") + e.what(), false);
        }
        std::cout << (c.passed() ? "PASS" : "FAIL") << "  " << i + 1 << ". " << criteria[i].first;
        if (!c.passed()) {
            ++failed;
            std::cout << "  (" << c.detail() << ")";
        }
        std::cout << '\n';
    }
    std::cout << criteria.size() - failed << "/" << criteria.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
