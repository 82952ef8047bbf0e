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

#include <doctest.h>

#include <random>
#include <set>

#include "support.hpp"

using namespace balclust;
using doctest::Approx;

namespace {

double stirling2(int n, int k) {
    std::vector<std::vector<double>> s(n + 1, std::vector<double>(n + 1, 0.0));
    s[0][0] = 1.0;
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= i; ++j) s[i][j] = j * s[i - 1][j] + s[i - 1][j - 1];
    }
    return s[n][k];
}

IndexSelector sel(IndexKind k, Method m, int component = 0) { return {k, m, component}; }

ObjectiveTerm minimize(IndexKind k, Method m) { return {sel(k, m), Direction::Minimize}; }

/// A random small problem: one or two objectives, a few bounds and windows.
ProblemSpec random_spec(std::mt19937& rng, const Instance& inst, int objectives) {
    std::uniform_int_distribution<int> d4(0, 3), d2(0, 1), d6(0, 5);
    ProblemSpec spec;
    spec.reference = ReferenceParams{
            static_cast<double>(1 + d4(rng)), 2.0 + d4(rng), 1.0 + d4(rng),
            MultisetEstimate({d2(rng), d2(rng), d2(rng) + 1, 0})};
    const bool team = inst.team().has_value();
    auto pick = [&] {
        IndexSelector s;
        const int kinds = team ? 5 : 4;
        s.index = static_cast<IndexKind>(std::uniform_int_distribution<int>(0, kinds - 1)(rng));
        s.method = static_cast<Method>(d4(rng));
        if (s.index == IndexKind::Struct && (s.method == Method::Min || s.method == Method::Max)) {
            s.method = Method::Diff;
        }
        if (s.index == IndexKind::Skill) {
            s.method = d2(rng) ? Method::Min : Method::Diff;
            s.component = std::uniform_int_distribution<int>(0, 2)(rng);
        }
        return s;
    };
    for (int i = 0; i < objectives; ++i) {
        spec.objectives.push_back({pick(), d2(rng) ? Direction::Minimize : Direction::Maximize});
    }
    const int bounds = d4(rng);
    for (int i = 0; i < bounds; ++i) {
        IndexBound b;
        b.selector = pick();
        b.upper = 1.0 + d6(rng);
        if (d6(rng) == 0) b.lower = 0.5;
        spec.constraints.push_back(b);
    }
    switch (d4(rng)) {
        case 0: spec.cluster_count = 1 + d4(rng); break;
        case 1: spec.cluster_count_max = 2 + d4(rng); break;
        default: break;
    }
    if (d2(rng)) spec.size_min = 1 + d2(rng);
    if (d2(rng)) spec.size_max = 2 + d4(rng);
    if (spec.size_min && spec.size_max && *spec.size_min > *spec.size_max) spec.size_max = spec.size_min;
    if (team && d2(rng)) {
        spec.skill_floor = std::vector<int>{1, d2(rng), 0};
        spec.forbid_zero_pairs = d2(rng);
    }
    return spec;
}

/// Feasible solutions of `spec` in canonical order, by brute force.
std::vector<ClusteringSolution> brute_feasible(const Instance& inst, const ProblemSpec& spec) {
    auto all = testing::brute_partitions(inst.size());
    std::sort(all.begin(), all.end(), [&](const auto& a, const auto& b) {
        return a.labels(inst.size()) < b.labels(inst.size());
    });
    std::vector<ClusteringSolution> out;
    for (auto& s : all) {
        if (testing::oracle_feasible(inst, s, spec)) out.push_back(std::move(s));
    }
    return out;
}

}  // namespace

TEST_CASE("partition counts match Stirling numbers") {
    for (int n = 1; n <= 8; ++n) {
        for (int k = 1; k <= n; ++k) {
            PartitionRange r;
            r.lambda_min = r.lambda_max = k;
            const auto visited = enumerate_partitions(n, r, [](const ClusteringSolution&) { return true; });
            REQUIRE(static_cast<double>(visited) == stirling2(n, k));
            REQUIRE(count_partitions(n, r) == stirling2(n, k));
        }
    }
    PartitionRange r;
    r.lambda_min = r.lambda_max = 2;
    CHECK(enumerate_partitions(4, r, [](const ClusteringSolution&) { return true; }) == 7);
    r.lambda_min = r.lambda_max = 3;
    CHECK(enumerate_partitions(3, r, [](const ClusteringSolution&) { return true; }) == 1);
}

TEST_CASE("enumeration matches brute force with size windows and spread") {
    for (int n = 1; n <= 8; ++n) {
        const auto all = testing::brute_partitions(n);
        for (int smin = 1; smin <= 3; ++smin) {
            for (int smax = smin; smax <= 4; ++smax) {
                for (int spread : {-1, 0, 1, 2}) {
                    PartitionRange r;
                    r.lambda_min = 1;
                    r.lambda_max = 4;
                    r.size_min = smin;
                    r.size_max = smax;
                    r.max_spread = spread;
                    std::set<std::vector<std::vector<ElementId>>> expected;
                    for (const auto& p : all) {
                        const int lo = p.min_cluster_size(), hi = p.max_cluster_size();
                        if (p.cluster_count() <= 4 && lo >= smin && hi <= smax &&
                            (spread < 0 || hi - lo <= spread)) {
                            expected.insert(p.clusters());
                        }
                    }
                    std::vector<std::vector<int>> seen;
                    std::set<std::vector<std::vector<ElementId>>> got;
                    enumerate_partitions(n, r, [&](const ClusteringSolution& s) {
                        got.insert(s.clusters());
                        CHECK(s.canonical().clusters() == s.clusters());
                        seen.push_back(s.labels(n));
                        return true;
                    });
                    REQUIRE(got == expected);
                    REQUIRE(seen.size() == expected.size());
                    REQUIRE(std::is_sorted(seen.begin(), seen.end()));
                    REQUIRE(count_partitions(n, r) == static_cast<double>(expected.size()));
                }
            }
        }
    }
}

TEST_CASE("thirteen elements in four clusters of three or four") {
    PartitionRange r;
    r.lambda_min = r.lambda_max = 4;
    r.size_min = 3;
    r.size_max = 4;
    CHECK(count_partitions(13, r) == 200200.0);
    CHECK(enumerate_partitions(13, r, [](const ClusteringSolution&) { return true; }) == 200200);
}

TEST_CASE("infeasible ranges give an empty stream") {
    PartitionRange r;
    r.lambda_min = r.lambda_max = 2;
    r.size_min = 4;
    CHECK(enumerate_partitions(5, r, [](const ClusteringSolution&) { return true; }) == 0);
    CHECK(count_partitions(5, r) == 0.0);
}

TEST_CASE("feasibility checks") {
    const auto inst = testing::load("fig10.json");
    ProblemSpec spec;
    spec.constraints.push_back({sel(IndexKind::Card, Method::Diff), std::nullopt, 1.0});
    spec.cluster_count_max = 4;
    CHECK(check_feasible(inst, testing::named(inst, "xprime"), spec).feasible);
    const auto bad = check_feasible(inst, testing::named(inst, "xdprime"), spec);
    CHECK_FALSE(bad.feasible);
    REQUIRE(bad.violations.size() == 1);
    CHECK(bad.violations[0].value == 3.0);
    CHECK(check_feasible(inst, testing::named(inst, "xdprime"), ProblemSpec{}).feasible);
}

TEST_CASE("selector values agree with the index module") {
    const auto inst = testing::load("fig10.json");
    const ReferenceParams ref{4, 12.0, 15.0, MultisetEstimate({1, 1, 3, 0})};
    const auto& xd = testing::named(inst, "xdprime");
    CHECK(*evaluate_selector(inst, xd, sel(IndexKind::Weight, Method::Diff), ref) == Approx(9.6));
    CHECK(*evaluate_selector(inst, xd, sel(IndexKind::Edge, Method::Ref), ref) == Approx(13.7));
    CHECK(*evaluate_selector(inst, xd, sel(IndexKind::Struct, Method::Ref), ref) == 4);
    CHECK(*evaluate_selector(inst, xd, sel(IndexKind::Struct, Method::Diff), ref) == 6);
    CHECK(*evaluate_selector(inst, xd, sel(IndexKind::Weight, Method::Min), ref) == Approx(5.3));
    // A reference with five typed elements does not fit a scale of size four.
    const ReferenceParams wide{4, 12.0, 15.0, MultisetEstimate({2, 1, 2, 0})};
    CHECK_FALSE(evaluate_selector(inst, testing::named(inst, "xprime"),
                                  sel(IndexKind::Struct, Method::Ref), wide));
}

TEST_CASE("exact solver on small fixed cases") {
    const auto inst = parse_instance(R"({"type_count":1,"elements":[
        {"id":1,"weight":1,"type":1},{"id":2,"weight":1,"type":1},
        {"id":3,"weight":1,"type":1},{"id":4,"weight":1,"type":1}]})");
    ProblemSpec spec;
    spec.objectives = {minimize(IndexKind::Card, Method::Diff)};
    spec.cluster_count = 2;
    spec.size_min = spec.size_max = 2;
    const auto r = solve_exact(inst, spec);
    REQUIRE(r.solution);
    CHECK(r.objective.values[0] == 0.0);
    CHECK(r.solution->clusters() == testing::from_ids({{1, 2}, {3, 4}}).clusters());

    spec.size_min = spec.size_max = 3;
    CHECK(solve_exact(inst, spec).infeasible());
}

TEST_CASE("students: minimum cardinality spread is one") {
    const auto inst = testing::load("students.json");
    ProblemSpec spec;
    spec.objectives = {minimize(IndexKind::Card, Method::Diff)};
    spec.size_min = 3;
    spec.size_max = 4;
    const auto r = solve_exact(inst, spec);
    REQUIRE(r.solution);
    CHECK(r.objective.values[0] == 1.0);
}

TEST_CASE("problem three shape matches brute force") {
    const auto inst = testing::load("fig10.json");
    const auto spec = parse_problem_spec(read_file(testing::fixture("problem3.json")));
    const auto r = solve_exact(inst, spec);
    REQUIRE(r.solution);
    // Weight spreads are never negative, so zero is optimal when reached.
    CHECK(r.objective.values[0] == 0.0);
    CHECK(testing::oracle_feasible(inst, *r.solution, spec));
    CHECK(*testing::oracle_value(inst, *r.solution, spec.objectives[0].selector, spec.reference) == 0.0);

    // Same shape on the first eight elements, against full enumeration.
    std::vector<Element> el(inst.elements().begin(), inst.elements().begin() + 8);
    WeightedGraph g(8);
    for (const auto& e : inst.graph().edges()) {
        if (e.a < 8 && e.b < 8) g.add_edge(e.a, e.b, e.weight);
    }
    const Instance small(el, g, 3);
    auto fixed = spec;
    fixed.cluster_count = 3;
    const auto best = solve_exact(small, fixed);
    double oracle = 1e18;
    for (const auto& s : brute_feasible(small, fixed)) {
        oracle = std::min(oracle, *testing::oracle_value(small, s, fixed.objectives[0].selector, std::nullopt));
    }
    REQUIRE(best.solution);
    CHECK(best.objective.values[0] == Approx(oracle).epsilon(1e-9));
}

TEST_CASE("cap guard") {
    const auto inst = testing::load("fig10.json");
    ProblemSpec spec;
    spec.objectives = {minimize(IndexKind::Card, Method::Diff)};
    CHECK_THROWS_AS(solve_exact(inst, spec), CapExceeded);
    SolveOptions small;
    small.cap = 10;
    spec.cluster_count = 4;
    CHECK_THROWS_AS(solve_pareto(inst, spec, small), CapExceeded);
}

TEST_CASE("exact and Pareto solvers agree with brute force on random instances") {
    std::mt19937 rng(1811);
    int nontrivial = 0;
    for (int round = 0; round < 50; ++round) {
        const int n = std::uniform_int_distribution<int>(3, 8)(rng);
        const auto inst = testing::random_instance(rng, n, round % 3 == 0);
        const auto spec1 = random_spec(rng, inst, 1);
        const auto feasible1 = brute_feasible(inst, spec1);
        const auto exact = solve_exact(inst, spec1);
        REQUIRE(exact.infeasible() == feasible1.empty());
        if (!feasible1.empty()) {
            ++nontrivial;
            // First optimum in canonical order.
            std::optional<ClusteringSolution> first;
            std::vector<double> best;
            for (const auto& s : feasible1) {
                const auto k = testing::oracle_keys(inst, s, spec1);
                if (!first || k[0] < best[0] - 1e-9) {
                    first = s;
                    best = k;
                }
            }
            CHECK(exact.solution->clusters() == first->clusters());
            const double v = spec1.objectives[0].direction == Direction::Minimize ? best[0] : -best[0];
            CHECK(exact.objective.values[0] == Approx(v).epsilon(1e-9));
        }
        CHECK(exact.stats.feasible == feasible1.size());

        const auto spec2 = random_spec(rng, inst, 2);
        const auto feasible2 = brute_feasible(inst, spec2);
        std::vector<std::vector<double>> keys;
        for (const auto& s : feasible2) keys.push_back(testing::oracle_keys(inst, s, spec2));
        // Naive filter: nondominated, first representative per distinct vector.
        std::vector<std::vector<double>> front;
        std::vector<ClusteringSolution> reps;
        for (std::size_t i = 0; i < keys.size(); ++i) {
            bool dominated = false;
            for (const auto& other : keys) dominated = dominated || testing::oracle_dominates(other, keys[i]);
            bool repeat = false;
            for (const auto& f : front) {
                repeat = repeat || (std::abs(f[0] - keys[i][0]) < 1e-9 && std::abs(f[1] - keys[i][1]) < 1e-9);
            }
            if (!dominated && !repeat) {
                front.push_back(keys[i]);
                reps.push_back(feasible2[i]);
            }
        }
        const auto pareto = solve_pareto(inst, spec2);
        REQUIRE(pareto.front.size() == front.size());
        for (const auto& p : pareto.front) {
            const auto k = testing::oracle_keys(inst, p.solution, spec2);
            bool found = false;
            for (std::size_t i = 0; i < front.size(); ++i) {
                if (std::abs(front[i][0] - k[0]) < 1e-9 && std::abs(front[i][1] - k[1]) < 1e-9) {
                    found = true;
                    CHECK(p.solution.clusters() == reps[i].clusters());
                }
            }
            CHECK(found);
            for (const auto& q : pareto.front) {
                CHECK_FALSE(dominates(objective_keys(spec2, q.objective), objective_keys(spec2, p.objective)));
            }
        }
    }
    CHECK(nontrivial >= 20);
}

TEST_CASE("worker count does not change results") {
    const auto inst = testing::load("fig10.json");
    const auto spec = parse_problem_spec(read_file(testing::fixture("problem6.json")));
    SolveOptions one, four;
    four.workers = 4;
    const auto a = solve_pareto(inst, spec, one);
    const auto b = solve_pareto(inst, spec, four);
    REQUIRE(a.front.size() == b.front.size());
    for (std::size_t i = 0; i < a.front.size(); ++i) {
        CHECK(a.front[i].solution.clusters() == b.front[i].solution.clusters());
        CHECK(a.front[i].objective == b.front[i].objective);
    }
    CHECK(a.stats.enumerated == b.stats.enumerated);
}

TEST_CASE("local search") {
    const auto inst = testing::load("fig10.json");
    ProblemSpec spec;
    spec.objectives = {minimize(IndexKind::Weight, Method::Diff)};
    LocalSearchTrace trace;
    const auto& start = testing::named(inst, "xdprime");
    const auto out = local_search_improve(inst, start, spec, 100000, &trace);
    CHECK(evaluate_objectives(inst, out, spec).values[0] <= 9.6 + 1e-9);
    REQUIRE(!trace.objective.empty());
    CHECK(trace.objective.front() == Approx(9.6));
    for (std::size_t i = 1; i < trace.objective.size(); ++i) {
        CHECK(trace.objective[i] < trace.objective[i - 1]);
    }

    // Already optimal start is returned unchanged.
    const auto four = parse_instance(R"({"type_count":1,"elements":[
        {"id":1,"weight":1,"type":1},{"id":2,"weight":1,"type":1},
        {"id":3,"weight":1,"type":1},{"id":4,"weight":1,"type":1}]})");
    ProblemSpec card;
    card.objectives = {minimize(IndexKind::Card, Method::Diff)};
    const auto even = testing::from_ids({{1, 2}, {3, 4}});
    CHECK(local_search_improve(four, even, card, 1000).clusters() == even.clusters());

    // Infeasible start is rejected.
    card.constraints.push_back({sel(IndexKind::Card, Method::Diff), std::nullopt, 0.0});
    CHECK_THROWS_AS(local_search_improve(four, testing::from_ids({{1}, {2, 3, 4}}), card, 10),
                    std::invalid_argument);
}

TEST_CASE("local search on random instances never worsens and stays feasible") {
    std::mt19937 rng(99);
    for (int round = 0; round < 30; ++round) {
        const auto inst = testing::random_instance(rng, 8, true);
        ProblemSpec spec;
        spec.objectives = {minimize(IndexKind::Edge, Method::Diff)};
        spec.size_min = 2;
        spec.size_max = 3;
        const auto parts = testing::brute_partitions(8);
        std::vector<ClusteringSolution> feasible;
        for (const auto& p : parts) {
            if (testing::oracle_feasible(inst, p, spec)) feasible.push_back(p);
        }
        const auto& start = feasible[std::uniform_int_distribution<std::size_t>(0, feasible.size() - 1)(rng)];
        LocalSearchTrace trace;
        const auto out = local_search_improve(inst, start, spec, 5000, &trace);
        CHECK(testing::oracle_feasible(inst, out, spec));
        CHECK(trace.evaluations <= 5000);
        double prev = *testing::oracle_value(inst, start, spec.objectives[0].selector, std::nullopt);
        for (double v : trace.objective) {
            CHECK(v <= prev + 1e-9);
            prev = v;
        }
        CHECK(*testing::oracle_value(inst, out, spec.objectives[0].selector, std::nullopt) ==
              Approx(trace.objective.back()).epsilon(1e-9));
    }
}

TEST_CASE("problem spec parsing") {
    const auto spec = parse_problem_spec(R"({"objectives":[{"index":"skill","method":"min",
        "component":2,"direction":"max"}],"constraints":[{"index":"weight","method":"diff","max":5}],
        "lambda_max":4,"size_min":3,"size_max":4})");
    CHECK(spec.objectives[0].selector.component == 1);
    CHECK(spec.objectives[0].direction == Direction::Maximize);
    CHECK(spec.constraints[0].upper == 5.0);
    CHECK(spec.cluster_count_max == 4);
    CHECK_THROWS_AS(parse_problem_spec(R"({"objectives":[{"index":"nope","method":"diff"}]})"), InputError);
    const auto inst = testing::load("fig10.json");
    CHECK_THROWS_AS(parse_problem_spec(R"({"objectives":[{"index":"card","method":"ref"}]})").validate(inst),
                    InputError);
}
