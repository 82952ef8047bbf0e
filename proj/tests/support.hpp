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

#pragma once

// Shared helpers for the test binaries: fixture loading, random instances and
// brute-force reference implementations that do not reuse the library's
// enumeration or evaluation code.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "balclust/indices.hpp"
#include "balclust/instance.hpp"
#include "balclust/io.hpp"
#include "balclust/multiset.hpp"
#include "balclust/optimization.hpp"
#include "balclust/team.hpp"

namespace testing {

using namespace balclust;

inline std::filesystem::path fixture(const std::string& name) {
    return std::filesystem::path(BALCLUST_FIXTURE_DIR) / name;
}

inline Instance load(const std::string& name) { return load_instance(fixture(name)); }

inline const ClusteringSolution& named(const Instance& inst, const std::string& name) {
    const auto* s = inst.find_solution(name);
    if (!s) throw std::runtime_error("fixture has no solution " + name);
    return *s;
}

/// 1-based ids to a solution, in the given cluster order.
inline ClusteringSolution from_ids(std::vector<std::vector<int>> ids) {
    std::vector<std::vector<ElementId>> c;
    for (auto& cl : ids) {
        c.emplace_back();
        for (int e : cl) c.back().push_back(e - 1);
    }
    return ClusteringSolution::from_partition(std::move(c));
}

/// Every partition of {0..n-1}: the block of the smallest unplaced element
/// is chosen as that element plus any subset of the remaining ones.
inline void all_partitions(std::vector<int> rest, std::vector<std::vector<ElementId>>& acc,
                           const std::function<void(const std::vector<std::vector<ElementId>>&)>& f) {
    if (rest.empty()) {
        f(acc);
        return;
    }
    const int head = rest.front();
    const std::vector<int> tail(rest.begin() + 1, rest.end());
    const std::uint32_t subsets = 1u << tail.size();
    for (std::uint32_t mask = 0; mask < subsets; ++mask) {
        std::vector<ElementId> block{head};
        std::vector<int> left;
        for (std::size_t i = 0; i < tail.size(); ++i) {
            if (mask >> i & 1u) {
                block.push_back(tail[i]);
            } else {
                left.push_back(tail[i]);
            }
        }
        acc.push_back(std::move(block));
        all_partitions(std::move(left), acc, f);
        acc.pop_back();
    }
}

inline std::vector<ClusteringSolution> brute_partitions(int n) {
    std::vector<int> ids(n);
    for (int i = 0; i < n; ++i) ids[i] = i;
    std::vector<ClusteringSolution> out;
    std::vector<std::vector<ElementId>> acc;
    all_partitions(ids, acc, [&](const auto& p) {
        out.push_back(ClusteringSolution::from_partition(p).canonical());
    });
    return out;
}

/// Selector value from cluster summaries and pairwise proximities.
inline std::optional<double> oracle_value(const Instance& inst, const ClusteringSolution& sol,
                                          const IndexSelector& sel,
                                          const std::optional<ReferenceParams>& ref) {
    const auto sums = summarize_clusters(inst, sol);
    std::vector<double> v;
    double target = 0.0;
    switch (sel.index) {
        case IndexKind::Card:
            for (const auto& s : sums) v.push_back(s.size);
            if (ref) target = ref->size;
            break;
        case IndexKind::Weight:
            for (const auto& s : sums) v.push_back(s.total_weight);
            if (ref) target = ref->weight;
            break;
        case IndexKind::Edge:
            for (const auto& s : sums) v.push_back(s.intra_edge_weight);
            if (ref) target = ref->edge_weight;
            break;
        case IndexKind::Struct: {
            int best = 0;
            if (sel.method == Method::Diff) {
                for (const auto& a : sums) {
                    for (const auto& b : sums) best = std::max(best, proximity(a.estimate, b.estimate));
                }
                return best;
            }
            if (sel.method != Method::Ref || !ref) return std::nullopt;
            MultisetEstimate r;
            try {
                r = ref->estimate.repadded(sol.max_cluster_size());
            } catch (const std::invalid_argument&) {
                return std::nullopt;
            }
            for (const auto& a : sums) best = std::max(best, proximity(a.estimate, r));
            return best;
        }
        case IndexKind::Skill:
            if (!inst.team() || sel.method == Method::Ref) return std::nullopt;
            for (const auto& c : sol.clusters()) {
                v.push_back(team_skill(*inst.team(), c).at(sel.component));
            }
            break;
    }
    if (sel.method == Method::Ref && !ref) return std::nullopt;
    const double lo = *std::min_element(v.begin(), v.end());
    const double hi = *std::max_element(v.begin(), v.end());
    double dev = 0.0;
    for (double x : v) dev = std::max(dev, std::abs(x - target));
    switch (sel.method) {
        case Method::Diff: return hi - lo;
        case Method::Ref: return dev;
        case Method::Min: return lo;
        case Method::Max: return hi;
    }
    return std::nullopt;
}

inline bool oracle_feasible(const Instance& inst, const ClusteringSolution& sol,
                            const ProblemSpec& spec) {
    const int k = sol.cluster_count();
    if (spec.cluster_count && k != *spec.cluster_count) return false;
    if (spec.cluster_count_max && k > *spec.cluster_count_max) return false;
    if (spec.size_min && sol.min_cluster_size() < *spec.size_min) return false;
    if (spec.size_max && sol.max_cluster_size() > *spec.size_max) return false;
    for (const auto& b : spec.constraints) {
        const auto v = oracle_value(inst, sol, b.selector, spec.reference);
        if (!v) return false;
        if (b.upper && *v > *b.upper + 1e-9) return false;
        if (b.lower && *v < *b.lower - 1e-9) return false;
    }
    for (const auto& t : spec.objectives) {
        if (!oracle_value(inst, sol, t.selector, spec.reference)) return false;
    }
    if (inst.team()) {
        for (const auto& c : sol.clusters()) {
            if (spec.skill_floor && !skill_covers(team_skill(*inst.team(), c), *spec.skill_floor)) {
                return false;
            }
            if (!spec.forbid_zero_pairs) continue;
            for (std::size_t i = 0; i < c.size(); ++i) {
                for (std::size_t j = i + 1; j < c.size(); ++j) {
                    if (inst.team()->compatibility[c[i]][c[j]] == 0) return false;
                }
            }
        }
    }
    return true;
}

/// Signed values so that smaller is better for every term.
inline std::vector<double> oracle_keys(const Instance& inst, const ClusteringSolution& sol,
                                       const ProblemSpec& spec) {
    std::vector<double> k;
    for (const auto& t : spec.objectives) {
        const double v = *oracle_value(inst, sol, t.selector, spec.reference);
        k.push_back(t.direction == Direction::Minimize ? v : -v);
    }
    return k;
}

inline bool oracle_dominates(const std::vector<double>& a, const std::vector<double>& b) {
    bool strict = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i] + 1e-9) return false;
        if (a[i] < b[i] - 1e-9) strict = true;
    }
    return strict;
}

/// Random instance: n elements, up to three types, one-decimal weights,
/// about half of all pairs joined.
inline Instance random_instance(std::mt19937& rng, int n, bool with_team = false) {
    std::uniform_int_distribution<int> type(1, 3), tenth(1, 50), coin(0, 1), grade(0, 3);
    std::vector<Element> el;
    for (int i = 0; i < n; ++i) el.push_back({tenth(rng) / 10.0, type(rng)});
    WeightedGraph g(n);
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            if (coin(rng)) g.add_edge(a, b, tenth(rng) / 10.0, "edges");
        }
    }
    Instance inst(std::move(el), std::move(g), 3);
    if (with_team) {
        TeamData t;
        t.criteria.assign(n, std::vector<int>(3, 0));
        for (auto& row : t.criteria) {
            for (int& x : row) x = grade(rng);
            row[0] = std::max(row[0], 1);
        }
        t.compatibility.assign(n, std::vector<int>(n, 0));
        for (int a = 0; a < n; ++a) {
            for (int b = a + 1; b < n; ++b) {
                t.compatibility[a][b] = t.compatibility[b][a] = grade(rng);
            }
        }
        inst.set_team(std::move(t));
    }
    return inst;
}

}  // namespace testing
