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

#include "balclust/team.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <tuple>

#include "json_util.hpp"

namespace balclust {

using json = nlohmann::ordered_json;

TeamSpec parse_team_spec(std::string_view text) {
    const json doc = detail::parse_json(text);
    if (!doc.is_object()) throw InputError("", "team spec must be a JSON object");
    TeamSpec spec;
    spec.size_min = detail::as_int(detail::require(doc, "size_min", ""), "size_min");
    spec.size_max = detail::as_int(detail::require(doc, "size_max", ""), "size_max");
    if (spec.size_min < 1) throw InputError("size_min", "must be >= 1");
    if (spec.size_max < spec.size_min) throw InputError("size_max", "must be >= size_min");
    if (doc.contains("skill_floor")) {
        const json& f = doc["skill_floor"];
        if (!f.is_array()) throw InputError("skill_floor", "expected an array of grades");
        for (std::size_t i = 0; i < f.size(); ++i) {
            const auto path = "skill_floor[" + std::to_string(i) + "]";
            const int g = detail::as_int(f[i], path);
            if (g < 0 || g > kMaxGrade) throw InputError(path, "grade must lie in 0..3");
            spec.skill_floor.push_back(g);
        }
    }
    if (doc.contains("forbid_zero_pairs")) {
        spec.forbid_zero_pairs = detail::as_bool(doc["forbid_zero_pairs"], "forbid_zero_pairs");
    }
    if (doc.contains("kernel_criteria")) {
        const json& k = doc["kernel_criteria"];
        if (!k.is_array()) throw InputError("kernel_criteria", "expected an array");
        for (std::size_t i = 0; i < k.size(); ++i) {
            spec.kernel_criteria.push_back(
                    detail::as_int(k[i], "kernel_criteria[" + std::to_string(i) + "]") - 1);
        }
    }
    return spec;
}

ProblemSpec to_problem_spec(const TeamSpec& spec, std::vector<ObjectiveTerm> objectives) {
    ProblemSpec p;
    p.objectives = std::move(objectives);
    p.size_min = spec.size_min;
    p.size_max = spec.size_max;
    if (!spec.skill_floor.empty()) p.skill_floor = spec.skill_floor;
    p.forbid_zero_pairs = spec.forbid_zero_pairs;
    return p;
}

std::vector<int> team_skill(const TeamData& data, const std::vector<ElementId>& team) {
    std::vector<int> s(data.criteria_count(), 0);
    for (ElementId e : team) {
        const auto& row = data.criteria.at(e);
        for (std::size_t k = 0; k < s.size(); ++k) s[k] = std::max(s[k], row[k]);
    }
    return s;
}

int team_compat(const TeamData& data, const std::vector<ElementId>& team) {
    int sum = 0;
    for (std::size_t i = 0; i < team.size(); ++i) {
        for (std::size_t j = i + 1; j < team.size(); ++j) {
            sum += data.compatibility.at(team[i]).at(team[j]);
        }
    }
    return sum;
}

bool skill_covers(const std::vector<int>& skill, const std::vector<int>& floor) {
    if (floor.empty()) return true;
    if (skill.size() != floor.size()) return false;
    for (std::size_t k = 0; k < floor.size(); ++k) {
        if (skill[k] < floor[k]) return false;
    }
    return true;
}

Instance with_compatibility_graph(const Instance& inst) {
    if (!inst.team()) throw InputError("compatibility", "instance carries no team data");
    const auto& compat = inst.team()->compatibility;
    WeightedGraph g(inst.size());
    for (int a = 0; a < inst.size(); ++a) {
        for (int b = a + 1; b < inst.size(); ++b) {
            if (compat[a][b] > 0) g.add_edge(a, b, compat[a][b]);
        }
    }
    Instance out(inst.elements(), std::move(g), inst.type_count());
    out.set_team(*inst.team());
    for (const auto& [name, sol] : inst.solutions()) out.add_solution(name, sol);
    return out;
}

int approximate_cluster_count(int n, int size_min, int size_max) {
    if (size_min < 1 || size_max < size_min) {
        throw HeuristicInfeasible("team size window is empty");
    }
    int lambda = std::max(1, static_cast<int>(std::lround(static_cast<double>(n) / size_max)));
    while (lambda * size_max < n) ++lambda;
    if (lambda * size_min > n) {
        throw HeuristicInfeasible("no team count fits " + std::to_string(n) +
                                  " elements into sizes [" + std::to_string(size_min) + "," +
                                  std::to_string(size_max) + "]");
    }
    return lambda;
}

std::vector<ElementId> select_kernels(const TeamData& data, const std::vector<int>& criteria,
                                      int count) {
    const int n = static_cast<int>(data.criteria.size());
    std::vector<int> cols = criteria;
    if (cols.empty()) {
        cols.resize(data.criteria_count());
        std::iota(cols.begin(), cols.end(), 0);
    }
    for (int c : cols) {
        if (c < 0 || c >= data.criteria_count()) {
            throw InputError("kernel_criteria", "criterion " + std::to_string(c + 1) + " out of range");
        }
    }
    auto grade = [&](int e, int c) { return data.criteria[e][c]; };
    auto weakly_above = [&](int a, int b) {
        bool strict = false;
        for (int c : cols) {
            if (grade(a, c) < grade(b, c)) return false;
            strict = strict || grade(a, c) > grade(b, c);
        }
        return strict;
    };
    auto sum = [&](int e) {
        int s = 0;
        for (int c : cols) s += grade(e, c);
        return s;
    };
    auto by_quality = [&](int a, int b) { return std::tuple(-sum(a), a) < std::tuple(-sum(b), b); };

    std::vector<int> front, rest;
    for (int e = 0; e < n; ++e) {
        bool dominated = false;
        for (int f = 0; f < n && !dominated; ++f) dominated = f != e && weakly_above(f, e);
        (dominated ? rest : front).push_back(e);
    }
    std::sort(front.begin(), front.end(), by_quality);
    std::sort(rest.begin(), rest.end(), by_quality);
    std::vector<ElementId> kernels(front.begin(), front.begin() + std::min<std::size_t>(count, front.size()));
    for (std::size_t i = 0; static_cast<int>(kernels.size()) < count && i < rest.size(); ++i) {
        kernels.push_back(rest[i]);
    }
    std::sort(kernels.begin(), kernels.end());
    return kernels;
}

KernelRun kernel_heuristic(const Instance& inst, const TeamSpec& spec) {
    if (!inst.team()) throw InputError("criteria", "team heuristic needs criteria and compatibility");
    const TeamData& data = *inst.team();
    const int n = inst.size();
    if (!spec.skill_floor.empty() &&
        static_cast<int>(spec.skill_floor.size()) != data.criteria_count()) {
        throw InputError("skill_floor", "length must equal the number of criteria");
    }

    KernelRun run;
    run.cluster_count = approximate_cluster_count(n, spec.size_min, spec.size_max);
    run.kernels = select_kernels(data, spec.kernel_criteria, run.cluster_count);
    if (static_cast<int>(run.kernels.size()) < run.cluster_count) {
        throw HeuristicInfeasible("not enough elements to seed every team");
    }

    std::vector<std::vector<ElementId>> teams;
    std::vector<bool> assigned(n, false);
    for (ElementId k : run.kernels) {
        teams.push_back({k});
        assigned[k] = true;
    }
    int unassigned = n - run.cluster_count;
    const auto team_count = teams.size();

    while (unassigned > 0) {
        // Smallest team first, then largest compatibility gain, then lowest
        // element id and team index.
        std::optional<std::tuple<std::size_t, int, ElementId, std::size_t>> best;
        for (ElementId e = 0; e < n; ++e) {
            if (assigned[e]) continue;
            for (std::size_t t = 0; t < team_count; ++t) {
                const auto& team = teams[t];
                if (static_cast<int>(team.size()) >= spec.size_max) continue;
                int gain = 0;
                bool zero = false;
                for (ElementId m : team) {
                    gain += data.compatibility[e][m];
                    zero = zero || data.compatibility[e][m] == 0;
                }
                if (zero && spec.forbid_zero_pairs) continue;
                int need = 0;
                for (std::size_t u = 0; u < team_count; ++u) {
                    const int size = static_cast<int>(teams[u].size()) + (u == t ? 1 : 0);
                    need += std::max(0, spec.size_min - size);
                }
                if (need > unassigned - 1) continue;
                const auto key = std::tuple(team.size(), -gain, e, t);
                if (!best || key < *best) best = key;
            }
        }
        if (!best) {
            throw HeuristicInfeasible("no team can take any of the " + std::to_string(unassigned) +
                                      " remaining elements under the size and compatibility rules");
        }
        const auto [size, gain, e, t] = *best;
        teams[t].push_back(e);
        assigned[e] = true;
        --unassigned;
    }

    for (std::size_t t = 0; t < team_count; ++t) {
        if (static_cast<int>(teams[t].size()) < spec.size_min) {
            throw HeuristicInfeasible("team grown from element " + std::to_string(run.kernels[t] + 1) +
                                      " stays below the minimum size");
        }
        if (!skill_covers(team_skill(data, teams[t]), spec.skill_floor)) {
            throw HeuristicInfeasible("team grown from element " + std::to_string(run.kernels[t] + 1) +
                                      " misses the skill floor");
        }
    }
    run.solution = ClusteringSolution::from_partition(std::move(teams));
    return run;
}

TeamReport evaluate_teams(const Instance& inst, const ClusteringSolution& sol, const TeamSpec& spec) {
    if (!inst.team()) throw InputError("criteria", "team evaluation needs criteria and compatibility");
    const TeamData& data = *inst.team();
    TeamReport r;
    int min_size = inst.size(), max_size = 0, max_compat = 0;
    r.min_compat = std::numeric_limits<int>::max();
    r.worst_skill.assign(data.criteria_count(), kMaxGrade);
    for (const auto& members : sol.clusters()) {
        TeamReport::Team t;
        t.members = members;
        t.skill = team_skill(data, members);
        t.compat = team_compat(data, members);
        const int size = static_cast<int>(members.size());
        t.size_ok = size >= spec.size_min && size <= spec.size_max;
        t.skill_ok = skill_covers(t.skill, spec.skill_floor);
        for (std::size_t i = 0; i < members.size(); ++i) {
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                if (data.compatibility[members[i]][members[j]] == 0) t.zero_pair_free = false;
            }
        }
        r.feasible = r.feasible && t.size_ok && t.skill_ok &&
                     (t.zero_pair_free || !spec.forbid_zero_pairs);
        min_size = std::min(min_size, size);
        max_size = std::max(max_size, size);
        r.min_compat = std::min(r.min_compat, t.compat);
        max_compat = std::max(max_compat, t.compat);
        for (std::size_t k = 0; k < t.skill.size(); ++k) {
            r.worst_skill[k] = std::min(r.worst_skill[k], t.skill[k]);
        }
        r.teams.push_back(std::move(t));
    }
    r.b_card = max_size - min_size;
    r.b_compat = max_compat - r.min_compat;
    return r;
}

}  // namespace balclust
