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

// Multi-skill team formation: team skill vectors, compatibility totals and a
// kernel-extension heuristic.

#include <stdexcept>
#include <string_view>
#include <vector>

#include "balclust/instance.hpp"
#include "balclust/optimization.hpp"

namespace balclust {

inline constexpr int kMaxGrade = 3;

struct TeamSpec {
    int size_min = 1;
    int size_max = 1;
    std::vector<int> skill_floor;     // empty = no floor
    bool forbid_zero_pairs = true;
    std::vector<int> kernel_criteria;  // 0-based columns, most important first
};

/// Reads the team fields (`size_min`, `size_max`, `skill_floor`,
/// `forbid_zero_pairs`, `kernel_criteria` with 1-based columns) of a spec
/// document. Unknown fields are ignored so one file can carry both a TeamSpec
/// and a ProblemSpec.
TeamSpec parse_team_spec(std::string_view text);

/// ProblemSpec constraints equivalent to `spec` (sizes, skill floor, zero-pair
/// ban), with `objectives` attached.
ProblemSpec to_problem_spec(const TeamSpec& spec, std::vector<ObjectiveTerm> objectives);

/// Componentwise maximum of the members' grade rows.
std::vector<int> team_skill(const TeamData& data, const std::vector<ElementId>& team);

/// Sum of compatibility grades over unordered member pairs.
int team_compat(const TeamData& data, const std::vector<ElementId>& team);

/// Componentwise a >= b.
bool skill_covers(const std::vector<int>& skill, const std::vector<int>& floor);

/// Copy of `inst` whose relation graph is the compatibility relation, so the
/// generic edge indices measure compatibility.
Instance with_compatibility_graph(const Instance& inst);

class HeuristicInfeasible : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

struct KernelRun {
    int cluster_count = 0;
    std::vector<ElementId> kernels;  // ascending; team i grows from kernels[i]
    ClusteringSolution solution;
};

/// Stage 1 picks the cluster count from the size window, stage 2 takes the
/// spec's kernel criteria, stage 3 selects kernels (Pareto-maximal elements on
/// those criteria, trimmed or topped up by grade sum), stage 4 grows teams
/// greedily by compatibility. Throws HeuristicInfeasible if a stage fails or
/// the result misses the skill floor.
KernelRun kernel_heuristic(const Instance& inst, const TeamSpec& spec);

/// Stage 1 alone.
int approximate_cluster_count(int n, int size_min, int size_max);

/// Stage 3 alone.
std::vector<ElementId> select_kernels(const TeamData& data, const std::vector<int>& criteria,
                                      int count);

struct TeamReport {
    struct Team {
        std::vector<ElementId> members;
        std::vector<int> skill;
        int compat = 0;
        bool size_ok = true;
        bool skill_ok = true;
        bool zero_pair_free = true;
    };
    std::vector<Team> teams;
    int b_card = 0;
    int b_compat = 0;  // max compat - min compat
    int min_compat = 0;
    std::vector<int> worst_skill;  // componentwise min over teams
    bool feasible = true;
};

TeamReport evaluate_teams(const Instance& inst, const ClusteringSolution& sol,
                          const TeamSpec& spec);

}  // namespace balclust
