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

// Rendering of evaluation and solver results as text tables and JSON.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "balclust/indices.hpp"
#include "balclust/io.hpp"
#include "balclust/optimization.hpp"
#include "balclust/team.hpp"

namespace balclust {

/// Everything `evaluate` reports for one solution.
struct SolutionReport {
    std::string name;
    ClusteringSolution solution;
    std::vector<ClusterSummary> summaries;
    std::vector<std::vector<int>> proximity;
    IndexReport indices;
    std::vector<std::string> errata;  // human-readable notes
};

SolutionReport build_solution_report(const Instance& inst, std::string name,
                                     const ClusteringSolution& sol,
                                     const std::optional<ReferenceParams>& ref,
                                     const std::vector<ErratumNote>& errata);

/// Rounds to the objective resolution so printed values are stable.
double tidy(double v);

/// Short hex digest of the serialized instance.
std::string instance_digest(const Instance& inst);

nlohmann::ordered_json clusters_json(const ClusteringSolution& sol);
nlohmann::ordered_json to_json(const SolutionReport& r);
nlohmann::ordered_json to_json(const TeamReport& r);

std::string render_text(const SolutionReport& r);
std::string render_text(const TeamReport& r);
std::string format_clusters(const ClusteringSolution& sol);
std::string format_number(double v);

}  // namespace balclust
