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

// JSON (de)serialization of instances, solutions and reference parameters.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "balclust/indices.hpp"
#include "balclust/instance.hpp"

namespace balclust {

/// A value a fixture records as published next to the quantity it belongs
/// to, used to flag cells where computation and published tables disagree.
struct ErratumNote {
    std::string solution;
    std::string quantity;        // "intra_edge_weight", "bEdge", "proximity", ...
    std::vector<int> clusters;   // 1-based cluster indices the value refers to
    double published = 0.0;
    std::string note;
};

Instance parse_instance(std::string_view text);
Instance load_instance(const std::filesystem::path& path);
std::string serialize_instance(const Instance& inst);

std::vector<ErratumNote> parse_errata(std::string_view text);

/// Parses clusters given with 1-based ids and validates them against `inst`.
ClusteringSolution parse_solution(const Instance& inst, std::string_view text);

ReferenceParams parse_reference(std::string_view text);
ReferenceParams load_reference(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);

}  // namespace balclust
