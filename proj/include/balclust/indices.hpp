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

// Balance/unbalance indices of a clustering solution.
//
// Difference indices (max minus min of a cluster parameter over clusters):
//   card   - cluster size
//   weight - total member weight
//   edge   - total weight of edges with both ends inside the cluster
//   struct - largest pairwise proximity between cluster structure estimates
// Reference indices: largest absolute deviation of the same parameters from
// a reference cluster profile.

#include <optional>
#include <vector>

#include "balclust/instance.hpp"
#include "balclust/multiset.hpp"

namespace balclust {

struct ClusterSummary {
    int size = 0;
    double total_weight = 0.0;
    double intra_edge_weight = 0.0;
    MultisetEstimate estimate;
};

struct ReferenceParams {
    double size = 0.0;
    double weight = 0.0;
    double edge_weight = 0.0;
    MultisetEstimate estimate;
};

struct IndexReport {
    double b_card = 0.0;
    double b_weight = 0.0;
    double b_edge = 0.0;
    int b_struct = 0;

    struct Reference {
        double card = 0.0;
        double weight = 0.0;
        double edge = 0.0;
        int structure = 0;
    };
    std::optional<Reference> ref;
};

ClusterSummary summarize_cluster(const Instance& inst, const ClusteringSolution& sol, int index);
std::vector<ClusterSummary> summarize_clusters(const Instance& inst, const ClusteringSolution& sol);

/// Sum of edge weights over unordered member pairs.
double intra_edge_weight(const WeightedGraph& g, const std::vector<ElementId>& members);

/// Pairwise proximity matrix between the cluster estimates of `sol`.
std::vector<std::vector<int>> proximity_matrix(const std::vector<ClusterSummary>& summaries);

IndexReport method1_indices(const Instance& inst, const ClusteringSolution& sol);
IndexReport method1_indices(const std::vector<ClusterSummary>& summaries);

/// Throws std::invalid_argument when the reference estimate does not live on
/// the solution's scale.
IndexReport::Reference method2_indices(const Instance& inst, const ClusteringSolution& sol,
                                       const ReferenceParams& ref);
IndexReport::Reference method2_indices(const std::vector<ClusterSummary>& summaries,
                                       const ReferenceParams& ref);

/// Both halves; `ref` optional.
IndexReport evaluate_indices(const Instance& inst, const ClusteringSolution& sol,
                             const std::optional<ReferenceParams>& ref = std::nullopt);

}  // namespace balclust
