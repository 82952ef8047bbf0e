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

#include "balclust/indices.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace balclust {

double intra_edge_weight(const WeightedGraph& g, const std::vector<ElementId>& members) {
    double sum = 0.0;
    for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            sum += g.weight(members[i], members[j]);
        }
    }
    return sum;
}

ClusterSummary summarize_cluster(const Instance& inst, const ClusteringSolution& sol, int index) {
    const auto& members = sol.cluster(index);
    ClusterSummary s;
    s.size = static_cast<int>(members.size());
    for (ElementId e : members) s.total_weight += inst.element(e).weight;
    s.intra_edge_weight = intra_edge_weight(inst.graph(), members);
    s.estimate = structure_estimate(inst, sol, index);
    return s;
}

std::vector<ClusterSummary> summarize_clusters(const Instance& inst, const ClusteringSolution& sol) {
    std::vector<ClusterSummary> out;
    out.reserve(sol.cluster_count());
    for (int i = 0; i < sol.cluster_count(); ++i) out.push_back(summarize_cluster(inst, sol, i));
    return out;
}

std::vector<std::vector<int>> proximity_matrix(const std::vector<ClusterSummary>& summaries) {
    const auto k = summaries.size();
    std::vector<std::vector<int>> d(k, std::vector<int>(k, 0));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            d[i][j] = d[j][i] = proximity(summaries[i].estimate, summaries[j].estimate);
        }
    }
    return d;
}

namespace {

template <typename F>
double spread(const std::vector<ClusterSummary>& s, F value) {
    auto [lo, hi] = std::minmax_element(s.begin(), s.end(), [&](const auto& a, const auto& b) {
        return value(a) < value(b);
    });
    return value(*hi) - value(*lo);
}

template <typename F>
double max_deviation(const std::vector<ClusterSummary>& s, double reference, F value) {
    double best = 0.0;
    for (const auto& c : s) best = std::max(best, std::abs(value(c) - reference));
    return best;
}

}  // namespace

IndexReport method1_indices(const std::vector<ClusterSummary>& s) {
    if (s.empty()) throw std::invalid_argument("solution has no clusters");
    IndexReport r;
    r.b_card = spread(s, [](const auto& c) { return static_cast<double>(c.size); });
    r.b_weight = spread(s, [](const auto& c) { return c.total_weight; });
    r.b_edge = spread(s, [](const auto& c) { return c.intra_edge_weight; });
    // Lattice max/min need not exist; the diameter under proximity is used.
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = i + 1; j < s.size(); ++j) {
            r.b_struct = std::max(r.b_struct, proximity(s[i].estimate, s[j].estimate));
        }
    }
    return r;
}

IndexReport method1_indices(const Instance& inst, const ClusteringSolution& sol) {
    return method1_indices(summarize_clusters(inst, sol));
}

IndexReport::Reference method2_indices(const std::vector<ClusterSummary>& s,
                                       const ReferenceParams& ref) {
    if (s.empty()) throw std::invalid_argument("solution has no clusters");
    if (ref.estimate.total() != s.front().estimate.total() ||
        ref.estimate.dimension() != s.front().estimate.dimension()) {
        throw std::invalid_argument("reference estimate " + ref.estimate.to_string() +
                                    " is not on the solution's scale (expected " +
                                    std::to_string(s.front().estimate.dimension()) +
                                    " components summing to " +
                                    std::to_string(s.front().estimate.total()) + ")");
    }
    IndexReport::Reference r;
    r.card = max_deviation(s, ref.size, [](const auto& c) { return static_cast<double>(c.size); });
    r.weight = max_deviation(s, ref.weight, [](const auto& c) { return c.total_weight; });
    r.edge = max_deviation(s, ref.edge_weight, [](const auto& c) { return c.intra_edge_weight; });
    for (const auto& c : s) r.structure = std::max(r.structure, proximity(c.estimate, ref.estimate));
    return r;
}

IndexReport::Reference method2_indices(const Instance& inst, const ClusteringSolution& sol,
                                       const ReferenceParams& ref) {
    return method2_indices(summarize_clusters(inst, sol), ref);
}

IndexReport evaluate_indices(const Instance& inst, const ClusteringSolution& sol,
                             const std::optional<ReferenceParams>& ref) {
    const auto s = summarize_clusters(inst, sol);
    IndexReport r = method1_indices(s);
    if (ref) r.ref = method2_indices(s, *ref);
    return r;
}

}  // namespace balclust
