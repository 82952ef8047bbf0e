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

#include "balclust/instance.hpp"

#include <algorithm>
#include <cmath>

namespace balclust {

void WeightedGraph::add_edge(ElementId a, ElementId b, double weight, const std::string& path) {
    if (a < 0 || a >= n_ || b < 0 || b >= n_) {
        throw InputError(path, "edge endpoint is not a valid element id");
    }
    if (a == b) {
        throw InputError(path, "self-loop on element " + std::to_string(a + 1));
    }
    if (!std::isfinite(weight) || weight < 0.0) {
        throw InputError(path, "edge weight must be a non-negative number");
    }
    if (a > b) std::swap(a, b);
    for (const Edge& e : edges_) {
        if (e.a == a && e.b == b) {
            if (e.weight != weight) {
                throw InputError(path, "asymmetric edge (" + std::to_string(a + 1) + "," +
                                               std::to_string(b + 1) + "): weights " +
                                               std::to_string(e.weight) + " and " +
                                               std::to_string(weight));
            }
            return;
        }
    }
    edges_.push_back({a, b, weight});
    matrix_[static_cast<std::size_t>(a) * n_ + b] = weight;
    matrix_[static_cast<std::size_t>(b) * n_ + a] = weight;
}

ClusteringSolution ClusteringSolution::from_partition(std::vector<std::vector<ElementId>> clusters) {
    for (auto& c : clusters) std::sort(c.begin(), c.end());
    ClusteringSolution sol;
    sol.clusters_ = std::move(clusters);
    return sol;
}

ClusteringSolution ClusteringSolution::canonical() const {
    ClusteringSolution sol = *this;
    std::sort(sol.clusters_.begin(), sol.clusters_.end(),
              [](const auto& x, const auto& y) { return x.front() < y.front(); });
    return sol;
}

int ClusteringSolution::max_cluster_size() const noexcept {
    std::size_t best = 0;
    for (const auto& c : clusters_) best = std::max(best, c.size());
    return static_cast<int>(best);
}

int ClusteringSolution::min_cluster_size() const noexcept {
    if (clusters_.empty()) return 0;
    std::size_t best = clusters_.front().size();
    for (const auto& c : clusters_) best = std::min(best, c.size());
    return static_cast<int>(best);
}

std::vector<int> ClusteringSolution::labels(int n) const {
    std::vector<int> out(n, -1);
    for (int i = 0; i < cluster_count(); ++i) {
        for (ElementId e : clusters_[i]) out.at(e) = i;
    }
    return out;
}

Instance::Instance(std::vector<Element> elements, WeightedGraph graph, int type_count)
        : elements_(std::move(elements)), graph_(std::move(graph)), type_count_(type_count) {
    if (elements_.empty()) throw InputError("elements", "instance needs at least one element");
    if (type_count_ < 1) throw InputError("type_count", "must be a positive integer");
    if (graph_.size() != size()) throw InputError("edges", "graph size differs from element count");
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        const auto path = "elements[" + std::to_string(i) + "]";
        const Element& e = elements_[i];
        if (!std::isfinite(e.weight) || e.weight < 0.0) {
            throw InputError(path + ".weight", "weight must be non-negative");
        }
        if (e.type < 1 || e.type > type_count_) {
            throw InputError(path + ".type", "type " + std::to_string(e.type) +
                                                     " outside 1.." + std::to_string(type_count_));
        }
    }
}

void Instance::set_team(TeamData team) {
    const auto n = static_cast<std::size_t>(size());
    if (team.criteria.size() != n) throw InputError("criteria", "needs one row per element");
    const auto m = team.criteria.front().size();
    if (m == 0) throw InputError("criteria", "rows must not be empty");
    for (std::size_t j = 0; j < n; ++j) {
        const auto path = "criteria[" + std::to_string(j) + "]";
        const auto& row = team.criteria[j];
        if (row.size() != m) throw InputError(path, "all rows must have the same length");
        bool positive = false;
        for (int g : row) {
            if (g < 0 || g > 3) throw InputError(path, "grades must lie in 0..3");
            positive = positive || g > 0;
        }
        if (!positive) throw InputError(path, "every element needs at least one positive grade");
    }
    if (team.compatibility.empty()) {
        team.compatibility.assign(n, std::vector<int>(n, 0));
    }
    if (team.compatibility.size() != n) throw InputError("compatibility", "matrix size mismatch");
    for (std::size_t a = 0; a < n; ++a) {
        if (team.compatibility[a].size() != n) {
            throw InputError("compatibility", "matrix size mismatch");
        }
        for (std::size_t b = 0; b < n; ++b) {
            int g = team.compatibility[a][b];
            if (g < 0 || g > 3) throw InputError("compatibility", "grades must lie in 0..3");
            if (g != team.compatibility[b][a]) {
                throw InputError("compatibility", "relation must be symmetric");
            }
        }
    }
    team_ = std::move(team);
}

const ClusteringSolution* Instance::find_solution(std::string_view name) const {
    for (const auto& [n, s] : solutions_) {
        if (n == name) return &s;
    }
    return nullptr;
}

void Instance::add_solution(std::string name, ClusteringSolution sol) {
    if (find_solution(name)) throw InputError("solutions." + name, "duplicate solution name");
    solutions_.emplace_back(std::move(name), std::move(sol));
}

ClusteringSolution validate_solution(const Instance& inst,
                                     const std::vector<std::vector<ElementId>>& clusters) {
    const int n = inst.size();
    if (clusters.empty()) throw InputError("clusters", "solution has no clusters");
    std::vector<int> owner(n, -1);
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        const auto path = "clusters[" + std::to_string(i) + "]";
        if (clusters[i].empty()) throw InputError(path, "empty cluster");
        for (ElementId e : clusters[i]) {
            if (e < 0 || e >= n) {
                throw InputError(path, "unknown element id " + std::to_string(e + 1));
            }
            if (owner[e] != -1) {
                throw InputError(path, "overlap: element " + std::to_string(e + 1) +
                                               " already in clusters[" +
                                               std::to_string(owner[e]) + "]");
            }
            owner[e] = static_cast<int>(i);
        }
    }
    for (int e = 0; e < n; ++e) {
        if (owner[e] == -1) {
            throw InputError("clusters", "coverage: element " + std::to_string(e + 1) +
                                                 " is in no cluster");
        }
    }
    return ClusteringSolution::from_partition(clusters);
}

}  // namespace balclust
