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

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace balclust {

/// Internal element index, 0-based. JSON documents use 1-based ids.
using ElementId = int;

/// Thrown for malformed or inconsistent input. `path` names the offending
/// field, e.g. `elements[3].weight`.
class InputError : public std::runtime_error {
 public:
    InputError(std::string path, const std::string& message)
            : std::runtime_error(path.empty() ? message : path + ": " + message),
              path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

 private:
    std::string path_;
};

struct Element {
    double weight = 0.0;
    int type = 1;  // 1 = most important, up to Instance::type_count

    friend bool operator==(const Element&, const Element&) = default;
};

struct Edge {
    ElementId a;
    ElementId b;
    double weight;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Symmetric weighted relation over elements. Stored as a dense matrix since
/// instances are small; the edge list keeps the document order.
class WeightedGraph {
 public:
    WeightedGraph() = default;
    explicit WeightedGraph(int n) : n_(n), matrix_(static_cast<std::size_t>(n) * n, 0.0) {}

    int size() const noexcept { return n_; }

    /// Adds the unordered pair (a, b). Throws InputError on self-loops, bad
    /// endpoints, negative weights and duplicates with a different weight.
    void add_edge(ElementId a, ElementId b, double weight, const std::string& path = {});

    double weight(ElementId a, ElementId b) const noexcept {
        return matrix_[static_cast<std::size_t>(a) * n_ + b];
    }

    const std::vector<Edge>& edges() const noexcept { return edges_; }

    friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;

 private:
    int n_ = 0;
    std::vector<double> matrix_;
    std::vector<Edge> edges_;
};

/// Per-element ordinal skill grades and pairwise compatibility grades used by
/// the team model. Compatibility is dense; unspecified pairs are 0.
struct TeamData {
    std::vector<std::vector<int>> criteria;  // n rows x m columns, grades 0..3
    std::vector<std::vector<int>> compatibility;  // n x n, symmetric

    int criteria_count() const noexcept {
        return criteria.empty() ? 0 : static_cast<int>(criteria.front().size());
    }

    friend bool operator==(const TeamData&, const TeamData&) = default;
};

/// A partition of the element set. Members are sorted ascending; clusters
/// keep the order they were given in.
class ClusteringSolution {
 public:
    ClusteringSolution() = default;

    /// Builds from clusters that are already known to form a partition.
    /// Sorts members but keeps the cluster order, so X1..Xk keep their
    /// names; use validate_solution() for untrusted input.
    static ClusteringSolution from_partition(std::vector<std::vector<ElementId>> clusters);

    /// Same partition with clusters ordered by smallest member.
    ClusteringSolution canonical() const;

    const std::vector<std::vector<ElementId>>& clusters() const noexcept { return clusters_; }
    int cluster_count() const noexcept { return static_cast<int>(clusters_.size()); }
    const std::vector<ElementId>& cluster(int i) const { return clusters_.at(i); }
    int max_cluster_size() const noexcept;
    int min_cluster_size() const noexcept;

    /// Cluster index of every element (the restricted growth string).
    std::vector<int> labels(int n) const;

    /// Partitions compare equal regardless of cluster order.
    friend bool operator==(const ClusteringSolution& a, const ClusteringSolution& b) {
        return a.canonical().clusters_ == b.canonical().clusters_;
    }
    friend auto operator<=>(const ClusteringSolution& a, const ClusteringSolution& b) {
        return a.canonical().clusters_ <=> b.canonical().clusters_;
    }

 private:
    std::vector<std::vector<ElementId>> clusters_;
};

class Instance {
 public:
    Instance() = default;
    Instance(std::vector<Element> elements, WeightedGraph graph, int type_count);

    int size() const noexcept { return static_cast<int>(elements_.size()); }
    int type_count() const noexcept { return type_count_; }
    const std::vector<Element>& elements() const noexcept { return elements_; }
    const Element& element(ElementId id) const { return elements_.at(id); }
    const WeightedGraph& graph() const noexcept { return graph_; }

    const std::optional<TeamData>& team() const noexcept { return team_; }
    void set_team(TeamData team);

    /// Named solutions carried by the document, in document order.
    const std::vector<std::pair<std::string, ClusteringSolution>>& solutions() const noexcept {
        return solutions_;
    }
    const ClusteringSolution* find_solution(std::string_view name) const;
    void add_solution(std::string name, ClusteringSolution sol);

    friend bool operator==(const Instance&, const Instance&) = default;

 private:
    std::vector<Element> elements_;
    WeightedGraph graph_;
    int type_count_ = 1;
    std::optional<TeamData> team_;
    std::vector<std::pair<std::string, ClusteringSolution>> solutions_;
};

/// Checks that `clusters` (0-based ids) partitions the element set of `inst`
/// and returns it with members sorted. Throws InputError naming the problem
/// (overlap, coverage, unknown id, empty cluster).
ClusteringSolution validate_solution(const Instance& inst,
                                     const std::vector<std::vector<ElementId>>& clusters);

}  // namespace balclust
