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

// Constrained and multicriteria balanced clustering: problem specs, partition
// enumeration, exact and Pareto solvers, and a relocate/swap local search.

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "balclust/indices.hpp"
#include "balclust/instance.hpp"

namespace balclust {

enum class IndexKind { Card, Weight, Edge, Struct, Skill };

/// How per-cluster values are folded into one number.
///   Diff - max minus min (structure: largest pairwise proximity)
///   Ref  - largest absolute deviation from the reference profile
///   Min  - worst (smallest) cluster value
///   Max  - largest cluster value
enum class Method { Diff, Ref, Min, Max };

enum class Direction { Minimize, Maximize };

struct IndexSelector {
    IndexKind index = IndexKind::Card;
    Method method = Method::Diff;
    int component = 0;  // criterion column, Skill only (0-based)

    std::string name() const;
    friend bool operator==(const IndexSelector&, const IndexSelector&) = default;
};

struct ObjectiveTerm {
    IndexSelector selector;
    Direction direction = Direction::Minimize;
};

struct IndexBound {
    IndexSelector selector;
    std::optional<double> lower;
    std::optional<double> upper;
};

struct ProblemSpec {
    std::vector<ObjectiveTerm> objectives;
    std::vector<IndexBound> constraints;
    std::optional<int> cluster_count;      // fixed number of clusters
    std::optional<int> cluster_count_max;  // |X| <= bound
    std::optional<int> size_min;
    std::optional<int> size_max;
    std::optional<ReferenceParams> reference;
    std::optional<std::vector<int>> skill_floor;
    bool forbid_zero_pairs = false;

    /// Throws InputError if the problem is inconsistent on its own or with
    /// `inst` (missing reference, missing team data, bad ranges).
    void validate(const Instance& inst) const;
};

ProblemSpec parse_problem_spec(std::string_view text);

struct ObjectiveVector {
    std::vector<double> values;
    friend bool operator==(const ObjectiveVector&, const ObjectiveVector&) = default;
};

/// Objective values are compared after rounding to this resolution so ties
/// and dominance are exact.
inline constexpr double kObjectiveResolution = 1e-9;
std::int64_t quantize(double v);

/// Orientation-adjusted keys: smaller is better for every term.
std::vector<std::int64_t> objective_keys(const ProblemSpec& spec, const ObjectiveVector& v);

/// True if `a` Pareto-dominates `b` (keys from objective_keys).
bool dominates(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b);

/// Cluster-count and cluster-size window for enumeration.
struct PartitionRange {
    int lambda_min = 1;
    int lambda_max = 0;  // 0 = n
    int size_min = 1;
    int size_max = 0;    // 0 = n
    int max_spread = -1;  // largest minus smallest cluster size; -1 = unbounded

    PartitionRange normalized(int n) const;
    static PartitionRange from_spec(const ProblemSpec& spec, int n);
};

/// Called for each partition; return false to stop early.
using PartitionVisitor = std::function<bool(const ClusteringSolution&)>;

/// Visits every partition of {0..n-1} inside `range`, in canonical form and in
/// restricted-growth-string order, without duplicates. Returns the number of
/// partitions visited.
std::uint64_t enumerate_partitions(int n, const PartitionRange& range,
                                   const PartitionVisitor& visit);

std::vector<ClusteringSolution> enumerate_partitions(const Instance& inst,
                                                     const PartitionRange& range);

/// Exact number of partitions inside `range` (as a double; may be huge).
double count_partitions(int n, const PartitionRange& range);

struct Violation {
    std::string constraint;
    double value = 0.0;
    double bound = 0.0;
};

struct Feasibility {
    bool feasible = true;
    std::vector<Violation> violations;
};

Feasibility check_feasible(const Instance& inst, const ClusteringSolution& sol,
                           const ProblemSpec& spec);

/// Value of one selector; empty when it cannot be evaluated on `sol` (a
/// reference structure that does not fit the solution's scale).
std::optional<double> evaluate_selector(const Instance& inst, const ClusteringSolution& sol,
                                        const IndexSelector& sel,
                                        const std::optional<ReferenceParams>& ref);

ObjectiveVector evaluate_objectives(const Instance& inst, const ClusteringSolution& sol,
                                    const ProblemSpec& spec);

/// Thrown when the search space exceeds the enumeration cap.
class CapExceeded : public std::runtime_error {
 public:
    CapExceeded(double estimated, std::uint64_t cap);
    double estimated() const noexcept { return estimated_; }

 private:
    double estimated_;
};

struct SolveOptions {
    std::uint64_t cap = 10'000'000;
    int workers = 1;
};

struct SolveStats {
    std::uint64_t enumerated = 0;
    std::uint64_t feasible = 0;
};

struct ExactResult {
    std::optional<ClusteringSolution> solution;  // empty when infeasible
    ObjectiveVector objective;
    SolveStats stats;

    bool infeasible() const noexcept { return !solution.has_value(); }
};

ExactResult solve_exact(const Instance& inst, const ProblemSpec& spec,
                        const SolveOptions& options = {});

struct ParetoPoint {
    ClusteringSolution solution;
    ObjectiveVector objective;
};

struct ParetoResult {
    std::vector<ParetoPoint> front;  // sorted by objective keys
    SolveStats stats;
};

ParetoResult solve_pareto(const Instance& inst, const ProblemSpec& spec,
                          const SolveOptions& options = {});

struct LocalSearchTrace {
    std::vector<double> objective;  // value after each accepted move, start first
    std::uint64_t evaluations = 0;
};

/// First-improvement descent over relocate-one and swap-two moves, scanned by
/// ascending element id then ascending target cluster. `spec` must have a
/// single objective and `start` must be feasible.
ClusteringSolution local_search_improve(const Instance& inst, const ClusteringSolution& start,
                                        const ProblemSpec& spec, std::uint64_t budget,
                                        LocalSearchTrace* trace = nullptr);

}  // namespace balclust
