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

// Multiset estimates of cluster structure and the poset-like scale they live
// on.
//
// An estimate of a cluster counts its members per element type, plus one
// trailing "empty" component that pads every cluster of a solution up to the
// largest cluster size. All estimates of one solution therefore share the
// same total and sit on the scale P^{k,n}: k-component non-negative integer
// vectors summing to n. The scale is ordered by prefix-sum dominance (more
// elements of the important low-numbered types is "greater"), and one Hasse
// step moves a single unit between adjacent levels.

#include <compare>
#include <ostream>
#include <string>
#include <vector>

#include "balclust/instance.hpp"

namespace balclust {

class MultisetEstimate {
 public:
    MultisetEstimate() = default;
    explicit MultisetEstimate(std::vector<int> counts);

    const std::vector<int>& counts() const noexcept { return counts_; }
    int dimension() const noexcept { return static_cast<int>(counts_.size()); }
    int total() const noexcept { return total_; }
    int operator[](int i) const { return counts_.at(i); }

    /// Prefix sums S_1..S_k.
    std::vector<int> prefix_sums() const;

    /// Returns a copy whose last ("empty") component is adjusted so the total
    /// becomes `total`. Throws std::invalid_argument if that would go negative.
    MultisetEstimate repadded(int total) const;

    std::string to_string() const;

    friend bool operator==(const MultisetEstimate& a, const MultisetEstimate& b) {
        return a.counts_ == b.counts_;
    }
    friend auto operator<=>(const MultisetEstimate& a, const MultisetEstimate& b) {
        return a.counts_ <=> b.counts_;
    }

 private:
    std::vector<int> counts_;
    int total_ = 0;
};

std::ostream& operator<<(std::ostream& os, const MultisetEstimate& e);

enum class Dominance { Greater, Less, Equal, Incomparable };

std::string to_string(Dominance d);

/// Type counts of cluster `index` (0-based) padded with the empty component
/// up to the largest cluster size of `sol`.
MultisetEstimate structure_estimate(const Instance& inst, const ClusteringSolution& sol,
                                    int index);

/// Same, for a bare member list padded up to `padded_size`.
MultisetEstimate structure_estimate(const Instance& inst, const std::vector<ElementId>& members,
                                    int padded_size);

/// Minimal number of Hasse steps between two estimates on the same scale,
/// i.e. the L1 distance of their prefix sums. Throws std::invalid_argument on
/// dimension or total mismatch.
int proximity(const MultisetEstimate& a, const MultisetEstimate& b);

Dominance dominance_compare(const MultisetEstimate& a, const MultisetEstimate& b);

struct ScaleNode {
    MultisetEstimate estimate;
    std::vector<int> up;    // indices of nodes one Hasse step greater
    std::vector<int> down;  // indices of nodes one Hasse step smaller
};

/// All estimates with `k` components summing to `n`, in lexicographically
/// decreasing order (the top element (n,0,...,0) first), with Hasse links.
std::vector<ScaleNode> enumerate_scale(int k, int n);

/// Hasse diagram of the scale as a DOT digraph, edges pointing downward.
std::string scale_to_dot(const std::vector<ScaleNode>& scale, int k, int n);

}  // namespace balclust
