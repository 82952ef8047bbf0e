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

#include "balclust/multiset.hpp"

#include <cstdlib>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace balclust {

MultisetEstimate::MultisetEstimate(std::vector<int> counts) : counts_(std::move(counts)) {
    if (counts_.empty()) throw std::invalid_argument("estimate needs at least one component");
    for (int c : counts_) {
        if (c < 0) throw std::invalid_argument("estimate components must be non-negative");
    }
    total_ = std::accumulate(counts_.begin(), counts_.end(), 0);
}

std::vector<int> MultisetEstimate::prefix_sums() const {
    std::vector<int> s(counts_.size());
    std::partial_sum(counts_.begin(), counts_.end(), s.begin());
    return s;
}

MultisetEstimate MultisetEstimate::repadded(int total) const {
    std::vector<int> c = counts_;
    c.back() += total - total_;
    if (c.back() < 0) {
        throw std::invalid_argument("estimate " + to_string() + " does not fit total " +
                                    std::to_string(total));
    }
    return MultisetEstimate(std::move(c));
}

std::string MultisetEstimate::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        if (i) os << ',';
        os << counts_[i];
    }
    os << ')';
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const MultisetEstimate& e) { return os << e.to_string(); }

std::string to_string(Dominance d) {
    switch (d) {
        case Dominance::Greater: return "greater";
        case Dominance::Less: return "less";
        case Dominance::Equal: return "equal";
        case Dominance::Incomparable: return "incomparable";
    }
    return "?";
}

MultisetEstimate structure_estimate(const Instance& inst, const std::vector<ElementId>& members,
                                    int padded_size) {
    std::vector<int> counts(inst.type_count() + 1, 0);
    for (ElementId e : members) ++counts[inst.element(e).type - 1];
    counts.back() = padded_size - static_cast<int>(members.size());
    return MultisetEstimate(std::move(counts));
}

MultisetEstimate structure_estimate(const Instance& inst, const ClusteringSolution& sol,
                                    int index) {
    return structure_estimate(inst, sol.cluster(index), sol.max_cluster_size());
}

namespace {

void require_same_scale(const MultisetEstimate& a, const MultisetEstimate& b) {
    if (a.dimension() != b.dimension()) {
        throw std::invalid_argument("dimension mismatch: " + a.to_string() + " vs " +
                                    b.to_string());
    }
    if (a.total() != b.total()) {
        throw std::invalid_argument("total mismatch: " + a.to_string() + " vs " + b.to_string());
    }
}

}  // namespace

int proximity(const MultisetEstimate& a, const MultisetEstimate& b) {
    require_same_scale(a, b);
    int sa = 0, sb = 0, d = 0;
    for (int i = 0; i < a.dimension(); ++i) {
        sa += a[i];
        sb += b[i];
        d += std::abs(sa - sb);
    }
    return d;
}

Dominance dominance_compare(const MultisetEstimate& a, const MultisetEstimate& b) {
    require_same_scale(a, b);
    bool ge = true, le = true;
    int sa = 0, sb = 0;
    for (int i = 0; i < a.dimension(); ++i) {
        sa += a[i];
        sb += b[i];
        ge = ge && sa >= sb;
        le = le && sa <= sb;
    }
    if (ge && le) return Dominance::Equal;
    if (ge) return Dominance::Greater;
    if (le) return Dominance::Less;
    return Dominance::Incomparable;
}

namespace {

void compositions(int k, int n, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    const auto pos = cur.size();
    if (static_cast<int>(pos) == k - 1) {
        cur.push_back(n);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int v = n; v >= 0; --v) {
        cur.push_back(v);
        compositions(k, n - v, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<ScaleNode> enumerate_scale(int k, int n) {
    if (k < 1 || n < 0) throw std::invalid_argument("scale needs k >= 1 and n >= 0");
    std::vector<std::vector<int>> all;
    std::vector<int> cur;
    compositions(k, n, cur, all);

    std::map<std::vector<int>, int> index;
    std::vector<ScaleNode> nodes;
    nodes.reserve(all.size());
    for (auto& c : all) {
        index.emplace(c, static_cast<int>(nodes.size()));
        nodes.push_back({MultisetEstimate(c), {}, {}});
    }
    // One unit moving from level i to level i+1 steps down the order.
    for (std::size_t u = 0; u < nodes.size(); ++u) {
        std::vector<int> c = nodes[u].estimate.counts();
        for (int i = 0; i + 1 < k; ++i) {
            if (c[i] == 0) continue;
            --c[i];
            ++c[i + 1];
            const int v = index.at(c);
            nodes[u].down.push_back(v);
            nodes[v].up.push_back(static_cast<int>(u));
            ++c[i];
            --c[i + 1];
        }
    }
    return nodes;
}

std::string scale_to_dot(const std::vector<ScaleNode>& scale, int k, int n) {
    std::ostringstream os;
    os << "digraph P_" << k << '_' << n << " {\n";
    os << "  rankdir=TB;\n  node [shape=ellipse];\n";
    for (std::size_t i = 0; i < scale.size(); ++i) {
        os << "  n" << i << " [label=\"" << scale[i].estimate.to_string() << "\"];\n";
    }
    for (std::size_t i = 0; i < scale.size(); ++i) {
        for (int j : scale[i].down) os << "  n" << i << " -> n" << j << ";\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace balclust
