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

#include "balclust/optimization.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "balclust/io.hpp"
#include "json_util.hpp"

namespace balclust {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Selectors and specs

namespace {

const char* index_name(IndexKind k) {
    switch (k) {
        case IndexKind::Card: return "card";
        case IndexKind::Weight: return "weight";
        case IndexKind::Edge: return "edge";
        case IndexKind::Struct: return "struct";
        case IndexKind::Skill: return "skill";
    }
    return "?";
}

const char* method_name(Method m) {
    switch (m) {
        case Method::Diff: return "diff";
        case Method::Ref: return "ref";
        case Method::Min: return "min";
        case Method::Max: return "max";
    }
    return "?";
}

IndexKind parse_index(const json& v, const std::string& path) {
    if (!v.is_string()) throw InputError(path, "expected an index name");
    const auto s = v.get<std::string>();
    if (s == "card") return IndexKind::Card;
    if (s == "weight") return IndexKind::Weight;
    if (s == "edge") return IndexKind::Edge;
    if (s == "struct") return IndexKind::Struct;
    if (s == "skill") return IndexKind::Skill;
    throw InputError(path, "unknown index '" + s + "' (card, weight, edge, struct, skill)");
}

Method parse_method(const json& v, const std::string& path) {
    if (!v.is_string()) throw InputError(path, "expected a method name");
    const auto s = v.get<std::string>();
    if (s == "diff") return Method::Diff;
    if (s == "ref") return Method::Ref;
    if (s == "min") return Method::Min;
    if (s == "max") return Method::Max;
    throw InputError(path, "unknown method '" + s + "' (diff, ref, min, max)");
}

IndexSelector parse_selector(const json& obj, const std::string& path) {
    IndexSelector sel;
    sel.index = parse_index(detail::require(obj, "index", path), path + ".index");
    sel.method = obj.contains("method") ? parse_method(obj["method"], path + ".method")
                                        : Method::Diff;
    if (obj.contains("component")) {
        sel.component = detail::as_int(obj["component"], path + ".component") - 1;
    }
    return sel;
}

}  // namespace

std::string IndexSelector::name() const {
    std::string s = std::string(index_name(index)) + "." + method_name(method);
    if (index == IndexKind::Skill) s += "[C" + std::to_string(component + 1) + "]";
    return s;
}

void ProblemSpec::validate(const Instance& inst) const {
    auto check_selector = [&](const IndexSelector& sel, const std::string& path) {
        if (sel.method == Method::Ref && !reference) {
            throw InputError(path, "'ref' method needs a reference block");
        }
        if (sel.method == Method::Ref && sel.index == IndexKind::Skill) {
            throw InputError(path, "skill has no reference form");
        }
        if (sel.index == IndexKind::Struct &&
            (sel.method == Method::Min || sel.method == Method::Max)) {
            throw InputError(path, "structure estimates are only partially ordered; use diff or ref");
        }
        if (sel.index == IndexKind::Skill) {
            if (!inst.team()) throw InputError(path, "skill index needs criteria in the instance");
            if (sel.component < 0 || sel.component >= inst.team()->criteria_count()) {
                throw InputError(path + ".component", "criterion out of range");
            }
        }
    };
    for (std::size_t i = 0; i < objectives.size(); ++i) {
        check_selector(objectives[i].selector, "objectives[" + std::to_string(i) + "]");
    }
    for (std::size_t i = 0; i < constraints.size(); ++i) {
        const auto path = "constraints[" + std::to_string(i) + "]";
        check_selector(constraints[i].selector, path);
        if (!constraints[i].lower && !constraints[i].upper) {
            throw InputError(path, "constraint needs 'max' or 'min'");
        }
        if ((constraints[i].upper && *constraints[i].upper < 0) ||
            (constraints[i].lower && *constraints[i].lower < 0)) {
            throw InputError(path, "bounds must be non-negative");
        }
    }
    if (cluster_count && *cluster_count < 1) throw InputError("lambda", "must be >= 1");
    if (cluster_count_max && *cluster_count_max < 1) throw InputError("lambda_max", "must be >= 1");
    if (size_min && *size_min < 1) throw InputError("size_min", "must be >= 1");
    if (size_max && *size_max < 1) throw InputError("size_max", "must be >= 1");
    if (size_min && size_max && *size_min > *size_max) {
        throw InputError("size_min", "size_min exceeds size_max");
    }
    if (reference && reference->estimate.dimension() != inst.type_count() + 1) {
        throw InputError("reference.estimate",
                         "needs " + std::to_string(inst.type_count() + 1) + " components");
    }
    if (skill_floor) {
        if (!inst.team()) throw InputError("skill_floor", "needs criteria in the instance");
        if (static_cast<int>(skill_floor->size()) != inst.team()->criteria_count()) {
            throw InputError("skill_floor", "length must equal the number of criteria");
        }
    }
    if (forbid_zero_pairs && !inst.team()) {
        throw InputError("forbid_zero_pairs", "needs a compatibility relation in the instance");
    }
}

ProblemSpec parse_problem_spec(std::string_view text) {
    const json doc = detail::parse_json(text);
    if (!doc.is_object()) throw InputError("", "problem spec must be a JSON object");
    ProblemSpec spec;
    if (doc.contains("objectives")) {
        const json& objs = doc["objectives"];
        if (!objs.is_array()) throw InputError("objectives", "expected an array");
        for (std::size_t i = 0; i < objs.size(); ++i) {
            const auto path = "objectives[" + std::to_string(i) + "]";
            ObjectiveTerm t;
            t.selector = parse_selector(objs[i], path);
            if (objs[i].contains("direction")) {
                const auto d = objs[i]["direction"];
                if (d == "min") {
                    t.direction = Direction::Minimize;
                } else if (d == "max") {
                    t.direction = Direction::Maximize;
                } else {
                    throw InputError(path + ".direction", "expected 'min' or 'max'");
                }
            }
            spec.objectives.push_back(t);
        }
    }
    if (doc.contains("constraints")) {
        const json& cons = doc["constraints"];
        if (!cons.is_array()) throw InputError("constraints", "expected an array");
        for (std::size_t i = 0; i < cons.size(); ++i) {
            const auto path = "constraints[" + std::to_string(i) + "]";
            IndexBound b;
            b.selector = parse_selector(cons[i], path);
            if (cons[i].contains("max")) b.upper = detail::as_number(cons[i]["max"], path + ".max");
            if (cons[i].contains("min")) b.lower = detail::as_number(cons[i]["min"], path + ".min");
            spec.constraints.push_back(b);
        }
    }
    auto opt_int = [&](const char* key) -> std::optional<int> {
        if (!doc.contains(key) || doc[key].is_null()) return std::nullopt;
        return detail::as_int(doc[key], key);
    };
    spec.cluster_count = opt_int("lambda");
    spec.cluster_count_max = opt_int("lambda_max");
    spec.size_min = opt_int("size_min");
    spec.size_max = opt_int("size_max");
    if (doc.contains("reference")) spec.reference = parse_reference(doc["reference"].dump());
    if (doc.contains("skill_floor")) {
        std::vector<int> floor;
        for (std::size_t i = 0; i < doc["skill_floor"].size(); ++i) {
            floor.push_back(detail::as_int(doc["skill_floor"][i],
                                           "skill_floor[" + std::to_string(i) + "]"));
        }
        spec.skill_floor = std::move(floor);
    }
    if (doc.contains("forbid_zero_pairs")) {
        spec.forbid_zero_pairs = detail::as_bool(doc["forbid_zero_pairs"], "forbid_zero_pairs");
    }
    return spec;
}

std::int64_t quantize(double v) { return std::llround(v / kObjectiveResolution); }

std::vector<std::int64_t> objective_keys(const ProblemSpec& spec, const ObjectiveVector& v) {
    std::vector<std::int64_t> keys(v.values.size());
    for (std::size_t i = 0; i < keys.size(); ++i) {
        const auto q = quantize(v.values[i]);
        keys[i] = spec.objectives[i].direction == Direction::Minimize ? q : -q;
    }
    return keys;
}

bool dominates(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
    bool strict = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
        strict = strict || a[i] < b[i];
    }
    return strict;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

/// Per-cluster statistics of a labelled partition, recomputed in place for
/// every candidate so the solvers do not allocate in their inner loop.
class Evaluator {
 public:
    Evaluator(const Instance& inst, const ProblemSpec& spec)
            : inst_(inst),
              spec_(spec),
              n_(inst.size()),
              types_(inst.type_count()),
              criteria_(inst.team() ? inst.team()->criteria_count() : 0),
              sizes_(n_),
              weight_(n_),
              intra_(n_),
              prefix_(static_cast<std::size_t>(n_) * types_),
              skill_(static_cast<std::size_t>(n_) * criteria_),
              zero_pair_(n_) {
        if (inst.team()) {
            const auto& c = inst.team()->compatibility;
            for (int a = 0; a < n_; ++a) {
                for (int b = a + 1; b < n_; ++b) {
                    if (c[a][b] == 0) zero_pairs_.emplace_back(a, b);
                }
            }
        }
        if (spec.reference && spec.reference->estimate.dimension() == types_ + 1) {
            int s = 0;
            for (int t = 0; t < types_; ++t) {
                s += spec.reference->estimate[t];
                ref_prefix_.push_back(s);
            }
            ref_nonempty_ = s;
        }
    }

    /// Loads cluster sizes; false if a size-only rule already fails.
    bool load_sizes(const std::vector<int>& labels, int blocks) {
        blocks_ = blocks;
        std::fill_n(sizes_.begin(), blocks_, 0);
        for (int e = 0; e < n_; ++e) ++sizes_[labels[e]];
        max_size_ = *std::max_element(sizes_.begin(), sizes_.begin() + blocks_);
        min_size_ = *std::min_element(sizes_.begin(), sizes_.begin() + blocks_);
        return size_rules(nullptr);
    }

    void load_rest(const std::vector<int>& labels) {
        std::fill_n(weight_.begin(), blocks_, 0.0);
        std::fill_n(intra_.begin(), blocks_, 0.0);
        std::fill_n(prefix_.begin(), static_cast<std::size_t>(blocks_) * types_, 0);
        std::fill_n(skill_.begin(), static_cast<std::size_t>(blocks_) * criteria_, 0);
        std::fill_n(zero_pair_.begin(), blocks_, 0);
        for (int e = 0; e < n_; ++e) {
            const int b = labels[e];
            const Element& el = inst_.element(e);
            weight_[b] += el.weight;
            ++prefix_[static_cast<std::size_t>(b) * types_ + el.type - 1];
            if (criteria_ > 0) {
                const auto& row = inst_.team()->criteria[e];
                int* sk = &skill_[static_cast<std::size_t>(b) * criteria_];
                for (int k = 0; k < criteria_; ++k) sk[k] = std::max(sk[k], row[k]);
            }
        }
        for (int b = 0; b < blocks_; ++b) {
            int* p = &prefix_[static_cast<std::size_t>(b) * types_];
            for (int t = 1; t < types_; ++t) p[t] += p[t - 1];
        }
        for (const Edge& edge : inst_.graph().edges()) {
            if (labels[edge.a] == labels[edge.b]) intra_[labels[edge.a]] += edge.weight;
        }
        for (const auto& [a, b] : zero_pairs_) {
            if (labels[a] == labels[b]) zero_pair_[labels[a]] = 1;
        }
    }

    std::optional<double> value(const IndexSelector& sel) const {
        switch (sel.index) {
            case IndexKind::Card:
                return fold(sel.method, ref_or(&ReferenceParams::size),
                            [&](int b) { return static_cast<double>(sizes_[b]); });
            case IndexKind::Weight:
                return fold(sel.method, ref_or(&ReferenceParams::weight),
                            [&](int b) { return weight_[b]; });
            case IndexKind::Edge:
                return fold(sel.method, ref_or(&ReferenceParams::edge_weight),
                            [&](int b) { return intra_[b]; });
            case IndexKind::Struct:
                return structure(sel.method);
            case IndexKind::Skill: {
                if (sel.method == Method::Ref || sel.component < 0 || sel.component >= criteria_) {
                    return std::nullopt;
                }
                return fold(sel.method, 0.0, [&](int b) {
                    return static_cast<double>(
                            skill_[static_cast<std::size_t>(b) * criteria_ + sel.component]);
                });
            }
        }
        return std::nullopt;
    }

    /// Checks every rule; with `out` null, stops at the first violation.
    bool feasible(std::vector<Violation>* out) const {
        bool ok = size_rules(out);
        if (!ok && !out) return false;
        for (const IndexBound& b : spec_.constraints) {
            if (b.selector.index == IndexKind::Card) continue;  // done in size_rules
            ok = check_bound(b, out) && ok;
            if (!ok && !out) return false;
        }
        for (const ObjectiveTerm& t : spec_.objectives) {
            if (!value(t.selector)) {
                ok = false;
                if (!out) return false;
                out->push_back({"objective " + t.selector.name() + " not evaluable on this solution",
                                0.0, 0.0});
            }
        }
        if (spec_.skill_floor && criteria_ > 0) {
            const auto& floor = *spec_.skill_floor;
            for (int b = 0; b < blocks_; ++b) {
                for (int k = 0; k < criteria_; ++k) {
                    const int g = skill_[static_cast<std::size_t>(b) * criteria_ + k];
                    if (g >= floor[k]) continue;
                    ok = false;
                    if (!out) return false;
                    out->push_back({"skill_floor C" + std::to_string(k + 1) + " cluster " +
                                            std::to_string(b + 1),
                                    static_cast<double>(g), static_cast<double>(floor[k])});
                }
            }
        }
        if (spec_.forbid_zero_pairs) {
            for (int b = 0; b < blocks_; ++b) {
                if (!zero_pair_[b]) continue;
                ok = false;
                if (!out) return false;
                out->push_back({"zero-compatibility pair in cluster " + std::to_string(b + 1), 0.0,
                                1.0});
            }
        }
        return ok;
    }

    bool objectives(ObjectiveVector& v) const {
        v.values.resize(spec_.objectives.size());
        for (std::size_t i = 0; i < spec_.objectives.size(); ++i) {
            const auto x = value(spec_.objectives[i].selector);
            if (!x) return false;
            v.values[i] = *x;
        }
        return true;
    }

    void keys(const ObjectiveVector& v, std::vector<std::int64_t>& out) const {
        out.resize(v.values.size());
        for (std::size_t i = 0; i < out.size(); ++i) {
            const auto q = quantize(v.values[i]);
            out[i] = spec_.objectives[i].direction == Direction::Minimize ? q : -q;
        }
    }

 private:
    double ref_or(double ReferenceParams::*field) const {
        return spec_.reference ? (*spec_.reference).*field : 0.0;
    }

    template <typename F>
    std::optional<double> fold(Method m, double ref, F at) const {
        if (m == Method::Ref && !spec_.reference) return std::nullopt;
        double lo = at(0), hi = lo, dev = std::abs(lo - ref);
        for (int b = 1; b < blocks_; ++b) {
            const double v = at(b);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            dev = std::max(dev, std::abs(v - ref));
        }
        switch (m) {
            case Method::Diff: return hi - lo;
            case Method::Ref: return dev;
            case Method::Min: return lo;
            case Method::Max: return hi;
        }
        return std::nullopt;
    }

    // The last prefix sum equals the padded size for every cluster, so only
    // the first `types_` prefix sums contribute to the proximity.
    std::optional<double> structure(Method m) const {
        if (m == Method::Diff) {
            int worst = 0;
            for (int a = 0; a < blocks_; ++a) {
                const int* pa = &prefix_[static_cast<std::size_t>(a) * types_];
                for (int b = a + 1; b < blocks_; ++b) {
                    const int* pb = &prefix_[static_cast<std::size_t>(b) * types_];
                    int d = 0;
                    for (int t = 0; t < types_; ++t) d += std::abs(pa[t] - pb[t]);
                    worst = std::max(worst, d);
                }
            }
            return worst;
        }
        if (m != Method::Ref || ref_prefix_.empty() || ref_nonempty_ > max_size_) {
            return std::nullopt;
        }
        int worst = 0;
        for (int b = 0; b < blocks_; ++b) {
            const int* p = &prefix_[static_cast<std::size_t>(b) * types_];
            int d = 0;
            for (int t = 0; t < types_; ++t) d += std::abs(p[t] - ref_prefix_[t]);
            worst = std::max(worst, d);
        }
        return worst;
    }

    bool check_bound(const IndexBound& b, std::vector<Violation>* out) const {
        const auto v = value(b.selector);
        if (!v) {
            if (out) out->push_back({b.selector.name() + " not evaluable on this solution", 0.0, 0.0});
            return false;
        }
        bool ok = true;
        if (b.upper && quantize(*v) > quantize(*b.upper)) {
            ok = false;
            if (out) out->push_back({b.selector.name() + " <= bound", *v, *b.upper});
        }
        if (b.lower && quantize(*v) < quantize(*b.lower)) {
            ok = false;
            if (out) out->push_back({b.selector.name() + " >= bound", *v, *b.lower});
        }
        return ok;
    }

    bool size_rules(std::vector<Violation>* out) const {
        bool ok = true;
        auto violate = [&](std::string what, double value, double bound) {
            ok = false;
            if (out) out->push_back({std::move(what), value, bound});
        };
        if (spec_.cluster_count && blocks_ != *spec_.cluster_count) {
            violate("lambda", blocks_, *spec_.cluster_count);
        }
        if (spec_.cluster_count_max && blocks_ > *spec_.cluster_count_max) {
            violate("lambda_max", blocks_, *spec_.cluster_count_max);
        }
        if (spec_.size_min && min_size_ < *spec_.size_min) {
            violate("size_min", min_size_, *spec_.size_min);
        }
        if (spec_.size_max && max_size_ > *spec_.size_max) {
            violate("size_max", max_size_, *spec_.size_max);
        }
        if (!ok && !out) return false;
        for (const IndexBound& b : spec_.constraints) {
            if (b.selector.index != IndexKind::Card) continue;
            ok = check_bound(b, out) && ok;
            if (!ok && !out) return false;
        }
        return ok;
    }

    const Instance& inst_;
    const ProblemSpec& spec_;
    int n_;
    int types_;
    int criteria_;
    std::vector<std::pair<int, int>> zero_pairs_;
    std::vector<int> ref_prefix_;
    int ref_nonempty_ = 0;

    int blocks_ = 0;
    int max_size_ = 0;
    int min_size_ = 0;
    std::vector<int> sizes_;
    std::vector<double> weight_;
    std::vector<double> intra_;
    std::vector<int> prefix_;  // blocks x types, cumulative type counts
    std::vector<int> skill_;   // blocks x criteria
    std::vector<char> zero_pair_;
};

/// Loads `sol` into `ev`; returns its labels.
void load(Evaluator& ev, const Instance& inst, const ClusteringSolution& sol) {
    const auto labels = sol.labels(inst.size());
    ev.load_sizes(labels, sol.cluster_count());
    ev.load_rest(labels);
}

}  // namespace

Feasibility check_feasible(const Instance& inst, const ClusteringSolution& sol,
                           const ProblemSpec& spec) {
    Evaluator ev(inst, spec);
    load(ev, inst, sol);
    Feasibility f;
    f.feasible = ev.feasible(&f.violations);
    return f;
}

std::optional<double> evaluate_selector(const Instance& inst, const ClusteringSolution& sol,
                                        const IndexSelector& sel,
                                        const std::optional<ReferenceParams>& ref) {
    ProblemSpec spec;
    spec.reference = ref;
    Evaluator ev(inst, spec);
    load(ev, inst, sol);
    return ev.value(sel);
}

ObjectiveVector evaluate_objectives(const Instance& inst, const ClusteringSolution& sol,
                                    const ProblemSpec& spec) {
    Evaluator ev(inst, spec);
    load(ev, inst, sol);
    ObjectiveVector v;
    if (!ev.objectives(v)) throw std::invalid_argument("objective not evaluable on this solution");
    return v;
}

// ---------------------------------------------------------------------------
// Partition enumeration

PartitionRange PartitionRange::normalized(int n) const {
    PartitionRange r = *this;
    if (r.lambda_max <= 0 || r.lambda_max > n) r.lambda_max = n;
    if (r.size_max <= 0 || r.size_max > n) r.size_max = n;
    r.lambda_min = std::max(1, r.lambda_min);
    r.size_min = std::max(1, r.size_min);
    return r;
}

PartitionRange PartitionRange::from_spec(const ProblemSpec& spec, int n) {
    PartitionRange r;
    if (spec.cluster_count) {
        r.lambda_min = r.lambda_max = *spec.cluster_count;
    }
    if (spec.cluster_count_max) {
        r.lambda_max = r.lambda_max > 0 ? std::min(r.lambda_max, *spec.cluster_count_max)
                                        : *spec.cluster_count_max;
    }
    if (spec.size_min) r.size_min = *spec.size_min;
    if (spec.size_max) r.size_max = *spec.size_max;
    for (const IndexBound& b : spec.constraints) {
        if (b.selector.index == IndexKind::Card && b.selector.method == Method::Diff && b.upper) {
            const int spread = static_cast<int>(std::floor(*b.upper + kObjectiveResolution));
            r.max_spread = r.max_spread < 0 ? spread : std::min(r.max_spread, spread);
        }
    }
    return r.normalized(n);
}

namespace {

/// Restricted-growth-string walker with cardinality pruning. `labels[i]` is
/// the block of element i; blocks are numbered by first appearance.
class RgsWalker {
 public:
    RgsWalker(int n, const PartitionRange& range) : n_(n), r_(range), labels_(n, 0) {}

    bool feasible_range() const {
        return n_ >= 1 && r_.lambda_max >= 1 && r_.lambda_min <= r_.lambda_max &&
               r_.size_min <= r_.size_max && r_.lambda_min * r_.size_min <= n_ &&
               static_cast<long>(r_.lambda_max) * r_.size_max >= n_;
    }

    /// Walks completions of `prefix`; returns false if the visitor stopped.
    template <typename Visit>
    bool walk(const std::vector<int>& prefix, Visit&& visit) {
        sizes_.assign(n_, 0);
        blocks_ = 0;
        for (std::size_t i = 0; i < prefix.size(); ++i) {
            labels_[i] = prefix[i];
            if (prefix[i] == blocks_) ++blocks_;
            ++sizes_[prefix[i]];
        }
        return step(static_cast<int>(prefix.size()), visit);
    }

    /// All viable prefixes of length `depth` in RGS order.
    std::vector<std::vector<int>> prefixes(int depth) {
        std::vector<std::vector<int>> out;
        sizes_.assign(n_, 0);
        blocks_ = 0;
        collect(0, depth, out);
        return out;
    }

 private:
    bool viable(int placed) const {
        const int remaining = n_ - placed;
        int floor = r_.size_min;
        if (r_.max_spread >= 0) {
            const int biggest = *std::max_element(sizes_.begin(), sizes_.begin() + blocks_);
            // Every block must end within max_spread of the largest one.
            floor = std::max(floor, biggest - r_.max_spread);
        }
        long deficit = 0, capacity = 0;
        for (int b = 0; b < blocks_; ++b) {
            deficit += std::max(0, floor - sizes_[b]);
            capacity += r_.size_max - sizes_[b];
        }
        deficit += static_cast<long>(std::max(0, r_.lambda_min - blocks_)) * floor;
        capacity += static_cast<long>(r_.lambda_max - blocks_) * r_.size_max;
        return deficit <= remaining && remaining <= capacity;
    }

    template <typename F>
    void for_each_choice(int i, F&& f) {
        const int limit = std::min(blocks_ + 1, r_.lambda_max);
        for (int b = 0; b < limit; ++b) {
            if (sizes_[b] >= r_.size_max) continue;
            const bool fresh = b == blocks_;
            labels_[i] = b;
            ++sizes_[b];
            if (fresh) ++blocks_;
            const bool keep_going = !viable(i + 1) || f();
            if (fresh) --blocks_;
            --sizes_[b];
            if (!keep_going) return;
        }
    }

    template <typename Visit>
    bool step(int i, Visit& visit) {
        if (i == n_) {
            if (blocks_ < r_.lambda_min) return true;
            int lo = n_, hi = 0;
            for (int b = 0; b < blocks_; ++b) {
                lo = std::min(lo, sizes_[b]);
                hi = std::max(hi, sizes_[b]);
            }
            if (lo < r_.size_min) return true;
            if (r_.max_spread >= 0 && hi - lo > r_.max_spread) return true;
            return visit(labels_, blocks_);
        }
        bool cont = true;
        for_each_choice(i, [&] {
            cont = step(i + 1, visit);
            return cont;
        });
        return cont;
    }

    void collect(int i, int depth, std::vector<std::vector<int>>& out) {
        if (i == depth) {
            out.emplace_back(labels_.begin(), labels_.begin() + depth);
            return;
        }
        for_each_choice(i, [&] {
            collect(i + 1, depth, out);
            return true;
        });
    }

    int n_;
    PartitionRange r_;
    std::vector<int> labels_;
    std::vector<int> sizes_;
    int blocks_ = 0;
};

ClusteringSolution from_labels(const std::vector<int>& labels, int blocks) {
    std::vector<std::vector<ElementId>> clusters(blocks);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        clusters[labels[i]].push_back(static_cast<ElementId>(i));
    }
    return ClusteringSolution::from_partition(std::move(clusters));
}

double count_in_window(int n, int lambda_min, int lambda_max, int size_min, int size_max) {
    if (size_min > size_max) return 0.0;
    std::vector<std::vector<double>> binom(n + 1, std::vector<double>(n + 1, 0.0));
    for (int m = 0; m <= n; ++m) {
        binom[m][0] = 1.0;
        for (int k = 1; k <= m; ++k) binom[m][k] = binom[m - 1][k - 1] + binom[m - 1][k];
    }
    // ways[m][k]: partitions of m labelled elements into k blocks in the window;
    // the block holding the first element has size s.
    std::vector<std::vector<double>> ways(n + 1, std::vector<double>(lambda_max + 1, 0.0));
    ways[0][0] = 1.0;
    for (int m = 1; m <= n; ++m) {
        for (int k = 1; k <= lambda_max; ++k) {
            double sum = 0.0;
            for (int s = size_min; s <= std::min(size_max, m); ++s) {
                sum += binom[m - 1][s - 1] * ways[m - s][k - 1];
            }
            ways[m][k] = sum;
        }
    }
    double total = 0.0;
    for (int k = lambda_min; k <= lambda_max; ++k) total += ways[n][k];
    return total;
}

}  // namespace

std::uint64_t enumerate_partitions(int n, const PartitionRange& range,
                                   const PartitionVisitor& visit) {
    const auto r = range.normalized(n);
    RgsWalker w(n, r);
    if (!w.feasible_range()) return 0;
    std::uint64_t count = 0;
    w.walk({0}, [&](const std::vector<int>& labels, int blocks) {
        ++count;
        return visit(from_labels(labels, blocks));
    });
    return count;
}

std::vector<ClusteringSolution> enumerate_partitions(const Instance& inst,
                                                     const PartitionRange& range) {
    std::vector<ClusteringSolution> out;
    enumerate_partitions(inst.size(), range, [&](const ClusteringSolution& s) {
        out.push_back(s);
        return true;
    });
    return out;
}

double count_partitions(int n, const PartitionRange& range) {
    if (n < 1) return 0.0;
    const auto r = range.normalized(n);
    if (r.max_spread < 0) return count_in_window(n, r.lambda_min, r.lambda_max, r.size_min, r.size_max);
    // Smallest block exactly s and largest at most s + spread.
    double total = 0.0;
    for (int s = r.size_min; s <= r.size_max; ++s) {
        const int hi = std::min(r.size_max, s + r.max_spread);
        total += count_in_window(n, r.lambda_min, r.lambda_max, s, hi) -
                 count_in_window(n, r.lambda_min, r.lambda_max, s + 1, hi);
    }
    return total;
}

// ---------------------------------------------------------------------------
// Solvers

CapExceeded::CapExceeded(double estimated, std::uint64_t cap)
        : std::runtime_error([&] {
              std::ostringstream os;
              os << "search space of " << estimated << " partitions exceeds the enumeration cap of "
                 << cap << "; raise --cap or use local search";
              return os.str();
          }()),
          estimated_(estimated) {}

namespace {

struct Candidate {
    std::vector<std::int64_t> keys;
    ClusteringSolution solution;
    ObjectiveVector objective;
};

struct TaskResult {
    std::optional<Candidate> best;
    std::vector<Candidate> front;
    SolveStats stats;
};

bool covered(const std::vector<Candidate>& front, const std::vector<std::int64_t>& keys) {
    for (const auto& f : front) {
        if (f.keys == keys || dominates(f.keys, keys)) return true;
    }
    return false;
}

/// Keeps `front` nondominated; the earliest candidate wins among equal keys.
void offer(std::vector<Candidate>& front, Candidate c) {
    if (covered(front, c.keys)) return;
    std::erase_if(front, [&](const Candidate& f) { return dominates(c.keys, f.keys); });
    front.push_back(std::move(c));
}

/// Enumerates the problem's partition range in a fixed set of prefix tasks (the
/// task layout does not depend on `workers`) and calls
/// `per_feasible(task, evaluator, labels, blocks)` for each feasible partition.
template <typename PerFeasible>
std::vector<TaskResult> run_tasks(const Instance& inst, const ProblemSpec& spec,
                                  const SolveOptions& options, PerFeasible per_feasible) {
    const int n = inst.size();
    const auto range = PartitionRange::from_spec(spec, n);
    RgsWalker probe(n, range);
    if (!probe.feasible_range()) return {};
    const double estimated = count_partitions(n, range);
    if (estimated > static_cast<double>(options.cap)) throw CapExceeded(estimated, options.cap);

    const auto prefixes = probe.prefixes(std::min(n, 6));
    std::vector<TaskResult> results(prefixes.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        RgsWalker w(n, range);
        Evaluator ev(inst, spec);
        for (std::size_t t = next++; t < prefixes.size(); t = next++) {
            TaskResult& res = results[t];
            w.walk(prefixes[t], [&](const std::vector<int>& labels, int blocks) {
                ++res.stats.enumerated;
                if (!ev.load_sizes(labels, blocks)) return true;
                ev.load_rest(labels);
                if (!ev.feasible(nullptr)) return true;
                ++res.stats.feasible;
                per_feasible(res, ev, labels, blocks);
                return true;
            });
        }
    };
    const int workers = std::max(1, options.workers);
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    }
    return results;
}

}  // namespace

ExactResult solve_exact(const Instance& inst, const ProblemSpec& spec, const SolveOptions& options) {
    spec.validate(inst);
    if (spec.objectives.size() != 1) {
        throw InputError("objectives", "exact solver takes exactly one objective");
    }
    auto results = run_tasks(inst, spec, options,
                             [&](TaskResult& res, const Evaluator& ev, const std::vector<int>& labels,
                                 int blocks) {
                                 ObjectiveVector obj;
                                 ev.objectives(obj);
                                 std::vector<std::int64_t> keys;
                                 ev.keys(obj, keys);
                                 if (res.best && !(keys < res.best->keys)) return;
                                 res.best = Candidate{std::move(keys), from_labels(labels, blocks),
                                                      std::move(obj)};
                             });
    ExactResult out;
    std::optional<Candidate> best;
    for (auto& r : results) {
        out.stats.enumerated += r.stats.enumerated;
        out.stats.feasible += r.stats.feasible;
        if (r.best && (!best || r.best->keys < best->keys)) best = std::move(r.best);
    }
    if (best) {
        out.solution = std::move(best->solution);
        out.objective = std::move(best->objective);
    }
    return out;
}

ParetoResult solve_pareto(const Instance& inst, const ProblemSpec& spec, const SolveOptions& options) {
    spec.validate(inst);
    if (spec.objectives.empty()) throw InputError("objectives", "at least one objective required");
    auto results = run_tasks(inst, spec, options,
                             [&](TaskResult& res, const Evaluator& ev, const std::vector<int>& labels,
                                 int blocks) {
                                 ObjectiveVector obj;
                                 ev.objectives(obj);
                                 std::vector<std::int64_t> keys;
                                 ev.keys(obj, keys);
                                 if (covered(res.front, keys)) return;
                                 offer(res.front, Candidate{std::move(keys),
                                                            from_labels(labels, blocks),
                                                            std::move(obj)});
                             });
    std::vector<Candidate> front;
    ParetoResult out;
    for (auto& r : results) {
        out.stats.enumerated += r.stats.enumerated;
        out.stats.feasible += r.stats.feasible;
        for (auto& c : r.front) offer(front, std::move(c));
    }
    std::stable_sort(front.begin(), front.end(),
                     [](const Candidate& a, const Candidate& b) { return a.keys < b.keys; });
    for (auto& c : front) out.front.push_back({std::move(c.solution), std::move(c.objective)});
    return out;
}

ClusteringSolution local_search_improve(const Instance& inst, const ClusteringSolution& start,
                                        const ProblemSpec& spec, std::uint64_t budget,
                                        LocalSearchTrace* trace) {
    spec.validate(inst);
    if (spec.objectives.size() != 1) {
        throw InputError("objectives", "local search takes exactly one objective");
    }
    const int n = inst.size();
    Evaluator ev(inst, spec);
    load(ev, inst, start);
    if (!ev.feasible(nullptr)) throw std::invalid_argument("local search needs a feasible start");

    ObjectiveVector obj;
    ev.objectives(obj);
    std::vector<std::int64_t> current_key;
    ev.keys(obj, current_key);
    if (trace) trace->objective.push_back(obj.values.front());

    ClusteringSolution current = start;
    std::vector<int> canon(n), first(n);
    std::vector<std::int64_t> key;
    std::uint64_t used = 0;

    // Relabels `labels` to a restricted growth string (a move may empty a
    // cluster) and accepts it if feasible and strictly better.
    auto try_labels = [&](const std::vector<int>& labels) {
        ++used;
        std::fill(first.begin(), first.end(), -1);
        int blocks = 0;
        for (int e = 0; e < n; ++e) {
            if (first[labels[e]] < 0) first[labels[e]] = blocks++;
            canon[e] = first[labels[e]];
        }
        if (!ev.load_sizes(canon, blocks)) return false;
        ev.load_rest(canon);
        if (!ev.feasible(nullptr) || !ev.objectives(obj)) return false;
        ev.keys(obj, key);
        if (!(key < current_key)) return false;
        current_key = key;
        current = from_labels(canon, blocks);
        if (trace) trace->objective.push_back(obj.values.front());
        return true;
    };

    bool improved = true;
    while (improved && used < budget) {
        improved = false;
        const auto labels = current.labels(n);
        const int k = current.cluster_count();
        auto moved = labels;
        for (int e = 0; e < n && !improved && used < budget; ++e) {
            for (int c = 0; c < k && !improved && used < budget; ++c) {
                if (labels[e] == c) continue;
                moved[e] = c;
                improved = try_labels(moved);
                moved[e] = labels[e];
            }
        }
        for (int a = 0; a < n && !improved && used < budget; ++a) {
            for (int b = a + 1; b < n && !improved && used < budget; ++b) {
                if (labels[a] == labels[b]) continue;
                std::swap(moved[a], moved[b]);
                improved = try_labels(moved);
                std::swap(moved[a], moved[b]);
            }
        }
    }
    if (trace) trace->evaluations = used;
    return current;
}

}  // namespace balclust
