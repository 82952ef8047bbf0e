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

#include "balclust/report.hpp"

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <sstream>

namespace balclust {

using json = nlohmann::ordered_json;

double tidy(double v) {
    const double t = static_cast<double>(quantize(v)) * kObjectiveResolution;
    return t == 0.0 ? 0.0 : t;  // no "-0"
}

std::string format_number(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << tidy(v);
    return os.str();
}

std::string instance_digest(const Instance& inst) {
    // FNV-1a, 64 bit.
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : serialize_instance(inst)) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

namespace {

std::optional<double> computed_value(const SolutionReport& r, const ErratumNote& e) {
    auto cluster = [&](std::size_t i) -> const ClusterSummary* {
        if (e.clusters.size() <= i) return nullptr;
        const int c = e.clusters[i] - 1;
        if (c < 0 || c >= static_cast<int>(r.summaries.size())) return nullptr;
        return &r.summaries[c];
    };
    const auto& q = e.quantity;
    if (q == "size" && cluster(0)) return cluster(0)->size;
    if (q == "total_weight" && cluster(0)) return cluster(0)->total_weight;
    if (q == "intra_edge_weight" && cluster(0)) return cluster(0)->intra_edge_weight;
    if (q == "proximity" && cluster(0) && cluster(1)) {
        return proximity(cluster(0)->estimate, cluster(1)->estimate);
    }
    if (q == "b_card") return r.indices.b_card;
    if (q == "b_weight") return r.indices.b_weight;
    if (q == "b_edge") return r.indices.b_edge;
    if (q == "b_struct") return r.indices.b_struct;
    if (r.indices.ref) {
        if (q == "ref_card") return r.indices.ref->card;
        if (q == "ref_weight") return r.indices.ref->weight;
        if (q == "ref_edge") return r.indices.ref->edge;
        if (q == "ref_struct") return r.indices.ref->structure;
    }
    return std::nullopt;
}

std::string describe(const ErratumNote& e) {
    std::string s = e.quantity;
    if (!e.clusters.empty()) {
        s += "(";
        for (std::size_t i = 0; i < e.clusters.size(); ++i) {
            if (i) s += ",";
            s += "X" + std::to_string(e.clusters[i]);
        }
        s += ")";
    }
    return s;
}

}  // namespace

SolutionReport build_solution_report(const Instance& inst, std::string name,
                                     const ClusteringSolution& sol,
                                     const std::optional<ReferenceParams>& ref,
                                     const std::vector<ErratumNote>& errata) {
    SolutionReport r;
    r.name = std::move(name);
    r.solution = sol;
    r.summaries = summarize_clusters(inst, sol);
    r.proximity = proximity_matrix(r.summaries);
    r.indices = method1_indices(r.summaries);
    if (ref) r.indices.ref = method2_indices(r.summaries, *ref);
    for (const auto& e : errata) {
        if (e.solution != r.name) continue;
        const auto v = computed_value(r, e);
        if (!v || quantize(*v) == quantize(e.published)) continue;
        std::string note = describe(e) + ": computed " + format_number(*v) + ", published " +
                           format_number(e.published);
        if (!e.note.empty()) note += " (" + e.note + ")";
        r.errata.push_back(std::move(note));
    }
    return r;
}

json clusters_json(const ClusteringSolution& sol) {
    json out = json::array();
    for (const auto& c : sol.clusters()) {
        json ids = json::array();
        for (ElementId e : c) ids.push_back(e + 1);
        out.push_back(std::move(ids));
    }
    return out;
}

json to_json(const SolutionReport& r) {
    json j;
    j["name"] = r.name;
    j["clusters"] = clusters_json(r.solution);
    json sums = json::array();
    for (const auto& s : r.summaries) {
        sums.push_back({{"size", s.size},
                        {"total_weight", tidy(s.total_weight)},
                        {"intra_edge_weight", tidy(s.intra_edge_weight)},
                        {"estimate", s.estimate.counts()}});
    }
    j["summaries"] = std::move(sums);
    j["proximity"] = r.proximity;
    json idx;
    idx["b_card"] = tidy(r.indices.b_card);
    idx["b_weight"] = tidy(r.indices.b_weight);
    idx["b_edge"] = tidy(r.indices.b_edge);
    idx["b_struct"] = r.indices.b_struct;
    if (r.indices.ref) {
        idx["ref_card"] = tidy(r.indices.ref->card);
        idx["ref_weight"] = tidy(r.indices.ref->weight);
        idx["ref_edge"] = tidy(r.indices.ref->edge);
        idx["ref_struct"] = r.indices.ref->structure;
    }
    j["indices"] = std::move(idx);
    j["errata"] = r.errata;
    return j;
}

json to_json(const TeamReport& r) {
    json j;
    json teams = json::array();
    for (const auto& t : r.teams) {
        json members = json::array();
        for (ElementId e : t.members) members.push_back(e + 1);
        teams.push_back({{"members", std::move(members)},
                         {"skill", t.skill},
                         {"compat", t.compat},
                         {"size_ok", t.size_ok},
                         {"skill_ok", t.skill_ok},
                         {"zero_pair_free", t.zero_pair_free}});
    }
    j["teams"] = std::move(teams);
    j["b_card"] = r.b_card;
    j["b_compat"] = r.b_compat;
    j["min_compat"] = r.min_compat;
    j["worst_skill"] = r.worst_skill;
    j["feasible"] = r.feasible;
    return j;
}

std::string format_clusters(const ClusteringSolution& sol) {
    std::ostringstream os;
    for (int i = 0; i < sol.cluster_count(); ++i) {
        if (i) os << ' ';
        os << '{';
        const auto& c = sol.cluster(i);
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (k) os << ',';
            os << c[k] + 1;
        }
        os << '}';
    }
    return os.str();
}

std::string render_text(const SolutionReport& r) {
    std::ostringstream os;
    os << "Solution " << r.name << ": " << format_clusters(r.solution) << "\n\n";
    os << std::left << std::setw(9) << "Cluster" << std::setw(6) << "Size" << std::setw(12)
       << "Weight" << std::setw(14) << "IntraEdge" << "Estimate\n";
    for (std::size_t i = 0; i < r.summaries.size(); ++i) {
        const auto& s = r.summaries[i];
        os << std::setw(9) << ("X" + std::to_string(i + 1)) << std::setw(6) << s.size
           << std::setw(12) << format_number(s.total_weight) << std::setw(14)
           << format_number(s.intra_edge_weight) << s.estimate << '\n';
    }
    os << "\nProximity\n" << std::setw(9) << "";
    for (std::size_t i = 0; i < r.proximity.size(); ++i) {
        os << std::setw(5) << ("X" + std::to_string(i + 1));
    }
    os << '\n';
    for (std::size_t i = 0; i < r.proximity.size(); ++i) {
        os << std::setw(9) << ("X" + std::to_string(i + 1));
        for (int d : r.proximity[i]) os << std::setw(5) << d;
        os << '\n';
    }
    os << "\nIndex                         Value\n";
    auto line = [&](const char* label, double v) {
        os << std::setw(30) << label << format_number(v) << '\n';
    };
    line("B^c  cardinality (diff)", r.indices.b_card);
    line("B^w  total weight (diff)", r.indices.b_weight);
    line("B^v  intra edge weight (diff)", r.indices.b_edge);
    line("B^s  structure (diff)", r.indices.b_struct);
    if (r.indices.ref) {
        line("B^c  cardinality (ref)", r.indices.ref->card);
        line("B^w  total weight (ref)", r.indices.ref->weight);
        line("B^v  intra edge weight (ref)", r.indices.ref->edge);
        line("B^s  structure (ref)", r.indices.ref->structure);
    }
    for (const auto& e : r.errata) os << "\nNote: " << e;
    if (!r.errata.empty()) os << '\n';
    return os.str();
}

std::string render_text(const TeamReport& r) {
    std::ostringstream os;
    os << std::left << std::setw(6) << "Team" << std::setw(20) << "Members" << std::setw(14)
       << "Skill" << std::setw(8) << "Compat" << "Checks\n";
    for (std::size_t i = 0; i < r.teams.size(); ++i) {
        const auto& t = r.teams[i];
        std::string members = "{";
        for (std::size_t k = 0; k < t.members.size(); ++k) {
            if (k) members += ",";
            members += std::to_string(t.members[k] + 1);
        }
        members += "}";
        std::string skill = "(";
        for (std::size_t k = 0; k < t.skill.size(); ++k) {
            if (k) skill += ",";
            skill += std::to_string(t.skill[k]);
        }
        skill += ")";
        std::string checks;
        checks += t.size_ok ? "size ok" : "SIZE";
        checks += t.skill_ok ? ", skill ok" : ", SKILL";
        checks += t.zero_pair_free ? "" : ", zero pair";
        os << std::setw(6) << ("X" + std::to_string(i + 1)) << std::setw(20) << members
           << std::setw(14) << skill << std::setw(8) << t.compat << checks << '\n';
    }
    os << "\nB^c = " << r.b_card << ", B^v (compatibility) = " << r.b_compat
       << ", min compatibility = " << r.min_compat << ", feasible = "
       << (r.feasible ? "yes" : "no") << '\n';
    return os.str();
}

}  // namespace balclust
