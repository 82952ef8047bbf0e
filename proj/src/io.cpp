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

#include "balclust/io.hpp"

#include <fstream>
#include <sstream>

#include "json_util.hpp"

namespace balclust {

using json = nlohmann::ordered_json;
using detail::as_int;
using detail::as_number;
using detail::parse_json;
using detail::require;

namespace {

std::vector<std::vector<ElementId>> read_clusters(const json& doc, const std::string& path) {
    if (!doc.is_array()) throw InputError(path, "expected an array of clusters");
    std::vector<std::vector<ElementId>> clusters;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto cpath = path + "[" + std::to_string(i) + "]";
        if (!doc[i].is_array()) throw InputError(cpath, "expected an array of element ids");
        std::vector<ElementId> c;
        for (std::size_t j = 0; j < doc[i].size(); ++j) {
            c.push_back(as_int(doc[i][j], cpath + "[" + std::to_string(j) + "]") - 1);
        }
        clusters.push_back(std::move(c));
    }
    return clusters;
}

ClusteringSolution checked_solution(const Instance& inst, const json& doc, const std::string& path) {
    try {
        return validate_solution(inst, read_clusters(doc, path));
    } catch (const InputError& e) {
        // Re-anchor the validator's relative path under the document path.
        const std::string& p = e.path();
        std::string what = e.what();
        std::string msg = p.empty() ? what : what.substr(p.size() + 2);
        std::string sub = p.rfind("clusters", 0) == 0 ? p.substr(8) : p;
        throw InputError(path + sub, msg);
    }
}

}  // namespace

Instance parse_instance(std::string_view text) {
    const json doc = parse_json(text);
    if (!doc.is_object()) throw InputError("", "instance document must be a JSON object");

    const int type_count = as_int(require(doc, "type_count", ""), "type_count");
    if (type_count < 1) throw InputError("type_count", "must be a positive integer");

    const json& elems = require(doc, "elements", "");
    if (!elems.is_array() || elems.empty()) {
        throw InputError("elements", "expected a non-empty array");
    }
    const int n = static_cast<int>(elems.size());
    std::vector<Element> elements(n);
    std::vector<bool> seen(n, false);
    for (int i = 0; i < n; ++i) {
        const auto path = "elements[" + std::to_string(i) + "]";
        const json& e = elems[i];
        if (!e.is_object()) throw InputError(path, "expected an object");
        const int id = as_int(require(e, "id", path), path + ".id");
        if (id < 1 || id > n) {
            throw InputError(path + ".id", "ids must be contiguous from 1 to " + std::to_string(n));
        }
        if (seen[id - 1]) throw InputError(path + ".id", "duplicate id " + std::to_string(id));
        seen[id - 1] = true;
        Element el;
        el.weight = e.contains("weight") ? as_number(e["weight"], path + ".weight") : 0.0;
        if (el.weight < 0.0) throw InputError(path + ".weight", "weight must be non-negative");
        el.type = e.contains("type") ? as_int(e["type"], path + ".type") : 1;
        if (el.type < 1 || el.type > type_count) {
            throw InputError(path + ".type", "type " + std::to_string(el.type) + " outside 1.." +
                                                     std::to_string(type_count));
        }
        elements[id - 1] = el;
    }

    WeightedGraph graph(n);
    if (doc.contains("edges")) {
        const json& edges = doc["edges"];
        if (!edges.is_array()) throw InputError("edges", "expected an array");
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const auto path = "edges[" + std::to_string(i) + "]";
            const json& e = edges[i];
            if (!e.is_array() || e.size() != 3) throw InputError(path, "expected [id1, id2, weight]");
            const int a = as_int(e[0], path + "[0]");
            const int b = as_int(e[1], path + "[1]");
            graph.add_edge(a - 1, b - 1, as_number(e[2], path + "[2]"), path);
        }
    }

    Instance inst(std::move(elements), std::move(graph), type_count);

    if (doc.contains("criteria")) {
        TeamData team;
        const json& rows = doc["criteria"];
        if (!rows.is_array()) throw InputError("criteria", "expected an array of rows");
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto path = "criteria[" + std::to_string(i) + "]";
            if (!rows[i].is_array()) throw InputError(path, "expected an array of grades");
            std::vector<int> row;
            for (std::size_t j = 0; j < rows[i].size(); ++j) {
                row.push_back(as_int(rows[i][j], path + "[" + std::to_string(j) + "]"));
            }
            team.criteria.push_back(std::move(row));
        }
        team.compatibility.assign(n, std::vector<int>(n, 0));
        if (doc.contains("compatibility")) {
            const json& pairs = doc["compatibility"];
            if (!pairs.is_array()) throw InputError("compatibility", "expected an array");
            std::vector<std::vector<bool>> given(n, std::vector<bool>(n, false));
            for (std::size_t i = 0; i < pairs.size(); ++i) {
                const auto path = "compatibility[" + std::to_string(i) + "]";
                const json& p = pairs[i];
                if (!p.is_array() || p.size() != 3) throw InputError(path, "expected [id1, id2, grade]");
                const int a = as_int(p[0], path + "[0]") - 1;
                const int b = as_int(p[1], path + "[1]") - 1;
                const int g = as_int(p[2], path + "[2]");
                if (a < 0 || a >= n || b < 0 || b >= n) throw InputError(path, "unknown element id");
                if (a == b) throw InputError(path, "self-pair");
                if (g < 0 || g > 3) throw InputError(path, "grade must lie in 0..3");
                if (given[a][b] && team.compatibility[a][b] != g) {
                    throw InputError(path, "asymmetric compatibility grade");
                }
                given[a][b] = given[b][a] = true;
                team.compatibility[a][b] = team.compatibility[b][a] = g;
            }
        }
        inst.set_team(std::move(team));
    } else if (doc.contains("compatibility")) {
        throw InputError("compatibility", "compatibility requires a criteria block");
    }

    if (doc.contains("solutions")) {
        const json& sols = doc["solutions"];
        if (!sols.is_object()) throw InputError("solutions", "expected an object of named solutions");
        for (auto it = sols.begin(); it != sols.end(); ++it) {
            const auto path = "solutions." + it.key();
            inst.add_solution(it.key(), checked_solution(inst, it.value(), path));
        }
    }
    return inst;
}

Instance load_instance(const std::filesystem::path& path) { return parse_instance(read_file(path)); }

std::string serialize_instance(const Instance& inst) {
    json doc;
    doc["type_count"] = inst.type_count();
    json elems = json::array();
    for (int i = 0; i < inst.size(); ++i) {
        const auto& e = inst.element(i);
        elems.push_back({{"id", i + 1}, {"weight", e.weight}, {"type", e.type}});
    }
    doc["elements"] = std::move(elems);
    json edges = json::array();
    for (const Edge& e : inst.graph().edges()) edges.push_back({e.a + 1, e.b + 1, e.weight});
    doc["edges"] = std::move(edges);
    if (const auto& team = inst.team()) {
        doc["criteria"] = team->criteria;
        json pairs = json::array();
        for (int a = 0; a < inst.size(); ++a) {
            for (int b = a + 1; b < inst.size(); ++b) {
                pairs.push_back({a + 1, b + 1, team->compatibility[a][b]});
            }
        }
        doc["compatibility"] = std::move(pairs);
    }
    if (!inst.solutions().empty()) {
        json sols = json::object();
        for (const auto& [name, sol] : inst.solutions()) {
            json clusters = json::array();
            for (const auto& c : sol.clusters()) {
                json ids = json::array();
                for (ElementId e : c) ids.push_back(e + 1);
                clusters.push_back(std::move(ids));
            }
            sols[name] = std::move(clusters);
        }
        doc["solutions"] = std::move(sols);
    }
    return doc.dump(2);
}

std::vector<ErratumNote> parse_errata(std::string_view text) {
    const json doc = parse_json(text);
    std::vector<ErratumNote> out;
    if (!doc.is_object() || !doc.contains("errata")) return out;
    const json& list = doc["errata"];
    if (!list.is_array()) throw InputError("errata", "expected an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
        const auto path = "errata[" + std::to_string(i) + "]";
        const json& e = list[i];
        ErratumNote note;
        note.solution = require(e, "solution", path).get<std::string>();
        note.quantity = require(e, "quantity", path).get<std::string>();
        if (e.contains("clusters")) {
            for (const auto& c : e["clusters"]) note.clusters.push_back(as_int(c, path + ".clusters"));
        }
        note.published = as_number(require(e, "published", path), path + ".published");
        if (e.contains("note")) note.note = e["note"].get<std::string>();
        out.push_back(std::move(note));
    }
    return out;
}

ClusteringSolution parse_solution(const Instance& inst, std::string_view text) {
    return checked_solution(inst, parse_json(text), "clusters");
}

ReferenceParams parse_reference(std::string_view text) {
    const json doc = parse_json(text);
    if (!doc.is_object()) throw InputError("", "reference document must be a JSON object");
    ReferenceParams r;
    r.size = as_number(require(doc, "size", ""), "size");
    r.weight = as_number(require(doc, "weight", ""), "weight");
    r.edge_weight = as_number(require(doc, "edge_weight", ""), "edge_weight");
    if (r.size < 0 || r.weight < 0 || r.edge_weight < 0) {
        throw InputError("", "reference parameters must be non-negative");
    }
    const json& est = require(doc, "estimate", "");
    if (!est.is_array() || est.empty()) throw InputError("estimate", "expected a non-empty array");
    std::vector<int> counts;
    for (std::size_t i = 0; i < est.size(); ++i) {
        const int c = as_int(est[i], "estimate[" + std::to_string(i) + "]");
        if (c < 0) throw InputError("estimate[" + std::to_string(i) + "]", "must be non-negative");
        counts.push_back(c);
    }
    r.estimate = MultisetEstimate(std::move(counts));
    return r;
}

ReferenceParams load_reference(const std::filesystem::path& path) {
    return parse_reference(read_file(path));
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path.string(), "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace balclust
