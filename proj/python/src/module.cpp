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

// Python bindings. Element ids and cluster indices are 0-based here, as in
// the C++ API; JSON documents and the CLI use 1-based ids.

#include <pybind11/pybind11.h>
#include <pybind11/operators.h>
#include <pybind11/stl.h>

#include <sstream>

#include "balclust/cli.hpp"
#include "balclust/indices.hpp"
#include "balclust/io.hpp"
#include "balclust/multiset.hpp"
#include "balclust/optimization.hpp"
#include "balclust/report.hpp"
#include "balclust/team.hpp"

namespace py = pybind11;
using namespace balclust;

namespace {

py::dict index_dict(const IndexReport& r) {
    py::dict d;
    d["b_card"] = r.b_card;
    d["b_weight"] = r.b_weight;
    d["b_edge"] = r.b_edge;
    d["b_struct"] = r.b_struct;
    if (r.ref) {
        d["ref_card"] = r.ref->card;
        d["ref_weight"] = r.ref->weight;
        d["ref_edge"] = r.ref->edge;
        d["ref_struct"] = r.ref->structure;
    }
    return d;
}

py::dict stats_dict(const SolveStats& s) {
    py::dict d;
    d["enumerated"] = s.enumerated;
    d["feasible"] = s.feasible;
    return d;
}

}  // namespace

PYBIND11_MODULE(_balclust, m) {
    m.doc() = "Balanced clustering: balance indices, exact and Pareto solvers, team formation";

    auto input_error = py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);
    py::register_exception<HeuristicInfeasible>(m, "HeuristicInfeasible", PyExc_RuntimeError);
    (void)input_error;

    py::class_<MultisetEstimate>(m, "MultisetEstimate")
            .def(py::init<std::vector<int>>(), py::arg("counts"))
            .def_property_readonly("counts", &MultisetEstimate::counts)
            .def_property_readonly("total", &MultisetEstimate::total)
            .def("prefix_sums", &MultisetEstimate::prefix_sums)
            .def("repadded", &MultisetEstimate::repadded, py::arg("total"))
            .def(py::self == py::self)
            .def("__repr__", &MultisetEstimate::to_string);

    py::class_<ClusteringSolution>(m, "ClusteringSolution")
            .def(py::init(&ClusteringSolution::from_partition), py::arg("clusters"))
            .def_property_readonly("clusters", &ClusteringSolution::clusters)
            .def_property_readonly("cluster_count", &ClusteringSolution::cluster_count)
            .def("canonical", &ClusteringSolution::canonical)
            .def("labels", &ClusteringSolution::labels, py::arg("n"))
            .def(py::self == py::self)
            .def("__repr__", [](const ClusteringSolution& s) { return format_clusters(s); });

    py::class_<Instance>(m, "Instance")
            .def_property_readonly("size", &Instance::size)
            .def_property_readonly("type_count", &Instance::type_count)
            .def_property_readonly("edge_count",
                                   [](const Instance& i) { return i.graph().edges().size(); })
            .def_property_readonly("has_team", [](const Instance& i) { return i.team().has_value(); })
            .def_property_readonly("solutions",
                                   [](const Instance& i) {
                                       py::dict d;
                                       for (const auto& [name, sol] : i.solutions()) d[py::str(name)] = sol;
                                       return d;
                                   })
            .def("__eq__", [](const Instance& a, const Instance& b) { return a == b; });

    py::class_<ReferenceParams>(m, "ReferenceParams")
            .def(py::init([](double size, double weight, double edge_weight, std::vector<int> estimate) {
                     return ReferenceParams{size, weight, edge_weight, MultisetEstimate(std::move(estimate))};
                 }),
                 py::arg("size"), py::arg("weight"), py::arg("edge_weight"), py::arg("estimate"))
            .def_readonly("size", &ReferenceParams::size)
            .def_readonly("weight", &ReferenceParams::weight)
            .def_readonly("edge_weight", &ReferenceParams::edge_weight)
            .def_readonly("estimate", &ReferenceParams::estimate);

    py::class_<ClusterSummary>(m, "ClusterSummary")
            .def_readonly("size", &ClusterSummary::size)
            .def_readonly("total_weight", &ClusterSummary::total_weight)
            .def_readonly("intra_edge_weight", &ClusterSummary::intra_edge_weight)
            .def_readonly("estimate", &ClusterSummary::estimate);

    py::class_<ScaleNode>(m, "ScaleNode")
            .def_readonly("estimate", &ScaleNode::estimate)
            .def_readonly("up", &ScaleNode::up)
            .def_readonly("down", &ScaleNode::down);

    py::class_<ProblemSpec>(m, "ProblemSpec")
            .def_property_readonly("objectives", [](const ProblemSpec& s) {
                std::vector<std::string> names;
                for (const auto& t : s.objectives) names.push_back(t.selector.name());
                return names;
            });

    py::class_<TeamSpec>(m, "TeamSpec")
            .def_readonly("size_min", &TeamSpec::size_min)
            .def_readonly("size_max", &TeamSpec::size_max)
            .def_readonly("skill_floor", &TeamSpec::skill_floor)
            .def_readonly("kernel_criteria", &TeamSpec::kernel_criteria);

    m.def("parse_instance", &parse_instance, py::arg("text"));
    m.def("load_instance", [](const std::string& p) { return load_instance(p); }, py::arg("path"));
    m.def("serialize_instance", &serialize_instance, py::arg("instance"));
    m.def("load_reference", [](const std::string& p) { return load_reference(p); }, py::arg("path"));
    m.def("validate_solution", &validate_solution, py::arg("instance"), py::arg("clusters"));

    m.def("structure_estimate",
          py::overload_cast<const Instance&, const ClusteringSolution&, int>(&structure_estimate),
          py::arg("instance"), py::arg("solution"), py::arg("index"));
    m.def("proximity", &proximity, py::arg("a"), py::arg("b"));
    m.def("dominance_compare",
          [](const MultisetEstimate& a, const MultisetEstimate& b) {
              return to_string(dominance_compare(a, b));
          },
          py::arg("a"), py::arg("b"));
    m.def("enumerate_scale", &enumerate_scale, py::arg("k"), py::arg("n"));

    m.def("summarize_clusters", &summarize_clusters, py::arg("instance"), py::arg("solution"));
    m.def("evaluate_indices",
          [](const Instance& inst, const ClusteringSolution& sol, std::optional<ReferenceParams> ref) {
              return index_dict(evaluate_indices(inst, sol, ref));
          },
          py::arg("instance"), py::arg("solution"), py::arg("reference") = py::none());

    m.def("parse_problem_spec", &parse_problem_spec, py::arg("text"));
    m.def("count_partitions",
          [](int n, int lambda_min, int lambda_max, int size_min, int size_max) {
              PartitionRange r;
              r.lambda_min = lambda_min;
              r.lambda_max = lambda_max;
              r.size_min = size_min;
              r.size_max = size_max;
              return count_partitions(n, r);
          },
          py::arg("n"), py::arg("lambda_min") = 1, py::arg("lambda_max") = 0, py::arg("size_min") = 1,
          py::arg("size_max") = 0);
    m.def("solve_exact",
          [](const Instance& inst, const ProblemSpec& spec, std::uint64_t cap, int workers) {
              ExactResult r;
              {
                  py::gil_scoped_release release;
                  r = solve_exact(inst, spec, {cap, workers});
              }
              py::dict d;
              d["solution"] = r.solution ? py::cast(*r.solution) : py::none();
              d["objective"] = r.objective.values;
              d["stats"] = stats_dict(r.stats);
              return d;
          },
          py::arg("instance"), py::arg("spec"), py::arg("cap") = SolveOptions{}.cap,
          py::arg("workers") = 1);
    m.def("solve_pareto",
          [](const Instance& inst, const ProblemSpec& spec, std::uint64_t cap, int workers) {
              ParetoResult r;
              {
                  py::gil_scoped_release release;
                  r = solve_pareto(inst, spec, {cap, workers});
              }
              py::list front;
              for (const auto& p : r.front) front.append(py::make_tuple(p.solution, p.objective.values));
              py::dict d;
              d["front"] = front;
              d["stats"] = stats_dict(r.stats);
              return d;
          },
          py::arg("instance"), py::arg("spec"), py::arg("cap") = SolveOptions{}.cap,
          py::arg("workers") = 1);
    m.def("local_search_improve",
          [](const Instance& inst, const ClusteringSolution& start, const ProblemSpec& spec,
             std::uint64_t budget) {
              LocalSearchTrace trace;
              auto sol = local_search_improve(inst, start, spec, budget, &trace);
              return py::make_tuple(sol, trace.objective);
          },
          py::arg("instance"), py::arg("start"), py::arg("spec"), py::arg("budget") = 100000);

    m.def("parse_team_spec", &parse_team_spec, py::arg("text"));
    m.def("team_skill",
          [](const Instance& inst, const std::vector<ElementId>& team) {
              if (!inst.team()) throw InputError("criteria", "instance has no team data");
              return team_skill(*inst.team(), team);
          },
          py::arg("instance"), py::arg("team"));
    m.def("team_compat",
          [](const Instance& inst, const std::vector<ElementId>& team) {
              if (!inst.team()) throw InputError("compatibility", "instance has no team data");
              return team_compat(*inst.team(), team);
          },
          py::arg("instance"), py::arg("team"));
    m.def("kernel_heuristic",
          [](const Instance& inst, const TeamSpec& spec) {
              const auto run = kernel_heuristic(inst, spec);
              return py::make_tuple(run.solution, run.kernels);
          },
          py::arg("instance"), py::arg("spec"));
    m.def("evaluate_teams",
          [](const Instance& inst, const ClusteringSolution& sol, const TeamSpec& spec) {
              return to_json(evaluate_teams(inst, sol, spec)).dump();
          },
          py::arg("instance"), py::arg("solution"), py::arg("spec"));

    m.def("run_cli",
          [](const std::vector<std::string>& args) {
              std::ostringstream out, err;
              const int code = run_cli(args, out, err);
              return py::make_tuple(code, out.str(), err.str());
          },
          py::arg("args"));
}
