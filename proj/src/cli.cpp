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

#include "balclust/cli.hpp"

#include <chrono>
#include <filesystem>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "balclust/io.hpp"
#include "balclust/multiset.hpp"
#include "balclust/optimization.hpp"
#include "balclust/report.hpp"
#include "balclust/team.hpp"

namespace balclust {

using json = nlohmann::ordered_json;

namespace {

struct CommonOptions {
    bool json = false;
    bool timing = false;
    int workers = 1;
    std::uint64_t cap = SolveOptions{}.cap;
};

json instance_header(const Instance& inst, const std::string& path) {
    return {{"file", std::filesystem::path(path).filename().string()},
            {"digest", instance_digest(inst)},
            {"elements", inst.size()}};
}

json objective_json(const ProblemSpec& spec, const ObjectiveVector& v) {
    json out = json::array();
    for (std::size_t i = 0; i < v.values.size(); ++i) {
        out.push_back({{"term", spec.objectives[i].selector.name()},
                       {"direction", spec.objectives[i].direction == Direction::Minimize ? "min" : "max"},
                       {"value", tidy(v.values[i])}});
    }
    return out;
}

std::string objective_text(const ProblemSpec& spec, const ObjectiveVector& v) {
    std::string s;
    for (std::size_t i = 0; i < v.values.size(); ++i) {
        if (i) s += ", ";
        s += spec.objectives[i].selector.name() + " = " + format_number(v.values[i]);
    }
    return s;
}

json stats_json(const SolveStats& s) {
    return {{"enumerated", s.enumerated}, {"feasible", s.feasible}};
}

void print(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

// ---------------------------------------------------------------------------

int cmd_evaluate(const std::string& instance_path, const std::vector<std::string>& names,
                 const std::string& reference_path, const CommonOptions& opt, std::ostream& out) {
    const std::string text = read_file(instance_path);
    const Instance inst = parse_instance(text);
    const auto errata = parse_errata(text);
    std::optional<ReferenceParams> ref;
    if (!reference_path.empty()) ref = load_reference(reference_path);

    std::vector<std::pair<std::string, ClusteringSolution>> chosen;
    if (names.empty()) {
        chosen = inst.solutions();
        if (chosen.empty()) throw InputError("solutions", "instance carries no solutions to evaluate");
    }
    for (const auto& n : names) {
        const auto* sol = inst.find_solution(n);
        if (!sol) throw InputError("--solution", "unknown solution '" + n + "'");
        chosen.emplace_back(n, *sol);
    }

    json reports = json::array();
    std::string text_out;
    for (const auto& [name, sol] : chosen) {
        const auto report = build_solution_report(inst, name, sol, ref, errata);
        if (opt.json) {
            reports.push_back(to_json(report));
        } else {
            text_out += render_text(report) + "\n";
        }
    }
    if (opt.json) {
        json j;
        j["command"] = "evaluate";
        j["instance"] = instance_header(inst, instance_path);
        if (!reference_path.empty()) {
            j["reference"] = std::filesystem::path(reference_path).filename().string();
        }
        j["solutions"] = std::move(reports);
        print(out, j);
    } else {
        out << text_out;
    }
    return kExitOk;
}

int cmd_solve(const std::string& instance_path, const std::string& spec_path, bool local,
              const std::string& start_name, std::uint64_t budget, const CommonOptions& opt,
              std::ostream& out) {
    const Instance inst = load_instance(instance_path);
    const ProblemSpec spec = parse_problem_spec(read_file(spec_path));
    spec.validate(inst);
    const auto t0 = std::chrono::steady_clock::now();

    json j;
    j["command"] = "solve";
    j["instance"] = instance_header(inst, instance_path);
    j["spec"] = std::filesystem::path(spec_path).filename().string();

    std::optional<ClusteringSolution> best;
    ObjectiveVector objective;
    if (local) {
        const auto* start = inst.find_solution(start_name);
        if (!start) throw InputError("--start", "unknown solution '" + start_name + "'");
        if (!check_feasible(inst, *start, spec).feasible) {
            throw InputError("--start", "start solution violates the problem constraints");
        }
        LocalSearchTrace trace;
        best = local_search_improve(inst, *start, spec, budget, &trace);
        objective = evaluate_objectives(inst, *best, spec);
        j["method"] = "local_search";
        j["start"] = start_name;
        j["moves_accepted"] = trace.objective.size() - 1;
        j["evaluations"] = trace.evaluations;
    } else {
        const auto result = solve_exact(inst, spec, {opt.cap, opt.workers});
        best = result.solution;
        objective = result.objective;
        j["method"] = "exact";
        j["stats"] = stats_json(result.stats);
    }
    const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (opt.timing) j["seconds"] = seconds;

    j["status"] = best ? "optimal" : "infeasible";
    if (best) {
        j["objective"] = objective_json(spec, objective);
        j["clusters"] = clusters_json(*best);
    }
    if (opt.json) {
        print(out, j);
    } else if (best) {
        out << "status: " << (local ? "local optimum" : "optimal") << '\n'
            << "objective: " << objective_text(spec, objective) << '\n'
            << "clusters: " << format_clusters(*best) << '\n';
        if (j.contains("stats")) {
            out << "enumerated: " << j["stats"]["enumerated"] << ", feasible: "
                << j["stats"]["feasible"] << '\n';
        }
        if (opt.timing) out << "seconds: " << seconds << '\n';
    } else {
        out << "status: infeasible\n";
    }
    return best ? kExitOk : kExitInfeasible;
}

json front_json(const ProblemSpec& spec, const ParetoResult& r) {
    json front = json::array();
    for (const auto& p : r.front) {
        front.push_back({{"objective", objective_json(spec, p.objective)},
                         {"clusters", clusters_json(p.solution)}});
    }
    return front;
}

std::string front_text(const ProblemSpec& spec, const ParetoResult& r) {
    std::ostringstream os;
    os << "front: " << r.front.size() << " point(s); enumerated " << r.stats.enumerated
       << ", feasible " << r.stats.feasible << '\n';
    for (const auto& p : r.front) {
        os << "  " << objective_text(spec, p.objective) << "  " << format_clusters(p.solution)
           << '\n';
    }
    return os.str();
}

int cmd_pareto(const std::string& instance_path, const std::string& spec_path,
               const CommonOptions& opt, std::ostream& out) {
    const Instance inst = load_instance(instance_path);
    const ProblemSpec spec = parse_problem_spec(read_file(spec_path));
    const auto t0 = std::chrono::steady_clock::now();
    const auto result = solve_pareto(inst, spec, {opt.cap, opt.workers});
    const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (opt.json) {
        json j;
        j["command"] = "pareto";
        j["instance"] = instance_header(inst, instance_path);
        j["spec"] = std::filesystem::path(spec_path).filename().string();
        j["stats"] = stats_json(result.stats);
        if (opt.timing) j["seconds"] = seconds;
        j["front"] = front_json(spec, result);
        print(out, j);
    } else {
        out << front_text(spec, result);
        if (opt.timing) out << "seconds: " << seconds << '\n';
    }
    return result.front.empty() ? kExitInfeasible : kExitOk;
}

int cmd_team(const std::string& instance_path, const std::string& spec_path,
             const std::string& mode, const std::string& evaluate_name, const CommonOptions& opt,
             std::ostream& out) {
    const Instance raw = load_instance(instance_path);
    if (!raw.team()) throw InputError("criteria", "team instance needs criteria and compatibility");
    const Instance inst = with_compatibility_graph(raw);
    const std::string spec_text = read_file(spec_path);
    const TeamSpec tspec = parse_team_spec(spec_text);

    json j;
    j["command"] = "team";
    j["instance"] = instance_header(raw, instance_path);
    j["spec"] = std::filesystem::path(spec_path).filename().string();
    j["mode"] = mode;

    if (mode == "evaluate") {
        const auto* sol = inst.find_solution(evaluate_name);
        if (!sol) throw InputError("--evaluate", "unknown solution '" + evaluate_name + "'");
        const auto report = evaluate_teams(inst, *sol, tspec);
        j["solution"] = evaluate_name;
        j["report"] = to_json(report);
        if (opt.json) {
            print(out, j);
        } else {
            out << "Solution " << evaluate_name << "\n" << render_text(report);
        }
        return kExitOk;
    }

    if (mode == "heuristic") {
        const auto run = kernel_heuristic(inst, tspec);
        const auto report = evaluate_teams(inst, run.solution, tspec);
        json kernels = json::array();
        for (ElementId k : run.kernels) kernels.push_back(k + 1);
        j["cluster_count"] = run.cluster_count;
        j["kernels"] = std::move(kernels);
        j["clusters"] = clusters_json(run.solution);
        j["report"] = to_json(report);
        if (opt.json) {
            print(out, j);
        } else {
            out << "teams: " << run.cluster_count << ", kernels:";
            for (ElementId k : run.kernels) out << ' ' << k + 1;
            out << "\n\n" << render_text(report);
        }
        return kExitOk;
    }

    ProblemSpec pspec = parse_problem_spec(spec_text);
    auto merged = to_problem_spec(tspec, pspec.objectives);
    merged.constraints = pspec.constraints;
    merged.reference = pspec.reference;
    merged.cluster_count = pspec.cluster_count;
    merged.cluster_count_max = pspec.cluster_count_max;
    if (merged.objectives.empty()) {
        const ObjectiveTerm worst_compat{{IndexKind::Edge, Method::Min, 0}, Direction::Maximize};
        const ObjectiveTerm card{{IndexKind::Card, Method::Diff, 0}, Direction::Minimize};
        if (mode == "exact") {
            merged.objectives = {worst_compat};
        } else {
            merged.objectives = {card, worst_compat};
        }
    }

    if (mode == "exact") {
        const auto result = solve_exact(inst, merged, {opt.cap, opt.workers});
        j["stats"] = stats_json(result.stats);
        j["status"] = result.infeasible() ? "infeasible" : "optimal";
        if (!result.infeasible()) {
            j["objective"] = objective_json(merged, result.objective);
            j["clusters"] = clusters_json(*result.solution);
            j["report"] = to_json(evaluate_teams(inst, *result.solution, tspec));
        }
        if (opt.json) {
            print(out, j);
        } else if (result.infeasible()) {
            out << "status: infeasible\n";
        } else {
            out << "objective: " << objective_text(merged, result.objective) << "\n\n"
                << render_text(evaluate_teams(inst, *result.solution, tspec));
        }
        return result.infeasible() ? kExitInfeasible : kExitOk;
    }

    const auto result = solve_pareto(inst, merged, {opt.cap, opt.workers});
    j["stats"] = stats_json(result.stats);
    j["front"] = front_json(merged, result);
    if (opt.json) {
        print(out, j);
    } else {
        out << front_text(merged, result);
    }
    return result.front.empty() ? kExitInfeasible : kExitOk;
}

int cmd_lattice(int types, int size, const std::string& format, std::ostream& out) {
    const auto scale = enumerate_scale(types, size);
    if (format == "dot") {
        out << scale_to_dot(scale, types, size);
    } else if (format == "json") {
        json nodes = json::array();
        for (const auto& node : scale) {
            nodes.push_back({{"estimate", node.estimate.counts()}, {"down", node.down}});
        }
        print(out, {{"components", types}, {"total", size}, {"nodes", std::move(nodes)}});
    } else {
        for (std::size_t i = 0; i < scale.size(); ++i) {
            out << i << ' ' << scale[i].estimate << " ->";
            for (int d : scale[i].down) out << ' ' << scale[d].estimate;
            out << '\n';
        }
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Balanced clustering: evaluate balance indices and solve balanced clustering problems",
                 "balclust"};
    app.require_subcommand(1);

    CommonOptions opt;
    std::string instance_path, spec_path, reference_path, start_name, team_mode_eval;
    std::vector<std::string> solutions;
    std::uint64_t budget = 100000;
    bool local = false, mode_heuristic = false, mode_exact = false, mode_pareto = false;
    int types = 0, size = 0;
    std::string format = "dot";

    auto add_common = [&](CLI::App* sub, bool solver) {
        sub->add_flag("--json", opt.json, "JSON output");
        if (solver) {
            sub->add_option("--workers", opt.workers, "worker threads (output does not depend on it)")
                    ->check(CLI::PositiveNumber);
            sub->add_option("--cap", opt.cap, "enumeration guard (max partitions)");
            sub->add_flag("--timing", opt.timing, "report wall time");
        }
    };

    auto* evaluate = app.add_subcommand("evaluate", "cluster summaries and balance indices");
    evaluate->add_option("instance", instance_path, "instance JSON")->required();
    evaluate->add_option("--solution", solutions, "named solution (repeatable; default all)");
    evaluate->add_option("--reference", reference_path, "reference cluster parameters JSON");
    add_common(evaluate, false);

    auto* solve = app.add_subcommand("solve", "single-objective problem (exact or local search)");
    solve->add_option("instance", instance_path, "instance JSON")->required();
    solve->add_option("spec", spec_path, "problem spec JSON")->required();
    solve->add_flag("--local-search", local, "improve --start by local search instead");
    solve->add_option("--start", start_name, "named start solution for local search");
    solve->add_option("--budget", budget, "local search move evaluations");
    add_common(solve, true);

    auto* pareto = app.add_subcommand("pareto", "multicriteria problem, Pareto front by enumeration");
    pareto->add_option("instance", instance_path, "instance JSON")->required();
    pareto->add_option("spec", spec_path, "problem spec JSON")->required();
    add_common(pareto, true);

    auto* team = app.add_subcommand("team", "team formation with skills and compatibility");
    team->add_option("instance", instance_path, "team instance JSON")->required();
    team->add_option("--spec", spec_path, "team spec JSON")->required();
    auto* heur = team->add_flag("--heuristic", mode_heuristic, "kernel-extension heuristic (default)");
    auto* exact = team->add_flag("--exact", mode_exact, "exact single-objective search");
    auto* par = team->add_flag("--pareto", mode_pareto, "Pareto front by enumeration");
    auto* ev = team->add_option("--evaluate", team_mode_eval, "evaluate a named solution");
    heur->excludes(exact)->excludes(par)->excludes(ev);
    exact->excludes(par)->excludes(ev);
    par->excludes(ev);
    add_common(team, true);

    auto* lattice = app.add_subcommand("lattice", "Hasse diagram of the estimate scale");
    lattice->add_option("--types", types, "components per estimate, including the empty type")
            ->required()
            ->check(CLI::PositiveNumber);
    lattice->add_option("--size", size, "total of every estimate")->required()->check(CLI::NonNegativeNumber);
    lattice->add_option("--format", format, "dot, text or json")
            ->check(CLI::IsMember({"dot", "text", "json"}));

    std::vector<std::string> argv_store{"balclust"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (evaluate->parsed()) return cmd_evaluate(instance_path, solutions, reference_path, opt, out);
        if (solve->parsed()) {
            if (local && start_name.empty()) {
                throw InputError("--start", "local search needs a named start solution");
            }
            return cmd_solve(instance_path, spec_path, local, start_name, budget, opt, out);
        }
        if (pareto->parsed()) return cmd_pareto(instance_path, spec_path, opt, out);
        if (team->parsed()) {
            std::string mode = "heuristic";
            if (mode_exact) mode = "exact";
            if (mode_pareto) mode = "pareto";
            if (!team_mode_eval.empty()) mode = "evaluate";
            return cmd_team(instance_path, spec_path, mode, team_mode_eval, opt, out);
        }
        if (lattice->parsed()) return cmd_lattice(types, size, format, out);
    } catch (const CapExceeded& e) {
        err << "error: " << e.what() << '\n';
        return kExitCapExceeded;
    } catch (const HeuristicInfeasible& e) {
        err << "infeasible: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    return kExitInputError;
}

}  // namespace balclust
