/*
 * Copyright 2026 The cloudsearch Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "cloudsearch/bench.hpp"
#include "cloudsearch/csv.hpp"
#include "cloudsearch/errors.hpp"
#include "cloudsearch/json_io.hpp"
#include "cloudsearch/pareto.hpp"
#include "cloudsearch/search.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <sstream>

namespace {

using namespace cloudsearch;

/// stdout by default, write-then-rename when --out is given.
void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    write_file_atomic(out_path, content);
}

ConfigurationSpace build_space(const std::string& catalog_path, const std::vector<int>& sizes) {
    return enumerate_space(order_vm_axis(load_catalog_file(catalog_path)), sizes);
}

std::string catalog_csv(const std::vector<VmType>& vms) {
    std::ostringstream out;
    out << "name,vcpus,mem_gib,network_gbps,price_usd_hour\n";
    for (const VmType& vm : vms) {
        out << vm.name << "," << vm.vcpus << "," << format_double(vm.mem_gib) << ","
            << format_double(vm.network_gbps) << "," << format_double(vm.price_usd_hour) << "\n";
    }
    return out.str();
}

int cmd_catalog_list(const std::string& catalog_path, const std::string& format,
                     const std::string& out_path) {
    const std::vector<VmType> ordered = order_vm_axis(load_catalog_file(catalog_path));
    if (format == "json") {
        Json json = Json::array();
        for (const VmType& vm : ordered) {
            Json entry;
            entry["name"] = vm.name;
            entry["vcpus"] = vm.vcpus;
            entry["mem_gib"] = vm.mem_gib;
            entry["network_gbps"] = vm.network_gbps;
            entry["price_usd_hour"] = vm.price_usd_hour;
            json.push_back(std::move(entry));
        }
        emit(out_path, json.dump(2) + "\n");
    } else {
        emit(out_path, catalog_csv(ordered));
    }
    return 0;
}

int cmd_synth_generate(const std::string& model_path, const std::string& catalog_path,
                       const std::vector<int>& sizes, const std::string& out_path) {
    const ConfigurationSpace space = build_space(catalog_path, sizes);
    const SynthBackend backend(space, load_model_file(model_path));
    std::ostringstream out;
    out << trace_header() << "\n";
    for (const TraceRow& row : backend.to_trace_rows()) {
        out << trace_row_to_csv(row) << "\n";
    }
    emit(out_path, out.str());
    return 0;
}

int cmd_trace_validate(const std::string& trace_path, const std::string& out_path) {
    const Trace trace = Trace::load_file(trace_path);
    std::size_t feasible = 0;
    std::size_t with_full_runtime = 0;
    for (const TraceRow& row : trace.rows()) {
        if (row.feasible) {
            ++feasible;
            if (row.total_runtime_s) {
                ++with_full_runtime;
            }
        }
    }
    std::ostringstream out;
    out << "rows: " << trace.size() << "\n";
    out << "feasible: " << feasible << "\n";
    out << "infeasible: " << trace.size() - feasible << "\n";
    out << "with_full_runtime: " << with_full_runtime << "\n";
    out << "workloads:";
    for (const std::string& workload : trace.workloads()) {
        out << " " << workload;
    }
    out << "\n";
    emit(out_path, out.str());
    return 0;
}

int cmd_search_run(const SearchRunInfo& info, const std::string& catalog_path,
                   const std::vector<int>& sizes, double failure_detect_s,
                   const std::string& out_path, const std::string& dump_model_path) {
    const ConfigurationSpace space = build_space(catalog_path, sizes);
    const auto backend = make_backend(info.backend_spec, space, info.workload, failure_detect_s);
    const SearchResult result = run_search(info.policy, *backend, info.budget, info.seed);
    if (!dump_model_path.empty() && !result.model_dump.empty()) {
        write_file_atomic(dump_model_path, result.model_dump);
    }
    emit(out_path, search_result_to_json(result, info, space).dump(2) + "\n");
    return 0;
}

int cmd_bench_run(const std::string& spec_path, const std::string& out_path, int threads) {
    ExperimentSpec spec = experiment_spec_from_json(Json::parse(read_text_file(spec_path)));
    // Relative paths in the spec resolve against the spec file's directory.
    const std::filesystem::path base = std::filesystem::path(spec_path).parent_path();
    if (spec.catalog_path.is_relative()) {
        spec.catalog_path = base / spec.catalog_path;
    }
    const std::size_t colon = spec.backend_spec.find(':');
    if (colon != std::string::npos) {
        const std::filesystem::path backend_path = spec.backend_spec.substr(colon + 1);
        if (backend_path.is_relative()) {
            spec.backend_spec =
                spec.backend_spec.substr(0, colon + 1) + (base / backend_path).string();
        }
    }
    if (threads > 0) {
        spec.threads = threads;
    }
    const ExperimentReport report = run_experiment(spec);
    emit(out_path, experiment_report_to_json(report).dump(2) + "\n");
    return 0;
}

int cmd_bench_export_csv(const std::string& report_path, const std::string& out_path) {
    const Json report = Json::parse(read_text_file(report_path));
    emit(out_path, report_curves_to_csv(report));
    return 0;
}

int cmd_pareto_show(const std::vector<std::string>& result_paths, const std::string& out_path) {
    std::vector<std::vector<Observation>> runs;
    std::map<int, std::string> vm_names;
    for (const std::string& path : result_paths) {
        ParsedSearchResult parsed = parse_search_result(Json::parse(read_text_file(path)));
        runs.push_back(std::move(parsed.history));
        vm_names.insert(parsed.vm_names.begin(), parsed.vm_names.end());
    }

    const std::vector<FrontPoint> union_points = observed_union(runs);
    const std::vector<std::array<double, 2>> normalized = normalize_objectives(union_points);
    const std::vector<FrontPoint> front = recommend(runs);
    const auto on_front = [&](const FrontPoint& p) {
        return std::any_of(front.begin(), front.end(),
                           [&](const FrontPoint& f) { return f.config == p.config; });
    };

    std::ostringstream out;
    out << "config,runtime_s,cost_usd,norm_runtime,norm_cost,frequency,on_front\n";
    for (std::size_t i = 0; i < union_points.size(); ++i) {
        const FrontPoint& p = union_points[i];
        const auto name_it = vm_names.find(p.config.vm_index);
        const std::string name =
            name_it != vm_names.end() ? name_it->second : std::to_string(p.config.vm_index);
        out << name << ":" << p.config.n << "," << format_double(p.runtime_s) << ","
            << format_double(p.cost_usd) << "," << format_double(normalized[i][0]) << ","
            << format_double(normalized[i][1]) << "," << format_double(p.selection_frequency)
            << "," << (on_front(p) ? "true" : "false") << "\n";
    }
    emit(out_path, out.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Search for cost-efficient cloud cluster configurations"};
    app.require_subcommand(1);

    std::string catalog_path;
    std::vector<int> sizes = default_size_axis();
    std::string out_path;
    std::string format = "csv";

    // catalog list
    CLI::App* catalog = app.add_subcommand("catalog", "Catalog inspection");
    catalog->require_subcommand(1);
    CLI::App* catalog_list = catalog->add_subcommand("list", "Print the ordered VM catalog");
    catalog_list->add_option("--catalog", catalog_path, "Catalog CSV file")->required();
    catalog_list->add_option("--format", format, "Output format (csv or json)")
        ->check(CLI::IsMember({"csv", "json"}));
    catalog_list->add_option("--out", out_path, "Output file (default stdout)");

    // synth generate
    CLI::App* synth = app.add_subcommand("synth", "Synthetic cost-space tooling");
    synth->require_subcommand(1);
    CLI::App* synth_generate =
        synth->add_subcommand("generate", "Generate a trace file from an execution model");
    std::string model_path;
    synth_generate->add_option("--model", model_path, "Model key=value file")->required();
    synth_generate->add_option("--catalog", catalog_path, "Catalog CSV file")->required();
    synth_generate->add_option("--sizes", sizes, "Cluster size axis")->delimiter(',');
    synth_generate->add_option("--out", out_path, "Output trace file (default stdout)");

    // trace validate
    CLI::App* trace_cmd = app.add_subcommand("trace", "Trace-file tooling");
    trace_cmd->require_subcommand(1);
    CLI::App* trace_validate = trace_cmd->add_subcommand("validate", "Parse a trace and summarize it");
    std::string trace_path;
    trace_validate->add_option("--trace", trace_path, "Trace CSV file")->required();
    trace_validate->add_option("--out", out_path, "Output file (default stdout)");

    // search run
    CLI::App* search_cmd = app.add_subcommand("search", "Single configuration searches");
    search_cmd->require_subcommand(1);
    CLI::App* search_run = search_cmd->add_subcommand("run", "Run one seeded search");
    std::string policy_name = "smbo";
    std::string surrogate_name = "gp";
    std::string acquisition_name = "ei";
    std::string backend_spec;
    std::string workload;
    std::string mode_name = "full";
    std::string dump_model_path;
    int budget_observations = 32;
    int init_random = 8;
    std::uint64_t seed = 0;
    double xi = 0.0;
    double kappa = 2.0;
    double failure_detect_s = 120.0;
    search_run->add_option("--catalog", catalog_path, "Catalog CSV file")->required();
    search_run->add_option("--backend", backend_spec, "Backend: trace:FILE or synth:FILE")
        ->required();
    search_run->add_option("--workload", workload, "Workload id for trace backends");
    search_run->add_option("--policy", policy_name, "Search policy")
        ->check(CLI::IsMember({"random", "grid", "smbo"}));
    search_run->add_option("--surrogate", surrogate_name, "SMBO surrogate")
        ->check(CLI::IsMember({"gp", "rf"}));
    search_run->add_option("--acquisition", acquisition_name, "SMBO acquisition")
        ->check(CLI::IsMember({"ei", "mpi", "lcb"}));
    search_run->add_option("--budget", budget_observations, "Observation budget");
    search_run->add_option("--init", init_random, "Random observations before modeling");
    search_run->add_option("--mode", mode_name, "Observation mode")
        ->check(CLI::IsMember({"full", "pi"}));
    search_run->add_option("--seed", seed, "Random seed");
    search_run->add_option("--sizes", sizes, "Cluster size axis")->delimiter(',');
    search_run->add_option("--xi", xi, "EI/MPI improvement margin");
    search_run->add_option("--kappa", kappa, "LCB confidence weight");
    search_run->add_option("--failure-detect-s", failure_detect_s,
                           "Billed seconds per infeasible observation");
    search_run->add_option("--out", out_path, "Output JSON file (default stdout)");
    search_run->add_option("--dump-model", dump_model_path,
                           "Write the last fitted surrogate hyperparameters here");

    // bench run / export-csv
    CLI::App* bench_cmd = app.add_subcommand("bench", "Repeated-search experiments");
    bench_cmd->require_subcommand(1);
    CLI::App* bench_run = bench_cmd->add_subcommand("run", "Run an experiment spec");
    std::string spec_path;
    int threads = 0;
    bench_run->add_option("--spec", spec_path, "Experiment spec JSON")->required();
    bench_run->add_option("--out", out_path, "Output report JSON (default stdout)");
    bench_run->add_option("--threads", threads, "Worker threads (default: hardware)");
    CLI::App* bench_export = bench_cmd->add_subcommand("export-csv", "Flatten report curves to CSV");
    std::string report_path;
    bench_export->add_option("--report", report_path, "Report JSON from bench run")->required();
    bench_export->add_option("--out", out_path, "Output CSV file (default stdout)");

    // pareto show
    CLI::App* pareto_cmd = app.add_subcommand("pareto", "Pareto-front reports");
    pareto_cmd->require_subcommand(1);
    CLI::App* pareto_show =
        pareto_cmd->add_subcommand("show", "Pareto table for one or more search results");
    std::vector<std::string> result_paths;
    pareto_show->add_option("--in", result_paths, "Search result JSON file(s)")
        ->required()
        ->take_all();
    pareto_show->add_option("--out", out_path, "Output CSV file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (catalog_list->parsed()) {
            return cmd_catalog_list(catalog_path, format, out_path);
        }
        if (synth_generate->parsed()) {
            return cmd_synth_generate(model_path, catalog_path, sizes, out_path);
        }
        if (trace_validate->parsed()) {
            return cmd_trace_validate(trace_path, out_path);
        }
        if (search_run->parsed()) {
            SearchRunInfo info;
            info.policy.kind = policy_kind_from_string(policy_name);
            info.policy.surrogate = surrogate_kind_from_string(surrogate_name);
            info.policy.acquisition.kind = acquisition_kind_from_string(acquisition_name);
            info.policy.acquisition.xi = xi;
            info.policy.acquisition.kappa = kappa;
            info.budget.max_observations = budget_observations;
            info.budget.init_random = init_random;
            info.budget.mode = observation_mode_from_string(mode_name);
            info.seed = seed;
            info.backend_spec = backend_spec;
            info.workload = workload;
            return cmd_search_run(info, catalog_path, sizes, failure_detect_s, out_path,
                                  dump_model_path);
        }
        if (bench_run->parsed()) {
            return cmd_bench_run(spec_path, out_path, threads);
        }
        if (bench_export->parsed()) {
            return cmd_bench_export_csv(report_path, out_path);
        }
        if (pareto_show->parsed()) {
            return cmd_pareto_show(result_paths, out_path);
        }
    } catch (const NoSolutionError& e) {
        std::cerr << "error: " << e.what() << " (accumulated charge "
                  << format_double(e.accumulated_charge_usd) << " USD)\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
