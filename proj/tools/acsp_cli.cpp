// acsp: generate instances, run solvers, benchmark and sweep parameters.
//
// Exit codes: 0 success, 1 usage, 2 infeasible instance, 3 heuristic failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "acsp/bench.hpp"
#include "acsp/instance_gen.hpp"
#include "acsp/io.hpp"
#include "acsp/lp.hpp"
#include "acsp/transform.hpp"

namespace {

enum Exit { kOk = 0, kUsage = 1, kInfeasible = 2, kFailure = 3 };

struct ParamFlags {
  std::vector<std::pair<std::string, double>> sa, aco, ga, bnb;
  std::string ga_selection = "inverse";

  void add(CLI::App& app) {
    auto flag = [&](const char* name, const char* param, std::vector<std::pair<std::string, double>>& into,
                    const char* help) {
      app.add_option_function<double>(name, [&into, param](double v) { into.emplace_back(param, v); }, help);
    };
    flag("--sa-temperature", "temperature", sa, "SA initial temperature");
    flag("--sa-cooling", "cooling", sa, "SA cooling rate");
    flag("--sa-freezing", "freezing", sa, "SA freezing temperature");
    flag("--sa-iterations", "iterations", sa, "SA moves per temperature");
    flag("--sa-tidy", "tidy", sa, "1 to crop and repair each candidate walk, 0 for the bare move");
    flag("--aco-alpha", "alpha", aco, "ACO pheromone exponent");
    flag("--aco-beta", "beta", aco, "ACO desirability exponent");
    flag("--aco-colony", "colony", aco, "ACO colony size");
    flag("--aco-q", "q", aco, "ACO pheromone-rule probability");
    flag("--aco-delta", "delta", aco, "ACO evaporation");
    flag("--aco-iterations", "iterations", aco, "ACO colony releases");
    flag("--aco-c0", "c0", aco, "ACO distance constant");
    flag("--aco-ant-pheromone", "ant-pheromone", aco, "ACO initial pheromone carried by each ant");
    flag("--ga-population", "population", ga, "GA population size");
    flag("--ga-iterations", "iterations", ga, "GA generations");
    flag("--ga-mutation", "mutation", ga, "GA mutation probability");
    flag("--ga-retries", "retries", ga, "GA crossover retry limit");
    app.add_option("--ga-selection", ga_selection, "GA parent weight: inverse (1/cost) or cost")
        ->check(CLI::IsMember({"inverse", "cost"}));
    flag("--bnb-nodes", "nodes", bnb, "branch-and-bound node limit");
  }

  acsp::SolverParams build() const {
    acsp::SolverParams p;
    for (const auto& [name, v] : sa) acsp::set_param(p, acsp::Algo::kSa, name, v);
    for (const auto& [name, v] : aco) acsp::set_param(p, acsp::Algo::kAco, name, v);
    for (const auto& [name, v] : ga) acsp::set_param(p, acsp::Algo::kGa, name, v);
    for (const auto& [name, v] : bnb) acsp::set_param(p, acsp::Algo::kBnb, name, v);
    p.ga.selection = ga_selection == "cost" ? acsp::SelectionWeight::kCost : acsp::SelectionWeight::kInverseCost;
    return p;
  }
};

struct InstanceFlags {
  std::string suite;
  std::vector<std::string> files;
  std::uint64_t suite_seed = 0;

  void add(CLI::App& app) {
    app.add_option("--suite", suite, "built-in instance suite")->check(CLI::IsMember({"table1"}));
    app.add_option("--instances", files, "instance files");
    app.add_option("--suite-seed", suite_seed, "seed of the generated suite");
  }

  std::vector<acsp::NamedInstance> load() const {
    std::vector<acsp::NamedInstance> out;
    if (suite == "table1") out = acsp::table1_suite(suite_seed);
    // Named by file stem so trial seeds do not depend on the directory.
    for (const auto& f : files) out.push_back({std::filesystem::path(f).stem().string(), acsp::load_instance(f)});
    if (out.empty()) throw std::invalid_argument("no instances: give --suite or --instances");
    return out;
  }
};

std::vector<double> parse_values(const std::string& csv) {
  std::vector<double> values;
  std::stringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    values.push_back(std::stod(item, &used));
    if (used != item.size()) throw std::invalid_argument("bad value '" + item + "'");
  }
  if (values.empty()) throw std::invalid_argument("empty value list");
  return values;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"All-colors shortest path solvers"};
  app.require_subcommand(1);

  acsp::GenSpec gen_spec;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "generate a random instance");
  gen->add_option("--nodes", gen_spec.n, "node count")->required();
  gen->add_option("--colors", gen_spec.k, "color count")->required();
  gen->add_option("--degree", gen_spec.avg_degree, "average degree");
  gen->add_option("--avg-weight", gen_spec.avg_weight, "average edge weight");
  gen->add_option("--seed", gen_spec.seed, "random seed");
  gen->add_option("--out", gen_out, "output file (default stdout)");

  std::string solve_algo, solve_file, mps_file;
  std::uint64_t solve_seed = 0;
  bool no_times = false;
  ParamFlags solve_params;
  auto* solve = app.add_subcommand("solve", "solve one instance");
  solve->add_option("--algo", solve_algo, "exact, bnb, lpx, lpf, lpfx, sa, aco or ga")->required();
  solve->add_option("--instance", solve_file, "instance file")->required();
  solve->add_option("--seed", solve_seed, "random seed");
  solve->add_option("--dump-mps", mps_file, "also write the integer program in MPS format");
  solve->add_flag("--no-times", no_times, "omit the wall time");
  solve_params.add(*solve);

  std::string bench_algos = "sa,aco,ga", bench_out;
  acsp::BenchConfig bench_config;
  InstanceFlags bench_instances;
  ParamFlags bench_params;
  auto* bench = app.add_subcommand("bench", "repeated trials with a CSV report");
  bench->add_option("--algos", bench_algos, "comma-separated algorithms");
  bench->add_option("--runs", bench_config.runs, "trials per graph and algorithm")->check(CLI::PositiveNumber);
  bench->add_option("--seed", bench_config.seed, "master seed");
  bench->add_option("--threads", bench_config.threads, "worker threads")->check(CLI::PositiveNumber);
  bench->add_option("--out", bench_out, "CSV file (default stdout)");
  bench->add_option("--exact-max-colors", bench_config.optimum.exact_max_colors, "largest k for the exact optimum");
  bench->add_option("--opt-bnb-vertices", bench_config.optimum.bnb_max_vertices,
                    "largest n for a branch-and-bound optimum");
  bench->add_option("--opt-bnb-nodes", bench_config.optimum.bnb_node_limit, "node budget for that optimum");
  bench->add_flag("--no-times", no_times, "leave avg_time_s blank");
  bench_instances.add(*bench);
  bench_params.add(*bench);

  std::string sweep_algo, sweep_param, sweep_values, sweep_out;
  acsp::SweepConfig sweep_config;
  InstanceFlags sweep_instances;
  ParamFlags sweep_params;
  auto* sweep = app.add_subcommand("sweep", "vary one parameter");
  sweep->add_option("--algo", sweep_algo, "algorithm")->required();
  sweep->add_option("--param", sweep_param, "parameter name")->required();
  sweep->add_option("--values", sweep_values, "comma-separated values")->required();
  sweep->add_option("--runs", sweep_config.bench.runs, "trials per value and graph")->check(CLI::PositiveNumber);
  sweep->add_option("--seed", sweep_config.bench.seed, "master seed");
  sweep->add_option("--threads", sweep_config.bench.threads, "worker threads")->check(CLI::PositiveNumber);
  sweep->add_option("--out", sweep_out, "CSV file (default stdout)");
  sweep->add_flag("--no-times", no_times, "leave avg_time_s blank");
  sweep_instances.add(*sweep);
  sweep_params.add(*sweep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) {
      try {
        acsp::check_spec(gen_spec);
      } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
      }
      std::ostringstream text;
      acsp::write_instance(text, acsp::generate(gen_spec));
      write_output(gen_out, text.str());
      return kOk;
    }

    if (*solve) {
      acsp::Algo algo;
      acsp::SolverParams params;
      try {
        algo = acsp::parse_algo(solve_algo);
        params = solve_params.build();
      } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
      }
      const acsp::Instance instance = acsp::load_instance(solve_file);
      if (!mps_file.empty()) {
        std::ofstream mps(mps_file);
        acsp::write_mps(mps, acsp::build_ilp(acsp::to_directed(instance)), "ACSP");
      }
      const acsp::RunOutcome outcome = acsp::run_algorithm(algo, instance, params, solve_seed);
      if (outcome.status == acsp::RunStatus::kInfeasible) {
        std::cerr << "infeasible: " << outcome.diagnostic << '\n';
        return kInfeasible;
      }
      if (outcome.status == acsp::RunStatus::kFailed) {
        std::cerr << "failed: " << outcome.diagnostic << '\n';
        return kFailure;
      }
      std::cout << "algo " << acsp::to_string(algo) << '\n';
      std::cout << "cost " << acsp::format_number(outcome.solution->cost) << '\n';
      std::cout << "walk";
      for (acsp::Vertex v : outcome.solution->walk) std::cout << ' ' << v + 1;
      std::cout << '\n';
      if (!no_times) std::printf("time_s %.6f\n", outcome.seconds);
      return kOk;
    }

    if (*bench) {
      try {
        bench_config.algos = acsp::parse_algo_list(bench_algos);
        bench_config.params = bench_params.build();
        bench_config.instances = bench_instances.load();
      } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
      }
      std::ostringstream csv;
      acsp::write_bench_csv(csv, acsp::run_bench(bench_config), !no_times);
      write_output(bench_out, csv.str());
      return kOk;
    }

    if (*sweep) {
      std::ostringstream csv;
      try {
        sweep_config.bench.algos = {acsp::parse_algo(sweep_algo)};
        sweep_config.bench.params = sweep_params.build();
        sweep_config.bench.instances = sweep_instances.load();
        sweep_config.param = sweep_param;
        sweep_config.values = parse_values(sweep_values);
        acsp::SolverParams probe = sweep_config.bench.params;
        for (double v : sweep_config.values) acsp::set_param(probe, sweep_config.bench.algos[0], sweep_param, v);
      } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
      }
      acsp::run_sweep(csv, sweep_config, !no_times);
      write_output(sweep_out, csv.str());
      return kOk;
    }
  } catch (const acsp::ParseError& e) {
    std::cerr << "bad instance: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}
