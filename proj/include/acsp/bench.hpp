#pragma once

// Uniform solver dispatch plus the repeated-trial benchmark and parameter
// sweep behind the command-line tool.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "acsp/aco.hpp"
#include "acsp/ga.hpp"
#include "acsp/graph.hpp"
#include "acsp/instance_gen.hpp"
#include "acsp/sa.hpp"

namespace acsp {

enum class Algo { kExact, kBnb, kLpx, kLpf, kLpfx, kSa, kAco, kGa };

const char* to_string(Algo algo);
// Throws std::invalid_argument on an unknown name.
Algo parse_algo(const std::string& name);
std::vector<Algo> parse_algo_list(const std::string& csv);

struct SolverParams {
  SaParams sa;
  AcoParams aco;
  GaParams ga;
  long bnb_node_limit = 100000;
};

// Sets a named tuning parameter of `algo`, e.g. ("cooling", 0.99) for sa.
// Throws std::invalid_argument on an unknown name or a value out of range.
void set_param(SolverParams& params, Algo algo, const std::string& name, double value);
std::vector<std::string> param_names(Algo algo);

enum class RunStatus { kOk, kInfeasible, kFailed };

struct RunOutcome {
  RunStatus status = RunStatus::kOk;
  std::optional<Solution> solution;
  double seconds = 0.0;
  std::string diagnostic;
};

RunOutcome run_algorithm(Algo algo, const Instance& instance, const SolverParams& params, std::uint64_t seed);

struct OptimumPolicy {
  int exact_max_colors = 20;
  int bnb_max_vertices = 30;  // larger models are not attempted
  long bnb_node_limit = 20000;
};

// Exact search when k is small enough, else a budgeted branch-and-bound, else
// nullopt. Also nullopt for infeasible instances.
std::optional<double> compute_optimum(const Instance& instance, const OptimumPolicy& policy);

std::uint64_t trial_seed(std::uint64_t master, const std::string& graph, Algo algo, int trial);

struct BenchConfig {
  std::vector<NamedInstance> instances;
  std::vector<Algo> algos;
  int runs = 10;
  std::uint64_t seed = 0;
  int threads = 1;
  SolverParams params;
  OptimumPolicy optimum;
  bool with_optimum = true;
};

struct RunReport {
  std::string graph;
  Algo algo = Algo::kSa;
  std::optional<double> opt;
  std::vector<double> costs;  // successful trials only
  std::vector<double> times;  // every trial
  int failures = 0;

  std::optional<double> min_cost() const;
  std::optional<double> avg_cost() const;
  double avg_time() const;
};

// One report per (instance, algo) in configuration order.
std::vector<RunReport> run_bench(const BenchConfig& config);

inline constexpr const char* kBenchHeader = "graph,algo,opt,min_cost,avg_cost,min_ratio,avg_ratio,avg_time_s";
inline constexpr const char* kSweepHeader = "graph,param,value,min_cost,avg_cost,avg_time_s";

// Times are left blank when with_times is false so reports compare byte-exactly.
void write_bench_csv(std::ostream& out, const std::vector<RunReport>& reports, bool with_times);

struct SweepConfig {
  BenchConfig bench;  // exactly one algo
  std::string param;
  std::vector<double> values;
};

void run_sweep(std::ostream& out, const SweepConfig& config, bool with_times);

}  // namespace acsp
