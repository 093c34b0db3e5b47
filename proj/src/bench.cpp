#include "acsp/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "acsp/exact.hpp"
#include "acsp/io.hpp"
#include "acsp/lp.hpp"
#include "acsp/rng.hpp"
#include "acsp/rounding.hpp"
#include "acsp/transform.hpp"

namespace acsp {

namespace {

constexpr const char* kAlgoNames[] = {"exact", "bnb", "lpx", "lpf", "lpfx", "sa", "aco", "ga"};

std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

Solution solve_bnb(const Instance& instance, long node_limit) {
  const DirectedInstance d = to_directed(instance);
  BranchAndBoundOptions options;
  options.node_limit = node_limit;
  const LpSolution sol = branch_and_bound(build_ilp(d), options);
  if (sol.status == LpStatus::kInfeasible) throw InfeasibleInstance();
  if (!sol.has_values()) throw HeuristicFailure(std::string("branch-and-bound: ") + to_string(sol.status));
  const ArcSplit split = extract_arcs(sol, d, 1e-6);
  ExtractResult extracted = extract_walk(instance, d, split.ones);
  if (!extracted.walk) throw HeuristicFailure("branch-and-bound: " + extracted.diagnostic);
  const double cost = walk_cost(*extracted.walk, instance.graph);
  return Solution{std::move(*extracted.walk), cost};
}

Solution solve_rounding(const Instance& instance, RoundingStrategy strategy) {
  RoundingResult r = iterative_round(instance, strategy);
  if (r.status == RoundingStatus::kInfeasibleInstance) throw InfeasibleInstance();
  if (!r.ok()) throw HeuristicFailure(std::string(to_string(strategy)) + ": " + r.diagnostic);
  return std::move(*r.solution);
}

}  // namespace

const char* to_string(Algo algo) { return kAlgoNames[static_cast<int>(algo)]; }

Algo parse_algo(const std::string& name) {
  for (int i = 0; i < static_cast<int>(std::size(kAlgoNames)); ++i) {
    if (name == kAlgoNames[i]) return static_cast<Algo>(i);
  }
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

std::vector<Algo> parse_algo_list(const std::string& csv) {
  std::vector<Algo> algos;
  std::stringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) algos.push_back(parse_algo(item));
  }
  if (algos.empty()) throw std::invalid_argument("empty algorithm list");
  return algos;
}

std::vector<std::string> param_names(Algo algo) {
  switch (algo) {
    case Algo::kSa: return {"temperature", "cooling", "freezing", "iterations", "tidy"};
    case Algo::kAco: return {"alpha", "beta", "colony", "q", "delta", "iterations", "c0", "ant-pheromone"};
    case Algo::kGa: return {"population", "iterations", "mutation", "retries"};
    case Algo::kBnb: return {"nodes"};
    default: return {};
  }
}

void set_param(SolverParams& p, Algo algo, const std::string& name, double value) {
  auto count = [&] {
    if (value != std::floor(value) || value < 0) throw std::invalid_argument(name + " must be a non-negative integer");
    return static_cast<long>(value);
  };
  bool known = true;
  switch (algo) {
    case Algo::kSa:
      if (name == "temperature") p.sa.initial_temperature = value;
      else if (name == "cooling") p.sa.cooling_rate = value;
      else if (name == "freezing") p.sa.freezing_temperature = value;
      else if (name == "iterations") p.sa.iteration_count_override = count();
      else if (name == "tidy") p.sa.tidy_moves = value != 0.0;
      else known = false;
      if (known) check_params(p.sa);
      break;
    case Algo::kAco:
      if (name == "alpha") p.aco.alpha = value;
      else if (name == "beta") p.aco.beta = value;
      else if (name == "colony") p.aco.colony_size = static_cast<int>(count());
      else if (name == "q") p.aco.q = value;
      else if (name == "delta") p.aco.delta = value;
      else if (name == "iterations") p.aco.iteration_count = static_cast<int>(count());
      else if (name == "c0") p.aco.c0 = value;
      else if (name == "ant-pheromone") p.aco.ant_pheromone = value;
      else known = false;
      if (known) check_params(p.aco);
      break;
    case Algo::kGa:
      if (name == "population") p.ga.population_size = static_cast<int>(count());
      else if (name == "iterations") p.ga.iteration_count = static_cast<int>(count());
      else if (name == "mutation") p.ga.mutation_probability = value;
      else if (name == "retries") p.ga.crossover_retry_limit = static_cast<int>(count());
      else known = false;
      if (known) check_params(p.ga);
      break;
    case Algo::kBnb:
      if (name == "nodes" && count() > 0) p.bnb_node_limit = count();
      else known = false;
      break;
    default: known = false;
  }
  if (!known) throw std::invalid_argument(std::string("unknown parameter '") + name + "' for " + to_string(algo));
}

RunOutcome run_algorithm(Algo algo, const Instance& instance, const SolverParams& params, std::uint64_t seed) {
  RunOutcome outcome;
  Rng rng(seed);
  const auto start = std::chrono::steady_clock::now();
  try {
    switch (algo) {
      case Algo::kExact: {
        auto s = solve_exact(instance);
        if (!s) throw InfeasibleInstance();
        outcome.solution = std::move(*s);
        break;
      }
      case Algo::kBnb: outcome.solution = solve_bnb(instance, params.bnb_node_limit); break;
      case Algo::kLpx: outcome.solution = solve_rounding(instance, RoundingStrategy::kX); break;
      case Algo::kLpf: outcome.solution = solve_rounding(instance, RoundingStrategy::kF); break;
      case Algo::kLpfx: outcome.solution = solve_rounding(instance, RoundingStrategy::kFOverX); break;
      case Algo::kSa: outcome.solution = sa_solve(instance, params.sa, rng); break;
      case Algo::kAco: outcome.solution = aco_solve(instance, params.aco, rng); break;
      case Algo::kGa: outcome.solution = ga_solve(instance, params.ga, rng); break;
    }
  } catch (const InfeasibleInstance& e) {
    outcome.status = RunStatus::kInfeasible;
    outcome.diagnostic = e.what();
  } catch (const HeuristicFailure& e) {
    outcome.status = RunStatus::kFailed;
    outcome.diagnostic = e.what();
  }
  outcome.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return outcome;
}

std::optional<double> compute_optimum(const Instance& instance, const OptimumPolicy& policy) {
  if (!has_feasible_walk(instance)) return std::nullopt;
  if (instance.graph.num_colors() <= std::min(policy.exact_max_colors, kMaxExactColors)) {
    const auto s = solve_exact(instance);
    return s ? std::optional<double>(s->cost) : std::nullopt;
  }
  if (instance.graph.num_vertices() > policy.bnb_max_vertices) return std::nullopt;
  const LpSolution sol = branch_and_bound(build_ilp(to_directed(instance)), policy.bnb_node_limit);
  if (sol.status != LpStatus::kOptimal) return std::nullopt;
  return sol.objective;
}

std::uint64_t trial_seed(std::uint64_t master, const std::string& graph, Algo algo, int trial) {
  std::uint64_t h = hash_combine(master, fnv1a(graph));
  h = hash_combine(h, fnv1a(to_string(algo)));
  return hash_combine(h, static_cast<std::uint64_t>(trial));
}

std::optional<double> RunReport::min_cost() const {
  if (costs.empty()) return std::nullopt;
  return *std::min_element(costs.begin(), costs.end());
}

std::optional<double> RunReport::avg_cost() const {
  if (costs.empty()) return std::nullopt;
  return std::accumulate(costs.begin(), costs.end(), 0.0) / static_cast<double>(costs.size());
}

double RunReport::avg_time() const {
  if (times.empty()) return 0.0;
  return std::accumulate(times.begin(), times.end(), 0.0) / static_cast<double>(times.size());
}

namespace {

// Runs task(i) for i in [0, count) on `threads` workers.
template <class Task>
void parallel_for(std::size_t count, int threads, Task task) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) task(i);
  };
  const int extra = std::max(0, std::min(threads, static_cast<int>(count)) - 1);
  std::vector<std::jthread> pool;
  for (int t = 0; t < extra; ++t) pool.emplace_back(worker);
  worker();
}

}  // namespace

std::vector<RunReport> run_bench(const BenchConfig& config) {
  if (config.runs < 1) throw std::invalid_argument("runs must be positive");
  const std::size_t num_graphs = config.instances.size(), num_algos = config.algos.size();
  const auto runs = static_cast<std::size_t>(config.runs);

  std::vector<std::optional<double>> optimum(num_graphs);
  if (config.with_optimum) {
    parallel_for(num_graphs, config.threads,
                 [&](std::size_t g) { optimum[g] = compute_optimum(config.instances[g].instance, config.optimum); });
  }

  std::vector<RunOutcome> outcomes(num_graphs * num_algos * runs);
  parallel_for(outcomes.size(), config.threads, [&](std::size_t t) {
    const std::size_t g = t / (num_algos * runs), a = t / runs % num_algos, r = t % runs;
    const auto& named = config.instances[g];
    const Algo algo = config.algos[a];
    outcomes[t] = run_algorithm(algo, named.instance, config.params,
                                trial_seed(config.seed, named.name, algo, static_cast<int>(r)));
  });

  std::vector<RunReport> reports;
  for (std::size_t g = 0; g < num_graphs; ++g) {
    for (std::size_t a = 0; a < num_algos; ++a) {
      RunReport report;
      report.graph = config.instances[g].name;
      report.algo = config.algos[a];
      report.opt = optimum[g];
      for (std::size_t r = 0; r < runs; ++r) {
        const RunOutcome& o = outcomes[(g * num_algos + a) * runs + r];
        report.times.push_back(o.seconds);
        if (o.solution) report.costs.push_back(o.solution->cost);
        else ++report.failures;
      }
      reports.push_back(std::move(report));
    }
  }
  return reports;
}

void write_bench_csv(std::ostream& out, const std::vector<RunReport>& reports, bool with_times) {
  out << kBenchHeader << '\n';
  for (const auto& r : reports) {
    const auto min = r.min_cost(), avg = r.avg_cost();
    out << r.graph << ',' << to_string(r.algo) << ',' << (r.opt ? format_number(*r.opt) : "") << ','
        << (min ? format_number(*min) : "") << ',' << (avg ? fixed4(*avg) : "") << ',';
    const bool ratios = r.opt && *r.opt > 0.0 && min;
    out << (ratios ? fixed4(*min / *r.opt) : "") << ',' << (ratios ? fixed4(*avg / *r.opt) : "") << ','
        << (with_times ? fixed6(r.avg_time()) : "") << '\n';
  }
}

void run_sweep(std::ostream& out, const SweepConfig& config, bool with_times) {
  if (config.bench.algos.size() != 1) throw std::invalid_argument("sweep needs exactly one algorithm");
  const Algo algo = config.bench.algos.front();
  // Validate every value before spending time on any of them.
  for (double v : config.values) {
    SolverParams p = config.bench.params;
    set_param(p, algo, config.param, v);
  }
  out << kSweepHeader << '\n';
  for (double v : config.values) {
    BenchConfig bench = config.bench;
    bench.with_optimum = false;
    set_param(bench.params, algo, config.param, v);
    for (const auto& r : run_bench(bench)) {
      const auto min = r.min_cost(), avg = r.avg_cost();
      out << r.graph << ',' << config.param << ',' << format_number(v) << ',' << (min ? format_number(*min) : "")
          << ',' << (avg ? fixed4(*avg) : "") << ',' << (with_times ? fixed6(r.avg_time()) : "") << '\n';
    }
  }
}

}  // namespace acsp
