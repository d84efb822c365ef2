#include "efx/cli/app.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "efx/cli/generate.hpp"
#include "efx/cli/io.hpp"
#include "efx/engine.hpp"
#include "efx/errors.hpp"
#include "efx/oracle.hpp"
#include "efx/rainbow.hpp"

namespace efx::cli {

namespace {

std::string format_goods(const GoodSet& goods) {
  std::string text = "{";
  for (std::size_t i = 0; i < goods.size(); ++i) {
    if (i > 0) text += ", ";
    text += std::to_string(goods[i]);
  }
  return text + "}";
}

struct SolveArgs {
  std::string instance_path;
  std::string init = "empty";
  std::string trace_path;
  bool as_json = false;
};

int cmd_solve(const SolveArgs& args, std::ostream& out) {
  const Instance instance = instance_from_json(read_json_file(args.instance_path));
  const SolveResult result = solve_with_welfare_init(instance, parse_initializer(args.init));
  const EfxReport report = verify_partial_efx(instance, result.allocation);
  const bool pass = report.is_efx && report.pool_heavy_enviers.empty();
  const Rational nash = nash_welfare_product(instance, result.allocation);
  const BoundCheck& bound = result.bound_check;

  if (!args.trace_path.empty()) {
    std::string lines;
    for (const TraceStep& step : result.trace) lines += trace_step_to_json(step).dump() + "\n";
    write_text_file(args.trace_path, lines);
  }

  if (args.as_json) {
    json values = json::array();
    for (const Rational& v : own_values(instance, result.allocation)) values.push_back(rational_to_json(v));
    json doc{{"allocation", allocation_to_json(result.allocation)},
             {"values", std::move(values)},
             {"pool_size", bound.pool_size},
             {"d", result.d_used},
             {"high_demand", bound.high_demand},
             {"low_demand", bound.low_demand},
             {"pool_bound_ceiling", bound.bound_ceiling},
             {"within_pool_bound", bound.within_bound},
             {"nash_product", rational_to_json(nash)},
             {"iterations", result.trace.size()},
             {"verifier", pass ? "pass" : "fail"}};
    out << doc.dump(2) << "\n";
  } else {
    out << "agents " << instance.num_agents() << ", goods " << instance.num_goods() << ", epsilon "
        << instance.epsilon() << ", d " << result.d_used << ", init " << args.init << "\n";
    for (Agent i = 0; i < instance.num_agents(); ++i) {
      out << "agent " << i << ": " << format_goods(result.allocation.bundles[i]) << " value "
          << bundle_value(instance, i, result.allocation.bundles[i]) << "\n";
    }
    out << "pool: " << format_goods(result.allocation.pool) << "\n";
    out << "pool size " << bound.pool_size << " vs 64(n/eps)^(4/5) = " << bound.bound_ceiling << " ("
        << (bound.within_bound ? "within" : "exceeded") << "; high " << bound.high_demand << ", low "
        << bound.low_demand << ")\n";
    out << "nash product: " << nash << "\n";
    out << "iterations: " << result.trace.size() << "\n";
    out << "verifier: " << (pass ? "pass" : "fail") << "\n";
  }
  return pass ? kOk : kInternalError;
}

int cmd_rainbow_find(const std::string& graph_path, std::size_t d, std::ostream& out) {
  const GraphDocument doc = graph_from_json(read_json_file(graph_path));
  const RainbowCycle cycle = find_rainbow_cycle(doc.graph, d);
  const bool ok = verify_rainbow_cycle(doc.graph, cycle);
  out << cycle_to_json(cycle).dump() << "\n";
  out << "verifier: " << (ok ? "pass" : "fail") << "\n";
  return ok ? kOk : kInternalError;
}

int cmd_rainbow_lower_bound(std::size_t d, const std::string& out_path, std::ostream& out) {
  const std::string text = graph_to_json({lower_bound_graph(d), std::nullopt}).dump() + "\n";
  if (out_path.empty()) {
    out << text;
  } else {
    write_text_file(out_path, text);
    out << "wrote " << out_path << "\n";
  }
  return kOk;
}

int cmd_rainbow_brute(const std::string& graph_path, std::uint64_t budget, std::ostream& out) {
  const GraphDocument doc = graph_from_json(read_json_file(graph_path));
  const auto cycle = brute_force_rainbow_cycle(doc.graph, budget);
  if (cycle) {
    out << cycle_to_json(*cycle).dump() << "\n";
  } else {
    out << "none\n";
  }
  return kOk;
}

int cmd_rainbow_verify(const std::string& graph_path, const std::string& cycle_path, std::ostream& out) {
  const GraphDocument doc = graph_from_json(read_json_file(graph_path));
  const RainbowCycle cycle = cycle_from_json(read_json_file(cycle_path));
  const bool ok = verify_rainbow_cycle(doc.graph, cycle);
  out << (ok ? "valid" : "invalid") << "\n";
  return ok ? kOk : kRefuted;
}

int cmd_counterexample(const std::string& epsilon_text, unsigned threads, std::ostream& out) {
  const CounterexampleFixture fixture = counterexample_instance(Rational::parse(epsilon_text));
  const Instance& instance = fixture.instance;
  const auto start = std::chrono::steady_clock::now();
  const EnumerationStats stats = enumerate_complete_allocations(
      instance,
      [&](const PartialAllocation& y) {
        return y.bundles[0].contains(6) && y.bundles[0].contains(7) && is_partial_efx(instance, y);
      },
      {.budget = 1'000'000, .threads = threads});
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

  out << stats.matched << " / " << stats.visited
      << " complete (1−ε)-EFX allocations give agent a both g7 and g8 (epsilon "
      << instance.epsilon() << ")\n";
  out << "wall time: " << elapsed.count() << " s\n";
  if (stats.first_match) {
    const PartialAllocation witness = PartialAllocation::from_owners(instance.num_agents(), *stats.first_match);
    out << "witness: " << allocation_to_json(witness).dump() << "\n";
    return kRefuted;
  }
  return kOk;
}

struct GenArgs {
  std::size_t agents = 0;
  std::size_t goods = 0;
  std::uint64_t max_value = 10;
  std::string epsilon = "1/2";
  std::uint64_t seed = 0;
  std::string out_path;
};

int cmd_gen(const GenArgs& args, std::ostream& out) {
  if (args.agents == 0) throw InvalidInputError("--agents must be positive");
  const Instance instance =
      random_instance(args.agents, args.goods, args.max_value, Rational::parse(args.epsilon), args.seed);
  const std::string text = instance_to_json(instance).dump() + "\n";
  if (args.out_path.empty()) {
    out << text;
  } else {
    write_text_file(args.out_path, text);
  }
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Approximate EFX allocations, rainbow cycles and exhaustive checks", "efx"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Compute a (1-eps)-EFX partial allocation");
  solve_cmd->add_option("--instance", solve_args.instance_path, "Instance JSON file")->required();
  solve_cmd->add_option("--init", solve_args.init, "Initial allocation: empty or greedy-nash");
  solve_cmd->add_option("--trace-out", solve_args.trace_path, "Write the rule trace as JSON lines");
  solve_cmd->add_flag("--json", solve_args.as_json, "Print the report as JSON");

  auto* rainbow_cmd = app.add_subcommand("rainbow", "Rainbow cycles in k-partite digraphs");
  rainbow_cmd->require_subcommand(1);
  std::string graph_path;
  std::string cycle_path;
  std::string out_path;
  std::size_t d = 0;
  std::uint64_t budget = 50'000'000;
  auto* find_cmd = rainbow_cmd->add_subcommand("find", "Constructive search (needs more than d^4 + d parts)");
  find_cmd->add_option("--graph", graph_path, "Graph JSON file")->required();
  find_cmd->add_option("--d", d, "Maximum part size")->required();
  auto* lower_cmd = rainbow_cmd->add_subcommand("lower-bound", "Write the d-part graph without a rainbow cycle");
  lower_cmd->add_option("--d", d, "Number of parts and part size")->required();
  lower_cmd->add_option("--out", out_path, "Output file (stdout if omitted)");
  auto* brute_cmd = rainbow_cmd->add_subcommand("brute", "Exhaustive search");
  brute_cmd->add_option("--graph", graph_path, "Graph JSON file")->required();
  brute_cmd->add_option("--budget", budget, "Maximum DFS expansions");
  auto* verify_cmd = rainbow_cmd->add_subcommand("verify", "Check a cycle against a graph");
  verify_cmd->add_option("--graph", graph_path, "Graph JSON file")->required();
  verify_cmd->add_option("--cycle", cycle_path, "Cycle JSON file")->required();

  std::string epsilon_text = "1/100";
  unsigned threads = 1;
  auto* counter_cmd =
      app.add_subcommand("counterexample", "Sweep all complete allocations of the 4-agent, 9-good instance");
  counter_cmd->add_option("--epsilon", epsilon_text, "Approximation slack as p/q");
  counter_cmd->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

  GenArgs gen_args;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random integer-valued instance");
  gen_cmd->add_option("--agents", gen_args.agents, "Number of agents")->required();
  gen_cmd->add_option("--goods", gen_args.goods, "Number of goods")->required();
  gen_cmd->add_option("--max-value", gen_args.max_value, "Largest valuation");
  gen_cmd->add_option("--epsilon", gen_args.epsilon, "Approximation slack as p/q");
  gen_cmd->add_option("--seed", gen_args.seed, "Random seed");
  gen_cmd->add_option("--out", gen_args.out_path, "Output file (stdout if omitted)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve_args, out);
    if (*find_cmd) return cmd_rainbow_find(graph_path, d, out);
    if (*lower_cmd) return cmd_rainbow_lower_bound(d, out_path, out);
    if (*brute_cmd) return cmd_rainbow_brute(graph_path, budget, out);
    if (*verify_cmd) return cmd_rainbow_verify(graph_path, cycle_path, out);
    if (*counter_cmd) return cmd_counterexample(epsilon_text, threads, out);
    if (*gen_cmd) return cmd_gen(gen_args, out);
  } catch (const InternalInvariantError& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const nlohmann::ordered_json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace efx::cli
