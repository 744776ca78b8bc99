// Command-line front end: simulate, baseline, compare, sweep.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "fdrl/config.hpp"
#include "fdrl/control_loop.hpp"
#include "fdrl/parallel.hpp"
#include "fdrl/trace.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  bool slots = false;
  bool optimized_timing = false;
  double tail_fraction = 0.2;
  std::optional<double> threshold_dbm;
  std::int64_t replications = 1;
};

fdrl::SimConfig resolve_config(const CommonArgs& args) {
  fdrl::SimConfig config = args.config_path.empty() ? fdrl::parse_config("") : fdrl::load_config(args.config_path);
  if (args.seed) config.seed = *args.seed;
  if (args.optimized_timing) config.optimized_timing = true;
  config.finalize();
  return config;
}

fdrl::AccessThreshold baseline_tau(const CommonArgs& args, const fdrl::SimConfig& config) {
  return {args.threshold_dbm ? fdrl::dbm_to_watts(*args.threshold_dbm) : config.initial_threshold_w};
}

// trace.csv -> trace_baseline.csv
std::string baseline_path(const std::string& out) {
  const auto slash = out.find_last_of('/');
  const auto dot = out.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return out + "_baseline";
  return out.substr(0, dot) + "_baseline" + out.substr(dot);
}

void print_latency_mode(const fdrl::SimConfig& config) {
  std::cout << "timing mode: " << (config.optimized_timing ? "optimized" : "testbed") << '\n';
}

int cmd_simulate(const CommonArgs& args) {
  const auto config = resolve_config(args);
  const auto report = fdrl::run_learning(config, args.slots);
  if (!args.out.empty()) fdrl::write_trace(report, args.out, args.slots);
  print_latency_mode(config);
  std::cout << fdrl::emit_summary(report, nullptr, args.tail_fraction);
  return 0;
}

int cmd_baseline(const CommonArgs& args) {
  const auto config = resolve_config(args);
  const auto report = fdrl::run_baseline(config, baseline_tau(args, config), args.slots);
  if (!args.out.empty()) fdrl::write_trace(report, args.out, args.slots);
  print_latency_mode(config);
  // The baseline is summarized on its own; there is nothing to compare against.
  std::cout << fdrl::emit_summary(report, nullptr, args.tail_fraction);
  return 0;
}

int cmd_compare(const CommonArgs& args) {
  const auto config = resolve_config(args);
  fdrl::ExperimentOptions options;
  options.keep_slots = args.slots;
  options.with_baseline = true;
  options.baseline_tau = baseline_tau(args, config);
  const auto result = fdrl::run_experiment(config, options);
  if (!args.out.empty()) {
    fdrl::write_trace(result.learning, args.out, args.slots);
    fdrl::write_trace(*result.baseline, baseline_path(args.out), args.slots);
  }
  print_latency_mode(config);
  std::cout << fdrl::emit_summary(result.learning, &*result.baseline, args.tail_fraction);
  return 0;
}

int cmd_sweep(const CommonArgs& args) {
  const auto config = resolve_config(args);
  fdrl::SweepOptions options;
  options.replications = args.replications;
  options.baseline_tau = baseline_tau(args, config);
  options.tail_fraction = args.tail_fraction;
  const auto rows = fdrl::run_sweep(config, options);

  std::string csv = "seed,rl_tail_ase,baseline_tail_ase,ratio,rl_attempts,rl_successes,rl_violations\n";
  double ratio_sum = 0.0;
  std::int64_t wins = 0;
  for (const auto& r : rows) {
    csv += std::to_string(r.seed) + ',' + fdrl::format_number(r.learning.tail_mean_ase) + ',' +
           fdrl::format_number(r.baseline->tail_mean_ase) + ',' + fdrl::format_number(*r.ratio) + ',' +
           std::to_string(r.learning.attempts) + ',' + std::to_string(r.learning.successes) + ',' +
           std::to_string(r.learning.primary_violations) + '\n';
    ratio_sum += *r.ratio;
    if (r.learning.tail_mean_ase > r.baseline->tail_mean_ase) ++wins;
  }
  if (!args.out.empty()) {
    std::ofstream out(args.out, std::ios::binary | std::ios::trunc);
    if (!out || !(out << csv)) throw std::runtime_error("cannot write sweep file " + args.out);
  }
  std::cout << csv;
  if (!rows.empty()) {
    std::cout << "replications: " << rows.size() << ", rl wins: " << wins
              << ", mean ratio: " << fdrl::format_number(ratio_sum / static_cast<double>(rows.size())) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flexible-duplex spectrum sharing simulator with REINFORCE-learned access thresholds"};
  app.require_subcommand(1);

  CommonArgs args;
  auto add_common = [&args](CLI::App* sub) {
    sub->add_option("--config", args.config_path, "key = value configuration file")->check(CLI::ExistingFile);
    sub->add_option("--seed", args.seed, "override the configured seed");
    sub->add_option("--out", args.out, "output CSV path");
    sub->add_flag("--slots", args.slots, "include per-slot and per-transmitter rows in the trace");
    sub->add_flag("--optimized-timing", args.optimized_timing, "account cycles with on-chip OP calculation");
    sub->add_option("--tail-fraction", args.tail_fraction, "fraction of final epochs in the tail mean")
        ->check(CLI::Range(0.0, 1.0));
  };

  auto* simulate = app.add_subcommand("simulate", "run the learning system");
  auto* baseline = app.add_subcommand("baseline", "run the fixed-threshold OP-map system");
  auto* compare = app.add_subcommand("compare", "run both arms with paired seeds");
  auto* sweep = app.add_subcommand("sweep", "run paired comparisons over consecutive seeds");
  for (auto* sub : {simulate, baseline, compare, sweep}) add_common(sub);
  for (auto* sub : {baseline, compare, sweep}) {
    sub->add_option("--threshold-dbm", args.threshold_dbm, "fixed baseline threshold (default: initial_threshold_dbm)");
  }
  sweep->add_option("--replications", args.replications, "number of seeds")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*simulate) return cmd_simulate(args);
    if (*baseline) return cmd_baseline(args);
    if (*compare) return cmd_compare(args);
    if (*sweep) return cmd_sweep(args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
