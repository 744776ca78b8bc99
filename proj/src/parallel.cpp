#include "fdrl/parallel.hpp"

#include <exception>

#include "fdrl/errors.hpp"

namespace fdrl {

std::vector<double> interference_field_serial(std::span<const Position> points, std::span<const Emitter> emitters,
                                              const ChannelParams& params) {
  std::vector<double> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    out[i] = aggregate_interference(points[i], emitters, params);
  }
  return out;
}

std::vector<double> interference_field(std::span<const Position> points, std::span<const Emitter> emitters,
                                       const ChannelParams& params) {
  std::vector<double> out(points.size());
  const auto n = static_cast<std::int64_t>(points.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = aggregate_interference(points[k], emitters, params);
  }
  return out;
}

namespace {

ReplicationSummary run_replication(const SimConfig& base, const SweepOptions& options, std::int64_t r) {
  SimConfig config = base;
  config.seed = base.seed + static_cast<std::uint64_t>(r);
  ExperimentOptions opts;
  opts.with_baseline = options.with_baseline;
  opts.baseline_tau = options.baseline_tau;
  const ExperimentResult result = run_experiment(config, opts);

  ReplicationSummary s;
  s.seed = config.seed;
  s.learning = summarize(result.learning, options.tail_fraction);
  if (result.baseline) {
    s.baseline = summarize(*result.baseline, options.tail_fraction);
    s.ratio = ase_ratio(result.learning, *result.baseline, options.tail_fraction);
  }
  return s;
}

void check(const SweepOptions& options) {
  if (options.replications < 0) throw ConfigError("replications must be >= 0");
}

}  // namespace

std::vector<ReplicationSummary> run_sweep_serial(const SimConfig& config, const SweepOptions& options) {
  check(options);
  std::vector<ReplicationSummary> out;
  out.reserve(static_cast<std::size_t>(options.replications));
  for (std::int64_t r = 0; r < options.replications; ++r) out.push_back(run_replication(config, options, r));
  return out;
}

std::vector<ReplicationSummary> run_sweep(const SimConfig& config, const SweepOptions& options) {
  check(options);
  // Each replication owns its state and streams; the vector slot is the only
  // shared write, and it is distinct per iteration.
  std::vector<ReplicationSummary> out(static_cast<std::size_t>(options.replications));
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t r = 0; r < options.replications; ++r) {
    try {
      out[static_cast<std::size_t>(r)] = run_replication(config, options, r);
    } catch (...) {
#pragma omp critical(fdrl_sweep_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace fdrl
