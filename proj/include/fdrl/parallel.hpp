#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fdrl/control_loop.hpp"
#include "fdrl/radio_env.hpp"
#include "fdrl/trace.hpp"

namespace fdrl {

// OpenMP kernels and the serial references they are tested against. Each
// parallel kernel must return exactly what its serial twin returns.

/// Aggregate interference at every point of `points`.
std::vector<double> interference_field_serial(std::span<const Position> points, std::span<const Emitter> emitters,
                                              const ChannelParams& params);
std::vector<double> interference_field(std::span<const Position> points, std::span<const Emitter> emitters,
                                       const ChannelParams& params);

struct ReplicationSummary {
  std::uint64_t seed = 0;
  SummaryStats learning;
  std::optional<SummaryStats> baseline;
  std::optional<double> ratio;

  bool operator==(const ReplicationSummary&) const = default;
};

struct SweepOptions {
  std::int64_t replications = 1;
  bool with_baseline = true;
  std::optional<AccessThreshold> baseline_tau;
  double tail_fraction = 0.2;
};

/// Replication r runs `config` with seed config.seed + r. Results are
/// ordered by replication.
std::vector<ReplicationSummary> run_sweep_serial(const SimConfig& config, const SweepOptions& options);
std::vector<ReplicationSummary> run_sweep(const SimConfig& config, const SweepOptions& options);

}  // namespace fdrl
