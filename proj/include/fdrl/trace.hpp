#pragma once

#include <cstdint>
#include <string>

#include "fdrl/control_loop.hpp"

namespace fdrl {

/// CSV header of the trace, fixed column order.
inline constexpr const char* kTraceHeader =
    "epoch,slot,stx_id,transmitted,success,sinr_db,rate_bps_hz,access_prob,opportunity,threshold_dbm,ase,"
    "primary_violation,cycle_latency_ms";

/// One system row (slot = -1, stx_id = -1) per measured cycle. With
/// `per_slot`, each cycle is preceded by its per-slot rows and per-transmitter
/// summary rows (slot = -1).
std::string render_trace(const ExperimentReport& report, bool per_slot = false);

/// Writes render_trace() to `path`; throws std::runtime_error naming the path on failure.
void write_trace(const ExperimentReport& report, const std::string& path, bool per_slot = false);

struct SummaryStats {
  double tail_mean_ase = 0.0;
  std::int64_t tail_epochs = 0;
  std::int64_t attempts = 0;
  std::int64_t successes = 0;
  std::int64_t primary_violations = 0;
  double final_threshold_w = 0.0;
  double latency_ms = 0.0;
  double latency_optimized_ms = 0.0;

  bool operator==(const SummaryStats&) const = default;
};

/// Tail mean over the last ceil(tail_fraction * epochs) measured epochs.
SummaryStats summarize(const ExperimentReport& report, double tail_fraction = 0.2);

/// Learning/baseline tail-mean ASE ratio. Throws ComparisonError when the
/// reports were not produced from the same seed and topology.
double ase_ratio(const ExperimentReport& learning, const ExperimentReport& baseline, double tail_fraction = 0.2);

std::string emit_summary(const ExperimentReport& learning, const ExperimentReport* baseline = nullptr,
                         double tail_fraction = 0.2);

/// Full-precision decimal rendering used by every numeric CSV field.
std::string format_number(double value);

}  // namespace fdrl
