#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fdrl/config.hpp"
#include "fdrl/learner.hpp"
#include "fdrl/mac_sim.hpp"
#include "fdrl/opmap.hpp"
#include "fdrl/radio_env.hpp"

namespace fdrl {

/// Per-cycle latency components in milliseconds. Defaults are the measured
/// testbed budget: 1 ms TCP/IP, 132 ms server compute, 10 ms at the nodes,
/// and 17 ms for an on-chip OP calculation.
struct CycleTiming {
  double tcp_ms = 1.0;
  double server_compute_ms = 132.0;
  double node_ms = 10.0;
  double optimized_server_compute_ms = 17.0;
};

/// Optimized mode drops the TCP hop and uses the on-chip server time.
double cycle_latency(const CycleTiming& timing, bool optimized);

enum class Phase : std::uint64_t { Warmup = 1, Measured = 2 };

/// Sensor readings: aggregate interference at every sensor from `active`
/// transmitters, all at `params.tx_power`. With `faded` set, one fading gain
/// is drawn per (sensor, transmitter) in sensor-major order.
std::vector<SensorReading> sense(const Topology& topology, std::span<const NodeId> active,
                                 const ChannelParams& params, std::int64_t epoch, Rng* faded = nullptr);

/// Per-transmitter view of one cycle.
struct StxRecord {
  NodeId stx = 0;
  double interference = 0.0;  // W, nearest-sensor reading
  double opportunity = 0.0;
  double access_prob = 0.0;
  double state = 0.0;              // learner s after the update (0 for the baseline)
  double threshold = 0.0;          // W, learned (or fixed, for the baseline) threshold
  double reward = 0.0;
  FeedbackRecord feedback;
};

struct CycleRecord {
  EpochMetrics metrics;
  std::vector<StxRecord> stx;
  std::vector<SlotOutcome> slots;  // only when requested
};

struct ExperimentState {
  Topology topology;
  ChannelParams params;
  std::vector<LearnerState> learners;  // empty until the first cycle
  AccessThreshold threshold;           // scalar server threshold
  std::vector<AccessThreshold> direction_thresholds;
  std::vector<NodeId> last_transmitters;  // secondaries that transmitted last cycle
  std::int64_t epoch = 0;
};

ExperimentState make_initial_state(const SimConfig& config);

/// Sense, build the OP map, access the channel, learn, and read back the next
/// threshold. Cycle randomness comes from streams keyed by (seed, phase,
/// index) so that measured cycles do not depend on the warm-up length.
CycleRecord run_cycle(ExperimentState& state, const SimConfig& config, Phase phase, std::int64_t index,
                      bool keep_slots = false);

/// Same pipeline with access probabilities fixed to the opportunity under
/// `fixed_tau`; nothing is learned.
CycleRecord run_baseline_cycle(ExperimentState& state, const SimConfig& config, AccessThreshold fixed_tau,
                               Phase phase, std::int64_t index, bool keep_slots = false);

enum class Arm { Learning, Baseline };

struct ExperimentReport {
  SimConfig config;
  Arm arm = Arm::Learning;
  std::vector<CycleRecord> cycles;  // measured cycles only
  std::vector<LearnerState> final_states;
  AccessThreshold final_threshold;
  double latency_ms = 0.0;
  double latency_optimized_ms = 0.0;
};

struct ExperimentOptions {
  bool keep_slots = false;
  bool with_baseline = false;
  std::optional<AccessThreshold> baseline_tau;  // defaults to the initial threshold
};

struct ExperimentResult {
  ExperimentReport learning;
  std::optional<ExperimentReport> baseline;
};

ExperimentReport run_learning(const SimConfig& config, bool keep_slots = false);
ExperimentReport run_baseline(const SimConfig& config, AccessThreshold fixed_tau, bool keep_slots = false);
ExperimentResult run_experiment(const SimConfig& config, const ExperimentOptions& options = {});

/// Median of the given thresholds; mean of the middle two for even counts.
AccessThreshold median_threshold(std::span<const AccessThreshold> values);

/// Quietest nearest-sensor reading over the secondary transmitters (over all
/// sensors when there are none), primary active, sensing fading off. A
/// threshold x dB below this gives every transmitter an opportunity of at
/// most 1 - exp(-10^(-x/10)).
double interference_scale(const SimConfig& config);

}  // namespace fdrl
