#include "fdrl/control_loop.hpp"

#include <algorithm>
#include <limits>

#include "fdrl/errors.hpp"

namespace fdrl {

namespace {

// Stream purposes; mixed into every per-cycle stream key.
constexpr std::uint64_t kTopologyStream = 0x746f706f;
constexpr std::uint64_t kSensingStream = 0x73656e73;
constexpr std::uint64_t kSlotStream = 0x736c6f74;

Rng cycle_stream(const SimConfig& config, std::uint64_t purpose, Phase phase, std::int64_t index) {
  return make_stream({config.seed, purpose, static_cast<std::uint64_t>(phase), static_cast<std::uint64_t>(index)});
}

OpportunityMap sense_and_map(const ExperimentState& state, const SimConfig& config, Rng& sensing,
                             std::span<const AccessThreshold> taus) {
  const bool primary_on = uniform01(sensing) < config.primary_activity_prob;
  std::vector<NodeId> active;
  if (primary_on) active.push_back(state.topology.primary_tx());
  if (config.sense_includes_secondaries) {
    active.insert(active.end(), state.last_transmitters.begin(), state.last_transmitters.end());
  }
  const auto readings = sense(state.topology, active, state.params, state.epoch,
                              config.faded_sensing ? &sensing : nullptr);
  return build_op_map(readings, taus, state.topology, state.epoch);
}

void finish_metrics(EpochMetrics& m, const OpportunityMap& map, const ExperimentState& state,
                    const SimConfig& config, std::int64_t index) {
  m.epoch = index;
  m.threshold_snapshot = state.threshold.tau;
  double sum = 0.0;
  for (const auto& e : map.entries) sum += e.opportunity;
  m.mean_opportunity = map.entries.empty() ? 0.0 : sum / static_cast<double>(map.entries.size());
  m.cycle_latency_ms = cycle_latency(CycleTiming{}, config.optimized_timing);
}

void remember_transmitters(ExperimentState& state, std::span<const FeedbackRecord> feedback) {
  state.last_transmitters.clear();
  for (const auto& fb : feedback) {
    if (fb.transmitted) state.last_transmitters.push_back(fb.stx);
  }
}

}  // namespace

double cycle_latency(const CycleTiming& timing, bool optimized) {
  if (optimized) return timing.optimized_server_compute_ms + timing.node_ms;
  return timing.tcp_ms + timing.server_compute_ms + timing.node_ms;
}

std::vector<SensorReading> sense(const Topology& topology, std::span<const NodeId> active,
                                 const ChannelParams& params, std::int64_t epoch, Rng* faded) {
  std::vector<SensorReading> readings;
  readings.reserve(topology.sensors().size());
  std::vector<Emitter> emitters;
  emitters.reserve(active.size());
  for (NodeId sensor : topology.sensors()) {
    emitters.clear();
    for (NodeId t : active) {
      const double h = faded ? exponential01(*faded) : 1.0;
      emitters.push_back({topology.node(t).position, params.tx_power, h});
    }
    readings.push_back({sensor, epoch, aggregate_interference(topology.node(sensor).position, emitters, params)});
  }
  return readings;
}

AccessThreshold median_threshold(std::span<const AccessThreshold> values) {
  if (values.empty()) throw DomainError("median_threshold: no values");
  std::vector<double> v;
  v.reserve(values.size());
  for (auto t : values) v.push_back(t.tau);
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n % 2 == 1) return {v[n / 2]};
  return {0.5 * (v[n / 2 - 1] + v[n / 2])};
}

ExperimentState make_initial_state(const SimConfig& config) {
  Rng topo = make_stream({config.seed, kTopologyStream});
  ExperimentState state{place_nodes(config, topo), config.channel(), {}, {config.initial_threshold_w}, {}, {}, 0};
  state.params.validate();
  state.direction_thresholds.assign(state.topology.directions().size(), state.threshold);
  return state;
}

CycleRecord run_cycle(ExperimentState& state, const SimConfig& config, Phase phase, std::int64_t index,
                      bool keep_slots) {
  Rng sensing = cycle_stream(config, kSensingStream, phase, index);
  Rng slots = cycle_stream(config, kSlotStream, phase, index);
  const auto& dirs = state.topology.directions();

  const std::vector<AccessThreshold> scalar(dirs.size(), state.threshold);
  const OpportunityMap map =
      sense_and_map(state, config, sensing, config.per_direction_thresholds ? state.direction_thresholds : scalar);

  // Fresh learners start from the OP map, and the first epoch uses those
  // opportunities verbatim as access probabilities.
  std::vector<double> probs(dirs.size());
  if (state.learners.empty()) {
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      const double p0 = map.entries[i].opportunity;
      state.learners.push_back(init_state_from_opportunity(dirs[i].stx, p0, config.learning_rate, config.s_clamp));
      probs[i] = p0;
    }
  } else {
    for (std::size_t i = 0; i < dirs.size(); ++i) probs[i] = access_probability(state.learners[i]);
  }

  EpochResult epoch = run_epoch(state.topology, state.params, probs, config.primary_activity_prob,
                                config.slots_per_epoch, slots, keep_slots);

  const RewardMode mode{config.reward_mode, config.failure_penalty};
  CycleRecord record;
  record.stx.reserve(dirs.size());
  std::vector<AccessThreshold> learned(dirs.size());
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    const FeedbackRecord& fb = epoch.feedback[i];
    const double reward = compute_reward(fb, mode, epoch.metrics.ase);
    state.learners[i] = reinforce_update(state.learners[i], fb.attempt_fraction, reward, probs[i]);
    learned[i] = learned_threshold(state.learners[i], map.entries[i].interference);
    record.stx.push_back({fb.stx, map.entries[i].interference, map.entries[i].opportunity, probs[i],
                          state.learners[i].s, learned[i].tau, reward, fb});
  }

  finish_metrics(epoch.metrics, map, state, config, index);
  if (!learned.empty()) {
    state.threshold = median_threshold(learned);
    state.direction_thresholds = learned;
  }
  remember_transmitters(state, epoch.feedback);
  ++state.epoch;

  record.metrics = epoch.metrics;
  record.slots = std::move(epoch.slots);
  return record;
}

CycleRecord run_baseline_cycle(ExperimentState& state, const SimConfig& config, AccessThreshold fixed_tau,
                               Phase phase, std::int64_t index, bool keep_slots) {
  if (!(fixed_tau.tau >= 0.0)) throw DomainError("baseline threshold must be >= 0");
  Rng sensing = cycle_stream(config, kSensingStream, phase, index);
  Rng slots = cycle_stream(config, kSlotStream, phase, index);
  const auto& dirs = state.topology.directions();

  state.threshold = fixed_tau;
  const std::vector<AccessThreshold> taus(dirs.size(), fixed_tau);
  const OpportunityMap map = sense_and_map(state, config, sensing, taus);

  std::vector<double> probs(dirs.size());
  for (std::size_t i = 0; i < dirs.size(); ++i) probs[i] = map.entries[i].opportunity;

  EpochResult epoch = run_epoch(state.topology, state.params, probs, config.primary_activity_prob,
                                config.slots_per_epoch, slots, keep_slots);

  const RewardMode mode{config.reward_mode, config.failure_penalty};
  CycleRecord record;
  record.stx.reserve(dirs.size());
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    const FeedbackRecord& fb = epoch.feedback[i];
    record.stx.push_back({fb.stx, map.entries[i].interference, map.entries[i].opportunity, probs[i], 0.0,
                          fixed_tau.tau, compute_reward(fb, mode, epoch.metrics.ase), fb});
  }
  finish_metrics(epoch.metrics, map, state, config, index);
  remember_transmitters(state, epoch.feedback);
  ++state.epoch;

  record.metrics = epoch.metrics;
  record.slots = std::move(epoch.slots);
  return record;
}

namespace {

SimConfig finalized(const SimConfig& config) {
  SimConfig c = config;
  c.finalize();
  return c;
}

ExperimentReport make_report(const SimConfig& config, Arm arm) {
  ExperimentReport report;
  report.config = config;
  report.arm = arm;
  report.latency_ms = cycle_latency(CycleTiming{}, false);
  report.latency_optimized_ms = cycle_latency(CycleTiming{}, true);
  return report;
}

}  // namespace

ExperimentReport run_learning(const SimConfig& raw, bool keep_slots) {
  const SimConfig config = finalized(raw);
  ExperimentState state = make_initial_state(config);
  for (std::int64_t k = 0; k < config.warmup_epochs; ++k) {
    run_cycle(state, config, Phase::Warmup, k, false);
  }
  ExperimentReport report = make_report(config, Arm::Learning);
  report.cycles.reserve(static_cast<std::size_t>(config.epochs));
  for (std::int64_t k = 0; k < config.epochs; ++k) {
    report.cycles.push_back(run_cycle(state, config, Phase::Measured, k, keep_slots));
  }
  report.final_states = state.learners;
  report.final_threshold = state.threshold;
  return report;
}

ExperimentReport run_baseline(const SimConfig& raw, AccessThreshold fixed_tau, bool keep_slots) {
  const SimConfig config = finalized(raw);
  ExperimentState state = make_initial_state(config);
  // Warm-up is skipped: nothing is learned, and measured cycles use the
  // same (seed, phase, index) streams as the learning arm.
  ExperimentReport report = make_report(config, Arm::Baseline);
  report.cycles.reserve(static_cast<std::size_t>(config.epochs));
  for (std::int64_t k = 0; k < config.epochs; ++k) {
    report.cycles.push_back(run_baseline_cycle(state, config, fixed_tau, Phase::Measured, k, keep_slots));
  }
  report.final_threshold = fixed_tau;
  return report;
}

ExperimentResult run_experiment(const SimConfig& config, const ExperimentOptions& options) {
  ExperimentResult result{run_learning(config, options.keep_slots), std::nullopt};
  if (options.with_baseline) {
    const AccessThreshold tau = options.baseline_tau.value_or(AccessThreshold{result.learning.config.initial_threshold_w});
    result.baseline = run_baseline(config, tau, options.keep_slots);
  }
  return result;
}

double interference_scale(const SimConfig& raw) {
  const SimConfig config = finalized(raw);
  const ExperimentState state = make_initial_state(config);
  const std::vector<NodeId> active{state.topology.primary_tx()};
  const auto readings = sense(state.topology, active, state.params, 0);
  const auto map = build_op_map(readings, AccessThreshold{0.0}, state.topology, 0);
  if (map.entries.empty()) {
    double low = std::numeric_limits<double>::infinity();
    for (const auto& r : readings) low = std::min(low, r.interference);
    return readings.empty() ? 0.0 : low;
  }
  double low = std::numeric_limits<double>::infinity();
  for (const auto& e : map.entries) low = std::min(low, e.interference);
  return low;
}

}  // namespace fdrl
