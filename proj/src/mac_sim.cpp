#include "fdrl/mac_sim.hpp"

#include <cmath>
#include <limits>

#include "fdrl/errors.hpp"

namespace fdrl {

namespace {

// Fading matrix layout: row = transmitter slot (primary tx, then secondary
// nodes), column = receiver slot (primary rx, then secondary nodes).
// Secondary node n maps to slot n - 1 on both axes.
std::size_t tx_slot(NodeId id) { return id == 0 ? 0 : static_cast<std::size_t>(id - 1); }
std::size_t rx_slot(NodeId id) { return id == 1 ? 0 : static_cast<std::size_t>(id - 1); }

}  // namespace

SlotOutcome run_slot(const Topology& topology, const ChannelParams& params, std::span<const double> access_probs,
                     bool primary_active, Rng& rng, std::int64_t slot_index) {
  const auto& dirs = topology.directions();
  if (access_probs.size() != dirs.size()) {
    throw DataError("run_slot: expected one access probability per direction");
  }

  SlotOutcome out;
  out.slot = slot_index;
  out.primary_active = primary_active;
  out.primary_sinr = std::numeric_limits<double>::quiet_NaN();
  out.directions.resize(dirs.size());

  bool any_secondary = false;
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    const double p = access_probs[i];
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("run_slot: access probability outside [0, 1]");
    out.directions[i].stx = dirs[i].stx;
    out.directions[i].transmitted = uniform01(rng) < p;
    any_secondary = any_secondary || out.directions[i].transmitted;
  }

  const std::size_t n_tx = topology.transmitters().size();
  const std::size_t n_rx = topology.receivers().size();
  std::vector<double> fading(n_tx * n_rx, 1.0);
  if (params.fading_enabled) {
    for (double& h : fading) h = exponential01(rng);
  }
  auto gain = [&](NodeId tx, NodeId rx) { return fading[tx_slot(tx) * n_rx + rx_slot(rx)]; };

  out.modes.resize(topology.pair_count());
  for (std::size_t k = 0; k < out.modes.size(); ++k) {
    const bool ab = out.directions[2 * k].transmitted;
    const bool ba = out.directions[2 * k + 1].transmitted;
    out.modes[k] = ab && ba ? DuplexMode::FullDuplex
                 : ab       ? DuplexMode::HalfDuplexAtoB
                 : ba       ? DuplexMode::HalfDuplexBtoA
                            : DuplexMode::Silent;
  }

  // Nodes transmitting this slot, primary included.
  std::vector<NodeId> active;
  active.reserve(dirs.size() + 1);
  if (primary_active) active.push_back(topology.primary_tx());
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    if (out.directions[i].transmitted) active.push_back(dirs[i].stx);
  }

  std::vector<Emitter> interferers;
  interferers.reserve(active.size());
  auto collect = [&](NodeId desired_tx, NodeId rx) {
    interferers.clear();
    for (NodeId t : active) {
      if (t == desired_tx || t == rx) continue;
      interferers.push_back({topology.node(t).position, params.tx_power, gain(t, rx)});
    }
  };

  for (std::size_t i = 0; i < dirs.size(); ++i) {
    auto& rec = out.directions[i];
    if (!rec.transmitted) continue;
    const Direction& d = dirs[i];
    collect(d.stx, d.srx);
    const Emitter desired{topology.node(d.stx).position, params.tx_power, gain(d.stx, d.srx)};
    // The partner direction is the other half of the same pair.
    const bool rx_transmits = out.directions[i ^ 1U].transmitted;
    const auto own = rx_transmits ? std::optional<double>(params.tx_power) : std::nullopt;
    rec.sinr = link_sinr(topology.node(d.srx).position, desired, interferers, own, params);
    rec.success = rec.sinr >= params.sinr_threshold;
    rec.rate = rec.success ? std::log2(1.0 + rec.sinr) : 0.0;
  }

  if (primary_active) {
    const NodeId ptx = topology.primary_tx();
    const NodeId prx = topology.primary_rx();
    collect(ptx, prx);
    const Emitter desired{topology.node(ptx).position, params.tx_power, gain(ptx, prx)};
    out.primary_sinr = link_sinr(topology.node(prx).position, desired, interferers, std::nullopt, params);
    out.primary_violation = any_secondary && out.primary_sinr < params.sinr_threshold;
  }
  return out;
}

double area_spectral_efficiency(std::span<const SlotOutcome> outcomes, double room_area, std::int64_t slots) {
  if (slots < 1) throw DomainError("area_spectral_efficiency: slots must be >= 1");
  if (!(room_area > 0.0)) throw DomainError("area_spectral_efficiency: room area must be > 0");
  double sum = 0.0;
  for (const auto& o : outcomes) {
    for (const auto& d : o.directions) {
      if (d.success) sum += d.rate;
    }
  }
  return sum / (room_area * static_cast<double>(slots));
}

EpochResult run_epoch(const Topology& topology, const ChannelParams& params, std::span<const double> access_probs,
                      double primary_activity_prob, std::int64_t slots, Rng& rng, bool keep_slots) {
  if (slots < 1) throw DomainError("run_epoch: slots_per_epoch must be >= 1");
  const auto& dirs = topology.directions();

  EpochResult result;
  result.feedback.resize(dirs.size());
  std::vector<double> rate_sum(dirs.size(), 0.0);
  double ase_sum = 0.0;
  if (keep_slots) result.slots.reserve(static_cast<std::size_t>(slots));

  for (std::int64_t t = 0; t < slots; ++t) {
    const bool primary_active = uniform01(rng) < primary_activity_prob;
    SlotOutcome slot = run_slot(topology, params, access_probs, primary_active, rng, t);
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      const auto& d = slot.directions[i];
      auto& fb = result.feedback[i];
      if (d.transmitted) ++fb.attempts;
      if (d.success) {
        ++fb.successes;
        rate_sum[i] += d.rate;
        ase_sum += d.rate;
      }
    }
    if (slot.primary_violation) ++result.metrics.primary_violations;
    if (keep_slots) result.slots.push_back(std::move(slot));
  }

  auto& m = result.metrics;
  double prob_sum = 0.0;
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    auto& fb = result.feedback[i];
    fb.stx = dirs[i].stx;
    fb.transmitted = fb.attempts > 0;
    fb.success = 2 * fb.successes > fb.attempts;
    fb.achieved_rate = fb.success ? rate_sum[i] / static_cast<double>(fb.successes) : 0.0;
    fb.access_prob_used = access_probs[i];
    fb.attempt_fraction = static_cast<double>(fb.attempts) / static_cast<double>(slots);
    m.attempts += fb.attempts;
    m.successes += fb.successes;
    prob_sum += access_probs[i];
  }
  m.collisions = m.attempts - m.successes;
  m.ase = ase_sum / (topology.room_area() * static_cast<double>(slots));
  m.mean_access_prob = dirs.empty() ? 0.0 : prob_sum / static_cast<double>(dirs.size());
  return result;
}

}  // namespace fdrl
