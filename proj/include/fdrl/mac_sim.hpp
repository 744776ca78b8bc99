#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fdrl/learner.hpp"
#include "fdrl/radio_env.hpp"

namespace fdrl {

enum class DuplexMode { Silent, HalfDuplexAtoB, HalfDuplexBtoA, FullDuplex };

struct DirectionOutcome {
  NodeId stx = 0;
  bool transmitted = false;
  bool success = false;
  double sinr = 0.0;  // linear; 0 when silent
  double rate = 0.0;  // bit/s/Hz; log2(1 + sinr) on success, else 0
};

struct SlotOutcome {
  std::int64_t slot = 0;
  std::vector<DirectionOutcome> directions;  // Topology::directions() order
  std::vector<DuplexMode> modes;             // one per pair
  bool primary_active = false;
  double primary_sinr = 0.0;                 // NaN when the primary is idle
  bool primary_violation = false;
};

struct EpochMetrics {
  std::int64_t epoch = 0;
  std::int64_t attempts = 0;
  std::int64_t successes = 0;
  std::int64_t collisions = 0;
  std::int64_t primary_violations = 0;
  double ase = 0.0;  // bit/s/Hz/m^2
  double mean_access_prob = 0.0;
  double mean_opportunity = 0.0;
  double threshold_snapshot = 0.0;  // W, threshold the epoch's OP map was built with
  double cycle_latency_ms = 0.0;

  bool operator==(const EpochMetrics&) const = default;
};

struct EpochResult {
  EpochMetrics metrics;
  std::vector<FeedbackRecord> feedback;  // one per direction
  std::vector<SlotOutcome> slots;        // only filled when requested
};

/// One slotted-ALOHA slot. Every direction draws its access decision, then
/// (with fading enabled) a full transmitter x receiver matrix of fading gains
/// is drawn, so the stream advances by the same amount whatever is decided.
SlotOutcome run_slot(const Topology& topology, const ChannelParams& params, std::span<const double> access_probs,
                     bool primary_active, Rng& rng, std::int64_t slot_index = 0);

double area_spectral_efficiency(std::span<const SlotOutcome> outcomes, double room_area, std::int64_t slots);

/// Runs `slots` slots with fixed per-direction access probabilities and
/// summarizes the epoch per direction.
EpochResult run_epoch(const Topology& topology, const ChannelParams& params, std::span<const double> access_probs,
                      double primary_activity_prob, std::int64_t slots, Rng& rng, bool keep_slots = false);

}  // namespace fdrl
