#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace fdrl {

enum class RewardKind { LocalRate, GlobalAse };

struct ChannelParams;
struct CycleTiming;

/// Full simulation configuration. Power-like fields are kept in the dB units
/// they are written in; the linear values used by the model are derived once
/// by `finalize()` (called by the loader) and exposed through `channel()`.
struct SimConfig {
  double room_width_m = 7.9;
  double room_height_m = 8.6;
  std::int64_t n_secondary_pairs = 4;
  std::int64_t n_sensors = 9;
  double pair_link_distance_m = 1.0;
  double pathloss_exponent = 3.5;
  double reference_distance_m = 0.1;
  double tx_power_dbm = 0.0;
  double noise_dbm = -90.0;
  double si_cancellation_db = -70.0;
  double sinr_threshold_db = 0.0;
  bool fading = true;
  double primary_activity_prob = 1.0;
  double learning_rate = 100.0;
  double s_clamp = 10.0;
  RewardKind reward_mode = RewardKind::GlobalAse;
  double failure_penalty = 0.0;
  std::int64_t warmup_epochs = 50;
  std::int64_t epochs = 200;
  std::int64_t slots_per_epoch = 50;
  double initial_threshold_dbm = -60.0;
  std::uint64_t seed = 1;
  bool optimized_timing = false;
  bool sense_includes_secondaries = false;
  bool faded_sensing = false;
  bool per_direction_thresholds = false;

  // Derived linear quantities (watts / linear ratios).
  double tx_power_w = 0.0;
  double noise_w = 0.0;
  double si_cancellation = 0.0;
  double sinr_threshold = 0.0;
  double initial_threshold_w = 0.0;

  /// Validates every field and fills the derived linear values. Throws
  /// ConfigError listing every offending key.
  void finalize();

  double room_area() const { return room_width_m * room_height_m; }
  ChannelParams channel() const;

  bool operator==(const SimConfig&) const = default;
};

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);
double db_to_linear(double db);
double linear_to_db(double ratio);

/// Parses line-oriented `key = value` text. `#` starts a comment. Unset keys
/// keep their defaults. Errors name the key and the 1-based line.
SimConfig parse_config(std::string_view text);
SimConfig load_config(const std::string& path);

/// Inverse of parse_config: every key, one per line, full precision.
std::string render_config(const SimConfig& config);

const char* to_string(RewardKind kind);

}  // namespace fdrl
