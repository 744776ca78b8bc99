#include "fdrl/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "fdrl/errors.hpp"
#include "fdrl/radio_env.hpp"

namespace fdrl {

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }
double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double ratio) { return 10.0 * std::log10(ratio); }

const char* to_string(RewardKind kind) { return kind == RewardKind::LocalRate ? "local" : "global"; }

ChannelParams SimConfig::channel() const {
  ChannelParams p;
  p.pathloss_exponent = pathloss_exponent;
  p.reference_distance = reference_distance_m;
  p.tx_power = tx_power_w;
  p.noise_power = noise_w;
  p.si_cancellation = si_cancellation;
  p.fading_enabled = fading;
  p.sinr_threshold = sinr_threshold;
  return p;
}

namespace {

std::vector<std::string> invalid_keys(const SimConfig& c) {
  std::vector<std::string> bad;
  auto require = [&bad](bool ok, const char* key) {
    if (!ok) bad.emplace_back(key);
  };
  auto finite = [](double v) { return std::isfinite(v); };

  require(finite(c.room_width_m) && c.room_width_m > 0.0, "room_width_m");
  require(finite(c.room_height_m) && c.room_height_m > 0.0, "room_height_m");
  require(c.n_secondary_pairs >= 0, "n_secondary_pairs");
  require(c.n_sensors >= 0 && (c.n_secondary_pairs <= 0 || c.n_sensors > 0), "n_sensors");
  require(finite(c.pair_link_distance_m) && c.pair_link_distance_m >= 0.0, "pair_link_distance_m");
  require(finite(c.pathloss_exponent) && c.pathloss_exponent > 0.0, "pathloss_exponent");
  require(finite(c.reference_distance_m) && c.reference_distance_m > 0.0, "reference_distance_m");
  require(finite(c.tx_power_dbm), "tx_power_dbm");
  require(finite(c.noise_dbm), "noise_dbm");
  // Linear residual must stay within [0, 1] of the own transmit power.
  require(finite(c.si_cancellation_db) && c.si_cancellation_db <= 0.0, "si_cancellation_db");
  require(finite(c.sinr_threshold_db), "sinr_threshold_db");
  require(c.primary_activity_prob >= 0.0 && c.primary_activity_prob <= 1.0, "primary_activity_prob");
  require(finite(c.learning_rate) && c.learning_rate >= 0.0, "learning_rate");
  // sigmoid(s) rounds to exactly 1 near s = 37, which breaks the threshold read-back.
  require(c.s_clamp > 0.0 && c.s_clamp <= 30.0, "s_clamp");
  require(finite(c.failure_penalty) && c.failure_penalty >= 0.0, "failure_penalty");
  require(c.warmup_epochs >= 0, "warmup_epochs");
  require(c.epochs >= 0, "epochs");
  require(c.slots_per_epoch >= 1, "slots_per_epoch");
  // -inf dBm is a zero threshold.
  require(finite(c.initial_threshold_dbm) || c.initial_threshold_dbm == -INFINITY, "initial_threshold_dbm");
  return bad;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ", " : "") + items[i];
  return out;
}

}  // namespace

void SimConfig::finalize() {
  if (const auto bad = invalid_keys(*this); !bad.empty()) {
    throw ConfigError("invalid configuration: " + join(bad));
  }

  tx_power_w = dbm_to_watts(tx_power_dbm);
  noise_w = dbm_to_watts(noise_dbm);
  si_cancellation = db_to_linear(si_cancellation_db);
  sinr_threshold = db_to_linear(sinr_threshold_db);
  initial_threshold_w = dbm_to_watts(initial_threshold_dbm);
}

namespace {

using Field = std::variant<double SimConfig::*, std::int64_t SimConfig::*, std::uint64_t SimConfig::*,
                           bool SimConfig::*, RewardKind SimConfig::*>;

struct Key {
  const char* name;
  Field field;
};

const std::vector<Key>& keys() {
  static const std::vector<Key> table = {
      {"room_width_m", &SimConfig::room_width_m},
      {"room_height_m", &SimConfig::room_height_m},
      {"n_secondary_pairs", &SimConfig::n_secondary_pairs},
      {"n_sensors", &SimConfig::n_sensors},
      {"pair_link_distance_m", &SimConfig::pair_link_distance_m},
      {"pathloss_exponent", &SimConfig::pathloss_exponent},
      {"reference_distance_m", &SimConfig::reference_distance_m},
      {"tx_power_dbm", &SimConfig::tx_power_dbm},
      {"noise_dbm", &SimConfig::noise_dbm},
      {"si_cancellation_db", &SimConfig::si_cancellation_db},
      {"sinr_threshold_db", &SimConfig::sinr_threshold_db},
      {"fading", &SimConfig::fading},
      {"primary_activity_prob", &SimConfig::primary_activity_prob},
      {"learning_rate", &SimConfig::learning_rate},
      {"s_clamp", &SimConfig::s_clamp},
      {"reward_mode", &SimConfig::reward_mode},
      {"failure_penalty", &SimConfig::failure_penalty},
      {"warmup_epochs", &SimConfig::warmup_epochs},
      {"epochs", &SimConfig::epochs},
      {"slots_per_epoch", &SimConfig::slots_per_epoch},
      {"initial_threshold_dbm", &SimConfig::initial_threshold_dbm},
      {"seed", &SimConfig::seed},
      {"optimized_timing", &SimConfig::optimized_timing},
      {"sense_includes_secondaries", &SimConfig::sense_includes_secondaries},
      {"faded_sensing", &SimConfig::faded_sensing},
      {"per_direction_thresholds", &SimConfig::per_direction_thresholds},
  };
  return table;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
bool parse_number(std::string_view text, T& out) {
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end;
}

bool parse_value(std::string_view text, SimConfig& config, const Field& field) {
  return std::visit(
      [&](auto member) -> bool {
        using T = std::remove_reference_t<decltype(config.*member)>;
        if constexpr (std::is_same_v<T, bool>) {
          if (text == "on") return (config.*member = true), true;
          if (text == "off") return (config.*member = false), true;
          return false;
        } else if constexpr (std::is_same_v<T, RewardKind>) {
          if (text == "local") return (config.*member = RewardKind::LocalRate), true;
          if (text == "global") return (config.*member = RewardKind::GlobalAse), true;
          return false;
        } else if constexpr (std::is_same_v<T, double>) {
          return parse_number(text, config.*member);
        } else {
          return parse_number(text, config.*member);
        }
      },
      field);
}

std::string render_value(const SimConfig& config, const Field& field) {
  return std::visit(
      [&](auto member) -> std::string {
        using T = std::remove_cvref_t<decltype(config.*member)>;
        const T& v = config.*member;
        if constexpr (std::is_same_v<T, bool>) {
          return v ? "on" : "off";
        } else if constexpr (std::is_same_v<T, RewardKind>) {
          return to_string(v);
        } else if constexpr (std::is_same_v<T, double>) {
          char buf[32];
          std::snprintf(buf, sizeof buf, "%.17g", v);
          return buf;
        } else {
          return std::to_string(v);
        }
      },
      field);
}

}  // namespace

SimConfig parse_config(std::string_view text) {
  SimConfig config;
  std::map<std::string, std::size_t> lines;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto where = " (line " + std::to_string(line_no) + ")";
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("expected `key = value`" + where);
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));

    const Key* match = nullptr;
    for (const auto& k : keys()) {
      if (key == k.name) match = &k;
    }
    if (!match) throw ConfigError("unknown key `" + std::string(key) + "`" + where);
    if (!parse_value(value, config, match->field)) {
      throw ConfigError("cannot parse value `" + std::string(value) + "` for " + std::string(key) + where);
    }
    lines[std::string(key)] = line_no;
  }
  if (auto bad = invalid_keys(config); !bad.empty()) {
    for (auto& key : bad) {
      if (auto it = lines.find(key); it != lines.end()) key += " (line " + std::to_string(it->second) + ")";
    }
    throw ConfigError("invalid configuration: " + join(bad));
  }
  config.finalize();
  return config;
}

SimConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string render_config(const SimConfig& config) {
  std::string out;
  for (const auto& k : keys()) {
    out += k.name;
    out += " = ";
    out += render_value(config, k.field);
    out += '\n';
  }
  return out;
}

}  // namespace fdrl
