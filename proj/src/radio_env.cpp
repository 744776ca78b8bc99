#include "fdrl/radio_env.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fdrl/errors.hpp"

namespace fdrl {

Topology::Topology(std::vector<Node> nodes, double room_width, double room_height)
    : nodes_(std::move(nodes)), width_(room_width), height_(room_height) {
  if (!(width_ > 0.0) || !(height_ > 0.0)) {
    throw ConfigError("room dimensions must be positive");
  }
  if (nodes_.size() < 2 || nodes_[0].role != NodeRole::PrimaryTx || nodes_[1].role != NodeRole::PrimaryRx) {
    throw ConfigError("topology must start with the primary transmitter and receiver");
  }
  transmitters_.push_back(0);
  receivers_.push_back(1);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    if (n.id != static_cast<NodeId>(i)) {
      throw ConfigError("node ids must equal their index");
    }
    const Position p = n.position;
    if (p.x < 0.0 || p.x > width_ || p.y < 0.0 || p.y > height_) {
      throw ConfigError("node " + std::to_string(n.id) + " lies outside the room");
    }
    switch (n.role) {
      case NodeRole::SecondaryA: {
        if (i + 1 >= nodes_.size() || nodes_[i + 1].role != NodeRole::SecondaryB || !n.pair ||
            nodes_[i + 1].pair != n.pair) {
          throw ConfigError("secondary node " + std::to_string(n.id) + " has no partner");
        }
        const Node& b = nodes_[i + 1];
        directions_.push_back({n.id, b.id, *n.pair});
        directions_.push_back({b.id, n.id, *n.pair});
        transmitters_.push_back(n.id);
        transmitters_.push_back(b.id);
        receivers_.push_back(n.id);
        receivers_.push_back(b.id);
        break;
      }
      case NodeRole::SecondaryB:
        if (i == 0 || nodes_[i - 1].role != NodeRole::SecondaryA) {
          throw ConfigError("secondary node " + std::to_string(n.id) + " has no partner");
        }
        break;
      case NodeRole::Sensor:
        sensors_.push_back(n.id);
        break;
      case NodeRole::PrimaryTx:
      case NodeRole::PrimaryRx:
        if (i > 1) throw ConfigError("only one primary pair is supported");
        break;
    }
  }
  if (!directions_.empty() && sensors_.empty()) {
    throw ConfigError("n_sensors: at least one sensor is required when secondary pairs exist");
  }
}

void ChannelParams::validate() const {
  if (!(pathloss_exponent > 0.0)) throw ConfigError("pathloss_exponent must be > 0");
  if (!(reference_distance > 0.0)) throw ConfigError("reference_distance must be > 0");
  if (!(tx_power > 0.0)) throw ConfigError("tx_power must be > 0");
  if (!(noise_power > 0.0)) throw ConfigError("noise_power must be > 0");
  if (!(si_cancellation >= 0.0 && si_cancellation <= 1.0)) throw ConfigError("si_cancellation must be in [0, 1]");
  if (!(sinr_threshold > 0.0)) throw ConfigError("sinr_threshold must be > 0");
}

namespace {

Position uniform_position(Rng& rng, double width, double height) {
  const double x = uniform01(rng) * width;
  const double y = uniform01(rng) * height;
  return {x, y};
}

}  // namespace

Topology place_nodes(const SimConfig& config, Rng& rng) {
  if (config.n_secondary_pairs < 0) throw ConfigError("n_secondary_pairs must be >= 0");
  if (config.n_sensors < 0) throw ConfigError("n_sensors must be >= 0");
  if (!(config.room_width_m > 0.0) || !(config.room_height_m > 0.0)) {
    throw ConfigError("room dimensions must be positive");
  }
  if (config.n_secondary_pairs > 0 && config.n_sensors == 0) {
    throw ConfigError("n_sensors: at least one sensor is required when secondary pairs exist");
  }
  const double w = config.room_width_m;
  const double h = config.room_height_m;

  std::vector<Node> nodes;
  nodes.reserve(static_cast<std::size_t>(2 + 2 * config.n_secondary_pairs + config.n_sensors));
  auto add = [&nodes](NodeRole role, Position p, std::optional<PairId> pair = std::nullopt) {
    nodes.push_back({static_cast<NodeId>(nodes.size()), role, p, pair});
  };

  add(NodeRole::PrimaryTx, uniform_position(rng, w, h));
  add(NodeRole::PrimaryRx, uniform_position(rng, w, h));

  for (std::int64_t k = 0; k < config.n_secondary_pairs; ++k) {
    const auto pair = static_cast<PairId>(k);
    const Position a = uniform_position(rng, w, h);
    const double angle = 2.0 * std::numbers::pi * uniform01(rng);
    const Position b{std::clamp(a.x + config.pair_link_distance_m * std::cos(angle), 0.0, w),
                     std::clamp(a.y + config.pair_link_distance_m * std::sin(angle), 0.0, h)};
    add(NodeRole::SecondaryA, a, pair);
    add(NodeRole::SecondaryB, b, pair);
  }

  if (config.n_sensors > 0) {
    const auto m = config.n_sensors;
    const auto cols = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(m))));
    const auto rows = (m + cols - 1) / cols;
    for (std::int64_t i = 0; i < m; ++i) {
      const auto r = i / cols;
      const auto c = i % cols;
      add(NodeRole::Sensor, {(static_cast<double>(c) + 0.5) * w / static_cast<double>(cols),
                             (static_cast<double>(r) + 0.5) * h / static_cast<double>(rows)});
    }
  }
  return Topology(std::move(nodes), w, h);
}

double path_gain(double distance_m, const ChannelParams& params) {
  const double d = std::max(distance_m, params.reference_distance);
  return std::pow(d / params.reference_distance, -params.pathloss_exponent);
}

double sample_fading(Rng& rng, const ChannelParams& params) {
  return params.fading_enabled ? exponential01(rng) : 1.0;
}

double aggregate_interference(Position point, std::span<const Emitter> emitters, const ChannelParams& params) {
  double total = 0.0;
  for (const Emitter& e : emitters) {
    total += e.tx_power * path_gain(distance(point, e.position), params) * e.fading;
  }
  return total;
}

double link_sinr(Position rx, const Emitter& desired, std::span<const Emitter> interferers,
                 std::optional<double> own_tx_power_if_fd, const ChannelParams& params) {
  const double signal = desired.tx_power * path_gain(distance(rx, desired.position), params) * desired.fading;
  const double interference = aggregate_interference(rx, interferers, params);
  const double residual_si = own_tx_power_if_fd ? params.si_cancellation * *own_tx_power_if_fd : 0.0;
  return signal / (params.noise_power + interference + residual_si);
}

}  // namespace fdrl
