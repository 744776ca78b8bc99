#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fdrl/config.hpp"
#include "fdrl/random.hpp"

namespace fdrl {

struct Position {
  double x = 0.0;  // meters
  double y = 0.0;  // meters

  bool operator==(const Position&) const = default;
};

inline double distance(Position a, Position b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

enum class NodeRole { PrimaryTx, PrimaryRx, SecondaryA, SecondaryB, Sensor };

using NodeId = std::int32_t;
using PairId = std::int32_t;

struct Node {
  NodeId id = 0;
  NodeRole role = NodeRole::Sensor;
  Position position;
  std::optional<PairId> pair;

  bool operator==(const Node&) const = default;
};

/// One transmit direction of a secondary pair. `stx` is the learning agent.
struct Direction {
  NodeId stx = 0;
  NodeId srx = 0;
  PairId pair = 0;
};

/// Node layout of one room. Node ids equal their index in `nodes`:
/// primary tx 0, primary rx 1, then each pair's A and B, then sensors.
class Topology {
 public:
  Topology(std::vector<Node> nodes, double room_width, double room_height);

  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(NodeId id) const { return nodes_.at(static_cast<std::size_t>(id)); }
  double room_width() const { return width_; }
  double room_height() const { return height_; }
  double room_area() const { return width_ * height_; }

  NodeId primary_tx() const { return 0; }
  NodeId primary_rx() const { return 1; }
  std::size_t pair_count() const { return directions_.size() / 2; }
  /// Pair k occupies entries 2k (A->B) and 2k+1 (B->A).
  const std::vector<Direction>& directions() const { return directions_; }
  const std::vector<NodeId>& sensors() const { return sensors_; }
  /// Primary transmitter followed by every secondary node.
  const std::vector<NodeId>& transmitters() const { return transmitters_; }
  /// Primary receiver followed by every secondary node.
  const std::vector<NodeId>& receivers() const { return receivers_; }

  bool operator==(const Topology& other) const { return nodes_ == other.nodes_ && width_ == other.width_ && height_ == other.height_; }

 private:
  std::vector<Node> nodes_;
  double width_;
  double height_;
  std::vector<Direction> directions_;
  std::vector<NodeId> sensors_;
  std::vector<NodeId> transmitters_;
  std::vector<NodeId> receivers_;
};

struct ChannelParams {
  double pathloss_exponent = 3.5;
  double reference_distance = 0.1;  // m
  double tx_power = 1e-3;           // W
  double noise_power = 1e-12;       // W
  double si_cancellation = 1e-7;    // fraction of own tx power leaking into own rx
  bool fading_enabled = true;
  double sinr_threshold = 1.0;      // linear

  /// Throws ConfigError when an invariant is violated.
  void validate() const;
};

/// Primary pair and sensors are laid out from `config`; secondary A nodes are
/// uniform in the room, B nodes at the configured link distance in a uniform
/// direction (clipped to the room). Sensors sit at the centres of a
/// near-square grid.
Topology place_nodes(const SimConfig& config, Rng& rng);

/// Log-distance gain with the distance clamped below at the reference distance.
double path_gain(double distance_m, const ChannelParams& params);

/// Unit-mean exponential power gain, or exactly 1 when fading is disabled.
double sample_fading(Rng& rng, const ChannelParams& params);

struct Emitter {
  Position position;
  double tx_power = 0.0;  // W
  double fading = 1.0;    // linear power gain
};

/// Sum of received powers at `point` (watts).
double aggregate_interference(Position point, std::span<const Emitter> emitters, const ChannelParams& params);

/// SINR at `rx`. `own_tx_power_if_fd` is the receiver's own transmit power when
/// it operates full duplex; its residual after cancellation adds to the
/// denominator.
double link_sinr(Position rx, const Emitter& desired, std::span<const Emitter> interferers,
                 std::optional<double> own_tx_power_if_fd, const ChannelParams& params);

}  // namespace fdrl
