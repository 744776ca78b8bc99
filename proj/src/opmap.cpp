#include "fdrl/opmap.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "fdrl/errors.hpp"

namespace fdrl {

NodeId nearest_sensor(Position stx, const Topology& topology) {
  const auto& sensors = topology.sensors();
  if (sensors.empty()) throw ConfigError("nearest_sensor: topology has no sensors");
  NodeId best = sensors.front();
  double best_d = std::numeric_limits<double>::infinity();
  for (NodeId id : sensors) {
    const double d = distance(stx, topology.node(id).position);
    if (d < best_d || (d == best_d && id < best)) {
      best = id;
      best_d = d;
    }
  }
  return best;
}

Opportunity Opportunity::from_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("opportunity probability must be in [0, 1]");
  return Opportunity(-std::log1p(-p));
}

Opportunity opportunity(double interference, AccessThreshold tau) {
  if (!(interference >= 0.0)) throw DomainError("opportunity: interference must be >= 0");
  if (!(tau.tau >= 0.0)) throw DomainError("opportunity: threshold must be >= 0");
  if (interference == 0.0) return Opportunity::from_exponent(std::numeric_limits<double>::infinity());
  return Opportunity::from_exponent(tau.tau / interference);
}

AccessThreshold threshold_from_opportunity(Opportunity p, double interference) {
  if (!(interference >= 0.0)) throw DomainError("threshold_from_opportunity: interference must be >= 0");
  if (!(p.exponent() >= 0.0)) throw DomainError("threshold_from_opportunity: p must be >= 0");
  if (!std::isfinite(p.exponent())) {
    throw DomainError("threshold_from_opportunity: p >= 1 implies an infinite threshold");
  }
  return {interference * p.exponent()};
}

AccessThreshold threshold_from_opportunity(double p, double interference) {
  if (!(p >= 0.0)) throw DomainError("threshold_from_opportunity: p must be >= 0");
  if (!(p < 1.0)) throw DomainError("threshold_from_opportunity: p >= 1 implies an infinite threshold");
  return threshold_from_opportunity(Opportunity::from_probability(p), interference);
}

namespace {

const SensorReading& reading_for(std::span<const SensorReading> readings, NodeId sensor) {
  for (const auto& r : readings) {
    if (r.sensor == sensor) return r;
  }
  throw DataError("build_op_map: missing reading for sensor " + std::to_string(sensor));
}

}  // namespace

OpportunityMap build_op_map(std::span<const SensorReading> readings, std::span<const AccessThreshold> taus,
                            const Topology& topology, std::int64_t epoch) {
  const auto& dirs = topology.directions();
  if (taus.size() != dirs.size()) {
    throw DataError("build_op_map: expected one threshold per secondary transmitter");
  }
  OpportunityMap map{epoch, {}};
  map.entries.reserve(dirs.size());
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    const NodeId stx = dirs[i].stx;
    const NodeId sensor = nearest_sensor(topology.node(stx).position, topology);
    const double interference = reading_for(readings, sensor).interference;
    map.entries.push_back({stx, opportunity(interference, taus[i]), sensor, interference});
  }
  return map;
}

OpportunityMap build_op_map(std::span<const SensorReading> readings, AccessThreshold tau,
                            const Topology& topology, std::int64_t epoch) {
  const std::vector<AccessThreshold> taus(topology.directions().size(), tau);
  return build_op_map(readings, taus, topology, epoch);
}

}  // namespace fdrl
