#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "fdrl/radio_env.hpp"

namespace fdrl {

struct SensorReading {
  NodeId sensor = 0;
  std::int64_t epoch = 0;
  double interference = 0.0;  // W
};

/// Interference-domain access boundary (watts). Larger is more permissive.
struct AccessThreshold {
  double tau = 0.0;

  bool operator==(const AccessThreshold&) const = default;
};

struct OpportunityEntry {
  NodeId stx = 0;
  double opportunity = 0.0;
  NodeId source_sensor = 0;
  double interference = 0.0;  // W, reading of source_sensor
};

/// Opportunity value in [0, 1]. Stored as the exponent -ln(1 - p), which for
/// the interference model equals tau / I, so that probabilities rounding to 1
/// in double precision still invert to the exact threshold.
class Opportunity {
 public:
  constexpr Opportunity() = default;

  static Opportunity from_probability(double p);
  static constexpr Opportunity from_exponent(double exponent) { return Opportunity(exponent); }

  double probability() const { return -std::expm1(-exponent_); }
  constexpr double exponent() const { return exponent_; }

  operator double() const { return probability(); }

 private:
  constexpr explicit Opportunity(double exponent) : exponent_(exponent) {}
  double exponent_ = 0.0;
};

/// One entry per secondary transmitter, in `Topology::directions()` order.
struct OpportunityMap {
  std::int64_t epoch = 0;
  std::vector<OpportunityEntry> entries;
};

/// Closest sensor by Euclidean distance; ties go to the lowest id.
NodeId nearest_sensor(Position stx, const Topology& topology);

/// 1 - exp(-tau / I): the probability that unit-mean exponentially faded
/// interference I*h stays below tau. Corner cases follow the limits.
Opportunity opportunity(double interference, AccessThreshold tau);

/// Inverse of `opportunity` in tau. Requires 0 <= p < 1.
AccessThreshold threshold_from_opportunity(double p, double interference);
AccessThreshold threshold_from_opportunity(Opportunity p, double interference);

OpportunityMap build_op_map(std::span<const SensorReading> readings, AccessThreshold tau,
                            const Topology& topology, std::int64_t epoch);

/// Same as above with one threshold per secondary direction.
OpportunityMap build_op_map(std::span<const SensorReading> readings, std::span<const AccessThreshold> taus,
                            const Topology& topology, std::int64_t epoch);

}  // namespace fdrl
