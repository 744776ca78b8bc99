#include <cmath>
#include <vector>

#include "doctest.h"
#include "fdrl/errors.hpp"
#include "fdrl/opmap.hpp"

using namespace fdrl;

namespace {

Node sensor(NodeId id, Position p) { return {id, NodeRole::Sensor, p, std::nullopt}; }

std::vector<Node> primary() {
  return {{0, NodeRole::PrimaryTx, {0.1, 0.1}, std::nullopt}, {1, NodeRole::PrimaryRx, {0.2, 0.1}, std::nullopt}};
}

double log_uniform(Rng& rng, double lo, double hi) {
  return std::exp(std::log(lo) + uniform01(rng) * (std::log(hi) - std::log(lo)));
}

}  // namespace

TEST_SUITE("opmap") {
  TEST_CASE("nearest_sensor with a single sensor") {
    auto nodes = primary();
    nodes.push_back({2, NodeRole::SecondaryA, {5, 5}, 0});
    nodes.push_back({3, NodeRole::SecondaryB, {6, 5}, 0});
    nodes.push_back(sensor(4, {1, 1}));
    const Topology t(nodes, 8, 8);
    CHECK(nearest_sensor({5, 5}, t) == 4);
  }

  TEST_CASE("nearest_sensor breaks ties by lowest id") {
    auto nodes = primary();
    for (NodeId id = 2; id <= 7; ++id) nodes.push_back(sensor(id, id == 3 ? Position{2, 4} : id == 7 ? Position{6, 4} : Position{4, 8}));
    const Topology t(nodes, 8, 8);
    CHECK(nearest_sensor({4, 4}, t) == 3);
  }

  TEST_CASE("nearest_sensor on a 2x2 grid matches brute force") {
    auto nodes = primary();
    const std::vector<Position> grid = {{2, 2}, {6, 2}, {2, 6}, {6, 6}};
    for (std::size_t i = 0; i < grid.size(); ++i) nodes.push_back(sensor(static_cast<NodeId>(2 + i), grid[i]));
    const Topology t(nodes, 8, 8);
    CHECK(nearest_sensor({0.3, 0.2}, t) == 2);
    CHECK(nearest_sensor({7.9, 7.5}, t) == 5);

    Rng rng = make_stream({12});
    for (int k = 0; k < 500; ++k) {
      const Position p{uniform01(rng) * 8, uniform01(rng) * 8};
      NodeId best = 2;
      for (std::size_t i = 1; i < grid.size(); ++i) {
        if (distance(p, grid[i]) < distance(p, grid[static_cast<std::size_t>(best - 2)])) best = static_cast<NodeId>(2 + i);
      }
      CHECK(nearest_sensor(p, t) == best);
    }
  }

  TEST_CASE("nearest_sensor without sensors is a configuration error") {
    const Topology t(primary(), 8, 8);
    CHECK_THROWS_AS(nearest_sensor({1, 1}, t), ConfigError);
  }

  TEST_CASE("opportunity examples and corners") {
    CHECK(opportunity(0.0, {1e-9}) == 1.0);
    CHECK(opportunity(1e-6, {0.0}) == 0.0);
    CHECK(opportunity(0.0, {0.0}) == 1.0);
    CHECK(opportunity(3e-7, {3e-7}) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-15));
    CHECK(opportunity(3e-7, {3e-7}) == doctest::Approx(0.63212).epsilon(1e-5));
    CHECK_THROWS_AS(opportunity(-1.0, {1.0}), DomainError);
    CHECK_THROWS_AS(opportunity(1.0, {-1.0}), DomainError);
  }

  TEST_CASE("threshold_from_opportunity examples and errors") {
    CHECK(threshold_from_opportunity(0.0, 1e-6).tau == 0.0);
    CHECK(threshold_from_opportunity(1.0 - std::exp(-1.0), 2e-6).tau == doctest::Approx(2e-6).epsilon(1e-12));
    CHECK_THROWS_AS(threshold_from_opportunity(1.0, 1e-6), DomainError);
    CHECK_THROWS_AS(threshold_from_opportunity(-0.1, 1e-6), DomainError);
    CHECK_THROWS_AS(threshold_from_opportunity(opportunity(0.0, {1.0}), 0.0), DomainError);
  }

  TEST_CASE("opportunity stays in [0, 1] and is monotone in both arguments") {
    Rng rng = make_stream({21});
    for (int k = 0; k < 20000; ++k) {
      const double i = log_uniform(rng, 1e-12, 1e-3);
      const double tau = log_uniform(rng, 1e-12, 1e-3);
      const double p = opportunity(i, {tau});
      CHECK(p >= 0.0);
      CHECK(p <= 1.0);
      // Strictness only where the probability is not saturated in double precision.
      if (tau / i < 30.0 && tau / i > 1e-12) {
        CHECK(opportunity(i, {tau * 1.01}).probability() > p);
        CHECK(opportunity(i * 1.01, {tau}).probability() < p);
      }
      // The exponent carries strict monotonicity everywhere.
      CHECK(opportunity(i, {tau * 1.01}).exponent() > opportunity(i, {tau}).exponent());
      CHECK(opportunity(i * 1.01, {tau}).exponent() < opportunity(i, {tau}).exponent());
    }
  }

  TEST_CASE("probability round trip through the threshold") {
    Rng rng = make_stream({22});
    for (int k = 0; k < 20000; ++k) {
      const double i = log_uniform(rng, 1e-12, 1e-3);
      const double p = uniform01(rng) * (1.0 - 1e-9);
      CHECK(std::abs(opportunity(i, threshold_from_opportunity(p, i)).probability() - p) <= 1e-9);
    }
  }

  TEST_CASE("threshold round trip through the opportunity") {
    Rng rng = make_stream({23});
    for (int k = 0; k < 20000; ++k) {
      const double i = log_uniform(rng, 1e-12, 1e-3);
      const double tau = log_uniform(rng, 1e-12, 1e-3);
      const double back = threshold_from_opportunity(opportunity(i, {tau}), i).tau;
      CHECK(std::abs(back - tau) <= 1e-9 * tau);
    }
  }

  TEST_CASE("build_op_map") {
    auto nodes = primary();
    nodes.push_back({2, NodeRole::SecondaryA, {1, 1}, 0});
    nodes.push_back({3, NodeRole::SecondaryB, {7, 1}, 0});
    nodes.push_back({4, NodeRole::SecondaryA, {7, 7}, 1});
    nodes.push_back({5, NodeRole::SecondaryB, {6, 7}, 1});
    nodes.push_back(sensor(6, {2, 2}));
    nodes.push_back(sensor(7, {6, 6}));
    const Topology t(nodes, 8, 8);
    const std::vector<SensorReading> readings{{6, 0, 4e-7}, {7, 0, 1e-6}};
    const AccessThreshold tau{5e-7};

    SUBCASE("one entry per transmitter, each an independent recomposition") {
      const OpportunityMap map = build_op_map(readings, tau, t, 3);
      CHECK(map.epoch == 3);
      REQUIRE(map.entries.size() == 4);
      for (std::size_t k = 0; k < 4; ++k) {
        const Direction& d = t.directions()[k];
        const NodeId s = nearest_sensor(t.node(d.stx).position, t);
        const double i = s == 6 ? 4e-7 : 1e-6;
        CHECK(map.entries[k].stx == d.stx);
        CHECK(map.entries[k].source_sensor == s);
        CHECK(map.entries[k].interference == i);
        CHECK(map.entries[k].opportunity == opportunity(i, tau).probability());
      }
    }

    SUBCASE("missing reading names the sensor") {
      const std::vector<SensorReading> partial{{6, 0, 4e-7}};
      try {
        build_op_map(partial, tau, t, 0);
        FAIL("expected DataError");
      } catch (const DataError& e) {
        CHECK(std::string(e.what()).find("sensor 7") != std::string::npos);
      }
    }

    SUBCASE("no secondary transmitters gives an empty map") {
      auto bare = primary();
      bare.push_back(sensor(2, {1, 1}));
      const Topology empty(bare, 8, 8);
      const std::vector<SensorReading> one{{2, 0, 1e-7}};
      CHECK(build_op_map(one, tau, empty, 0).entries.empty());
    }
  }
}
