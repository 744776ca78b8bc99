#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "fdrl/config.hpp"
#include "fdrl/errors.hpp"
#include "fdrl/trace.hpp"

using namespace fdrl;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char ch : s) n += ch == '\n';
  return n;
}

SimConfig tiny(std::int64_t epochs) {
  SimConfig c = parse_config("n_secondary_pairs = 2\nn_sensors = 4\nwarmup_epochs = 1\nslots_per_epoch = 10\n");
  c.epochs = epochs;
  c.finalize();
  return c;
}

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("empty text gives the defaults") {
    SimConfig d;
    d.finalize();
    CHECK(parse_config("") == d);
    CHECK(parse_config("# only a comment\n\n   \n") == d);
    CHECK(d.room_area() == doctest::Approx(67.94));
    CHECK(d.tx_power_w == doctest::Approx(1e-3).epsilon(1e-15));
    CHECK(d.noise_w == doctest::Approx(1e-12).epsilon(1e-15));
    CHECK(d.si_cancellation == doctest::Approx(1e-7).epsilon(1e-15));
    CHECK(d.sinr_threshold == 1.0);
  }

  TEST_CASE("values, whitespace and trailing comments") {
    const SimConfig c = parse_config("room_width_m = 7.9\n  seed=42   # pick a seed\nfading = off\nreward_mode = local\n");
    CHECK(c.room_width_m == 7.9);
    CHECK(c.seed == 42);
    CHECK_FALSE(c.fading);
    CHECK(c.reward_mode == RewardKind::LocalRate);
  }

  TEST_CASE("errors name the key") {
    const std::string neg = error_of("n_sensors = -1\n");
    CHECK(neg.find("n_sensors") != std::string::npos);

    const std::string unknown = error_of("epochs = 3\nbogus_key = 1\n");
    CHECK(unknown.find("bogus_key") != std::string::npos);
    CHECK(unknown.find("line 2") != std::string::npos);

    const std::string garbled = error_of("learning_rate = fast\n");
    CHECK(garbled.find("learning_rate") != std::string::npos);

    CHECK(error_of("fading = maybe\n").find("fading") != std::string::npos);
    CHECK(error_of("no equals sign\n") != "");
    CHECK(error_of("slots_per_epoch = 0\n").find("slots_per_epoch") != std::string::npos);
    CHECK(error_of("primary_activity_prob = 1.5\n").find("primary_activity_prob") != std::string::npos);
  }

  TEST_CASE("finalize lists every invalid key") {
    SimConfig c;
    c.room_width_m = -1.0;
    c.epochs = -2;
    try {
      c.finalize();
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      const std::string msg = e.what();
      CHECK(msg.find("room_width_m") != std::string::npos);
      CHECK(msg.find("epochs") != std::string::npos);
    }
  }

  TEST_CASE("missing file is reported") {
    CHECK_THROWS_AS(load_config("/nonexistent/dir/none.cfg"), ConfigError);
  }

  TEST_CASE("render then parse round trips") {
    Rng rng = make_stream({77});
    for (int k = 0; k < 200; ++k) {
      SimConfig c;
      c.room_width_m = 1.0 + 20.0 * uniform01(rng);
      c.room_height_m = 1.0 + 20.0 * uniform01(rng);
      c.n_secondary_pairs = static_cast<std::int64_t>(uniform01(rng) * 10);
      c.n_sensors = 1 + static_cast<std::int64_t>(uniform01(rng) * 16);
      c.pathloss_exponent = 2.0 + 2.0 * uniform01(rng);
      c.noise_dbm = -120.0 + 40.0 * uniform01(rng);
      c.learning_rate = 1000.0 * uniform01(rng);
      c.primary_activity_prob = uniform01(rng);
      c.fading = uniform01(rng) < 0.5;
      c.reward_mode = uniform01(rng) < 0.5 ? RewardKind::LocalRate : RewardKind::GlobalAse;
      c.initial_threshold_dbm = -100.0 + 60.0 * uniform01(rng);
      c.seed = rng();
      c.finalize();
      CHECK(parse_config(render_config(c)) == c);
    }
  }

  TEST_CASE("unit conversions") {
    CHECK(dbm_to_watts(0.0) == doctest::Approx(1e-3).epsilon(1e-15));
    CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(watts_to_dbm(1e-3) == doctest::Approx(0.0));
    CHECK(db_to_linear(10.0) == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(linear_to_db(100.0) == doctest::Approx(20.0).epsilon(1e-15));
    CHECK(watts_to_dbm(0.0) == -INFINITY);
  }
}

TEST_SUITE("trace") {
  TEST_CASE("header is fixed") {
    CHECK(std::string(kTraceHeader) ==
          "epoch,slot,stx_id,transmitted,success,sinr_db,rate_bps_hz,access_prob,opportunity,threshold_dbm,ase,"
          "primary_violation,cycle_latency_ms");
  }

  TEST_CASE("empty report is header only") {
    ExperimentReport r;
    CHECK(render_trace(r) == std::string(kTraceHeader) + "\n");
  }

  TEST_CASE("one system row per epoch") {
    const ExperimentReport r = run_learning(tiny(2));
    const std::string text = render_trace(r);
    CHECK(count_lines(text) == 3);
    CHECK(text == render_trace(run_learning(tiny(2))));
  }

  TEST_CASE("per-slot rows") {
    const ExperimentReport r = run_learning(tiny(2), true);
    const std::string text = render_trace(r, true);
    // Per cycle: slots x directions, one per transmitter, one system row.
    CHECK(count_lines(text) == 1 + 2 * (10 * 4 + 4 + 1));
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
      std::size_t commas = 0;
      for (char ch : line) commas += ch == ',';
      CHECK(commas == 12);
    }
  }

  TEST_CASE("write_trace") {
    const ExperimentReport r = run_learning(tiny(2));
    const std::string path = "fdrl_trace_test.csv";
    write_trace(r, path);
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == render_trace(r));
    std::remove(path.c_str());

    try {
      write_trace(r, "/nonexistent/dir/out.csv");
      FAIL("expected an error");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()).find("/nonexistent/dir/out.csv") != std::string::npos);
    }
  }

  TEST_CASE("summary") {
    const ExperimentReport r = run_learning(tiny(10));
    const std::string alone = emit_summary(r);
    CHECK(alone.find("ase ratio") == std::string::npos);
    CHECK(alone.find("143") != std::string::npos);
    CHECK(emit_summary(r, &r).find("ase ratio rl/baseline: 1\n") != std::string::npos);

    const SummaryStats s = summarize(r, 0.2);
    CHECK(s.tail_epochs == 2);
    CHECK(s.tail_mean_ase == doctest::Approx(0.5 * (r.cycles[8].metrics.ase + r.cycles[9].metrics.ase)));
    CHECK(summarize(r, 0.01).tail_epochs == 1);
    CHECK(summarize(r, 1.0).tail_epochs == 10);
    CHECK_THROWS_AS(summarize(r, 0.0), DomainError);
  }

  TEST_CASE("ase_ratio refuses mismatched reports") {
    const ExperimentReport a = run_learning(tiny(3));
    SimConfig other = tiny(3);
    other.seed = 2;
    const ExperimentReport b = run_learning(other);
    CHECK(ase_ratio(a, a) == 1.0);
    CHECK_THROWS_AS(ase_ratio(a, b), ComparisonError);

    SimConfig moved = tiny(3);
    moved.n_sensors = 9;
    moved.finalize();
    CHECK_THROWS_AS(ase_ratio(a, run_learning(moved)), ComparisonError);
  }
}
