#include <vector>

#include "doctest.h"
#include "fdrl/parallel.hpp"

using namespace fdrl;

TEST_SUITE("parallel") {
  TEST_CASE("interference field matches the serial reference") {
    Rng rng = make_stream({123});
    std::vector<Position> points(5000);
    for (auto& p : points) p = {uniform01(rng) * 8, uniform01(rng) * 8};
    std::vector<Emitter> emitters(17);
    for (auto& e : emitters) e = {{uniform01(rng) * 8, uniform01(rng) * 8}, 1e-3, exponential01(rng)};
    SimConfig c;
    c.finalize();
    const ChannelParams p = c.channel();
    CHECK(interference_field(points, emitters, p) == interference_field_serial(points, emitters, p));
    CHECK(interference_field({}, emitters, p).empty());
    CHECK(interference_field(points, {}, p) == std::vector<double>(points.size(), 0.0));
  }

  TEST_CASE("sweep matches the serial reference") {
    SimConfig c = parse_config("n_secondary_pairs = 2\nn_sensors = 4\nwarmup_epochs = 2\nepochs = 8\nslots_per_epoch = 10\n");
    c.seed = 40;
    SweepOptions o;
    o.replications = 4;
    const auto par = run_sweep(c, o);
    const auto ser = run_sweep_serial(c, o);
    CHECK(par == ser);
    REQUIRE(par.size() == 4);
    for (std::size_t r = 0; r < par.size(); ++r) {
      CHECK(par[r].seed == 40 + r);
      CHECK(par[r].ratio.has_value());
    }

    o.with_baseline = false;
    o.replications = 2;
    const auto solo = run_sweep(c, o);
    CHECK(solo == run_sweep_serial(c, o));
    CHECK_FALSE(solo[0].baseline.has_value());

    o.replications = 0;
    CHECK(run_sweep(c, o).empty());
  }
}
