// Serial reference vs OpenMP kernels: interference field and replication sweep.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <vector>

#include "fdrl/config.hpp"
#include "fdrl/parallel.hpp"

namespace {

using h_clock = std::chrono::steady_clock;

template <typename F>
double time_ms(F&& f) {
  const auto t0 = h_clock::now();
  f();
  return std::chrono::duration<double, std::milli>(h_clock::now() - t0).count();
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());

  fdrl::SimConfig config = fdrl::parse_config("");
  const fdrl::ChannelParams params = config.channel();
  fdrl::Rng rng = fdrl::make_stream({7});

  std::vector<fdrl::Emitter> emitters(64);
  for (auto& e : emitters) {
    e.position = {fdrl::uniform01(rng) * config.room_width_m, fdrl::uniform01(rng) * config.room_height_m};
    e.tx_power = params.tx_power;
    e.fading = fdrl::exponential01(rng);
  }
  std::vector<fdrl::Position> grid;
  for (int i = 0; i < 400; ++i) {
    for (int j = 0; j < 400; ++j) {
      grid.push_back({config.room_width_m * i / 399.0, config.room_height_m * j / 399.0});
    }
  }

  std::vector<double> a, b;
  const double serial_field = time_ms([&] { a = fdrl::interference_field_serial(grid, emitters, params); });
  const double parallel_field = time_ms([&] { b = fdrl::interference_field(grid, emitters, params); });
  std::printf("interference field %zu points x %zu emitters: serial %.2f ms, openmp %.2f ms, match %s\n",
              grid.size(), emitters.size(), serial_field, parallel_field, a == b ? "yes" : "NO");

  config.warmup_epochs = 20;
  config.epochs = 100;
  config.finalize();
  fdrl::SweepOptions options;
  options.replications = 8;
  std::vector<fdrl::ReplicationSummary> rs, rp;
  const double serial_sweep = time_ms([&] { rs = fdrl::run_sweep_serial(config, options); });
  const double parallel_sweep = time_ms([&] { rp = fdrl::run_sweep(config, options); });
  std::printf("sweep %lld replications: serial %.2f ms, openmp %.2f ms, match %s\n",
              static_cast<long long>(options.replications), serial_sweep, parallel_sweep, rs == rp ? "yes" : "NO");
  return a == b && rs == rp ? 0 : 1;
}
