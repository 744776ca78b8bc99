#include "fdrl/trace.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "fdrl/errors.hpp"

namespace fdrl {

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Row {
  std::int64_t epoch;
  std::int64_t slot;
  std::int64_t stx;
  std::int64_t transmitted;
  std::int64_t success;
  double sinr_db;
  double rate;
  double access_prob;
  double opportunity;
  double threshold_dbm;
  double ase;
  std::int64_t primary_violation;
  double latency_ms;
};

void append(std::string& out, const Row& r) {
  out += std::to_string(r.epoch) + ',' + std::to_string(r.slot) + ',' + std::to_string(r.stx) + ',' +
         std::to_string(r.transmitted) + ',' + std::to_string(r.success) + ',' + format_number(r.sinr_db) + ',' +
         format_number(r.rate) + ',' + format_number(r.access_prob) + ',' + format_number(r.opportunity) + ',' +
         format_number(r.threshold_dbm) + ',' + format_number(r.ase) + ',' + std::to_string(r.primary_violation) +
         ',' + format_number(r.latency_ms) + '\n';
}

}  // namespace

std::string render_trace(const ExperimentReport& report, bool per_slot) {
  std::string out = kTraceHeader;
  out += '\n';
  for (const CycleRecord& cycle : report.cycles) {
    const EpochMetrics& m = cycle.metrics;
    const double entering_dbm = watts_to_dbm(m.threshold_snapshot);
    if (per_slot) {
      for (const SlotOutcome& slot : cycle.slots) {
        for (std::size_t i = 0; i < slot.directions.size(); ++i) {
          const DirectionOutcome& d = slot.directions[i];
          append(out, {m.epoch, slot.slot, d.stx, d.transmitted, d.success,
                       d.transmitted ? linear_to_db(d.sinr) : kNaN, d.rate, cycle.stx[i].access_prob,
                       cycle.stx[i].opportunity, entering_dbm, kNaN, slot.primary_violation, m.cycle_latency_ms});
        }
      }
      for (const StxRecord& s : cycle.stx) {
        append(out, {m.epoch, -1, s.stx, s.feedback.transmitted, s.feedback.success, kNaN, s.feedback.achieved_rate,
                     s.access_prob, s.opportunity, watts_to_dbm(s.threshold), kNaN, m.primary_violations,
                     m.cycle_latency_ms});
      }
    }
    append(out, {m.epoch, -1, -1, m.attempts, m.successes, kNaN, kNaN, m.mean_access_prob, m.mean_opportunity,
                 entering_dbm, m.ase, m.primary_violations, m.cycle_latency_ms});
  }
  return out;
}

void write_trace(const ExperimentReport& report, const std::string& path, bool per_slot) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open trace file " + path);
  const std::string text = render_trace(report, per_slot);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("failed writing trace file " + path);
}

SummaryStats summarize(const ExperimentReport& report, double tail_fraction) {
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) throw DomainError("tail fraction must be in (0, 1]");
  SummaryStats s;
  const auto n = static_cast<std::int64_t>(report.cycles.size());
  s.tail_epochs = n == 0 ? 0 : std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(tail_fraction * static_cast<double>(n) - 1e-9)));
  double tail = 0.0;
  for (std::int64_t k = 0; k < n; ++k) {
    const EpochMetrics& m = report.cycles[static_cast<std::size_t>(k)].metrics;
    s.attempts += m.attempts;
    s.successes += m.successes;
    s.primary_violations += m.primary_violations;
    if (k >= n - s.tail_epochs) tail += m.ase;
  }
  s.tail_mean_ase = s.tail_epochs ? tail / static_cast<double>(s.tail_epochs) : 0.0;
  s.final_threshold_w = report.final_threshold.tau;
  s.latency_ms = report.latency_ms;
  s.latency_optimized_ms = report.latency_optimized_ms;
  return s;
}

double ase_ratio(const ExperimentReport& learning, const ExperimentReport& baseline, double tail_fraction) {
  const SimConfig& a = learning.config;
  const SimConfig& b = baseline.config;
  if (a.seed != b.seed) throw ComparisonError("reports use different seeds");
  if (a.room_width_m != b.room_width_m || a.room_height_m != b.room_height_m ||
      a.n_secondary_pairs != b.n_secondary_pairs || a.n_sensors != b.n_sensors ||
      a.pair_link_distance_m != b.pair_link_distance_m) {
    throw ComparisonError("reports use different topologies");
  }
  const double num = summarize(learning, tail_fraction).tail_mean_ase;
  const double den = summarize(baseline, tail_fraction).tail_mean_ase;
  if (num == den) return 1.0;
  return num / den;
}

std::string emit_summary(const ExperimentReport& learning, const ExperimentReport* baseline, double tail_fraction) {
  auto describe = [tail_fraction](const char* label, const ExperimentReport& r) {
    const SummaryStats s = summarize(r, tail_fraction);
    std::string out;
    out += std::string(label) + " epochs: " + std::to_string(r.cycles.size()) + '\n';
    out += std::string(label) + " tail-mean ASE (last " + std::to_string(s.tail_epochs) +
           " epochs): " + format_number(s.tail_mean_ase) + " bit/s/Hz/m^2\n";
    out += std::string(label) + " attempts: " + std::to_string(s.attempts) + ", successes: " +
           std::to_string(s.successes) + ", primary violations: " + std::to_string(s.primary_violations) + '\n';
    out += std::string(label) + " final threshold: " + format_number(watts_to_dbm(s.final_threshold_w)) + " dBm\n";
    return out;
  };

  std::string out = describe("rl", learning);
  if (baseline) {
    const double ratio = ase_ratio(learning, *baseline, tail_fraction);
    out += describe("baseline", *baseline);
    out += "ase ratio rl/baseline: " + format_number(ratio) + '\n';
  }
  out += "cycle latency: " + format_number(learning.latency_ms) + " ms (optimized: " +
         format_number(learning.latency_optimized_ms) + " ms)\n";
  return out;
}

}  // namespace fdrl
