#include "opacity/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "opacity/csv.hpp"

namespace opacity {

namespace {
constexpr double kUnitEps = 1e-9;

bool is_one(double v) { return std::fabs(v - 1.0) < kUnitEps; }
}  // namespace

const char* to_string(MeasureStatus s) {
  switch (s) {
    case MeasureStatus::precise: return "precise";
    case MeasureStatus::imprecise: return "imprecise";
    case MeasureStatus::innovator_by_assumption: return "innovator-by-assumption";
    case MeasureStatus::never_activated: return "never-activated";
  }
  return "?";
}

double eaa(const CascadeTrace& trace, NodeId node) {
  if (node >= trace.node_count) throw LookupError("unknown node id " + std::to_string(node));
  for (const TraceEvent& e : trace.events) {
    if (e.node == node && e.activated_now) return e.exposure;
  }
  throw DataError("node " + std::to_string(node) + " never activated");
}

ThresholdInterval build_interval(const CascadeTrace& trace, NodeId node,
                                 const MeasureOptions& opts) {
  if (node >= trace.node_count) throw LookupError("unknown node id " + std::to_string(node));
  ThresholdInterval out;
  out.node = node;

  bool have_prior = false;
  double prior_exposure = 0.0;
  double prior_weight = 0.0;
  double max_observed = 0.0;
  bool observed_any = false;

  for (const TraceEvent& e : trace.events) {
    if (e.node != node) continue;
    if (e.activated_now) {
      out.upper = e.exposure;
      if (e.exposure == 0.0) {
        out.lower = 0.0;
        out.t_star = 0.0;
        out.status = opts.innovators_precise ? MeasureStatus::innovator_by_assumption
                                             : MeasureStatus::imprecise;
      } else if (!have_prior) {
        out.lower.reset();
        out.t_star = 0.0;
        out.status = MeasureStatus::imprecise;
      } else {
        out.lower = prior_exposure;
        out.t_star = e.active_weight - prior_weight;
        out.status = is_one(out.t_star) ? MeasureStatus::precise : MeasureStatus::imprecise;
      }
      return out;
    }
    have_prior = true;
    prior_exposure = e.exposure;
    prior_weight = e.active_weight;
    max_observed = std::max(max_observed, e.exposure);
    observed_any = true;
  }

  // never activated
  out.lower = observed_any ? max_observed : 0.0;
  out.upper.reset();
  out.t_star = 0.0;
  out.status = MeasureStatus::never_activated;
  return out;
}

std::vector<ThresholdInterval> build_intervals(const CascadeTrace& trace,
                                               const MeasureOptions& opts) {
  // Single pass: remember each node's latest non-activating update and emit
  // the interval at its activation event.
  std::vector<ThresholdInterval> out(trace.node_count);
  std::vector<std::uint8_t> have_prior(trace.node_count, 0);
  std::vector<double> prior_exposure(trace.node_count, 0.0);
  std::vector<double> prior_weight(trace.node_count, 0.0);
  std::vector<std::uint8_t> done(trace.node_count, 0);
  std::vector<double> max_observed(trace.node_count, 0.0);
  std::vector<std::uint8_t> observed(trace.node_count, 0);

  for (NodeId i = 0; i < trace.node_count; ++i) out[i].node = i;

  for (const TraceEvent& e : trace.events) {
    if (done[e.node]) continue;
    ThresholdInterval& t = out[e.node];
    if (e.activated_now) {
      t.upper = e.exposure;
      if (e.exposure == 0.0) {
        t.lower = 0.0;
        t.t_star = 0.0;
        t.status = opts.innovators_precise ? MeasureStatus::innovator_by_assumption
                                           : MeasureStatus::imprecise;
      } else if (!have_prior[e.node]) {
        t.lower.reset();
        t.t_star = 0.0;
        t.status = MeasureStatus::imprecise;
      } else {
        t.lower = prior_exposure[e.node];
        t.t_star = e.active_weight - prior_weight[e.node];
        t.status = is_one(t.t_star) ? MeasureStatus::precise : MeasureStatus::imprecise;
      }
      done[e.node] = 1;
    } else {
      have_prior[e.node] = 1;
      prior_exposure[e.node] = e.exposure;
      prior_weight[e.node] = e.active_weight;
      max_observed[e.node] = std::max(max_observed[e.node], e.exposure);
      observed[e.node] = 1;
    }
  }

  for (NodeId i = 0; i < trace.node_count; ++i) {
    if (done[i]) continue;
    out[i].lower = observed[i] ? max_observed[i] : 0.0;
    out[i].upper.reset();
    out[i].t_star = 0.0;
    out[i].status = MeasureStatus::never_activated;
  }
  return out;
}

MeasureStatus classify(const ThresholdInterval& interval, const MeasureOptions& opts) {
  if (!interval.upper) return MeasureStatus::never_activated;
  if (*interval.upper == 0.0) {
    return opts.innovators_precise ? MeasureStatus::innovator_by_assumption
                                   : MeasureStatus::imprecise;
  }
  if (!interval.lower) return MeasureStatus::imprecise;
  const double width = interval.t_star > 0.0 ? interval.t_star : interval.width();
  return is_one(width) ? MeasureStatus::precise : MeasureStatus::imprecise;
}

MeasurementSummary measurement_summary(std::span<const CascadeTrace> traces,
                                       const MeasureOptions& opts) {
  if (traces.empty()) throw ParamError("measurement_summary needs at least one trace");
  MeasurementSummary s;
  std::map<long long, ExposureLevelCounts> levels;
  for (const CascadeTrace& trace : traces) {
    for (const ThresholdInterval& t : build_intervals(trace, opts)) {
      if (!t.upper) continue;
      if (*t.upper == 0.0) {
        ++s.innovators;
        continue;
      }
      const long long level = std::llround(*t.upper);
      auto& bucket = levels[level];
      bucket.level = level;
      if (t.status == MeasureStatus::precise) {
        ++bucket.precise;
        ++s.precise_total;
      } else {
        ++bucket.imprecise;
        ++s.imprecise_total;
      }
    }
  }
  for (auto& [level, counts] : levels) s.by_level.push_back(counts);
  return s;
}

void write_intervals_csv(std::span<const ThresholdInterval> intervals, const std::string& path) {
  auto out = open_output(path);
  out << "node,lower,upper,status\n";
  for (const ThresholdInterval& t : intervals) {
    out << t.node << ",";
    if (t.lower) out << fmt_double(*t.lower);
    out << ",";
    if (t.upper) out << fmt_double(*t.upper);
    out << "," << to_string(t.status) << "\n";
  }
}

}  // namespace opacity
