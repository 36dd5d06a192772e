#include "opacity/cascade.hpp"

#include <algorithm>
#include <limits>

#include "opacity/csv.hpp"

namespace opacity {

void ThresholdAssignment::validate(const Graph& g) const {
  if (values.size() != g.node_count()) {
    throw ParamError("threshold vector size does not match node count");
  }
  for (double v : values) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ParamError("thresholds must be finite and >= 0");
    if (mode == ThresholdMode::fractional && v > 1.0) {
      throw ParamError("fractional thresholds must lie in [0,1]");
    }
  }
  for (NodeId s : seed_nodes) {
    if (s >= g.node_count()) throw ParamError("seed node out of range");
  }
}

bool CascadeTrace::is_active(NodeId i) const {
  return std::binary_search(final_active.begin(), final_active.end(), i);
}

namespace {

// Mutable cascade state shared by the simulators. Exposure is maintained
// incrementally: activating a node bumps the active weight of each neighbor.
struct State {
  const Graph& g;
  std::vector<std::uint8_t> active;
  std::vector<double> active_weight;
  std::vector<double> incident;  // total incident weight, fractional denominator
  NodeId n_active = 0;
  std::uint32_t step = 0;
  CascadeTrace trace;

  State(const Graph& graph, ThresholdMode units)
      : g(graph),
        active(graph.node_count(), 0),
        active_weight(graph.node_count(), 0.0),
        incident(graph.node_count(), 0.0) {
    trace.node_count = graph.node_count();
    trace.units = units;
    for (NodeId i = 0; i < graph.node_count(); ++i) incident[i] = graph.incident_weight(i);
  }

  double exposure(NodeId i, ThresholdMode mode) const {
    if (mode == ThresholdMode::integer) return active_weight[i];
    return incident[i] > 0.0 ? active_weight[i] / incident[i] : 0.0;
  }

  void activate(NodeId i) {
    active[i] = 1;
    ++n_active;
    for (const Edge& e : g.neighbors(i)) active_weight[e.to] += e.weight;
  }

  void record(NodeId i, double exp_value, bool was_active, bool now) {
    trace.events.push_back(TraceEvent{step, i, exp_value, active_weight[i], was_active, now});
  }

  void finish() {
    for (NodeId i = 0; i < active.size(); ++i) {
      if (active[i]) trace.final_active.push_back(i);
    }
  }
};

// Forced activations at step 0. Fractional seeds are recorded with exposure
// 0 by convention; SI innovators record their true exposure so an exported
// event log reconstructs the same intervals. Event order within step 0
// still totally orders the activations.
void force_seeds(State& st, std::span<const NodeId> seeds, ThresholdMode mode,
                 bool record_true_exposure) {
  for (NodeId s : seeds) {
    if (st.active[s]) continue;
    double exp_value = record_true_exposure ? st.exposure(s, mode) : 0.0;
    st.record(s, exp_value, false, true);
    st.activate(s);
  }
  if (!seeds.empty()) st.step = 1;
}

// Draws the next node to update. Pool semantics implement the two
// schedules; see UpdateSchedule.
class UpdatePool {
 public:
  UpdatePool(const State& st, UpdateSchedule schedule, Rng& rng)
      : schedule_(schedule), rng_(rng) {
    refill(st);
  }

  bool empty() const { return next_ >= pool_.size(); }

  NodeId pop() { return pool_[next_++]; }

  void on_activation(const State& st) {
    if (schedule_ == UpdateSchedule::resample) refill(st);
  }

  void refill(const State& st) {
    pool_.clear();
    next_ = 0;
    for (NodeId i = 0; i < st.active.size(); ++i) {
      if (!st.active[i]) pool_.push_back(i);
    }
    rng_.shuffle(pool_);
  }

 private:
  UpdateSchedule schedule_;
  Rng& rng_;
  std::vector<NodeId> pool_;
  std::size_t next_ = 0;
};

}  // namespace

CascadeTrace run_threshold_cascade(const Graph& g, const ThresholdAssignment& thresholds,
                                   std::uint64_t seed, UpdateSchedule schedule) {
  thresholds.validate(g);
  Rng rng(seed);
  State st(g, thresholds.mode);
  force_seeds(st, thresholds.seed_nodes, thresholds.mode,
              /*record_true_exposure=*/thresholds.mode != ThresholdMode::fractional);

  NodeId consecutive_failures = 0;
  UpdatePool pool(st, schedule, rng);
  while (st.n_active < g.node_count()) {
    NodeId inactive = g.node_count() - st.n_active;
    if (consecutive_failures >= inactive) break;  // every inactive node failed in a row
    if (pool.empty()) pool.refill(st);
    NodeId i = pool.pop();
    if (st.active[i]) continue;
    double exp_value = st.exposure(i, thresholds.mode);
    bool activates = exp_value >= thresholds.values[i];
    st.record(i, exp_value, false, activates);
    ++st.step;
    if (activates) {
      st.activate(i);
      consecutive_failures = 0;
      pool.on_activation(st);
    } else {
      ++consecutive_failures;
    }
  }
  st.finish();
  return st.trace;
}

CascadeTrace run_threshold_schedule(const Graph& g, const ThresholdAssignment& thresholds,
                                    std::span<const NodeId> updates) {
  thresholds.validate(g);
  State st(g, thresholds.mode);
  force_seeds(st, thresholds.seed_nodes, thresholds.mode,
              thresholds.mode != ThresholdMode::fractional);
  for (NodeId i : updates) {
    if (i >= g.node_count()) throw LookupError("unknown node id " + std::to_string(i));
    if (st.active[i]) continue;
    double exp_value = st.exposure(i, thresholds.mode);
    bool activates = exp_value >= thresholds.values[i];
    st.record(i, exp_value, false, activates);
    ++st.step;
    if (activates) st.activate(i);
  }
  st.finish();
  return st.trace;
}

namespace {

void check_si(const SIConfig& cfg, std::span<const NodeId> innovators, const Graph& g) {
  // p = 0 is admitted as the degenerate no-transmission case.
  if (cfg.p < 0.0 || cfg.p > 1.0) throw ParamError("transmission probability must lie in [0,1]");
  if (innovators.empty()) throw ParamError("SI requires at least one innovator");
  for (NodeId s : innovators) {
    if (s >= g.node_count()) throw ParamError("innovator out of range");
  }
}

}  // namespace

SiResult run_si_pull(const Graph& g, const SIConfig& cfg, std::span<const NodeId> innovators,
                     std::uint64_t seed, UpdateSchedule schedule) {
  check_si(cfg, innovators, g);
  Rng rng(seed);
  State st(g, ThresholdMode::integer);
  CriticalValues critical(g.node_count());
  force_seeds(st, innovators, ThresholdMode::integer, /*record_true_exposure=*/true);

  // exposure at each node's previous update; 0 before the first update
  std::vector<double> last_seen(g.node_count(), 0.0);

  NodeId consecutive_failures = 0;
  UpdatePool pool(st, schedule, rng);
  while (st.n_active < g.node_count()) {
    NodeId inactive = g.node_count() - st.n_active;
    if (consecutive_failures >= inactive) break;
    if (pool.empty()) pool.refill(st);
    NodeId i = pool.pop();
    if (st.active[i]) continue;
    const double now = st.active_weight[i];
    const long long coins = std::llround(now - last_seen[i]);
    bool activated = false;
    for (long long c = 1; c <= coins; ++c) {
      if (rng.bernoulli(cfg.p)) {
        activated = true;
        critical.values[i] = last_seen[i] + static_cast<double>(c);
        break;
      }
    }
    st.record(i, now, false, activated);
    ++st.step;
    last_seen[i] = now;
    if (activated) {
      st.activate(i);
      consecutive_failures = 0;
      pool.on_activation(st);
    } else {
      ++consecutive_failures;
    }
  }
  st.finish();
  return SiResult{std::move(st.trace), std::move(critical)};
}

SiResult run_si_push(const Graph& g, const SIConfig& cfg, std::span<const NodeId> innovators,
                     std::uint64_t seed) {
  check_si(cfg, innovators, g);
  Rng rng(seed);
  State st(g, ThresholdMode::integer);
  CriticalValues critical(g.node_count());
  force_seeds(st, innovators, ThresholdMode::integer, /*record_true_exposure=*/true);

  std::vector<std::uint8_t> spent(g.node_count(), 0);
  std::vector<double> coins_flipped(g.node_count(), 0.0);
  std::vector<NodeId> unspent;
  for (NodeId i = 0; i < g.node_count(); ++i) {
    if (st.active[i]) unspent.push_back(i);
  }

  while (st.n_active < g.node_count() && !unspent.empty()) {
    const std::size_t pick = rng.below(unspent.size());
    NodeId pusher = unspent[pick];
    unspent[pick] = unspent.back();
    unspent.pop_back();
    spent[pusher] = 1;

    std::vector<NodeId> order;
    for (const Edge& e : g.neighbors(pusher)) order.push_back(e.to);
    rng.shuffle(order);
    for (NodeId j : order) {
      if (st.active[j]) continue;
      const double exposure = st.active_weight[j];
      coins_flipped[j] += 1.0;
      const bool heads = rng.bernoulli(cfg.p);
      st.record(j, exposure, false, heads);
      if (heads) {
        critical.values[j] = coins_flipped[j];
        st.activate(j);
        if (!spent[j]) unspent.push_back(j);
      }
    }
    ++st.step;
  }
  st.finish();
  return SiResult{std::move(st.trace), std::move(critical)};
}

std::vector<NodeId> threshold_closure(const Graph& g, const ThresholdAssignment& thresholds) {
  thresholds.validate(g);
  // Same exposure arithmetic as the simulator so floating-point comparisons
  // agree exactly.
  State st(g, thresholds.mode);
  for (NodeId s : thresholds.seed_nodes) {
    if (!st.active[s]) st.activate(s);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (NodeId i = 0; i < g.node_count(); ++i) {
      if (!st.active[i] && st.exposure(i, thresholds.mode) >= thresholds.values[i]) {
        st.activate(i);
        changed = true;
      }
    }
  }
  std::vector<NodeId> out;
  for (NodeId i = 0; i < g.node_count(); ++i) {
    if (st.active[i]) out.push_back(i);
  }
  return out;
}

void write_trace_csv(const CascadeTrace& trace, const std::string& path) {
  auto out = open_output(path);
  out << "step,node,exposure,active_before,activated_now\n";
  for (const TraceEvent& e : trace.events) {
    out << e.step << "," << e.node << "," << fmt_double(e.exposure) << ","
        << (e.active_before ? 1 : 0) << "," << (e.activated_now ? 1 : 0) << "\n";
  }
}

}  // namespace opacity
