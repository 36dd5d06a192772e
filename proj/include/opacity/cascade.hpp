#pragma once

// Contagion processes with full exposure traces: deterministic threshold
// cascades (integer or fractional critical values) and the probabilistic
// SI / independent-cascade model in "pull" and "push" form. Every node
// update records the exposure seen at that moment, whether or not the node
// activates; the trace is what the measurement module consumes.

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "opacity/graph.hpp"
#include "opacity/rng.hpp"

namespace opacity {

enum class ThresholdMode { integer, fractional };

// How the simulator picks the next inactive node to update.
//
// sweep:    shuffle the inactive set and check each node once, reshuffling
//           when the pool is exhausted. The consecutive-failure counter
//           reaching the current inactive count ends the run.
// resample: reshuffle the remaining pool after every activation, so each
//           inter-activation window checks a random prefix of the inactive
//           set. Same stop rule.
//
// Both satisfy "stop once every inactive node has been checked in a row
// without an activation"; sweep is the default used by the experiment
// drivers.
enum class UpdateSchedule { sweep, resample };

struct ThresholdAssignment {
  ThresholdMode mode = ThresholdMode::integer;
  // Critical values. Integer mode compares against the weighted count of
  // active neighbors; values are conventionally whole but real values >= 0
  // are accepted (threshold functions like 5 + 3x + eps produce them).
  // Fractional mode compares against active weight / total incident weight
  // and requires values in [0, 1].
  std::vector<double> values;
  // Nodes forced active at step 0 (fractional seeds, SI innovators).
  std::vector<NodeId> seed_nodes;

  void validate(const Graph& g) const;
};

struct TraceEvent {
  std::uint32_t step = 0;
  NodeId node = 0;
  double exposure = 0.0;       // value compared against the threshold
  double active_weight = 0.0;  // raw active-neighbor weight at the event
  bool active_before = false;
  bool activated_now = false;
};

struct CascadeTrace {
  NodeId node_count = 0;
  ThresholdMode units = ThresholdMode::integer;  // meaning of `exposure`
  std::vector<TraceEvent> events;
  std::vector<NodeId> final_active;  // sorted ascending

  bool is_active(NodeId i) const;
};

struct SIConfig {
  enum class Dynamics { pull, push };
  double p = 0.2;  // transmission probability, in (0, 1]
  Dynamics dynamics = Dynamics::pull;
};

// Per-node critical values revealed by an SI run: the cumulative number of
// transmission coins a node had flipped when the first one came up heads.
// Nodes that never activated, and forced innovators, have no entry.
struct CriticalValues {
  std::vector<double> values;  // NaN = absent

  explicit CriticalValues(NodeId n = 0)
      : values(n, std::numeric_limits<double>::quiet_NaN()) {}
  bool has(NodeId i) const { return !std::isnan(values[i]); }
};

struct SiResult {
  CascadeTrace trace;
  CriticalValues critical;
};

// Random-order threshold cascade. A node activates when its exposure
// reaches its critical value; the run stops when everyone is active or the
// consecutive-failure counter reaches the inactive count.
CascadeTrace run_threshold_cascade(const Graph& g, const ThresholdAssignment& thresholds,
                                   std::uint64_t seed,
                                   UpdateSchedule schedule = UpdateSchedule::sweep);

// Scripted variant: updates happen exactly in the order given (ids may
// repeat; already-active nodes are skipped). Used for fixtures and for
// schedule-sensitivity oracles.
CascadeTrace run_threshold_schedule(const Graph& g, const ThresholdAssignment& thresholds,
                                    std::span<const NodeId> updates);

// SI "pull": a random inactive node counts its newly active neighbors since
// its previous update and flips that many p-coins, activating on the first
// heads. The revealed critical value is (exposure at previous update) +
// (index of the heads coin).
SiResult run_si_pull(const Graph& g, const SIConfig& cfg, std::span<const NodeId> innovators,
                     std::uint64_t seed, UpdateSchedule schedule = UpdateSchedule::sweep);

// SI "push": a random active node that has not pushed yet is spent; its
// inactive neighbors are visited in shuffled order, each recording exposure
// and flipping one p-coin. Stops when all nodes are active or all active
// nodes are spent.
SiResult run_si_push(const Graph& g, const SIConfig& cfg, std::span<const NodeId> innovators,
                     std::uint64_t seed);

// Monotone fixed point of the threshold map: the set of nodes that
// eventually activate, independent of update order. Oracle for final-set
// determinism and the atlas diffusion filter.
std::vector<NodeId> threshold_closure(const Graph& g, const ThresholdAssignment& thresholds);

// Trace CSV, header "step,node,exposure,active_before,activated_now".
void write_trace_csv(const CascadeTrace& trace, const std::string& path);

}  // namespace opacity
