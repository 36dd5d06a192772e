#pragma once

// Exhaustive survey of small connected graphs x integer threshold
// assignments: which combinations support full diffusion, and for which of
// those is at least one imprecisely measured node unavoidable regardless of
// update ordering.

#include <cstdint>
#include <string>
#include <vector>

#include "opacity/cascade.hpp"
#include "opacity/graph.hpp"

namespace opacity {

// All integer threshold vectors with h_i in {0..degree(i)}.
std::vector<std::vector<int>> enumerate_assignments(const Graph& g);

// True iff the monotone fixed point activates every node.
bool supports_diffusion(const Graph& g, const std::vector<int>& thresholds);

// Per-ordering opacity analysis. For an activation ordering, the most
// favorable measurement schedule checks each node at the last moment its
// exposure is still below threshold (extra checks only tighten lower
// bounds, and a node cannot be checked while eligible without activating
// out of order). A node is then imprecise only if its exposure necessarily
// jumped by more than one, or it activates with positive exposure and a
// zero threshold. Innovators (EAA 0) count as precise here.
struct OrderingAnalysis {
  std::uint64_t orderings = 0;        // consistent activation orderings
  int min_imprecise = 0;              // best case over orderings
  double mean_imprecise = 0.0;        // mean over orderings
};

OrderingAnalysis analyze_orderings(const Graph& g, const std::vector<int>& thresholds);

struct ComboRecord {
  std::string graph_id;               // canonical form
  std::vector<int> thresholds;
  bool supports = false;
  double mean_uncertain = 0.0;        // ordering-mean imprecise count (exact)
  bool always_uncertain = false;      // exact: min over orderings >= 1
  double mean_precise_fraction = 0.0; // Monte Carlo, random updating
  // Monte Carlo diagnostics (random updating, runs_per_combo runs)
  double mc_mean_uncertain = 0.0;
  bool mc_always_uncertain = false;
};

struct SurveyResult {
  std::vector<ComboRecord> combos;    // every assignment, supporting or not
  int supporting = 0;
  int always_uncertain = 0;           // among supporting, by the exact flag
};

// Orders clamped to [2,5]; runs_per_combo >= 1 random cascades per
// supporting combo feed the Monte Carlo columns. Deterministic given seed.
SurveyResult survey(int min_order, int max_order, int runs_per_combo, std::uint64_t seed);

// survey.csv: graph_id,thresholds,supports,mean_uncertain,always_uncertain,
// mean_precise_fraction (thresholds joined with '|').
void write_survey_csv(const SurveyResult& result, const std::string& path);
// Companion Monte Carlo columns.
void write_survey_mc_csv(const SurveyResult& result, const std::string& path);
// Figure-style scatter points: one row per supporting combo with a stable
// per-graph index for the x axis.
void write_survey_points_csv(const SurveyResult& result, const std::string& path);

}  // namespace opacity
