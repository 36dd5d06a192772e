#include "opacity/atlas.hpp"

#include <algorithm>
#include <numeric>

#include "opacity/csv.hpp"
#include "opacity/measurement.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace opacity {

std::vector<std::vector<int>> enumerate_assignments(const Graph& g) {
  const NodeId n = g.node_count();
  std::vector<std::vector<int>> out;
  std::vector<int> current(n, 0);
  while (true) {
    out.push_back(current);
    NodeId pos = 0;
    while (pos < n) {
      if (current[pos] < static_cast<int>(g.degree(pos))) {
        ++current[pos];
        std::fill(current.begin(), current.begin() + pos, 0);
        break;
      }
      ++pos;
    }
    if (pos == n) break;
  }
  return out;
}

namespace {

ThresholdAssignment to_assignment(const std::vector<int>& thresholds) {
  ThresholdAssignment a;
  a.mode = ThresholdMode::integer;
  a.values.assign(thresholds.begin(), thresholds.end());
  return a;
}

}  // namespace

bool supports_diffusion(const Graph& g, const std::vector<int>& thresholds) {
  return threshold_closure(g, to_assignment(thresholds)).size() == g.node_count();
}

OrderingAnalysis analyze_orderings(const Graph& g, const std::vector<int>& thresholds) {
  const int n = static_cast<int>(g.node_count());
  if (n > 8) throw ParamError("analyze_orderings supports order <= 8");
  if (thresholds.size() != g.node_count()) throw ParamError("threshold size mismatch");

  OrderingAnalysis res;
  res.min_imprecise = n + 1;
  std::uint64_t total_imprecise = 0;

  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  // exposure[v][r]: active neighbors of v after the first r activations
  std::vector<std::vector<int>> exposure(n, std::vector<int>(n + 1, 0));
  do {
    bool consistent = true;
    for (int r = 0; r < n && consistent; ++r) {
      const int v = perm[r];
      if (exposure[v][r] < thresholds[v]) consistent = false;
      for (int u = 0; u < n; ++u) {
        exposure[u][r + 1] = exposure[u][r] + (g.has_edge(u, v) ? 1 : 0);
      }
    }
    if (!consistent) continue;

    int imprecise = 0;
    for (int s = 0; s < n; ++s) {
      const int v = perm[s];
      const int at_activation = exposure[v][s];
      if (at_activation == 0) continue;  // innovator, precise by convention
      if (thresholds[v] == 0) {
        ++imprecise;  // any check activates it; no lower bound possible
        continue;
      }
      int best_lower = 0;
      for (int r = s - 1; r >= 0; --r) {
        if (exposure[v][r] < thresholds[v]) {
          best_lower = exposure[v][r];
          break;
        }
      }
      if (at_activation - best_lower != 1) ++imprecise;
    }
    ++res.orderings;
    total_imprecise += imprecise;
    res.min_imprecise = std::min(res.min_imprecise, imprecise);
  } while (std::next_permutation(perm.begin(), perm.end()));

  if (res.orderings == 0) {
    res.min_imprecise = 0;
    return res;
  }
  res.mean_imprecise = static_cast<double>(total_imprecise) / static_cast<double>(res.orderings);
  return res;
}

SurveyResult survey(int min_order, int max_order, int runs_per_combo, std::uint64_t seed) {
  if (runs_per_combo < 1) throw ParamError("runs_per_combo must be >= 1");
  const std::vector<Graph> graphs = enumerate_small_graphs(min_order, max_order);

  struct Combo {
    const Graph* g;
    std::string id;
    std::vector<int> thresholds;
  };
  std::vector<Combo> combos;
  for (const Graph& g : graphs) {
    std::string id = canonical_form(g);
    for (auto& t : enumerate_assignments(g)) combos.push_back({&g, id, std::move(t)});
  }

  SurveyResult out;
  out.combos.resize(combos.size());

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (long long idx = 0; idx < static_cast<long long>(combos.size()); ++idx) {
    const Combo& c = combos[idx];
    ComboRecord rec;
    rec.graph_id = c.id;
    rec.thresholds = c.thresholds;
    rec.supports = supports_diffusion(*c.g, c.thresholds);
    if (rec.supports) {
      const OrderingAnalysis oa = analyze_orderings(*c.g, c.thresholds);
      rec.mean_uncertain = oa.mean_imprecise;
      rec.always_uncertain = oa.min_imprecise >= 1;

      const ThresholdAssignment assignment = to_assignment(c.thresholds);
      const std::uint64_t combo_seed = split_seed(seed, static_cast<std::uint64_t>(idx));
      const NodeId n = c.g->node_count();
      double uncertain_sum = 0.0;
      double precise_fraction_sum = 0.0;
      bool every_run_uncertain = true;
      for (int run = 0; run < runs_per_combo; ++run) {
        CascadeTrace trace =
            run_threshold_cascade(*c.g, assignment, split_seed(combo_seed, run));
        int imprecise = 0;
        int precise_or_innovator = 0;
        for (const ThresholdInterval& t : build_intervals(trace)) {
          if (t.status == MeasureStatus::imprecise) {
            ++imprecise;
          } else if (t.status == MeasureStatus::precise ||
                     t.status == MeasureStatus::innovator_by_assumption) {
            ++precise_or_innovator;
          }
        }
        uncertain_sum += imprecise;
        precise_fraction_sum += static_cast<double>(precise_or_innovator) / n;
        if (imprecise == 0) every_run_uncertain = false;
      }
      rec.mc_mean_uncertain = uncertain_sum / runs_per_combo;
      rec.mc_always_uncertain = every_run_uncertain;
      rec.mean_precise_fraction = precise_fraction_sum / runs_per_combo;
    }
    out.combos[idx] = std::move(rec);
  }

  for (const ComboRecord& rec : out.combos) {
    if (rec.supports) {
      ++out.supporting;
      if (rec.always_uncertain) ++out.always_uncertain;
    }
  }
  return out;
}

namespace {

std::string join_thresholds(const std::vector<int>& t) {
  std::string s;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += "|";
    s += std::to_string(t[i]);
  }
  return s;
}

}  // namespace

void write_survey_csv(const SurveyResult& result, const std::string& path) {
  auto out = open_output(path);
  out << "graph_id,thresholds,supports,mean_uncertain,always_uncertain,mean_precise_fraction\n";
  for (const ComboRecord& r : result.combos) {
    out << r.graph_id << "," << join_thresholds(r.thresholds) << "," << (r.supports ? 1 : 0)
        << "," << fmt_double(r.mean_uncertain) << "," << (r.always_uncertain ? 1 : 0) << ","
        << fmt_double(r.mean_precise_fraction) << "\n";
  }
}

void write_survey_mc_csv(const SurveyResult& result, const std::string& path) {
  auto out = open_output(path);
  out << "graph_id,thresholds,mc_mean_uncertain,mc_always_uncertain\n";
  for (const ComboRecord& r : result.combos) {
    if (!r.supports) continue;
    out << r.graph_id << "," << join_thresholds(r.thresholds) << ","
        << fmt_double(r.mc_mean_uncertain) << "," << (r.mc_always_uncertain ? 1 : 0) << "\n";
  }
}

void write_survey_points_csv(const SurveyResult& result, const std::string& path) {
  auto out = open_output(path);
  out << "graph_index,graph_id,thresholds,mean_uncertain,always_uncertain\n";
  int index = -1;
  std::string current;
  for (const ComboRecord& r : result.combos) {
    if (r.graph_id != current) {
      current = r.graph_id;
      ++index;
    }
    if (!r.supports) continue;
    out << index << "," << r.graph_id << "," << join_thresholds(r.thresholds) << ","
        << fmt_double(r.mean_uncertain) << "," << (r.always_uncertain ? 1 : 0) << "\n";
  }
}

}  // namespace opacity
