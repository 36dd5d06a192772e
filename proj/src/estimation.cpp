#include "opacity/estimation.hpp"

#include <algorithm>
#include <cmath>

namespace opacity {

NodeCovariates generate_covariates(NodeId n, const ThresholdFunction& fn, Rng& rng) {
  NodeCovariates cov;
  cov.x.resize(n);
  cov.h.resize(n);
  cov.eps.resize(n);
  for (NodeId i = 0; i < n; ++i) {
    cov.x[i] = fn.x_grid.empty() ? rng.normal() : fn.x_grid[i % fn.x_grid.size()];
    cov.eps[i] = fn.noise_sd > 0.0 ? rng.normal(0.0, fn.noise_sd) : 0.0;
    cov.h[i] = std::max(0.0, fn.intercept + fn.slope * cov.x[i] + cov.eps[i]);
  }
  return cov;
}

OlsFit fit_ols(std::span<const std::pair<double, double>> pairs) {
  if (pairs.size() < 3) throw DataError("fit_ols needs at least 3 points");
  double mean_x = 0.0, mean_y = 0.0;
  for (const auto& [x, y] : pairs) {
    mean_x += x;
    mean_y += y;
  }
  mean_x /= static_cast<double>(pairs.size());
  mean_y /= static_cast<double>(pairs.size());
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : pairs) {
    sxx += (x - mean_x) * (x - mean_x);
    sxy += (x - mean_x) * (y - mean_y);
  }
  if (sxx == 0.0) throw DataError("fit_ols: covariate is constant");
  OlsFit fit;
  fit.beta = sxy / sxx;
  fit.alpha = mean_y - fit.beta * mean_x;
  fit.n_used = static_cast<int>(pairs.size());
  double ss = 0.0;
  for (const auto& [x, y] : pairs) {
    const double r = y - fit.predict(x);
    ss += r * r;
  }
  fit.residual_rmse = std::sqrt(ss / static_cast<double>(pairs.size()));
  return fit;
}

const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::eaa: return "eaa";
    case Strategy::all_active_model: return "all-active-model";
    case Strategy::precise_subset_model: return "precise-subset-model";
  }
  return "?";
}

std::vector<Prediction> estimate_thresholds(Strategy strategy, const CascadeTrace& trace,
                                            std::span<const ThresholdInterval> intervals,
                                            std::span<const double> covariate_x) {
  if (covariate_x.size() != trace.node_count) {
    throw ParamError("covariate size does not match node count");
  }
  std::vector<Prediction> out;
  out.reserve(trace.final_active.size());

  if (strategy == Strategy::eaa) {
    for (const ThresholdInterval& t : intervals) {
      if (t.upper) out.push_back({t.node, *t.upper});
    }
    return out;
  }

  std::vector<std::pair<double, double>> pairs;
  for (const ThresholdInterval& t : intervals) {
    if (!t.upper) continue;
    if (strategy == Strategy::all_active_model) {
      pairs.emplace_back(covariate_x[t.node], *t.upper);
    } else if (t.status == MeasureStatus::precise) {
      // precise non-innovators only; upper equals the exact threshold in
      // whole-valued mode and its integer bracket otherwise
      pairs.emplace_back(covariate_x[t.node], *t.upper);
    }
  }
  const OlsFit fit = fit_ols(pairs);
  for (const ThresholdInterval& t : intervals) {
    if (t.upper) out.push_back({t.node, fit.predict(covariate_x[t.node])});
  }
  return out;
}

double rmse_report(std::span<const Prediction> predictions, std::span<const double> truth,
                   double baseline) {
  if (predictions.empty()) throw DataError("rmse_report: no predictions");
  if (baseline <= 0.0) throw ParamError("baseline must be positive");
  double ss = 0.0;
  for (const Prediction& p : predictions) {
    if (p.node >= truth.size()) throw LookupError("prediction for unknown node");
    const double err = p.value - truth[p.node];
    ss += err * err;
  }
  return std::sqrt(ss / static_cast<double>(predictions.size())) / baseline;
}

}  // namespace opacity
