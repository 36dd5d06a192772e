#pragma once

// Threshold recovery strategies: the raw exposure-at-activation rule versus
// simple linear models fit on all activated nodes or on the precisely
// measured subset only.

#include <span>
#include <utility>
#include <vector>

#include "opacity/measurement.hpp"
#include "opacity/rng.hpp"

namespace opacity {

// Per-node covariate and the threshold it generates:
//   h_i = intercept + slope * x_i + eps_i, clamped at 0.
struct NodeCovariates {
  std::vector<double> x;
  std::vector<double> h;    // true threshold (simulation ground truth)
  std::vector<double> eps;  // generation-time noise, kept for diagnostics
};

struct ThresholdFunction {
  double intercept = 5.0;
  double slope = 3.0;
  double noise_sd = 1.0;
  // Covariate source: standard normal draws by default; a fixed grid cycled
  // over nodes makes noiseless validation runs exactly linear.
  std::vector<double> x_grid;
};

NodeCovariates generate_covariates(NodeId n, const ThresholdFunction& fn, Rng& rng);

struct OlsFit {
  double alpha = 0.0;
  double beta = 0.0;
  int n_used = 0;
  double residual_rmse = 0.0;

  double predict(double x) const { return alpha + beta * x; }
};

// Closed-form simple regression. Throws DataError for fewer than 3 points
// or a constant covariate.
OlsFit fit_ols(std::span<const std::pair<double, double>> pairs);

enum class Strategy { eaa, all_active_model, precise_subset_model };

const char* to_string(Strategy s);

// Predicted threshold per activated node.
//   eaa:                  the node's exposure at activation, as-is
//   all_active_model:     OLS of EAA on x over all activated nodes
//   precise_subset_model: OLS of the interval upper bound on x over precise
//                         non-innovator nodes, predictions for all activated
struct Prediction {
  NodeId node;
  double value;
};

std::vector<Prediction> estimate_thresholds(Strategy strategy, const CascadeTrace& trace,
                                            std::span<const ThresholdInterval> intervals,
                                            std::span<const double> covariate_x);

// RMSE of predictions against the true thresholds, over the predicted node
// set, as a multiple of the baseline (the irreducible error, 1.0 in the
// standard design).
double rmse_report(std::span<const Prediction> predictions, std::span<const double> truth,
                   double baseline = 1.0);

}  // namespace opacity
