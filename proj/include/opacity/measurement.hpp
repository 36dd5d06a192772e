#pragma once

// Threshold intervals from cascade traces: the exposure-at-activation rule,
// interval construction from bracketing updates, and the width-1 precise
// measurement condition.

#include <optional>
#include <string>
#include <vector>

#include "opacity/cascade.hpp"

namespace opacity {

enum class MeasureStatus { precise, imprecise, innovator_by_assumption, never_activated };

const char* to_string(MeasureStatus s);

struct ThresholdInterval {
  NodeId node = 0;
  // Exposure at the last non-activating update before activation. Absent
  // means no lower bound exists (first update was the activation). For
  // never-activated nodes this holds the largest exposure observed.
  std::optional<double> lower;
  // Exposure at activation (the EAA). Absent for never-activated nodes.
  std::optional<double> upper;
  // Active-neighbor weight gained between the bracketing updates; the
  // width-1 condition tests t_star == 1, which generalizes to fractional
  // units as "exactly one neighbor activated in between". 0 when no bounded
  // bracketing interval exists (innovators, unbounded lower, degenerate).
  double t_star = 0.0;
  MeasureStatus status = MeasureStatus::never_activated;

  double width() const {
    if (!lower || !upper) return std::numeric_limits<double>::infinity();
    return *upper - *lower;
  }
};

struct MeasureOptions {
  // Innovators (EAA 0) are precise only by assumption; set false to count
  // them imprecise instead.
  bool innovators_precise = true;
};

// Exposure recorded at the node's first activating event.
double eaa(const CascadeTrace& trace, NodeId node);

ThresholdInterval build_interval(const CascadeTrace& trace, NodeId node,
                                 const MeasureOptions& opts = {});

std::vector<ThresholdInterval> build_intervals(const CascadeTrace& trace,
                                               const MeasureOptions& opts = {});

// Re-derives the status from the interval fields alone: innovator
// convention for upper == 0, imprecise when the lower bound is missing,
// precise exactly at width 1 (t_star when set, plain width otherwise).
// Width-0 intervals cannot arise from an activating update and classify as
// imprecise.
MeasureStatus classify(const ThresholdInterval& interval, const MeasureOptions& opts = {});

struct ExposureLevelCounts {
  long long level = 0;  // EAA rounded to the nearest integer
  std::uint64_t precise = 0;
  std::uint64_t imprecise = 0;

  double rate() const {
    return precise + imprecise == 0
               ? 0.0
               : static_cast<double>(precise) / static_cast<double>(precise + imprecise);
  }
};

// Precise/imprecise counts grouped by EAA level (1..max); innovators are
// excluded. Aggregates over any number of traces.
struct MeasurementSummary {
  std::vector<ExposureLevelCounts> by_level;
  std::uint64_t precise_total = 0;
  std::uint64_t imprecise_total = 0;
  std::uint64_t innovators = 0;

  double aggregate_rate() const {
    const std::uint64_t n = precise_total + imprecise_total;
    return n == 0 ? 0.0 : static_cast<double>(precise_total) / static_cast<double>(n);
  }
};

MeasurementSummary measurement_summary(std::span<const CascadeTrace> traces,
                                       const MeasureOptions& opts = {});

// Interval CSV, header "node,lower,upper,status"; lower is empty when
// unbounded, upper empty for never-activated nodes.
void write_intervals_csv(std::span<const ThresholdInterval> intervals, const std::string& path);

}  // namespace opacity
