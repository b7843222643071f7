#pragma once

#include <map>
#include <string>
#include <vector>

#include "fairtune/metrics.hpp"

namespace fairtune {

enum class Monotonicity { increasing, decreasing, non_monotonic };

enum class MetricKind { fairness, utility };

/// Declarative description of one metric: range, orientation and (for
/// non-monotonic metrics) the ideal point the standardizer folds around.
struct MetricSpec {
    std::string name;
    MetricKind kind = MetricKind::fairness;
    Monotonicity monotonicity = Monotonicity::increasing;
    double min = 0.0;
    double max = 1.0;
    double ideal = 0.0;  // only meaningful when non_monotonic
};

/// Built-in registry keyed by metric name:
/// di, spd, eod, aod, erd, m_a, m_b (fairness); acc, f1, auc (utility).
const std::map<std::string, MetricSpec>& builtin_metrics();

/// Looks up a built-in spec; throws ConfigError for unknown names.
const MetricSpec& metric_spec(const std::string& name);

struct ProcessedScore {
    std::string name;
    double raw = 0.0;
    double processed = 0.0;
};

/// Maps a raw metric value onto [0,1] with 1 = best.
///   increasing:     (x-min)/(max-min)
///   decreasing:     1-(x-min)/(max-min)
///   non-monotonic:  piecewise linear, 1 at ideal, 0 at both range ends
/// Values beyond the declared range are snapped when within 1e-9 and throw
/// MetricRangeError otherwise.
double standardize(const MetricSpec& spec, double raw);

/// Unweighted mean of processed scores; throws ConfigError when empty.
double comprehensive(const std::vector<ProcessedScore>& scores);

/// reward = lambda * f_bar + (1-lambda) * u_bar.
double reward(double f_bar, double u_bar, double lambda);

/// Which metrics feed the fairness and utility terms of the reward.
struct MeasurementConfig {
    std::vector<std::string> fairness = {"m_a", "m_b"};
    std::vector<std::string> utility = {"auc"};
    double lambda = 0.5;

    /// Throws ConfigError on unknown names, kind mismatches, duplicates,
    /// empty lists or lambda outside [0,1].
    void validate() const;
};

/// Computes one raw built-in metric over a bundle.
double raw_metric(const std::string& name, const PredictionBundle& bundle);

struct Measurement {
    std::vector<ProcessedScore> fairness;
    std::vector<ProcessedScore> utility;
    double f_bar = 0.0;
    double u_bar = 0.0;
    double reward = 0.0;
};

/// Full pipeline: raw metrics -> standardize -> the two means -> reward.
Measurement measure(const PredictionBundle& bundle, const MeasurementConfig& config);

}  // namespace fairtune
