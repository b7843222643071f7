#pragma once

#include <stdexcept>
#include <string>

namespace fairtune {

/// Bad or inconsistent configuration (missing column, invalid fractions, ...).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Degenerate data: empty split, single-group input, unsatisfiable batch.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A metric could not be computed because an underlying rate has a zero
/// denominator (e.g. no positives in a group). Retryable by resampling.
struct UndefinedMetricError : std::runtime_error {
    explicit UndefinedMetricError(const std::string& metric_name, const std::string& detail)
        : std::runtime_error("metric '" + metric_name + "' undefined: " + detail),
          metric(metric_name) {}
    std::string metric;
};

/// A raw metric value fell outside its declared [min, max] range.
struct MetricRangeError : std::runtime_error {
    explicit MetricRangeError(const std::string& metric_name, const std::string& detail)
        : std::runtime_error("metric '" + metric_name + "' out of range: " + detail),
          metric(metric_name) {}
    std::string metric;
};

/// Feature width does not match a model's shape descriptor.
struct ShapeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Training produced a non-finite loss or gradient.
struct DivergenceError : std::runtime_error {
    explicit DivergenceError(int at_epoch)
        : std::runtime_error("non-finite loss at epoch " + std::to_string(at_epoch)),
          epoch(at_epoch) {}
    DivergenceError(int at_epoch, const std::string& detail)
        : std::runtime_error(detail), epoch(at_epoch) {}
    int epoch;
};

}  // namespace fairtune
