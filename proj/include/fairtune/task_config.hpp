#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace fairtune {

/// Rule deciding which raw sensitive-attribute values count as privileged.
struct PrivilegedPredicate {
    enum class Kind { equals, greater_than };
    Kind kind = Kind::equals;
    std::string value;       // equals: exact string match
    double threshold = 0.0;  // greater_than: numeric strictly-greater test

    /// Applies the rule to one raw cell. greater_than parses the cell as a
    /// number and throws DataError when it cannot.
    bool matches(const std::string& raw) const;
};

/// Per-task description of one dataset: which columns mean what and how the
/// rows are split. Loaded from a JSON config file.
struct TaskConfig {
    std::string dataset_name;
    std::string label_column;
    std::string favorable_value;
    std::string sensitive_column;
    PrivilegedPredicate privileged;
    std::vector<std::string> categorical_columns;
    std::vector<std::string> numeric_columns;
    std::array<double, 3> split_fractions = {0.6, 0.2, 0.2};
    std::uint64_t split_seed = 0;
    std::vector<std::string> missing_values = {"", "?"};

    /// Throws ConfigError on non-positive fractions, fractions not summing
    /// to 1 (1e-9), column overlaps, or empty required fields.
    void validate() const;
};

/// Parses a TaskConfig from a JSON file. Throws IoError / ConfigError.
TaskConfig load_task_config(const std::string& path);

}  // namespace fairtune
