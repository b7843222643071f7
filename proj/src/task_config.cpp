#include "fairtune/task_config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include <json.hpp>

#include "fairtune/errors.hpp"

namespace fairtune {

bool PrivilegedPredicate::matches(const std::string& raw) const {
    if (kind == Kind::equals) return raw == value;
    try {
        std::size_t pos = 0;
        const double x = std::stod(raw, &pos);
        if (pos != raw.size()) throw std::invalid_argument(raw);
        return x > threshold;
    } catch (const std::exception&) {
        throw DataError("sensitive value '" + raw + "' is not numeric for threshold rule");
    }
}

void TaskConfig::validate() const {
    if (dataset_name.empty()) throw ConfigError("task config: dataset_name is empty");
    if (label_column.empty()) throw ConfigError("task config: label_column is empty");
    if (sensitive_column.empty()) throw ConfigError("task config: sensitive_column is empty");
    double sum = 0.0;
    for (double f : split_fractions) {
        if (f <= 0.0) throw ConfigError("task config: split fractions must be positive");
        sum += f;
    }
    if (std::fabs(sum - 1.0) > 1e-9)
        throw ConfigError("task config: split fractions must sum to 1");
    std::set<std::string> seen;
    for (const auto& c : categorical_columns)
        if (!seen.insert(c).second) throw ConfigError("task config: duplicate column " + c);
    for (const auto& c : numeric_columns)
        if (!seen.insert(c).second) throw ConfigError("task config: duplicate column " + c);
    if (seen.count(label_column))
        throw ConfigError("task config: label column listed among feature columns");
    if (seen.count(sensitive_column))
        throw ConfigError("task config: sensitive column listed among feature columns");
}

TaskConfig load_task_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open task config: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("task config " + path + ": " + e.what());
    }
    try {
        TaskConfig cfg;
        cfg.dataset_name = j.at("dataset_name").get<std::string>();
        cfg.label_column = j.at("label_column").get<std::string>();
        cfg.favorable_value = j.at("favorable_value").get<std::string>();
        cfg.sensitive_column = j.at("sensitive_column").get<std::string>();
        const auto& p = j.at("privileged");
        const std::string kind = p.at("kind").get<std::string>();
        if (kind == "equals") {
            cfg.privileged.kind = PrivilegedPredicate::Kind::equals;
            cfg.privileged.value = p.at("value").get<std::string>();
        } else if (kind == "greater_than") {
            cfg.privileged.kind = PrivilegedPredicate::Kind::greater_than;
            cfg.privileged.threshold = p.at("threshold").get<double>();
        } else {
            throw ConfigError("task config: unknown privileged predicate kind '" + kind + "'");
        }
        cfg.categorical_columns = j.value("categorical_columns", std::vector<std::string>{});
        cfg.numeric_columns = j.value("numeric_columns", std::vector<std::string>{});
        if (j.contains("split_fractions")) {
            const auto f = j.at("split_fractions").get<std::vector<double>>();
            if (f.size() != 3) throw ConfigError("task config: split_fractions needs 3 entries");
            cfg.split_fractions = {f[0], f[1], f[2]};
        }
        cfg.split_seed = j.value("split_seed", std::uint64_t{0});
        if (j.contains("missing_values"))
            cfg.missing_values = j.at("missing_values").get<std::vector<std::string>>();
        cfg.validate();
        return cfg;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("task config " + path + ": " + e.what());
    }
}

}  // namespace fairtune
