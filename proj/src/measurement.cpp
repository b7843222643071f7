#include "fairtune/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "fairtune/errors.hpp"

namespace fairtune {

namespace {

std::map<std::string, MetricSpec> make_registry() {
    std::map<std::string, MetricSpec> reg;
    auto add = [&reg](const std::string& name, MetricKind kind, Monotonicity mono,
                      double lo, double hi, double ideal = 0.0) {
        reg[name] = MetricSpec{name, kind, mono, lo, hi, ideal};
    };
    add("di", MetricKind::fairness, Monotonicity::increasing, 0.0, 1.0);
    add("spd", MetricKind::fairness, Monotonicity::decreasing, 0.0, 1.0);
    add("eod", MetricKind::fairness, Monotonicity::non_monotonic, -1.0, 1.0, 0.0);
    add("aod", MetricKind::fairness, Monotonicity::non_monotonic, -1.0, 1.0, 0.0);
    add("erd", MetricKind::fairness, Monotonicity::non_monotonic, -2.0, 2.0, 0.0);
    add("m_a", MetricKind::fairness, Monotonicity::increasing, 0.0, 1.0);
    add("m_b", MetricKind::fairness, Monotonicity::increasing, 0.0, 1.0);
    add("acc", MetricKind::utility, Monotonicity::increasing, 0.0, 1.0);
    add("f1", MetricKind::utility, Monotonicity::increasing, 0.0, 1.0);
    add("auc", MetricKind::utility, Monotonicity::increasing, 0.0, 1.0);
    return reg;
}

constexpr double kRangeTolerance = 1e-9;

}  // namespace

const std::map<std::string, MetricSpec>& builtin_metrics() {
    static const std::map<std::string, MetricSpec> registry = make_registry();
    return registry;
}

const MetricSpec& metric_spec(const std::string& name) {
    const auto& reg = builtin_metrics();
    auto it = reg.find(name);
    if (it == reg.end()) throw ConfigError("unknown metric: " + name);
    return it->second;
}

double standardize(const MetricSpec& spec, double raw) {
    if (!std::isfinite(raw))
        throw MetricRangeError(spec.name, spec.name + " is not finite");
    double x = raw;
    if (x < spec.min || x > spec.max) {
        if (x >= spec.min - kRangeTolerance && x <= spec.max + kRangeTolerance)
            x = std::clamp(x, spec.min, spec.max);
        else
            throw MetricRangeError(spec.name,
                                   spec.name + " value " + std::to_string(raw) +
                                       " outside declared range");
    }
    const double width = spec.max - spec.min;
    switch (spec.monotonicity) {
        case Monotonicity::increasing:
            return (x - spec.min) / width;
        case Monotonicity::decreasing:
            return 1.0 - (x - spec.min) / width;
        case Monotonicity::non_monotonic:
            // Rise linearly to 1 at the ideal point, fall back to 0 at max.
            if (x <= spec.ideal) return (x - spec.min) / (spec.ideal - spec.min);
            return (x - spec.max) / (spec.ideal - spec.max);
    }
    throw ConfigError("unreachable monotonicity");
}

double comprehensive(const std::vector<ProcessedScore>& scores) {
    if (scores.empty()) throw ConfigError("comprehensive score over empty metric list");
    double sum = 0.0;
    for (const ProcessedScore& s : scores) sum += s.processed;
    return sum / static_cast<double>(scores.size());
}

double reward(double f_bar, double u_bar, double lambda) {
    return lambda * f_bar + (1.0 - lambda) * u_bar;
}

void MeasurementConfig::validate() const {
    if (fairness.empty()) throw ConfigError("reward requires at least one fairness metric");
    if (utility.empty()) throw ConfigError("reward requires at least one utility metric");
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw ConfigError("lambda must lie in [0,1]");
    std::set<std::string> seen;
    auto check = [&seen](const std::vector<std::string>& names, MetricKind kind) {
        for (const std::string& name : names) {
            const MetricSpec& spec = metric_spec(name);
            if (spec.kind != kind)
                throw ConfigError("metric " + name + " listed under the wrong reward term");
            if (!seen.insert(name).second)
                throw ConfigError("metric " + name + " listed twice");
        }
    };
    check(fairness, MetricKind::fairness);
    check(utility, MetricKind::utility);
}

double raw_metric(const std::string& name, const PredictionBundle& bundle) {
    if (name == "acc") return accuracy(bundle);
    if (name == "f1") return f1(bundle);
    if (name == "auc") return auc(bundle);
    const GroupRates rates = group_rates(bundle);
    if (name == "di") return di(rates);
    if (name == "spd") return spd(rates);
    if (name == "eod") return eod(rates);
    if (name == "aod") return aod(rates);
    if (name == "erd") return erd(rates);
    if (name == "m_a") return m_a(rates);
    if (name == "m_b") return m_b(rates);
    throw ConfigError("unknown metric: " + name);
}

Measurement measure(const PredictionBundle& bundle, const MeasurementConfig& config) {
    config.validate();
    Measurement out;
    auto eval = [&bundle](const std::vector<std::string>& names) {
        std::vector<ProcessedScore> scores;
        scores.reserve(names.size());
        for (const std::string& name : names) {
            ProcessedScore s;
            s.name = name;
            s.raw = raw_metric(name, bundle);
            s.processed = standardize(metric_spec(name), s.raw);
            scores.push_back(s);
        }
        return scores;
    };
    out.fairness = eval(config.fairness);
    out.utility = eval(config.utility);
    out.f_bar = comprehensive(out.fairness);
    out.u_bar = comprehensive(out.utility);
    out.reward = reward(out.f_bar, out.u_bar, config.lambda);
    return out;
}

}  // namespace fairtune
