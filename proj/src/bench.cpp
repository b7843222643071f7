#include "fairtune/bench.hpp"

#include <algorithm>
#include <cmath>

#include "fairtune/errors.hpp"
#include "fairtune/measurement.hpp"
#include "fairtune/rng.hpp"

namespace fairtune {

std::string to_string(Region region) {
    switch (region) {
        case Region::win_win: return "win-win";
        case Region::good: return "good";
        case Region::inverted: return "inverted";
        case Region::bad: return "bad";
        case Region::lose_lose: return "lose-lose";
    }
    throw ConfigError("unreachable region");
}

Region region_from_string(const std::string& name) {
    if (name == "win-win") return Region::win_win;
    if (name == "good") return Region::good;
    if (name == "inverted") return Region::inverted;
    if (name == "bad") return Region::bad;
    if (name == "lose-lose") return Region::lose_lose;
    throw ConfigError("unknown region: " + name);
}

std::vector<MetricPair> default_pairs() {
    std::vector<MetricPair> pairs;
    for (const char* u : {"acc", "f1", "auc"})
        for (const char* f : {"spd", "di", "eod", "aod", "erd"})
            pairs.push_back(MetricPair{u, f});
    return pairs;
}

double BaselineCurve::interpolate_f(double u) const {
    if (points.empty()) throw ConfigError("baseline curve has no points");
    if (u <= points.front()[0]) return points.front()[1];
    if (u >= points.back()[0]) return points.back()[1];
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (u > points[i][0]) continue;
        const double u0 = points[i - 1][0], f0 = points[i - 1][1];
        const double u1 = points[i][0], f1 = points[i][1];
        if (u1 == u0) return std::max(f0, f1);
        return f0 + (f1 - f0) * (u - u0) / (u1 - u0);
    }
    return points.back()[1];
}

namespace {

std::array<double, 2> processed_point(const PredictionBundle& bundle, const MetricPair& pair) {
    const double u = standardize(metric_spec(pair.utility), raw_metric(pair.utility, bundle));
    const double f =
        standardize(metric_spec(pair.fairness), raw_metric(pair.fairness, bundle));
    return {u, f};
}

}  // namespace

std::size_t mutation_count(std::size_t n, int degree_percent) {
    return (n * static_cast<std::size_t>(degree_percent) + 50) / 100;
}

BaselineCurve build_baseline(const PredictionBundle& original, const MetricPair& pair,
                             std::size_t repetitions, std::uint64_t seed) {
    original.validate();
    if (repetitions == 0) throw ConfigError("baseline needs at least one repetition");
    if (metric_spec(pair.utility).kind != MetricKind::utility ||
        metric_spec(pair.fairness).kind != MetricKind::fairness)
        throw ConfigError("metric pair axes are swapped or mis-kinded");

    BaselineCurve curve;
    curve.pair = pair;
    const std::array<double, 2> anchor = processed_point(original, pair);
    curve.anchor_u = anchor[0];
    curve.anchor_f = anchor[1];
    curve.label_scores_used = pair.utility == "auc";

    const std::size_t n = original.size();
    std::int64_t ones = 0;
    for (int p : original.predicted) ones += p;
    // Majority predicted class; an exact tie resolves to the favorable class.
    const int majority = 2 * ones >= static_cast<std::int64_t>(n) ? 1 : 0;

    std::mt19937_64 rng = substream(seed, "mutation");
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;

    curve.points.push_back(anchor);  // degree 0: the unmutated model, exactly
    for (int degree = 10; degree <= 100; degree += 10) {
        const std::size_t k = mutation_count(n, degree);
        double sum_u = 0.0, sum_f = 0.0;
        for (std::size_t rep = 0; rep < repetitions; ++rep) {
            PredictionBundle mutated = original;
            for (std::size_t i : sample_without_replacement(all, k, rng))
                mutated.predicted[i] = majority;
            // Mutated pseudo-models have no scores of their own; their
            // 0/1 predictions stand in as ranking scores (only auc reads them).
            for (std::size_t i = 0; i < n; ++i)
                mutated.scores[i] = static_cast<double>(mutated.predicted[i]);
            const std::array<double, 2> point = processed_point(mutated, pair);
            sum_u += point[0];
            sum_f += point[1];
        }
        const double reps = static_cast<double>(repetitions);
        curve.points.push_back({sum_u / reps, sum_f / reps});
    }
    std::sort(curve.points.begin(), curve.points.end(),
              [](const std::array<double, 2>& a, const std::array<double, 2>& b) {
                  return a[0] != b[0] ? a[0] < b[0] : a[1] < b[1];
              });
    return curve;
}

Region classify(double u, double f, const BaselineCurve& curve, bool* tie) {
    constexpr double kTieTol = 1e-12;
    const bool u_better = u > curve.anchor_u + kTieTol;
    const bool u_worse = u < curve.anchor_u - kTieTol;
    const bool f_better = f > curve.anchor_f + kTieTol;
    const bool f_worse = f < curve.anchor_f - kTieTol;
    if (tie) *tie = !((u_better || u_worse) && (f_better || f_worse));

    if (u_better && f_better) return Region::win_win;
    if (u_better && f_worse) return Region::inverted;
    if (u_worse && f_worse) return Region::lose_lose;
    if (u_worse && f_better)
        return f > curve.interpolate_f(u) + kTieTol ? Region::good : Region::bad;
    // Anchor-coordinate ties: documented fallback label.
    return Region::bad;
}

PairProportions aggregate_pair(const MetricPair& pair, const std::vector<Region>& labels) {
    if (labels.empty()) throw ConfigError("aggregate_pair over empty label list");
    PairProportions out;
    out.pair = pair;
    out.count = labels.size();
    for (Region r : labels) out.proportions[static_cast<std::size_t>(r)] += 1.0;
    for (double& p : out.proportions) p /= static_cast<double>(labels.size());
    return out;
}

std::array<double, kRegionCount> mean_proportions(const std::vector<PairProportions>& pairs) {
    if (pairs.empty()) throw ConfigError("mean_proportions over empty pair list");
    std::array<double, kRegionCount> mean = {};
    for (const PairProportions& p : pairs)
        for (std::size_t r = 0; r < kRegionCount; ++r) mean[r] += p.proportions[r];
    for (double& m : mean) m /= static_cast<double>(pairs.size());
    return mean;
}

}  // namespace fairtune
