#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "fairtune/metrics.hpp"

namespace fairtune {

/// Trade-off effectiveness of a mitigated model relative to the mutation
/// baseline of its original model.
enum class Region { win_win, good, inverted, bad, lose_lose };

constexpr std::size_t kRegionCount = 5;

std::string to_string(Region region);
Region region_from_string(const std::string& name);

/// One (utility metric, fairness metric) evaluation axis pair.
struct MetricPair {
    std::string utility;
    std::string fairness;

    std::string name() const { return utility + "-" + fairness; }
};

/// The 15 standard pairs: {acc, f1, auc} x {spd, di, eod, aod, erd}.
std::vector<MetricPair> default_pairs();

/// Trade-off baseline for one metric pair: the anchor (unmutated model) and
/// the mean mutated point per mutation degree 0%,10%,...,100%.
struct BaselineCurve {
    MetricPair pair;
    double anchor_u = 0.0;  // processed utility of the original model
    double anchor_f = 0.0;  // processed fairness of the original model
    std::vector<std::array<double, 2>> points;  // (u, f), sorted by u
    bool label_scores_used = false;  // auc on mutated points ranks by label

    /// Piecewise-linear fairness at utility u, clamped at the curve ends.
    double interpolate_f(double u) const;
};

/// Number of predictions replaced at a mutation degree: round(n * degree%).
std::size_t mutation_count(std::size_t n, int degree_percent);

/// Builds the mutation baseline: each repetition of degree k replaces a
/// uniform k% sample of predictions with the original model's majority
/// predicted class, re-measures both processed metrics, and the points are
/// averaged per degree. Degree 0 is the anchor itself.
BaselineCurve build_baseline(const PredictionBundle& original, const MetricPair& pair,
                             std::size_t repetitions, std::uint64_t seed);

/// Classifies a processed (u, f) point against the curve's anchor:
/// both better -> win-win; better u, worse f -> inverted; both worse ->
/// lose-lose; worse u, better f -> good when f strictly exceeds the
/// interpolated baseline, else bad. Coordinates within 1e-12 of the anchor
/// count as "not better": any tie classifies as bad (set *tie when given).
Region classify(double u, double f, const BaselineCurve& curve, bool* tie = nullptr);

/// Region shares for one metric pair (indexed by Region cast to size_t).
struct PairProportions {
    MetricPair pair;
    std::array<double, kRegionCount> proportions = {};
    std::size_t count = 0;
};

PairProportions aggregate_pair(const MetricPair& pair, const std::vector<Region>& labels);

/// Mean of per-pair proportions (the cross-pair summary row).
std::array<double, kRegionCount> mean_proportions(const std::vector<PairProportions>& pairs);

}  // namespace fairtune
