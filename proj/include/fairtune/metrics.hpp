#pragma once

#include <cstdint>
#include <vector>

namespace fairtune {

/// Labels, hard predictions, ranking scores and group membership for one
/// evaluation set. All vectors share one length; labels/predicted/sensitive
/// are 0/1, scores are "larger = more favorable".
struct PredictionBundle {
    std::vector<int> labels;
    std::vector<int> predicted;
    std::vector<double> scores;
    std::vector<int> sensitive;

    std::size_t size() const { return labels.size(); }
    /// Throws ConfigError on mismatched lengths, emptiness or non-binary entries.
    void validate() const;
};

/// Confusion cells for one subgroup.
struct GroupCounts {
    std::int64_t tp = 0, fp = 0, fn = 0, tn = 0;

    std::int64_t positives() const { return tp + fn; }
    std::int64_t negatives() const { return fp + tn; }
    std::int64_t selected() const { return tp + fp; }
    std::int64_t total() const { return tp + fp + fn + tn; }
};

/// Subgroup rates backed by exact cell counts. Rate accessors return the
/// exact cell-count ratio; a rate whose denominator is zero throws
/// UndefinedMetricError instead of silently returning 0.
struct GroupRates {
    GroupCounts unpriv;  // Z = 0
    GroupCounts priv;    // Z = 1

    double tpr_u() const;
    double fpr_u() const;
    double fnr_u() const;
    double tpr_p() const;
    double fpr_p() const;
    double fnr_p() const;
    double sel_u() const;  // P[Yhat=1 | Z=0]
    double sel_p() const;  // P[Yhat=1 | Z=1]
};

/// The three subgroup rate gaps: a = FPR_u - FPR_p, b = FNR_u - FNR_p,
/// c = TPR_u - TPR_p. Computed over common integer numerators so that
/// b + c == 0 holds exactly in floating point.
struct RateDeltas {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

/// Tallies confusion cells per subgroup. Throws DataError when only one
/// subgroup is present.
GroupRates group_rates(const PredictionBundle& bundle);

RateDeltas rate_deltas(const GroupRates& rates);

// --- fairness metrics -------------------------------------------------------

/// Disparate impact: min(sel_u/sel_p, sel_p/sel_u) in [0,1].
/// Both selection rates zero -> 1; exactly one zero -> 0.
double di(const GroupRates& rates);

/// Statistical parity difference |sel_u - sel_p| in [0,1].
double spd(const GroupRates& rates);

/// Equal opportunity difference TPR_u - TPR_p in [-1,1].
double eod(const GroupRates& rates);

/// Average odds difference 0.5*[(FPR_u-FPR_p) + (TPR_u-TPR_p)] in [-1,1].
double aod(const GroupRates& rates);

/// Error rate difference (FPR_u+FNR_u) - (FPR_p+FNR_p) in [-2,2].
double erd(const GroupRates& rates);

/// Decoupled FPR-gap metric 1 - |FPR_u - FPR_p| in [0,1], 1 = fair.
double m_a(const GroupRates& rates);

/// Decoupled FNR-gap metric 1 - |FNR_u - FNR_p| in [0,1], 1 = fair.
double m_b(const GroupRates& rates);

// --- utility metrics --------------------------------------------------------

double accuracy(const PredictionBundle& bundle);

/// F1 = harmonic mean of precision and recall; 0 when precision+recall = 0.
double f1(const PredictionBundle& bundle);

/// Probability a random positive outscores a random negative, ties counted
/// 1/2 (rank statistic). Throws UndefinedMetricError on single-class labels.
double auc(const PredictionBundle& bundle);

}  // namespace fairtune
