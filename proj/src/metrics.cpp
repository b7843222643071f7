#include "fairtune/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fairtune/errors.hpp"

namespace fairtune {

void PredictionBundle::validate() const {
    const std::size_t n = labels.size();
    if (n == 0) throw ConfigError("prediction bundle is empty");
    if (predicted.size() != n || scores.size() != n || sensitive.size() != n)
        throw ConfigError("prediction bundle vectors have mismatched lengths");
    for (std::size_t i = 0; i < n; ++i) {
        if ((labels[i] != 0 && labels[i] != 1) ||
            (predicted[i] != 0 && predicted[i] != 1) ||
            (sensitive[i] != 0 && sensitive[i] != 1))
            throw ConfigError("prediction bundle entries must be 0/1");
    }
}

namespace {

double ratio_or_throw(std::int64_t num, std::int64_t den, const std::string& name) {
    if (den == 0) throw UndefinedMetricError(name, name + " undefined: empty denominator group");
    return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

double GroupRates::tpr_u() const { return ratio_or_throw(unpriv.tp, unpriv.positives(), "tpr_u"); }
double GroupRates::fpr_u() const { return ratio_or_throw(unpriv.fp, unpriv.negatives(), "fpr_u"); }
double GroupRates::fnr_u() const { return ratio_or_throw(unpriv.fn, unpriv.positives(), "fnr_u"); }
double GroupRates::tpr_p() const { return ratio_or_throw(priv.tp, priv.positives(), "tpr_p"); }
double GroupRates::fpr_p() const { return ratio_or_throw(priv.fp, priv.negatives(), "fpr_p"); }
double GroupRates::fnr_p() const { return ratio_or_throw(priv.fn, priv.positives(), "fnr_p"); }
double GroupRates::sel_u() const { return ratio_or_throw(unpriv.selected(), unpriv.total(), "sel_u"); }
double GroupRates::sel_p() const { return ratio_or_throw(priv.selected(), priv.total(), "sel_p"); }

GroupRates group_rates(const PredictionBundle& bundle) {
    bundle.validate();
    GroupRates rates;
    for (std::size_t i = 0; i < bundle.size(); ++i) {
        GroupCounts& g = bundle.sensitive[i] == 1 ? rates.priv : rates.unpriv;
        if (bundle.labels[i] == 1)
            ++(bundle.predicted[i] == 1 ? g.tp : g.fn);
        else
            ++(bundle.predicted[i] == 1 ? g.fp : g.tn);
    }
    if (rates.unpriv.total() == 0 || rates.priv.total() == 0)
        throw DataError("prediction bundle covers only one subgroup");
    return rates;
}

RateDeltas rate_deltas(const GroupRates& rates) {
    const std::int64_t npos_u = rates.unpriv.positives();
    const std::int64_t npos_p = rates.priv.positives();
    const std::int64_t nneg_u = rates.unpriv.negatives();
    const std::int64_t nneg_p = rates.priv.negatives();
    if (npos_u == 0 || npos_p == 0)
        throw UndefinedMetricError("rate_deltas", "rate deltas undefined: a subgroup has no positives");
    if (nneg_u == 0 || nneg_p == 0)
        throw UndefinedMetricError("rate_deltas", "rate deltas undefined: a subgroup has no negatives");

    RateDeltas d;
    // Cross-multiplied integer numerators keep b and c exact negatives of
    // each other (FN = P - TP), so downstream identities hold bit-exactly.
    const double den_pos = static_cast<double>(npos_u) * static_cast<double>(npos_p);
    const double den_neg = static_cast<double>(nneg_u) * static_cast<double>(nneg_p);
    d.a = static_cast<double>(rates.unpriv.fp * nneg_p - rates.priv.fp * nneg_u) / den_neg;
    d.b = static_cast<double>(rates.unpriv.fn * npos_p - rates.priv.fn * npos_u) / den_pos;
    d.c = static_cast<double>(rates.unpriv.tp * npos_p - rates.priv.tp * npos_u) / den_pos;
    return d;
}

double di(const GroupRates& rates) {
    const double su = rates.sel_u();
    const double sp = rates.sel_p();
    if (su == 0.0 && sp == 0.0) return 1.0;
    if (su == 0.0 || sp == 0.0) return 0.0;
    return std::min(su / sp, sp / su);
}

double spd(const GroupRates& rates) { return std::fabs(rates.sel_u() - rates.sel_p()); }

double eod(const GroupRates& rates) { return rates.tpr_u() - rates.tpr_p(); }

double aod(const GroupRates& rates) {
    const RateDeltas d = rate_deltas(rates);
    return 0.5 * (d.a + d.c);
}

double erd(const GroupRates& rates) {
    const RateDeltas d = rate_deltas(rates);
    return d.a + d.b;
}

double m_a(const GroupRates& rates) { return 1.0 - std::fabs(rates.fpr_u() - rates.fpr_p()); }

double m_b(const GroupRates& rates) { return 1.0 - std::fabs(rates.fnr_u() - rates.fnr_p()); }

double accuracy(const PredictionBundle& bundle) {
    bundle.validate();
    std::int64_t correct = 0;
    for (std::size_t i = 0; i < bundle.size(); ++i)
        if (bundle.labels[i] == bundle.predicted[i]) ++correct;
    return static_cast<double>(correct) / static_cast<double>(bundle.size());
}

double f1(const PredictionBundle& bundle) {
    bundle.validate();
    std::int64_t tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < bundle.size(); ++i) {
        if (bundle.predicted[i] == 1)
            ++(bundle.labels[i] == 1 ? tp : fp);
        else if (bundle.labels[i] == 1)
            ++fn;
    }
    // 2tp / (2tp + fp + fn) is the harmonic mean of precision and recall and
    // stays well-defined when either alone has a zero denominator.
    const std::int64_t den = 2 * tp + fp + fn;
    if (den == 0) return 0.0;
    return static_cast<double>(2 * tp) / static_cast<double>(den);
}

double auc(const PredictionBundle& bundle) {
    bundle.validate();
    const std::size_t n = bundle.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return bundle.scores[x] < bundle.scores[y];
    });

    std::int64_t pos = 0;
    for (int y : bundle.labels) pos += y;
    const std::int64_t neg = static_cast<std::int64_t>(n) - pos;
    if (pos == 0 || neg == 0)
        throw UndefinedMetricError("auc", "auc undefined: labels contain a single class");

    // Doubled midrank statistic over integers: ranks within a tie block all
    // take twice the block's average rank, which is an integer. This keeps
    // the Mann-Whitney U exact, so AUC equals the pairwise win count exactly.
    std::int64_t rank2_pos_sum = 0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && bundle.scores[order[j]] == bundle.scores[order[i]]) ++j;
        // 1-based ranks i+1..j; doubled average = (i+1) + j.
        const std::int64_t rank2 = static_cast<std::int64_t>(i + 1 + j);
        for (std::size_t k = i; k < j; ++k)
            if (bundle.labels[order[k]] == 1) rank2_pos_sum += rank2;
        i = j;
    }
    const std::int64_t u2 = rank2_pos_sum - pos * (pos + 1);
    return static_cast<double>(u2) / (2.0 * static_cast<double>(pos) * static_cast<double>(neg));
}

}  // namespace fairtune
