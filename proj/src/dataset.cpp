#include "fairtune/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <set>
#include <string>

#include "fairtune/csv.hpp"
#include "fairtune/errors.hpp"
#include "fairtune/rng.hpp"

namespace fairtune {

namespace {

void check_split_population(const TaskDataset& ds, const std::vector<std::size_t>& idx,
                            const char* split_name) {
    bool z[2] = {false, false}, y[2] = {false, false};
    for (std::size_t i : idx) {
        z[ds.sensitive[i]] = true;
        y[ds.labels[i]] = true;
    }
    if (!z[0] || !z[1])
        throw DataError(std::string(split_name) + " split is missing a subgroup");
    if (!y[0] || !y[1])
        throw DataError(std::string(split_name) + " split is missing a label class");
}

double parse_numeric_cell(const std::string& cell, const std::string& column) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(cell, &pos);
        if (pos != cell.size()) throw std::invalid_argument(cell);
        return x;
    } catch (const std::exception&) {
        throw DataError("column " + column + ": cell '" + cell + "' is not numeric");
    }
}

}  // namespace

void TaskDataset::validate() const {
    const std::size_t n = features.rows;
    if (labels.size() != n || sensitive.size() != n)
        throw DataError("dataset vectors disagree with feature row count");
    std::vector<int> seen(n, 0);
    for (const auto* idx : {&train_idx, &tune_idx, &test_idx})
        for (std::size_t i : *idx) {
            if (i >= n) throw DataError("split index out of range");
            ++seen[i];
        }
    for (int c : seen)
        if (c != 1) throw DataError("split indices do not partition the rows");
    for (double v : features.data)
        if (!(v >= 0.0 && v <= 1.0)) throw DataError("feature value escapes [0,1]");
    check_split_population(*this, train_idx, "train");
    check_split_population(*this, tune_idx, "tune");
    check_split_population(*this, test_idx, "test");
}

void split(std::size_t count, const std::array<double, 3>& fractions, std::uint64_t seed,
           std::vector<std::size_t>& train_idx, std::vector<std::size_t>& tune_idx,
           std::vector<std::size_t>& test_idx) {
    const auto n_tune = static_cast<std::size_t>(
        std::floor(static_cast<double>(count) * fractions[1]));
    const auto n_test = static_cast<std::size_t>(
        std::floor(static_cast<double>(count) * fractions[2]));
    if (n_tune == 0 || n_test == 0 || n_tune + n_test >= count)
        throw DataError("split fractions produce an empty split");
    const std::size_t n_train = count - n_tune - n_test;

    std::mt19937_64 rng = substream(seed, "split");
    const std::vector<std::size_t> order = shuffled_indices(count, rng);
    train_idx.assign(order.begin(), order.begin() + n_train);
    tune_idx.assign(order.begin() + n_train, order.begin() + n_train + n_tune);
    test_idx.assign(order.begin() + n_train + n_tune, order.end());
    std::sort(train_idx.begin(), train_idx.end());
    std::sort(tune_idx.begin(), tune_idx.end());
    std::sort(test_idx.begin(), test_idx.end());
}

TaskDataset load_csv(const std::string& path, const TaskConfig& config) {
    config.validate();
    const CsvTable table = read_csv(path);

    std::vector<std::string> used_columns = {config.label_column, config.sensitive_column};
    used_columns.insert(used_columns.end(), config.categorical_columns.begin(),
                        config.categorical_columns.end());
    used_columns.insert(used_columns.end(), config.numeric_columns.begin(),
                        config.numeric_columns.end());
    std::map<std::string, std::size_t> col_index;
    for (const std::string& c : used_columns) col_index[c] = table.column(c);

    const std::set<std::string> missing(config.missing_values.begin(),
                                        config.missing_values.end());
    std::vector<std::size_t> kept;
    TaskDataset ds;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        bool drop = false;
        for (const std::string& c : used_columns)
            if (missing.count(table.rows[r][col_index[c]])) {
                drop = true;
                break;
            }
        if (drop)
            ++ds.dropped_rows;
        else
            kept.push_back(r);
    }
    if (kept.size() < 10) throw DataError("fewer than 10 usable rows in " + path);

    for (std::size_t r : kept) {
        ds.labels.push_back(table.rows[r][col_index[config.label_column]] ==
                                    config.favorable_value
                                ? 1
                                : 0);
        ds.sensitive.push_back(
            config.privileged.matches(table.rows[r][col_index[config.sensitive_column]]) ? 1
                                                                                         : 0);
    }

    // Category vocabularies come from every kept row (not just train) so the
    // encoded width is stable across split seeds.
    std::vector<std::vector<std::string>> vocab(config.categorical_columns.size());
    for (std::size_t c = 0; c < config.categorical_columns.size(); ++c) {
        std::set<std::string> values;
        const std::size_t col = col_index[config.categorical_columns[c]];
        for (std::size_t r : kept) values.insert(table.rows[r][col]);
        vocab[c].assign(values.begin(), values.end());
    }

    std::size_t width = config.numeric_columns.size();
    for (const auto& v : vocab) width += v.size();
    ds.features.rows = kept.size();
    ds.features.cols = width;
    ds.features.data.assign(kept.size() * width, 0.0);

    for (std::size_t c = 0; c < config.numeric_columns.size(); ++c)
        ds.feature_names.push_back(config.numeric_columns[c]);
    for (std::size_t c = 0; c < vocab.size(); ++c)
        for (const std::string& v : vocab[c])
            ds.feature_names.push_back(config.categorical_columns[c] + "=" + v);

    // Raw numeric pass first; scaling needs train statistics, which need the
    // split, which only depends on the kept-row count.
    for (std::size_t i = 0; i < kept.size(); ++i) {
        const auto& row = table.rows[kept[i]];
        for (std::size_t c = 0; c < config.numeric_columns.size(); ++c)
            ds.features.at(i, c) =
                parse_numeric_cell(row[col_index[config.numeric_columns[c]]],
                                   config.numeric_columns[c]);
        std::size_t base = config.numeric_columns.size();
        for (std::size_t c = 0; c < vocab.size(); ++c) {
            const std::string& cell = row[col_index[config.categorical_columns[c]]];
            const auto it = std::lower_bound(vocab[c].begin(), vocab[c].end(), cell);
            ds.features.at(i, base + static_cast<std::size_t>(it - vocab[c].begin())) = 1.0;
            base += vocab[c].size();
        }
    }

    split(kept.size(), config.split_fractions, config.split_seed, ds.train_idx, ds.tune_idx,
          ds.test_idx);

    for (std::size_t c = 0; c < config.numeric_columns.size(); ++c) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (std::size_t i : ds.train_idx) {
            lo = std::min(lo, ds.features.at(i, c));
            hi = std::max(hi, ds.features.at(i, c));
        }
        for (std::size_t i = 0; i < kept.size(); ++i) {
            double v = hi > lo ? (ds.features.at(i, c) - lo) / (hi - lo) : 0.0;
            ds.features.at(i, c) = std::clamp(v, 0.0, 1.0);
        }
    }

    ds.validate();
    return ds;
}

std::vector<std::size_t> subsample_tuning_batch(const TaskDataset& dataset,
                                                std::size_t batch_size,
                                                std::mt19937_64& rng) {
    if (batch_size == 0 || batch_size > dataset.tune_idx.size())
        throw ConfigError("tuning batch size must be in [1, |tune|]");
    constexpr int kMaxRetries = 64;
    for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
        std::vector<std::size_t> batch =
            sample_without_replacement(dataset.tune_idx, batch_size, rng);
        bool z[2] = {false, false}, y[2] = {false, false};
        for (std::size_t i : batch) {
            z[dataset.sensitive[i]] = true;
            y[dataset.labels[i]] = true;
        }
        if (z[0] && z[1] && y[0] && y[1]) {
            std::sort(batch.begin(), batch.end());
            return batch;
        }
    }
    throw DataError("could not draw a tuning batch covering both subgroups and classes");
}

std::vector<std::size_t> subsample_tuning_batch(const TaskDataset& dataset,
                                                std::size_t batch_size, std::uint64_t seed) {
    std::mt19937_64 rng = substream(seed, "batches");
    return subsample_tuning_batch(dataset, batch_size, rng);
}

std::string synthetic_csv(const SyntheticSpec& spec) {
    std::mt19937_64 rng = substream(spec.seed, "synthetic");
    std::string out = "group,f1,f2,outcome\n";
    char buf[128];
    for (std::size_t i = 0; i < spec.rows; ++i) {
        const bool privileged = uniform_unit(rng) < 0.5;
        const double q =
            normal_unit(rng) + (privileged ? spec.qual_shift : -spec.qual_shift);
        // On top of the qualification gap, the label odds themselves are
        // shifted by group: equally qualified rows from opposite groups see
        // favorable rates of sigma(q+s) vs sigma(q-s).
        const double shift = privileged ? spec.label_shift : -spec.label_shift;
        const double p_yes = 1.0 / (1.0 + std::exp(-(q + shift)));
        const bool yes = uniform_unit(rng) < p_yes;
        const double f1 = q + spec.noise_sd * normal_unit(rng);
        const double f2 = q + spec.noise_sd * normal_unit(rng);
        std::snprintf(buf, sizeof(buf), "%s,%.6f,%.6f,%s\n", privileged ? "b" : "a", f1, f2,
                      yes ? "yes" : "no");
        out += buf;
    }
    return out;
}

TaskConfig synthetic_task_config(std::uint64_t split_seed) {
    TaskConfig cfg;
    cfg.dataset_name = "synthetic";
    cfg.label_column = "outcome";
    cfg.favorable_value = "yes";
    cfg.sensitive_column = "group";
    cfg.privileged.kind = PrivilegedPredicate::Kind::equals;
    cfg.privileged.value = "b";
    cfg.numeric_columns = {"f1", "f2"};
    cfg.split_seed = split_seed;
    return cfg;
}

}  // namespace fairtune
