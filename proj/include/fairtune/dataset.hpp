#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fairtune/task_config.hpp"

namespace fairtune {

/// Dense row-major matrix of encoded features.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;  // rows * cols, row-major

    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    const double* row(std::size_t r) const { return data.data() + r * cols; }
};

/// Encoded, scaled, split dataset. Immutable after construction; safe to
/// share read-only across threads.
struct TaskDataset {
    Matrix features;                         // values in [0,1]
    std::vector<int> labels;                 // Y, 1 = favorable
    std::vector<int> sensitive;              // Z, 1 = privileged
    std::vector<std::size_t> train_idx;
    std::vector<std::size_t> tune_idx;
    std::vector<std::size_t> test_idx;
    std::vector<std::string> feature_names;  // one per encoded column
    std::size_t dropped_rows = 0;            // rows removed for missing values

    /// Throws DataError when any split misses a subgroup or label class,
    /// splits overlap, or feature values escape [0,1].
    void validate() const;
};

/// Shuffles 0..count-1 with the split substream of `seed` and cuts it into
/// floor(count*f_tune) tune rows, floor(count*f_test) test rows, and the
/// remainder as train. Throws DataError when any cut comes out empty.
void split(std::size_t count, const std::array<double, 3>& fractions, std::uint64_t seed,
           std::vector<std::size_t>& train_idx, std::vector<std::size_t>& tune_idx,
           std::vector<std::size_t>& test_idx);

/// Loads, encodes and splits one CSV per the task config. One-hot categories
/// use the sorted distinct values seen anywhere in the file; numeric columns
/// are min-max scaled on train-split statistics and clamped elsewhere.
TaskDataset load_csv(const std::string& path, const TaskConfig& config);

/// Uniform batch from the tune split that contains both subgroups and both
/// label classes, resampling up to a bounded retry count.
std::vector<std::size_t> subsample_tuning_batch(const TaskDataset& dataset,
                                                std::size_t batch_size,
                                                std::mt19937_64& rng);
std::vector<std::size_t> subsample_tuning_batch(const TaskDataset& dataset,
                                                std::size_t batch_size, std::uint64_t seed);

/// Parameters of the bundled synthetic generator: a latent qualification
/// score q drives the label through a sigmoid whose offset depends on group,
/// and the observable features are noisy views of q.
struct SyntheticSpec {
    std::size_t rows = 2000;
    // Label-odds offset: +shift for privileged, -shift for unprivileged.
    // ln(7/3) puts the favorable-label rate at 0.70 vs 0.30 for two equally
    // qualified rows from opposite groups.
    double label_shift = 0.8472978603872034;
    // Group offset of the qualification mean: q ~ N(+/-qual_shift, 1). Makes
    // the features group-informative, like real tabular fairness tasks.
    double qual_shift = 0.5;
    double noise_sd = 0.6;  // feature noise scale
    std::uint64_t seed = 1;
};

/// Renders the synthetic population as CSV text with header
/// group,f1,f2,outcome (group in {a,b}, b privileged; outcome in {no,yes}).
std::string synthetic_csv(const SyntheticSpec& spec);

/// TaskConfig matching synthetic_csv output.
TaskConfig synthetic_task_config(std::uint64_t split_seed);

}  // namespace fairtune
