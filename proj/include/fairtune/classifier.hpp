#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fairtune/dataset.hpp"
#include "fairtune/metrics.hpp"

namespace fairtune {

enum class ModelKind { lr, svm, nn };

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);

/// A classifier whose entire state is one flat parameter vector plus the
/// layer-shape descriptor interpreting it. LR and SVM are single linear
/// layers; NN stacks hidden layers of 64/32/16/8/4 ReLU units. LR/NN squash
/// scores through a sigmoid; SVM scores are raw signed margins.
struct ParamClassifier {
    ModelKind kind = ModelKind::lr;
    std::vector<std::size_t> dims;
    std::vector<double> theta;

    std::size_t feature_dim() const { return dims.empty() ? 0 : dims.front(); }
};

/// LR/SVM start at zero; NN parameters are seeded fan-in uniform.
ParamClassifier init_classifier(ModelKind kind, std::size_t feature_dim, std::uint64_t seed);

/// Scores for the selected rows (sigmoid outputs for LR/NN, margins for SVM).
std::vector<double> predict_scores(const ParamClassifier& clf, const Matrix& features,
                                   const std::vector<std::size_t>& idx);

/// Hard labels: LR/NN threshold the score at 0.5, SVM thresholds the margin
/// at 0; exact ties classify as favorable (1).
std::vector<int> predict_labels(const ParamClassifier& clf, const Matrix& features,
                                const std::vector<std::size_t>& idx);

/// Labels + scores + ground truth + group membership for one split.
PredictionBundle predict_bundle(const ParamClassifier& clf, const TaskDataset& dataset,
                                const std::vector<std::size_t>& idx);

struct TrainSettings {
    double learning_rate = 0.1;
    std::size_t epochs = 200;
    double l2 = 1e-4;
    std::size_t batch_size = 64;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Mini-batch gradient descent on the train split: cross-entropy for LR/NN,
/// hinge subgradient for SVM, plus an L2 weight penalty. Throws
/// DivergenceError (with epoch) when the full-train loss goes non-finite.
ParamClassifier train_base(const ParamClassifier& clf, const TaskDataset& dataset,
                           const TrainSettings& settings);

/// Mean training objective of `clf` over the given rows (matches what
/// train_base descends on).
double train_loss(const ParamClassifier& clf, const Matrix& features,
                  const std::vector<int>& labels, const std::vector<std::size_t>& idx,
                  double l2);

/// Analytic-vs-central-difference comparison (step 1e-5) of the training
/// loss gradient on up to `max_coords` random coordinates. Returns the max
/// relative error. Only meaningful for the differentiable losses (LR/NN).
double numeric_gradient_check(const ParamClassifier& clf, const Matrix& features,
                              const std::vector<int>& labels,
                              const std::vector<std::size_t>& idx, double l2,
                              std::size_t max_coords, std::uint64_t seed);

/// Versioned text serialization, round-trip exact to full precision.
void save_model(const ParamClassifier& clf, const std::string& path);
ParamClassifier load_model(const std::string& path);

}  // namespace fairtune
