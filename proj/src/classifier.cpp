#include "fairtune/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fairtune/csv.hpp"
#include "fairtune/errors.hpp"
#include "fairtune/mlp.hpp"
#include "fairtune/rng.hpp"

namespace fairtune {

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::lr: return "lr";
        case ModelKind::svm: return "svm";
        case ModelKind::nn: return "nn";
    }
    throw ConfigError("unreachable model kind");
}

ModelKind model_kind_from_string(const std::string& name) {
    if (name == "lr") return ModelKind::lr;
    if (name == "svm") return ModelKind::svm;
    if (name == "nn") return ModelKind::nn;
    throw ConfigError("unknown model kind: " + name);
}

ParamClassifier init_classifier(ModelKind kind, std::size_t feature_dim, std::uint64_t seed) {
    if (feature_dim == 0) throw ShapeError("classifier needs at least one feature");
    ParamClassifier clf;
    clf.kind = kind;
    if (kind == ModelKind::nn)
        clf.dims = {feature_dim, 64, 32, 16, 8, 4, 1};
    else
        clf.dims = {feature_dim, 1};
    if (kind == ModelKind::nn) {
        std::mt19937_64 rng = substream(seed, "model_init");
        clf.theta = init_stack(clf.dims, rng);
    } else {
        clf.theta.assign(stack_param_count(clf.dims), 0.0);
    }
    return clf;
}

namespace {

void check_width(const ParamClassifier& clf, const Matrix& features) {
    validate_stack(clf.dims, clf.theta.size());
    if (features.cols != clf.feature_dim())
        throw ShapeError("feature width does not match classifier input dim");
}

}  // namespace

std::vector<double> predict_scores(const ParamClassifier& clf, const Matrix& features,
                                   const std::vector<std::size_t>& idx) {
    check_width(clf, features);
    std::vector<double> scores;
    scores.reserve(idx.size());
    for (std::size_t r : idx) {
        const double z = stack_forward(clf.dims, clf.theta.data(), features.row(r));
        scores.push_back(clf.kind == ModelKind::svm ? z : sigmoid(z));
    }
    return scores;
}

std::vector<int> predict_labels(const ParamClassifier& clf, const Matrix& features,
                                const std::vector<std::size_t>& idx) {
    const std::vector<double> scores = predict_scores(clf, features, idx);
    const double threshold = clf.kind == ModelKind::svm ? 0.0 : 0.5;
    std::vector<int> labels;
    labels.reserve(scores.size());
    for (double s : scores) labels.push_back(s >= threshold ? 1 : 0);
    return labels;
}

PredictionBundle predict_bundle(const ParamClassifier& clf, const TaskDataset& dataset,
                                const std::vector<std::size_t>& idx) {
    PredictionBundle b;
    b.scores = predict_scores(clf, dataset.features, idx);
    const double threshold = clf.kind == ModelKind::svm ? 0.0 : 0.5;
    b.predicted.reserve(idx.size());
    for (double s : b.scores) b.predicted.push_back(s >= threshold ? 1 : 0);
    b.labels.reserve(idx.size());
    b.sensitive.reserve(idx.size());
    for (std::size_t r : idx) {
        b.labels.push_back(dataset.labels[r]);
        b.sensitive.push_back(dataset.sensitive[r]);
    }
    return b;
}

void TrainSettings::validate() const {
    if (learning_rate <= 0.0) throw ConfigError("learning_rate must be positive");
    if (l2 < 0.0) throw ConfigError("l2 must be non-negative");
    if (batch_size == 0) throw ConfigError("batch_size must be positive");
}

namespace {

// Per-sample objective and d(loss)/d(output pre-activation).
// LR/NN: stable binary cross-entropy on the logit. SVM: hinge on y in {-1,+1}.
double sample_loss(ModelKind kind, double z, int y) {
    if (kind == ModelKind::svm) {
        const double margin = (y == 1 ? 1.0 : -1.0) * z;
        return std::max(0.0, 1.0 - margin);
    }
    return std::max(z, 0.0) - z * y + std::log1p(std::exp(-std::fabs(z)));
}

double sample_dz(ModelKind kind, double z, int y) {
    if (kind == ModelKind::svm) {
        const double sign = y == 1 ? 1.0 : -1.0;
        return sign * z < 1.0 ? -sign : 0.0;
    }
    return sigmoid(z) - y;
}

// Mean objective gradient over `rows`, including the L2 term.
void batch_gradient(const ParamClassifier& clf, const Matrix& features,
                    const std::vector<int>& labels, const std::vector<std::size_t>& rows,
                    double l2, std::vector<double>& grad) {
    grad.assign(clf.theta.size(), 0.0);
    std::vector<std::vector<double>> acts;
    const double inv = 1.0 / static_cast<double>(rows.size());
    for (std::size_t r : rows) {
        const double z = stack_forward(clf.dims, clf.theta.data(), features.row(r), acts);
        const double dz = sample_dz(clf.kind, z, labels[r]) * inv;
        if (dz != 0.0) stack_backward(clf.dims, clf.theta.data(), acts, dz, grad.data());
    }
    add_l2_weight_grad(clf.dims, clf.theta.data(), l2, grad.data());
}

}  // namespace

double train_loss(const ParamClassifier& clf, const Matrix& features,
                  const std::vector<int>& labels, const std::vector<std::size_t>& idx,
                  double l2) {
    check_width(clf, features);
    if (idx.empty()) throw ConfigError("train_loss over empty index set");
    double sum = 0.0;
    for (std::size_t r : idx)
        sum += sample_loss(clf.kind, stack_forward(clf.dims, clf.theta.data(), features.row(r)),
                           labels[r]);
    return sum / static_cast<double>(idx.size()) +
           l2_weight_penalty(clf.dims, clf.theta.data(), l2);
}

ParamClassifier train_base(const ParamClassifier& clf, const TaskDataset& dataset,
                           const TrainSettings& settings) {
    settings.validate();
    check_width(clf, dataset.features);
    if (dataset.train_idx.empty()) throw DataError("train split is empty");

    ParamClassifier out = clf;
    std::mt19937_64 rng = substream(settings.seed, "train");
    std::vector<double> grad;
    std::vector<std::size_t> order = dataset.train_idx;
    for (std::size_t epoch = 0; epoch < settings.epochs; ++epoch) {
        const std::vector<std::size_t> perm = shuffled_indices(order.size(), rng);
        for (std::size_t start = 0; start < order.size(); start += settings.batch_size) {
            const std::size_t stop = std::min(start + settings.batch_size, order.size());
            std::vector<std::size_t> rows;
            rows.reserve(stop - start);
            for (std::size_t k = start; k < stop; ++k) rows.push_back(order[perm[k]]);
            batch_gradient(out, dataset.features, dataset.labels, rows, settings.l2, grad);
            for (std::size_t i = 0; i < out.theta.size(); ++i)
                out.theta[i] -= settings.learning_rate * grad[i];
        }
        const double loss =
            train_loss(out, dataset.features, dataset.labels, dataset.train_idx, settings.l2);
        if (!std::isfinite(loss))
            throw DivergenceError(static_cast<int>(epoch),
                                  "training loss became non-finite at epoch " +
                                      std::to_string(epoch));
    }
    return out;
}

double numeric_gradient_check(const ParamClassifier& clf, const Matrix& features,
                              const std::vector<int>& labels,
                              const std::vector<std::size_t>& idx, double l2,
                              std::size_t max_coords, std::uint64_t seed) {
    std::vector<double> grad;
    batch_gradient(clf, features, labels, idx, l2, grad);

    std::mt19937_64 rng = substream(seed, "grad_check");
    std::vector<std::size_t> coords(clf.theta.size());
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = i;
    if (coords.size() > max_coords)
        coords = sample_without_replacement(coords, max_coords, rng);

    constexpr double kStep = 1e-5;
    ParamClassifier probe = clf;
    double worst = 0.0;
    for (std::size_t c : coords) {
        const double saved = probe.theta[c];
        probe.theta[c] = saved + kStep;
        const double up = train_loss(probe, features, labels, idx, l2);
        probe.theta[c] = saved - kStep;
        const double down = train_loss(probe, features, labels, idx, l2);
        probe.theta[c] = saved;
        const double fd = (up - down) / (2.0 * kStep);
        const double rel =
            std::fabs(grad[c] - fd) / std::max({std::fabs(grad[c]), std::fabs(fd), 1e-8});
        worst = std::max(worst, rel);
    }
    return worst;
}

void save_model(const ParamClassifier& clf, const std::string& path) {
    validate_stack(clf.dims, clf.theta.size());
    std::ostringstream out;
    out << "fairtune-model v1\n";
    out << "kind " << to_string(clf.kind) << "\n";
    out << "dims";
    for (std::size_t d : clf.dims) out << " " << d;
    out << "\ntheta " << clf.theta.size() << "\n";
    char buf[40];
    for (double v : clf.theta) {
        std::snprintf(buf, sizeof(buf), "%.17g\n", v);
        out << buf;
    }
    write_file_atomic(path, out.str());
}

ParamClassifier load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open model file: " + path);
    std::string word;
    auto fail = [&path](const std::string& why) {
        throw IoError("model file " + path + ": " + why);
    };

    std::string magic, version;
    if (!(in >> magic >> version) || magic != "fairtune-model" || version != "v1")
        fail("bad header");
    ParamClassifier clf;
    if (!(in >> word) || word != "kind") fail("missing kind");
    if (!(in >> word)) fail("missing kind value");
    clf.kind = model_kind_from_string(word);
    if (!(in >> word) || word != "dims") fail("missing dims");
    // dims run until the "theta" sentinel.
    while (in >> word && word != "theta") {
        try {
            clf.dims.push_back(std::stoul(word));
        } catch (const std::exception&) {
            fail("bad dim value '" + word + "'");
        }
    }
    if (word != "theta") fail("missing theta");
    std::size_t count = 0;
    if (!(in >> count)) fail("missing theta count");
    clf.theta.resize(count);
    for (std::size_t i = 0; i < count; ++i)
        if (!(in >> clf.theta[i])) fail("truncated theta");
    validate_stack(clf.dims, clf.theta.size());
    return clf;
}

}  // namespace fairtune
