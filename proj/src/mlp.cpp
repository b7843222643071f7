#include "fairtune/mlp.hpp"

#include <cmath>

#include "fairtune/errors.hpp"
#include "fairtune/rng.hpp"

namespace fairtune {

std::size_t stack_param_count(const std::vector<std::size_t>& dims) {
    std::size_t count = 0;
    for (std::size_t l = 0; l + 1 < dims.size(); ++l)
        count += dims[l] * dims[l + 1] + dims[l + 1];
    return count;
}

void validate_stack(const std::vector<std::size_t>& dims, std::size_t theta_len) {
    if (dims.size() < 2) throw ShapeError("layer stack needs at least input and output dims");
    for (std::size_t d : dims)
        if (d == 0) throw ShapeError("layer stack has a zero-width layer");
    if (dims.back() != 1) throw ShapeError("layer stack output must be scalar");
    if (theta_len != stack_param_count(dims))
        throw ShapeError("parameter vector length does not match layer dims");
}

double stack_forward(const std::vector<std::size_t>& dims, const double* theta,
                     const double* x, std::vector<std::vector<double>>& acts) {
    const std::size_t layers = dims.size() - 1;
    acts.resize(layers + 1);
    acts[0].assign(x, x + dims[0]);

    std::size_t offset = 0;
    double out = 0.0;
    for (std::size_t l = 0; l < layers; ++l) {
        const std::size_t in_dim = dims[l], out_dim = dims[l + 1];
        const double* w = theta + offset;
        const double* b = theta + offset + in_dim * out_dim;
        acts[l + 1].assign(out_dim, 0.0);
        for (std::size_t o = 0; o < out_dim; ++o) {
            double z = b[o];
            const double* wrow = w + o * in_dim;
            for (std::size_t i = 0; i < in_dim; ++i) z += wrow[i] * acts[l][i];
            if (l + 1 == layers)
                out = z;  // linear output, caller activates
            else
                acts[l + 1][o] = z > 0.0 ? z : 0.0;
        }
        offset += in_dim * out_dim + out_dim;
    }
    return out;
}

double stack_forward(const std::vector<std::size_t>& dims, const double* theta,
                     const double* x) {
    std::vector<std::vector<double>> acts;
    return stack_forward(dims, theta, x, acts);
}

void stack_backward(const std::vector<std::size_t>& dims, const double* theta,
                    const std::vector<std::vector<double>>& acts, double dz, double* grad) {
    const std::size_t layers = dims.size() - 1;
    std::vector<std::size_t> offsets(layers);
    std::size_t offset = 0;
    for (std::size_t l = 0; l < layers; ++l) {
        offsets[l] = offset;
        offset += dims[l] * dims[l + 1] + dims[l + 1];
    }

    // delta = d(loss)/d(pre-activation) of the current layer.
    std::vector<double> delta = {dz};
    for (std::size_t l = layers; l-- > 0;) {
        const std::size_t in_dim = dims[l], out_dim = dims[l + 1];
        const double* w = theta + offsets[l];
        double* gw = grad + offsets[l];
        double* gb = gw + in_dim * out_dim;
        for (std::size_t o = 0; o < out_dim; ++o) {
            gb[o] += delta[o];
            double* grow = gw + o * in_dim;
            for (std::size_t i = 0; i < in_dim; ++i) grow[i] += delta[o] * acts[l][i];
        }
        if (l == 0) break;
        std::vector<double> prev(in_dim, 0.0);
        for (std::size_t i = 0; i < in_dim; ++i) {
            if (acts[l][i] <= 0.0) continue;  // ReLU gate (acts holds post-ReLU)
            double sum = 0.0;
            for (std::size_t o = 0; o < out_dim; ++o) sum += w[o * in_dim + i] * delta[o];
            prev[i] = sum;
        }
        delta = std::move(prev);
    }
}

void add_l2_weight_grad(const std::vector<std::size_t>& dims, const double* theta, double l2,
                        double* grad) {
    if (l2 == 0.0) return;
    std::size_t offset = 0;
    for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
        const std::size_t n_w = dims[l] * dims[l + 1];
        for (std::size_t i = 0; i < n_w; ++i) grad[offset + i] += l2 * theta[offset + i];
        offset += n_w + dims[l + 1];
    }
}

double l2_weight_penalty(const std::vector<std::size_t>& dims, const double* theta, double l2) {
    if (l2 == 0.0) return 0.0;
    double sum = 0.0;
    std::size_t offset = 0;
    for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
        const std::size_t n_w = dims[l] * dims[l + 1];
        for (std::size_t i = 0; i < n_w; ++i) sum += theta[offset + i] * theta[offset + i];
        offset += n_w + dims[l + 1];
    }
    return 0.5 * l2 * sum;
}

std::vector<double> init_stack(const std::vector<std::size_t>& dims, std::mt19937_64& rng) {
    std::vector<double> theta(stack_param_count(dims));
    std::size_t offset = 0;
    for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
        const double bound = 1.0 / std::sqrt(static_cast<double>(dims[l]));
        const std::size_t n = dims[l] * dims[l + 1] + dims[l + 1];
        for (std::size_t i = 0; i < n; ++i)
            theta[offset + i] = (2.0 * uniform_unit(rng) - 1.0) * bound;
        offset += n;
    }
    return theta;
}

double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

}  // namespace fairtune
