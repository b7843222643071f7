#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace fairtune {

// A fully-connected stack with ReLU hidden activations and a scalar linear
// output, stored as one flat parameter vector. Layer l holds its weight
// matrix (dims[l+1] x dims[l], row-major) followed by its bias vector.
// The flat layout *is* the shape descriptor's flatten/unflatten contract.

std::size_t stack_param_count(const std::vector<std::size_t>& dims);

/// Throws ShapeError unless dims has >= 2 entries, a scalar output and
/// theta_len == stack_param_count(dims).
void validate_stack(const std::vector<std::size_t>& dims, std::size_t theta_len);

/// Forward pass for one input row. Fills `acts` with the post-activation
/// values of every layer (acts[0] = input copy) and returns the output
/// pre-activation; callers apply sigmoid or identity on top.
double stack_forward(const std::vector<std::size_t>& dims, const double* theta,
                     const double* x, std::vector<std::vector<double>>& acts);

/// Convenience forward without keeping activations.
double stack_forward(const std::vector<std::size_t>& dims, const double* theta,
                     const double* x);

/// Backprop for one input row: given d(loss)/d(output pre-activation) and the
/// activations saved by stack_forward, accumulates d(loss)/d(theta) into grad.
void stack_backward(const std::vector<std::size_t>& dims, const double* theta,
                    const std::vector<std::vector<double>>& acts, double dz, double* grad);

/// Adds the gradient of 0.5*l2*sum(W^2) (weights only, biases exempt).
void add_l2_weight_grad(const std::vector<std::size_t>& dims, const double* theta, double l2,
                        double* grad);

/// 0.5*l2*sum(W^2) over weight entries only.
double l2_weight_penalty(const std::vector<std::size_t>& dims, const double* theta, double l2);

/// Seeded init: each entry uniform in [-1/sqrt(fan_in), +1/sqrt(fan_in)].
std::vector<double> init_stack(const std::vector<std::size_t>& dims, std::mt19937_64& rng);

/// Numerically stable logistic function.
double sigmoid(double z);

}  // namespace fairtune
