#include "fairtune/policy.hpp"

#include <cmath>

#include "fairtune/errors.hpp"
#include "fairtune/mlp.hpp"
#include "fairtune/rng.hpp"

namespace fairtune {

namespace {

constexpr double kProbClamp = 1e-6;

// Shared element encoding: parameter value plus 0-based position fraction.
void element_input(const std::vector<double>& theta, std::size_t i, double x[2]) {
    x[0] = theta[i];
    x[1] = static_cast<double>(i) / static_cast<double>(theta.size());
}

}  // namespace

PolicyNet init_policy(std::uint64_t seed) {
    PolicyNet policy;
    std::mt19937_64 rng = substream(seed, "policy_init");
    policy.phi = init_stack(policy.dims, rng);
    return policy;
}

std::vector<double> action_probabilities(const PolicyNet& policy,
                                         const std::vector<double>& theta) {
    validate_stack(policy.dims, policy.phi.size());
    if (theta.empty()) throw ShapeError("policy input parameter vector is empty");
    std::vector<double> probs;
    probs.reserve(theta.size());
    double x[2];
    for (std::size_t i = 0; i < theta.size(); ++i) {
        element_input(theta, i, x);
        const double p = sigmoid(stack_forward(policy.dims, policy.phi.data(), x));
        probs.push_back(std::min(1.0 - kProbClamp, std::max(kProbClamp, p)));
    }
    return probs;
}

SampledAction sample_action(const PolicyNet& policy, const std::vector<double>& theta,
                            std::mt19937_64& rng) {
    const std::vector<double> probs = action_probabilities(policy, theta);
    SampledAction out;
    out.action.reserve(probs.size());
    for (double p : probs) {
        const bool plus = uniform_unit(rng) < p;
        out.action.push_back(plus ? 1 : -1);
        out.log_prob += std::log(plus ? p : 1.0 - p);
    }
    return out;
}

double action_log_prob(const PolicyNet& policy, const std::vector<double>& theta,
                       const std::vector<int>& action) {
    if (action.size() != theta.size())
        throw ShapeError("action length does not match parameter vector");
    const std::vector<double> probs = action_probabilities(policy, theta);
    double lp = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (action[i] != 1 && action[i] != -1)
            throw ConfigError("action entries must be -1 or +1");
        lp += std::log(action[i] == 1 ? probs[i] : 1.0 - probs[i]);
    }
    return lp;
}

void add_log_prob_grad(const PolicyNet& policy, const std::vector<double>& theta,
                       const std::vector<int>& action, double scale,
                       std::vector<double>& grad) {
    validate_stack(policy.dims, policy.phi.size());
    if (action.size() != theta.size())
        throw ShapeError("action length does not match parameter vector");
    if (grad.size() != policy.phi.size())
        throw ShapeError("gradient buffer does not match phi");

    std::vector<std::vector<double>> acts;
    double x[2];
    for (std::size_t i = 0; i < theta.size(); ++i) {
        element_input(theta, i, x);
        const double z = stack_forward(policy.dims, policy.phi.data(), x, acts);
        const double s = sigmoid(z);
        // The clamp flattens the probability, so clamped elements carry no
        // gradient — this keeps analytic and finite-difference views equal.
        if (s <= kProbClamp || s >= 1.0 - kProbClamp) continue;
        // d(log P(a))/dz: a=+1 -> 1-s, a=-1 -> -s.
        const double dz = action[i] == 1 ? 1.0 - s : -s;
        stack_backward(policy.dims, policy.phi.data(), acts, dz * scale, grad.data());
    }
}

}  // namespace fairtune
