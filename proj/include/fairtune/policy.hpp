#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace fairtune {

/// Meta-optimizer policy: one small network shared across classifier
/// parameters. For parameter i it reads (theta_i, i/n) and emits the
/// probability of proposing action +1, so phi's size is independent of the
/// classifier being mitigated.
struct PolicyNet {
    std::vector<std::size_t> dims = {2, 16, 16, 1};
    std::vector<double> phi;
};

PolicyNet init_policy(std::uint64_t seed);

/// P(a_i = +1) per classifier parameter; sigmoid outputs clamped to
/// [1e-6, 1-1e-6]. Clamped entries contribute zero policy gradient.
std::vector<double> action_probabilities(const PolicyNet& policy,
                                         const std::vector<double>& theta);

struct SampledAction {
    std::vector<int> action;  // entries exactly -1 or +1
    double log_prob = 0.0;    // sum of per-entry log probabilities
};

SampledAction sample_action(const PolicyNet& policy, const std::vector<double>& theta,
                            std::mt19937_64& rng);

/// log pi(action | theta) under the current policy.
double action_log_prob(const PolicyNet& policy, const std::vector<double>& theta,
                       const std::vector<int>& action);

/// Accumulates d(log pi(action|theta))/d(phi) into grad (size = |phi|).
void add_log_prob_grad(const PolicyNet& policy, const std::vector<double>& theta,
                       const std::vector<int>& action, double scale, std::vector<double>& grad);

}  // namespace fairtune
