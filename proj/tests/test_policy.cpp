#include <doctest.h>

#include <cmath>
#include <vector>

#include "fairtune/mlp.hpp"
#include "fairtune/policy.hpp"
#include "fairtune/rng.hpp"

using namespace fairtune;

namespace {

/// Zeroed policy with only the output bias set: every element's probability
/// becomes sigmoid(bias) regardless of its (value, position) input.
PolicyNet constant_policy(double output_bias) {
    PolicyNet p;
    p.phi.assign(stack_param_count(p.dims), 0.0);
    p.phi.back() = output_bias;
    return p;
}

}  // namespace

TEST_CASE("policy initialization is seeded and sized by the architecture") {
    const PolicyNet a = init_policy(3);
    CHECK(a.dims == std::vector<std::size_t>{2, 16, 16, 1});
    CHECK(a.phi.size() == stack_param_count(a.dims));  // 337
    CHECK(a.phi.size() == 337);
    const PolicyNet b = init_policy(3);
    CHECK(a.phi == b.phi);
    const PolicyNet c = init_policy(4);
    CHECK(a.phi != c.phi);
}

TEST_CASE("zero parameters emit exactly one half everywhere") {
    const PolicyNet p = constant_policy(0.0);
    const std::vector<double> theta = {-2.0, 0.0, 0.5, 3.0};
    for (double prob : action_probabilities(p, theta)) CHECK(prob == 0.5);
    // log pi is n*ln(1/2) for every action at p = 1/2.
    const double lp = action_log_prob(p, theta, {1, -1, 1, -1});
    CHECK(lp == doctest::Approx(4.0 * std::log(0.5)).epsilon(1e-14));
    const double lp2 = action_log_prob(p, theta, {-1, -1, -1, -1});
    CHECK(lp == doctest::Approx(lp2).epsilon(1e-14));
}

TEST_CASE("saturated outputs clamp to the numerical guard") {
    const PolicyNet p = constant_policy(60.0);
    const std::vector<double> theta = {0.1, 0.2, 0.3};
    for (double prob : action_probabilities(p, theta)) CHECK(prob == 1.0 - 1e-6);

    std::mt19937_64 rng = substream(1, "sample");
    const SampledAction s = sample_action(p, theta, rng);
    CHECK(s.action == std::vector<int>{1, 1, 1});
    CHECK(s.log_prob == doctest::Approx(3.0 * std::log(1.0 - 1e-6)).epsilon(1e-9));
}

TEST_CASE("sampled actions are reproducible and agree with log_prob") {
    const PolicyNet p = init_policy(8);
    const std::vector<double> theta = {0.4, -0.2, 1.5, 0.0, -1.0};
    std::mt19937_64 r1 = substream(2, "sample");
    std::mt19937_64 r2 = substream(2, "sample");
    const SampledAction a = sample_action(p, theta, r1);
    const SampledAction b = sample_action(p, theta, r2);
    CHECK(a.action == b.action);
    CHECK(a.log_prob == b.log_prob);
    for (int v : a.action) CHECK(std::abs(v) == 1);
    CHECK(a.log_prob == action_log_prob(p, theta, a.action));
}

TEST_CASE("empirical action mean matches 2p-1") {
    // sigmoid(ln(0.7/0.3)) = 0.7 for every element.
    const PolicyNet p = constant_policy(std::log(0.7 / 0.3));
    const std::vector<double> theta(100, 0.25);
    for (double prob : action_probabilities(p, theta))
        CHECK(prob == doctest::Approx(0.7).epsilon(1e-12));

    std::mt19937_64 rng = substream(3, "sample");
    double sum = 0.0;
    for (int rep = 0; rep < 100; ++rep)
        for (int a : sample_action(p, theta, rng).action) sum += a;
    CHECK(sum / 10000.0 == doctest::Approx(0.4).epsilon(0.075));  // +-0.03 absolute
}

TEST_CASE("log-probability gradient matches finite differences") {
    PolicyNet p = init_policy(5);
    const std::vector<double> theta = {0.3, -0.7, 0.05};
    const std::vector<int> action = {1, -1, 1};

    std::vector<double> grad(p.phi.size(), 0.0);
    add_log_prob_grad(p, theta, action, 1.0, grad);

    const double h = 1e-6;
    double worst = 0.0;
    for (std::size_t i = 0; i < p.phi.size(); ++i) {
        const double keep = p.phi[i];
        p.phi[i] = keep + h;
        const double up = action_log_prob(p, theta, action);
        p.phi[i] = keep - h;
        const double down = action_log_prob(p, theta, action);
        p.phi[i] = keep;
        const double fd = (up - down) / (2.0 * h);
        const double rel = std::abs(grad[i] - fd) /
                           std::max({std::abs(grad[i]), std::abs(fd), 1e-8});
        worst = std::max(worst, rel);
    }
    CHECK(worst < 1e-4);
}

TEST_CASE("gradient scale factor is linear") {
    const PolicyNet p = init_policy(6);
    const std::vector<double> theta = {0.2, 0.9};
    const std::vector<int> action = {-1, 1};
    std::vector<double> unit(p.phi.size(), 0.0), scaled(p.phi.size(), 0.0);
    add_log_prob_grad(p, theta, action, 1.0, unit);
    add_log_prob_grad(p, theta, action, -2.5, scaled);
    for (std::size_t i = 0; i < unit.size(); ++i)
        CHECK(scaled[i] == doctest::Approx(-2.5 * unit[i]).epsilon(1e-12));
}

TEST_CASE("clamped elements contribute no gradient") {
    const PolicyNet p = constant_policy(60.0);  // all probabilities clamped
    std::vector<double> grad(p.phi.size(), 0.0);
    add_log_prob_grad(p, {0.5, -0.5}, {1, -1}, 1.0, grad);
    for (double g : grad) CHECK(g == 0.0);
}
