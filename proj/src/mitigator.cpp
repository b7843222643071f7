#include "fairtune/mitigator.hpp"

#include <algorithm>
#include <cmath>

#include "fairtune/errors.hpp"
#include "fairtune/rng.hpp"

namespace fairtune {

void MitigationSettings::validate() const {
    if (lr <= 0.0) throw ConfigError("mitigation lr must be positive");
    if (scaling < 0.0) throw ConfigError("scaling decay must be non-negative");
    if (!(utility_floor >= 0.0 && utility_floor <= 1.0))
        throw ConfigError("utility_floor must lie in [0,1]");
    if (!(discount > 0.0 && discount <= 1.0)) throw ConfigError("discount must lie in (0,1]");
    if (policy_lr < 0.0) throw ConfigError("policy_lr must be non-negative");
    if (!(baseline_momentum >= 0.0 && baseline_momentum < 1.0))
        throw ConfigError("baseline_momentum must lie in [0,1)");
    if (tuning_batch == 0) throw ConfigError("tuning_batch must be positive");
}

bool update_frontier(FrontierModel& frontier, FrontierEntry candidate) {
    for (const FrontierEntry& m : frontier.models)
        if (m.f_bar >= candidate.f_bar && m.u_bar >= candidate.u_bar) return false;
    std::erase_if(frontier.models, [&candidate](const FrontierEntry& m) {
        return candidate.f_bar >= m.f_bar && candidate.u_bar >= m.u_bar;
    });
    frontier.models.push_back(std::move(candidate));
    return true;
}

std::vector<std::size_t> upper_hull(const FrontierModel& frontier) {
    std::vector<std::size_t> order(frontier.models.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&frontier](std::size_t a, std::size_t b) {
        const FrontierEntry& p = frontier.models[a];
        const FrontierEntry& q = frontier.models[b];
        return p.u_bar != q.u_bar ? p.u_bar < q.u_bar : p.f_bar < q.f_bar;
    });

    // Monotone chain over (u, f); keep only strict right turns so collinear
    // interior points drop out. Non-dominated inputs make the chain the
    // upper-right hull face directly.
    constexpr double kCollinearTol = 1e-12;
    std::vector<std::size_t> hull;
    for (std::size_t idx : order) {
        const FrontierEntry& c = frontier.models[idx];
        while (hull.size() >= 2) {
            const FrontierEntry& a = frontier.models[hull[hull.size() - 2]];
            const FrontierEntry& b = frontier.models[hull[hull.size() - 1]];
            const double cross = (b.u_bar - a.u_bar) * (c.f_bar - a.f_bar) -
                                 (c.u_bar - a.u_bar) * (b.f_bar - a.f_bar);
            if (cross >= -kCollinearTol)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(idx);
    }
    return hull;
}

std::vector<double> apply_update(const std::vector<double>& theta,
                                 const std::vector<int>& action, double lr, std::size_t t,
                                 double d) {
    if (theta.size() != action.size())
        throw ShapeError("action length does not match parameter vector");
    const double step = lr / (1.0 + d * static_cast<double>(t));
    std::vector<double> out(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) {
        if (action[i] != 1 && action[i] != -1)
            throw ConfigError("action entries must be -1 or +1");
        out[i] = theta[i] + static_cast<double>(action[i]) * step;
    }
    return out;
}

namespace {

constexpr int kBatchMeasureRetries = 8;

// Batch reward with redraws when a metric comes out undefined on the draw.
bool measure_on_batch(const ParamClassifier& clf, const TaskDataset& dataset,
                      const MeasurementConfig& measurement, std::size_t batch_size,
                      std::mt19937_64& batch_rng, Measurement& out, std::string& error) {
    for (int attempt = 0; attempt < kBatchMeasureRetries; ++attempt) {
        const std::vector<std::size_t> batch =
            subsample_tuning_batch(dataset, batch_size, batch_rng);
        try {
            out = measure(predict_bundle(clf, dataset, batch), measurement);
            return true;
        } catch (const UndefinedMetricError& e) {
            error = e.what();
        }
    }
    return false;
}

struct EpisodeOutcome {
    std::vector<EpisodeStep> steps;
    std::vector<ParamClassifier> visited;  // parallel to steps
    std::string diagnostic;                // nonempty when aborted early
};

EpisodeOutcome run_episode_impl(const ParamClassifier& clf, const TaskDataset& dataset,
                                const MeasurementConfig& measurement,
                                const MitigationSettings& settings, const PolicyNet& policy,
                                double base_u_bar, std::mt19937_64& action_rng,
                                std::mt19937_64& batch_rng) {
    const std::size_t batch_size = std::min(settings.tuning_batch, dataset.tune_idx.size());
    EpisodeOutcome out;
    ParamClassifier current = clf;
    for (std::size_t t = 0; t < settings.max_steps; ++t) {
        const SampledAction sampled = sample_action(policy, current.theta, action_rng);
        ParamClassifier next = current;
        next.theta =
            apply_update(current.theta, sampled.action, settings.lr, t, settings.scaling);

        Measurement meas;
        std::string error;
        if (!measure_on_batch(next, dataset, measurement, batch_size, batch_rng, meas,
                              error)) {
            out.diagnostic = "episode aborted at step " + std::to_string(t) +
                             ": tuning batches kept a metric undefined (" + error + ")";
            break;
        }

        EpisodeStep step;
        step.theta = current.theta;
        step.action = sampled.action;
        step.log_prob = sampled.log_prob;
        step.reward = meas.reward;
        step.f_bar = meas.f_bar;
        step.u_bar = meas.u_bar;
        out.steps.push_back(std::move(step));
        out.visited.push_back(next);

        current = std::move(next);
        if (meas.u_bar < settings.utility_floor * base_u_bar) break;
    }
    return out;
}

Measurement measure_full_tune(const ParamClassifier& clf, const TaskDataset& dataset,
                              const MeasurementConfig& measurement) {
    return measure(predict_bundle(clf, dataset, dataset.tune_idx), measurement);
}

}  // namespace

std::vector<EpisodeStep> run_episode(const ParamClassifier& clf, const TaskDataset& dataset,
                                     const MeasurementConfig& measurement,
                                     const MitigationSettings& settings,
                                     const PolicyNet& policy) {
    measurement.validate();
    settings.validate();
    const Measurement base = measure_full_tune(clf, dataset, measurement);
    std::mt19937_64 action_rng = substream(settings.seed, "policy");
    std::mt19937_64 batch_rng = substream(settings.seed, "batches");
    return run_episode_impl(clf, dataset, measurement, settings, policy, base.u_bar,
                            action_rng, batch_rng)
        .steps;
}

std::vector<double> discounted_returns(const std::vector<double>& rewards, double gamma) {
    std::vector<double> returns(rewards.size());
    double g = 0.0;
    for (std::size_t t = rewards.size(); t-- > 0;) {
        g = rewards[t] + gamma * g;
        returns[t] = g;
    }
    return returns;
}

void reinforce_update(PolicyNet& policy, const std::vector<EpisodeStep>& episode, double gamma,
                      BaselineState& baseline, double policy_lr) {
    if (episode.empty()) throw ConfigError("reinforce_update needs a nonempty episode");

    std::vector<double> rewards(episode.size());
    for (std::size_t t = 0; t < episode.size(); ++t) rewards[t] = episode[t].reward;
    const std::vector<double> returns = discounted_returns(rewards, gamma);

    std::vector<double> grad(policy.phi.size(), 0.0);
    double return_sum = 0.0;
    for (std::size_t t = 0; t < episode.size(); ++t) {
        const double advantage = returns[t] - baseline.value;
        return_sum += returns[t];
        if (advantage != 0.0)
            add_log_prob_grad(policy, episode[t].theta, episode[t].action, advantage, grad);
    }
    for (double gval : grad)
        if (!std::isfinite(gval))
            throw DivergenceError(-1, "policy gradient became non-finite");

    for (std::size_t i = 0; i < policy.phi.size(); ++i)
        policy.phi[i] += policy_lr * grad[i];

    // EMA over the mean episode return; updated only after it was used.
    const double mean_return = return_sum / static_cast<double>(episode.size());
    baseline.value =
        baseline.momentum * baseline.value + (1.0 - baseline.momentum) * mean_return;
}

MitigationResult mitigate(const ParamClassifier& clf, const TaskDataset& dataset,
                          const MeasurementConfig& measurement,
                          const MitigationSettings& settings) {
    measurement.validate();
    settings.validate();

    MitigationResult result;
    const Measurement base = measure_full_tune(clf, dataset, measurement);
    result.base_f_bar = base.f_bar;
    result.base_u_bar = base.u_bar;
    update_frontier(result.frontier, FrontierEntry{clf.theta, base.f_bar, base.u_bar});

    PolicyNet policy = init_policy(settings.seed);
    BaselineState baseline;
    baseline.momentum = settings.baseline_momentum;
    std::mt19937_64 action_rng = substream(settings.seed, "policy");
    std::mt19937_64 batch_rng = substream(settings.seed, "batches");

    for (std::size_t e = 0; e < settings.episodes; ++e) {
        EpisodeOutcome episode =
            run_episode_impl(clf, dataset, measurement, settings, policy, base.u_bar,
                             action_rng, batch_rng);
        if (!episode.diagnostic.empty())
            result.diagnostics.push_back("episode " + std::to_string(e) + ": " +
                                         episode.diagnostic);

        double return_sum = 0.0;
        for (std::size_t t = 0; t < episode.steps.size(); ++t) {
            return_sum += episode.steps[t].reward;
            StepRecord rec;
            rec.episode = e;
            rec.t = t;
            rec.reward = episode.steps[t].reward;
            try {
                const Measurement tune =
                    measure_full_tune(episode.visited[t], dataset, measurement);
                rec.f_bar = tune.f_bar;
                rec.u_bar = tune.u_bar;
                update_frontier(result.frontier, FrontierEntry{episode.visited[t].theta,
                                                               tune.f_bar, tune.u_bar});
            } catch (const UndefinedMetricError& err) {
                rec.f_bar = rec.u_bar = std::nan("");
                result.diagnostics.push_back("episode " + std::to_string(e) + " step " +
                                             std::to_string(t) +
                                             ": tune-split score undefined (" + err.what() +
                                             "), model not offered to frontier");
            }
            result.steps.push_back(rec);
        }
        result.episode_returns.push_back(return_sum);

        if (!episode.steps.empty())
            reinforce_update(policy, episode.steps, settings.discount, baseline,
                             settings.policy_lr);
    }
    return result;
}

}  // namespace fairtune
