#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fairtune/classifier.hpp"
#include "fairtune/dataset.hpp"
#include "fairtune/measurement.hpp"
#include "fairtune/policy.hpp"

namespace fairtune {

/// One transition of an episode: the parameters the action was sampled at,
/// the sampled direction vector, and the reward measured after applying it.
struct EpisodeStep {
    std::vector<double> theta;  // state the policy saw
    std::vector<int> action;    // entries exactly -1/+1
    double reward = 0.0;        // batch reward of the updated parameters
    double log_prob = 0.0;
    double f_bar = 0.0;         // batch fairness mean at the updated parameters
    double u_bar = 0.0;         // batch utility mean at the updated parameters
};

struct MitigationSettings {
    double lr = 0.01;              // parameter step size
    double scaling = 0.05;         // decay d in c(t) = 1/(1+d*t); 0 = constant
    std::size_t max_steps = 25;    // T
    double utility_floor = 0.9;    // stop when batch utility < floor * base utility
    std::size_t episodes = 40;     // E
    double policy_lr = 1e-3;
    double discount = 0.99;        // gamma
    double baseline_momentum = 0.9;
    std::size_t tuning_batch = 256;  // capped at |tune split|
    std::uint64_t seed = 0;

    void validate() const;
};

/// A retained trade-off point: parameters plus full-tune-split scores.
struct FrontierEntry {
    std::vector<double> theta;
    double f_bar = 0.0;
    double u_bar = 0.0;
};

/// Streaming non-dominated set over (u_bar, f_bar).
struct FrontierModel {
    std::vector<FrontierEntry> models;
};

/// Inserts the candidate unless an incumbent weakly dominates it (>= in both
/// scores); evicts incumbents the candidate strictly dominates. Returns
/// whether the candidate was retained.
bool update_frontier(FrontierModel& frontier, FrontierEntry candidate);

/// Indices (into frontier.models, ordered by ascending u_bar) of the
/// upper-right convex hull vertices; interior collinear points are dropped.
std::vector<std::size_t> upper_hull(const FrontierModel& frontier);

/// theta + action * lr * c(t) with c(t) = 1/(1 + d*t).
std::vector<double> apply_update(const std::vector<double>& theta,
                                 const std::vector<int>& action, double lr, std::size_t t,
                                 double d);

/// Exponential-moving-average return baseline shared across episodes.
struct BaselineState {
    double value = 0.0;
    double momentum = 0.9;
};

/// Per-step log line of one mitigation run.
struct StepRecord {
    std::size_t episode = 0;
    std::size_t t = 0;
    double reward = 0.0;   // batch reward
    double f_bar = 0.0;    // full-tune fairness of the visited parameters
    double u_bar = 0.0;    // full-tune utility of the visited parameters
};

struct MitigationResult {
    FrontierModel frontier;
    std::vector<StepRecord> steps;
    std::vector<double> episode_returns;  // undiscounted reward sums
    std::vector<std::string> diagnostics;
    double base_f_bar = 0.0;  // theta0 on the full tune split
    double base_u_bar = 0.0;
};

/// One episode from theta0: sample action, apply update, score a fresh
/// tuning batch; stop at max_steps or when batch utility drops below
/// utility_floor * base_u_bar. Degenerate batches are redrawn a bounded
/// number of times; persistent failure ends the episode with a diagnostic.
std::vector<EpisodeStep> run_episode(const ParamClassifier& clf, const TaskDataset& dataset,
                                     const MeasurementConfig& measurement,
                                     const MitigationSettings& settings,
                                     const PolicyNet& policy);

/// G_t = sum_{k>=t} gamma^(k-t) * r_k for every step t.
std::vector<double> discounted_returns(const std::vector<double>& rewards, double gamma);

/// REINFORCE step: returns-to-go with discount gamma, EMA-baselined
/// advantages, gradient ascent on sum_t adv_t * log pi(A_t | theta_t).
/// The baseline updates after use. Throws DivergenceError on non-finite
/// gradients.
void reinforce_update(PolicyNet& policy, const std::vector<EpisodeStep>& episode, double gamma,
                      BaselineState& baseline, double policy_lr);

/// Full loop: E episodes interleaving run_episode and reinforce_update,
/// streaming every visited model into the frontier (scored on the full tune
/// split). The frontier always contains theta0.
MitigationResult mitigate(const ParamClassifier& clf, const TaskDataset& dataset,
                          const MeasurementConfig& measurement,
                          const MitigationSettings& settings);

}  // namespace fairtune
