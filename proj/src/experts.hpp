// Copyright 2026 The folio authors.
// License: Apache License 2.0

#ifndef FOLIO_EXPERTS_HPP
#define FOLIO_EXPERTS_HPP

#include <random>
#include <string>
#include <vector>

#include "online.hpp"

namespace folio {

/// Sleeping-experts weights: selection over awake experts proportional to
/// weight; an asleep expert's weight never changes.
struct SleepingExpertsState {
    std::vector<double> weights;  // strictly positive
    double beta = 0.5;            // in (0, 1)

    static SleepingExpertsState init(std::size_t num_experts, int horizon);
};

/// Samples an awake expert with probability proportional to its weight.
/// Throws std::invalid_argument on an empty awake set.
int sleeping_select(const SleepingExpertsState& state,
                    const std::vector<int>& awake, std::mt19937_64& rng);

/// Multiplicative update w <- w * beta^loss for awake experts, then rescales
/// the awake weights so their total is unchanged. Losses must be in [0, 1].
SleepingExpertsState sleeping_update(const SleepingExpertsState& state,
                                     const std::vector<int>& awake,
                                     const std::vector<double>& losses);

/// One online schedule learner per Boolean feature, with a sleeping-experts
/// layer deciding whose proposal to execute.
struct OgseState {
    std::vector<std::string> feature_names;
    SleepingExpertsState experts;
    std::vector<OnlineState> learners;  // one per feature
    Time cap = 1;
    double gamma = 0.0;
    std::mt19937_64 rng;

    static OgseState init(const std::vector<std::string>& feature_names,
                          std::size_t num_heuristics, const OnlineConfig& cfg);
};

struct OgseRound {
    Schedule executed;
    int chosen_expert = -1;
    Time charged_time = 0;
    Time exploration_time = 0;
    bool explored = false;
    std::vector<int> awake;       // expert indices awake this round
    std::vector<double> losses;   // aligned with awake
};

/// One OG^se round: awake learners propose schedules, the expert layer picks
/// one to execute, and on exploring rounds every awake learner is fed
/// per-slot rewards while the expert layer is fed (1/B) * capped expected
/// time of each proposal as loss.
OgseRound ogse_step(OgseState& state, const Instance& instance);

struct PerFeatureReport {
    struct Row {
        std::string feature;
        int n_instances = 0;
        double charged_time = 0.0;
        double greedy_benchmark = 0.0;  // 4 x offline greedy cost on X_j
        double ratio = 0.0;
    };
    std::vector<Row> rows;
    double total_charged = 0.0;
    double total_exploration = 0.0;
};

PerFeatureReport run_ogse(const std::vector<Instance>& stream,
                          const std::vector<std::string>& feature_universe,
                          std::size_t num_heuristics, const OnlineConfig& cfg);

struct FeaturesOnlyReport {
    struct Row {
        std::string instance_id;
        int chosen_heuristic = -1;
        Time charged_time = 0;       // one realized execution
        double expected_time = 0.0;  // analytic E[min{B, T}] of the choice
    };
    std::vector<Row> rows;                // one per test instance
    std::vector<int> advice;              // per feature: trained heuristic
    double avg_charged = 0.0;
};

/// The pure feature-based baseline: each feature's advice is the single
/// heuristic with the smallest capped average time on the training instances
/// where the feature is true; test instances run the heuristic advised by a
/// sleeping-experts selection over their true features. Expert weights are
/// trained on the training instances and frozen for the test phase.
FeaturesOnlyReport features_only_baseline(
    const std::vector<Instance>& train, const std::vector<Instance>& test,
    const std::vector<std::string>& feature_universe,
    std::size_t num_heuristics, Time cap, std::uint64_t seed);

}  // namespace folio

#endif  // FOLIO_EXPERTS_HPP
