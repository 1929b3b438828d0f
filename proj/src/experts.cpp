// Copyright 2026 The folio authors.
// License: Apache License 2.0

#include "experts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "greedy.hpp"

namespace folio {

SleepingExpertsState SleepingExpertsState::init(std::size_t num_experts,
                                                int horizon) {
    if (num_experts == 0) throw std::invalid_argument("no experts");
    SleepingExpertsState st;
    st.weights.assign(num_experts, 1.0 / static_cast<double>(num_experts));
    st.beta =
        num_experts >= 2
            ? 1.0 / (1.0 + std::sqrt(2.0 * std::log(double(num_experts)) /
                                     std::max(1, horizon)))
            : 0.5;  // single expert: update is a no-op after rescaling
    return st;
}

int sleeping_select(const SleepingExpertsState& state,
                    const std::vector<int>& awake, std::mt19937_64& rng) {
    if (awake.empty()) throw std::invalid_argument("empty awake set");
    double total = 0.0;
    for (int j : awake) total += state.weights[j];
    const double u = std::uniform_real_distribution<double>(0.0, total)(rng);
    double acc = 0.0;
    for (int j : awake) {
        acc += state.weights[j];
        if (u < acc) return j;
    }
    return awake.back();
}

SleepingExpertsState sleeping_update(const SleepingExpertsState& state,
                                     const std::vector<int>& awake,
                                     const std::vector<double>& losses) {
    if (losses.size() != awake.size()) {
        throw std::invalid_argument("losses/awake size mismatch");
    }
    for (double l : losses) {
        if (l < 0.0 || l > 1.0) {
            throw std::invalid_argument("loss outside [0,1]");
        }
    }
    SleepingExpertsState next = state;
    double before = 0.0;
    double after = 0.0;
    for (std::size_t i = 0; i < awake.size(); ++i) {
        before += state.weights[awake[i]];
        next.weights[awake[i]] =
            state.weights[awake[i]] * std::pow(state.beta, losses[i]);
        after += next.weights[awake[i]];
    }
    // Rescale awake weights so their total is unchanged; asleep weights are
    // untouched.
    const double factor = before / after;
    for (int j : awake) next.weights[j] *= factor;
    return next;
}

OgseState OgseState::init(const std::vector<std::string>& feature_names,
                          std::size_t num_heuristics,
                          const OnlineConfig& cfg) {
    if (feature_names.empty()) throw std::invalid_argument("no features");
    OgseState st;
    st.feature_names = feature_names;
    st.experts = SleepingExpertsState::init(feature_names.size(), cfg.horizon);
    for (std::size_t j = 0; j < feature_names.size(); ++j) {
        OnlineConfig sub = cfg;
        sub.seed = mix_seed(cfg.seed, j + 1);
        st.learners.push_back(OnlineState::init(num_heuristics, sub));
    }
    st.cap = cfg.cap;
    st.gamma = st.learners.front().gamma;
    st.rng.seed(mix_seed(cfg.seed, 0));
    return st;
}

namespace {

std::vector<int> awake_features(const OgseState& state,
                                const Instance& instance) {
    std::vector<int> awake;
    for (std::size_t j = 0; j < state.feature_names.size(); ++j) {
        if (std::binary_search(instance.features.begin(),
                               instance.features.end(),
                               state.feature_names[j])) {
            awake.push_back(static_cast<int>(j));
        }
    }
    return awake;
}

}  // namespace

OgseRound ogse_step(OgseState& state, const Instance& instance) {
    const std::vector<int> awake = awake_features(state, instance);
    if (awake.empty()) {
        throw std::invalid_argument("instance has no true feature: " +
                                    instance.id);
    }

    // Step 1: each awake learner proposes a schedule.
    std::vector<Selection> proposals;
    proposals.reserve(awake.size());
    for (int j : awake) proposals.push_back(og_select(state.learners[j]));

    // Step 2: the expert layer picks whose proposal to execute.
    const int pick = sleeping_select(state.experts, awake, state.rng);
    const std::size_t pick_pos =
        std::find(awake.begin(), awake.end(), pick) - awake.begin();

    OgseRound round;
    round.chosen_expert = pick;
    round.executed = proposals[pick_pos].schedule;
    round.charged_time =
        simulate_capped_time(round.executed, instance, state.cap, state.rng);

    // Step 3: with probability gamma, estimate every proposal's capped
    // expected time from the profiles, feed rewards to every awake learner,
    // and convert the estimates into expert losses.
    round.explored =
        std::uniform_real_distribution<double>(0.0, 1.0)(state.rng) <
        state.gamma;
    std::vector<double> losses(awake.size(), 0.0);
    if (round.explored) {
        round.exploration_time =
            exploration_probe_cost(state.learners.front().models.size(),
                                   state.cap);
        for (std::size_t i = 0; i < awake.size(); ++i) {
            feed_exploration_rewards(state.learners[awake[i]], instance,
                                     proposals[i]);
            const double capped =
                expected_capped_time(proposals[i].schedule, instance, state.cap);
            losses[i] = std::clamp(capped / static_cast<double>(state.cap),
                                   0.0, 1.0);
        }
    }

    // Step 4: feed the losses back to the expert layer.
    state.experts = sleeping_update(state.experts, awake, losses);
    for (int j : awake) ++state.learners[j].round;
    round.awake = awake;
    round.losses = std::move(losses);
    return round;
}

PerFeatureReport run_ogse(const std::vector<Instance>& stream,
                          const std::vector<std::string>& feature_universe,
                          std::size_t num_heuristics, const OnlineConfig& cfg) {
    OgseState state = OgseState::init(feature_universe, num_heuristics, cfg);
    PerFeatureReport report;
    std::vector<double> charged_per_feature(feature_universe.size(), 0.0);
    std::vector<int> count_per_feature(feature_universe.size(), 0);

    for (const auto& inst : stream) {
        const std::vector<int> awake = awake_features(state, inst);
        const OgseRound round = ogse_step(state, inst);
        report.total_charged += static_cast<double>(round.charged_time);
        report.total_exploration += static_cast<double>(round.exploration_time);
        for (int j : awake) {
            charged_per_feature[j] += static_cast<double>(round.charged_time);
            ++count_per_feature[j];
        }
    }

    std::vector<ExecModel> models(num_heuristics, cfg.model);
    for (std::size_t j = 0; j < feature_universe.size(); ++j) {
        std::vector<Instance> subset;
        for (const auto& inst : stream) {
            if (std::binary_search(inst.features.begin(), inst.features.end(),
                                   feature_universe[j])) {
                subset.push_back(inst);
            }
        }
        PerFeatureReport::Row row;
        row.feature = feature_universe[j];
        row.n_instances = static_cast<int>(subset.size());
        row.charged_time = charged_per_feature[j];
        if (!subset.empty()) {
            auto [greedy, trace] = greedy_schedule(subset, models, cfg.cap);
            row.greedy_benchmark = 4.0 * evaluate(greedy, subset, cfg.cap);
            row.ratio = row.greedy_benchmark > 0.0
                            ? row.charged_time / row.greedy_benchmark
                            : 0.0;
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

FeaturesOnlyReport features_only_baseline(
    const std::vector<Instance>& train, const std::vector<Instance>& test,
    const std::vector<std::string>& feature_universe,
    std::size_t num_heuristics, Time cap, std::uint64_t seed) {
    const std::size_t num_features = feature_universe.size();
    FeaturesOnlyReport report;

    auto solo_cost = [&](const Instance& inst, int h) {
        Schedule solo;
        solo.models.assign(num_heuristics, ExecModel::SuspendResume);
        solo.segments = {{h, cap}};
        return expected_capped_time(solo, inst, cap);
    };

    // Advice: per feature, the heuristic with the smallest capped average
    // time on the training instances where the feature is true. Features
    // with no true training instance fall back to the global training best.
    const auto [global_best, global_cost] =
        best_single_heuristic(train, num_heuristics, cap);
    report.advice.assign(num_features, global_best);
    for (std::size_t j = 0; j < num_features; ++j) {
        double best_cost = std::numeric_limits<double>::infinity();
        int best_h = -1;
        for (int h = 0; h < static_cast<int>(num_heuristics); ++h) {
            double total = 0.0;
            int n = 0;
            for (const auto& inst : train) {
                if (!std::binary_search(inst.features.begin(),
                                        inst.features.end(),
                                        feature_universe[j])) {
                    continue;
                }
                total += solo_cost(inst, h);
                ++n;
            }
            if (n == 0) { best_h = -1; break; }
            const double avg = total / n;
            if (avg < best_cost - kTol) {
                best_cost = avg;
                best_h = h;
            }
        }
        if (best_h >= 0) report.advice[j] = best_h;
    }

    auto awake_of = [&](const Instance& inst) {
        std::vector<int> awake;
        for (std::size_t j = 0; j < num_features; ++j) {
            if (std::binary_search(inst.features.begin(), inst.features.end(),
                                   feature_universe[j])) {
                awake.push_back(static_cast<int>(j));
            }
        }
        return awake;
    };

    // Expert weights are trained on the training instances (loss = capped
    // time of the advised heuristic, scaled to [0, 1]) and frozen for tests.
    SleepingExpertsState experts = SleepingExpertsState::init(
        std::max<std::size_t>(num_features, 1),
        static_cast<int>(std::max<std::size_t>(train.size(), 1)));
    std::mt19937_64 rng(mix_seed(seed, 0x0f0f));
    for (const auto& inst : train) {
        const std::vector<int> awake = awake_of(inst);
        if (awake.empty()) continue;
        std::vector<double> losses;
        losses.reserve(awake.size());
        for (int j : awake) {
            losses.push_back(std::clamp(
                solo_cost(inst, report.advice[j]) / static_cast<double>(cap),
                0.0, 1.0));
        }
        experts = sleeping_update(experts, awake, losses);
    }

    double total = 0.0;
    for (const auto& inst : test) {
        const std::vector<int> awake = awake_of(inst);
        if (awake.empty()) {
            throw std::invalid_argument("instance has no true feature: " +
                                        inst.id);
        }
        const int j = sleeping_select(experts, awake, rng);
        const int h = report.advice[j];
        Schedule solo;
        solo.models.assign(num_heuristics, ExecModel::SuspendResume);
        solo.segments = {{h, cap}};
        const Time charged = simulate_capped_time(solo, inst, cap, rng);
        report.rows.push_back(
            {inst.id, h, charged, expected_capped_time(solo, inst, cap)});
        total += static_cast<double>(charged);
    }
    report.avg_charged = test.empty() ? 0.0 : total / test.size();
    return report;
}

}  // namespace folio
