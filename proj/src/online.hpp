// Copyright 2026 The folio authors.
// License: Apache License 2.0

#ifndef FOLIO_ONLINE_HPP
#define FOLIO_ONLINE_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "core.hpp"

namespace folio {

/// The discretized action set of the online greedy learner: every
/// (heuristic, tau) with tau a power of two up to the cap.
struct ActionGrid {
    struct Action {
        int heuristic = 0;
        Time tau = 0;
    };
    std::vector<Action> actions;  // ordered by heuristic index, then tau
};

ActionGrid make_grid(std::size_t num_heuristics, Time cap);

/// Multiplicative-weights learner over the action grid for one schedule slot.
struct SlotLearner {
    std::vector<double> weights;  // strictly positive, kept normalized

    int sample(std::mt19937_64& rng) const;
    void update(const std::vector<double>& rewards, double eta);
};

struct OnlineConfig {
    Time cap = 1;
    int horizon = 1;           // n, known in advance (needed for gamma)
    int slots = 0;             // 0 = auto: ceil(log2 cap) + k
    double explore_c = 1.0;    // gamma = min(1, c * n^{-1/4})
    double gamma_override = -1.0;  // >= 0 forces gamma (train/test protocols)
    double eta = 0.0;          // 0 = auto: sqrt(8 ln |grid| / E[#explores])
    std::uint64_t seed = 0;
    ExecModel model = ExecModel::SuspendResume;  // applied to every heuristic
};

struct OnlineState {
    ActionGrid grid;
    std::vector<SlotLearner> slots;
    std::vector<ExecModel> models;
    Time cap = 1;
    int horizon = 1;
    int round = 0;
    double gamma = 0.0;
    double eta = 0.0;
    std::mt19937_64 rng;

    static OnlineState init(std::size_t num_heuristics, const OnlineConfig& cfg);
};

struct Selection {
    Schedule schedule;
    std::vector<int> chosen;  // action index per slot
    bool explore = false;
};

/// Samples one action per slot and decides whether this round explores.
Selection og_select(OnlineState& state);

struct RoundOutcome {
    Time charged_time = 0;      // realized min{B, T(S, x)}
    Time exploration_time = 0;  // bookkept probe cost on exploring rounds
};

/// Simulates one realized execution of the schedule on the instance and
/// returns min{cap, T}. Suspend-and-resume heuristics use a single draw from
/// their profile; every Restart segment draws fresh.
Time simulate_capped_time(const Schedule& schedule, const Instance& instance,
                          Time cap, std::mt19937_64& rng);

/// Feeds every slot the per-action marginal-coverage-per-unit-time rewards
/// computed from the instance's full profiles, conditioning each slot on the
/// prefix of actions the selection chose before it.
void feed_exploration_rewards(OnlineState& state, const Instance& instance,
                              const Selection& selection);

/// Bookkept probe cost of one exploring round: each heuristic runs for
/// O(B log B).
Time exploration_probe_cost(std::size_t num_heuristics, Time cap);

/// Charges the realized capped time and, on exploring rounds, applies
/// feed_exploration_rewards.
RoundOutcome observe_instance(OnlineState& state, const Instance& instance,
                              const Selection& selection);

struct OnlineReport {
    struct Row {
        int round = 0;
        Time charged_time = 0;
        Time exploration_time = 0;
        double cumulative_avg = 0.0;
    };
    std::vector<Row> rows;
    double total_charged = 0.0;
    double total_exploration = 0.0;
    double greedy_benchmark = 0.0;  // evaluate(offline greedy on the stream)
};

OnlineReport run_online(const std::vector<Instance>& stream,
                        std::size_t num_heuristics, const OnlineConfig& cfg);

}  // namespace folio

#endif  // FOLIO_ONLINE_HPP
