// Copyright 2026 The folio authors.
// License: Apache License 2.0

#include "online.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "greedy.hpp"

namespace folio {

namespace {

int ceil_log2(Time value) {
    int bits = 0;
    Time power = 1;
    while (power < value) {
        power *= 2;
        ++bits;
    }
    return bits;
}

}  // namespace

ActionGrid make_grid(std::size_t num_heuristics, Time cap) {
    if (cap < 1) throw std::invalid_argument("cap must be >= 1");
    ActionGrid grid;
    for (int h = 0; h < static_cast<int>(num_heuristics); ++h) {
        for (Time tau = 1; tau <= cap; tau *= 2) {
            grid.actions.push_back({h, tau});
        }
    }
    return grid;
}

int SlotLearner::sample(std::mt19937_64& rng) const {
    double total = 0.0;
    for (double w : weights) total += w;
    const double u = std::uniform_real_distribution<double>(0.0, total)(rng);
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i];
        if (u < acc) return static_cast<int>(i);
    }
    return static_cast<int>(weights.size()) - 1;
}

void SlotLearner::update(const std::vector<double>& rewards, double eta) {
    double total = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        weights[i] *= std::exp(eta * rewards[i]);
        total += weights[i];
    }
    for (double& w : weights) w /= total;
}

OnlineState OnlineState::init(std::size_t num_heuristics,
                              const OnlineConfig& cfg) {
    if (cfg.cap < 1) throw std::invalid_argument("cap must be >= 1");
    if (cfg.horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    OnlineState st;
    st.grid = make_grid(num_heuristics, cfg.cap);
    const int num_slots =
        cfg.slots > 0
            ? cfg.slots
            : ceil_log2(cfg.cap) + static_cast<int>(num_heuristics);
    st.slots.assign(
        num_slots,
        SlotLearner{std::vector<double>(st.grid.actions.size(),
                                        1.0 / st.grid.actions.size())});
    st.models.assign(num_heuristics, cfg.model);
    st.cap = cfg.cap;
    st.horizon = cfg.horizon;
    st.gamma = cfg.gamma_override >= 0.0
                   ? std::min(1.0, cfg.gamma_override)
                   : std::min(1.0, cfg.explore_c *
                                       std::pow(cfg.horizon, -0.25));
    if (cfg.eta > 0.0) {
        st.eta = cfg.eta;
    } else {
        // Updates only happen on exploring rounds, so the learning rate is
        // tuned to the expected number of those.
        const double explores = std::max(1.0, st.gamma * cfg.horizon);
        st.eta = std::sqrt(8.0 * std::log(st.grid.actions.size()) / explores);
    }
    st.rng.seed(cfg.seed);
    return st;
}

Selection og_select(OnlineState& state) {
    Selection sel;
    sel.schedule.models = state.models;
    sel.chosen.reserve(state.slots.size());
    for (const auto& slot : state.slots) {
        const int a = slot.sample(state.rng);
        sel.chosen.push_back(a);
        sel.schedule.segments.push_back(
            {state.grid.actions[a].heuristic, state.grid.actions[a].tau});
    }
    sel.explore =
        std::uniform_real_distribution<double>(0.0, 1.0)(state.rng) <
        state.gamma;
    return sel;
}

Time simulate_capped_time(const Schedule& schedule, const Instance& instance,
                          Time cap, std::mt19937_64& rng) {
    // One persistent draw per suspend-and-resume heuristic; fresh draws per
    // Restart segment. A censored draw never solves.
    std::vector<Time> accrued(schedule.models.size(), 0);
    std::vector<Time> sr_draw(schedule.models.size(), -1);  // -1 = not drawn

    auto draw = [&](const RuntimeProfile& prof) -> Time {
        const auto& s = prof.samples[rng() % prof.samples.size()];
        return s.censored ? -1 : s.time;  // -1 = never solves
    };

    Time wall = 0;
    for (const auto& seg : schedule.segments) {
        if (wall >= cap) return cap;
        const Time eff = std::min<Time>(seg.tau, cap - wall);
        const RuntimeProfile& prof = instance.profiles[seg.heuristic];
        if (schedule.models[seg.heuristic] == ExecModel::Restart) {
            const Time t = draw(prof);
            if (t > 0 && t <= eff) return wall + t;
        } else {
            Time& drawn = sr_draw[seg.heuristic];
            if (drawn == -1) {
                drawn = draw(prof);
                if (drawn == -1) drawn = -2;  // censored, marked as drawn
            }
            const Time a = accrued[seg.heuristic];
            if (drawn > 0 && drawn > a && drawn <= a + eff) {
                return wall + (drawn - a);
            }
            accrued[seg.heuristic] += eff;
        }
        wall += eff;
    }
    return cap;
}

Time exploration_probe_cost(std::size_t num_heuristics, Time cap) {
    return static_cast<Time>(num_heuristics) * cap * ceil_log2(cap);
}

void feed_exploration_rewards(OnlineState& state, const Instance& instance,
                              const Selection& selection) {
    const std::vector<Instance> one{instance};
    CoverageState st = CoverageState::initial(1, state.models.size());
    std::vector<double> rewards(state.grid.actions.size(), 0.0);
    for (std::size_t j = 0; j < state.slots.size(); ++j) {
        for (std::size_t a = 0; a < state.grid.actions.size(); ++a) {
            const auto& action = state.grid.actions[a];
            const Time room = state.cap - st.wall;
            if (room <= 0) {
                rewards[a] = 0.0;
                continue;
            }
            const Time eff = std::min<Time>(action.tau, room);
            const double payoff =
                st.survival[0] *
                segment_success(instance.profiles[action.heuristic],
                                state.models[action.heuristic],
                                st.accrued[action.heuristic], eff);
            rewards[a] = payoff / static_cast<double>(action.tau);
        }
        // Densities are typically far below 1 while eta is sized for [0,1]
        // rewards; rescale by the round's maximum so the update uses the
        // full range. Zeros and the argmax are unaffected.
        double max_reward = 0.0;
        for (double r : rewards) max_reward = std::max(max_reward, r);
        if (max_reward > kTol) {
            for (double& r : rewards) r /= max_reward;
        }
        state.slots[j].update(rewards, state.eta);
        st = advance(st, selection.schedule.segments[j], one, state.models);
    }
}

RoundOutcome observe_instance(OnlineState& state, const Instance& instance,
                              const Selection& selection) {
    RoundOutcome out;
    out.charged_time =
        simulate_capped_time(selection.schedule, instance, state.cap, state.rng);
    if (!selection.explore) return out;
    out.exploration_time = exploration_probe_cost(state.models.size(), state.cap);
    feed_exploration_rewards(state, instance, selection);
    return out;
}

OnlineReport run_online(const std::vector<Instance>& stream,
                        std::size_t num_heuristics, const OnlineConfig& cfg) {
    OnlineState state = OnlineState::init(num_heuristics, cfg);
    OnlineReport report;
    double charged = 0.0;
    double exploration = 0.0;
    for (std::size_t i = 0; i < stream.size(); ++i) {
        Selection sel = og_select(state);
        const RoundOutcome out = observe_instance(state, stream[i], sel);
        ++state.round;
        charged += static_cast<double>(out.charged_time);
        exploration += static_cast<double>(out.exploration_time);
        report.rows.push_back({static_cast<int>(i), out.charged_time,
                               out.exploration_time,
                               charged / static_cast<double>(i + 1)});
    }
    report.total_charged = charged;
    report.total_exploration = exploration;

    std::vector<ExecModel> models(num_heuristics, cfg.model);
    auto [greedy, trace] = greedy_schedule(stream, models, cfg.cap);
    report.greedy_benchmark = evaluate(greedy, stream, cfg.cap);
    return report;
}

}  // namespace folio
