// Copyright 2026 The folio authors.
// License: Apache License 2.0

#include "greedy.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

namespace folio {

std::vector<Time> candidate_durations(int heuristic, const CoverageState& state,
                                      const std::vector<Instance>& instances,
                                      const std::vector<ExecModel>& models) {
    std::set<Time> durations;
    const bool suspend = models[heuristic] == ExecModel::SuspendResume;
    const Time accrued = state.accrued[heuristic];
    for (const auto& inst : instances) {
        for (const auto& s : inst.profiles[heuristic].samples) {
            if (s.censored) continue;
            if (suspend) {
                if (s.time > accrued) durations.insert(s.time - accrued);
            } else {
                durations.insert(s.time);
            }
        }
    }
    return {durations.begin(), durations.end()};
}

namespace {

double marginal_coverage(const CoverageState& state,
                         const std::vector<Instance>& instances,
                         const std::vector<ExecModel>& models, int heuristic,
                         Time tau) {
    double gain = 0.0;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        gain += instances[i].weight * state.survival[i] *
                segment_success(instances[i].profiles[heuristic],
                                models[heuristic], state.accrued[heuristic], tau);
    }
    return gain;
}

}  // namespace

std::optional<GreedyTrace::Step> greedy_step(
    const CoverageState& state, const std::vector<Instance>& instances,
    const std::vector<ExecModel>& models) {
    std::optional<GreedyTrace::Step> best;
    for (int h = 0; h < static_cast<int>(models.size()); ++h) {
        for (Time tau : candidate_durations(h, state, instances, models)) {
            const double density =
                marginal_coverage(state, instances, models, h, tau) /
                static_cast<double>(tau);
            if (!best) {
                best = GreedyTrace::Step{{h, tau}, density};
                continue;
            }
            if (density > best->density + kTol) {
                best = GreedyTrace::Step{{h, tau}, density};
            } else if (density >= best->density - kTol) {
                // Tie: smaller tau first, then smaller heuristic index.
                if (tau < best->segment.tau ||
                    (tau == best->segment.tau && h < best->segment.heuristic)) {
                    best = GreedyTrace::Step{{h, tau}, density};
                }
            }
        }
    }
    if (!best || best->density <= kDensityFloor) return std::nullopt;
    return best;
}

std::pair<Schedule, GreedyTrace> greedy_schedule(
    const std::vector<Instance>& instances, const std::vector<ExecModel>& models,
    Time length_cap) {
    if (length_cap < 1) throw std::invalid_argument("length_cap must be >= 1");
    Schedule schedule;
    schedule.models = models;
    GreedyTrace trace;
    CoverageState state = CoverageState::initial(instances.size(), models.size());
    while (true) {
        auto step = greedy_step(state, instances, models);
        if (!step) break;
        if (state.wall + step->segment.tau > length_cap) break;
        schedule.segments.push_back(step->segment);
        trace.steps.push_back(*step);
        state = advance(state, step->segment, instances, models);
    }
    return {std::move(schedule), std::move(trace)};
}

namespace {

struct OracleSearch {
    const std::vector<Instance>& instances;
    const std::vector<ExecModel>& models;
    Time length_cap;
    std::size_t max_segments;

    double best_cost;
    Time best_length;
    std::vector<RunSegment> best_segments;
    std::vector<RunSegment> current;

    // Candidate durations restricted to instances still unsolved under the
    // current prefix; boundaries of solved instances cannot improve cost.
    std::vector<Time> candidates(int heuristic, const CoverageState& state) const {
        std::set<Time> durations;
        const bool suspend = models[heuristic] == ExecModel::SuspendResume;
        const Time accrued = state.accrued[heuristic];
        for (std::size_t i = 0; i < instances.size(); ++i) {
            if (state.survival[i] <= kTol) continue;
            for (const auto& s : instances[i].profiles[heuristic].samples) {
                if (s.censored) continue;
                if (suspend) {
                    if (s.time > accrued) durations.insert(s.time - accrued);
                } else {
                    durations.insert(s.time);
                }
            }
        }
        return {durations.begin(), durations.end()};
    }

    void consider_current() {
        Schedule sched;
        sched.models = models;
        sched.segments = current;
        const double cost = evaluate(sched, instances, length_cap);
        const Time length = sched.total_length();
        if (cost < best_cost - kTol ||
            (cost < best_cost + kTol &&
             (length < best_length ||
              (length == best_length && lex_less(current, best_segments))))) {
            best_cost = std::min(cost, best_cost);
            best_length = length;
            best_segments = current;
        }
    }

    static bool lex_less(const std::vector<RunSegment>& a,
                         const std::vector<RunSegment>& b) {
        return std::lexicographical_compare(
            a.begin(), a.end(), b.begin(), b.end(),
            [](const RunSegment& x, const RunSegment& y) {
                return x.heuristic < y.heuristic ||
                       (x.heuristic == y.heuristic && x.tau < y.tau);
            });
    }

    void dfs(const CoverageState& state) {
        consider_current();
        if (current.size() >= max_segments || state.wall >= length_cap) return;
        bool any_unsolved = false;
        for (double q : state.survival) {
            if (q > kTol) { any_unsolved = true; break; }
        }
        if (!any_unsolved) return;
        for (int h = 0; h < static_cast<int>(models.size()); ++h) {
            for (Time tau : candidates(h, state)) {
                if (state.wall + tau > length_cap) continue;
                current.push_back({h, tau});
                dfs(advance(state, {h, tau}, instances, models));
                current.pop_back();
            }
        }
    }
};

}  // namespace

Schedule optimal_schedule_oracle(const std::vector<Instance>& instances,
                                 const std::vector<ExecModel>& models,
                                 Time length_cap, std::size_t max_segments,
                                 const OracleBudget& budget) {
    if (models.size() > budget.max_heuristics ||
        instances.size() > budget.max_instances ||
        max_segments > budget.max_segments) {
        throw std::invalid_argument("oracle input exceeds the search budget");
    }
    if (length_cap < 1) throw std::invalid_argument("length_cap must be >= 1");

    OracleSearch search{instances, models, length_cap, max_segments,
                        std::numeric_limits<double>::infinity(), 0, {}, {}};
    search.dfs(CoverageState::initial(instances.size(), models.size()));

    Schedule result;
    result.models = models;
    result.segments = std::move(search.best_segments);
    return result;
}

std::pair<int, double> best_single_heuristic(
    const std::vector<Instance>& instances, std::size_t num_heuristics,
    Time cap) {
    if (num_heuristics == 0) throw std::invalid_argument("empty portfolio");
    int best = 0;
    double best_cost = std::numeric_limits<double>::infinity();
    for (int h = 0; h < static_cast<int>(num_heuristics); ++h) {
        Schedule solo;
        solo.models.assign(num_heuristics, ExecModel::SuspendResume);
        solo.segments = {{h, cap}};
        const double cost = evaluate(solo, instances, cap);
        if (cost < best_cost - kTol) {
            best = h;
            best_cost = cost;
        }
    }
    return {best, best_cost};
}

Schedule parallel_schedule(std::size_t num_heuristics,
                           const std::vector<ExecModel>& models, Time quantum,
                           Time length_cap) {
    if (quantum < 1) throw std::invalid_argument("quantum must be >= 1");
    Schedule schedule;
    schedule.models = models;
    Time total = 0;
    int h = 0;
    while (total < length_cap) {
        const Time tau = std::min(quantum, length_cap - total);
        schedule.segments.push_back({h, tau});
        total += tau;
        h = (h + 1) % static_cast<int>(num_heuristics);
    }
    return schedule;
}

}  // namespace folio
