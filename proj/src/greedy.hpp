// Copyright 2026 The folio authors.
// License: Apache License 2.0

#ifndef FOLIO_GREEDY_HPP
#define FOLIO_GREEDY_HPP

#include <optional>
#include <vector>

#include "core.hpp"

namespace folio {

/// Densities of segments actually appended by the greedy construction,
/// in order. One entry per segment of the returned schedule.
struct GreedyTrace {
    struct Step {
        RunSegment segment;
        double density = 0.0;
    };
    std::vector<Step> steps;
};

/// Density floor below which a candidate is considered useless.
inline constexpr double kDensityFloor = 1e-12;

/// The durations at which a run of `heuristic` can be locally optimal:
/// success probability is a step function of tau, so only the residual
/// sample times matter. Sorted, distinct. Empty when the heuristic is
/// exhausted (no reachable solved sample).
std::vector<Time> candidate_durations(int heuristic, const CoverageState& state,
                                      const std::vector<Instance>& instances,
                                      const std::vector<ExecModel>& models);

/// One greedy choice: the (heuristic, tau) maximizing weighted marginal
/// coverage per unit time. Ties broken by smaller tau, then smaller
/// heuristic index. nullopt when every candidate has density <= floor.
std::optional<GreedyTrace::Step> greedy_step(
    const CoverageState& state, const std::vector<Instance>& instances,
    const std::vector<ExecModel>& models);

/// Greedy schedule construction: append arg-max-density segments until
/// exhausted or the next segment would push total length past `length_cap`.
std::pair<Schedule, GreedyTrace> greedy_schedule(
    const std::vector<Instance>& instances, const std::vector<ExecModel>& models,
    Time length_cap);

struct OracleBudget {
    std::size_t max_heuristics = 3;
    std::size_t max_instances = 5;
    std::size_t max_segments = 6;
};

/// Exhaustive-search optimal schedule for tiny inputs. Minimizes
/// evaluate(S, instances, B = length_cap) over segment sequences whose
/// durations come from the per-prefix candidate sets. Ties broken by
/// shorter total length, then lexicographic segment order.
/// Throws std::invalid_argument when the input exceeds the budget.
Schedule optimal_schedule_oracle(const std::vector<Instance>& instances,
                                 const std::vector<ExecModel>& models,
                                 Time length_cap, std::size_t max_segments,
                                 const OracleBudget& budget = {});

/// The single heuristic minimizing the weighted capped time when run alone.
/// Ties broken by smaller index.
std::pair<int, double> best_single_heuristic(
    const std::vector<Instance>& instances, std::size_t num_heuristics,
    Time cap);

/// Round-robin schedule giving every heuristic `quantum`-sized slices until
/// the total length reaches `length_cap`.
Schedule parallel_schedule(std::size_t num_heuristics,
                           const std::vector<ExecModel>& models, Time quantum,
                           Time length_cap);

}  // namespace folio

#endif  // FOLIO_GREEDY_HPP
