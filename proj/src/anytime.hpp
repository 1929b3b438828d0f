// Copyright 2026 The folio authors.
// License: Apache License 2.0

#ifndef FOLIO_ANYTIME_HPP
#define FOLIO_ANYTIME_HPP

#include <string>
#include <vector>

#include "core.hpp"

namespace folio {

/// One objective of an anytime run (e.g. "find feasible", "prove optimal").
/// Achievement times are input data, recorded per (heuristic, instance);
/// a censored entry means the objective was never reached within the limit.
struct ObjectiveSpec {
    std::string name;
    double weight = 1.0;
    // achievement[i][h]: time heuristic h needs to reach this objective on
    // instance i (aligned with the instance list passed to the operations).
    std::vector<std::vector<RuntimeSample>> achievement;
};

/// Validation warnings for objectives that are expected to be nested
/// (feasible <= optimal <= proof) but are not; never an error.
std::vector<std::string> validate_nesting(
    const std::vector<Instance>& instances,
    const std::vector<ObjectiveSpec>& objectives);

/// One fictitious instance per (instance, objective): its "solve time" under
/// heuristic h is the time h needs to achieve the objective, and its weight
/// is weight(x) * weight(objective).
std::vector<Instance> expand_instances(
    const std::vector<Instance>& instances,
    const std::vector<ObjectiveSpec>& objectives);

struct SpeedupRow {
    std::string objective;
    int fastest_heuristic = -1;
    double numerator = 0.0;    // fastest single heuristic's avg capped time
    double denominator = 0.0;  // greedy schedule's avg, leave-one-out
    double factor = 0.0;
};

/// Per-objective speedup of the greedy schedule over the fastest individual
/// heuristic, with the greedy schedule trained leave-one-out on the expanded
/// fictitious instances.
std::vector<SpeedupRow> speedup_factors(
    const std::vector<Instance>& instances,
    const std::vector<ObjectiveSpec>& objectives,
    const std::vector<ExecModel>& models, Time cap);

}  // namespace folio

#endif  // FOLIO_ANYTIME_HPP
