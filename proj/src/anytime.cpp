// Copyright 2026 The folio authors.
// License: Apache License 2.0

#include "anytime.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "greedy.hpp"

namespace folio {

namespace {

void check_shape(const std::vector<Instance>& instances,
                 const std::vector<ObjectiveSpec>& objectives) {
    if (objectives.empty()) throw std::invalid_argument("no objectives");
    const std::size_t k =
        instances.empty() ? 0 : instances.front().profiles.size();
    for (const auto& obj : objectives) {
        if (obj.achievement.size() != instances.size()) {
            throw std::invalid_argument("missing achievement data for objective " +
                                        obj.name);
        }
        for (const auto& per_h : obj.achievement) {
            if (per_h.size() != k) {
                throw std::invalid_argument(
                    "missing per-heuristic achievement data for objective " +
                    obj.name);
            }
        }
        if (obj.weight <= 0.0) {
            throw std::invalid_argument("objective weight must be positive");
        }
    }
}

Instance fictitious(const Instance& base, const ObjectiveSpec& obj,
                    std::size_t instance_index) {
    Instance fict;
    fict.id = base.id + "#" + obj.name;
    fict.weight = base.weight * obj.weight;
    fict.features = base.features;
    fict.profiles.reserve(obj.achievement[instance_index].size());
    for (const auto& sample : obj.achievement[instance_index]) {
        fict.profiles.push_back(RuntimeProfile{{sample}});
    }
    return fict;
}

}  // namespace

std::vector<std::string> validate_nesting(
    const std::vector<Instance>& instances,
    const std::vector<ObjectiveSpec>& objectives) {
    std::vector<std::string> warnings;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        const std::size_t k = instances[i].profiles.size();
        for (std::size_t h = 0; h < k; ++h) {
            for (std::size_t o = 1; o < objectives.size(); ++o) {
                const auto& prev = objectives[o - 1].achievement[i][h];
                const auto& cur = objectives[o].achievement[i][h];
                const bool violated =
                    prev.censored ? !cur.censored
                                  : (!cur.censored && cur.time < prev.time);
                if (violated) {
                    warnings.push_back(
                        "objective " + objectives[o].name + " reached before " +
                        objectives[o - 1].name + " on instance " +
                        instances[i].id + ", heuristic " + std::to_string(h));
                }
            }
        }
    }
    return warnings;
}

std::vector<Instance> expand_instances(
    const std::vector<Instance>& instances,
    const std::vector<ObjectiveSpec>& objectives) {
    check_shape(instances, objectives);
    std::vector<Instance> expanded;
    expanded.reserve(instances.size() * objectives.size());
    for (std::size_t i = 0; i < instances.size(); ++i) {
        for (const auto& obj : objectives) {
            expanded.push_back(fictitious(instances[i], obj, i));
        }
    }
    return expanded;
}

std::vector<SpeedupRow> speedup_factors(
    const std::vector<Instance>& instances,
    const std::vector<ObjectiveSpec>& objectives,
    const std::vector<ExecModel>& models, Time cap) {
    check_shape(instances, objectives);
    if (instances.size() < 2) {
        throw std::invalid_argument(
            "speedup factors need >= 2 instances for leave-one-out folds");
    }
    const std::size_t n = instances.size();
    const std::size_t k = models.size();

    // Leave-one-out greedy schedules, one per held-out instance.
    std::vector<Schedule> loo_schedules;
    loo_schedules.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Instance> fold_instances;
        std::vector<ObjectiveSpec> fold_objectives = objectives;
        for (auto& obj : fold_objectives) obj.achievement.clear();
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            fold_instances.push_back(instances[j]);
            for (std::size_t o = 0; o < objectives.size(); ++o) {
                fold_objectives[o].achievement.push_back(
                    objectives[o].achievement[j]);
            }
        }
        const auto expanded = expand_instances(fold_instances, fold_objectives);
        loo_schedules.push_back(greedy_schedule(expanded, models, cap).first);
    }

    std::vector<SpeedupRow> rows;
    for (std::size_t o = 0; o < objectives.size(); ++o) {
        SpeedupRow row;
        row.objective = objectives[o].name;

        row.numerator = std::numeric_limits<double>::infinity();
        for (std::size_t h = 0; h < k; ++h) {
            double total = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const auto& s = objectives[o].achievement[i][h];
                total += static_cast<double>(
                    s.censored ? cap : std::min<Time>(cap, s.time));
            }
            const double avg = total / static_cast<double>(n);
            if (avg < row.numerator - kTol) {
                row.numerator = avg;
                row.fastest_heuristic = static_cast<int>(h);
            }
        }

        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const Instance fict = fictitious(instances[i], objectives[o], i);
            total += expected_capped_time(loo_schedules[i], fict, cap);
        }
        row.denominator = total / static_cast<double>(n);
        row.factor = row.numerator / row.denominator;
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace folio
