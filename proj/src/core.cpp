// Copyright 2026 The folio authors.
// License: Apache License 2.0

#include "core.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace folio {

double RuntimeProfile::cdf(Time t) const {
    if (samples.empty()) return 0.0;
    std::size_t solved = 0;
    for (const auto& s : samples) {
        if (!s.censored && s.time <= t) ++solved;
    }
    return static_cast<double>(solved) / static_cast<double>(samples.size());
}

Time RuntimeProfile::max_solved_time() const {
    Time best = 0;
    for (const auto& s : samples) {
        if (!s.censored) best = std::max(best, s.time);
    }
    return best;
}

bool RuntimeProfile::has_solved_sample() const {
    for (const auto& s : samples) {
        if (!s.censored) return true;
    }
    return false;
}

Time Schedule::total_length() const {
    Time total = 0;
    for (const auto& seg : segments) total += seg.tau;
    return total;
}

CoverageState CoverageState::initial(std::size_t num_instances,
                                     std::size_t num_heuristics) {
    CoverageState st;
    st.survival.assign(num_instances, 1.0);
    st.accrued.assign(num_heuristics, 0);
    st.wall = 0;
    return st;
}

double segment_success(const RuntimeProfile& profile, ExecModel model,
                       Time accrued, Time tau) {
    if (model == ExecModel::Restart) {
        return profile.cdf(tau);
    }
    const double base = 1.0 - profile.cdf(accrued);
    if (base <= kTol) return 0.0;  // run already certain to have finished
    return (profile.cdf(accrued + tau) - profile.cdf(accrued)) / base;
}

CoverageState advance(const CoverageState& state, const RunSegment& segment,
                      const std::vector<Instance>& instances,
                      const std::vector<ExecModel>& models) {
    assert(segment.heuristic >= 0 &&
           static_cast<std::size_t>(segment.heuristic) < models.size());
    CoverageState next = state;
    const ExecModel model = models[segment.heuristic];
    const Time accrued = state.accrued[segment.heuristic];
    for (std::size_t i = 0; i < instances.size(); ++i) {
        const double p = segment_success(instances[i].profiles[segment.heuristic],
                                         model, accrued, segment.tau);
        next.survival[i] = state.survival[i] * (1.0 - p);
    }
    next.wall += segment.tau;
    if (model == ExecModel::SuspendResume) {
        next.accrued[segment.heuristic] += segment.tau;
    }
    return next;
}

double coverage(const Schedule& schedule,
                const std::vector<Instance>& instances) {
    if (instances.empty()) return 0.0;
    CoverageState st =
        CoverageState::initial(instances.size(), schedule.models.size());
    for (const auto& seg : schedule.segments) {
        st = advance(st, seg, instances, schedule.models);
    }
    double covered = 0.0;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        covered += instances[i].weight * (1.0 - st.survival[i]);
    }
    return covered;
}

double expected_capped_time(const Schedule& schedule, const Instance& instance,
                            Time cap) {
    if (cap < 1) throw std::invalid_argument("cap must be >= 1");

    // Walk the segments accumulating P(first solve at wall time w) * w over
    // all solve events with w <= cap; the remaining survival mass at the cap
    // pays exactly cap.
    double survival = 1.0;
    double expected = 0.0;
    std::vector<Time> accrued(schedule.models.size(), 0);
    Time wall = 0;

    for (const auto& seg : schedule.segments) {
        if (wall >= cap || survival <= 0.0) break;
        const Time eff = std::min<Time>(seg.tau, cap - wall);
        const RuntimeProfile& prof = instance.profiles[seg.heuristic];
        const ExecModel model = schedule.models[seg.heuristic];
        const double r = static_cast<double>(prof.samples.size());

        if (model == ExecModel::Restart) {
            for (const auto& s : prof.samples) {
                if (s.censored || s.time > eff) continue;
                expected += survival * (1.0 / r) *
                            static_cast<double>(wall + s.time);
            }
            survival *= 1.0 - prof.cdf(eff);
        } else {
            const Time a = accrued[seg.heuristic];
            const double base = 1.0 - prof.cdf(a);
            if (base > kTol) {
                for (const auto& s : prof.samples) {
                    if (s.censored || s.time <= a || s.time > a + eff) continue;
                    expected += survival * (1.0 / (r * base)) *
                                static_cast<double>(wall + (s.time - a));
                }
                survival *= (1.0 - prof.cdf(a + eff)) / base;
            }
            accrued[seg.heuristic] += eff;
        }
        wall += eff;
    }
    expected += survival * static_cast<double>(cap);
    return expected;
}

double evaluate(const Schedule& schedule, const std::vector<Instance>& instances,
                Time cap) {
    double total = 0.0;
    for (const auto& inst : instances) {
        total += inst.weight * expected_capped_time(schedule, inst, cap);
    }
    return total;
}

}  // namespace folio
