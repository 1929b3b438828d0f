// Copyright 2026 The folio authors.
// License: Apache License 2.0
//
// Test-only helpers: fixture builders and independent oracles (Monte-Carlo
// simulation and a direct deterministic timeline walk). These deliberately
// do not reuse the library's analytic evaluation path.

#ifndef FOLIO_TEST_UTIL_HPP
#define FOLIO_TEST_UTIL_HPP

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "core.hpp"

namespace folio::testutil {

inline RuntimeProfile det(Time t) { return RuntimeProfile{{{t, false}}}; }

inline RuntimeProfile profile(std::vector<Time> solved, Time censor_limit = 0,
                              int censored_count = 0) {
    RuntimeProfile p;
    for (Time t : solved) p.samples.push_back({t, false});
    for (int i = 0; i < censored_count; ++i) {
        p.samples.push_back({censor_limit, true});
    }
    return p;
}

inline Instance instance(std::string id, std::vector<RuntimeProfile> profiles,
                         double weight = 1.0) {
    Instance inst;
    inst.id = std::move(id);
    inst.weight = weight;
    inst.profiles = std::move(profiles);
    return inst;
}

/// Deterministic instances from one solve time per heuristic.
inline Instance det_instance(std::string id, std::vector<Time> times) {
    std::vector<RuntimeProfile> profiles;
    for (Time t : times) profiles.push_back(det(t));
    return instance(std::move(id), std::move(profiles));
}

/// One Monte-Carlo trial of min{cap, T(S, x)}: a single draw per
/// suspend-and-resume heuristic, a fresh draw per Restart segment.
/// (-1 encodes a censored draw, which never solves.)
inline Time mc_trial(const Schedule& schedule, const Instance& inst, Time cap,
                     std::mt19937_64& rng) {
    const std::size_t k = schedule.models.size();
    std::vector<Time> sr_total(k, 0);
    std::vector<bool> sr_drawn(k, false);
    std::vector<Time> sr_progress(k, 0);

    auto draw = [&](const RuntimeProfile& p) -> Time {
        std::uniform_int_distribution<std::size_t> pick(0, p.samples.size() - 1);
        const auto& s = p.samples[pick(rng)];
        return s.censored ? -1 : s.time;
    };

    Time wall = 0;
    for (const auto& seg : schedule.segments) {
        const int h = seg.heuristic;
        if (schedule.models[h] == ExecModel::Restart) {
            const Time t = draw(inst.profiles[h]);
            if (t > 0 && wall + t <= std::min<Time>(wall + seg.tau, cap)) {
                return wall + t;
            }
        } else {
            if (!sr_drawn[h]) {
                sr_total[h] = draw(inst.profiles[h]);
                sr_drawn[h] = true;
            }
            const Time remaining =
                sr_total[h] > 0 ? sr_total[h] - sr_progress[h] : -1;
            if (remaining > 0 && remaining <= seg.tau &&
                wall + remaining <= cap) {
                return wall + remaining;
            }
            sr_progress[h] += seg.tau;
        }
        wall += seg.tau;
        if (wall >= cap) return cap;
    }
    return cap;
}

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
};

inline McEstimate mc_capped_time(const Schedule& schedule, const Instance& inst,
                                 Time cap, int trials, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int i = 0; i < trials; ++i) {
        const double v = static_cast<double>(mc_trial(schedule, inst, cap, rng));
        sum += v;
        sum_sq += v * v;
    }
    McEstimate est;
    est.mean = sum / trials;
    const double var =
        std::max(0.0, sum_sq / trials - est.mean * est.mean);
    est.std_error = std::sqrt(var / trials);
    return est;
}

/// Exact capped solve time for single-sample (deterministic) profiles, via a
/// direct timeline walk.
inline Time det_capped_time(const Schedule& schedule, const Instance& inst,
                            Time cap) {
    const std::size_t k = schedule.models.size();
    std::vector<Time> progress(k, 0);
    Time wall = 0;
    for (const auto& seg : schedule.segments) {
        const int h = seg.heuristic;
        const auto& s = inst.profiles[h].samples.front();
        if (schedule.models[h] == ExecModel::Restart) {
            if (!s.censored && s.time <= seg.tau && wall + s.time <= cap) {
                return wall + s.time;
            }
        } else {
            const Time remaining = s.censored ? -1 : s.time - progress[h];
            if (remaining > 0 && remaining <= seg.tau &&
                wall + remaining <= cap) {
                return wall + remaining;
            }
            progress[h] += seg.tau;
        }
        wall += seg.tau;
        if (wall >= cap) return cap;
    }
    return cap;
}

}  // namespace folio::testutil

#endif  // FOLIO_TEST_UTIL_HPP
