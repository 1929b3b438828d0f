// Copyright 2026 The folio authors.
// License: Apache License 2.0

#ifndef FOLIO_CORE_HPP
#define FOLIO_CORE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace folio {

/// Integer time unit. All recorded solve times are >= 1; the unit itself is
/// declared by the data file, not by the library.
using Time = std::int64_t;

/// Absolute tolerance for probability / cost comparisons.
inline constexpr double kTol = 1e-9;

/// splitmix64-based combiner for deriving independent sub-seeds, so that
/// serial and parallel runs agree.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// One recorded run of a heuristic on an instance. A censored record means
/// the run hit the data-collection limit without solving; it is treated as
/// never solving.
struct RuntimeSample {
    Time time = 0;
    bool censored = false;
};

/// Empirical distribution of a heuristic's solve time on one instance.
/// A single-sample profile models a deterministic heuristic.
struct RuntimeProfile {
    std::vector<RuntimeSample> samples;

    /// Empirical P(T <= t). Censored samples never count as solved.
    double cdf(Time t) const;

    /// Largest solved sample time, or 0 if every sample is censored.
    Time max_solved_time() const;

    bool has_solved_sample() const;
};

struct Instance {
    std::string id;
    double weight = 1.0;
    std::vector<RuntimeProfile> profiles;  // indexed by heuristic
    std::vector<std::string> features;     // sorted, unique feature names
};

enum class ExecModel {
    SuspendResume,  // segments continue one persistent run
    Restart,        // each segment is a fresh, independent run
};

struct RunSegment {
    int heuristic = 0;
    Time tau = 0;  // >= 1
};

/// Ordered run segments plus a per-heuristic execution model.
struct Schedule {
    std::vector<RunSegment> segments;
    std::vector<ExecModel> models;  // indexed by heuristic

    Time total_length() const;
};

/// Survival state along a schedule prefix: per-instance probability of not
/// yet being solved, per-heuristic accumulated suspend-resume time, and
/// elapsed wall time.
struct CoverageState {
    std::vector<double> survival;  // q(x), one per instance
    std::vector<Time> accrued;     // a(h), one per heuristic; 0 for Restart
    Time wall = 0;

    static CoverageState initial(std::size_t num_instances,
                                 std::size_t num_heuristics);
};

/// Probability that running `tau` more units of this heuristic solves the
/// instance, given `accrued` prior suspend-resume time. Restart runs are
/// fresh and ignore `accrued`.
double segment_success(const RuntimeProfile& profile, ExecModel model,
                       Time accrued, Time tau);

/// Applies one segment to the state; the input state is not mutated.
CoverageState advance(const CoverageState& state, const RunSegment& segment,
                      const std::vector<Instance>& instances,
                      const std::vector<ExecModel>& models);

/// Weighted expected number of instances the schedule solves.
double coverage(const Schedule& schedule,
                const std::vector<Instance>& instances);

/// E[min{B, T(S, x)}], computed analytically from the empirical profiles.
double expected_capped_time(const Schedule& schedule, const Instance& instance,
                            Time cap);

/// Sum of weighted expected capped times over all instances.
double evaluate(const Schedule& schedule, const std::vector<Instance>& instances,
                Time cap);

}  // namespace folio

#endif  // FOLIO_CORE_HPP
