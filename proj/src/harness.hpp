// Copyright 2026 The folio authors.
// License: Apache License 2.0

#ifndef FOLIO_HARNESS_HPP
#define FOLIO_HARNESS_HPP

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "anytime.hpp"
#include "core.hpp"
#include "experts.hpp"
#include "greedy.hpp"
#include "online.hpp"

namespace folio {

/// Thrown on malformed or inconsistent input files; the CLI maps it to
/// exit code 2.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Dataset {
    std::vector<std::string> heuristic_names;
    std::vector<Instance> instances;
    Time limit = 0;  // censoring limit L (max observed time when uncensored)
    int discarded = 0;
    std::vector<std::string> provenance;

    int heuristic_index(const std::string& name) const;  // -1 when absent
    std::vector<std::string> feature_universe() const;   // sorted, unique
};

/// Name of the auto-added always-true feature.
inline const std::string kAllFeature = "ALL";

/// Parses the runtimes CSV (instance_id,heuristic_id,sample_index,time,
/// censored[,weight]). Instances no heuristic ever solves within the limit
/// are discarded with a count. '#' lines are comments.
Dataset load_runtimes(std::istream& in);
Dataset load_runtimes_file(const std::string& path);

/// Parses the features CSV (instance_id,feature_name,value) and attaches
/// labels; always adds the "ALL" feature to every instance.
void load_features(std::istream& in, Dataset& dataset);
void load_features_file(const std::string& path, Dataset& dataset);

/// Adds the always-true feature to every instance (idempotent).
void add_all_feature(Dataset& dataset);

std::string runtimes_to_csv(const Dataset& dataset);
std::string features_to_csv(const Dataset& dataset);

/// Simple `key = value` config format; '#' starts a comment.
using KeyValues = std::map<std::string, std::string>;
KeyValues parse_key_values(std::istream& in);
KeyValues parse_key_values_file(const std::string& path);

struct SynthSpec {
    std::size_t heuristics = 2;
    std::size_t instances = 20;
    std::size_t clusters = 1;
    std::size_t samples = 1;
    double noise = 0.0;        // relative jitter on sample times
    double censor_rate = 0.0;  // per-sample censoring rate of slow heuristics
    Time limit = 100;
    bool cluster_features = false;   // label instances with their cluster
    bool paired_strengths = false;   // two good heuristics per cluster
};
SynthSpec parse_synth_spec(const KeyValues& kv);

/// Reproducible synthetic dataset: per-cluster ground-truth best heuristics
/// are recorded in the provenance notes.
Dataset synth_generate(const SynthSpec& spec, std::uint64_t seed);

// ---- schedule serialization ----

/// CSV with columns step,heuristic,tau,model[,density]; heuristic and model
/// are names ("sr"/"restart").
std::string schedule_to_csv(const Schedule& schedule, const Dataset& dataset,
                            const GreedyTrace* trace = nullptr);
Schedule schedule_from_csv(std::istream& in, const Dataset& dataset);

// ---- experiment protocols ----

struct CurveConfig {
    std::string method;  // greedy-sr | greedy-restart | best-single |
                         // parallel | ogse | features-only
    std::vector<int> m_values;  // empty: all powers of 2 below n
    int repetitions = 100;
    Time cap = 0;  // 0: dataset limit; otherwise clamped to the limit
    std::uint64_t seed = 0;
    int threads = 1;
};

struct ExperimentReport {
    struct Row {
        std::string method;
        int m = 0;
        int repetition = 0;
        double avg_capped_test_time = 0.0;
    };
    struct Aggregate {
        std::string method;
        int m = 0;
        double mean = 0.0;
    };
    std::vector<Row> rows;
    std::vector<Aggregate> aggregates;
};

/// The training-size protocol: sample m training instances without
/// replacement, fit the method, report the average expected capped time on
/// the held-out instances; repeated `repetitions` times per m.
ExperimentReport run_training_curve(const Dataset& dataset,
                                    const CurveConfig& cfg);

/// The feature protocol: OG^se trained with gamma = 1 on the m training
/// instances, then evaluated with gamma = 0 on the held-out instances;
/// also drives the features-only baseline.
ExperimentReport run_feature_curve(const Dataset& dataset,
                                   const CurveConfig& cfg);

// ---- report formatting ----

std::string report_to_csv(const ExperimentReport& report);
std::string online_report_to_csv(const OnlineReport& report);
std::string per_feature_report_to_csv(const PerFeatureReport& report);
std::string speedup_to_csv(const std::vector<SpeedupRow>& rows,
                           const Dataset& dataset);

/// Fixed-width decimal used everywhere a probability or average is printed.
std::string format_value(double v);

// ---- anytime CSV ----

struct AnytimeData {
    Dataset base;  // instances with decision profiles absent; ids + heuristics
    std::vector<ObjectiveSpec> objectives;
};

/// Parses the anytime CSV (instance_id,heuristic_id,objective_name,
/// time_or_censored). Objective order follows first appearance; weights
/// default to uniform 1/k and can be overridden via `weight.<name>` keys.
AnytimeData load_anytime(std::istream& in, const KeyValues& weights);
AnytimeData load_anytime_file(const std::string& path, const KeyValues& weights);

}  // namespace folio

#endif  // FOLIO_HARNESS_HPP
