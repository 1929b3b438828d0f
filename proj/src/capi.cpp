// Copyright 2026 The folio authors.
// License: Apache License 2.0
//
// extern-C surface over the C++ core. Exceptions never cross this boundary:
// every entry point converts them into status codes plus a thread-local
// error message.

#include "folio/folio.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "anytime.hpp"
#include "core.hpp"
#include "experts.hpp"
#include "greedy.hpp"
#include "harness.hpp"
#include "online.hpp"

struct folio_dataset {
    folio::Dataset data;
};

struct folio_schedule {
    folio::Schedule data;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename Fn>
int guarded(Fn&& fn) {
    try {
        fn();
        return FOLIO_OK;
    } catch (const folio::InputError& e) {
        g_last_error = e.what();
        return FOLIO_ERR_INPUT;
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return FOLIO_ERR_INPUT;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return FOLIO_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return FOLIO_ERR_INTERNAL;
    }
}

folio::KeyValues parse_options(const char* options) {
    if (!options || !*options) return {};
    std::istringstream in(options);
    return folio::parse_key_values(in);
}

long long opt_int(const folio::KeyValues& kv, const std::string& key,
                  long long fallback) {
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    return std::stoll(it->second);
}

double opt_double(const folio::KeyValues& kv, const std::string& key,
                  double fallback) {
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    return std::stod(it->second);
}

std::string opt_string(const folio::KeyValues& kv, const std::string& key,
                       const std::string& fallback) {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : it->second;
}

folio::Time resolve_cap(const folio::Dataset& ds, long long requested) {
    if (ds.limit < 1) throw folio::InputError("dataset has no time limit");
    if (requested <= 0) return ds.limit;
    return std::min<folio::Time>(requested, ds.limit);
}

folio::ExecModel parse_model_name(const std::string& name) {
    if (name == "sr") return folio::ExecModel::SuspendResume;
    if (name == "restart") return folio::ExecModel::Restart;
    throw folio::InputError("unknown execution model: " + name);
}

std::vector<folio::ExecModel> resolve_models(const folio::Dataset& ds,
                                             const std::string& mode,
                                             const folio::KeyValues& kv) {
    const std::size_t k = ds.heuristic_names.size();
    if (mode == "sr" || mode == "restart") {
        return std::vector<folio::ExecModel>(k, parse_model_name(mode));
    }
    if (mode != "mixed") {
        throw folio::InputError("model must be sr, restart or mixed");
    }
    std::vector<folio::ExecModel> models(k, folio::ExecModel::SuspendResume);
    for (std::size_t h = 0; h < k; ++h) {
        auto it = kv.find("model." + ds.heuristic_names[h]);
        if (it != kv.end()) models[h] = parse_model_name(it->second);
    }
    return models;
}

folio::OnlineConfig online_config(const folio::Dataset& ds,
                                  const folio::KeyValues& kv) {
    folio::OnlineConfig cfg;
    cfg.cap = resolve_cap(ds, opt_int(kv, "cap", 0));
    cfg.horizon = static_cast<int>(
        opt_int(kv, "n", static_cast<long long>(ds.instances.size())));
    cfg.explore_c = opt_double(kv, "c", 1.0);
    cfg.gamma_override = opt_double(kv, "gamma", -1.0);
    cfg.eta = opt_double(kv, "eta", 0.0);
    cfg.slots = static_cast<int>(opt_int(kv, "slots", 0));
    cfg.seed = static_cast<std::uint64_t>(opt_int(kv, "seed", 0));
    cfg.model = parse_model_name(opt_string(kv, "model", "sr"));
    return cfg;
}

}  // namespace

extern "C" {

const char* folio_last_error(void) { return g_last_error.c_str(); }

void folio_string_free(char* s) { std::free(s); }

int folio_dataset_load(const char* path, folio_dataset** out) {
    return guarded([&] {
        if (!path || !out) throw folio::InputError("null argument");
        auto ds = std::make_unique<folio_dataset>();
        ds->data = folio::load_runtimes_file(path);
        *out = ds.release();
    });
}

int folio_dataset_load_features(folio_dataset* dataset, const char* path) {
    return guarded([&] {
        if (!dataset || !path) throw folio::InputError("null argument");
        folio::load_features_file(path, dataset->data);
    });
}

int folio_dataset_synth(const char* spec_path, uint64_t seed,
                        folio_dataset** out) {
    return guarded([&] {
        if (!spec_path || !out) throw folio::InputError("null argument");
        const auto kv = folio::parse_key_values_file(spec_path);
        auto ds = std::make_unique<folio_dataset>();
        ds->data = folio::synth_generate(folio::parse_synth_spec(kv), seed);
        *out = ds.release();
    });
}

int folio_dataset_runtimes_csv(const folio_dataset* dataset, char** out_csv) {
    return guarded([&] {
        if (!dataset || !out_csv) throw folio::InputError("null argument");
        *out_csv = dup_string(folio::runtimes_to_csv(dataset->data));
    });
}

int folio_dataset_features_csv(const folio_dataset* dataset, char** out_csv) {
    return guarded([&] {
        if (!dataset || !out_csv) throw folio::InputError("null argument");
        *out_csv = dup_string(folio::features_to_csv(dataset->data));
    });
}

int folio_dataset_num_instances(const folio_dataset* dataset) {
    return dataset ? static_cast<int>(dataset->data.instances.size()) : -1;
}

int folio_dataset_num_heuristics(const folio_dataset* dataset) {
    return dataset ? static_cast<int>(dataset->data.heuristic_names.size())
                   : -1;
}

int folio_dataset_discarded(const folio_dataset* dataset) {
    return dataset ? dataset->data.discarded : -1;
}

int64_t folio_dataset_limit(const folio_dataset* dataset) {
    return dataset ? dataset->data.limit : -1;
}

void folio_dataset_free(folio_dataset* dataset) { delete dataset; }

int folio_greedy(const folio_dataset* dataset, const char* model, int64_t cap,
                 const char* options, folio_schedule** out_schedule,
                 char** out_trace_csv) {
    return guarded([&] {
        if (!dataset || !model || !out_schedule) {
            throw folio::InputError("null argument");
        }
        const auto kv = parse_options(options);
        const auto models = resolve_models(dataset->data, model, kv);
        const folio::Time bound = resolve_cap(dataset->data, cap);
        auto [schedule, trace] =
            folio::greedy_schedule(dataset->data.instances, models, bound);
        if (out_trace_csv) {
            *out_trace_csv = dup_string(
                folio::schedule_to_csv(schedule, dataset->data, &trace));
        }
        *out_schedule = new folio_schedule{std::move(schedule)};
    });
}

int folio_oracle(const folio_dataset* dataset, const char* model, int64_t cap,
                 const char* options, folio_schedule** out_schedule,
                 double* out_cost) {
    return guarded([&] {
        if (!dataset || !model || !out_schedule) {
            throw folio::InputError("null argument");
        }
        const auto kv = parse_options(options);
        const auto models = resolve_models(dataset->data, model, kv);
        const folio::Time bound = resolve_cap(dataset->data, cap);
        const auto max_segments =
            static_cast<std::size_t>(opt_int(kv, "max_segments", 6));
        folio::Schedule schedule = folio::optimal_schedule_oracle(
            dataset->data.instances, models, bound, max_segments);
        if (out_cost) {
            *out_cost =
                folio::evaluate(schedule, dataset->data.instances, bound);
        }
        *out_schedule = new folio_schedule{std::move(schedule)};
    });
}

int folio_parallel(const folio_dataset* dataset, int64_t quantum, int64_t cap,
                   folio_schedule** out_schedule) {
    return guarded([&] {
        if (!dataset || !out_schedule) throw folio::InputError("null argument");
        const folio::Time bound = resolve_cap(dataset->data, cap);
        std::vector<folio::ExecModel> models(
            dataset->data.heuristic_names.size(),
            folio::ExecModel::SuspendResume);
        *out_schedule = new folio_schedule{folio::parallel_schedule(
            dataset->data.heuristic_names.size(), models, quantum, bound)};
    });
}

int folio_best_single(const folio_dataset* dataset, int64_t cap,
                      char** out_heuristic_name, double* out_cost) {
    return guarded([&] {
        if (!dataset) throw folio::InputError("null argument");
        const folio::Time bound = resolve_cap(dataset->data, cap);
        const auto [h, cost] = folio::best_single_heuristic(
            dataset->data.instances, dataset->data.heuristic_names.size(),
            bound);
        if (out_heuristic_name) {
            *out_heuristic_name = dup_string(dataset->data.heuristic_names[h]);
        }
        if (out_cost) *out_cost = cost;
    });
}

int folio_schedule_parse(const char* csv_text, const folio_dataset* dataset,
                         folio_schedule** out) {
    return guarded([&] {
        if (!csv_text || !dataset || !out) {
            throw folio::InputError("null argument");
        }
        std::istringstream in(csv_text);
        *out = new folio_schedule{
            folio::schedule_from_csv(in, dataset->data)};
    });
}

int folio_schedule_csv(const folio_schedule* schedule,
                       const folio_dataset* dataset, char** out_csv) {
    return guarded([&] {
        if (!schedule || !dataset || !out_csv) {
            throw folio::InputError("null argument");
        }
        *out_csv =
            dup_string(folio::schedule_to_csv(schedule->data, dataset->data));
    });
}

int folio_evaluate(const folio_dataset* dataset,
                   const folio_schedule* schedule, int64_t cap,
                   double* out_cost) {
    return guarded([&] {
        if (!dataset || !schedule || !out_cost) {
            throw folio::InputError("null argument");
        }
        const folio::Time bound = resolve_cap(dataset->data, cap);
        *out_cost =
            folio::evaluate(schedule->data, dataset->data.instances, bound);
    });
}

void folio_schedule_free(folio_schedule* schedule) { delete schedule; }

int folio_online_run(const folio_dataset* dataset, const char* options,
                     char** out_report_csv) {
    return guarded([&] {
        if (!dataset || !out_report_csv) {
            throw folio::InputError("null argument");
        }
        const auto kv = parse_options(options);
        const auto cfg = online_config(dataset->data, kv);
        const auto report =
            folio::run_online(dataset->data.instances,
                              dataset->data.heuristic_names.size(), cfg);
        *out_report_csv = dup_string(folio::online_report_to_csv(report));
    });
}

int folio_ogse_run(const folio_dataset* dataset, const char* options,
                   char** out_report_csv) {
    return guarded([&] {
        if (!dataset || !out_report_csv) {
            throw folio::InputError("null argument");
        }
        const auto kv = parse_options(options);
        const auto cfg = online_config(dataset->data, kv);
        folio::Dataset labeled = dataset->data;
        folio::add_all_feature(labeled);
        const auto report = folio::run_ogse(
            labeled.instances, labeled.feature_universe(),
            labeled.heuristic_names.size(), cfg);
        *out_report_csv = dup_string(folio::per_feature_report_to_csv(report));
    });
}

int folio_curve(const folio_dataset* dataset, const char* options,
                char** out_report_csv) {
    return guarded([&] {
        if (!dataset || !out_report_csv) {
            throw folio::InputError("null argument");
        }
        const auto kv = parse_options(options);
        folio::CurveConfig cfg;
        cfg.method = opt_string(kv, "method", "greedy-sr");
        cfg.repetitions = static_cast<int>(opt_int(kv, "reps", 100));
        cfg.cap = opt_int(kv, "cap", 0);
        cfg.seed = static_cast<std::uint64_t>(opt_int(kv, "seed", 0));
        cfg.threads = static_cast<int>(opt_int(kv, "threads", 1));
        const std::string m_list = opt_string(kv, "m", "");
        if (!m_list.empty()) {
            std::istringstream in(m_list);
            std::string token;
            while (std::getline(in, token, ',')) {
                cfg.m_values.push_back(std::stoi(token));
            }
        }
        const bool feature_method =
            cfg.method == "ogse" || cfg.method == "features-only";
        const auto report = feature_method
                                ? folio::run_feature_curve(dataset->data, cfg)
                                : folio::run_training_curve(dataset->data, cfg);
        *out_report_csv = dup_string(folio::report_to_csv(report));
    });
}

int folio_features_only(const folio_dataset* dataset, const char* options,
                        char** out_report_csv) {
    return guarded([&] {
        if (!dataset || !out_report_csv) {
            throw folio::InputError("null argument");
        }
        const auto kv = parse_options(options);
        const folio::Time cap = resolve_cap(dataset->data, opt_int(kv, "cap", 0));
        const auto seed = static_cast<std::uint64_t>(opt_int(kv, "seed", 0));
        const double frac = opt_double(kv, "train_fraction", 0.5);
        if (frac <= 0.0 || frac >= 1.0) {
            throw folio::InputError("train_fraction must be in (0,1)");
        }
        folio::Dataset labeled = dataset->data;
        folio::add_all_feature(labeled);
        const auto n = labeled.instances.size();
        if (n < 2) throw folio::InputError("need at least 2 instances");
        const auto m = std::max<std::size_t>(
            1, std::min<std::size_t>(n - 1,
                                     static_cast<std::size_t>(frac * n)));
        std::mt19937_64 rng(folio::mix_seed(seed, 0xfe01));
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        for (std::size_t i = 0; i < m; ++i) {
            std::swap(order[i], order[i + rng() % (n - i)]);
        }
        std::vector<folio::Instance> train, test;
        for (std::size_t i = 0; i < n; ++i) {
            (i < m ? train : test).push_back(labeled.instances[order[i]]);
        }
        const auto report = folio::features_only_baseline(
            train, test, labeled.feature_universe(),
            labeled.heuristic_names.size(), cap, seed);
        std::ostringstream out;
        out << "instance_id,heuristic,charged_time,expected_time\n";
        for (const auto& row : report.rows) {
            out << row.instance_id << ','
                << labeled.heuristic_names[row.chosen_heuristic] << ','
                << row.charged_time << ','
                << folio::format_value(row.expected_time) << "\n";
        }
        out << "# avg_charged=" << folio::format_value(report.avg_charged)
            << "\n";
        *out_report_csv = dup_string(out.str());
    });
}

int folio_anytime_expand(const char* anytime_csv_path, const char* options,
                         char** out_runtimes_csv) {
    return guarded([&] {
        if (!anytime_csv_path || !out_runtimes_csv) {
            throw folio::InputError("null argument");
        }
        const auto kv = parse_options(options);
        const auto data = folio::load_anytime_file(anytime_csv_path, kv);
        folio::Dataset expanded;
        expanded.heuristic_names = data.base.heuristic_names;
        expanded.limit = data.base.limit;
        expanded.instances =
            folio::expand_instances(data.base.instances, data.objectives);
        *out_runtimes_csv = dup_string(folio::runtimes_to_csv(expanded));
    });
}

int folio_speedup(const char* anytime_csv_path, const char* options,
                  char** out_report_csv) {
    return guarded([&] {
        if (!anytime_csv_path || !out_report_csv) {
            throw folio::InputError("null argument");
        }
        const auto kv = parse_options(options);
        const auto data = folio::load_anytime_file(anytime_csv_path, kv);
        const auto models = resolve_models(
            data.base, opt_string(kv, "model", "sr"), kv);
        const folio::Time cap = resolve_cap(data.base, opt_int(kv, "cap", 0));
        const auto rows = folio::speedup_factors(
            data.base.instances, data.objectives, models, cap);
        *out_report_csv = dup_string(folio::speedup_to_csv(rows, data.base));
    });
}

}  // extern "C"
