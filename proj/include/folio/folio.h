/*
 * Copyright 2026 The folio authors.
 * License: Apache License 2.0
 *
 * C API for the folio algorithm-portfolio scheduling library. All objects
 * are opaque handles; every function returns a status code and reports
 * details through folio_last_error(). CSV-producing functions allocate the
 * result with malloc-compatible semantics; release it with
 * folio_string_free().
 *
 * Option strings use the same `key = value` line format as config files
 * (keys documented per function); pass NULL or "" for defaults.
 */

#ifndef FOLIO_FOLIO_H
#define FOLIO_FOLIO_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
    FOLIO_OK = 0,
    FOLIO_ERR_INTERNAL = 1, /* unexpected failure */
    FOLIO_ERR_INPUT = 2     /* malformed input, bad arguments */
};

typedef struct folio_dataset folio_dataset;
typedef struct folio_schedule folio_schedule;

/* Message for the most recent error on this thread. */
const char* folio_last_error(void);

void folio_string_free(char* s);

/* ---- datasets ---- */

/* Loads a runtimes CSV (instance_id,heuristic_id,sample_index,time,
 * censored[,weight]). Never-solved instances are discarded. */
int folio_dataset_load(const char* runtimes_csv_path, folio_dataset** out);

/* Attaches Boolean features from a features CSV (instance_id,feature_name,
 * value) and auto-adds the always-true ALL feature. */
int folio_dataset_load_features(folio_dataset* dataset,
                                const char* features_csv_path);

/* Generates a synthetic dataset from a synth spec file. Keys: heuristics,
 * instances, clusters, samples, noise, censor_rate, limit, cluster_features,
 * paired_strengths. Same seed, same bytes. */
int folio_dataset_synth(const char* spec_path, uint64_t seed,
                        folio_dataset** out);

int folio_dataset_runtimes_csv(const folio_dataset* dataset, char** out_csv);
int folio_dataset_features_csv(const folio_dataset* dataset, char** out_csv);

int folio_dataset_num_instances(const folio_dataset* dataset);
int folio_dataset_num_heuristics(const folio_dataset* dataset);
int folio_dataset_discarded(const folio_dataset* dataset);
int64_t folio_dataset_limit(const folio_dataset* dataset);

void folio_dataset_free(folio_dataset* dataset);

/* ---- schedules ---- */

/* `model` is "sr", "restart" or "mixed"; mixed reads per-heuristic models
 * from options keys `model.<heuristic>`. cap <= 0 means the dataset limit. */
int folio_greedy(const folio_dataset* dataset, const char* model, int64_t cap,
                 const char* options, folio_schedule** out_schedule,
                 char** out_trace_csv);

/* Exhaustive optimal schedule for tiny inputs. Options keys: max_segments
 * (default 6). */
int folio_oracle(const folio_dataset* dataset, const char* model, int64_t cap,
                 const char* options, folio_schedule** out_schedule,
                 double* out_cost);

int folio_parallel(const folio_dataset* dataset, int64_t quantum, int64_t cap,
                   folio_schedule** out_schedule);

int folio_best_single(const folio_dataset* dataset, int64_t cap,
                      char** out_heuristic_name, double* out_cost);

int folio_schedule_parse(const char* csv_text, const folio_dataset* dataset,
                         folio_schedule** out);
int folio_schedule_csv(const folio_schedule* schedule,
                       const folio_dataset* dataset, char** out_csv);

/* Sum over instances of weight * E[min{cap, T(S, x)}]. */
int folio_evaluate(const folio_dataset* dataset,
                   const folio_schedule* schedule, int64_t cap,
                   double* out_cost);

void folio_schedule_free(folio_schedule* schedule);

/* ---- online learners ---- */

/* Options keys: cap, seed, gamma (override), c, eta, slots, model.
 * Emits per-round CSV (round,charged_time,exploration_time,cumulative_avg). */
int folio_online_run(const folio_dataset* dataset, const char* options,
                     char** out_report_csv);

/* Same options as folio_online_run; requires features. Emits the per-feature
 * CSV (feature,n_instances,charged_time,greedy_benchmark,ratio). */
int folio_ogse_run(const folio_dataset* dataset, const char* options,
                   char** out_report_csv);

/* ---- experiment protocols ---- */

/* Options keys: method, reps, cap, seed, threads, m (comma-separated list).
 * Methods: greedy-sr, greedy-restart, best-single, parallel, ogse,
 * features-only. Emits (method,m,repetition,avg_capped_time). */
int folio_curve(const folio_dataset* dataset, const char* options,
                char** out_report_csv);

/* Train/test split of the features-only baseline. Options keys: cap, seed,
 * train_fraction (default 0.5). */
int folio_features_only(const folio_dataset* dataset, const char* options,
                        char** out_report_csv);

/* ---- anytime objectives ---- */

/* Expands an anytime CSV (instance_id,heuristic_id,objective_name,
 * time_or_censored) into a weighted runtimes CSV of fictitious instances.
 * Options keys: weight.<objective>. */
int folio_anytime_expand(const char* anytime_csv_path, const char* options,
                         char** out_runtimes_csv);

/* Per-objective speedup factors under leave-one-out greedy training.
 * Options keys: weight.<objective>, cap, model. */
int folio_speedup(const char* anytime_csv_path, const char* options,
                  char** out_report_csv);

#ifdef __cplusplus
}
#endif

#endif /* FOLIO_FOLIO_H */
