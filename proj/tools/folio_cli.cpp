// Copyright 2026 The folio authors.
// License: Apache License 2.0
//
// Command-line front end. Talks to the core exclusively through the C API,
// the same surface other language bindings would use.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "folio/folio.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInput = 2;

struct CommonOpts {
    std::string data;
    std::string features;
    std::string config;
    std::string out;
    std::string model = "sr";
    std::int64_t cap = 0;
    std::uint64_t seed = 0;
};

[[noreturn]] void fail(int code) {
    std::cerr << "error: " << folio_last_error() << "\n";
    std::exit(code);
}

void check(int rc) {
    if (rc != FOLIO_OK) fail(rc == FOLIO_ERR_INPUT ? kExitInput : kExitInternal);
}

void write_output(const std::string& out_path, const char* text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "error: cannot write " << out_path << "\n";
        std::exit(kExitInput);
    }
    out << text;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot open " << path << "\n";
        std::exit(kExitInput);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Config file contents first, command-line overrides last; the C API keeps
// the last occurrence of a key.
std::string merged_options(const CommonOpts& common,
                           const std::vector<std::string>& extra) {
    std::string options;
    if (!common.config.empty()) options += read_file(common.config) + "\n";
    for (const auto& line : extra) options += line + "\n";
    return options;
}

folio_dataset* load_dataset(const CommonOpts& common) {
    folio_dataset* ds = nullptr;
    check(folio_dataset_load(common.data.c_str(), &ds));
    if (!common.features.empty()) {
        check(folio_dataset_load_features(ds, common.features.c_str()));
    }
    const int discarded = folio_dataset_discarded(ds);
    if (discarded > 0) {
        std::cerr << "note: discarded " << discarded
                  << " instance(s) no heuristic solves within the limit\n";
    }
    return ds;
}

void add_common(CLI::App* cmd, CommonOpts& common, bool needs_data) {
    auto* data = cmd->add_option("--data", common.data, "runtimes CSV");
    if (needs_data) data->required();
    cmd->add_option("--features", common.features, "features CSV");
    cmd->add_option("--config", common.config, "key = value config file");
    cmd->add_option("--out", common.out, "output path (default stdout)");
    cmd->add_option("--model", common.model, "sr | restart | mixed");
    cmd->add_option("--cap", common.cap, "per-instance time cap B");
    cmd->add_option("--seed", common.seed, "random seed");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"folio: schedules and learned portfolios over recorded "
                 "heuristic runtimes"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");
    app.failure_message(CLI::FailureMessage::help);

    CommonOpts common;

    auto* cmd_greedy = app.add_subcommand(
        "greedy", "fit the greedy schedule and print it with densities");
    add_common(cmd_greedy, common, true);

    auto* cmd_eval = app.add_subcommand(
        "eval", "evaluate a schedule CSV against a dataset");
    std::string schedule_path;
    add_common(cmd_eval, common, true);
    cmd_eval->add_option("--schedule", schedule_path, "schedule CSV")
        ->required();

    auto* cmd_oracle = app.add_subcommand(
        "oracle", "exhaustive optimal schedule (tiny inputs only)");
    int max_segments = 6;
    add_common(cmd_oracle, common, true);
    cmd_oracle->add_option("--max-segments", max_segments,
                           "search depth bound");

    auto* cmd_online = app.add_subcommand(
        "online", "run the online greedy learner over the instance stream");
    double gamma = -1.0;
    add_common(cmd_online, common, true);
    cmd_online->add_option("--gamma", gamma, "exploration probability");

    auto* cmd_ogse = app.add_subcommand(
        "ogse", "run the feature-conditioned learner (per-feature report)");
    add_common(cmd_ogse, common, true);
    cmd_ogse->add_option("--gamma", gamma, "exploration probability");

    auto* cmd_fonly = app.add_subcommand(
        "features-only", "single-heuristic-per-feature baseline");
    double train_fraction = 0.5;
    add_common(cmd_fonly, common, true);
    cmd_fonly->add_option("--train-fraction", train_fraction,
                          "training split fraction");

    auto* cmd_expand = app.add_subcommand(
        "anytime-expand", "expand anytime objectives into weighted instances");
    std::string anytime_path;
    add_common(cmd_expand, common, false);
    cmd_expand->add_option("--anytime", anytime_path, "anytime CSV")
        ->required();

    auto* cmd_speedup = app.add_subcommand(
        "speedup", "per-objective speedup factors (leave-one-out greedy)");
    add_common(cmd_speedup, common, false);
    cmd_speedup->add_option("--anytime", anytime_path, "anytime CSV")
        ->required();

    auto* cmd_synth = app.add_subcommand(
        "synth", "generate a synthetic dataset from a spec file");
    std::string spec_path;
    std::string features_out;
    add_common(cmd_synth, common, false);
    cmd_synth->add_option("--spec", spec_path, "synth spec file")->required();
    cmd_synth->add_option("--features-out", features_out,
                          "also write the features CSV here");

    auto* cmd_curve = app.add_subcommand(
        "curve", "training-size experiment (method x m x repetition)");
    std::string method = "greedy-sr";
    int reps = 100;
    int threads = 1;
    std::string m_list;
    add_common(cmd_curve, common, true);
    cmd_curve->add_option("--method", method,
                          "greedy-sr | greedy-restart | best-single | "
                          "parallel | ogse | features-only");
    cmd_curve->add_option("--reps", reps, "repetitions per m");
    cmd_curve->add_option("--threads", threads, "parallel repetition jobs");
    cmd_curve->add_option("--m", m_list, "comma-separated m values");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitInput;
    }

    if (cmd_synth->parsed()) {
        folio_dataset* ds = nullptr;
        check(folio_dataset_synth(spec_path.c_str(), common.seed, &ds));
        char* csv = nullptr;
        check(folio_dataset_runtimes_csv(ds, &csv));
        write_output(common.out, csv);
        folio_string_free(csv);
        if (!features_out.empty()) {
            char* fcsv = nullptr;
            check(folio_dataset_features_csv(ds, &fcsv));
            write_output(features_out, fcsv);
            folio_string_free(fcsv);
        }
        folio_dataset_free(ds);
        return kExitOk;
    }

    if (cmd_expand->parsed() || cmd_speedup->parsed()) {
        std::vector<std::string> extra;
        if (common.cap > 0) extra.push_back("cap = " + std::to_string(common.cap));
        extra.push_back("model = " + common.model);
        const std::string options = merged_options(common, extra);
        char* csv = nullptr;
        if (cmd_expand->parsed()) {
            check(folio_anytime_expand(anytime_path.c_str(), options.c_str(),
                                       &csv));
        } else {
            check(folio_speedup(anytime_path.c_str(), options.c_str(), &csv));
        }
        write_output(common.out, csv);
        folio_string_free(csv);
        return kExitOk;
    }

    folio_dataset* ds = load_dataset(common);

    if (cmd_greedy->parsed()) {
        const std::string options = merged_options(common, {});
        folio_schedule* schedule = nullptr;
        char* trace = nullptr;
        check(folio_greedy(ds, common.model.c_str(), common.cap,
                           options.c_str(), &schedule, &trace));
        write_output(common.out, trace);
        folio_string_free(trace);
        folio_schedule_free(schedule);
    } else if (cmd_eval->parsed()) {
        const std::string text = read_file(schedule_path);
        folio_schedule* schedule = nullptr;
        check(folio_schedule_parse(text.c_str(), ds, &schedule));
        double cost = 0.0;
        check(folio_evaluate(ds, schedule, common.cap, &cost));
        char line[64];
        std::snprintf(line, sizeof(line), "total_cost\n%.9f\n", cost);
        write_output(common.out, line);
        folio_schedule_free(schedule);
    } else if (cmd_oracle->parsed()) {
        std::vector<std::string> extra{
            "max_segments = " + std::to_string(max_segments)};
        const std::string options = merged_options(common, extra);
        folio_schedule* schedule = nullptr;
        double cost = 0.0;
        check(folio_oracle(ds, common.model.c_str(), common.cap,
                           options.c_str(), &schedule, &cost));
        char* csv = nullptr;
        check(folio_schedule_csv(schedule, ds, &csv));
        std::string text = csv;
        char line[64];
        std::snprintf(line, sizeof(line), "# total_cost=%.9f\n", cost);
        text += line;
        write_output(common.out, text.c_str());
        folio_string_free(csv);
        folio_schedule_free(schedule);
    } else if (cmd_online->parsed() || cmd_ogse->parsed()) {
        std::vector<std::string> extra{
            "cap = " + std::to_string(common.cap),
            "seed = " + std::to_string(common.seed),
            "model = " + (common.model == "mixed" ? std::string("sr")
                                                  : common.model)};
        if (gamma >= 0.0) extra.push_back("gamma = " + std::to_string(gamma));
        const std::string options = merged_options(common, extra);
        char* csv = nullptr;
        if (cmd_online->parsed()) {
            check(folio_online_run(ds, options.c_str(), &csv));
        } else {
            check(folio_ogse_run(ds, options.c_str(), &csv));
        }
        write_output(common.out, csv);
        folio_string_free(csv);
    } else if (cmd_fonly->parsed()) {
        std::vector<std::string> extra{
            "cap = " + std::to_string(common.cap),
            "seed = " + std::to_string(common.seed),
            "train_fraction = " + std::to_string(train_fraction)};
        const std::string options = merged_options(common, extra);
        char* csv = nullptr;
        check(folio_features_only(ds, options.c_str(), &csv));
        write_output(common.out, csv);
        folio_string_free(csv);
    } else if (cmd_curve->parsed()) {
        std::vector<std::string> extra{
            "method = " + method,
            "reps = " + std::to_string(reps),
            "cap = " + std::to_string(common.cap),
            "seed = " + std::to_string(common.seed),
            "threads = " + std::to_string(threads)};
        if (!m_list.empty()) extra.push_back("m = " + m_list);
        const std::string options = merged_options(common, extra);
        char* csv = nullptr;
        check(folio_curve(ds, options.c_str(), &csv));
        write_output(common.out, csv);
        folio_string_free(csv);
    }

    folio_dataset_free(ds);
    return kExitOk;
}
