// Copyright 2026 The folio authors.
// License: Apache License 2.0

#include "experts.hpp"

#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "test_util.hpp"

using namespace folio;
using namespace folio::testutil;

namespace {

double awake_prob(const SleepingExpertsState& st, const std::vector<int>& awake,
                  int expert) {
    double total = 0.0;
    for (int j : awake) total += st.weights[j];
    return st.weights[expert] / total;
}

Instance featured(std::string id, std::vector<Time> times,
                  std::vector<std::string> features) {
    Instance x = det_instance(std::move(id), std::move(times));
    std::sort(features.begin(), features.end());
    x.features = std::move(features);
    return x;
}

}  // namespace

TEST_CASE("sleeping experts init") {
    const auto st = SleepingExpertsState::init(4, 100);
    CHECK(st.weights.size() == 4);
    for (double w : st.weights) CHECK(w == doctest::Approx(0.25));
    CHECK(st.beta == doctest::Approx(1.0 / (1.0 + std::sqrt(
                                                2.0 * std::log(4.0) / 100.0))));
    CHECK(st.beta > 0.0);
    CHECK(st.beta < 1.0);
}

TEST_CASE("sleeping_select") {
    std::mt19937_64 rng(2);
    SleepingExpertsState st;
    st.weights = {3.0, 1.0, 5.0};

    SUBCASE("single awake expert is forced") {
        for (int i = 0; i < 10; ++i) {
            CHECK(sleeping_select(st, {1}, rng) == 1);
        }
    }
    SUBCASE("weights (3,1) select roughly 3:1") {
        int first = 0;
        const int rounds = 20000;
        for (int i = 0; i < rounds; ++i) {
            if (sleeping_select(st, {0, 1}, rng) == 0) ++first;
        }
        CHECK(static_cast<double>(first) / rounds ==
              doctest::Approx(0.75).epsilon(0.03));
    }
    SUBCASE("empty awake set is an error") {
        CHECK_THROWS_AS(sleeping_select(st, {}, rng), std::invalid_argument);
    }
}

TEST_CASE("sleeping_update") {
    SleepingExpertsState st;
    st.weights = {0.5, 0.5, 0.5};
    st.beta = 0.5;

    SUBCASE("losses (0,1) with beta=0.5 give awake probabilities (2/3, 1/3)") {
        const auto next = sleeping_update(st, {0, 1}, {0.0, 1.0});
        CHECK(awake_prob(next, {0, 1}, 0) == doctest::Approx(2.0 / 3.0));
        CHECK(awake_prob(next, {0, 1}, 1) == doctest::Approx(1.0 / 3.0));
        // The awake total is preserved.
        CHECK(next.weights[0] + next.weights[1] == doctest::Approx(1.0));
        // The asleep expert's weight is bit-identical.
        CHECK(next.weights[2] == st.weights[2]);
    }
    SUBCASE("common losses leave the awake distribution unchanged") {
        const auto next = sleeping_update(st, {0, 2}, {0.7, 0.7});
        CHECK(awake_prob(next, {0, 2}, 0) == doctest::Approx(0.5));
        CHECK(next.weights[0] == doctest::Approx(st.weights[0]));
    }
    SUBCASE("losses outside [0,1] are rejected") {
        CHECK_THROWS_AS(sleeping_update(st, {0}, {1.5}),
                        std::invalid_argument);
        CHECK_THROWS_AS(sleeping_update(st, {0}, {-0.1}),
                        std::invalid_argument);
    }
    SUBCASE("weights stay positive under repeated max loss") {
        auto cur = st;
        for (int i = 0; i < 200; ++i) {
            cur = sleeping_update(cur, {0, 1}, {1.0, 1.0});
        }
        for (double w : cur.weights) CHECK(w > 0.0);
    }
}

TEST_CASE("ogse_step") {
    OnlineConfig cfg;
    cfg.cap = 8;
    cfg.horizon = 10;
    cfg.seed = 13;

    SUBCASE("non-exploring rounds report zero losses") {
        cfg.gamma_override = 0.0;
        OgseState st = OgseState::init({"ALL"}, 2, cfg);
        const auto before = st.experts.weights;
        const OgseRound round = ogse_step(st, featured("x", {3, 5}, {"ALL"}));
        CHECK_FALSE(round.explored);
        for (double l : round.losses) CHECK(l == 0.0);
        CHECK(st.experts.weights == before);
        CHECK(round.charged_time <= cfg.cap);
    }
    SUBCASE("losses are capped expected time over B on exploring rounds") {
        cfg.gamma_override = 1.0;
        OgseState st = OgseState::init({"ALL", "f"}, 2, cfg);
        // Both heuristics take longer than the cap: every proposal's capped
        // expected time is exactly B, so every awake loss is 1.
        const OgseRound round =
            ogse_step(st, featured("x", {99, 99}, {"ALL", "f"}));
        CHECK(round.explored);
        REQUIRE(round.awake.size() == 2);
        for (double l : round.losses) CHECK(l == doctest::Approx(1.0));
        CHECK(round.charged_time == cfg.cap);
    }
    SUBCASE("asleep learners and experts are untouched") {
        cfg.gamma_override = 1.0;
        OgseState st = OgseState::init({"ALL", "f", "g"}, 2, cfg);
        const double g_weight = st.experts.weights[2];
        const auto g_slots = st.learners[2].slots;
        ogse_step(st, featured("x", {2, 4}, {"ALL", "f"}));
        CHECK(st.experts.weights[2] == g_weight);
        for (std::size_t j = 0; j < g_slots.size(); ++j) {
            CHECK(st.learners[2].slots[j].weights == g_slots[j].weights);
        }
    }
    SUBCASE("single expert behaves like plain OG accounting") {
        cfg.gamma_override = 1.0;
        OgseState st = OgseState::init({"ALL"}, 2, cfg);
        const OgseRound round = ogse_step(st, featured("x", {2, 4}, {"ALL"}));
        CHECK(round.chosen_expert == 0);
        CHECK(round.exploration_time == exploration_probe_cost(2, cfg.cap));
    }
}

TEST_CASE("run_ogse per-feature report") {
    OnlineConfig cfg;
    cfg.cap = 8;
    cfg.horizon = 40;
    cfg.seed = 29;
    std::vector<Instance> stream;
    for (int i = 0; i < 40; ++i) {
        const bool even = i % 2 == 0;
        stream.push_back(featured("x" + std::to_string(i),
                                  even ? std::vector<Time>{1, 7}
                                       : std::vector<Time>{7, 1},
                                  {"ALL", even ? "even" : "odd"}));
    }
    const PerFeatureReport rep = run_ogse(stream, {"ALL", "even", "odd"}, 2, cfg);
    REQUIRE(rep.rows.size() == 3);
    double charged_all = 0.0;
    for (const auto& row : rep.rows) {
        if (row.feature == "ALL") {
            CHECK(row.n_instances == 40);
            charged_all = row.charged_time;
        } else {
            CHECK(row.n_instances == 20);
        }
        CHECK(row.greedy_benchmark > 0.0);
        CHECK(row.ratio == doctest::Approx(row.charged_time /
                                           row.greedy_benchmark));
    }
    CHECK(rep.total_charged == doctest::Approx(charged_all));

    const PerFeatureReport again =
        run_ogse(stream, {"ALL", "even", "odd"}, 2, cfg);
    CHECK(again.total_charged == doctest::Approx(rep.total_charged));
    CHECK(again.total_exploration == doctest::Approx(rep.total_exploration));
}

TEST_CASE("features_only_baseline") {
    SUBCASE("one feature, one heuristic") {
        const std::vector<Instance> train{featured("a", {4}, {"ALL"})};
        const std::vector<Instance> test{featured("b", {6}, {"ALL"})};
        const auto rep = features_only_baseline(train, test, {"ALL"}, 1, 10, 1);
        REQUIRE(rep.rows.size() == 1);
        CHECK(rep.rows[0].chosen_heuristic == 0);
        CHECK(rep.rows[0].charged_time == 6);
        CHECK(rep.rows[0].expected_time == doctest::Approx(6.0));
    }
    SUBCASE("feature advice is the training argmin") {
        // On the "fast2" subset, h1 dominates.
        std::vector<Instance> train;
        for (int i = 0; i < 6; ++i) {
            train.push_back(featured("t" + std::to_string(i), {9, 1},
                                     {"ALL", "fast2"}));
        }
        const std::vector<Instance> test{featured("x", {9, 1}, {"fast2"})};
        const auto rep =
            features_only_baseline(train, test, {"ALL", "fast2"}, 2, 10, 2);
        REQUIRE(rep.rows.size() == 1);
        CHECK(rep.rows[0].chosen_heuristic == 1);
        CHECK(rep.rows[0].charged_time == 1);
    }
    SUBCASE("censored choices are charged the cap") {
        std::vector<Instance> train{
            instance("t", {profile({}, 50, 1)}, 1.0)};
        train[0].features = {"ALL"};
        std::vector<Instance> test{instance("x", {profile({}, 50, 1)}, 1.0)};
        test[0].features = {"ALL"};
        const auto rep = features_only_baseline(train, test, {"ALL"}, 1, 10, 3);
        REQUIRE(rep.rows.size() == 1);
        CHECK(rep.rows[0].charged_time == 10);
        CHECK(rep.avg_charged == doctest::Approx(10.0));
    }
}
