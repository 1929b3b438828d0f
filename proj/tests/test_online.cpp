// Copyright 2026 The folio authors.
// License: Apache License 2.0

#include "online.hpp"

#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "greedy.hpp"
#include "test_util.hpp"

using namespace folio;
using namespace folio::testutil;

TEST_CASE("make_grid sizes and ordering") {
    CHECK(make_grid(2, 8).actions.size() == 8);
    CHECK(make_grid(1, 1).actions.size() == 1);
    CHECK(make_grid(3, 100).actions.size() == 21);

    const auto grid = make_grid(2, 8);
    CHECK(grid.actions.front().heuristic == 0);
    CHECK(grid.actions.front().tau == 1);
    CHECK(grid.actions.back().heuristic == 1);
    CHECK(grid.actions.back().tau == 8);
    for (std::size_t i = 1; i < grid.actions.size(); ++i) {
        const auto& a = grid.actions[i - 1];
        const auto& b = grid.actions[i];
        CHECK((b.heuristic > a.heuristic ||
               (b.heuristic == a.heuristic && b.tau > a.tau)));
    }
}

TEST_CASE("og_select basics") {
    OnlineConfig cfg;
    cfg.cap = 8;
    cfg.horizon = 10;
    cfg.seed = 5;

    SUBCASE("fresh state emits one segment per slot") {
        OnlineState st = OnlineState::init(2, cfg);
        const Selection sel = og_select(st);
        CHECK(sel.schedule.segments.size() == st.slots.size());
        CHECK(sel.chosen.size() == st.slots.size());
    }
    SUBCASE("gamma = 1 always explores") {
        cfg.gamma_override = 1.0;
        OnlineState st = OnlineState::init(2, cfg);
        for (int i = 0; i < 20; ++i) CHECK(og_select(st).explore);
    }
    SUBCASE("a dominant weight is picked essentially always") {
        OnlineState st = OnlineState::init(2, cfg);
        for (auto& slot : st.slots) {
            std::fill(slot.weights.begin(), slot.weights.end(), 1e-6);
            slot.weights[3] = 1.0;
        }
        int hits = 0;
        const int rounds = 50;
        for (int i = 0; i < rounds; ++i) {
            const Selection sel = og_select(st);
            if (std::all_of(sel.chosen.begin(), sel.chosen.end(),
                            [](int c) { return c == 3; })) {
                ++hits;
            }
        }
        CHECK(hits == rounds);
    }
}

TEST_CASE("simulate_capped_time on deterministic data equals the walk") {
    std::mt19937_64 rng(9);
    Schedule s;
    s.models = {ExecModel::SuspendResume, ExecModel::Restart};
    s.segments = {{0, 2}, {1, 3}, {0, 4}};
    const Instance x = det_instance("x", {5, 2});
    const Time expected = det_capped_time(s, x, 10);
    for (int i = 0; i < 20; ++i) {
        CHECK(simulate_capped_time(s, x, 10, rng) == expected);
    }
}

TEST_CASE("observe_instance accounting") {
    OnlineConfig cfg;
    cfg.cap = 8;
    cfg.horizon = 4;
    cfg.seed = 11;

    SUBCASE("non-exploring rounds leave weights unchanged and cost 0 probes") {
        cfg.gamma_override = 0.0;
        OnlineState st = OnlineState::init(2, cfg);
        const auto before = st.slots;
        const Selection sel = og_select(st);
        CHECK_FALSE(sel.explore);
        const RoundOutcome out =
            observe_instance(st, det_instance("x", {3, 3}), sel);
        CHECK(out.exploration_time == 0);
        CHECK(out.charged_time <= cfg.cap);
        for (std::size_t j = 0; j < st.slots.size(); ++j) {
            CHECK(st.slots[j].weights == before[j].weights);
        }
    }
    SUBCASE("exploring rounds bookkeep k*B*ceil(log2 B)") {
        cfg.gamma_override = 1.0;
        OnlineState st = OnlineState::init(2, cfg);
        const Selection sel = og_select(st);
        const RoundOutcome out =
            observe_instance(st, det_instance("x", {3, 3}), sel);
        CHECK(out.exploration_time == exploration_probe_cost(2, 8));
        CHECK(exploration_probe_cost(2, 8) == 2 * 8 * 3);
    }
    SUBCASE("only the solving heuristic earns reward mass") {
        cfg.gamma_override = 1.0;
        OnlineState st = OnlineState::init(2, cfg);
        const Selection sel = og_select(st);
        // h0 solves at 1; h1 never solves within the cap.
        const Instance x =
            instance("x", {det(1), profile({}, 100, 1)});
        observe_instance(st, x, sel);
        const auto& grid = st.grid.actions;
        for (const auto& slot : st.slots) {
            for (std::size_t a = 0; a < grid.size(); ++a) {
                for (std::size_t b = 0; b < grid.size(); ++b) {
                    if (grid[a].heuristic == 0 && grid[b].heuristic == 1 &&
                        grid[a].tau == grid[b].tau) {
                        CHECK(slot.weights[a] >= slot.weights[b]);
                    }
                }
            }
        }
    }
}

TEST_CASE("slot learner update favors the rewarded action") {
    SlotLearner learner;
    learner.weights = {0.25, 0.25, 0.25, 0.25};
    learner.update({1.0, 0.0, 0.0, 0.0}, 1.0);
    CHECK(learner.weights[0] > learner.weights[1]);
    CHECK(learner.weights[1] == doctest::Approx(learner.weights[2]));
    double total = 0.0;
    for (double w : learner.weights) {
        CHECK(w > 0.0);
        total += w;
    }
    CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("run_online basics") {
    SUBCASE("n=1, gamma=0: one round, no exploration") {
        OnlineConfig cfg;
        cfg.cap = 8;
        cfg.horizon = 1;
        cfg.gamma_override = 0.0;
        cfg.seed = 3;
        const OnlineReport rep =
            run_online({det_instance("x", {3, 3})}, 2, cfg);
        REQUIRE(rep.rows.size() == 1);
        CHECK(rep.total_exploration == 0.0);
        CHECK(rep.rows[0].charged_time <= cfg.cap);
    }
    SUBCASE("charge never exceeds the cap; totals add up") {
        OnlineConfig cfg;
        cfg.cap = 16;
        cfg.horizon = 60;
        cfg.seed = 7;
        std::vector<Instance> stream;
        for (int i = 0; i < 60; ++i) {
            stream.push_back(det_instance("x" + std::to_string(i),
                                          {Time(1 + i % 5), Time(2 + i % 7)}));
        }
        const OnlineReport rep = run_online(stream, 2, cfg);
        double charged = 0.0;
        double probes = 0.0;
        for (const auto& row : rep.rows) {
            CHECK(row.charged_time <= cfg.cap);
            CHECK(row.charged_time >= 1);
            charged += static_cast<double>(row.charged_time);
            probes += static_cast<double>(row.exploration_time);
        }
        CHECK(rep.total_charged == doctest::Approx(charged));
        CHECK(rep.total_exploration == doctest::Approx(probes));
        CHECK(rep.rows.back().cumulative_avg ==
              doctest::Approx(charged / 60.0));
        CHECK(rep.greedy_benchmark > 0.0);
    }
    SUBCASE("fixed seed reproduces the run") {
        OnlineConfig cfg;
        cfg.cap = 8;
        cfg.horizon = 30;
        cfg.seed = 19;
        std::vector<Instance> stream;
        for (int i = 0; i < 30; ++i) {
            stream.push_back(
                instance("x" + std::to_string(i), {profile({1, 4}), det(3)}));
        }
        const OnlineReport a = run_online(stream, 2, cfg);
        const OnlineReport b = run_online(stream, 2, cfg);
        REQUIRE(a.rows.size() == b.rows.size());
        for (std::size_t i = 0; i < a.rows.size(); ++i) {
            CHECK(a.rows[i].charged_time == b.rows[i].charged_time);
            CHECK(a.rows[i].exploration_time == b.rows[i].exploration_time);
        }
    }
    SUBCASE("gamma=0 keeps every weight frozen for the whole run") {
        OnlineConfig cfg;
        cfg.cap = 8;
        cfg.horizon = 25;
        cfg.gamma_override = 0.0;
        cfg.seed = 23;
        OnlineState st = OnlineState::init(2, cfg);
        const auto frozen = st.slots;
        for (int i = 0; i < 25; ++i) {
            const Selection sel = og_select(st);
            observe_instance(st, det_instance("x", {2, 6}), sel);
        }
        for (std::size_t j = 0; j < st.slots.size(); ++j) {
            CHECK(st.slots[j].weights == frozen[j].weights);
        }
    }
}

TEST_CASE("learning drives the average toward the one-step solution") {
    // One action (h0, tau=1) solves everything in time 1.
    OnlineConfig cfg;
    cfg.cap = 8;
    cfg.horizon = 1500;
    cfg.gamma_override = 0.25;
    cfg.seed = 31;
    std::vector<Instance> stream(1500, det_instance("x", {1, 8}));
    const OnlineReport rep = run_online(stream, 2, cfg);
    double tail = 0.0;
    const std::size_t q = rep.rows.size() / 4;
    for (std::size_t i = rep.rows.size() - q; i < rep.rows.size(); ++i) {
        tail += static_cast<double>(rep.rows[i].charged_time);
    }
    CHECK(tail / q < 2.5);
}
