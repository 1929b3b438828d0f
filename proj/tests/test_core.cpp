// Copyright 2026 The folio authors.
// License: Apache License 2.0

#include "core.hpp"

#include <random>

#include "doctest.h"
#include "test_util.hpp"

using namespace folio;
using namespace folio::testutil;

namespace {

// The Figure-1 style fixture: S = <(h1,2),(h2,2),(h1,4)>, both solve times 3.
Schedule figure1_schedule(ExecModel h1_model) {
    Schedule s;
    s.segments = {{0, 2}, {1, 2}, {0, 4}};
    s.models = {h1_model, ExecModel::SuspendResume};
    return s;
}

Instance figure1_instance() { return det_instance("x", {3, 3}); }

Schedule random_schedule(std::mt19937_64& rng, std::size_t k, int max_segments,
                         Time max_tau) {
    Schedule s;
    for (std::size_t h = 0; h < k; ++h) {
        s.models.push_back(rng() % 2 == 0 ? ExecModel::SuspendResume
                                          : ExecModel::Restart);
    }
    const int n = 1 + static_cast<int>(rng() % max_segments);
    for (int i = 0; i < n; ++i) {
        s.segments.push_back({static_cast<int>(rng() % k),
                              static_cast<Time>(1 + rng() % max_tau)});
    }
    return s;
}

Instance random_instance(std::mt19937_64& rng, std::size_t k, int max_samples,
                         Time max_time) {
    std::vector<RuntimeProfile> profiles;
    for (std::size_t h = 0; h < k; ++h) {
        RuntimeProfile p;
        const int r = 1 + static_cast<int>(rng() % max_samples);
        for (int i = 0; i < r; ++i) {
            if (rng() % 5 == 0) {
                p.samples.push_back({max_time, true});
            } else {
                p.samples.push_back({static_cast<Time>(1 + rng() % max_time),
                                     false});
            }
        }
        profiles.push_back(std::move(p));
    }
    return instance("r", std::move(profiles));
}

}  // namespace

TEST_CASE("cdf counts solved samples only") {
    CHECK(det(3).cdf(0) == 0.0);
    CHECK(profile({1, 3}).cdf(1) == doctest::Approx(0.5));
    // A censored sample never counts as solved, even at its limit.
    CHECK(profile({2}, 100, 1).cdf(100) == doctest::Approx(0.5));
    CHECK(profile({2}, 100, 1).cdf(1) == 0.0);
}

TEST_CASE("segment_success in both execution models") {
    const auto p = profile({1, 3});
    CHECK(segment_success(p, ExecModel::Restart, 0, 1) == doctest::Approx(0.5));
    // Conditional continuation: (F(4)-F(2)) / (1-F(2)).
    CHECK(segment_success(p, ExecModel::SuspendResume, 2, 2) ==
          doctest::Approx(1.0));
    // Exhausted run contributes nothing.
    CHECK(segment_success(p, ExecModel::SuspendResume, 3, 5) == 0.0);
}

TEST_CASE("advance multiplies survival and tracks accrued time") {
    const std::vector<Instance> instances{det_instance("a", {5, 9})};
    const std::vector<ExecModel> models{ExecModel::SuspendResume,
                                        ExecModel::Restart};
    CoverageState st = CoverageState::initial(1, 2);

    SUBCASE("segment shorter than every solve time leaves q at 1") {
        const CoverageState next = advance(st, {0, 2}, instances, models);
        CHECK(next.survival[0] == doctest::Approx(1.0));
        CHECK(next.accrued[0] == 2);
        CHECK(next.wall == 2);
        CHECK(st.accrued[0] == 0);  // input not mutated
    }

    SUBCASE("restart accrues no time") {
        const CoverageState next = advance(st, {1, 4}, instances, models);
        CHECK(next.accrued[1] == 0);
    }
}

TEST_CASE("figure-1 prefix: neither 2-unit slice solves") {
    const std::vector<Instance> instances{figure1_instance()};
    const Schedule s = figure1_schedule(ExecModel::SuspendResume);
    CoverageState st = CoverageState::initial(1, 2);
    st = advance(st, s.segments[0], instances, s.models);
    st = advance(st, s.segments[1], instances, s.models);
    CHECK(st.survival[0] == doctest::Approx(1.0));
}

TEST_CASE("independent restarts multiply survival") {
    const std::vector<Instance> instances{
        instance("x", {profile({1, 3})})};
    const std::vector<ExecModel> models{ExecModel::Restart};
    CoverageState st = CoverageState::initial(1, 1);
    st = advance(st, {0, 1}, instances, models);
    st = advance(st, {0, 1}, instances, models);
    CHECK(st.survival[0] == doctest::Approx(0.25));
}

TEST_CASE("coverage") {
    SUBCASE("empty schedule covers nothing") {
        Schedule s;
        s.models = {ExecModel::SuspendResume};
        CHECK(coverage(s, {det_instance("a", {4})}) == 0.0);
    }
    SUBCASE("running to the max sample time guarantees a solve") {
        Schedule s;
        s.models = {ExecModel::SuspendResume};
        s.segments = {{0, 4}};
        CHECK(coverage(s, {det_instance("a", {4})}) == doctest::Approx(1.0));
    }
    SUBCASE("two unit restarts on {1,3}") {
        Schedule s;
        s.models = {ExecModel::Restart};
        s.segments = {{0, 1}, {0, 1}};
        CHECK(coverage(s, {instance("x", {profile({1, 3})})}) ==
              doctest::Approx(0.75));
    }
}

TEST_CASE("expected_capped_time matches the two figure-1 execution models") {
    CHECK(expected_capped_time(figure1_schedule(ExecModel::SuspendResume),
                               figure1_instance(), 100) == doctest::Approx(5.0));
    CHECK(expected_capped_time(figure1_schedule(ExecModel::Restart),
                               figure1_instance(), 100) == doctest::Approx(7.0));
}

TEST_CASE("expected_capped_time over randomized restarts") {
    Schedule s;
    s.models = {ExecModel::Restart};
    s.segments = {{0, 1}, {0, 1}, {0, 1}};
    const Instance x = instance("x", {profile({1, 3})});
    // Enumerating the 2^3 seed outcomes: 1*(1/2) + 2*(1/4) + 3*(1/4).
    CHECK(expected_capped_time(s, x, 3) == doctest::Approx(1.75));
}

TEST_CASE("expected_capped_time rejects cap < 1") {
    CHECK_THROWS_AS(
        expected_capped_time(figure1_schedule(ExecModel::Restart),
                             figure1_instance(), 0),
        std::invalid_argument);
}

TEST_CASE("evaluate is weight-linear") {
    const Schedule s = figure1_schedule(ExecModel::SuspendResume);
    const Instance x = figure1_instance();
    const double one = evaluate(s, {x}, 100);
    CHECK(one == doctest::Approx(expected_capped_time(s, x, 100)));
    CHECK(evaluate(s, {x, x}, 100) == doctest::Approx(2 * one));

    Instance heavy = x;
    heavy.weight = 2.0;
    CHECK(evaluate(s, {x, heavy}, 100) == doctest::Approx(15.0));
}

TEST_CASE("survival is non-increasing and coverage non-decreasing") {
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 50; ++iter) {
        const std::size_t k = 1 + rng() % 3;
        const Schedule s = random_schedule(rng, k, 6, 8);
        std::vector<Instance> instances;
        for (int i = 0; i < 3; ++i) {
            instances.push_back(random_instance(rng, k, 4, 10));
        }
        CoverageState st = CoverageState::initial(instances.size(), k);
        Schedule prefix;
        prefix.models = s.models;
        double prev_cov = 0.0;
        for (const auto& seg : s.segments) {
            const CoverageState next = advance(st, seg, instances, s.models);
            for (std::size_t i = 0; i < instances.size(); ++i) {
                CHECK(next.survival[i] <= st.survival[i] + kTol);
            }
            prefix.segments.push_back(seg);
            const double cov = coverage(prefix, instances);
            CHECK(cov >= prev_cov - kTol);
            prev_cov = cov;
            st = next;
        }
    }
}

TEST_CASE("expected_capped_time <= cap, with equality iff zero coverage") {
    std::mt19937_64 rng(21);
    for (int iter = 0; iter < 50; ++iter) {
        const std::size_t k = 1 + rng() % 3;
        const Schedule s = random_schedule(rng, k, 6, 8);
        const Instance x = random_instance(rng, k, 4, 10);
        const Time cap = 1 + static_cast<Time>(rng() % 20);
        const double e = expected_capped_time(s, x, cap);
        CHECK(e <= cap + kTol);

        // Coverage within the cap: truncate the schedule at the cap first.
        Schedule truncated;
        truncated.models = s.models;
        Time wall = 0;
        for (const auto& seg : s.segments) {
            if (wall >= cap) break;
            truncated.segments.push_back(
                {seg.heuristic, std::min<Time>(seg.tau, cap - wall)});
            wall += seg.tau;
        }
        const double cov = coverage(truncated, {x});
        if (cov <= kTol) {
            CHECK(e == doctest::Approx(static_cast<double>(cap)));
        } else {
            CHECK(e < cap + kTol);
        }
    }
}

TEST_CASE("prefix dominance: appending a segment never hurts") {
    std::mt19937_64 rng(33);
    for (int iter = 0; iter < 50; ++iter) {
        const std::size_t k = 1 + rng() % 3;
        Schedule s = random_schedule(rng, k, 6, 8);
        const Instance x = random_instance(rng, k, 4, 10);
        const Time cap = 1 + static_cast<Time>(rng() % 30);
        const double before = expected_capped_time(s, x, cap);
        s.segments.push_back({static_cast<int>(rng() % k),
                              static_cast<Time>(1 + rng() % 8)});
        CHECK(expected_capped_time(s, x, cap) <= before + kTol);
    }
}

TEST_CASE("deterministic consistency with a direct timeline walk") {
    std::mt19937_64 rng(55);
    for (int iter = 0; iter < 200; ++iter) {
        const std::size_t k = 1 + rng() % 3;
        const Schedule s = random_schedule(rng, k, 8, 6);
        std::vector<Time> times;
        for (std::size_t h = 0; h < k; ++h) {
            times.push_back(static_cast<Time>(1 + rng() % 16));
        }
        const Instance x = det_instance("d", times);
        const Time cap = 1 + static_cast<Time>(rng() % 25);
        CHECK(expected_capped_time(s, x, cap) ==
              doctest::Approx(static_cast<double>(det_capped_time(s, x, cap))));
    }
}

TEST_CASE("Monte-Carlo simulation agrees with the analytic evaluation") {
    std::mt19937_64 rng(99);
    for (int iter = 0; iter < 3; ++iter) {
        const std::size_t k = 1 + rng() % 2;
        const Schedule s = random_schedule(rng, k, 5, 6);
        const Instance x = random_instance(rng, k, 5, 10);
        const Time cap = 8;
        const double analytic = expected_capped_time(s, x, cap);
        const auto mc = mc_capped_time(s, x, cap, 100000, 1000 + iter);
        CHECK(std::abs(analytic - mc.mean) <=
              3.0 * std::max(mc.std_error, 1e-6));
    }
}
