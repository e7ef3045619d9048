#include <cstdint>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "tfl/metrics_rp.hpp"

namespace {

tfl::EpisodeOutcome solo(int n, int winner) {
    tfl::EpisodeOutcome e;
    e.reachers = {winner};
    e.solo_winner = winner;
    e.rewards.assign(n, 0.0);
    e.rewards[winner] = 100.0;
    return e;
}

tfl::EpisodeOutcome idle(int n) {
    tfl::EpisodeOutcome e;
    e.rewards.assign(n, 0.0);
    return e;
}

// Profile with the given gap sequence; only fields the scores read are
// populated with care.
tfl::GapProfile profile_with_gaps(std::vector<int> gaps) {
    tfl::GapProfile p;
    p.win_count = static_cast<int>(gaps.size()) + 1;
    p.gaps = std::move(gaps);
    return p;
}

// Winner sequence repeated `repeats` times, every episode a solo win.
tfl::EpisodeLog pattern_log(int n, const std::vector<int>& pattern,
                            int repeats) {
    tfl::EpisodeLog log(n);
    for (int r = 0; r < repeats; ++r) {
        for (int w : pattern) log.append(solo(n, w));
    }
    return log;
}

}  // namespace

TEST_CASE("rhythm score compares mean gap to the ideal symmetrically") {
    const auto even = profile_with_gaps({2, 2});
    CHECK(tfl::rotational_score(even, 2.0) == 1.0);
    CHECK(tfl::rotational_score(even, 4.0) == 0.5);
    CHECK(tfl::rotational_score(even, 1.0) == 0.5);

    // Overshooting and undershooting by the same factor score the same.
    const auto fast = profile_with_gaps({2, 2});   // mean 2 vs ideal 4
    const auto slow = profile_with_gaps({8, 8});   // mean 8 vs ideal 4
    CHECK(tfl::rotational_score(fast, 4.0) == tfl::rotational_score(slow, 4.0));

    // No collapse far out: four times the ideal still leaves signal.
    const auto far = profile_with_gaps({16, 16});
    CHECK(tfl::rotational_score(far, 4.0) == 0.25);

    tfl::GapProfile lone;
    lone.win_count = 1;
    CHECK(tfl::rotational_score(lone, 3.0) == 0.0);
    CHECK_THROWS_AS(tfl::rotational_score(even, 0.0), std::domain_error);
}

TEST_CASE("waiting-period score peaks at the ideal count") {
    CHECK(tfl::waiting_periods_eval(4, 4.0) == 1.0);
    CHECK(tfl::waiting_periods_eval(6, 4.0) == 0.5);
    CHECK(tfl::waiting_periods_eval(2, 4.0) == 0.5);
    CHECK(tfl::waiting_periods_eval(8, 4.0) == 0.0);   // hard zero at 2x
    CHECK(tfl::waiting_periods_eval(9, 4.0) == 0.0);
    CHECK(tfl::waiting_periods_eval(0, 4.0) == 0.0);
    CHECK_THROWS_AS(tfl::waiting_periods_eval(3, 0.0), std::domain_error);
}

TEST_CASE("the legacy rhythm score collapses where the new one does not") {
    const auto mid = profile_with_gaps({6, 6});     // mean 6 vs ideal 4
    CHECK(tfl::awe_legacy(mid, 4.0) == 0.5);
    const auto under = profile_with_gaps({2, 2});   // mean 2 vs ideal 4
    CHECK(tfl::awe_legacy(under, 4.0) == 0.5);

    const auto at_double = profile_with_gaps({8, 8});
    CHECK(tfl::awe_legacy(at_double, 4.0) == 0.0);
    CHECK(tfl::rotational_score(at_double, 4.0) == 0.5);

    tfl::GapProfile lone;
    lone.win_count = 1;
    CHECK(tfl::awe_legacy(lone, 4.0) == 0.0);
    CHECK_THROWS_AS(tfl::awe_legacy(mid, 0.0), std::domain_error);
}

TEST_CASE("per-agent combination is a weighted mean") {
    CHECK(tfl::rp_per_agent(0.6, 0.9, {2.0, 1.0}) == doctest::Approx(0.7));
    CHECK(tfl::rp_per_agent(0.6, 0.9, {1.0, 0.0}) == 0.6);
    CHECK(tfl::rp_per_agent(0.6, 0.9, {0.0, 1.0}) == 0.9);
    CHECK_THROWS_AS(tfl::rp_per_agent(0.5, 0.5, {0.0, 0.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(tfl::rp_per_agent(0.5, 0.5, {-1.0, 2.0}),
                    std::invalid_argument);
}

TEST_CASE("perfect alternation scores one under every variant") {
    for (int n : {2, 3, 5}) {
        const auto log = tfl::make_pa_log(n, 10);
        for (const auto variant :
             {tfl::RpVariant::ExclusiveBoth, tfl::RpVariant::ReachBoth,
              tfl::RpVariant::ReachRsExclusiveWpe,
              tfl::RpVariant::ExclusiveRsReachWpe}) {
            CHECK(tfl::rp_system(log, variant) == 1.0);
        }
        tfl::PriorityVector uniform;
        uniform.shares.assign(n, 1.0 / n);
        CHECK(tfl::weighted_rp_system(log, uniform) == 1.0);
    }
}

TEST_CASE("a monopoly scores near zero, frozen by hand") {
    // Agent 0 wins all 10 episodes: its rhythm and period scores are both
    // 0; agent 1 never wins, forming one long period against an ideal of 5.
    const auto log = pattern_log(2, {0}, 10);
    const double expected = 0.5 * (0.0 + 0.5 * (0.0 + (1.0 - 4.0 / 5.0)));
    CHECK(tfl::rp_system(log, tfl::RpVariant::ExclusiveBoth) ==
          doctest::Approx(expected));
    CHECK(tfl::rp_system(log, tfl::RpVariant::ExclusiveBoth) ==
          doctest::Approx(0.05));
    // All wins are solo, so the reach reading is identical.
    CHECK(tfl::rp_system(log, tfl::RpVariant::ReachBoth) ==
          tfl::rp_system(log, tfl::RpVariant::ExclusiveBoth));
}

TEST_CASE("component weights shift the blend") {
    const auto log = pattern_log(2, {0}, 10);
    // Doubling the rhythm weight dilutes the only nonzero component, the
    // idle agent's period score of 0.2.
    CHECK(tfl::rp_system(log, tfl::RpVariant::ExclusiveBoth, {2.0, 1.0}) ==
          doctest::Approx(0.5 * (0.2 / 3.0)));
    CHECK(tfl::rp_system(log, tfl::RpVariant::ExclusiveBoth, {0.0, 1.0}) ==
          doctest::Approx(0.1));
}

TEST_CASE("priority shares reshape the ideals to full score") {
    // Agent 0 takes every other episode, agents 1 and 2 split the rest:
    // exactly the 1/2, 1/4, 1/4 target, so the weighted score is exact 1.
    const auto log = pattern_log(3, {0, 1, 0, 2}, 2);
    tfl::PriorityVector shares;
    shares.shares = {0.5, 0.25, 0.25};
    CHECK(tfl::weighted_rp_system(log, shares) == 1.0);

    // The uniform evaluator sees the same log imperfectly.
    CHECK(tfl::rp_system(log, tfl::RpVariant::ExclusiveBoth) < 1.0);
}

TEST_CASE("priority vectors are validated") {
    const auto log = tfl::make_pa_log(3, 4);
    tfl::PriorityVector bad;
    bad.shares = {1.0, 0.0000001, 0.0000001};  // a full share is rejected
    CHECK_THROWS_AS(tfl::weighted_rp_system(log, bad), std::domain_error);

    bad.shares = {0.5, 0.3, 0.3};  // sums to 1.1
    CHECK_THROWS_AS(tfl::weighted_rp_system(log, bad), std::domain_error);

    bad.shares = {0.5, 0.5};  // wrong length
    CHECK_THROWS_AS(tfl::weighted_rp_system(log, bad), std::invalid_argument);

    bad.shares = {0.5, 0.6, -0.1};
    CHECK_THROWS_AS(tfl::weighted_rp_system(log, bad), std::domain_error);
}

TEST_CASE("equal shares reproduce the uniform evaluator bit for bit") {
    std::uint64_t seed = 31;
    for (int n : {2, 3, 5, 8}) {
        tfl::PriorityVector uniform;
        uniform.shares.assign(n, 1.0 / n);
        for (int rep = 0; rep < 5; ++rep) {
            const auto log = tfl::make_random_log(n, 120, seed++);
            const double via_weights = tfl::weighted_rp_system(log, uniform);
            const double direct =
                tfl::rp_system(log, tfl::RpVariant::ExclusiveBoth);
            CHECK(via_weights == direct);

            const auto family = tfl::rp_family(log);
            CHECK(family.frp == direct);
            CHECK(family.rp_excl == direct);
        }
    }
}

TEST_CASE("the family bundle agrees with the single-variant evaluators") {
    const auto log = tfl::make_random_log(4, 150, 0xf00d);
    const tfl::RpWeights weights{1.0, 2.0};
    const auto family = tfl::rp_family(log, weights);
    CHECK(family.rp_excl ==
          tfl::rp_system(log, tfl::RpVariant::ExclusiveBoth, weights));
    CHECK(family.rp_reach ==
          tfl::rp_system(log, tfl::RpVariant::ReachBoth, weights));
    CHECK(family.rp_rs_mxae ==
          tfl::rp_system(log, tfl::RpVariant::ReachRsExclusiveWpe, weights));
    CHECK(family.rp_rs_mxax ==
          tfl::rp_system(log, tfl::RpVariant::ExclusiveRsReachWpe, weights));

    // Component means stay inside [0,1].
    for (const double v :
         {family.rs_excl, family.rs_reach, family.wpe_excl, family.wpe_reach,
          family.awe_excl, family.awe_reach, family.rp_excl, family.rp_reach,
          family.rp_rs_mxae, family.rp_rs_mxax}) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("empty logs are rejected") {
    tfl::EpisodeLog log(2);
    CHECK_THROWS_AS(tfl::rp_system(log, tfl::RpVariant::ExclusiveBoth),
                    std::invalid_argument);
    CHECK_THROWS_AS(tfl::rp_family(log), std::invalid_argument);
    tfl::PriorityVector uniform;
    uniform.shares = {0.5, 0.5};
    CHECK_THROWS_AS(tfl::weighted_rp_system(log, uniform),
                    std::invalid_argument);
}

TEST_CASE("idle episodes between wins still count as waiting time") {
    // One agent wins episodes 1 and 6 of 6; episodes 2..5 are idle for all.
    tfl::EpisodeLog log(2);
    log.append(solo(2, 0));
    for (int t = 0; t < 4; ++t) log.append(idle(2));
    log.append(solo(2, 0));
    const auto profile =
        tfl::extract_gap_profile(log, 0, tfl::WinEventKind::Exclusive);
    CHECK(profile.gaps == std::vector<int>{4});
    CHECK(profile.waiting_period_count == 1);
    // mean gap 4 vs ideal 1: rhythm 0.25, one period vs ideal 3: 1/3.
    CHECK(tfl::rotational_score(profile, 1.0) == 0.25);
    CHECK(tfl::waiting_periods_eval(profile.waiting_period_count, 3.0) ==
          doctest::Approx(1.0 / 3.0));
}
