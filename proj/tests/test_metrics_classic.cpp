#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "tfl/metrics_classic.hpp"

namespace {

tfl::EpisodeLog tie_log(int n, int episodes, double pay) {
    tfl::EpisodeLog log(n);
    for (int t = 0; t < episodes; ++t) {
        tfl::EpisodeOutcome e;
        for (int a = 0; a < n; ++a) e.reachers.push_back(a);
        e.rewards.assign(n, pay);
        log.append(std::move(e));
    }
    return log;
}

tfl::EpisodeLog idle_log(int n, int episodes) {
    tfl::EpisodeLog log(n);
    for (int t = 0; t < episodes; ++t) {
        tfl::EpisodeOutcome e;
        e.rewards.assign(n, 0.0);
        log.append(std::move(e));
    }
    return log;
}

}  // namespace

TEST_CASE("totals accumulate per agent") {
    const auto log = tfl::make_pa_log(2, 10);  // 20 episodes, everyone wins 10
    const auto totals = tfl::RewardTotals::from_log(log);
    CHECK(totals.episodes == 20);
    CHECK(totals.r_high == 100.0);
    CHECK(totals.totals == std::vector<double>{1000.0, 1000.0});
}

TEST_CASE("alternation extracts every available reward evenly") {
    const auto totals = tfl::RewardTotals::from_log(tfl::make_pa_log(3, 5));
    CHECK(tfl::efficiency(totals) == 1.0);
    REQUIRE(tfl::reward_fairness(totals).has_value());
    CHECK(*tfl::reward_fairness(totals) == 1.0);
}

TEST_CASE("permanent quadratic ties halve extraction at n=2") {
    // Every episode both agents tie for 25 each: half of the 100 on offer.
    const auto log = tie_log(2, 12, 25.0);
    const auto totals = tfl::RewardTotals::from_log(log);
    CHECK(tfl::efficiency(totals) == doctest::Approx(0.5));
    CHECK(*tfl::reward_fairness(totals) == doctest::Approx(1.0));
}

TEST_CASE("a monopolist splits efficiency from fairness") {
    tfl::EpisodeLog log(2);
    for (int t = 0; t < 10; ++t) {
        tfl::EpisodeOutcome e;
        e.reachers = {0};
        e.solo_winner = 0;
        e.rewards = {100.0, 0.0};
        log.append(std::move(e));
    }
    const auto totals = tfl::RewardTotals::from_log(log);
    CHECK(tfl::efficiency(totals) == doctest::Approx(1.0));
    CHECK(*tfl::reward_fairness(totals) == doctest::Approx(0.5));
}

TEST_CASE("an empty-handed run degenerates fairness, not efficiency") {
    const auto totals = tfl::RewardTotals::from_log(idle_log(3, 8));
    CHECK(tfl::efficiency(totals) == 0.0);
    CHECK_FALSE(tfl::reward_fairness(totals).has_value());
}

TEST_CASE("degenerate inputs are rejected") {
    tfl::RewardTotals empty;
    empty.totals = {0.0, 0.0};
    empty.episodes = 0;
    CHECK_THROWS_AS(tfl::efficiency(empty), std::invalid_argument);

    tfl::RewardTotals bad_prize;
    bad_prize.totals = {1.0, 1.0};
    bad_prize.episodes = 4;
    bad_prize.r_high = 0.0;
    CHECK_THROWS_AS(tfl::efficiency(bad_prize), std::invalid_argument);
}

TEST_CASE("scaling the prize leaves both metrics unchanged") {
    const auto small = tfl::RewardTotals::from_log(tfl::make_pa_log(4, 6, 1.0), 1.0);
    const auto large =
        tfl::RewardTotals::from_log(tfl::make_pa_log(4, 6, 250.0), 250.0);
    CHECK(tfl::efficiency(small) == tfl::efficiency(large));
    CHECK(*tfl::reward_fairness(small) == *tfl::reward_fairness(large));
}
