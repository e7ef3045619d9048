#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "tfl/mboe.hpp"

namespace {

// Scripted policy: the listed agents advance every step, everyone else
// holds. `delays[a]` holds agent a back for that many steps first.
tfl::ActionFn advance_set(std::set<int> movers, std::vector<int> delays = {}) {
    return [movers = std::move(movers), delays = std::move(delays)](
               int agent, int step, const tfl::EnvState&) {
        if (movers.count(agent) == 0) return tfl::AgentAction::Hold;
        const int delay =
            static_cast<std::size_t>(agent) < delays.size() ? delays[agent] : 0;
        return step > delay ? tfl::AgentAction::Advance : tfl::AgentAction::Hold;
    };
}

}  // namespace

TEST_CASE("tie payouts divide by the configured agent count") {
    const tfl::RewardScheme ilf{tfl::RewardKind::ILF, 100.0};
    const tfl::RewardScheme iqf{tfl::RewardKind::IQF, 100.0};
    CHECK(ilf.solo_reward() == 100.0);
    CHECK(ilf.tie_reward(4) == 25.0);
    CHECK(iqf.tie_reward(4) == 6.25);
    CHECK(iqf.tie_reward(2) == 25.0);
    CHECK_THROWS_AS(ilf.tie_reward(1), std::invalid_argument);
}

TEST_CASE("arena rejects degenerate shapes") {
    CHECK_THROWS_AS((tfl::Arena{0, 6}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((tfl::Arena{3, 2}.validate()), std::invalid_argument);
    CHECK_NOTHROW((tfl::Arena{3, 3}.validate()));
}

TEST_CASE("state keys are injective over the reachable space") {
    const int distance = 3;

    SUBCASE("positions only") {
        std::set<tfl::StateKey> keys;
        for (int p0 = 0; p0 <= distance; ++p0) {
            for (int p1 = 0; p1 <= distance; ++p1) {
                tfl::EnvState s;
                s.positions = {p0, p1};
                keys.insert(tfl::encode_state(s, tfl::StateType::TypeA, distance));
            }
        }
        CHECK(keys.size() == 16);

        tfl::EnvState sample;
        sample.positions = {3, 2};
        CHECK(tfl::encode_state(sample, tfl::StateType::TypeA, distance) == 14);
    }

    SUBCASE("positions plus winner flag") {
        const int n = 3;
        std::set<tfl::StateKey> keys;
        for (int p0 = 0; p0 <= distance; ++p0) {
            for (int p1 = 0; p1 <= distance; ++p1) {
                for (int p2 = 0; p2 <= distance; ++p2) {
                    for (int flag = 0; flag <= n; ++flag) {
                        tfl::EnvState s;
                        s.positions = {p0, p1, p2};
                        s.winner_flags.emplace(n, std::uint8_t{0});
                        if (flag > 0) (*s.winner_flags)[flag - 1] = 1;
                        keys.insert(tfl::encode_state(s, tfl::StateType::TypeB,
                                                      distance));
                    }
                }
            }
        }
        // (distance+1)^n one-hot-or-empty flag patterns: 64 * 4 keys.
        CHECK(keys.size() == 256);
    }

    SUBCASE("invalid inputs") {
        tfl::EnvState s;
        s.positions = {0, 4};
        CHECK_THROWS_AS(tfl::encode_state(s, tfl::StateType::TypeA, distance),
                        std::out_of_range);

        tfl::EnvState no_flags;
        no_flags.positions = {0, 0};
        CHECK_THROWS_AS(
            tfl::encode_state(no_flags, tfl::StateType::TypeB, distance),
            std::invalid_argument);

        tfl::EnvState two_flags;
        two_flags.positions = {0, 0};
        two_flags.winner_flags = std::vector<std::uint8_t>{1, 1};
        CHECK_THROWS_AS(
            tfl::encode_state(two_flags, tfl::StateType::TypeB, distance),
            std::invalid_argument);
    }
}

TEST_CASE("simultaneous arrivals split the tie payout") {
    const tfl::Arena arena{3, 6};

    SUBCASE("inverse linear") {
        const tfl::RewardScheme scheme{tfl::RewardKind::ILF, 100.0};
        const auto outcome = tfl::run_episode(arena, 2, scheme, advance_set({0, 1}));
        CHECK(outcome.reachers == std::vector<int>{0, 1});
        CHECK_FALSE(outcome.solo_winner.has_value());
        CHECK(outcome.rewards == std::vector<double>{50.0, 50.0});
    }

    SUBCASE("inverse quadratic") {
        const tfl::RewardScheme scheme{tfl::RewardKind::IQF, 100.0};
        const auto outcome = tfl::run_episode(arena, 2, scheme, advance_set({0, 1}));
        CHECK(outcome.rewards == std::vector<double>{25.0, 25.0});
    }
}

TEST_CASE("a lone reacher takes the full prize") {
    const tfl::Arena arena{3, 6};
    const tfl::RewardScheme scheme{tfl::RewardKind::ILF, 100.0};
    const auto outcome = tfl::run_episode(arena, 3, scheme, advance_set({1}));
    CHECK(outcome.reachers == std::vector<int>{1});
    REQUIRE(outcome.solo_winner.has_value());
    CHECK(*outcome.solo_winner == 1);
    CHECK(outcome.rewards == std::vector<double>{0.0, 100.0, 0.0});
}

TEST_CASE("an episode with no arrivals pays nothing") {
    const tfl::Arena arena{3, 6};
    const tfl::RewardScheme scheme{tfl::RewardKind::ILF, 100.0};
    int steps_seen = 0;
    const auto outcome = tfl::run_episode(
        arena, 2, scheme, advance_set({}), std::nullopt,
        [&](const tfl::StepTransition& tr) {
            ++steps_seen;
            CHECK(tr.terminal == (tr.step == arena.step_limit));
        });
    CHECK(steps_seen == arena.step_limit);
    CHECK(outcome.reachers.empty());
    CHECK_FALSE(outcome.solo_winner.has_value());
    CHECK(outcome.rewards == std::vector<double>{0.0, 0.0});
}

TEST_CASE("the episode ends at the first arrival step") {
    const tfl::Arena arena{3, 6};
    const tfl::RewardScheme scheme{tfl::RewardKind::ILF, 100.0};

    // Agent 0 moves immediately, agent 1 one step later: 0 arrives alone at
    // step 3 while 1 stands one cell short.
    std::vector<tfl::StepTransition> log;
    std::vector<std::vector<int>> before_positions;
    std::vector<double> terminal_rewards;
    int transitions = 0;
    const auto outcome = tfl::run_episode(
        arena, 2, scheme, advance_set({0, 1}, {0, 1}), std::nullopt,
        [&](const tfl::StepTransition& tr) {
            ++transitions;
            before_positions.push_back(tr.before.positions);
            if (tr.terminal) {
                terminal_rewards = tr.rewards;
                CHECK(tr.after.positions == std::vector<int>{3, 2});
            } else {
                CHECK(tr.rewards == std::vector<double>{0.0, 0.0});
            }
        });
    CHECK(transitions == 3);
    CHECK(before_positions == std::vector<std::vector<int>>{
                                  {0, 0}, {1, 0}, {2, 1}});
    CHECK(terminal_rewards == std::vector<double>{100.0, 0.0});
    REQUIRE(outcome.solo_winner.has_value());
    CHECK(*outcome.solo_winner == 0);
}

TEST_CASE("winner flags ride along unchanged for the whole episode") {
    const tfl::Arena arena{3, 6};
    const tfl::RewardScheme scheme{tfl::RewardKind::ILF, 100.0};
    std::vector<std::uint8_t> flags{0, 1};
    tfl::run_episode(arena, 2, scheme, advance_set({0}), flags,
                     [&](const tfl::StepTransition& tr) {
                         REQUIRE(tr.before.winner_flags.has_value());
                         CHECK(*tr.before.winner_flags == flags);
                         CHECK(*tr.after.winner_flags == flags);
                     });

    std::vector<std::uint8_t> wrong_size{0, 1, 0};
    CHECK_THROWS_AS(
        tfl::run_episode(arena, 2, scheme, advance_set({0}), wrong_size),
        std::invalid_argument);
}

TEST_CASE("agents cannot advance past the resource cell") {
    // distance 1: both agents arrive on the very first advance.
    const tfl::Arena arena{1, 4};
    const tfl::RewardScheme scheme{tfl::RewardKind::ILF, 100.0};
    const auto outcome = tfl::run_episode(arena, 2, scheme, advance_set({0, 1}));
    CHECK(outcome.reachers == std::vector<int>{0, 1});
}
