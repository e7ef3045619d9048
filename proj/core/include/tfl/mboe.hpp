#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "tfl/episode_log.hpp"

namespace tfl {

// Tie payout rules when several agents reach on the same step. Both divide
// by the configured number of agents, not the tie size: InverseLinear pays
// r_high/n to each tying agent, InverseQuadratic r_high/n^2.
enum class RewardKind { ILF, IQF };

struct RewardScheme {
    RewardKind kind = RewardKind::ILF;
    double r_high = 100.0;

    double solo_reward() const { return r_high; }
    double tie_reward(int agent_count) const;
};

// What the agents observe. TypeA is positions only; TypeB additionally
// carries one flag per agent marking the previous episode's solo winner (at
// most one flag set, none after a tie or an idle episode).
enum class StateType { TypeA, TypeB };

enum class AgentAction : int { Advance = 0, Hold = 1 };
inline constexpr int kActionCount = 2;

// Shared race track: every agent starts `distance` cells from one common
// resource cell and can advance one cell per step. An episode ends on the
// first step at which any agent stands on the resource cell, or after
// step_limit steps.
struct Arena {
    int distance = 3;
    int step_limit = 6;

    void validate() const;
};

struct EnvState {
    std::vector<int> positions;
    // Present exactly when the runs use TypeB observations.
    std::optional<std::vector<std::uint8_t>> winner_flags;
};

using StateKey = std::uint64_t;

// Injective packing of an observation into an integer key. Positions are
// radix-(distance+1) digits; TypeB appends the winner flag pattern, of
// which only the n+1 one-hot-or-empty patterns are reachable. The packed
// space, (distance+1)^n * (n+1), must fit in 64 bits.
StateKey encode_state(const EnvState& state, StateType type, int distance);

using ActionFn =
    std::function<AgentAction(int agent, int step, const EnvState& state)>;

// Everything a learner needs from one environment step. Rewards are all
// zero until the terminal step, which carries the episode payout.
struct StepTransition {
    int step = 1;
    const EnvState& before;
    const std::vector<AgentAction>& actions;
    const EnvState& after;
    const std::vector<double>& rewards;
    bool terminal = false;
};

using TransitionFn = std::function<void(const StepTransition&)>;

// Plays one episode: all agents act simultaneously each step, the episode
// ends at the first arrival step (everyone standing on the resource cell
// that step is a reacher) or after step_limit steps with no arrivals.
// `prev_winner_flags` feeds TypeB observations and is carried unchanged
// through the whole episode.
EpisodeOutcome run_episode(
    const Arena& arena, int agent_count, const RewardScheme& scheme,
    const ActionFn& act,
    const std::optional<std::vector<std::uint8_t>>& prev_winner_flags = {},
    const TransitionFn& on_transition = {});

}  // namespace tfl
