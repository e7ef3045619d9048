#include "tfl/mboe.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace tfl {

double RewardScheme::tie_reward(int agent_count) const {
    if (agent_count < 2) {
        throw std::invalid_argument("RewardScheme::tie_reward: agent_count "
                                    "must be >= 2");
    }
    switch (kind) {
        case RewardKind::ILF:
            return r_high / agent_count;
        case RewardKind::IQF:
            return r_high / (static_cast<double>(agent_count) * agent_count);
    }
    throw std::logic_error("RewardScheme::tie_reward: unknown kind");
}

void Arena::validate() const {
    if (distance < 1) {
        throw std::invalid_argument("Arena: distance must be >= 1");
    }
    if (step_limit < distance) {
        throw std::invalid_argument(
            "Arena: step_limit " + std::to_string(step_limit) +
            " cannot be below distance " + std::to_string(distance));
    }
}

StateKey encode_state(const EnvState& state, StateType type, int distance) {
    if (distance < 1) {
        throw std::invalid_argument("encode_state: distance must be >= 1");
    }
    const std::size_t n = state.positions.size();
    const StateKey radix = static_cast<StateKey>(distance) + 1;
    StateKey key = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const int pos = state.positions[i];
        if (pos < 0 || pos > distance) {
            throw std::out_of_range("encode_state: position " +
                                    std::to_string(pos) + " outside [0, " +
                                    std::to_string(distance) + "]");
        }
        key = key * radix + static_cast<StateKey>(pos);
    }
    if (type == StateType::TypeA) return key;

    if (!state.winner_flags || state.winner_flags->size() != n) {
        throw std::invalid_argument(
            "encode_state: TypeB needs one winner flag per agent");
    }
    StateKey flag_index = 0;  // 0: no previous solo winner, i+1: agent i
    int set = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if ((*state.winner_flags)[i]) {
            ++set;
            flag_index = static_cast<StateKey>(i) + 1;
        }
    }
    if (set > 1) {
        throw std::invalid_argument(
            "encode_state: at most one winner flag may be set");
    }
    return key * (static_cast<StateKey>(n) + 1) + flag_index;
}

EpisodeOutcome run_episode(
    const Arena& arena, int agent_count, const RewardScheme& scheme,
    const ActionFn& act,
    const std::optional<std::vector<std::uint8_t>>& prev_winner_flags,
    const TransitionFn& on_transition) {
    arena.validate();
    if (agent_count < 2) {
        throw std::invalid_argument("run_episode: agent_count must be >= 2");
    }
    if (prev_winner_flags &&
        prev_winner_flags->size() != static_cast<std::size_t>(agent_count)) {
        throw std::invalid_argument(
            "run_episode: winner flag vector size mismatch");
    }

    EnvState state;
    state.positions.assign(agent_count, 0);
    state.winner_flags = prev_winner_flags;

    std::vector<AgentAction> actions(agent_count, AgentAction::Hold);
    std::vector<double> rewards(agent_count, 0.0);

    EpisodeOutcome outcome;
    outcome.rewards.assign(agent_count, 0.0);

    for (int step = 1; step <= arena.step_limit; ++step) {
        for (int a = 0; a < agent_count; ++a) {
            actions[a] = act(a, step, state);
        }
        EnvState next = state;
        for (int a = 0; a < agent_count; ++a) {
            if (actions[a] == AgentAction::Advance &&
                next.positions[a] < arena.distance) {
                ++next.positions[a];
            }
        }
        std::vector<int> arrivals;
        for (int a = 0; a < agent_count; ++a) {
            if (next.positions[a] == arena.distance) arrivals.push_back(a);
        }
        const bool terminal = !arrivals.empty() || step == arena.step_limit;
        std::fill(rewards.begin(), rewards.end(), 0.0);
        if (!arrivals.empty()) {
            const double pay = arrivals.size() == 1
                                   ? scheme.solo_reward()
                                   : scheme.tie_reward(agent_count);
            for (int a : arrivals) rewards[a] = pay;
            outcome.reachers = arrivals;
            if (arrivals.size() == 1) outcome.solo_winner = arrivals[0];
            outcome.rewards = rewards;
        }
        if (on_transition) {
            on_transition(StepTransition{step, state, actions, next, rewards,
                                         terminal});
        }
        state = std::move(next);
        if (terminal) break;
    }
    return outcome;
}

}  // namespace tfl
