#pragma once

#include <array>
#include <cstdint>
#include <unordered_map>

#include "tfl/mboe.hpp"
#include "tfl/rng.hpp"

namespace tfl {

// Tabular learner hyperparameters. Exploration decays linearly from
// eps_start at episode 1 to eps_end at episode ceil(decay_fraction * budget)
// and stays constant afterwards.
struct QLearnerParams {
    double alpha_lr = 0.3;
    double gamma = 0.999;
    double eps_start = 0.9;
    double eps_end = 0.004;
    double eps_decay_fraction = 0.75;

    void validate() const;
};

// Action values for one agent, lazily zero-initialised per state.
class QTable {
public:
    double value(StateKey state, AgentAction action) const;
    double max_value(StateKey state) const;
    std::array<double, kActionCount>& row(StateKey state);
    std::size_t state_count() const { return table_.size(); }

private:
    std::unordered_map<StateKey, std::array<double, kActionCount>> table_;
};

// Exploration rate for a 1-based episode within a fixed budget.
double epsilon_at(std::int64_t episode, std::int64_t budget,
                  const QLearnerParams& params);

// One tabular update:
// Q(s,a) += alpha * (r + gamma * max_a' Q(s',a') - Q(s,a)),
// with the bootstrap term dropped on terminal transitions.
void q_update(QTable& table, StateKey state, AgentAction action, double reward,
              StateKey next_state, bool terminal, const QLearnerParams& params);

// Epsilon-greedy with a uniform draw among tied argmax actions.
AgentAction select_action(const QTable& table, StateKey state, double epsilon,
                          RngStream& rng);

// The random baseline policy: uniform over the two actions.
AgentAction random_policy_action(RngStream& rng);

}  // namespace tfl
