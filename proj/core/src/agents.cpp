#include "tfl/agents.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tfl {

void QLearnerParams::validate() const {
    if (!(alpha_lr >= 0.0 && alpha_lr <= 1.0)) {
        throw std::invalid_argument("QLearnerParams: alpha_lr outside [0,1]");
    }
    if (!(gamma >= 0.0 && gamma < 1.0)) {
        throw std::invalid_argument("QLearnerParams: gamma outside [0,1)");
    }
    if (!(eps_start >= 0.0 && eps_start <= 1.0 && eps_end >= 0.0 &&
          eps_end <= 1.0 && eps_end <= eps_start)) {
        throw std::invalid_argument(
            "QLearnerParams: need 0 <= eps_end <= eps_start <= 1");
    }
    if (!(eps_decay_fraction > 0.0 && eps_decay_fraction <= 1.0)) {
        throw std::invalid_argument(
            "QLearnerParams: eps_decay_fraction outside (0,1]");
    }
}

double QTable::value(StateKey state, AgentAction action) const {
    const auto it = table_.find(state);
    if (it == table_.end()) return 0.0;
    return it->second[static_cast<int>(action)];
}

double QTable::max_value(StateKey state) const {
    const auto it = table_.find(state);
    if (it == table_.end()) return 0.0;
    double best = it->second[0];
    for (int a = 1; a < kActionCount; ++a) {
        if (it->second[a] > best) best = it->second[a];
    }
    return best;
}

std::array<double, kActionCount>& QTable::row(StateKey state) {
    return table_.try_emplace(state).first->second;
}

double epsilon_at(std::int64_t episode, std::int64_t budget,
                  const QLearnerParams& params) {
    params.validate();
    if (budget < 1 || episode < 1 || episode > budget) {
        throw std::domain_error("epsilon_at: episode " +
                                std::to_string(episode) +
                                " outside [1, " + std::to_string(budget) + "]");
    }
    const auto decay_end = static_cast<std::int64_t>(
        std::ceil(params.eps_decay_fraction * static_cast<double>(budget)));
    if (episode >= decay_end) return params.eps_end;
    const double progress = static_cast<double>(episode - 1) /
                            static_cast<double>(decay_end - 1);
    return params.eps_start + (params.eps_end - params.eps_start) * progress;
}

void q_update(QTable& table, StateKey state, AgentAction action, double reward,
              StateKey next_state, bool terminal,
              const QLearnerParams& params) {
    const double bootstrap = terminal ? 0.0 : table.max_value(next_state);
    double& q = table.row(state)[static_cast<int>(action)];
    q += params.alpha_lr * (reward + params.gamma * bootstrap - q);
}

AgentAction select_action(const QTable& table, StateKey state, double epsilon,
                          RngStream& rng) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw std::domain_error("select_action: epsilon outside [0,1]");
    }
    if (rng.uniform_double() < epsilon) {
        return static_cast<AgentAction>(rng.uniform_index(kActionCount));
    }
    double best = table.value(state, static_cast<AgentAction>(0));
    int ties = 1;
    AgentAction pick = static_cast<AgentAction>(0);
    for (int a = 1; a < kActionCount; ++a) {
        const double q = table.value(state, static_cast<AgentAction>(a));
        if (q > best) {
            best = q;
            ties = 1;
            pick = static_cast<AgentAction>(a);
        } else if (q == best) {
            // Reservoir draw keeps the choice uniform over all tied actions.
            ++ties;
            if (rng.uniform_index(ties) == 0) pick = static_cast<AgentAction>(a);
        }
    }
    return pick;
}

AgentAction random_policy_action(RngStream& rng) {
    return static_cast<AgentAction>(rng.uniform_index(kActionCount));
}

}  // namespace tfl
