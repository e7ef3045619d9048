#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "tfl/agents.hpp"
#include "tfl/mboe.hpp"
#include "tfl/metrics_rp.hpp"

namespace tfl {

enum class PolicyKind { QLearning, Random };

std::string to_string(StateType type);
std::string to_string(RewardKind kind);
std::string to_string(PolicyKind kind);

// Everything that determines a run. A (config, seed) pair fixes the episode
// log byte for byte; see the README for the seed-splitting scheme. When
// `episodes` is unset the budget rule applies: 10,000 episodes for the
// random baseline, otherwise the agent-count-dependent budget (see
// episode_budget in experiment.hpp).
struct ExperimentConfig {
    int n = 2;
    std::optional<std::int64_t> episodes;
    StateType state_type = StateType::TypeA;
    RewardKind reward = RewardKind::ILF;
    PolicyKind policy = PolicyKind::QLearning;
    std::uint64_t seed = 0;
    RpWeights rp_weights;
    std::optional<PriorityVector> priorities;
    int arena_distance = 3;
    int step_limit = 6;
    QLearnerParams q_params;
    double r_high = 100.0;
    // Disables the tabulated budget overrides for n in {2, 3}.
    bool formula_only = false;

    void validate() const;

    // Short directory-safe tag, e.g. "ql_n3_typea_ilf_seed42".
    std::string tag() const;
};

ExperimentConfig config_from_json_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);
std::string config_to_json_text(const ExperimentConfig& config);
void save_config(const ExperimentConfig& config, const std::string& path);

}  // namespace tfl
