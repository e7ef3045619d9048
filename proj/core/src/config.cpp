#include "tfl/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace tfl {

std::string to_string(StateType type) {
    return type == StateType::TypeA ? "TypeA" : "TypeB";
}

std::string to_string(RewardKind kind) {
    return kind == RewardKind::ILF ? "ILF" : "IQF";
}

std::string to_string(PolicyKind kind) {
    return kind == PolicyKind::QLearning ? "QLearning" : "Random";
}

namespace {

StateType state_type_from(const std::string& s) {
    if (s == "TypeA") return StateType::TypeA;
    if (s == "TypeB") return StateType::TypeB;
    throw std::invalid_argument("config: unknown state_type \"" + s + "\"");
}

RewardKind reward_from(const std::string& s) {
    if (s == "ILF") return RewardKind::ILF;
    if (s == "IQF") return RewardKind::IQF;
    throw std::invalid_argument("config: unknown reward \"" + s + "\"");
}

PolicyKind policy_from(const std::string& s) {
    if (s == "QLearning") return PolicyKind::QLearning;
    if (s == "Random") return PolicyKind::Random;
    throw std::invalid_argument("config: unknown policy \"" + s + "\"");
}

}  // namespace

void ExperimentConfig::validate() const {
    if (n < 2) throw std::invalid_argument("config: n must be >= 2");
    if (episodes && *episodes < 1) {
        throw std::invalid_argument("config: episodes override must be >= 1");
    }
    Arena{arena_distance, step_limit}.validate();
    rp_weights.validate();
    if (priorities) priorities->validate(n);
    q_params.validate();
    if (!(r_high > 0.0)) {
        throw std::invalid_argument("config: r_high must be positive");
    }
    // The packed observation key must fit 64 bits: (distance+1)^n * (n+1).
    long double key_space = static_cast<long double>(n) + 1;
    for (int i = 0; i < n; ++i) key_space *= arena_distance + 1;
    if (key_space >= 1.8e19L) {
        throw std::invalid_argument(
            "config: observation key space exceeds 64 bits; reduce n or "
            "arena_distance");
    }
}

std::string ExperimentConfig::tag() const {
    std::ostringstream os;
    os << (policy == PolicyKind::QLearning ? "ql" : "rand") << "_n" << n << "_";
    for (char c : to_string(state_type)) {
        os << static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    os << "_";
    for (char c : to_string(reward)) {
        os << static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    os << "_seed" << seed;
    return os.str();
}

ExperimentConfig config_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("config: JSON parse error: ") +
                                    e.what());
    }
    ExperimentConfig cfg;
    if (j.contains("n")) cfg.n = j.at("n").get<int>();
    if (j.contains("episodes") && !j.at("episodes").is_null()) {
        cfg.episodes = j.at("episodes").get<std::int64_t>();
    }
    if (j.contains("state_type")) {
        cfg.state_type = state_type_from(j.at("state_type").get<std::string>());
    }
    if (j.contains("reward")) {
        cfg.reward = reward_from(j.at("reward").get<std::string>());
    }
    if (j.contains("policy")) {
        cfg.policy = policy_from(j.at("policy").get<std::string>());
    }
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("rp_weights")) {
        const auto& w = j.at("rp_weights");
        if (w.contains("alpha_rs")) {
            cfg.rp_weights.alpha_rs = w.at("alpha_rs").get<double>();
        }
        if (w.contains("beta_wpe")) {
            cfg.rp_weights.beta_wpe = w.at("beta_wpe").get<double>();
        }
    }
    if (j.contains("priorities") && !j.at("priorities").is_null()) {
        PriorityVector pv;
        pv.shares = j.at("priorities").get<std::vector<double>>();
        cfg.priorities = std::move(pv);
    }
    if (j.contains("arena_distance")) {
        cfg.arena_distance = j.at("arena_distance").get<int>();
    }
    if (j.contains("step_limit")) cfg.step_limit = j.at("step_limit").get<int>();
    if (j.contains("q_params")) {
        const auto& q = j.at("q_params");
        if (q.contains("alpha_lr")) {
            cfg.q_params.alpha_lr = q.at("alpha_lr").get<double>();
        }
        if (q.contains("gamma")) cfg.q_params.gamma = q.at("gamma").get<double>();
        if (q.contains("eps_start")) {
            cfg.q_params.eps_start = q.at("eps_start").get<double>();
        }
        if (q.contains("eps_end")) {
            cfg.q_params.eps_end = q.at("eps_end").get<double>();
        }
        if (q.contains("eps_decay_fraction")) {
            cfg.q_params.eps_decay_fraction =
                q.at("eps_decay_fraction").get<double>();
        }
    }
    if (j.contains("r_high")) cfg.r_high = j.at("r_high").get<double>();
    if (j.contains("formula_only")) {
        cfg.formula_only = j.at("formula_only").get<bool>();
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_config: cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return config_from_json_text(buffer.str());
}

std::string config_to_json_text(const ExperimentConfig& config) {
    nlohmann::json j;
    j["n"] = config.n;
    if (config.episodes) j["episodes"] = *config.episodes;
    j["state_type"] = to_string(config.state_type);
    j["reward"] = to_string(config.reward);
    j["policy"] = to_string(config.policy);
    j["seed"] = config.seed;
    j["rp_weights"] = {{"alpha_rs", config.rp_weights.alpha_rs},
                       {"beta_wpe", config.rp_weights.beta_wpe}};
    if (config.priorities) j["priorities"] = config.priorities->shares;
    j["arena_distance"] = config.arena_distance;
    j["step_limit"] = config.step_limit;
    j["q_params"] = {{"alpha_lr", config.q_params.alpha_lr},
                     {"gamma", config.q_params.gamma},
                     {"eps_start", config.q_params.eps_start},
                     {"eps_end", config.q_params.eps_end},
                     {"eps_decay_fraction", config.q_params.eps_decay_fraction}};
    j["r_high"] = config.r_high;
    j["formula_only"] = config.formula_only;
    return j.dump(2);
}

void save_config(const ExperimentConfig& config, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_config: cannot open " + path);
    out << config_to_json_text(config) << "\n";
    if (!out) throw std::runtime_error("save_config: write failed for " + path);
}

}  // namespace tfl
