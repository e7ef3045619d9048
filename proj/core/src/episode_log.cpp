#include "tfl/episode_log.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "tfl/csv.hpp"
#include "tfl/rng.hpp"

namespace tfl {

EpisodeLog::EpisodeLog(int agent_count) : n_(agent_count) {
    if (agent_count < 2) {
        throw std::invalid_argument("EpisodeLog: agent_count must be >= 2, got " +
                                    std::to_string(agent_count));
    }
}

void EpisodeLog::append(EpisodeOutcome outcome) {
    if (outcome.rewards.size() != static_cast<std::size_t>(n_)) {
        throw std::invalid_argument("EpisodeLog::append: reward vector size " +
                                    std::to_string(outcome.rewards.size()) +
                                    " does not match agent count " +
                                    std::to_string(n_));
    }
    if (!std::is_sorted(outcome.reachers.begin(), outcome.reachers.end()) ||
        std::adjacent_find(outcome.reachers.begin(), outcome.reachers.end()) !=
            outcome.reachers.end()) {
        throw std::invalid_argument(
            "EpisodeLog::append: reachers must be sorted and unique");
    }
    for (int a : outcome.reachers) {
        if (a < 0 || a >= n_) {
            throw std::out_of_range("EpisodeLog::append: reacher index " +
                                    std::to_string(a) + " out of range");
        }
    }
    if (outcome.solo_winner.has_value() != (outcome.reachers.size() == 1)) {
        throw std::invalid_argument(
            "EpisodeLog::append: solo_winner must be set exactly when one "
            "agent reached");
    }
    if (outcome.solo_winner && *outcome.solo_winner != outcome.reachers[0]) {
        throw std::invalid_argument(
            "EpisodeLog::append: solo_winner disagrees with reachers");
    }
    for (int a = 0; a < n_; ++a) {
        const bool reached = std::binary_search(outcome.reachers.begin(),
                                                outcome.reachers.end(), a);
        const double r = outcome.rewards[a];
        if (!std::isfinite(r) || r < 0.0) {
            throw std::invalid_argument(
                "EpisodeLog::append: rewards must be finite and >= 0");
        }
        if (!reached && r != 0.0) {
            throw std::invalid_argument(
                "EpisodeLog::append: non-reacher " + std::to_string(a) +
                " has nonzero reward");
        }
    }
    outcomes_.push_back(std::move(outcome));
}

const EpisodeOutcome& EpisodeLog::outcome(std::size_t episode) const {
    if (episode < 1 || episode > outcomes_.size()) {
        throw std::out_of_range("EpisodeLog::outcome: episode " +
                                std::to_string(episode) +
                                " outside [1, " +
                                std::to_string(outcomes_.size()) + "]");
    }
    return outcomes_[episode - 1];
}

double GapProfile::mean_gap() const {
    if (win_count < 2) {
        throw std::logic_error("GapProfile::mean_gap requires win_count >= 2");
    }
    long long sum = 0;
    for (int g : gaps) sum += g;
    return static_cast<double>(sum) / static_cast<double>(gaps.size());
}

namespace {

bool is_win(const EpisodeOutcome& e, int agent, WinEventKind kind) {
    if (kind == WinEventKind::Exclusive) {
        return e.solo_winner && *e.solo_winner == agent;
    }
    return std::binary_search(e.reachers.begin(), e.reachers.end(), agent);
}

// Folds one agent's 1-based win episodes into a GapProfile. The wrap span
// (episodes after the last win joined with episodes before the first win)
// counts as one waiting period when it is nonempty.
GapProfile finalize_profile(int agent, std::vector<int> wins,
                            std::size_t episode_count) {
    GapProfile p;
    p.agent = agent;
    p.win_count = static_cast<int>(wins.size());
    p.win_episodes = std::move(wins);
    if (p.win_count == 0) {
        p.waiting_period_count = 1;
        return p;
    }
    p.gaps.reserve(p.win_episodes.size() - 1);
    int periods = 0;
    for (std::size_t j = 1; j < p.win_episodes.size(); ++j) {
        const int gap = p.win_episodes[j] - p.win_episodes[j - 1] - 1;
        p.gaps.push_back(gap);
        if (gap > 0) ++periods;
    }
    const long long wrap =
        (static_cast<long long>(episode_count) - p.win_episodes.back()) +
        (p.win_episodes.front() - 1);
    if (wrap > 0) ++periods;
    p.waiting_period_count = periods;
    return p;
}

}  // namespace

GapProfile extract_gap_profile(const EpisodeLog& log, int agent,
                               WinEventKind kind) {
    if (agent < 0 || agent >= log.agent_count()) {
        throw std::out_of_range("extract_gap_profile: agent " +
                                std::to_string(agent) + " out of range");
    }
    std::vector<int> wins;
    const auto& outcomes = log.outcomes();
    for (std::size_t t = 0; t < outcomes.size(); ++t) {
        if (is_win(outcomes[t], agent, kind)) {
            wins.push_back(static_cast<int>(t) + 1);
        }
    }
    return finalize_profile(agent, std::move(wins), log.size());
}

std::vector<GapProfile> extract_gap_profiles(const EpisodeLog& log,
                                             WinEventKind kind) {
    const int n = log.agent_count();
    std::vector<std::vector<int>> wins(n);
    const auto& outcomes = log.outcomes();
    for (std::size_t t = 0; t < outcomes.size(); ++t) {
        const int episode = static_cast<int>(t) + 1;
        if (kind == WinEventKind::Exclusive) {
            if (outcomes[t].solo_winner) {
                wins[*outcomes[t].solo_winner].push_back(episode);
            }
        } else {
            for (int a : outcomes[t].reachers) wins[a].push_back(episode);
        }
    }
    std::vector<GapProfile> profiles;
    profiles.reserve(n);
    for (int a = 0; a < n; ++a) {
        profiles.push_back(finalize_profile(a, std::move(wins[a]), log.size()));
    }
    return profiles;
}

EpisodeLog make_pa_log(int n, int periods, double r_high) {
    if (periods < 1) {
        throw std::invalid_argument("make_pa_log: periods must be >= 1");
    }
    EpisodeLog log(n);
    for (int p = 0; p < periods; ++p) {
        for (int winner = 0; winner < n; ++winner) {
            EpisodeOutcome e;
            e.reachers = {winner};
            e.solo_winner = winner;
            e.rewards.assign(n, 0.0);
            e.rewards[winner] = r_high;
            log.append(std::move(e));
        }
    }
    return log;
}

EpisodeLog make_random_log(int n, std::size_t episodes, std::uint64_t seed,
                           const RandomLogParams& params) {
    if (params.solo_prob < 0 || params.tie_prob < 0 ||
        params.solo_prob + params.tie_prob > 1.0) {
        throw std::invalid_argument(
            "make_random_log: episode kind probabilities must be a "
            "sub-distribution");
    }
    EpisodeLog log(n);
    RngStream rng = RngStream::for_stream(seed, 0);
    std::vector<int> agents(n);
    for (int a = 0; a < n; ++a) agents[a] = a;
    for (std::size_t t = 0; t < episodes; ++t) {
        EpisodeOutcome e;
        e.rewards.assign(n, 0.0);
        const double kind = rng.uniform_double();
        if (kind < params.solo_prob) {
            const int winner = static_cast<int>(rng.uniform_index(n));
            e.reachers = {winner};
            e.solo_winner = winner;
            e.rewards[winner] = params.r_high;
        } else if (kind < params.solo_prob + params.tie_prob) {
            const int size = 2 + static_cast<int>(rng.uniform_index(n - 1));
            // Partial Fisher-Yates over the identity permutation.
            for (int j = 0; j < size; ++j) {
                const int pick = j + static_cast<int>(rng.uniform_index(n - j));
                std::swap(agents[j], agents[pick]);
            }
            e.reachers.assign(agents.begin(), agents.begin() + size);
            std::sort(e.reachers.begin(), e.reachers.end());
            for (int a : e.reachers) e.rewards[a] = params.r_high / n;
        }
        log.append(std::move(e));
    }
    return log;
}

void write_episode_log_csv(const EpisodeLog& log, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("write_episode_log_csv: cannot open " + path);
    }
    out << "episode,reachers,solo_winner";
    for (int a = 0; a < log.agent_count(); ++a) out << ",reward_" << a;
    out << "\n";
    const auto& outcomes = log.outcomes();
    for (std::size_t t = 0; t < outcomes.size(); ++t) {
        const auto& e = outcomes[t];
        out << (t + 1) << ",";
        for (std::size_t j = 0; j < e.reachers.size(); ++j) {
            if (j) out << ";";
            out << e.reachers[j];
        }
        out << ",";
        if (e.solo_winner) out << *e.solo_winner;
        for (double r : e.rewards) out << "," << csv_double(r);
        out << "\n";
    }
    if (!out) {
        throw std::runtime_error("write_episode_log_csv: write failed for " +
                                 path);
    }
}

EpisodeLog read_episode_log_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("read_episode_log_csv: cannot open " + path);
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("read_episode_log_csv: " + path +
                                 " is empty");
    }
    const auto header = csv_split(line);
    if (header.size() < 4 || header[0] != "episode" ||
        header[1] != "reachers" || header[2] != "solo_winner") {
        throw std::runtime_error("read_episode_log_csv: " + path +
                                 " has an unrecognized header");
    }
    const int n = static_cast<int>(header.size()) - 3;
    EpisodeLog log(n);
    std::size_t expected_episode = 1;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = csv_split(line);
        if (fields.size() != header.size()) {
            throw std::runtime_error("read_episode_log_csv: " + path +
                                     ": wrong field count on line for episode " +
                                     std::to_string(expected_episode));
        }
        if (std::stoull(fields[0]) != expected_episode) {
            throw std::runtime_error("read_episode_log_csv: " + path +
                                     ": episodes must be 1-based and "
                                     "consecutive");
        }
        EpisodeOutcome e;
        if (!fields[1].empty()) {
            for (const auto& tok : csv_split(fields[1], ';')) {
                e.reachers.push_back(std::stoi(tok));
            }
        }
        if (!fields[2].empty()) e.solo_winner = std::stoi(fields[2]);
        e.rewards.reserve(n);
        for (int a = 0; a < n; ++a) e.rewards.push_back(std::stod(fields[3 + a]));
        log.append(std::move(e));
        ++expected_episode;
    }
    return log;
}

}  // namespace tfl
