#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tfl {

// Outcome of one episode of the repeated resource game. `reachers` holds
// the agents that occupied the resource cell on the terminal step (sorted,
// unique); `solo_winner` is set exactly when one agent reached. Rewards are
// zero for every agent outside `reachers`. An episode where nobody reached
// is represented by an empty reacher set and all-zero rewards.
struct EpisodeOutcome {
    std::vector<int> reachers;
    std::optional<int> solo_winner;
    std::vector<double> rewards;
};

// Ordered outcome history of one run. Episode indices are 1-based in every
// interface of this library (files, profiles, budgets); episode t is stored
// at outcomes()[t-1].
class EpisodeLog {
public:
    explicit EpisodeLog(int agent_count);

    void append(EpisodeOutcome outcome);

    int agent_count() const { return n_; }
    std::size_t size() const { return outcomes_.size(); }
    const std::vector<EpisodeOutcome>& outcomes() const { return outcomes_; }
    const EpisodeOutcome& outcome(std::size_t episode) const;

private:
    int n_;
    std::vector<EpisodeOutcome> outcomes_;
};

// A win event is either a solo win (Exclusive) or any terminal arrival,
// ties included (Reach).
enum class WinEventKind { Exclusive, Reach };

// Per-agent win timing summary under one win-event kind. `gaps[j]` counts
// the episodes strictly between wins j and j+1. Waiting periods are maximal
// nonempty runs of non-win episodes counted on the episode cycle: the run
// after the last win and the run before the first win form one period, so
// an agent winning every n-th episode of a cycle-of-n log has exactly
// size/n periods regardless of its offset in the cycle. An agent with no
// wins has a single waiting period.
struct GapProfile {
    int agent = 0;
    std::vector<int> win_episodes;
    std::vector<int> gaps;
    int waiting_period_count = 0;
    int win_count = 0;

    double mean_gap() const;  // requires win_count >= 2
};

GapProfile extract_gap_profile(const EpisodeLog& log, int agent,
                               WinEventKind kind);

// One-pass extraction for all agents; equivalent to calling
// extract_gap_profile per agent.
std::vector<GapProfile> extract_gap_profiles(const EpisodeLog& log,
                                             WinEventKind kind);

// Perfectly alternating log: the winner cycle 0,1,...,n-1 repeated
// `periods` times, every episode a solo win paying r_high. This is the
// reference pattern every fairness metric scores as 1.
EpisodeLog make_pa_log(int n, int periods, double r_high = 100.0);

// Synthetic log generator for benchmarks and randomized tests. Episode
// kinds are drawn independently: a solo win with probability solo_prob, a
// tie (uniform size in [2, n], uniform agents) with probability tie_prob,
// otherwise an episode with no arrivals. Tie rewards follow the inverse
// linear rule r_high/n.
struct RandomLogParams {
    double solo_prob = 0.7;
    double tie_prob = 0.15;
    double r_high = 100.0;
};

EpisodeLog make_random_log(int n, std::size_t episodes, std::uint64_t seed,
                           const RandomLogParams& params = {});

// CSV round-trip. Columns: episode, reachers (semicolon-joined indices),
// solo_winner (index or empty), reward_0..reward_{n-1}. Episode numbers in
// the file are 1-based. Doubles are written with max_digits10 so a
// write/read cycle reproduces the log exactly.
void write_episode_log_csv(const EpisodeLog& log, const std::string& path);
EpisodeLog read_episode_log_csv(const std::string& path);

}  // namespace tfl
