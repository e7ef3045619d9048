#pragma once

#include <cstddef>

#include "tfl/episode_log.hpp"

namespace tfl {

// The six sliding-window alternation variants. Each scores a window of n
// consecutive episodes in [0,1] and averages the score over all nu-n+1
// stride-1 windows.
enum class AltVariant { CALT, EALT, AALT, FALT, QFALT, QEALT };

// Integer counts gathered from one window of n consecutive episodes.
// alternation_credit sums (n - arrivals) over episodes that had at least
// one arrival; an episode with no arrivals earns no credit, which keeps
// every variant inside [0,1] on logs with idle episodes.
struct WindowStats {
    int distinct_reachers = 0;       // agents arriving at least once
    int total_arrivals = 0;          // arrivals summed over the window
    int unique_winner_episodes = 0;  // episodes with exactly one arrival
    int solo_winning_agents = 0;     // agents with at least one solo win
    int alternation_credit = 0;
};

// Per-window scores derived from WindowStats. Kept in one place so the
// production pass and any reference recomputation share the exact same
// floating-point expressions.
double window_score(const WindowStats& stats, int n, AltVariant variant);

struct AltScores {
    double calt = 0.0;
    double ealt = 0.0;
    double aalt = 0.0;
    double falt = 0.0;
    double qfalt = 0.0;
    double qealt = 0.0;

    double get(AltVariant variant) const;
};

// One pass over all windows, scoring all six variants. Requires
// log.size() >= n. Window j covers episodes j..j+n-1 (1-based), and each
// window re-examines its n episodes, so the cost grows linearly in n at
// fixed log size.
AltScores alt_metric_family(const EpisodeLog& log);

double alt_metric(const EpisodeLog& log, AltVariant variant);

// Converts a variant score to the fraction of agents behaving as if in
// perfect alternation. CALT aggregates pairwise coordination, so its share
// is the square root; EALT and AALT are already linear shares. The other
// variants have no such reading and are rejected.
double alt_ratio(double value, AltVariant variant);

// Number of agents, out of n, that a CALT score is equivalent to having in
// perfect alternation: n * sqrt(calt).
double pa_equivalent_agents(double calt, int n);

}  // namespace tfl
