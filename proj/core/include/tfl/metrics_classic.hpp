#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "tfl/episode_log.hpp"

namespace tfl {

// Cumulative reward per agent over a whole run, plus the normalisation
// constants the aggregate metrics need.
struct RewardTotals {
    std::vector<double> totals;
    std::size_t episodes = 0;
    double r_high = 100.0;

    static RewardTotals from_log(const EpisodeLog& log, double r_high = 100.0);
};

// Fraction of the maximum extractable reward actually paid out:
// sum(totals) / (episodes * r_high). Requires episodes >= 1.
double efficiency(const RewardTotals& totals);

// sum(totals) / (n * max(totals)), in (0, 1], equal to 1 exactly when all
// agents earned the same. Returns nullopt when every total is zero; reports
// surface that as value 0 with a degenerate flag rather than an error.
std::optional<double> reward_fairness(const RewardTotals& totals);

}  // namespace tfl
