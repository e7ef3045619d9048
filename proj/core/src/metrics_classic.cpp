#include "tfl/metrics_classic.hpp"

#include <algorithm>
#include <stdexcept>

namespace tfl {

RewardTotals RewardTotals::from_log(const EpisodeLog& log, double r_high) {
    RewardTotals t;
    t.totals.assign(log.agent_count(), 0.0);
    t.episodes = log.size();
    t.r_high = r_high;
    for (const auto& e : log.outcomes()) {
        for (int a = 0; a < log.agent_count(); ++a) t.totals[a] += e.rewards[a];
    }
    return t;
}

double efficiency(const RewardTotals& totals) {
    if (totals.episodes == 0) {
        throw std::invalid_argument("efficiency: needs at least one episode");
    }
    if (totals.r_high <= 0) {
        throw std::invalid_argument("efficiency: r_high must be positive");
    }
    double sum = 0.0;
    for (double r : totals.totals) sum += r;
    return sum / (static_cast<double>(totals.episodes) * totals.r_high);
}

std::optional<double> reward_fairness(const RewardTotals& totals) {
    if (totals.totals.empty()) {
        throw std::invalid_argument("reward_fairness: no agents");
    }
    double sum = 0.0;
    double best = 0.0;
    for (double r : totals.totals) {
        sum += r;
        best = std::max(best, r);
    }
    if (best == 0.0) return std::nullopt;
    return sum / (static_cast<double>(totals.totals.size()) * best);
}

}  // namespace tfl
