#include "tfl/metrics_alt.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace tfl {

namespace {

double square(double x) { return x * x; }

}  // namespace

double window_score(const WindowStats& stats, int n, AltVariant variant) {
    switch (variant) {
        case AltVariant::CALT:
            return static_cast<double>(stats.alternation_credit) /
                   (static_cast<double>(n) * (n - 1));
        case AltVariant::EALT:
            return static_cast<double>(stats.unique_winner_episodes) / n;
        case AltVariant::AALT:
            return static_cast<double>(stats.solo_winning_agents) / n;
        case AltVariant::FALT:
            return stats.total_arrivals > 0
                       ? static_cast<double>(stats.distinct_reachers) /
                             stats.total_arrivals
                       : 0.0;
        case AltVariant::QFALT:
            return square(static_cast<double>(stats.distinct_reachers) / n);
        case AltVariant::QEALT:
            return square(static_cast<double>(stats.unique_winner_episodes) / n);
    }
    throw std::logic_error("window_score: unknown variant");
}

double AltScores::get(AltVariant variant) const {
    switch (variant) {
        case AltVariant::CALT: return calt;
        case AltVariant::EALT: return ealt;
        case AltVariant::AALT: return aalt;
        case AltVariant::FALT: return falt;
        case AltVariant::QFALT: return qfalt;
        case AltVariant::QEALT: return qealt;
    }
    throw std::logic_error("AltScores::get: unknown variant");
}

AltScores alt_metric_family(const EpisodeLog& log) {
    const int n = log.agent_count();
    const std::size_t nu = log.size();
    if (nu < static_cast<std::size_t>(n)) {
        throw std::invalid_argument(
            "alt_metric_family: log of " + std::to_string(nu) +
            " episodes is shorter than the window width " + std::to_string(n));
    }
    const std::size_t window_count = nu - n + 1;
    const auto& outcomes = log.outcomes();

    // Episode stamps mark membership of an agent in the current window's
    // reacher / solo-winner sets without clearing scratch between windows.
    std::vector<std::size_t> reach_stamp(n, 0);
    std::vector<std::size_t> solo_stamp(n, 0);

    double sum_calt = 0.0, sum_ealt = 0.0, sum_aalt = 0.0;
    double sum_falt = 0.0, sum_qfalt = 0.0, sum_qealt = 0.0;

    for (std::size_t j = 0; j < window_count; ++j) {
        const std::size_t stamp = j + 1;
        WindowStats stats;
        for (int k = 0; k < n; ++k) {
            const EpisodeOutcome& e = outcomes[j + k];
            const int arrivals = static_cast<int>(e.reachers.size());
            stats.total_arrivals += arrivals;
            if (arrivals >= 1) stats.alternation_credit += n - arrivals;
            if (arrivals == 1) ++stats.unique_winner_episodes;
            for (int a : e.reachers) {
                if (reach_stamp[a] != stamp) {
                    reach_stamp[a] = stamp;
                    ++stats.distinct_reachers;
                }
            }
            if (e.solo_winner && solo_stamp[*e.solo_winner] != stamp) {
                solo_stamp[*e.solo_winner] = stamp;
                ++stats.solo_winning_agents;
            }
        }
        sum_calt += window_score(stats, n, AltVariant::CALT);
        sum_ealt += window_score(stats, n, AltVariant::EALT);
        sum_aalt += window_score(stats, n, AltVariant::AALT);
        sum_falt += window_score(stats, n, AltVariant::FALT);
        sum_qfalt += window_score(stats, n, AltVariant::QFALT);
        sum_qealt += window_score(stats, n, AltVariant::QEALT);
    }

    const double windows = static_cast<double>(window_count);
    AltScores scores;
    scores.calt = sum_calt / windows;
    scores.ealt = sum_ealt / windows;
    scores.aalt = sum_aalt / windows;
    scores.falt = sum_falt / windows;
    scores.qfalt = sum_qfalt / windows;
    scores.qealt = sum_qealt / windows;
    return scores;
}

double alt_metric(const EpisodeLog& log, AltVariant variant) {
    return alt_metric_family(log).get(variant);
}

double alt_ratio(double value, AltVariant variant) {
    if (value < 0.0 || value > 1.0) {
        throw std::domain_error("alt_ratio: value " + std::to_string(value) +
                                " outside [0,1]");
    }
    switch (variant) {
        case AltVariant::CALT: return std::sqrt(value);
        case AltVariant::EALT:
        case AltVariant::AALT: return value;
        default:
            throw std::domain_error(
                "alt_ratio: variant has no agent-share interpretation");
    }
}

double pa_equivalent_agents(double calt, int n) {
    if (n < 2) throw std::domain_error("pa_equivalent_agents: n must be >= 2");
    return n * alt_ratio(calt, AltVariant::CALT);
}

}  // namespace tfl
