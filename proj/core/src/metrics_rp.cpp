#include "tfl/metrics_rp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tfl {

void RpWeights::validate() const {
    if (!(alpha_rs >= 0.0) || !(beta_wpe >= 0.0) ||
        alpha_rs + beta_wpe <= 0.0) {
        throw std::invalid_argument(
            "RpWeights: weights must be >= 0 with a positive sum");
    }
}

void PriorityVector::validate(int agent_count) const {
    if (shares.size() != static_cast<std::size_t>(agent_count)) {
        throw std::invalid_argument(
            "PriorityVector: expected " + std::to_string(agent_count) +
            " shares, got " + std::to_string(shares.size()));
    }
    double sum = 0.0;
    for (double w : shares) {
        if (!(w > 0.0)) {
            throw std::domain_error("PriorityVector: shares must be > 0");
        }
        if (w >= 1.0) {
            throw std::domain_error(
                "PriorityVector: a share of 1 leaves a zero ideal gap");
        }
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw std::domain_error("PriorityVector: shares sum to " +
                                std::to_string(sum) + ", expected 1");
    }
}

bool PriorityVector::uniform() const {
    for (double w : shares) {
        if (w != shares.front()) return false;
    }
    return !shares.empty();
}

double rotational_score(const GapProfile& profile, double ideal_gap) {
    if (!(ideal_gap > 0.0)) {
        throw std::domain_error("rotational_score: ideal_gap must be > 0");
    }
    if (profile.win_count < 2) return 0.0;
    const double mean = profile.mean_gap();
    const double lo = std::min(mean, ideal_gap);
    const double hi = std::max(mean, ideal_gap);
    return lo / hi;
}

double waiting_periods_eval(int waiting_periods, double ideal_count) {
    if (!(ideal_count > 0.0)) {
        throw std::domain_error("waiting_periods_eval: ideal_count must be > 0");
    }
    const double t = static_cast<double>(waiting_periods);
    if (t >= 2.0 * ideal_count) return 0.0;
    return 1.0 - std::abs(t - ideal_count) / ideal_count;
}

double awe_legacy(const GapProfile& profile, double ideal_gap) {
    if (!(ideal_gap > 0.0)) {
        throw std::domain_error("awe_legacy: ideal_gap must be > 0");
    }
    if (profile.win_count < 2) return 0.0;
    const double mean = profile.mean_gap();
    if (mean >= 2.0 * ideal_gap) return 0.0;
    return std::max(0.0, 1.0 - std::abs(mean - ideal_gap) / ideal_gap);
}

double rp_per_agent(double rs, double wpe, const RpWeights& weights) {
    weights.validate();
    return (weights.alpha_rs * rs + weights.beta_wpe * wpe) /
           (weights.alpha_rs + weights.beta_wpe);
}

namespace {

// Shared system-level kernel: every public evaluator funnels through this
// one loop so that evaluators that are defined to agree (uniform-priority
// weighted vs ExclusiveBoth) agree bit for bit.
double rp_mean_over_agents(const std::vector<GapProfile>& rs_profiles,
                           const std::vector<GapProfile>& wpe_profiles,
                           const std::vector<double>& ideal_gaps,
                           const std::vector<double>& ideal_counts,
                           const RpWeights& weights) {
    const std::size_t n = rs_profiles.size();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double rs = rotational_score(rs_profiles[i], ideal_gaps[i]);
        const double wpe = waiting_periods_eval(
            wpe_profiles[i].waiting_period_count, ideal_counts[i]);
        sum += rp_per_agent(rs, wpe, weights);
    }
    return sum / static_cast<double>(n);
}

void require_nonempty(const EpisodeLog& log, const char* who) {
    if (log.size() == 0) {
        throw std::invalid_argument(std::string(who) +
                                    ": log has no episodes");
    }
}

}  // namespace

double rp_system(const EpisodeLog& log, RpVariant variant,
                 const RpWeights& weights) {
    require_nonempty(log, "rp_system");
    const int n = log.agent_count();
    const WinEventKind rs_kind =
        (variant == RpVariant::ExclusiveBoth ||
         variant == RpVariant::ExclusiveRsReachWpe)
            ? WinEventKind::Exclusive
            : WinEventKind::Reach;
    const WinEventKind wpe_kind =
        (variant == RpVariant::ExclusiveBoth ||
         variant == RpVariant::ReachRsExclusiveWpe)
            ? WinEventKind::Exclusive
            : WinEventKind::Reach;
    const auto rs_profiles = extract_gap_profiles(log, rs_kind);
    const auto wpe_profiles = rs_kind == wpe_kind
                                  ? rs_profiles
                                  : extract_gap_profiles(log, wpe_kind);
    const std::vector<double> ideal_gaps(n, static_cast<double>(n - 1));
    const std::vector<double> ideal_counts(
        n, static_cast<double>(log.size()) / n);
    return rp_mean_over_agents(rs_profiles, wpe_profiles, ideal_gaps,
                               ideal_counts, weights);
}

double weighted_rp_system(const EpisodeLog& log,
                          const PriorityVector& priorities,
                          const RpWeights& weights) {
    require_nonempty(log, "weighted_rp_system");
    const int n = log.agent_count();
    priorities.validate(n);
    const auto profiles = extract_gap_profiles(log, WinEventKind::Exclusive);
    std::vector<double> ideal_gaps(n);
    std::vector<double> ideal_counts(n);
    if (priorities.uniform()) {
        // Equal shares mean the uniform ideals by definition; computing
        // 1/share - 1 would perturb them by rounding when 1/n is inexact.
        std::fill(ideal_gaps.begin(), ideal_gaps.end(),
                  static_cast<double>(n - 1));
        std::fill(ideal_counts.begin(), ideal_counts.end(),
                  static_cast<double>(log.size()) / n);
    } else {
        for (int i = 0; i < n; ++i) {
            ideal_gaps[i] = 1.0 / priorities.shares[i] - 1.0;
            ideal_counts[i] =
                priorities.shares[i] * static_cast<double>(log.size());
        }
    }
    return rp_mean_over_agents(profiles, profiles, ideal_gaps, ideal_counts,
                               weights);
}

RpFamilyScores rp_family(const EpisodeLog& log, const RpWeights& weights) {
    require_nonempty(log, "rp_family");
    weights.validate();
    const int n = log.agent_count();
    const auto excl = extract_gap_profiles(log, WinEventKind::Exclusive);
    const auto reach = extract_gap_profiles(log, WinEventKind::Reach);
    const double ideal_gap = static_cast<double>(n - 1);
    const double ideal_count = static_cast<double>(log.size()) / n;

    std::vector<double> rs_e(n), rs_r(n), wpe_e(n), wpe_r(n);
    double awe_e_sum = 0.0, awe_r_sum = 0.0;
    for (int i = 0; i < n; ++i) {
        rs_e[i] = rotational_score(excl[i], ideal_gap);
        rs_r[i] = rotational_score(reach[i], ideal_gap);
        wpe_e[i] = waiting_periods_eval(excl[i].waiting_period_count,
                                        ideal_count);
        wpe_r[i] = waiting_periods_eval(reach[i].waiting_period_count,
                                        ideal_count);
        awe_e_sum += awe_legacy(excl[i], ideal_gap);
        awe_r_sum += awe_legacy(reach[i], ideal_gap);
    }

    const auto mean = [n](const std::vector<double>& xs) {
        double sum = 0.0;
        for (double x : xs) sum += x;
        return sum / static_cast<double>(n);
    };
    const auto combined = [&](const std::vector<double>& rs,
                              const std::vector<double>& wpe) {
        double sum = 0.0;
        for (int i = 0; i < n; ++i) sum += rp_per_agent(rs[i], wpe[i], weights);
        return sum / static_cast<double>(n);
    };

    RpFamilyScores s;
    s.rs_excl = mean(rs_e);
    s.rs_reach = mean(rs_r);
    s.wpe_excl = mean(wpe_e);
    s.wpe_reach = mean(wpe_r);
    s.awe_excl = awe_e_sum / static_cast<double>(n);
    s.awe_reach = awe_r_sum / static_cast<double>(n);
    s.rp_excl = combined(rs_e, wpe_e);
    s.rp_reach = combined(rs_r, wpe_r);
    s.rp_rs_mxae = combined(rs_r, wpe_e);
    s.rp_rs_mxax = combined(rs_e, wpe_r);
    s.frp = s.rp_excl;
    return s;
}

}  // namespace tfl
