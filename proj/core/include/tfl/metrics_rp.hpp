#pragma once

#include <vector>

#include "tfl/episode_log.hpp"

namespace tfl {

// Mixing weights for the two RP components. alpha_rs scales the rhythm
// term (RS), beta_wpe the waiting-period-count term (WPE); the combined
// score is their weighted mean, so only the ratio matters.
struct RpWeights {
    double alpha_rs = 1.0;
    double beta_wpe = 1.0;

    void validate() const;
};

// Per-agent priority shares for the weighted evaluator: all positive, each
// strictly below 1 (a share of 1 would demand a zero ideal gap), summing to
// 1 within 1e-9.
struct PriorityVector {
    std::vector<double> shares;

    void validate(int agent_count) const;
    bool uniform() const;
};

// Rhythm score: how close the agent's observed mean gap is to the ideal,
// as min/max of the two, in [0,1]. Symmetric in over- and under-shooting by
// the same factor. Agents with fewer than two wins score 0.
double rotational_score(const GapProfile& profile, double ideal_gap);

// Waiting-period-count score: 1 - |t - t*| / t* while t < 2 t*, else 0.
double waiting_periods_eval(int waiting_periods, double ideal_count);

// Retired mean-gap score, kept for correlation studies only: collapses to 0
// once the mean gap reaches twice the ideal, unlike rotational_score which
// keeps separating degrees of failure beyond that point.
double awe_legacy(const GapProfile& profile, double ideal_gap);

double rp_per_agent(double rs, double wpe, const RpWeights& weights);

// The four variant pairings, named by which win-event kind feeds RS and
// WPE respectively.
enum class RpVariant {
    ExclusiveBoth,           // solo wins for both components
    ReachBoth,               // any arrival for both components
    ReachRsExclusiveWpe,     // mixed: arrival rhythm, solo-win period count
    ExclusiveRsReachWpe,     // mixed: solo-win rhythm, arrival period count
};

// System-level RP: mean over agents of the combined per-agent score, with
// the uniform ideals (gap n-1, period count size/n).
double rp_system(const EpisodeLog& log, RpVariant variant,
                 const RpWeights& weights = {});

// Priority-weighted RP over solo wins: agent i's ideals are gap
// 1/share_i - 1 and period count share_i * size. Equal shares reproduce
// rp_system(ExclusiveBoth) exactly, bit for bit.
double weighted_rp_system(const EpisodeLog& log,
                          const PriorityVector& priorities,
                          const RpWeights& weights = {});

// Every RP-family number a run report carries, computed from one profile
// extraction per win-event kind.
struct RpFamilyScores {
    double rs_excl = 0.0;
    double rs_reach = 0.0;
    double wpe_excl = 0.0;
    double wpe_reach = 0.0;
    double awe_excl = 0.0;
    double awe_reach = 0.0;
    double rp_excl = 0.0;
    double rp_reach = 0.0;
    double rp_rs_mxae = 0.0;  // ReachRsExclusiveWpe
    double rp_rs_mxax = 0.0;  // ExclusiveRsReachWpe
    double frp = 0.0;         // uniform-priority alias of rp_excl
};

RpFamilyScores rp_family(const EpisodeLog& log, const RpWeights& weights = {});

}  // namespace tfl
