#include "tfl/report.hpp"

#include <chrono>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "tfl/metrics_alt.hpp"
#include "tfl/metrics_classic.hpp"
#include "tfl/metrics_rp.hpp"

namespace tfl {

const std::vector<std::string>& canonical_metric_keys() {
    static const std::vector<std::string> keys = {
        "efficiency",     "reward_fairness",
        "calt",           "ealt",
        "aalt",           "falt",
        "qfalt",          "qealt",
        "alt_ratio_calt", "pa_equivalent_agents",
        "rs_excl",        "rs_reach",
        "wpe_excl",       "wpe_reach",
        "awe_excl",       "awe_reach",
        "rp_excl",        "rp_reach",
        "rp_rs_mxae",     "rp_rs_mxax",
        "frp",            "erp",
    };
    return keys;
}

MetricReport compute_report(const EpisodeLog& log,
                            const ExperimentConfig& config) {
    using clock = std::chrono::steady_clock;
    MetricReport report;
    report.config = config;
    report.episodes = static_cast<std::int64_t>(log.size());

    auto t0 = clock::now();
    const auto totals = RewardTotals::from_log(log, config.r_high);
    report.values["efficiency"] = efficiency(totals);
    const auto rf = reward_fairness(totals);
    report.values["reward_fairness"] = rf.value_or(0.0);
    report.reward_fairness_degenerate = !rf.has_value();
    auto t1 = clock::now();
    report.timing.classic_seconds =
        std::chrono::duration<double>(t1 - t0).count();

    const AltScores alt = alt_metric_family(log);
    auto t2 = clock::now();
    report.timing.alt_seconds = std::chrono::duration<double>(t2 - t1).count();
    report.values["calt"] = alt.calt;
    report.values["ealt"] = alt.ealt;
    report.values["aalt"] = alt.aalt;
    report.values["falt"] = alt.falt;
    report.values["qfalt"] = alt.qfalt;
    report.values["qealt"] = alt.qealt;
    report.values["alt_ratio_calt"] = alt_ratio(alt.calt, AltVariant::CALT);
    report.values["pa_equivalent_agents"] =
        pa_equivalent_agents(alt.calt, log.agent_count());

    auto t3 = clock::now();
    const RpFamilyScores rp = rp_family(log, config.rp_weights);
    double erp = 0.0;
    if (config.priorities) {
        erp = weighted_rp_system(log, *config.priorities, config.rp_weights);
    }
    auto t4 = clock::now();
    report.timing.rp_seconds = std::chrono::duration<double>(t4 - t3).count();
    report.values["rs_excl"] = rp.rs_excl;
    report.values["rs_reach"] = rp.rs_reach;
    report.values["wpe_excl"] = rp.wpe_excl;
    report.values["wpe_reach"] = rp.wpe_reach;
    report.values["awe_excl"] = rp.awe_excl;
    report.values["awe_reach"] = rp.awe_reach;
    report.values["rp_excl"] = rp.rp_excl;
    report.values["rp_reach"] = rp.rp_reach;
    report.values["rp_rs_mxae"] = rp.rp_rs_mxae;
    report.values["rp_rs_mxax"] = rp.rp_rs_mxax;
    report.values["frp"] = rp.frp;
    if (config.priorities) report.values["erp"] = erp;

    return report;
}

void write_report_json(const MetricReport& report, const std::string& path) {
    nlohmann::json j;
    j["config"] = nlohmann::json::parse(config_to_json_text(report.config));
    j["episodes"] = report.episodes;
    nlohmann::json metrics = nlohmann::json::object();
    for (const auto& key : canonical_metric_keys()) {
        const auto it = report.values.find(key);
        if (it != report.values.end()) metrics[key] = it->second;
    }
    j["metrics"] = metrics;
    j["flags"] = {
        {"reward_fairness_degenerate", report.reward_fairness_degenerate}};
    j["timing"] = {{"classic_seconds", report.timing.classic_seconds},
                   {"alt_seconds", report.timing.alt_seconds},
                   {"rp_seconds", report.timing.rp_seconds}};
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("write_report_json: cannot open " + path);
    }
    out << j.dump(2) << "\n";
    if (!out) {
        throw std::runtime_error("write_report_json: write failed for " + path);
    }
}

}  // namespace tfl
