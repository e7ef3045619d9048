#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tfl/config.hpp"
#include "tfl/episode_log.hpp"

namespace tfl {

// Wall-clock cost of computing each metric family on one log, measured with
// a monotonic clock around the family call.
struct FamilyTimings {
    double classic_seconds = 0.0;
    double alt_seconds = 0.0;
    double rp_seconds = 0.0;
};

// Every metric of one run keyed by its canonical name, plus the config and
// timings needed to reproduce it. reward_fairness is reported as 0 with the
// degenerate flag set when no agent earned anything.
struct MetricReport {
    ExperimentConfig config;
    std::int64_t episodes = 0;
    std::map<std::string, double> values;
    bool reward_fairness_degenerate = false;
    FamilyTimings timing;
};

// Canonical key order for reports and CSV columns. "erp" appears in a
// report only when the config carries priorities.
const std::vector<std::string>& canonical_metric_keys();

MetricReport compute_report(const EpisodeLog& log,
                            const ExperimentConfig& config);

void write_report_json(const MetricReport& report, const std::string& path);

}  // namespace tfl
