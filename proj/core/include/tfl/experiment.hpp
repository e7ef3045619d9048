#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tfl/analysis.hpp"
#include "tfl/config.hpp"
#include "tfl/episode_log.hpp"
#include "tfl/report.hpp"

namespace tfl {

// Episode budget for an n-agent learning run:
// round(base * (n/2)^2 * (1 + ln(n!/2!))). With the standard base of 1000,
// hand-tuned budgets for n in {2, 3} (4,000 and 9,441) override the
// formula unless use_table_overrides is off.
std::int64_t episode_budget(int n, std::int64_t base = 1000,
                            bool use_table_overrides = true);

// The random baseline always runs this many episodes.
inline constexpr std::int64_t kRandomBaselineEpisodes = 10000;

// Budget a config actually runs: its explicit override if set, otherwise
// the baseline constant for Random policies, otherwise episode_budget.
std::int64_t resolved_episodes(const ExperimentConfig& config);

// Plays the configured run to completion. (config, seed) determines the
// returned log byte for byte.
EpisodeLog simulate_run(const ExperimentConfig& config);

// Output root: explicit override, else $TFL_RESULTS_DIR, else ./results.
std::string results_root(const std::string& override_dir = "");

struct RunResult {
    EpisodeLog log;
    MetricReport report;
    std::string run_dir;
};

// simulate_run + compute_report, persisted under <root>/<config.tag()>/ as
// log.csv, report.json and config.json.
RunResult run_experiment(const ExperimentConfig& config,
                         const std::string& out_root = "");

enum class MetricFamily { Classic, Alt, Rp };

std::string to_string(MetricFamily family);

struct TimingRecord {
    MetricFamily family = MetricFamily::Rp;
    double wall_seconds = 0.0;
    int n = 0;
    std::int64_t episodes = 0;
    std::string machine;
};

// Times each metric family on one synthetic random log of the given shape:
// median wall-clock over `trials` runs (at least 3), monotonic clock,
// single thread.
std::vector<TimingRecord> bench_metrics(int n, std::int64_t episodes,
                                        int trials = 5,
                                        std::uint64_t seed = 0x7f317f31);

void write_timing_csv(const std::vector<TimingRecord>& records,
                      const std::string& path);

// The full 30-config study grid: for each n in {2,3,5,8,10}, learning runs
// for every (state type, reward) combination plus one random baseline per
// reward. Seeds are base_seed + position in the grid.
std::vector<ExperimentConfig> study_sweep_configs(std::uint64_t base_seed = 1);

struct SweepOutcome {
    std::vector<MetricReport> reports;          // successful runs, grid order
    std::vector<std::string> statuses;          // "ok" or the error, per config
    std::string out_dir;
};

// Runs every config (workers in parallel when jobs != 1; jobs <= 0 picks
// the hardware thread count), then aggregates: results.csv,
// run_status.csv, correlations.csv, pearson_aux.csv, coordination.csv and
// the plot-ready CSVs. A failing config is recorded and skipped; the sweep
// itself keeps going.
SweepOutcome sweep(const std::vector<ExperimentConfig>& configs,
                   const std::string& out_root = "", int jobs = 1);

// Row/column key sets for the rank-correlation study: every RP-family
// sub-metric and combination against the three headline ALT variants.
const std::vector<std::string>& rp_correlation_row_keys();
const std::vector<std::string>& alt_correlation_col_keys();

void write_results_csv(const std::vector<MetricReport>& reports,
                       const std::string& path);

// Columns: row_metric, col_metric, rho, ase, n, p_flag. Degenerate cells
// carry nan for rho/ase and the flag "degenerate".
void write_correlation_csv(const CorrelationTable& table,
                           const std::string& path);

// CS rows for each learning run against the mean of the random baselines
// matched on (n, reward), for the headline metrics.
void write_coordination_csv(const std::vector<MetricReport>& reports,
                            const std::string& path);

}  // namespace tfl
