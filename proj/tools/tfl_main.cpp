// Command line front end: simulate runs, score logs, time the metric
// families, drive sweeps and recompute correlation tables.

#include <cstdint>
#include <exception>
#include <iomanip>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "tfl/analysis.hpp"
#include "tfl/config.hpp"
#include "tfl/csv.hpp"
#include "tfl/episode_log.hpp"
#include "tfl/experiment.hpp"
#include "tfl/report.hpp"

namespace {

const std::map<std::string, tfl::StateType> kStateNames{
    {"typea", tfl::StateType::TypeA},
    {"typeb", tfl::StateType::TypeB},
};
const std::map<std::string, tfl::RewardKind> kRewardNames{
    {"ilf", tfl::RewardKind::ILF},
    {"iqf", tfl::RewardKind::IQF},
};
const std::map<std::string, tfl::PolicyKind> kPolicyNames{
    {"ql", tfl::PolicyKind::QLearning},
    {"qlearning", tfl::PolicyKind::QLearning},
    {"random", tfl::PolicyKind::Random},
};

void print_report(const tfl::MetricReport& report) {
    std::cout << std::setprecision(10);
    for (const std::string& key : tfl::canonical_metric_keys()) {
        const auto it = report.values.find(key);
        if (it == report.values.end()) continue;
        std::cout << key << " = " << it->second << '\n';
    }
    if (report.reward_fairness_degenerate) {
        std::cout << "(reward_fairness degenerate: no agent earned anything)\n";
    }
    std::cout << "timing_seconds classic=" << report.timing.classic_seconds
              << " alt=" << report.timing.alt_seconds
              << " rp=" << report.timing.rp_seconds << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Repeated resource-competition lab: simulate multi-agent runs and "
        "score how fairly access alternates over time"};
    app.require_subcommand(1);

    // --- simulate ---------------------------------------------------------
    auto* simulate = app.add_subcommand(
        "simulate", "Play one configured run and write log, report, config");
    std::string sim_config_path;
    std::string sim_out_root;
    tfl::ExperimentConfig sim_config;
    std::int64_t sim_episodes = 0;
    std::vector<double> sim_priorities;
    simulate->add_option("--config", sim_config_path,
                         "JSON config file; flags override its fields");
    auto* sim_n = simulate->add_option("--n", sim_config.n, "Agent count");
    auto* sim_eps = simulate->add_option(
        "--episodes", sim_episodes,
        "Episode count (default: the policy's budget rule)");
    simulate->add_option("--state-type", sim_config.state_type, "Observation type")
        ->transform(CLI::CheckedTransformer(kStateNames, CLI::ignore_case));
    simulate->add_option("--reward", sim_config.reward, "Tie payout rule")
        ->transform(CLI::CheckedTransformer(kRewardNames, CLI::ignore_case));
    simulate->add_option("--policy", sim_config.policy, "ql or random")
        ->transform(CLI::CheckedTransformer(kPolicyNames, CLI::ignore_case));
    auto* sim_seed = simulate->add_option("--seed", sim_config.seed, "Master seed");
    auto* sim_alpha = simulate->add_option("--alpha", sim_config.rp_weights.alpha_rs,
                                           "Rhythm-term weight");
    auto* sim_beta = simulate->add_option("--beta", sim_config.rp_weights.beta_wpe,
                                          "Waiting-period-term weight");
    auto* sim_prio = simulate->add_option("--priorities", sim_priorities,
                                          "Per-agent priority shares")
                         ->delimiter(',');
    auto* sim_dist = simulate->add_option("--arena-distance",
                                          sim_config.arena_distance,
                                          "Steps from start to the resource");
    auto* sim_limit = simulate->add_option("--step-limit", sim_config.step_limit,
                                           "Episode step cap");
    auto* sim_rhigh = simulate->add_option("--r-high", sim_config.r_high,
                                           "Solo-win payout");
    auto* sim_formula = simulate->add_flag(
        "--formula-only", "Budget from the formula even for n in {2, 3}");
    simulate->add_option("--out", sim_out_root,
                         "Results root (default: $TFL_RESULTS_DIR or ./results)");
    simulate->callback([&] {
        tfl::ExperimentConfig config;
        if (!sim_config_path.empty()) config = tfl::load_config(sim_config_path);
        if (sim_n->count() != 0u) config.n = sim_config.n;
        if (sim_eps->count() != 0u) config.episodes = sim_episodes;
        if (simulate->count("--state-type") != 0u) config.state_type = sim_config.state_type;
        if (simulate->count("--reward") != 0u) config.reward = sim_config.reward;
        if (simulate->count("--policy") != 0u) config.policy = sim_config.policy;
        if (sim_seed->count() != 0u) config.seed = sim_config.seed;
        if (sim_alpha->count() != 0u) config.rp_weights.alpha_rs = sim_config.rp_weights.alpha_rs;
        if (sim_beta->count() != 0u) config.rp_weights.beta_wpe = sim_config.rp_weights.beta_wpe;
        if (sim_prio->count() != 0u) config.priorities = tfl::PriorityVector{sim_priorities};
        if (sim_dist->count() != 0u) config.arena_distance = sim_config.arena_distance;
        if (sim_limit->count() != 0u) config.step_limit = sim_config.step_limit;
        if (sim_rhigh->count() != 0u) config.r_high = sim_config.r_high;
        if (sim_formula->count() != 0u) config.formula_only = true;

        const tfl::RunResult result = tfl::run_experiment(config, sim_out_root);
        std::cout << "run " << config.tag() << ": " << result.report.episodes
                  << " episodes -> " << result.run_dir << '\n';
        print_report(result.report);
    });

    // --- metrics ----------------------------------------------------------
    auto* metrics = app.add_subcommand(
        "metrics", "Score an existing episode log CSV");
    std::string met_log_path;
    std::string met_json_path;
    double met_alpha = 1.0;
    double met_beta = 1.0;
    double met_rhigh = 100.0;
    std::vector<double> met_priorities;
    metrics->add_option("--log", met_log_path, "Episode log CSV")->required();
    metrics->add_option("--alpha", met_alpha, "Rhythm-term weight");
    metrics->add_option("--beta", met_beta, "Waiting-period-term weight");
    metrics->add_option("--priorities", met_priorities,
                        "Per-agent priority shares; enables the weighted score")
        ->delimiter(',');
    metrics->add_option("--r-high", met_rhigh, "Solo-win payout of the log");
    metrics->add_option("--json", met_json_path, "Also write the report as JSON");
    metrics->callback([&] {
        const tfl::EpisodeLog log = tfl::read_episode_log_csv(met_log_path);
        tfl::ExperimentConfig config;
        config.n = log.agent_count();
        config.episodes = static_cast<std::int64_t>(log.size());
        config.rp_weights = {met_alpha, met_beta};
        config.r_high = met_rhigh;
        if (!met_priorities.empty()) {
            config.priorities = tfl::PriorityVector{met_priorities};
        }
        const tfl::MetricReport report = tfl::compute_report(log, config);
        print_report(report);
        if (!met_json_path.empty()) {
            tfl::write_report_json(report, met_json_path);
            std::cout << "report written to " << met_json_path << '\n';
        }
    });

    // --- bench ------------------------------------------------------------
    auto* bench = app.add_subcommand(
        "bench", "Time the metric families on one synthetic log");
    int bench_n = 10;
    std::int64_t bench_episodes = 385000;
    int bench_trials = 5;
    std::uint64_t bench_seed = 0x7f317f31;
    std::string bench_out;
    bench->add_option("--n", bench_n, "Agent count");
    bench->add_option("--episodes", bench_episodes, "Log length");
    bench->add_option("--trials", bench_trials, "Trials per family (median wins)");
    bench->add_option("--seed", bench_seed, "Synthetic log seed");
    bench->add_option("--out", bench_out, "Write timings as CSV");
    bench->callback([&] {
        const auto records =
            tfl::bench_metrics(bench_n, bench_episodes, bench_trials, bench_seed);
        std::cout << std::setprecision(6);
        double alt_seconds = 0.0;
        double rp_seconds = 0.0;
        for (const tfl::TimingRecord& rec : records) {
            std::cout << to_string(rec.family) << " n=" << rec.n
                      << " episodes=" << rec.episodes << " seconds="
                      << rec.wall_seconds << '\n';
            if (rec.family == tfl::MetricFamily::Alt) alt_seconds = rec.wall_seconds;
            if (rec.family == tfl::MetricFamily::Rp) rp_seconds = rec.wall_seconds;
        }
        if (rp_seconds > 0.0) {
            std::cout << "alt/rp ratio = " << alt_seconds / rp_seconds << '\n';
        }
        if (!bench_out.empty()) {
            tfl::write_timing_csv(records, bench_out);
            std::cout << "timing written to " << bench_out << '\n';
        }
    });

    // --- sweep ------------------------------------------------------------
    auto* sweep_cmd = app.add_subcommand(
        "sweep", "Run a batch of configs and aggregate the study CSVs");
    bool sweep_study = false;
    std::vector<std::string> sweep_config_paths;
    std::int64_t sweep_episodes = 0;
    std::uint64_t sweep_base_seed = 1;
    int sweep_jobs = 1;
    bool sweep_formula_only = false;
    bool sweep_dry_run = false;
    std::string sweep_out;
    sweep_cmd->add_flag("--study", sweep_study,
                        "The full 30-config study grid (n in {2,3,5,8,10})");
    sweep_cmd->add_option("--config", sweep_config_paths,
                          "JSON config file; repeatable");
    auto* sweep_eps = sweep_cmd->add_option(
        "--episodes", sweep_episodes, "Override every config's episode count");
    sweep_cmd->add_option("--seed", sweep_base_seed, "Base seed for --study");
    sweep_cmd->add_option("--jobs", sweep_jobs,
                          "Parallel workers; 0 = hardware threads");
    sweep_cmd->add_flag("--formula-only", sweep_formula_only,
                        "Budget from the formula even for n in {2, 3}");
    sweep_cmd->add_flag("--dry-run", sweep_dry_run,
                        "Validate configs and print budgets without running");
    sweep_cmd->add_option("--out", sweep_out,
                          "Results root (default: $TFL_RESULTS_DIR or ./results)");
    sweep_cmd->callback([&] {
        std::vector<tfl::ExperimentConfig> configs;
        if (sweep_study) configs = tfl::study_sweep_configs(sweep_base_seed);
        for (const std::string& path : sweep_config_paths) {
            configs.push_back(tfl::load_config(path));
        }
        if (configs.empty()) {
            throw CLI::ValidationError("sweep",
                                       "need --study or at least one --config");
        }
        for (tfl::ExperimentConfig& config : configs) {
            if (sweep_eps->count() != 0u) config.episodes = sweep_episodes;
            if (sweep_formula_only) config.formula_only = true;
            config.validate();
        }
        if (sweep_dry_run) {
            for (const tfl::ExperimentConfig& config : configs) {
                std::cout << config.tag()
                          << " episodes=" << tfl::resolved_episodes(config) << '\n';
            }
            return;
        }
        const tfl::SweepOutcome outcome =
            tfl::sweep(configs, sweep_out, sweep_jobs);
        std::size_t ok = 0;
        for (std::size_t i = 0; i < outcome.statuses.size(); ++i) {
            if (outcome.statuses[i] == "ok") {
                ++ok;
            } else {
                std::cerr << configs[i].tag() << " failed: "
                          << outcome.statuses[i] << '\n';
            }
        }
        std::cout << ok << "/" << configs.size() << " runs ok; outputs in "
                  << outcome.out_dir << '\n';
        if (ok != configs.size()) {
            throw CLI::RuntimeError("sweep: some runs failed", 1);
        }
    });

    // --- correlate --------------------------------------------------------
    auto* correlate = app.add_subcommand(
        "correlate", "Recompute the rank-correlation table from a results CSV");
    std::string corr_results;
    std::string corr_out = "correlations.csv";
    std::vector<std::string> corr_rows = tfl::rp_correlation_row_keys();
    std::vector<std::string> corr_cols = tfl::alt_correlation_col_keys();
    correlate->add_option("--results", corr_results,
                          "results.csv produced by a sweep")
        ->required();
    correlate->add_option("--out", corr_out, "Output CSV path");
    correlate->add_option("--row", corr_rows, "Row metric keys")->delimiter(',');
    correlate->add_option("--col", corr_cols, "Column metric keys")->delimiter(',');
    correlate->callback([&] {
        const auto rows = tfl::read_csv_rows(corr_results);
        std::vector<std::map<std::string, double>> runs;
        runs.reserve(rows.size());
        for (const auto& row : rows) {
            std::map<std::string, double> values;
            const auto grab = [&](const std::string& key) {
                const auto it = row.find(key);
                if (it == row.end() || it->second.empty()) return;
                values[key] = std::stod(it->second);
            };
            for (const std::string& key : corr_rows) grab(key);
            for (const std::string& key : corr_cols) grab(key);
            runs.push_back(std::move(values));
        }
        const tfl::CorrelationTable table =
            tfl::correlation_table(runs, corr_rows, corr_cols);
        std::cout << std::setprecision(4);
        for (std::size_t r = 0; r < table.row_keys.size(); ++r) {
            for (std::size_t c = 0; c < table.col_keys.size(); ++c) {
                const tfl::CorrelationCell& cell = table.at(r, c);
                std::cout << table.row_keys[r] << " vs " << table.col_keys[c]
                          << ": ";
                if (cell.degenerate) {
                    std::cout << "degenerate (n=" << cell.sample_count << ")\n";
                } else {
                    std::cout << "rho=" << cell.rho << " ase=" << cell.ase
                              << " n=" << cell.sample_count << " "
                              << to_string(cell.p_flag) << '\n';
                }
            }
        }
        tfl::write_correlation_csv(table, corr_out);
        std::cout << "correlation table written to " << corr_out << '\n';
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        return app.exit(err);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    }
    return 0;
}
