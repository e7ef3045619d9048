#include "tfl/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <stdexcept>
#include <thread>
#include <utility>

#include "tfl/agents.hpp"
#include "tfl/csv.hpp"
#include "tfl/mboe.hpp"
#include "tfl/metrics_alt.hpp"
#include "tfl/metrics_classic.hpp"
#include "tfl/metrics_rp.hpp"
#include "tfl/rng.hpp"

namespace tfl {

namespace fs = std::filesystem;

std::int64_t episode_budget(int n, std::int64_t base,
                            bool use_table_overrides) {
    if (n < 2) throw std::invalid_argument("episode_budget: need n >= 2");
    if (base <= 0) {
        throw std::invalid_argument("episode_budget: base must be positive");
    }
    // The two smallest agent counts keep their hand-tuned budgets; they
    // predate the formula and differ from it at the standard base.
    if (use_table_overrides && base == 1000) {
        if (n == 2) return 4000;
        if (n == 3) return 9441;
    }
    const double half = static_cast<double>(n) / 2.0;
    const double growth =
        1.0 + std::lgamma(static_cast<double>(n) + 1.0) - std::log(2.0);
    return std::llround(static_cast<double>(base) * half * half * growth);
}

std::int64_t resolved_episodes(const ExperimentConfig& config) {
    if (config.episodes) return *config.episodes;
    if (config.policy == PolicyKind::Random) return kRandomBaselineEpisodes;
    return episode_budget(config.n, 1000, !config.formula_only);
}

namespace {

std::vector<RngStream> agent_streams(std::uint64_t master_seed, int n) {
    std::vector<RngStream> streams;
    streams.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        streams.emplace_back(stream_seed(master_seed, static_cast<std::uint64_t>(i)));
    }
    return streams;
}

// Carries the previous episode's solo winner into the next episode's
// observation; ties and idle episodes clear every flag.
void roll_winner_flags(std::optional<std::vector<std::uint8_t>>& flags,
                       const EpisodeOutcome& outcome) {
    if (!flags) return;
    std::fill(flags->begin(), flags->end(), std::uint8_t{0});
    if (outcome.solo_winner) {
        (*flags)[static_cast<std::size_t>(*outcome.solo_winner)] = 1;
    }
}

EpisodeLog simulate_random(const ExperimentConfig& config,
                           std::int64_t budget) {
    const Arena arena{config.arena_distance, config.step_limit};
    const RewardScheme scheme{config.reward, config.r_high};
    auto streams = agent_streams(config.seed, config.n);

    EpisodeLog log(config.n);
    const auto act = [&](int agent, int, const EnvState&) {
        return random_policy_action(streams[static_cast<std::size_t>(agent)]);
    };
    for (std::int64_t ep = 1; ep <= budget; ++ep) {
        log.append(run_episode(arena, config.n, scheme, act));
    }
    return log;
}

EpisodeLog simulate_qlearning(const ExperimentConfig& config,
                              std::int64_t budget) {
    const Arena arena{config.arena_distance, config.step_limit};
    const RewardScheme scheme{config.reward, config.r_high};
    const QLearnerParams& params = config.q_params;
    auto streams = agent_streams(config.seed, config.n);
    std::vector<QTable> tables(static_cast<std::size_t>(config.n));

    EpisodeLog log(config.n);
    std::optional<std::vector<std::uint8_t>> flags;
    if (config.state_type == StateType::TypeB) {
        flags.emplace(static_cast<std::size_t>(config.n), std::uint8_t{0});
    }

    for (std::int64_t ep = 1; ep <= budget; ++ep) {
        const double eps = epsilon_at(ep, budget, params);

        // Every agent observes the same joint state, so each step's key is
        // encoded once and shared across the n action picks and n updates.
        int cached_step = 0;
        StateKey cached_key = 0;
        const auto key_at = [&](int step, const EnvState& state) {
            if (step != cached_step) {
                cached_key = encode_state(state, config.state_type, arena.distance);
                cached_step = step;
            }
            return cached_key;
        };

        const auto act = [&](int agent, int step, const EnvState& state) {
            return select_action(tables[static_cast<std::size_t>(agent)],
                                 key_at(step, state), eps,
                                 streams[static_cast<std::size_t>(agent)]);
        };
        const auto learn = [&](const StepTransition& tr) {
            const StateKey before = key_at(tr.step, tr.before);
            const StateKey after =
                encode_state(tr.after, config.state_type, arena.distance);
            for (int agent = 0; agent < config.n; ++agent) {
                const auto a = static_cast<std::size_t>(agent);
                q_update(tables[a], before, tr.actions[a], tr.rewards[a], after,
                         tr.terminal, params);
            }
            // tr.after is the next step's observation.
            cached_key = after;
            cached_step = tr.step + 1;
        };

        EpisodeOutcome outcome =
            run_episode(arena, config.n, scheme, act, flags, learn);
        roll_winner_flags(flags, outcome);
        log.append(std::move(outcome));
    }
    return log;
}

}  // namespace

EpisodeLog simulate_run(const ExperimentConfig& config) {
    config.validate();
    const std::int64_t budget = resolved_episodes(config);
    if (budget <= 0) {
        throw std::invalid_argument("simulate_run: episode budget must be positive");
    }
    return config.policy == PolicyKind::Random
               ? simulate_random(config, budget)
               : simulate_qlearning(config, budget);
}

std::string results_root(const std::string& override_dir) {
    if (!override_dir.empty()) return override_dir;
    if (const char* env = std::getenv("TFL_RESULTS_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    return "results";
}

RunResult run_experiment(const ExperimentConfig& config,
                         const std::string& out_root) {
    RunResult result{simulate_run(config), MetricReport{}, {}};
    result.report = compute_report(result.log, config);

    const fs::path dir = fs::path(results_root(out_root)) / config.tag();
    fs::create_directories(dir);
    write_episode_log_csv(result.log, (dir / "log.csv").string());
    write_report_json(result.report, (dir / "report.json").string());
    save_config(config, (dir / "config.json").string());
    result.run_dir = dir.string();
    return result;
}

std::string to_string(MetricFamily family) {
    switch (family) {
        case MetricFamily::Classic: return "classic";
        case MetricFamily::Alt: return "alt";
        case MetricFamily::Rp: return "rp";
    }
    throw std::invalid_argument("to_string: unknown metric family");
}

namespace {

std::string machine_label() {
#if defined(__linux__)
    const char* os = "linux";
#elif defined(__APPLE__)
    const char* os = "macos";
#elif defined(_WIN32)
    const char* os = "windows";
#else
    const char* os = "unknown-os";
#endif
#if defined(__x86_64__) || defined(_M_X64)
    const char* arch = "x86_64";
#elif defined(__aarch64__) || defined(_M_ARM64)
    const char* arch = "arm64";
#else
    const char* arch = "unknown-arch";
#endif
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    return std::string(os) + "-" + arch + "-" + std::to_string(hw) + "hw";
}

double median_of(std::vector<double> samples) {
    std::sort(samples.begin(), samples.end());
    const std::size_t mid = samples.size() / 2;
    return samples.size() % 2 == 1 ? samples[mid]
                                   : 0.5 * (samples[mid - 1] + samples[mid]);
}

}  // namespace

std::vector<TimingRecord> bench_metrics(int n, std::int64_t episodes,
                                        int trials, std::uint64_t seed) {
    if (trials < 3) {
        throw std::invalid_argument("bench_metrics: need at least 3 trials");
    }
    if (n < 2 || episodes < n) {
        throw std::invalid_argument("bench_metrics: need n >= 2 and episodes >= n");
    }
    const EpisodeLog log =
        make_random_log(n, static_cast<std::size_t>(episodes), seed);

    using clock = std::chrono::steady_clock;
    // The sink keeps the timed calls observable so they cannot be elided.
    volatile double sink = 0.0;
    const auto timed = [&](auto&& fn) {
        std::vector<double> samples;
        samples.reserve(static_cast<std::size_t>(trials));
        for (int t = 0; t < trials; ++t) {
            const auto start = clock::now();
            sink = sink + fn();
            const auto stop = clock::now();
            samples.push_back(std::chrono::duration<double>(stop - start).count());
        }
        return median_of(std::move(samples));
    };

    const double classic_seconds = timed([&] {
        const RewardTotals totals = RewardTotals::from_log(log);
        return efficiency(totals) + reward_fairness(totals).value_or(0.0);
    });
    const double alt_seconds = timed([&] {
        const AltScores scores = alt_metric_family(log);
        return scores.calt + scores.qealt;
    });
    const double rp_seconds = timed([&] {
        const RpFamilyScores scores = rp_family(log);
        return scores.rp_excl + scores.rp_reach;
    });

    const std::string machine = machine_label();
    return {
        {MetricFamily::Classic, classic_seconds, n, episodes, machine},
        {MetricFamily::Alt, alt_seconds, n, episodes, machine},
        {MetricFamily::Rp, rp_seconds, n, episodes, machine},
    };
}

namespace {

std::ofstream open_csv(const std::string& path, const char* who) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error(std::string(who) + ": cannot open " + path);
    }
    return out;
}

void finish_csv(std::ofstream& out, const std::string& path, const char* who) {
    out.flush();
    if (!out) {
        throw std::runtime_error(std::string(who) + ": write failed for " + path);
    }
}

// CSV fields carry no escaping, so free-text fields drop the separator.
std::string comma_free(std::string text) {
    std::replace(text.begin(), text.end(), ',', ';');
    return text;
}

}  // namespace

void write_timing_csv(const std::vector<TimingRecord>& records,
                      const std::string& path) {
    auto out = open_csv(path, "write_timing_csv");
    out << "family,n,episodes,wall_seconds,machine\n";
    for (const TimingRecord& rec : records) {
        out << to_string(rec.family) << ',' << rec.n << ',' << rec.episodes
            << ',' << csv_double(rec.wall_seconds) << ','
            << comma_free(rec.machine) << '\n';
    }
    finish_csv(out, path, "write_timing_csv");
}

std::vector<ExperimentConfig> study_sweep_configs(std::uint64_t base_seed) {
    static constexpr int kAgentCounts[] = {2, 3, 5, 8, 10};
    std::vector<ExperimentConfig> configs;
    configs.reserve(30);
    std::uint64_t index = 0;
    for (int n : kAgentCounts) {
        for (StateType state : {StateType::TypeA, StateType::TypeB}) {
            for (RewardKind reward : {RewardKind::ILF, RewardKind::IQF}) {
                ExperimentConfig config;
                config.n = n;
                config.state_type = state;
                config.reward = reward;
                config.policy = PolicyKind::QLearning;
                config.seed = base_seed + index++;
                configs.push_back(config);
            }
        }
        for (RewardKind reward : {RewardKind::ILF, RewardKind::IQF}) {
            ExperimentConfig config;
            config.n = n;
            config.reward = reward;
            config.policy = PolicyKind::Random;
            config.seed = base_seed + index++;
            configs.push_back(config);
        }
    }
    return configs;
}

const std::vector<std::string>& rp_correlation_row_keys() {
    static const std::vector<std::string> keys = {
        "awe_excl", "wpe_excl",   "rs_excl",    "awe_reach", "wpe_reach",
        "rs_reach", "rp_excl",    "rp_rs_mxae", "rp_rs_mxax", "rp_reach",
    };
    return keys;
}

const std::vector<std::string>& alt_correlation_col_keys() {
    static const std::vector<std::string> keys = {"calt", "ealt", "aalt"};
    return keys;
}

void write_results_csv(const std::vector<MetricReport>& reports,
                       const std::string& path) {
    auto out = open_csv(path, "write_results_csv");
    out << "config_id,policy,n,episodes,state_type,reward,seed";
    for (const std::string& key : canonical_metric_keys()) out << ',' << key;
    out << ",rf_degenerate,classic_seconds,alt_seconds,rp_seconds\n";

    for (const MetricReport& report : reports) {
        const ExperimentConfig& config = report.config;
        out << config.tag() << ',' << to_string(config.policy) << ','
            << config.n << ',' << report.episodes << ','
            << to_string(config.state_type) << ',' << to_string(config.reward)
            << ',' << config.seed;
        for (const std::string& key : canonical_metric_keys()) {
            out << ',';
            if (const auto it = report.values.find(key); it != report.values.end()) {
                out << csv_double(it->second);
            }
        }
        out << ',' << (report.reward_fairness_degenerate ? 1 : 0) << ','
            << csv_double(report.timing.classic_seconds) << ','
            << csv_double(report.timing.alt_seconds) << ','
            << csv_double(report.timing.rp_seconds) << '\n';
    }
    finish_csv(out, path, "write_results_csv");
}

void write_correlation_csv(const CorrelationTable& table,
                           const std::string& path) {
    auto out = open_csv(path, "write_correlation_csv");
    out << "row_metric,col_metric,rho,ase,n,p_flag\n";
    for (std::size_t r = 0; r < table.row_keys.size(); ++r) {
        for (std::size_t c = 0; c < table.col_keys.size(); ++c) {
            const CorrelationCell& cell = table.at(r, c);
            out << table.row_keys[r] << ',' << table.col_keys[c] << ',';
            if (cell.degenerate) {
                out << "nan,nan," << cell.sample_count << ",degenerate\n";
            } else {
                out << csv_double(cell.rho) << ',' << csv_double(cell.ase)
                    << ',' << cell.sample_count << ',' << to_string(cell.p_flag)
                    << '\n';
            }
        }
    }
    finish_csv(out, path, "write_correlation_csv");
}

namespace {

double report_value(const MetricReport& report, const std::string& key) {
    const auto it = report.values.find(key);
    if (it == report.values.end()) {
        throw std::invalid_argument("report is missing metric " + key);
    }
    return it->second;
}

}  // namespace

void write_coordination_csv(const std::vector<MetricReport>& reports,
                            const std::string& path) {
    static const std::vector<std::string> kMetrics = {"rp_excl", "calt",
                                                      "ealt", "aalt"};

    // Baselines grouped by (n, reward); a learning run compares against the
    // mean of every matching random run in the set.
    struct BaselineSums {
        std::map<std::string, double> sums;
        int count = 0;
    };
    std::map<std::pair<int, RewardKind>, BaselineSums> baselines;
    for (const MetricReport& report : reports) {
        if (report.config.policy != PolicyKind::Random) continue;
        auto& slot = baselines[{report.config.n, report.config.reward}];
        for (const std::string& key : kMetrics) {
            slot.sums[key] += report_value(report, key);
        }
        ++slot.count;
    }

    auto out = open_csv(path, "write_coordination_csv");
    out << "config_id,n,state_type,reward,metric,learned,random,cs\n";
    for (const MetricReport& report : reports) {
        if (report.config.policy != PolicyKind::QLearning) continue;
        const auto it = baselines.find({report.config.n, report.config.reward});
        if (it == baselines.end() || it->second.count == 0) continue;
        for (const std::string& key : kMetrics) {
            const double learned = report_value(report, key);
            const double random =
                it->second.sums.at(key) / it->second.count;
            double cs = std::numeric_limits<double>::quiet_NaN();
            try {
                cs = coordination_score(learned, random);
            } catch (const std::domain_error&) {
                // Saturated baseline: the score is undefined there.
            }
            out << report.config.tag() << ',' << report.config.n << ','
                << to_string(report.config.state_type) << ','
                << to_string(report.config.reward) << ',' << key << ','
                << csv_double(learned) << ',' << csv_double(random) << ','
                << csv_double(cs) << '\n';
        }
    }
    finish_csv(out, path, "write_coordination_csv");
}

namespace {

void write_run_status_csv(const std::vector<ExperimentConfig>& configs,
                          const std::vector<std::string>& statuses,
                          const std::string& path) {
    auto out = open_csv(path, "write_run_status_csv");
    out << "config_id,status\n";
    for (std::size_t i = 0; i < configs.size(); ++i) {
        out << configs[i].tag() << ',' << comma_free(statuses[i]) << '\n';
    }
    finish_csv(out, path, "write_run_status_csv");
}

void write_pearson_aux_csv(const std::vector<MetricReport>& reports,
                           const std::string& path) {
    static const std::vector<std::string> kPartners = {"efficiency",
                                                       "reward_fairness"};
    auto out = open_csv(path, "write_pearson_aux_csv");
    out << "metric_a,metric_b,r,n\n";
    for (const std::string& partner : kPartners) {
        std::vector<double> xs;
        std::vector<double> ys;
        for (const MetricReport& report : reports) {
            const auto a = report.values.find("rp_excl");
            const auto b = report.values.find(partner);
            if (a == report.values.end() || b == report.values.end()) continue;
            xs.push_back(a->second);
            ys.push_back(b->second);
        }
        double r = std::numeric_limits<double>::quiet_NaN();
        try {
            r = pearson(xs, ys);
        } catch (const std::exception&) {
            // Constant or short inputs leave the cell empty.
        }
        out << "rp_excl," << partner << ',' << csv_double(r) << ','
            << xs.size() << '\n';
    }
    finish_csv(out, path, "write_pearson_aux_csv");
}

void write_plot_time_vs_n_csv(const std::vector<MetricReport>& reports,
                              const std::string& path) {
    auto out = open_csv(path, "write_plot_time_vs_n_csv");
    out << "n,episodes,policy,classic_seconds,alt_seconds,rp_seconds\n";
    for (const MetricReport& report : reports) {
        out << report.config.n << ',' << report.episodes << ','
            << to_string(report.config.policy) << ','
            << csv_double(report.timing.classic_seconds) << ','
            << csv_double(report.timing.alt_seconds) << ','
            << csv_double(report.timing.rp_seconds) << '\n';
    }
    finish_csv(out, path, "write_plot_time_vs_n_csv");
}

void write_plot_calt_vs_n_csv(const std::vector<MetricReport>& reports,
                              const std::string& path) {
    auto out = open_csv(path, "write_plot_calt_vs_n_csv");
    out << "n,policy,state_type,reward,calt\n";
    for (const MetricReport& report : reports) {
        out << report.config.n << ',' << to_string(report.config.policy) << ','
            << to_string(report.config.state_type) << ','
            << to_string(report.config.reward) << ','
            << csv_double(report_value(report, "calt")) << '\n';
    }
    finish_csv(out, path, "write_plot_calt_vs_n_csv");
}

}  // namespace

SweepOutcome sweep(const std::vector<ExperimentConfig>& configs,
                   const std::string& out_root, int jobs) {
    const std::string out_dir = results_root(out_root);
    fs::create_directories(out_dir);

    std::vector<MetricReport> slots(configs.size());
    std::vector<std::string> statuses(configs.size());
    std::vector<char> succeeded(configs.size(), 0);

    const auto run_one = [&](std::size_t i) {
        try {
            RunResult result = run_experiment(configs[i], out_dir);
            slots[i] = std::move(result.report);
            statuses[i] = "ok";
            succeeded[i] = 1;
        } catch (const std::exception& err) {
            statuses[i] = err.what();
        }
    };

    int worker_count = jobs;
    if (worker_count <= 0) {
        worker_count =
            static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    }
    worker_count = static_cast<int>(
        std::min<std::size_t>(static_cast<std::size_t>(worker_count), configs.size()));

    if (worker_count <= 1) {
        for (std::size_t i = 0; i < configs.size(); ++i) run_one(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> workers;
        workers.reserve(static_cast<std::size_t>(worker_count));
        for (int w = 0; w < worker_count; ++w) {
            workers.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < configs.size();
                     i = next.fetch_add(1)) {
                    run_one(i);
                }
            });
        }
        for (std::thread& worker : workers) worker.join();
    }

    SweepOutcome outcome;
    outcome.out_dir = out_dir;
    outcome.statuses = std::move(statuses);
    for (std::size_t i = 0; i < configs.size(); ++i) {
        if (succeeded[i]) outcome.reports.push_back(std::move(slots[i]));
    }

    const fs::path root(out_dir);
    write_run_status_csv(configs, outcome.statuses, (root / "run_status.csv").string());
    write_results_csv(outcome.reports, (root / "results.csv").string());

    std::vector<std::map<std::string, double>> runs;
    runs.reserve(outcome.reports.size());
    for (const MetricReport& report : outcome.reports) {
        runs.push_back(report.values);
    }
    const CorrelationTable table = correlation_table(
        runs, rp_correlation_row_keys(), alt_correlation_col_keys());
    write_correlation_csv(table, (root / "correlations.csv").string());
    write_pearson_aux_csv(outcome.reports, (root / "pearson_aux.csv").string());
    write_coordination_csv(outcome.reports, (root / "coordination.csv").string());
    write_plot_time_vs_n_csv(outcome.reports, (root / "plot_time_vs_n.csv").string());
    write_plot_calt_vs_n_csv(outcome.reports, (root / "plot_calt_vs_n.csv").string());
    return outcome;
}

}  // namespace tfl
