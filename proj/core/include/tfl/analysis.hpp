#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace tfl {

// How far a learned policy closes the gap between the random baseline and a
// perfect score of 1: (learned - random) / (1 - random). Negative when
// learning does worse than chance. Undefined when the baseline already
// saturates (random >= 1).
double coordination_score(double metric_learned, double metric_random);

enum class SignificanceFlag { BelowP001, BelowP05, NotSignificant };

std::string to_string(SignificanceFlag flag);

// One rank-correlation result. `degenerate` marks cells that carry no
// information (mismatched or constant inputs); rho and ase are NaN there.
struct CorrelationCell {
    double rho = 0.0;
    std::size_t sample_count = 0;
    double ase = 0.0;
    SignificanceFlag p_flag = SignificanceFlag::NotSignificant;
    bool degenerate = false;
};

// Spearman rank correlation with fractional average ranks for ties,
// computed as Pearson over the rank vectors. The asymptotic standard error
// is sqrt((1 - rho^2) / (N - 2)) and the significance flag comes from the
// two-sided Student-t approximation. Needs at least 3 samples.
CorrelationCell spearman(const std::vector<double>& xs,
                         const std::vector<double>& ys);

// Plain Pearson correlation on raw values; the correlation report carries a
// couple of these alongside the rank table for comparison.
double pearson(const std::vector<double>& xs, const std::vector<double>& ys);

struct CorrelationTable {
    std::vector<std::string> row_keys;
    std::vector<std::string> col_keys;
    std::vector<CorrelationCell> cells;  // row-major

    const CorrelationCell& at(std::size_t row, std::size_t col) const;
};

// Spearman of every (row key, col key) pair across a set of per-run metric
// maps. Runs missing either key are skipped for that cell; cells with fewer
// than 3 usable runs come back degenerate.
CorrelationTable correlation_table(
    const std::vector<std::map<std::string, double>>& runs,
    const std::vector<std::string>& row_keys,
    const std::vector<std::string>& col_keys);

}  // namespace tfl
