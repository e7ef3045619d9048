#include "tfl/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

namespace tfl {

double coordination_score(double metric_learned, double metric_random) {
    if (metric_random >= 1.0) {
        throw std::domain_error(
            "coordination_score: baseline of " + std::to_string(metric_random) +
            " leaves no room above it");
    }
    return (metric_learned - metric_random) / (1.0 - metric_random);
}

std::string to_string(SignificanceFlag flag) {
    switch (flag) {
        case SignificanceFlag::BelowP001: return "p<0.001";
        case SignificanceFlag::BelowP05: return "p<0.05";
        case SignificanceFlag::NotSignificant: return "ns";
    }
    throw std::logic_error("to_string: unknown SignificanceFlag");
}

namespace {

// Fractional average ranks (1-based): ties share the mean of the positions
// they occupy.
std::vector<double> average_ranks(const std::vector<double>& xs) {
    const std::size_t m = xs.size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&xs](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
    std::vector<double> ranks(m, 0.0);
    std::size_t i = 0;
    while (i < m) {
        std::size_t j = i;
        while (j + 1 < m && xs[order[j + 1]] == xs[order[i]]) ++j;
        const double shared = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
        i = j + 1;
    }
    return ranks;
}

CorrelationCell degenerate_cell(std::size_t samples) {
    CorrelationCell cell;
    cell.rho = std::numeric_limits<double>::quiet_NaN();
    cell.ase = std::numeric_limits<double>::quiet_NaN();
    cell.sample_count = samples;
    cell.degenerate = true;
    return cell;
}

SignificanceFlag flag_from_t(double t_stat, double dof) {
    const boost::math::students_t dist(dof);
    const double p = 2.0 * boost::math::cdf(boost::math::complement(
                               dist, std::abs(t_stat)));
    if (p < 0.001) return SignificanceFlag::BelowP001;
    if (p < 0.05) return SignificanceFlag::BelowP05;
    return SignificanceFlag::NotSignificant;
}

}  // namespace

CorrelationCell spearman(const std::vector<double>& xs,
                         const std::vector<double>& ys) {
    if (xs.size() != ys.size()) return degenerate_cell(0);
    const std::size_t m = xs.size();
    if (m < 3) return degenerate_cell(m);

    const auto rx = average_ranks(xs);
    const auto ry = average_ranks(ys);

    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        mean_x += rx[i];
        mean_y += ry[i];
    }
    mean_x /= static_cast<double>(m);
    mean_y /= static_cast<double>(m);

    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double dx = rx[i] - mean_x;
        const double dy = ry[i] - mean_y;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return degenerate_cell(m);

    CorrelationCell cell;
    cell.rho = sxy / std::sqrt(sxx * syy);
    cell.rho = std::clamp(cell.rho, -1.0, 1.0);
    cell.sample_count = m;
    const double dof = static_cast<double>(m - 2);
    const double residual = 1.0 - cell.rho * cell.rho;
    cell.ase = std::sqrt(std::max(0.0, residual) / dof);
    if (residual <= 0.0) {
        cell.p_flag = SignificanceFlag::BelowP001;  // |rho| = 1: t diverges
    } else {
        const double t_stat = cell.rho * std::sqrt(dof / residual);
        cell.p_flag = flag_from_t(t_stat, dof);
    }
    return cell;
}

double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2) {
        throw std::invalid_argument(
            "pearson: needs two equal-length vectors of >= 2 samples");
    }
    const std::size_t m = xs.size();
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        mean_x += xs[i];
        mean_y += ys[i];
    }
    mean_x /= static_cast<double>(m);
    mean_y /= static_cast<double>(m);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double dx = xs[i] - mean_x;
        const double dy = ys[i] - mean_y;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw std::domain_error("pearson: constant input vector");
    }
    return sxy / std::sqrt(sxx * syy);
}

const CorrelationCell& CorrelationTable::at(std::size_t row,
                                            std::size_t col) const {
    if (row >= row_keys.size() || col >= col_keys.size()) {
        throw std::out_of_range("CorrelationTable::at: index out of range");
    }
    return cells[row * col_keys.size() + col];
}

CorrelationTable correlation_table(
    const std::vector<std::map<std::string, double>>& runs,
    const std::vector<std::string>& row_keys,
    const std::vector<std::string>& col_keys) {
    CorrelationTable table;
    table.row_keys = row_keys;
    table.col_keys = col_keys;
    table.cells.reserve(row_keys.size() * col_keys.size());
    for (const auto& row_key : row_keys) {
        for (const auto& col_key : col_keys) {
            std::vector<double> xs, ys;
            for (const auto& run : runs) {
                const auto rx = run.find(row_key);
                const auto ry = run.find(col_key);
                if (rx != run.end() && ry != run.end()) {
                    xs.push_back(rx->second);
                    ys.push_back(ry->second);
                }
            }
            table.cells.push_back(spearman(xs, ys));
        }
    }
    return table;
}

}  // namespace tfl
