#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "persistry/error.hpp"
#include "persistry/persistence.hpp"
#include "persistry/point_cloud.hpp"
#include "persistry/roster.hpp"
#include "persistry/tunneling.hpp"

namespace persistry {

struct SummaryConfig {
    /// dim-1 bars shorter than noise_fraction * top_line are ignored
    double noise_fraction = 0.01;
    TunnelingConfig tunneling;
};

struct TeamSummary {
    std::string team;
    double top_line = 0.0;         ///< largest finite dim-0 death
    double mean_bar_length = 0.0;  ///< mean finite dim-0 death ("shaded area")
    int h1_count = 0;
    double h1_total_length = 0.0;
    SparsityProfile sparsity_profile;
    TunnelingEstimate tunneling;
    double noise_fraction = 0.01;
};

inline double noise_floor(double top_line, double noise_fraction) { return noise_fraction * top_line; }

/// dim-1 bars at or above the noise floor (infinite bars always count).
inline std::vector<PersistenceInterval> significant_h1(const Barcode& barcode, double floor) {
    std::vector<PersistenceInterval> out;
    for (const auto& bar : barcode.dim1)
        if (bar.length() >= floor) out.push_back(bar);
    return out;
}

inline TeamSummary summarize(std::string team, const Barcode& barcode, const PointCloud& cloud,
                             const SummaryConfig& config = {}) {
    if (config.noise_fraction < 0.0 || config.noise_fraction > 0.5)
        throw InvalidArgument("noise_fraction must lie in [0, 0.5]");
    TeamSummary s;
    s.team = std::move(team);
    s.noise_fraction = config.noise_fraction;
    const auto deaths = barcode.finite_deaths(0);
    if (!deaths.empty()) {
        s.top_line = deaths.back();
        s.mean_bar_length = std::accumulate(deaths.begin(), deaths.end(), 0.0) / static_cast<double>(deaths.size());
    }
    std::vector<double> lengths;
    for (const auto& bar : significant_h1(barcode, noise_floor(s.top_line, config.noise_fraction)))
        lengths.push_back(bar.length());
    std::sort(lengths.begin(), lengths.end());
    s.h1_count = static_cast<int>(lengths.size());
    s.h1_total_length = std::accumulate(lengths.begin(), lengths.end(), 0.0);
    if (cloud.size() >= 2) {
        s.sparsity_profile = degree_sparsity(cloud);
        s.tunneling = tunneling(cloud, config.tunneling);
    }
    return s;
}

enum class Verdict { Improved, Worsened, Neutral };

inline std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Improved: return "improved";
        case Verdict::Worsened: return "worsened";
        default: return "neutral";
    }
}

struct SummaryDeltas {
    double top_line = 0.0;
    double mean_bar_length = 0.0;
    int h1_count = 0;
    double h1_total_length = 0.0;
    double sparsity = 0.0;
    double tunneling = 0.0;
};

struct TradeReport {
    TeamSummary before;
    TeamSummary after;
    SummaryDeltas deltas;
    Verdict verdict = Verdict::Neutral;
};

using VerdictPolicy = std::function<Verdict(const TeamSummary& before, const TeamSummary& after)>;

/// Fewer dim-1 classes win; then less total dim-1 length; then a longer mean
/// dim-0 bar. Anything else is neutral.
inline Verdict default_verdict(const TeamSummary& before, const TeamSummary& after) {
    if (after.h1_count != before.h1_count)
        return after.h1_count < before.h1_count ? Verdict::Improved : Verdict::Worsened;
    if (after.h1_total_length != before.h1_total_length)
        return after.h1_total_length < before.h1_total_length ? Verdict::Improved : Verdict::Worsened;
    if (after.mean_bar_length != before.mean_bar_length)
        return after.mean_bar_length > before.mean_bar_length ? Verdict::Improved : Verdict::Worsened;
    return Verdict::Neutral;
}

inline TradeReport compare(const TeamSummary& before, const TeamSummary& after,
                           const VerdictPolicy& policy = default_verdict) {
    if (before.team != after.team) throw InvalidArgument("cannot compare summaries of different teams");
    if (before.noise_fraction != after.noise_fraction)
        throw InvalidArgument("cannot compare summaries computed with different configurations");
    TradeReport report{before, after, {}, Verdict::Neutral};
    auto& d = report.deltas;
    d.top_line = after.top_line - before.top_line;
    d.mean_bar_length = after.mean_bar_length - before.mean_bar_length;
    d.h1_count = after.h1_count - before.h1_count;
    d.h1_total_length = after.h1_total_length - before.h1_total_length;
    auto first = [](const SparsityProfile& p) { return p.values.empty() ? 0.0 : p.values.front(); };
    d.sparsity = first(after.sparsity_profile) - first(before.sparsity_profile);
    d.tunneling = after.tunneling.diameter - before.tunneling.diameter;
    report.verdict = policy(before, after);
    return report;
}

struct CorrelationReport {
    double rho = 0.0;
    int n = 0;
    std::vector<std::pair<int, int>> pairs;  ///< (corsi_rank, standing), in league order
};

/// Spearman correlation between Corsi rank and final standing. Both columns
/// are tie-free permutations, so rho = 1 - 6 sum d^2 / (n (n^2 - 1)).
inline CorrelationReport rank_correlation(const League& league) {
    validate_league(league);
    CorrelationReport report;
    report.n = static_cast<int>(league.rows.size());
    double sum_sq = 0.0;
    for (const auto& row : league.rows) {
        report.pairs.emplace_back(row.corsi_rank, row.standing);
        const double diff = row.corsi_rank - row.standing;
        sum_sq += diff * diff;
    }
    const double n = report.n;
    report.rho = report.n < 2 ? 1.0 : 1.0 - 6.0 * sum_sq / (n * (n * n - 1.0));
    return report;
}

}  // namespace persistry
