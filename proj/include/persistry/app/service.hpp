#pragma once

// Query layer shared by the command line and the HTTP service. Every answer
// is a JSON document rendered through persistry::dump, so both front ends
// return the same bytes for the same question.

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "persistry/analytics.hpp"
#include "persistry/error.hpp"
#include "persistry/filtration.hpp"
#include "persistry/persistence.hpp"
#include "persistry/render.hpp"
#include "persistry/roster.hpp"
#include "persistry/serialize.hpp"

namespace persistry::app {

struct AppConfig {
    std::filesystem::path dataset_root;
    std::string season;
    std::vector<Stat> selected_stats = all_stats();
    double noise_fraction = 0.01;
    TunnelingConfig tunneling;
    std::string listen_address = "127.0.0.1:8080";
};

/// Picks the season: the configured one, else the only subdirectory of the root.
inline std::string resolve_season(const std::filesystem::path& root, const std::string& season) {
    namespace fs = std::filesystem;
    if (!season.empty()) return season;
    if (!fs::is_directory(root)) throw NotFound("dataset root not found: " + root.string());
    std::vector<std::string> seasons;
    for (const auto& entry : fs::directory_iterator(root))
        if (entry.is_directory()) seasons.push_back(entry.path().filename().string());
    if (seasons.size() != 1)
        throw InvalidArgument("dataset has " + std::to_string(seasons.size()) + " seasons; pass --season");
    return seasons.front();
}

/// HTTP-style outcome: 200 with a document, or 400/404 with {"error": ...}.
struct Response {
    int status = 200;
    std::string body;
};

struct TeamAnalysis {
    PointCloud cloud;
    Barcode barcode;
    TeamSummary summary;
};

class Service {
public:
    explicit Service(AppConfig config) : config_(std::move(config)) {
        if (config_.noise_fraction < 0.0 || config_.noise_fraction > 0.5)
            throw InvalidArgument("noise fraction must lie in [0, 0.5]");
        config_.season = resolve_season(config_.dataset_root, config_.season);
        data_ = load_dataset(config_.dataset_root, config_.season);
    }

    const AppConfig& config() const noexcept { return config_; }
    const Dataset& dataset() const noexcept { return data_; }

    /// Computed on first use and cached; entries are never evicted, so the
    /// returned reference stays valid.
    const TeamAnalysis& analysis(const std::string& slug) const {
        const TeamRoster& roster = data_.team(slug);
        std::lock_guard lock(mutex_);
        auto it = analyses_.find(slug);
        if (it == analyses_.end()) it = analyses_.emplace(slug, analyze(slug, roster)).first;
        return it->second;
    }

    /// Analyses every team now (the server does this before accepting requests).
    void warm() const {
        for (const auto& [slug, roster] : data_.teams) analysis(slug);
    }

    Json teams_json() const {
        Json out = Json::array();
        for (const auto& [slug, roster] : data_.teams) {
            Json t;
            t["slug"] = slug;
            t["name"] = roster.team_name;
            t["players"] = roster.players.size();
            out.push_back(t);
        }
        return out;
    }

    Json summary_json(const std::string& slug) const { return to_json(analysis(slug).summary); }

    /// The team's barcode with dim-1 bars below the noise floor removed.
    Barcode reported_barcode(const std::string& slug) const {
        const auto& a = analysis(slug);
        Barcode b = a.barcode;
        b.dim1 = significant_h1(a.barcode, noise_floor(a.summary.top_line, config_.noise_fraction));
        return b;
    }

    Json barcode_json(const std::string& slug, std::optional<int> dim) const {
        const Barcode b = reported_barcode(slug);
        if (!dim) return to_json(b);
        if (*dim != 0 && *dim != 1) throw InvalidArgument("dim must be 0 or 1");
        Json j;
        j["team"] = slug;
        j["dim"] = *dim;
        j["intervals"] = intervals_to_json(b.intervals(*dim));
        return j;
    }

    Json players_json(const std::string& slug) const {
        Json out = Json::array();
        for (const auto& p : data_.team(slug).players) out.push_back(to_json(p));
        return out;
    }

    /// Hypothetical trade evaluated on a copy of the roster.
    TradeReport evaluate_trade(const std::string& team, const std::string& outgoing, const std::string& incoming_team,
                               const std::string& incoming_player) const {
        const TeamRoster& roster = data_.team(team);
        const TeamRoster& source = data_.team(incoming_team);
        const PlayerRecord* incoming = source.find(incoming_player);
        if (!incoming) throw NotFound("player '" + incoming_player + "' is not on " + incoming_team);
        TradeSpec trade{team, outgoing, *incoming, incoming_team};
        const TeamRoster traded = apply_trade(roster, trade);
        const TeamAnalysis after = analyze(team, traded);
        return compare(analysis(team).summary, after.summary);
    }

    Json trade_json(const std::string& team, const std::string& outgoing, const std::string& incoming_team,
                    const std::string& incoming_player) const {
        return to_json(evaluate_trade(team, outgoing, incoming_team, incoming_player));
    }

    Json correlation_json() const {
        if (!data_.league) throw NotFound("season " + data_.season + " has no league.csv");
        return to_json(rank_correlation(*data_.league));
    }

    std::string barcode_svg(const std::string& slug, int dim) const {
        RenderOptions options;
        options.dim = dim;
        return render_barcode_svg(reported_barcode(slug), options);
    }

    std::string barcode_text(const std::string& slug, int dim, int columns = 60) const {
        std::string out;
        for (const auto& line : render_text(reported_barcode(slug), dim, columns)) out += line + "\n";
        return out;
    }

    /// Runs a query and maps library errors onto 400/404 documents.
    template <typename Query>
    static Response respond(Query&& query) {
        try {
            return {200, dump(query())};
        } catch (const NotFound& e) {
            return {404, dump(Json{{"error", e.what()}})};
        } catch (const Error& e) {
            return {400, dump(Json{{"error", e.what()}})};
        } catch (const nlohmann::json::exception& e) {
            return {400, dump(Json{{"error", std::string("malformed request: ") + e.what()}})};
        }
    }

private:
    TeamAnalysis analyze(const std::string& slug, const TeamRoster& roster) const {
        PointCloud cloud = to_point_cloud(roster, config_.selected_stats);
        const auto dm = build_distance_matrix(cloud);
        Barcode barcode = compute_intervals(rips_filtration(dm, 2), 1);
        SummaryConfig sc{config_.noise_fraction, config_.tunneling};
        TeamSummary summary = summarize(slug, barcode, cloud, sc);
        return {std::move(cloud), std::move(barcode), std::move(summary)};
    }

    AppConfig config_;
    Dataset data_;
    mutable std::mutex mutex_;
    mutable std::map<std::string, TeamAnalysis> analyses_;
};

}  // namespace persistry::app
