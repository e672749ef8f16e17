#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "persistry/error.hpp"
#include "persistry/point_cloud.hpp"

namespace persistry {

/// Per-player 5-on-5 statistics, in canonical column order.
enum class Stat { G, A, SP, P1, S, CF, PSR, PenDr, HitF, HitA, Tk, Gv };

inline constexpr std::size_t kStatCount = 12;
inline constexpr std::array<std::string_view, kStatCount> kStatNames{"G",  "A",   "SP",    "P1",   "S",  "CF",
                                                                     "PSR", "PenDr", "HitF", "HitA", "Tk", "Gv"};
inline constexpr std::string_view kRosterHeader = "Name,G,A,SP,P1,S,CF,PSR,PenDr,HitF,HitA,Tk,Gv";
inline constexpr std::string_view kLeagueHeader = "Team,Rank,CorsiFor,Points,Standing";

inline std::optional<Stat> stat_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kStatCount; ++i)
        if (kStatNames[i] == name) return static_cast<Stat>(i);
    return std::nullopt;
}

inline std::vector<Stat> all_stats() {
    std::vector<Stat> out;
    for (std::size_t i = 0; i < kStatCount; ++i) out.push_back(static_cast<Stat>(i));
    return out;
}

/// Parses "G,A,SP" style lists. Unknown names raise InvalidArgument.
inline std::vector<Stat> parse_stat_list(std::string_view text) {
    std::vector<Stat> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        std::string_view token = text.substr(pos, comma - pos);
        while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
        while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
        if (!token.empty()) {
            auto stat = stat_from_name(token);
            if (!stat) throw InvalidArgument("unknown stat column '" + std::string(token) + "'");
            if (std::find(out.begin(), out.end(), *stat) == out.end()) out.push_back(*stat);
        }
        pos = comma + 1;
    }
    if (out.empty()) throw InvalidArgument("stat selection must not be empty");
    return out;
}

struct PlayerRecord {
    std::string name;
    std::array<double, kStatCount> stats{};

    double stat(Stat s) const { return stats[static_cast<std::size_t>(s)]; }
};

struct TeamRoster {
    std::string team_name;
    std::vector<PlayerRecord> players;

    const PlayerRecord* find(std::string_view name) const {
        auto it = std::find_if(players.begin(), players.end(), [&](const PlayerRecord& p) { return p.name == name; });
        return it == players.end() ? nullptr : &*it;
    }
};

struct LeagueRow {
    std::string team;
    int corsi_rank = 0;
    int corsi_for = 0;
    int points = 0;
    int standing = 0;
};

struct League {
    std::vector<LeagueRow> rows;
};

struct TradeSpec {
    std::string team;
    std::string outgoing_player;
    PlayerRecord incoming;
    std::string incoming_team;
};

namespace csv {

/// Splits CSV text into records: comma separator, optional double-quoted
/// fields ("" escapes a quote), LF or CRLF line ends. Blank lines are skipped.
inline std::vector<std::vector<std::string>> read_records(std::string_view text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false;
    bool field_started = false;
    std::size_t line = 1;
    auto end_record = [&] {
        if (field_started || !field.empty() || !record.empty()) {
            record.push_back(std::move(field));
            records.push_back(std::move(record));
        }
        record.clear();
        field.clear();
        field_started = false;
    };
    if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                if (c == '\n') ++line;
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
            case '"':
                quoted = true;
                field_started = true;
                break;
            case ',':
                record.push_back(std::move(field));
                field.clear();
                field_started = true;
                break;
            case '\r':
                if (i + 1 < text.size() && text[i + 1] == '\n') break;
                [[fallthrough]];
            case '\n':
                end_record();
                ++line;
                break;
            default:
                field.push_back(c);
        }
    }
    if (quoted) throw ParseError("unterminated quoted field", line, "");
    end_record();
    return records;
}

inline std::string trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return std::string(s);
}

inline std::optional<double> to_double(std::string_view s) {
    const std::string t = trim(s);
    if (t.empty()) return std::nullopt;
    double value = 0.0;
    const char* first = t.data();
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(value)) return std::nullopt;
    return value;
}

inline std::optional<int> to_int(std::string_view s) {
    const std::string t = trim(s);
    int value = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) return std::nullopt;
    return value;
}

/// Shortest decimal text that reads back to the same double.
inline std::string format_number(double v) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

inline std::string quote_if_needed(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline void check_header(const std::vector<std::string>& header, std::string_view expected) {
    std::vector<std::string> names;
    std::size_t pos = 0;
    while (pos <= expected.size()) {
        const std::size_t comma = std::min(expected.find(',', pos), expected.size());
        names.emplace_back(expected.substr(pos, comma - pos));
        pos = comma + 1;
    }
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i >= header.size()) throw ParseError("missing column", 1, names[i]);
        if (trim(header[i]) != names[i])
            throw ParseError("unexpected header '" + trim(header[i]) + "', expected", 1, names[i]);
    }
    if (header.size() > names.size()) throw ParseError("unexpected extra column", 1, trim(header[names.size()]));
}

}  // namespace csv

/// Parses a roster file with header Name,G,A,SP,P1,S,CF,PSR,PenDr,HitF,HitA,Tk,Gv.
/// Rows keep file order; values are taken verbatim (0.01 stays 0.01).
inline TeamRoster parse_roster_csv(std::string_view content, std::string team_name = {}) {
    const auto records = csv::read_records(content);
    if (records.empty()) throw ParseError("empty roster file", 0, "");
    csv::check_header(records.front(), kRosterHeader);

    TeamRoster roster;
    roster.team_name = std::move(team_name);
    std::set<std::string> names;
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        const std::size_t row = r + 1;
        PlayerRecord player;
        player.name = rec.empty() ? std::string{} : csv::trim(rec[0]);
        if (player.name.empty()) throw ParseError("missing player name", row, "Name");
        for (std::size_t s = 0; s < kStatCount; ++s) {
            const std::string column(kStatNames[s]);
            if (s + 1 >= rec.size()) throw ParseError("missing column", row, column);
            auto value = csv::to_double(rec[s + 1]);
            if (!value) throw ParseError("non-numeric stat '" + csv::trim(rec[s + 1]) + "'", row, column);
            if (*value < 0.0) throw ParseError("negative stat", row, column);
            player.stats[s] = *value;
        }
        if (rec.size() > kStatCount + 1) throw ParseError("unexpected extra field", row, "");
        if (!names.insert(player.name).second) throw ParseError("duplicate player '" + player.name + "'", row, "Name");
        roster.players.push_back(std::move(player));
    }
    if (roster.players.size() < 2) throw ParseError("roster needs at least two players", 0, "");
    return roster;
}

inline std::string serialize_roster_csv(const TeamRoster& roster) {
    std::string out(kRosterHeader);
    out += '\n';
    for (const auto& p : roster.players) {
        out += csv::quote_if_needed(p.name);
        for (double v : p.stats) out += "," + csv::format_number(v);
        out += '\n';
    }
    return out;
}

/// Checks that ranks and standings are permutations of 1..N and Corsi-For
/// does not increase with rank.
inline void validate_league(const League& league) {
    const std::size_t n = league.rows.size();
    std::vector<bool> rank_seen(n + 1, false), standing_seen(n + 1, false);
    for (const auto& row : league.rows) {
        if (row.corsi_rank < 1 || static_cast<std::size_t>(row.corsi_rank) > n || rank_seen[row.corsi_rank])
            throw ValidationError("corsi ranks must be a permutation of 1.." + std::to_string(n) + " (team '" +
                                  row.team + "', rank " + std::to_string(row.corsi_rank) + ")");
        if (row.standing < 1 || static_cast<std::size_t>(row.standing) > n || standing_seen[row.standing])
            throw ValidationError("standings must be a permutation of 1.." + std::to_string(n) + " (team '" +
                                  row.team + "', standing " + std::to_string(row.standing) + ")");
        rank_seen[row.corsi_rank] = true;
        standing_seen[row.standing] = true;
    }
    std::vector<const LeagueRow*> by_rank(n);
    for (const auto& row : league.rows) by_rank[row.corsi_rank - 1] = &row;
    for (std::size_t i = 1; i < n; ++i)
        if (by_rank[i]->corsi_for > by_rank[i - 1]->corsi_for)
            throw ValidationError("corsi-for must not increase with rank (team '" + by_rank[i]->team + "')");
}

inline League parse_league_csv(std::string_view content) {
    const auto records = csv::read_records(content);
    if (records.empty()) throw ParseError("empty league file", 0, "");
    csv::check_header(records.front(), kLeagueHeader);
    static constexpr std::array<std::string_view, 4> int_columns{"Rank", "CorsiFor", "Points", "Standing"};
    League league;
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        const std::size_t row = r + 1;
        LeagueRow out;
        out.team = rec.empty() ? std::string{} : csv::trim(rec[0]);
        if (out.team.empty()) throw ParseError("missing team name", row, "Team");
        std::array<int, 4> values{};
        for (std::size_t c = 0; c < int_columns.size(); ++c) {
            const std::string column(int_columns[c]);
            if (c + 1 >= rec.size()) throw ParseError("missing column", row, column);
            auto value = csv::to_int(rec[c + 1]);
            if (!value) throw ParseError("non-integer value '" + csv::trim(rec[c + 1]) + "'", row, column);
            values[c] = *value;
        }
        if (rec.size() > int_columns.size() + 1) throw ParseError("unexpected extra field", row, "");
        out.corsi_rank = values[0];
        out.corsi_for = values[1];
        out.points = values[2];
        out.standing = values[3];
        league.rows.push_back(std::move(out));
    }
    validate_league(league);
    return league;
}

inline std::string serialize_league_csv(const League& league) {
    std::string out(kLeagueHeader);
    out += '\n';
    for (const auto& r : league.rows)
        out += csv::quote_if_needed(r.team) + "," + std::to_string(r.corsi_rank) + "," + std::to_string(r.corsi_for) +
               "," + std::to_string(r.points) + "," + std::to_string(r.standing) + "\n";
    return out;
}

/// Players as points: one coordinate per selected stat, in canonical column
/// order, optionally multiplied by per-column factors (raw data by default).
inline PointCloud to_point_cloud(const TeamRoster& roster, std::vector<Stat> selected = all_stats(),
                                 const std::map<Stat, double>& scaling = {}) {
    if (selected.empty()) throw InvalidArgument("stat selection must not be empty");
    std::sort(selected.begin(), selected.end());
    selected.erase(std::unique(selected.begin(), selected.end()), selected.end());
    std::vector<std::string> labels;
    std::vector<double> coords;
    for (const auto& p : roster.players) {
        labels.push_back(p.name);
        for (Stat s : selected) {
            auto factor = scaling.find(s);
            coords.push_back(p.stat(s) * (factor == scaling.end() ? 1.0 : factor->second));
        }
    }
    return PointCloud(selected.size(), std::move(labels), std::move(coords));
}

/// New roster with the outgoing player removed and the incoming one appended.
inline TeamRoster apply_trade(const TeamRoster& roster, const TradeSpec& trade) {
    if (!roster.find(trade.outgoing_player))
        throw NotFound("player '" + trade.outgoing_player + "' is not on " +
                       (roster.team_name.empty() ? std::string("the roster") : roster.team_name));
    if (roster.find(trade.incoming.name) && trade.incoming.name != trade.outgoing_player)
        throw ValidationError("player '" + trade.incoming.name + "' is already on the roster");
    TeamRoster out;
    out.team_name = roster.team_name;
    for (const auto& p : roster.players)
        if (p.name != trade.outgoing_player) out.players.push_back(p);
    out.players.push_back(trade.incoming);
    return out;
}

/// Lower-case, alphanumerics kept, everything else collapsed to '-'.
inline std::string slugify(std::string_view name) {
    std::string out;
    for (char c : name) {
        if (std::isalnum(static_cast<unsigned char>(c)))
            out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        else if (!out.empty() && out.back() != '-')
            out += '-';
    }
    while (!out.empty() && out.back() == '-') out.pop_back();
    return out;
}

/// One season of a dataset directory: <root>/<season>/<team-slug>.csv plus
/// an optional <root>/<season>/league.csv.
struct Dataset {
    std::string season;
    std::map<std::string, TeamRoster> teams;  // by slug
    std::optional<League> league;

    const TeamRoster& team(std::string_view slug) const {
        auto it = teams.find(std::string(slug));
        if (it == teams.end()) throw NotFound("unknown team '" + std::string(slug) + "'");
        return it->second;
    }
};

namespace detail {
inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw NotFound("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}
}  // namespace detail

/// Display name for a slug: the league row whose full or last-word slug matches, else the slug.
inline std::string team_display_name(std::string_view slug, const std::optional<League>& league) {
    if (league) {
        for (const auto& row : league->rows) {
            const std::string full = slugify(row.team);
            const auto space = row.team.find_last_of(' ');
            const std::string last = slugify(space == std::string::npos ? row.team : row.team.substr(space + 1));
            if (full == slug || last == slug) return row.team;
        }
    }
    return std::string(slug);
}

/// Loads and validates every roster of a season; any invalid file fails the whole load.
inline Dataset load_dataset(const std::filesystem::path& root, const std::string& season) {
    namespace fs = std::filesystem;
    const fs::path dir = root / season;
    if (!fs::is_directory(dir)) throw NotFound("season directory not found: " + dir.string());
    Dataset data;
    data.season = season;
    if (fs::exists(dir / "league.csv")) {
        try {
            data.league = parse_league_csv(detail::read_file(dir / "league.csv"));
        } catch (const Error& e) {
            throw ValidationError((dir / "league.csv").string() + ": " + e.what());
        }
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".csv" && entry.path().filename() != "league.csv")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
        const std::string slug = file.stem().string();
        try {
            data.teams.emplace(slug, parse_roster_csv(detail::read_file(file), team_display_name(slug, data.league)));
        } catch (const Error& e) {
            throw ValidationError(file.string() + ": " + e.what());
        }
    }
    return data;
}

}  // namespace persistry
