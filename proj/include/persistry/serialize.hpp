#pragma once

// JSON documents for barcodes and the analytics reports. Field order is fixed
// (ordered_json) so equal values always produce identical bytes.

#include <string>
#include <vector>

#include <json.hpp>

#include "persistry/analytics.hpp"
#include "persistry/persistence.hpp"
#include "persistry/roster.hpp"

namespace persistry {

using Json = nlohmann::ordered_json;

/// [[birth, death|null], ...] sorted by (birth, death).
inline Json intervals_to_json(std::vector<PersistenceInterval> bars) {
    std::stable_sort(bars.begin(), bars.end(), interval_less);
    Json out = Json::array();
    for (const auto& bar : bars) out.push_back(Json::array({bar.birth, bar.infinite() ? Json(nullptr) : Json(bar.death)}));
    return out;
}

inline Json to_json(const Barcode& barcode) {
    Json j;
    j["dim0"] = intervals_to_json(barcode.dim0);
    j["dim1"] = intervals_to_json(barcode.dim1);
    return j;
}

inline Barcode barcode_from_json(const Json& j, std::size_t cardinality = 0) {
    Barcode b;
    b.cloud_cardinality = cardinality;
    for (int dim = 0; dim <= 1; ++dim) {
        auto& target = dim == 0 ? b.dim0 : b.dim1;
        for (const auto& pair : j.at(dim == 0 ? "dim0" : "dim1"))
            target.push_back({dim, pair.at(0).get<double>(), pair.at(1).is_null() ? kInfinity : pair.at(1).get<double>()});
    }
    return b;
}

inline Json to_json(const TunnelingEstimate& t) {
    Json j;
    j["diameter"] = t.diameter;
    j["center"] = t.center;
    j["method"] = std::string(to_string(t.method));
    j["starts_used"] = t.starts_used;
    j["degenerate_hull"] = t.degenerate_hull;
    return j;
}

inline Json to_json(const TeamSummary& s) {
    Json j;
    j["team"] = s.team;
    j["top_line"] = s.top_line;
    j["mean_bar_length"] = s.mean_bar_length;
    j["h1_count"] = s.h1_count;
    j["h1_total_length"] = s.h1_total_length;
    j["sparsity_profile"] = s.sparsity_profile.values;
    j["tunneling"] = to_json(s.tunneling);
    j["noise_fraction"] = s.noise_fraction;
    return j;
}

inline Json to_json(const TradeReport& r) {
    Json j;
    j["before"] = to_json(r.before);
    j["after"] = to_json(r.after);
    Json d;
    d["top_line"] = r.deltas.top_line;
    d["mean_bar_length"] = r.deltas.mean_bar_length;
    d["h1_count"] = r.deltas.h1_count;
    d["h1_total_length"] = r.deltas.h1_total_length;
    d["sparsity"] = r.deltas.sparsity;
    d["tunneling"] = r.deltas.tunneling;
    j["deltas"] = d;
    j["verdict"] = std::string(to_string(r.verdict));
    return j;
}

inline Json to_json(const CorrelationReport& c) {
    Json j;
    j["rho"] = c.rho;
    j["n"] = c.n;
    Json pairs = Json::array();
    for (const auto& [rank, standing] : c.pairs) pairs.push_back(Json::array({rank, standing}));
    j["pairs"] = pairs;
    return j;
}

inline Json to_json(const PlayerRecord& p) {
    Json j;
    j["name"] = p.name;
    Json stats;
    for (std::size_t s = 0; s < kStatCount; ++s) stats[std::string(kStatNames[s])] = p.stats[s];
    j["stats"] = stats;
    return j;
}

/// The one place documents become text, shared by every output path.
inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace persistry
