#pragma once

#include <optional>
#include <string>

#include <httplib.h>

#include "persistry/app/service.hpp"

namespace persistry::app {

/// Registers the JSON API on `server`. The service is only read, so handlers
/// may run concurrently.
inline void mount_routes(httplib::Server& server, const Service& service, const std::string& cors_origin = "*") {
    auto send = [](httplib::Response& res, const Response& out) {
        res.status = out.status;
        res.set_content(out.body, "application/json; charset=utf-8");
    };

    server.set_default_headers({{"Access-Control-Allow-Origin", cors_origin},
                                {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                                {"Access-Control-Allow-Headers", "Content-Type"}});
    server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

    server.Get("/api/teams", [&service, send](const httplib::Request&, httplib::Response& res) {
        send(res, Service::respond([&] { return service.teams_json(); }));
    });
    server.Get(R"(/api/teams/([^/]+)/summary)", [&service, send](const httplib::Request& req, httplib::Response& res) {
        send(res, Service::respond([&] { return service.summary_json(req.matches[1]); }));
    });
    server.Get(R"(/api/teams/([^/]+)/players)", [&service, send](const httplib::Request& req, httplib::Response& res) {
        send(res, Service::respond([&] { return service.players_json(req.matches[1]); }));
    });
    server.Get(R"(/api/teams/([^/]+)/barcode)", [&service, send](const httplib::Request& req, httplib::Response& res) {
        send(res, Service::respond([&] {
                 std::optional<int> dim;
                 if (req.has_param("dim")) {
                     const std::string value = req.get_param_value("dim");
                     if (value != "0" && value != "1") throw InvalidArgument("dim must be 0 or 1");
                     dim = value == "0" ? 0 : 1;
                 }
                 return service.barcode_json(req.matches[1], dim);
             }));
    });
    server.Post("/api/trades/evaluate", [&service, send](const httplib::Request& req, httplib::Response& res) {
        send(res, Service::respond([&] {
                 const Json body = Json::parse(req.body);
                 if (!body.is_object()) throw InvalidArgument("request body must be a JSON object");
                 for (const char* key : {"team", "outgoing", "incoming_team", "incoming_player"})
                     if (!body.contains(key) || !body.at(key).is_string())
                         throw InvalidArgument(std::string("missing string field '") + key + "'");
                 return service.trade_json(body.at("team").get<std::string>(), body.at("outgoing").get<std::string>(),
                                           body.at("incoming_team").get<std::string>(),
                                           body.at("incoming_player").get<std::string>());
             }));
    });
    server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
        if (res.body.empty()) res.set_content(dump(Json{{"error", "not found"}}), "application/json; charset=utf-8");
    });
}

/// "host:port" -> (host, port); a bare port binds to 127.0.0.1.
inline std::pair<std::string, int> parse_listen_address(const std::string& address) {
    const auto colon = address.rfind(':');
    const std::string host = colon == std::string::npos ? "127.0.0.1" : address.substr(0, colon);
    const std::string port = colon == std::string::npos ? address : address.substr(colon + 1);
    try {
        std::size_t used = 0;
        const int p = std::stoi(port, &used);
        if (used != port.size() || p < 0 || p > 65535) throw std::out_of_range("port");
        return {host.empty() ? "127.0.0.1" : host, p};
    } catch (const std::exception&) {
        throw InvalidArgument("invalid listen address '" + address + "'");
    }
}

}  // namespace persistry::app
