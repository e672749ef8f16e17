// persistry: barcodes, team summaries, trade what-ifs and the JSON service
// over a roster dataset directory.
//
// Exit codes: 0 success, 1 internal error, 2 user input error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "persistry/app/http.hpp"
#include "persistry/app/service.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUser = 2;

}  // namespace

int main(int argc, char** argv) {
    using namespace persistry;
    using persistry::app::Service;

    CLI::App cli{"Persistent-homology barcodes and roster analytics"};
    cli.require_subcommand(1);
    cli.fallthrough();

    std::string dataset;
    std::string season;
    std::string stats;
    double noise_fraction = 0.01;
    std::uint64_t seed = TunnelingConfig{}.seed;
    int starts = TunnelingConfig{}.starts;
    int iterations = TunnelingConfig{}.iterations;

    cli.add_option("--dataset", dataset, "Dataset root directory")->envname("PERSISTRY_DATASET");
    cli.add_option("--season", season, "Season subdirectory (default: the only one present)");
    cli.add_option("--stats", stats, "Comma-separated stat columns (default: all 12)");
    cli.add_option("--noise-fraction", noise_fraction, "Dim-1 noise floor as a fraction of the top dim-0 bar")
        ->check(CLI::Range(0.0, 0.5));
    cli.add_option("--seed", seed, "Seed for the tunneling estimator");
    cli.add_option("--starts", starts, "Tunneling start points")->check(CLI::PositiveNumber);
    cli.add_option("--iterations", iterations, "Tunneling ascent steps per start")->check(CLI::PositiveNumber);

    std::string team;
    std::optional<int> dim;
    std::string format = "json";
    auto* barcode = cli.add_subcommand("barcode", "Barcode of a team's point cloud");
    barcode->add_option("--team", team, "Team slug")->required();
    barcode->add_option("--dim", dim, "Homology dimension (0 or 1)")->check(CLI::IsMember({0, 1}));
    barcode->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "svg", "text"}));

    auto* summary = cli.add_subcommand("summary", "Team summary metrics as JSON");
    summary->add_option("--team", team, "Team slug")->required();

    std::string out_player, in_team, in_player;
    auto* trade = cli.add_subcommand("trade", "Evaluate a player-for-player trade");
    trade->add_option("--team", team, "Team making the trade")->required();
    trade->add_option("--out", out_player, "Outgoing player")->required();
    trade->add_option("--in-team", in_team, "Team of the incoming player")->required();
    trade->add_option("--in-player", in_player, "Incoming player")->required();

    cli.add_subcommand("correlate", "Spearman correlation of Corsi rank and standing");

    std::string listen = app::AppConfig{}.listen_address;
    std::string cors_origin = "*";
    auto* serve = cli.add_subcommand("serve", "Start the HTTP JSON service");
    serve->add_option("--listen", listen, "host:port to listen on");
    serve->add_option("--cors-origin", cors_origin, "Allowed browser origin");

    try {
        cli.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return cli.exit(e);
    } catch (const CLI::ParseError& e) {
        cli.exit(e);
        return kExitUser;
    }

    try {
        if (dataset.empty()) throw InvalidArgument("no dataset: pass --dataset or set PERSISTRY_DATASET");
        app::AppConfig config;
        config.dataset_root = dataset;
        config.season = season;
        if (!stats.empty()) config.selected_stats = parse_stat_list(stats);
        config.noise_fraction = noise_fraction;
        config.tunneling = {starts, iterations, seed};
        config.listen_address = listen;
        const Service service(config);

        if (*barcode) {
            service.analysis(team);  // resolve the slug before formatting
            if (format == "json") {
                std::cout << dump(service.barcode_json(team, dim));
            } else if (format == "svg") {
                std::cout << service.barcode_svg(team, dim.value_or(0));
            } else {
                std::cout << service.barcode_text(team, dim.value_or(0));
            }
        } else if (*summary) {
            std::cout << dump(service.summary_json(team));
        } else if (*trade) {
            std::cout << dump(service.trade_json(team, out_player, in_team, in_player));
        } else if (cli.got_subcommand("correlate")) {
            std::cout << dump(service.correlation_json());
        } else if (*serve) {
            const auto [host, port] = app::parse_listen_address(listen);
            service.warm();
            httplib::Server server;
            app::mount_routes(server, service, cors_origin);
            std::cerr << "persistry: serving season " << service.config().season << " on " << host << ":" << port
                      << std::endl;
            if (!server.listen(host, port)) {
                std::cerr << "persistry: cannot listen on " << listen << "\n";
                return kExitUser;
            }
        }
        return kExitOk;
    } catch (const Error& e) {
        std::cerr << "persistry: " << e.what() << "\n";
        return kExitUser;
    } catch (const std::exception& e) {
        std::cerr << "persistry: internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
