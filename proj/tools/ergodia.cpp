#include <iostream>

#include <CLI11.hpp>

#include <ergodia/experiments.hpp>

namespace cli = ergodia::cli;

int main(int argc, char** argv)
{
    CLI::App app{"ergodia: ergodic means and finite approximations of measure-preserving maps"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    unsigned threads = 0;
    bool svg = false, exact = false, no_timestamp = false;

    const auto add_common = [&](CLI::App* sub, bool config_required) {
        auto* opt = sub->add_option("--config", config_path, "experiment config (JSON)");
        if (config_required) opt->required();
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--seed", seed, "override the config seed");
        sub->add_option("--threads", threads, "worker threads (default: ERGODIA_THREADS, else 1)");
        sub->add_flag("--exact", exact, "rational arithmetic");
    };
    auto* gamma = app.add_subcommand("gamma", "Gamma-series CSV (and SVG) per start point");
    add_common(gamma, true);
    gamma->add_flag("--svg", svg, "also write an SVG scatter plot");
    gamma->add_flag("--no-timestamp", no_timestamp, "omit the timestamp comment from SVG output");
    auto* stab = app.add_subcommand("stab", "stabilization segments and discrepancies as JSON");
    add_common(stab, true);
    auto* approx = app.add_subcommand("approx", "approximation quality report as JSON");
    add_common(approx, true);
    auto* check = app.add_subcommand("check", "run the invariant suites");
    add_common(check, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : cli::exit_config;
    }

    cli::RunOptions opt;
    opt.out_dir = out_dir;
    opt.threads = threads;
    opt.svg = svg;
    opt.exact = exact;
    opt.timestamp = !no_timestamp;
    auto* sub = app.get_subcommands().front();
    if (sub->count("--seed") > 0) opt.seed = seed;

    try {
        cli::json cfg = cli::json::object();
        if (!config_path.empty()) {
            cfg = cli::load_config(config_path);
            opt.prefix = std::filesystem::path(config_path).stem().string();
        }
        if (cfg.contains("prefix")) opt.prefix = cfg.at("prefix").get<std::string>();

        if (sub == gamma) {
            const auto out = cli::cmd_gamma(cfg, opt);
            for (const auto& f : out.files) std::cout << f.string() << '\n';
        } else if (sub == stab) {
            cli::cmd_stab(cfg, opt);
            std::cout << (opt.out_dir / (opt.prefix + "_stab.json")).string() << '\n';
        } else if (sub == approx) {
            cli::cmd_approx(cfg, opt);
            std::cout << (opt.out_dir / (opt.prefix + "_approx.json")).string() << '\n';
        } else {
            const auto failures = cli::cmd_check(cfg, opt);
            for (const auto& f : failures) std::cerr << cli::failure_line(f) << '\n';
            if (!failures.empty()) return cli::exit_invariant;
            std::cout << "all invariant suites passed\n";
        }
    } catch (const cli::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::exit_io;
    } catch (const cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return cli::exit_config;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return cli::exit_config;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return cli::exit_config;
    } catch (const std::out_of_range& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return cli::exit_config;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::exit_invariant;
    }
    return cli::exit_ok;
}
