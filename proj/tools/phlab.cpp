#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "phlab/certificate.hpp"
#include "phlab/commands.hpp"
#include "phlab/config.hpp"

namespace {

phlab::Config resolve_config(const std::optional<std::string>& config_path) {
    if (config_path) {
        return phlab::load_config(*config_path);
    }
    if (const char* env = std::getenv("PHLAB_CONFIG")) {
        return phlab::load_config(env);
    }
    phlab::Config cfg;
    const auto problems = cfg.validate();
    if (!problems.empty()) {
        throw phlab::ConfigError("default config invalid");
    }
    return cfg;
}

std::vector<double> parse_n_list(const std::string& spec) {
    std::vector<double> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical laboratory for a twisted non-transitive Anosov time-N map"};
    app.require_subcommand(1);

    std::optional<std::string> config_path;
    std::optional<std::string> out_dir;
    std::optional<double> threshold;
    std::optional<double> c_max;
    std::optional<int> n_grid;
    std::optional<std::uint64_t> seed;
    app.add_option("--config", config_path, "Config JSON path (env: PHLAB_CONFIG)");
    app.add_option("--out-dir", out_dir, "Output directory");
    app.add_option("--threshold", threshold, "Margin threshold");
    app.add_option("--c-max", c_max, "Worst-case strong-bundle tilt");
    app.add_option("--n-grid", n_grid, "x-resolution of the margin grid");
    app.add_option("--seed", seed, "Random seed");

    auto* sub_foliations = app.add_subcommand("foliations", "Render the two model foliations");
    auto* sub_certificate =
        app.add_subcommand("certificate", "Find N0 and certify transversality");
    auto* sub_sweep = app.add_subcommand("sweep", "Margin sweep over N");
    std::string n_list_spec;
    sub_sweep->add_option("--n-list", n_list_spec, "Comma-separated N values");
    auto* sub_center = app.add_subcommand("center", "Center arcs and displacement field");
    auto* sub_homology = app.add_subcommand("homology", "Action on first homology");
    std::int64_t k = 1;
    sub_homology->add_option("--k", k, "Twist power");
    auto* sub_da = app.add_subcommand("da-verify", "Verify the modified torus map");
    auto* sub_all = app.add_subcommand("all", "Run every command");
    for (CLI::App* sub : {sub_foliations, sub_certificate, sub_sweep, sub_center,
                          sub_homology, sub_da, sub_all}) {
        sub->fallthrough();  // global flags may follow the subcommand
    }

    CLI11_PARSE(app, argc, argv);

    try {
        phlab::Config cfg = resolve_config(config_path);
        if (out_dir) cfg.out_dir = *out_dir;
        if (threshold) cfg.thresholds.margin = *threshold;
        if (c_max) cfg.c_max = *c_max;
        if (n_grid) cfg.grids.cert_x = *n_grid;
        if (seed) cfg.seed = *seed;
        const auto problems = cfg.validate();
        if (!problems.empty()) {
            std::ostringstream msg;
            msg << "config invalid after flag overrides:";
            for (const auto& p : problems) msg << "\n  - " << p;
            throw phlab::ConfigError(msg.str());
        }

        if (*sub_foliations) return phlab::cmd_foliations(cfg);
        if (*sub_certificate) return phlab::cmd_certificate(cfg);
        if (*sub_sweep) {
            const std::vector<double> ns = n_list_spec.empty()
                                               ? phlab::default_sweep_list()
                                               : parse_n_list(n_list_spec);
            return phlab::cmd_sweep(cfg, ns);
        }
        if (*sub_center) return phlab::cmd_center(cfg);
        if (*sub_homology) return phlab::cmd_homology(cfg, k);
        if (*sub_da) return phlab::cmd_da_verify(cfg);
        if (*sub_all) return phlab::cmd_all(cfg);
    } catch (const phlab::UnreachableThresholdError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const phlab::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
