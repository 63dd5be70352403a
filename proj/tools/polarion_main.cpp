#include <CLI11.hpp>
#include <iostream>

#include "polarion/experiments.hpp"

namespace {

int run_command(const std::string& id, const std::string& config_path,
                const polarion::ExperimentConfig& overrides) {
    polarion::ExperimentConfig cfg;
    if (!config_path.empty()) cfg = polarion::parse_config(config_path);
    cfg = polarion::merge_config(cfg, overrides);
    cfg.id = id;
    polarion::run_experiment(cfg);
    std::cout << "wrote " << cfg.out_dir << "/" << id << ".csv and manifest.txt\n";
    return 0;
}

int bounds_command(const polarion::HolsteinParams& p, double t, double eps, int k) {
    const polarion::BoundReport report = polarion::bound_report(p, t, eps, k);
    std::cout << "norm bound (reported) = " << polarion::format_number(report.norm.reported)
              << "\n"
              << "norm bound (verified) = " << polarion::format_number(report.norm.verified)
              << "\n"
              << "gate count bound      = " << report.gate_count << "\n";
    return 0;
}

int catalog_command() {
    for (const auto& entry : polarion::experiment_catalog())
        std::cout << entry.id << "  [" << entry.figure << "]\n    " << entry.description
                  << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Digital quantum simulation of the Holstein model on a trapped-ion chain"};
    app.set_help_flag("--help", "Print help");
    app.require_subcommand(1);

    std::string id, config_path, out_dir;
    polarion::ExperimentConfig overrides;
    std::string pulse_level;

    CLI::App* run = app.add_subcommand("run", "Run a catalog experiment");
    run->set_help_flag("--help", "Print help");
    run->add_option("experiment-id", id, "Catalog experiment id (see `catalog`)")->required();
    run->add_option("--config", config_path, "Key-value config file");
    run->add_option("--out", overrides.out_dir, "Output directory")->default_val(".");
    run->add_option("--cutoff", overrides.cutoff, "Boson occupation cutoff per mode");
    run->add_option("--steps", overrides.steps, "Trotter steps r")
        ->check(CLI::NonNegativeNumber);
    run->add_option("--dt", overrides.dt, "Integrator step override")
        ->check(CLI::PositiveNumber);
    run->add_option("--pulse-level", pulse_level, "on|off")
        ->check(CLI::IsMember({"on", "off"}));
    run->add_flag("--parallel", overrides.parallel, "Run sweep entries concurrently");
    run->add_flag("--verify", overrides.verify, "Re-integrate at dt/2 and compare");
    run->add_flag("--sensitivity", overrides.sensitivity, "Re-run headline numbers at cutoff+1");

    polarion::HolsteinParams params;
    double t = 1.0, eps = 0.01;
    int k = 1;
    CLI::App* bounds = app.add_subcommand("bounds", "Norm and gate-count bounds");
    bounds->set_help_flag("--help", "Print help");
    bounds->add_option("--N", params.n_sites, "Number of sites")->required();
    bounds->add_option("--M", params.cutoff, "Boson occupation cutoff")->required();
    bounds->add_option("--h", params.h, "Hopping")->required();
    bounds->add_option("--g", params.g, "Electron-phonon coupling")->required();
    bounds->add_option("--omega0", params.omega0, "Phonon energy")->required();
    bounds->add_option("--t", t, "Simulated time")->required();
    bounds->add_option("--eps", eps, "Error budget in (0,1)")->required();
    bounds->add_option("--k", k, "Fractal depth");

    CLI::App* catalog = app.add_subcommand("catalog", "List experiments and figure mapping");
    catalog->set_help_flag("--help", "Print help");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) {
            if (!pulse_level.empty()) overrides.pulse_level = pulse_level == "on" ? 1 : 0;
            return run_command(id, config_path, overrides);
        }
        if (bounds->parsed()) return bounds_command(params, t, eps, k);
        if (catalog->parsed()) return catalog_command();
    } catch (const polarion::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const polarion::UnknownExperimentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const polarion::ConvergenceError& e) {
        std::cerr << "convergence failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
