// Command-line front end: decompose / optimize / simulate / sweep / compare.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "safeccc/errors.hpp"
#include "safeccc/io.hpp"
#include "safeccc/optimizer.hpp"
#include "safeccc/simulation.hpp"
#include "safeccc/spectral.hpp"
#include "safeccc/sweep.hpp"
#include "safeccc/synthetic.hpp"

namespace fs = std::filesystem;
using namespace safeccc;

namespace {

struct GlobalOptions {
    std::string config_path;
    std::string out_dir = ".";
    unsigned workers = 0;
};

RunConfig load_run_config(const GlobalOptions& g) {
    return g.config_path.empty() ? RunConfig{} : load_config(g.config_path);
}

std::ofstream create(const GlobalOptions& g, const std::string& name) {
    fs::create_directories(g.out_dir);
    const fs::path path = fs::path(g.out_dir) / name;
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    std::cout << "wrote " << path.string() << '\n';
    return out;
}

std::size_t resolve_vehicles(std::size_t requested, const TrafficDataset& ds) {
    if (requested == 0) {
        return ds.vehicles();
    }
    if (requested > ds.vehicles()) {
        throw Error(ErrorCategory::kUsage, "--vehicles " + std::to_string(requested) +
                                               " exceeds the " + std::to_string(ds.vehicles()) +
                                               " vehicles in the dataset");
    }
    return requested;
}

void print_metrics(const Metrics& m) {
    std::cout << std::fixed << std::setprecision(4) << "w        = " << m.w / 1000.0
              << " kJ/kg\n"
              << "w_brake  = " << m.w_brake / 1000.0 << " kJ/kg\n"
              << std::setprecision(2) << "h<0      = " << m.h_neg_pct << " %\n"
              << std::setprecision(4) << "h_margin = " << m.h_margin << " m s\n"
              << "crash    = " << (m.crash ? "YES" : "no") << '\n';
    std::cout.unsetf(std::ios::fixed);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Safe, energy-efficient connected cruise control toolkit"};
    app.require_subcommand(1);

    GlobalOptions g;
    app.add_option("-c,--config", g.config_path, "Configuration file (key = value)")
        ->check(CLI::ExistingFile);
    app.add_option("-o,--out", g.out_dir, "Output directory");
    app.add_option("-j,--workers", g.workers, "Worker threads for sweeps (0 = all cores)");

    auto* print_cmd = app.add_subcommand("print-config", "Print every setting with its value");

    std::string dataset_path;
    std::size_t components = 0;
    double energy_fraction = 0.0;
    auto* decompose_cmd = app.add_subcommand("decompose", "Fourier decomposition of a dataset");
    decompose_cmd->add_option("dataset", dataset_path)->required()->check(CLI::ExistingFile);
    decompose_cmd->add_option("-m,--components", components, "Component count (0 = Nyquist)");
    decompose_cmd->add_option("--energy-fraction", energy_fraction,
                              "Keep the leading components holding this power fraction");

    std::string method;
    std::size_t vehicles = 0;
    auto* optimize_cmd = app.add_subcommand("optimize", "Optimize betas on the spectral cost");
    optimize_cmd->add_option("dataset", dataset_path)->required()->check(CLI::ExistingFile);
    optimize_cmd->add_option("--method", method, "grid | nelder_mead");
    optimize_cmd->add_option("-n,--vehicles", vehicles, "Connected vehicles (0 = all)");

    std::string gains_path;
    bool no_filter = false;
    auto* simulate_cmd = app.add_subcommand("simulate", "Closed-loop simulation against a dataset");
    simulate_cmd->add_option("dataset", dataset_path)->required()->check(CLI::ExistingFile);
    simulate_cmd->add_option("--gains", gains_path, "Gains or optimizer report file")
        ->check(CLI::ExistingFile);
    simulate_cmd->add_flag("--no-filter", no_filter, "Disable the safety filter");

    std::string objective = "w";
    auto* sweep_cmd = app.add_subcommand("sweep", "Brute-force lattice sweep");
    sweep_cmd->add_option("dataset", dataset_path)->required()->check(CLI::ExistingFile);
    sweep_cmd->add_option("--objective", objective, "w (simulated energy) | J (spectral cost)");
    sweep_cmd->add_option("-n,--vehicles", vehicles, "Connected vehicles (0 = all)");

    std::vector<std::string> test_paths;
    bool with_optimal = false;
    bool force = false;
    std::string acc_gains_path, ccc_gains_path;
    auto* compare_cmd =
        app.add_subcommand("compare", "Train ACC and CCC on one dataset, test on the others");
    compare_cmd->add_option("train", dataset_path)->required()->check(CLI::ExistingFile);
    compare_cmd->add_option("tests", test_paths)->required()->check(CLI::ExistingFile);
    compare_cmd->add_option("-n,--vehicles", vehicles, "Connected vehicles for CCC (0 = all)");
    compare_cmd->add_flag("--with-optimal", with_optimal,
                          "Also brute-force the w-optimal gains on each test dataset");
    compare_cmd->add_option("--acc-gains", acc_gains_path, "Use these ACC gains instead of training")
        ->check(CLI::ExistingFile);
    compare_cmd->add_option("--ccc-gains", ccc_gains_path, "Use these CCC gains instead of training")
        ->check(CLI::ExistingFile);
    compare_cmd->add_flag("--force", force, "Accept gains files produced with another config");

    std::string synth_path;
    StopAndGoOptions synth;
    auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic stop-and-go dataset");
    synth_cmd->add_option("output", synth_path)->required();
    synth_cmd->add_option("--seed", synth.seed);
    synth_cmd->add_option("-n,--vehicles", synth.vehicles);
    synth_cmd->add_option("--duration", synth.duration);
    synth_cmd->add_option("--dt", synth.sample_dt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(ErrorCategory::kUsage);
    }

    try {
        RunConfig config = load_run_config(g);
        if (!method.empty()) {
            config.optimizer.method = parse_optimizer_method(method);
        }
        if (components != 0) {
            config.optimizer.components = components;
        }
        if (energy_fraction != 0.0) {
            config.optimizer.energy_fraction = energy_fraction;
        }
        const std::string hash = config_hash(config);
        const FixedGains fixed = FixedGains::from(config.gains);

        if (print_cmd->parsed()) {
            std::cout << "# config_hash: " << hash << '\n' << format_config(config);
            return 0;
        }

        if (synth_cmd->parsed()) {
            save_dataset(synth_path, synthetic_stop_and_go(synth));
            std::cout << "wrote " << synth_path << '\n';
            return 0;
        }

        const TrafficDataset ds = load_dataset(dataset_path);

        if (decompose_cmd->parsed()) {
            SpectralDecomposition spec =
                decompose(ds, config.optimizer.components == 0
                                  ? std::nullopt
                                  : std::optional<std::size_t>(config.optimizer.components));
            if (config.optimizer.energy_fraction > 0.0) {
                spec = truncate_by_energy(spec, config.optimizer.energy_fraction);
            }
            auto out = create(g, "spectrum.csv");
            write_spectrum(out, spec, hash);
            std::cout << "v_star = " << spec.v_star << " m/s, components = " << spec.size()
                      << '\n';
            return 0;
        }

        if (optimize_cmd->parsed()) {
            const std::size_t n = resolve_vehicles(vehicles, ds);
            const OptimizationReport report =
                train_gains(ds, n, fixed, config.optimizer, g.workers);
            {
                auto out = create(g, "gains.txt");
                write_optimization_report(out, report, dataset_path, hash);
            }
            {
                auto out = create(g, "grid.csv");
                write_grid(out, report, hash);
            }
            std::cout << "betas = [" << format_list(report.gains.betas)
                      << "], J = " << report.cost << '\n';
            return 0;
        }

        if (simulate_cmd->parsed()) {
            ControllerGains gains = config.gains;
            if (!gains_path.empty()) {
                gains = load_gains(gains_path, config.gains);
            }
            if (gains.vehicles() > ds.vehicles()) {
                throw Error(ErrorCategory::kUsage,
                            "gains use " + std::to_string(gains.vehicles()) +
                                " vehicles but the dataset has " + std::to_string(ds.vehicles()));
            }
            SimConfig sim = config.sim;
            if (no_filter) {
                sim.filter_enabled = false;
            }
            const ScenarioResult result =
                run_scenario(ds, gains, config.safety, config.vehicle, sim);
            {
                auto out = create(g, "trace.csv");
                write_trace(out, result.trace, hash);
            }
            {
                auto out = create(g, "metrics.txt");
                write_metrics(out, result.metrics, gains, sim.filter_enabled, dataset_path, hash);
            }
            print_metrics(result.metrics);
            return 0;
        }

        if (sweep_cmd->parsed()) {
            const std::size_t n = resolve_vehicles(vehicles, ds);
            const SweepResult sweep =
                grid_sweep(ds, fixed, config.optimizer.box, n, config.safety, config.vehicle,
                           config.sim, parse_sweep_objective(objective), g.workers);
            auto out = create(g, "sweep.csv");
            write_sweep(out, sweep, hash);
            std::cout << "best betas = [" << format_list(sweep.best.betas)
                      << "], score = " << sweep.rows.front().score << " ("
                      << sweep.rows.size() << " feasible of " << sweep.lattice_size << ")\n";
            return 0;
        }

        if (compare_cmd->parsed()) {
            const std::size_t n = resolve_vehicles(vehicles, ds);
            std::vector<NamedDataset> tests;
            for (const auto& path : test_paths) {
                tests.push_back({fs::path(path).filename().string(), load_dataset(path)});
            }

            Comparison comparison;
            if (!acc_gains_path.empty() || !ccc_gains_path.empty()) {
                if (acc_gains_path.empty() || ccc_gains_path.empty()) {
                    throw Error(ErrorCategory::kUsage,
                                "--acc-gains and --ccc-gains must be given together");
                }
                std::string acc_hash, ccc_hash;
                comparison.acc = load_gains(acc_gains_path, config.gains, &acc_hash);
                comparison.ccc = load_gains(ccc_gains_path, config.gains, &ccc_hash);
                for (const auto& [file, file_hash] :
                     {std::pair{acc_gains_path, acc_hash}, std::pair{ccc_gains_path, ccc_hash}}) {
                    if (file_hash != hash && !force) {
                        throw HashMismatchError("'" + file + "' was produced with config hash '" +
                                                file_hash + "', current config is '" + hash +
                                                "' (use --force to accept)");
                    }
                }
                for (const auto& test : tests) {
                    if (test.data.vehicles() < comparison.ccc.vehicles()) {
                        throw Error(ErrorCategory::kUsage,
                                    "test dataset '" + test.name + "' has too few vehicles");
                    }
                }
                comparison.rows =
                    evaluate_designs(comparison.acc, comparison.ccc, tests, config.safety,
                                     config.vehicle, config.sim, with_optimal,
                                     config.optimizer.box, g.workers);
            } else {
                comparison = compare_designs(ds, tests, n, fixed, config.optimizer, config.safety,
                                             config.vehicle, config.sim, with_optimal, g.workers);
            }

            auto out = create(g, "compare.csv");
            write_comparison(out, comparison, hash);
            std::cout << "ACC betas = [" << format_list(comparison.acc.betas) << "]\n"
                      << "CCC betas = [" << format_list(comparison.ccc.betas) << "]\n"
                      << std::left << std::setw(24) << "dataset" << std::right << std::setw(12)
                      << "w ACC" << std::setw(12) << "w CCC" << std::setw(12) << "reduction"
                      << '\n';
            for (const auto& row : comparison.rows) {
                std::cout << std::left << std::setw(24) << row.dataset << std::right
                          << std::fixed << std::setprecision(4) << std::setw(12)
                          << row.acc.w / 1000.0 << std::setw(12) << row.ccc.w / 1000.0
                          << std::setprecision(2) << std::setw(11) << row.reduction_pct << "%"
                          << (row.acc.crash || row.ccc.crash ? "  CRASH" : "") << '\n';
            }
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(e.category());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
