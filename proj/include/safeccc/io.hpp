#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "safeccc/controller.hpp"
#include "safeccc/dataset.hpp"
#include "safeccc/optimizer.hpp"
#include "safeccc/safety.hpp"
#include "safeccc/simulation.hpp"
#include "safeccc/spectral.hpp"
#include "safeccc/sweep.hpp"
#include "safeccc/vehicle.hpp"

namespace safeccc {

// ---------------------------------------------------------------------------
// Traffic data CSV: header `t,v1,...,vn[,s1,...,sn]`, one row per sample.
// Blank lines and lines starting with '#' are ignored.

TrafficDataset parse_dataset(std::istream& in, const std::string& source = "<stream>");
TrafficDataset load_dataset(const std::filesystem::path& path);
void write_dataset(std::ostream& out, const TrafficDataset& ds);
void save_dataset(const std::filesystem::path& path, const TrafficDataset& ds);

// ---------------------------------------------------------------------------
// Configuration: `key = value` lines with namespaced keys (vehicle.*,
// gains.*, safety.*, sim.*, optimizer.*). '#' starts a comment.

struct RunConfig {
    VehicleParams vehicle;
    ControllerGains gains;
    SafetyParams safety;
    bool check_brake_authority = true;
    SimConfig sim;
    OptimizerSettings optimizer;

    /// Re-checks every module invariant.
    void validate() const;
};

struct KeyValue {
    std::string value;
    std::size_t line = 0;
};
using KeyValueMap = std::map<std::string, KeyValue>;

KeyValueMap parse_key_values(std::istream& in, const std::string& source);
KeyValueMap load_key_values(const std::filesystem::path& path);

/// Apply recognised keys onto `config`. With `strict`, unknown keys are an
/// error; otherwise they are ignored (reports carry extra keys).
void apply_key_values(const KeyValueMap& values, const std::string& source, RunConfig& config,
                      bool strict);

RunConfig parse_config(std::istream& in, const std::string& source = "<stream>");
RunConfig load_config(const std::filesystem::path& path);

/// Canonical text of every setting, defaults included.
std::string format_config(const RunConfig& config);

/// FNV-1a 64 of format_config, as 16 hex digits.
std::string config_hash(const RunConfig& config);

/// Read `gains.*` keys from a gains or optimizer report file, starting from
/// `base`. Returns the file's config_hash ("" if absent) through `hash`.
ControllerGains load_gains(const std::filesystem::path& path, const ControllerGains& base,
                           std::string* hash = nullptr);

std::string format_number(double value);
std::string format_list(const std::vector<double>& values);

// ---------------------------------------------------------------------------
// Reports

void write_spectrum(std::ostream& out, const SpectralDecomposition& spec,
                    const std::string& hash);
void write_optimization_report(std::ostream& out, const OptimizationReport& report,
                               const std::string& dataset, const std::string& hash);
void write_grid(std::ostream& out, const OptimizationReport& report, const std::string& hash);
void write_trace(std::ostream& out, const SimTrace& trace, const std::string& hash);
void write_metrics(std::ostream& out, const Metrics& metrics, const ControllerGains& gains,
                   bool filter_enabled, const std::string& dataset, const std::string& hash);
void write_sweep(std::ostream& out, const SweepResult& sweep, const std::string& hash);
void write_comparison(std::ostream& out, const Comparison& comparison, const std::string& hash);

} // namespace safeccc
