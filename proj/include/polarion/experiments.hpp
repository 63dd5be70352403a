#pragma once

#include <optional>
#include <string>

#include "polarion/bounds.hpp"
#include "polarion/ionchain.hpp"
#include "polarion/observables.hpp"

namespace polarion {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnknownExperimentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    std::string id;
    std::string out_dir = ".";
    int cutoff = -1;        // -1: catalog default
    int steps = -1;         // Trotter steps override
    double dt = 0.0;        // 0: derived from the fastest drive frequency
    int pulse_level = -1;   // -1 default, 0 off, 1 on
    double t_max = 0.0;     // 0: catalog default time span
    double t_step = 0.0;    // 0: catalog default sweep spacing
    std::vector<double> t_points;  // grid for the protocol entries
    bool parallel = false;
    bool verify = false;    // integrate again at dt/2 and compare
    bool sensitivity = false;  // rerun headline numbers at cutoff+1
};

/// Key-value config file: one `key = value` per line, '#' comments, unknown
/// keys rejected. Recognized keys: out, cutoff, steps, dt, pulse_level,
/// t_max, t_step, t_points (comma-separated), parallel, verify, sensitivity.
ExperimentConfig parse_config(const std::string& path);

/// Merge file values under explicit command-line overrides.
ExperimentConfig merge_config(ExperimentConfig base, const ExperimentConfig& overrides);

struct ExperimentInfo {
    std::string id;
    std::string figure;
    std::string description;
};

const std::vector<ExperimentInfo>& experiment_catalog();

/// Protocol time accounting at nu1 = 2pi x 1 MHz: one time unit is
/// 1/(2pi) microseconds. A symmetric r-step protocol over m terms runs for
/// m * t of lab time plus 4r global rotations of 7 us each.
struct BudgetReport {
    double simulated_time = 0.0;  // units 1/nu1
    double simulated_time_us = 0.0;
    double protocol_time_us = 0.0;
    long rotations = 0;
    double rotation_time_us = 0.0;
    std::uint64_t term_exponentials = 0;  // 2 m r
    std::uint64_t gate_bound = 0;         // 0 when no parameter record applies
};

BudgetReport emit_budget(double t, int r, int n_terms, const HolsteinParams* params = nullptr,
                         double eps = 0.01);

// ---------------------------------------------------------------------------
// Reusable experiment cores (shared by the CLI runner and the test suites).
// Energies in units of nu1; h = 0.002 nu1 throughout the catalog.
// ---------------------------------------------------------------------------

inline constexpr double kHopping = 0.002;  // h in units of nu1

/// Ideal-Trotter fidelity-loss sweep against the dense-exponential oracle.
struct IdealSweepResult {
    std::vector<double> times;
    std::vector<std::string> labels;             // one per swept value
    std::vector<std::vector<double>> loss;       // [value][time]
    std::vector<double> final_loss;              // loss at the last time
};

IdealSweepResult run_fig1a(int cutoff = 4, int r = 10, double t_max = 2000.0,
                           double t_step = 25.0, bool parallel = false);
IdealSweepResult run_fig1b(int cutoff = 4, int r = 10, double t_max = 2000.0,
                           double t_step = 25.0, bool parallel = false);

/// Pulse-level nearest-neighbor XX benchmark against the exact spin dynamics.
struct XxBenchmarkResult {
    std::vector<double> times;
    std::vector<double> fidelity;
    std::vector<std::vector<double>> sigma_z_ion;    // [ion][time]
    std::vector<std::vector<double>> sigma_z_exact;  // [ion][time]
    std::vector<double> checkpoint_times;            // multiples of tau
    std::vector<double> checkpoint_loss;             // 1 - F there
    std::vector<DriveSpec> drives;
    double max_renorm_drift = 0.0;
    double convergence_error = 0.0;
    int cutoff = 0;
};

XxBenchmarkResult run_xx_benchmark(int n_ions, double tau, int n_checkpoints, int cutoff,
                                   double dt = 0.0, bool verify = false);

/// H1+H3 symmetric r=1 protocol with the mean phonon number of the
/// center-of-mass mode traced through the pulse sequence.
struct PhononProtocolResult {
    std::vector<double> times;
    std::vector<double> phonon_com;
    double pulse_final = 0.0;
    double exact_final = 0.0;
    double relative_error = 0.0;
    double tau = 0.0;
    std::vector<int> mode_map;
    int cutoff = 0;
};

PhononProtocolResult run_phonon_protocol(int cutoff = 6, int com_periods = 16, double dt = 0.0,
                                         bool verify = false);

/// Holstein digital evolution: ideal Trotter loss and pulse-level loss per
/// (r, t) grid point, both referenced to the exact dense evolution.
struct HolsteinPulsePoint {
    int r = 0;
    double t = 0.0;
    double loss_ideal = 0.0;
    double loss_pulse = 0.0;
};

std::vector<HolsteinPulsePoint> run_holstein_pulse(int n_ions, const std::vector<int>& rs,
                                                   const std::vector<double>& ts, int cutoff,
                                                   bool pulse_level = true, double dt = 0.0);

/// Run a catalog experiment end to end, writing CSV outputs and a manifest
/// into cfg.out_dir.
void run_experiment(const ExperimentConfig& cfg);

/// 12-significant-digit float formatting used for all CSV output.
std::string format_number(double v);

}  // namespace polarion
