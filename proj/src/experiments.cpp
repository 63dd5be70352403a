#include "polarion/experiments.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

namespace polarion {

namespace fs = std::filesystem;

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    std::string s(buf);
    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
        s.find("inf") == std::string::npos && s.find("nan") == std::string::npos)
        s += ".0";
    return s;
}

// ---------------------------------------------------------------------------
// Config handling
// ---------------------------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "on" || value == "true" || value == "1") return true;
    if (value == "off" || value == "false" || value == "0") return false;
    throw ConfigError("config key '" + key + "': expected on/off, got '" + value + "'");
}

int parse_int(const std::string& key, const std::string& value, int min_value) {
    std::size_t pos = 0;
    int v = 0;
    try {
        v = std::stoi(value, &pos);
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': not an integer: '" + value + "'");
    }
    if (pos != value.size())
        throw ConfigError("config key '" + key + "': not an integer: '" + value + "'");
    if (v < min_value)
        throw ConfigError("config key '" + key + "': value " + value + " below minimum " +
                          std::to_string(min_value));
    return v;
}

double parse_double(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': not a number: '" + value + "'");
    }
    if (pos != value.size())
        throw ConfigError("config key '" + key + "': not a number: '" + value + "'");
    if (!std::isfinite(v)) throw ConfigError("config key '" + key + "': value must be finite");
    return v;
}

}  // namespace

ExperimentConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file: " + path);
    ExperimentConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "out") {
            cfg.out_dir = value;
        } else if (key == "cutoff") {
            cfg.cutoff = parse_int(key, value, 1);
        } else if (key == "steps") {
            cfg.steps = parse_int(key, value, 0);
        } else if (key == "dt") {
            cfg.dt = parse_double(key, value);
            if (cfg.dt <= 0.0) throw ConfigError("config key 'dt': must be > 0");
        } else if (key == "pulse_level") {
            cfg.pulse_level = parse_bool(key, value) ? 1 : 0;
        } else if (key == "t_max") {
            cfg.t_max = parse_double(key, value);
            if (cfg.t_max <= 0.0) throw ConfigError("config key 't_max': must be > 0");
        } else if (key == "t_step") {
            cfg.t_step = parse_double(key, value);
            if (cfg.t_step <= 0.0) throw ConfigError("config key 't_step': must be > 0");
        } else if (key == "t_points") {
            std::stringstream ss(value);
            std::string item;
            while (std::getline(ss, item, ',')) {
                const double v = parse_double(key, trim(item));
                if (v <= 0.0) throw ConfigError("config key 't_points': values must be > 0");
                cfg.t_points.push_back(v);
            }
            if (cfg.t_points.empty())
                throw ConfigError("config key 't_points': expected a comma-separated list");
        } else if (key == "parallel") {
            cfg.parallel = parse_bool(key, value);
        } else if (key == "verify") {
            cfg.verify = parse_bool(key, value);
        } else if (key == "sensitivity") {
            cfg.sensitivity = parse_bool(key, value);
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
    return cfg;
}

ExperimentConfig merge_config(ExperimentConfig base, const ExperimentConfig& overrides) {
    if (!overrides.id.empty()) base.id = overrides.id;
    if (overrides.out_dir != ".") base.out_dir = overrides.out_dir;
    if (overrides.cutoff >= 0) base.cutoff = overrides.cutoff;
    if (overrides.steps >= 0) base.steps = overrides.steps;
    if (overrides.dt > 0.0) base.dt = overrides.dt;
    if (overrides.pulse_level >= 0) base.pulse_level = overrides.pulse_level;
    if (overrides.t_max > 0.0) base.t_max = overrides.t_max;
    if (overrides.t_step > 0.0) base.t_step = overrides.t_step;
    if (!overrides.t_points.empty()) base.t_points = overrides.t_points;
    base.parallel = base.parallel || overrides.parallel;
    base.verify = base.verify || overrides.verify;
    base.sensitivity = base.sensitivity || overrides.sensitivity;
    return base;
}

const std::vector<ExperimentInfo>& experiment_catalog() {
    static const std::vector<ExperimentInfo> catalog = {
        {"fig1a",
         "Fig. 1(a)",
         "Ideal symmetric Trotter (r=10): fidelity loss vs time for g in {0.1h, 0.2h, 0.3h}, "
         "two sites, omega0 = h/4. Runs in seconds."},
        {"fig1b",
         "Fig. 1(b)",
         "Ideal symmetric Trotter (r=10): fidelity loss vs time for N in {2, 3}, g = 0.3h, "
         "omega0 = 0.5h. Runs in seconds."},
        {"fig2",
         "Fig. 2",
         "Pulse-level NN XX dynamics for 3+1 ions: fidelity and sigma_z traces against the "
         "exact spin dynamics, gate time 333/nu1. A few minutes at the default cutoff."},
        {"fig3",
         "Fig. 3",
         "3+1 ion Holstein protocol: ideal-Trotter and pulse-level fidelity loss for r in "
         "{2, 3} at t in {1000, 2000}/nu1. The slowest entry (tens of minutes)."},
        {"sfig4",
         "Suppl. Fig. 4",
         "Pulse-level NN XX dynamics for 2+1 ions, gate time 500/nu1: fidelity loss at the "
         "gate closure times. Under a minute."},
        {"sfig5",
         "Suppl. Fig. 5",
         "2+1 ion Holstein protocol: ideal-Trotter and pulse-level fidelity loss for r in "
         "{1, 2} at t in {1000, 2000}/nu1. Several minutes."},
        {"sfig6",
         "Suppl. Fig. 6",
         "H1+H3 symmetric r=1 pulse protocol for 2+1 ions: mean phonon number of the "
         "center-of-mass mode through the sequence, endpoint against exact evolution. "
         "Under a minute."},
    };
    return catalog;
}

BudgetReport emit_budget(double t, int r, int n_terms, const HolsteinParams* params,
                         double eps) {
    // nu1 = 2pi x 1 MHz: one simulated time unit is 1/(2pi) microseconds.
    constexpr double kUnitUs = 1.0 / (2.0 * M_PI);
    constexpr double kRotationUs = 7.0;
    BudgetReport b;
    b.simulated_time = t;
    b.simulated_time_us = t * kUnitUs;
    if (r > 0) {
        b.rotations = 4L * r;
        b.rotation_time_us = b.rotations * kRotationUs;
        b.protocol_time_us = n_terms * t * kUnitUs + b.rotation_time_us;
        b.term_exponentials = static_cast<std::uint64_t>(2 * n_terms) * r;
    }
    if (params && t > 0.0) b.gate_bound = gate_count_bound(*params, t, eps);
    return b;
}

// ---------------------------------------------------------------------------
// Experiment cores
// ---------------------------------------------------------------------------

namespace {

std::vector<double> time_grid(double t_max, double t_step) {
    std::vector<double> ts;
    for (double t = 0.0; t <= t_max + 1e-9; t += t_step) ts.push_back(t);
    return ts;
}

std::vector<double> ideal_loss_curve(const HolsteinParams& p, int r,
                                     const std::vector<double>& ts) {
    const CompositeBasis basis = holstein_basis(p);
    const auto parts = decompose(p, basis);
    const TrotterPropagator trotter({parts[0], parts[1], parts[2]});
    const HermitianPropagator exact(parts[0] + parts[1] + parts[2]);
    const StateVector psi0 = initial_state(p, basis);
    std::vector<double> loss;
    loss.reserve(ts.size());
    for (double t : ts) {
        const ComplexVector psi_e = exact.apply(psi0.amps, t);
        const StateVector psi_s = trotter.evolve(psi0, t, r, true);
        loss.push_back(1.0 - std::norm(psi_e.dot(psi_s.amps)));
    }
    return loss;
}

IdealSweepResult ideal_sweep(const std::vector<HolsteinParams>& entries,
                             const std::vector<std::string>& labels, int r,
                             const std::vector<double>& ts, bool parallel) {
    IdealSweepResult result;
    result.times = ts;
    result.labels = labels;
    result.loss.resize(entries.size());
    if (parallel && entries.size() > 1) {
        std::vector<std::future<std::vector<double>>> futs;
        futs.reserve(entries.size());
        for (const auto& p : entries)
            futs.push_back(std::async(std::launch::async,
                                      [&, p]() { return ideal_loss_curve(p, r, ts); }));
        for (std::size_t k = 0; k < futs.size(); ++k) result.loss[k] = futs[k].get();
    } else {
        for (std::size_t k = 0; k < entries.size(); ++k)
            result.loss[k] = ideal_loss_curve(entries[k], r, ts);
    }
    for (const auto& curve : result.loss) result.final_loss.push_back(curve.back());
    return result;
}

}  // namespace

IdealSweepResult run_fig1a(int cutoff, int r, double t_max, double t_step, bool parallel) {
    const double h = kHopping;
    std::vector<HolsteinParams> entries;
    std::vector<std::string> labels;
    for (double gf : {0.1, 0.2, 0.3}) {
        entries.push_back({h, gf * h, h / 4.0, 2, cutoff});
        std::ostringstream os;
        os << "g=" << gf << "h";
        labels.push_back(os.str());
    }
    return ideal_sweep(entries, labels, r, time_grid(t_max, t_step), parallel);
}

IdealSweepResult run_fig1b(int cutoff, int r, double t_max, double t_step, bool parallel) {
    const double h = kHopping;
    std::vector<HolsteinParams> entries;
    std::vector<std::string> labels;
    for (int n : {2, 3}) {
        entries.push_back({h, 0.3 * h, 0.5 * h, n, cutoff});
        labels.push_back("N=" + std::to_string(n));
    }
    return ideal_sweep(entries, labels, r, time_grid(t_max, t_step), parallel);
}

XxBenchmarkResult run_xx_benchmark(int n_ions, double tau, int n_checkpoints, int cutoff,
                                   double dt, bool verify) {
    const double h = kHopping;
    const double omega0 = h / 4.0;
    const double target_j = h / 2.0;
    const int n_sites = n_ions - 1;

    const IonChainModel chain = make_ion_chain(n_ions, omega0);
    XxBenchmarkResult result;
    result.cutoff = cutoff;
    for (int pair = 0; pair + 1 < n_sites; ++pair)
        result.drives.push_back(calibrate_rabi(chain, target_j, pair, pair, tau));

    const CompositeBasis basis = ion_basis(chain, cutoff);
    const TimeDependentHamiltonian hamiltonian = drive_terms(chain, result.drives, basis);

    // Exact reference: NN XX couplings on the first N ions, phonons untouched.
    const CompositeBasis spin_basis(n_ions, 0, 1);
    ComplexMatrix h_nn = ComplexMatrix::Zero(spin_basis.dimension(), spin_basis.dimension());
    for (int i = 0; i + 1 < n_sites; ++i)
        h_nn += target_j * embed_spin(pauli(Pauli::X), i, spin_basis) *
                embed_spin(pauli(Pauli::X), i + 1, spin_basis);
    const HermitianPropagator exact_spin(h_nn);

    std::vector<int> down;
    const int up_site = electron_site(n_sites) - 1;
    for (int i = 0; i < n_sites; ++i)
        if (i != up_site) down.push_back(i);
    StateVector psi = basis_state(basis, down);
    const StateVector spin0 = basis_state(spin_basis, down);

    std::vector<SparseMatrix> sz_ion, sz_spin;
    for (int i = 0; i < n_sites; ++i) {
        sz_ion.push_back(embed_spin_sparse(pauli(Pauli::Z), i, basis));
        sz_spin.push_back(embed_spin_sparse(pauli(Pauli::Z), i, spin_basis));
    }

    const std::int64_t spin_dim = spin_basis.dimension();
    auto record = [&](double t, const ComplexVector& state) {
        const ComplexVector psi_e = exact_spin.apply(spin0.amps, t);
        result.times.push_back(t);
        result.fidelity.push_back(std::norm(psi_e.dot(state.head(spin_dim))));
        const StateVector sv(state, basis);
        const StateVector se(psi_e, spin_basis);
        for (int i = 0; i < n_sites; ++i) {
            result.sigma_z_ion[i].push_back(expectation(sz_ion[i], sv).real());
            result.sigma_z_exact[i].push_back(expectation(sz_spin[i], se).real());
        }
    };

    result.sigma_z_ion.resize(n_sites);
    result.sigma_z_exact.resize(n_sites);

    IntegrationOptions opt;
    opt.dt = dt;
    opt.sample_interval = 1.0;
    opt.verify_convergence = verify;

    double clock = 0.0;
    record(0.0, psi.amps);
    const double margin = 0.06 * n_checkpoints * tau;
    for (int k = 0; k < n_checkpoints + 1; ++k) {
        const double duration = k < n_checkpoints ? tau : margin;
        if (duration <= 0.0) break;
        IntegrationResult ir = integrate_tdse(hamiltonian, psi, clock, duration, opt);
        for (std::size_t s = 0; s < ir.sample_times.size(); ++s)
            if (ir.sample_times[s] > clock) record(ir.sample_times[s], ir.samples[s]);
        clock += duration;
        psi = std::move(ir.final_state);
        result.max_renorm_drift = std::max(result.max_renorm_drift, ir.max_renorm_drift);
        result.convergence_error = std::max(result.convergence_error, ir.convergence_error);
        if (k < n_checkpoints) {
            const ComplexVector psi_e = exact_spin.apply(spin0.amps, clock);
            result.checkpoint_times.push_back(clock);
            result.checkpoint_loss.push_back(1.0 - std::norm(psi_e.dot(psi.amps.head(spin_dim))));
        }
    }
    return result;
}

PhononProtocolResult run_phonon_protocol(int cutoff, int com_periods, double dt, bool verify) {
    const double h = kHopping;
    const double omega0 = h / 4.0;
    const double g = h / 10.0;
    const double target_j = h / 2.0;

    const IonChainModel chain = make_ion_chain(3, omega0);
    const CompositeBasis basis = ion_basis(chain, cutoff);

    PhononProtocolResult result;
    result.cutoff = cutoff;
    result.mode_map = default_mode_map(chain);
    // Trotter step commensurate with the COM period so both bichromatic
    // loops close at the segment boundary.
    result.tau = com_periods * 2.0 * M_PI / chain.frame_frequency(0);
    const double tau = result.tau;
    const double t_sim = 2.0 * tau;

    const DriveSpec xx = calibrate_rabi(chain, target_j, 0, 0, tau);
    TimeDependentHamiltonian h_xx = drive_terms(chain, {xx}, basis);
    TimeDependentHamiltonian h_ep =
        drive_terms(chain, ep_sideband_drives(chain, g, result.mode_map), basis);
    // interaction-picture phonon energy on the site modes, present in every
    // segment (it commutes with the global rotations)
    const TimeTerm residual{residual_phonon_energy(chain, result.mode_map, basis),
                            TimeCoeff::constant(1.0)};
    h_xx.terms.push_back(residual);
    h_ep.terms.push_back(residual);
    const SparseMatrix rot_fwd = global_rotation_sparse(chain, -1, basis);
    const SparseMatrix rot_back = global_rotation_sparse(chain, 1, basis);

    std::vector<PulseSegment> segments(4);
    segments[0] = {h_xx, tau, {}, {}, "H1"};
    segments[1] = {h_ep, tau, rot_fwd, rot_back, "H3"};
    segments[2] = {h_ep, tau, rot_fwd, rot_back, "H3"};
    segments[3] = {h_xx, tau, {}, {}, "H1"};

    StateVector psi0 = basis_state(basis, {1});  // spins (up, down, up)

    IntegrationOptions opt;
    opt.dt = dt;
    opt.sample_interval = tau / 400.0;
    opt.verify_convergence = verify;
    ProtocolResult pr = run_pulse_protocol(segments, psi0, opt);

    Trajectory traj{pr.sample_times, std::move(pr.samples), basis};
    result.times = traj.times;
    result.phonon_com = phonon_number(traj, 0);
    result.pulse_final = real_expectation(
        embed_mode_sparse(boson_number(cutoff), 0, basis), pr.final_state);

    // Exact spin-boson reference for H = H1 + H3.
    HolsteinParams params{h, g, omega0, 2, cutoff};
    const CompositeBasis sb = holstein_basis(params);
    const auto parts = decompose(params, sb);
    const StateVector psi_e =
        exact_evolve(parts[0] + parts[2], initial_state(params, sb), t_sim);
    result.exact_final =
        real_expectation(embed_mode_sparse(boson_number(cutoff), 0, sb), psi_e);
    result.relative_error =
        std::abs(result.pulse_final - result.exact_final) / result.exact_final;
    return result;
}

std::vector<HolsteinPulsePoint> run_holstein_pulse(int n_ions, const std::vector<int>& rs,
                                                   const std::vector<double>& ts, int cutoff,
                                                   bool pulse_level, double dt) {
    const double h = kHopping;
    const double omega0 = h / 4.0;
    const double g = h / 10.0;
    const double target_j = h / 2.0;
    const int n_sites = n_ions - 1;

    HolsteinParams params{h, g, omega0, n_sites, cutoff};
    const CompositeBasis sb = holstein_basis(params);
    const auto parts = decompose(params, sb);
    const TrotterPropagator trotter({parts[0], parts[1], parts[2]});
    const HermitianPropagator exact(parts[0] + parts[1] + parts[2]);
    const StateVector psi0_sb = initial_state(params, sb);

    const IonChainModel chain = make_ion_chain(n_ions, omega0);
    const CompositeBasis basis = ion_basis(chain, cutoff);
    const std::vector<int> mode_map = default_mode_map(chain);
    const SparseMatrix rot_fwd = global_rotation_sparse(chain, -1, basis);
    const SparseMatrix rot_back = global_rotation_sparse(chain, 1, basis);
    const TimeTerm residual{residual_phonon_energy(chain, mode_map, basis),
                            TimeCoeff::constant(1.0)};
    TimeDependentHamiltonian h_ep =
        drive_terms(chain, ep_sideband_drives(chain, g, mode_map), basis);
    h_ep.terms.push_back(residual);

    std::vector<int> down;
    const int up_site = electron_site(n_sites) - 1;
    for (int i = 0; i < n_sites; ++i)
        if (i != up_site) down.push_back(i);
    const StateVector psi0_ion = basis_state(basis, down);

    std::vector<HolsteinPulsePoint> points;
    for (int r : rs) {
        for (double t : ts) {
            HolsteinPulsePoint point;
            point.r = r;
            point.t = t;
            const ComplexVector psi_e = exact.apply(psi0_sb.amps, t);
            const StateVector psi_s = trotter.evolve(psi0_sb, t, r, true);
            point.loss_ideal = 1.0 - std::norm(psi_e.dot(psi_s.amps));

            if (pulse_level) {
                const double tau = t / (2.0 * r);
                std::vector<DriveSpec> xx_drives, yy_drives;
                for (int pair = 0; pair + 1 < n_sites; ++pair)
                    xx_drives.push_back(calibrate_rabi(chain, target_j, pair, pair, tau));
                yy_drives = xx_drives;
                for (auto& d : yy_drives) d.axis = SpinAxis::Y;

                TimeDependentHamiltonian h_xx = drive_terms(chain, xx_drives, basis);
                TimeDependentHamiltonian h_yy = drive_terms(chain, yy_drives, basis);
                h_xx.terms.push_back(residual);
                h_yy.terms.push_back(residual);

                std::vector<PulseSegment> segments;
                for (int step = 0; step < r; ++step) {
                    segments.push_back({h_xx, tau, {}, {}, "H1"});
                    segments.push_back({h_yy, tau, {}, {}, "H2"});
                    segments.push_back({h_ep, tau, rot_fwd, rot_back, "H3"});
                    segments.push_back({h_ep, tau, rot_fwd, rot_back, "H3"});
                    segments.push_back({h_yy, tau, {}, {}, "H2"});
                    segments.push_back({h_xx, tau, {}, {}, "H1"});
                }
                IntegrationOptions opt;
                opt.dt = dt;
                ProtocolResult pr = run_pulse_protocol(segments, psi0_ion, opt);
                const StateVector embedded =
                    embed_in_ion_space(StateVector(psi_e, sb), basis, mode_map);
                point.loss_pulse = 1.0 - fidelity(embedded, pr.final_state);
            }
            points.push_back(point);
        }
    }
    return points;
}

// ---------------------------------------------------------------------------
// CSV + manifest output
// ---------------------------------------------------------------------------

namespace {

struct Manifest {
    std::ostringstream body;

    void kv(const std::string& key, const std::string& value) {
        body << key << " = " << value << "\n";
    }
    void kv(const std::string& key, double value) { kv(key, format_number(value)); }
    void kv(const std::string& key, int value) { kv(key, std::to_string(value)); }
    void section(const std::string& name) { body << "\n[" << name << "]\n"; }

    void budget(const BudgetReport& b) {
        section("budget");
        kv("simulated_time", b.simulated_time);
        kv("simulated_time_us", b.simulated_time_us);
        kv("protocol_time_us", b.protocol_time_us);
        kv("rotations", static_cast<int>(b.rotations));
        kv("rotation_time_us", b.rotation_time_us);
        kv("term_exponentials", std::to_string(b.term_exponentials));
        if (b.gate_bound > 0) kv("gate_count_bound_eps_0.01", std::to_string(b.gate_bound));
    }

    void drives(const std::vector<DriveSpec>& specs, const std::string& name = "drives") {
        section(name);
        for (std::size_t k = 0; k < specs.size(); ++k) {
            std::ostringstream os;
            os << "ions";
            for (int ion : specs[k].ions) os << " " << ion + 1;
            os << ", rabi " << format_number(specs[k].rabi) << ", detuning "
               << format_number(specs[k].detuning) << ", axis "
               << (specs[k].axis == SpinAxis::X ? "X" : "Y") << ", motional_phase "
               << format_number(specs[k].motional_phase) << ", target_mode "
               << specs[k].target_mode + 1;
            kv("drive_" + std::to_string(k + 1), os.str());
        }
    }

    void write(const fs::path& path) const {
        std::ofstream out(path);
        out << body.str();
    }
};

void write_csv(const fs::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns,
               const std::vector<std::string>& metadata = {}) {
    std::ofstream out(path);
    for (const auto& line : metadata) out << "# " << line << "\n";
    for (std::size_t c = 0; c < header.size(); ++c)
        out << header[c] << (c + 1 < header.size() ? "," : "\n");
    if (columns.empty()) return;
    const std::size_t rows = columns.front().size();
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < columns.size(); ++c)
            out << format_number(columns[c][r]) << (c + 1 < columns.size() ? "," : "\n");
}

std::string sanitize(const std::string& label) {
    std::string out = label;
    for (char& c : out)
        if (c == '=' || c == ' ' || c == '.') c = '_';
    return out;
}

void run_ideal_entry(const ExperimentConfig& cfg, bool fig1a) {
    const int cutoff = cfg.cutoff > 0 ? cfg.cutoff : 4;
    const int r = cfg.steps > 0 ? cfg.steps : 10;
    const double t_max = cfg.t_max > 0.0 ? cfg.t_max : 2000.0;
    const double t_step = cfg.t_step > 0.0 ? cfg.t_step : 25.0;
    IdealSweepResult res = fig1a ? run_fig1a(cutoff, r, t_max, t_step, cfg.parallel)
                                 : run_fig1b(cutoff, r, t_max, t_step, cfg.parallel);

    std::vector<std::string> header = {"time"};
    std::vector<std::vector<double>> cols = {res.times};
    for (std::size_t k = 0; k < res.labels.size(); ++k) {
        header.push_back("loss_" + sanitize(res.labels[k]));
        cols.push_back(res.loss[k]);
    }
    const std::string id = fig1a ? "fig1a" : "fig1b";
    write_csv(fs::path(cfg.out_dir) / (id + ".csv"), header, cols,
              {"ideal symmetric Trotter fidelity loss, r=" + std::to_string(r) +
               ", cutoff=" + std::to_string(cutoff)});

    Manifest mf;
    mf.kv("experiment", id);
    mf.kv("cutoff", cutoff);
    mf.kv("steps", r);
    mf.kv("hopping", kHopping);
    mf.kv("t_max", t_max);
    for (std::size_t k = 0; k < res.labels.size(); ++k)
        mf.kv("final_loss_" + sanitize(res.labels[k]), res.final_loss[k]);
    if (cfg.sensitivity) {
        IdealSweepResult res2 = fig1a ? run_fig1a(cutoff + 1, r, t_max, t_max, cfg.parallel)
                                      : run_fig1b(cutoff + 1, r, t_max, t_max, cfg.parallel);
        mf.section("cutoff_sensitivity");
        for (std::size_t k = 0; k < res.labels.size(); ++k) {
            const double shift =
                std::abs(res2.final_loss[k] - res.final_loss[k]) / res.final_loss[k];
            mf.kv("final_loss_shift_" + sanitize(res.labels[k]), shift);
        }
    }
    HolsteinParams p{kHopping, 0.3 * kHopping, kHopping / 4.0, fig1a ? 2 : 3, cutoff};
    mf.budget(emit_budget(t_max, r, 3, &p));
    mf.write(fs::path(cfg.out_dir) / "manifest.txt");
}

void run_xx_entry(const ExperimentConfig& cfg, bool fig2) {
    const int cutoff = cfg.cutoff > 0 ? cfg.cutoff : (fig2 ? 3 : 6);
    const int n_ions = fig2 ? 4 : 3;
    const double tau = fig2 ? 333.0 : 500.0;
    int checkpoints = fig2 ? 3 : 2;
    if (cfg.t_max > 0.0)
        checkpoints = std::max(1, static_cast<int>(std::llround(cfg.t_max / tau)));
    XxBenchmarkResult res =
        run_xx_benchmark(n_ions, tau, checkpoints, cutoff, cfg.dt, cfg.verify);

    std::vector<std::string> header = {"time", "fidelity"};
    std::vector<std::vector<double>> cols = {res.times, res.fidelity};
    for (std::size_t i = 0; i < res.sigma_z_exact.size(); ++i) {
        header.push_back("sigma_z_exact_" + std::to_string(i + 1));
        cols.push_back(res.sigma_z_exact[i]);
        header.push_back("sigma_z_ion_" + std::to_string(i + 1));
        cols.push_back(res.sigma_z_ion[i]);
    }
    const std::string id = fig2 ? "fig2" : "sfig4";
    write_csv(fs::path(cfg.out_dir) / (id + ".csv"), header, cols,
              {"pulse-level NN XX benchmark, tau=" + format_number(tau) +
               ", cutoff=" + std::to_string(cutoff)});

    Manifest mf;
    mf.kv("experiment", id);
    mf.kv("n_ions", n_ions);
    mf.kv("cutoff", cutoff);
    mf.kv("tau", tau);
    mf.kv("hopping", kHopping);
    mf.kv("target_coupling", kHopping / 2.0);
    mf.kv("max_renorm_drift", res.max_renorm_drift);
    if (cfg.verify) mf.kv("convergence_error", res.convergence_error);
    for (std::size_t k = 0; k < res.checkpoint_times.size(); ++k)
        mf.kv("loss_at_" + format_number(res.checkpoint_times[k]), res.checkpoint_loss[k]);
    if (cfg.sensitivity) {
        XxBenchmarkResult res2 =
            run_xx_benchmark(n_ions, tau, checkpoints, cutoff + 1, cfg.dt, false);
        mf.section("cutoff_sensitivity");
        for (std::size_t k = 0; k < res.checkpoint_times.size(); ++k) {
            const double shift = std::abs(res2.checkpoint_loss[k] - res.checkpoint_loss[k]) /
                                 res.checkpoint_loss[k];
            mf.kv("loss_shift_at_" + format_number(res.checkpoint_times[k]), shift);
        }
    }
    mf.drives(res.drives);
    mf.budget(emit_budget(checkpoints * tau, 1, 1));
    mf.write(fs::path(cfg.out_dir) / "manifest.txt");
}

void run_holstein_entry(const ExperimentConfig& cfg, bool fig3) {
    const int cutoff = cfg.cutoff > 0 ? cfg.cutoff : (fig3 ? 3 : 6);
    const int n_ions = fig3 ? 4 : 3;
    std::vector<int> rs = fig3 ? std::vector<int>{2, 3} : std::vector<int>{1, 2};
    if (cfg.steps > 0) rs = {cfg.steps};
    const std::vector<double> ts =
        cfg.t_points.empty() ? std::vector<double>{1000.0, 2000.0} : cfg.t_points;
    const bool pulse = cfg.pulse_level != 0;
    const auto points = run_holstein_pulse(n_ions, rs, ts, cutoff, pulse, cfg.dt);

    std::vector<std::vector<double>> cols(4);
    for (const auto& pt : points) {
        cols[0].push_back(pt.t);
        cols[1].push_back(static_cast<double>(pt.r));
        cols[2].push_back(pt.loss_ideal);
        cols[3].push_back(pt.loss_pulse);
    }
    const std::string id = fig3 ? "fig3" : "sfig5";
    write_csv(fs::path(cfg.out_dir) / (id + ".csv"),
              {"time", "steps", "loss_ideal", "loss_pulse"}, cols,
              {"Holstein digital protocol, g=h/10, omega0=h/4, cutoff=" +
               std::to_string(cutoff) + (pulse ? "" : ", pulse level disabled")});

    Manifest mf;
    mf.kv("experiment", id);
    mf.kv("n_ions", n_ions);
    mf.kv("cutoff", cutoff);
    mf.kv("hopping", kHopping);
    mf.kv("coupling_g", kHopping / 10.0);
    mf.kv("omega0", kHopping / 4.0);
    mf.kv("pulse_level", pulse ? "on" : "off");
    if (pulse) {
        // calibrated pair drives per grid point
        const IonChainModel chain = make_ion_chain(n_ions, kHopping / 4.0);
        for (int r : rs)
            for (double t : ts) {
                const double tau = t / (2.0 * r);
                std::vector<DriveSpec> drives;
                for (int pair = 0; pair + 1 < n_ions - 1; ++pair)
                    drives.push_back(
                        calibrate_rabi(chain, kHopping / 2.0, pair, pair, tau));
                mf.drives(drives,
                          "drives_r" + std::to_string(r) + "_t" + format_number(t));
            }
    }
    HolsteinParams p{kHopping, kHopping / 10.0, kHopping / 4.0, n_ions - 1, cutoff};
    mf.budget(emit_budget(ts.back(), rs.back(), 3, &p));
    mf.write(fs::path(cfg.out_dir) / "manifest.txt");
}

void run_phonon_entry(const ExperimentConfig& cfg) {
    const int cutoff = cfg.cutoff > 0 ? cfg.cutoff : 6;
    int com_periods = 16;
    if (cfg.t_max > 0.0) {
        const IonChainModel chain = make_ion_chain(3, kHopping / 4.0);
        com_periods = std::max(
            1, static_cast<int>(std::llround(cfg.t_max / 2.0 * chain.frame_frequency(0) /
                                             (2.0 * M_PI))));
    }
    PhononProtocolResult res = run_phonon_protocol(cutoff, com_periods, cfg.dt, cfg.verify);

    write_csv(fs::path(cfg.out_dir) / "sfig6.csv", {"time", "phonon_com"},
              {res.times, res.phonon_com},
              {"H1+H3 symmetric r=1 pulse protocol, COM phonon trace",
               "exact_final = " + format_number(res.exact_final),
               "pulse_final = " + format_number(res.pulse_final),
               "relative_error = " + format_number(res.relative_error)});

    Manifest mf;
    mf.kv("experiment", "sfig6");
    mf.kv("cutoff", cutoff);
    mf.kv("tau", res.tau);
    mf.kv("simulated_time", 2.0 * res.tau);
    mf.kv("coupling_g", kHopping / 10.0);
    std::ostringstream os;
    for (int m : res.mode_map) os << m + 1 << " ";
    mf.kv("mode_map", trim(os.str()));
    mf.kv("pulse_final", res.pulse_final);
    mf.kv("exact_final", res.exact_final);
    mf.kv("relative_error", res.relative_error);
    if (cfg.sensitivity) {
        PhononProtocolResult res2 = run_phonon_protocol(cutoff + 1, com_periods, cfg.dt, false);
        mf.section("cutoff_sensitivity");
        mf.kv("pulse_final_shift",
              std::abs(res2.pulse_final - res.pulse_final) / res.pulse_final);
    }
    mf.budget(emit_budget(2.0 * res.tau, 1, 2));
    mf.write(fs::path(cfg.out_dir) / "manifest.txt");
}

}  // namespace

void run_experiment(const ExperimentConfig& cfg) {
    const auto& catalog = experiment_catalog();
    const bool known = std::any_of(catalog.begin(), catalog.end(),
                                   [&](const ExperimentInfo& e) { return e.id == cfg.id; });
    if (!known) throw UnknownExperimentError("unknown experiment id '" + cfg.id + "'");
    fs::create_directories(cfg.out_dir);

    if (cfg.id == "fig1a") return run_ideal_entry(cfg, true);
    if (cfg.id == "fig1b") return run_ideal_entry(cfg, false);
    if (cfg.id == "fig2") return run_xx_entry(cfg, true);
    if (cfg.id == "sfig4") return run_xx_entry(cfg, false);
    if (cfg.id == "fig3") return run_holstein_entry(cfg, true);
    if (cfg.id == "sfig5") return run_holstein_entry(cfg, false);
    if (cfg.id == "sfig6") return run_phonon_entry(cfg);
    throw UnknownExperimentError("unknown experiment id '" + cfg.id + "'");
}

}  // namespace polarion
