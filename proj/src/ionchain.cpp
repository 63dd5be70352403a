#include "polarion/ionchain.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <map>

namespace polarion {

namespace {
constexpr Complex kI{0.0, 1.0};
constexpr double kResonanceTol = 1e-9;
}  // namespace

ChainGeometry normal_modes(int n_ions) {
    if (n_ions < 2 || n_ions > 10)
        throw std::invalid_argument("normal_modes: supported range is 2..10 ions");

    const int n = n_ions;
    RealVector x(n);
    for (int i = 0; i < n; ++i)
        x[i] = (-1.0 + 2.0 * i / (n - 1.0)) * std::sqrt(static_cast<double>(n));

    RealVector grad(n);
    RealMatrix hess(n, n);
    bool converged = false;
    for (int iter = 0; iter < 200; ++iter) {
        grad = x;
        hess.setIdentity();
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                const double d = x[i] - x[j];
                grad[i] -= (d > 0 ? 1.0 : -1.0) / (d * d);
                const double c = 2.0 / std::pow(std::abs(d), 3.0);
                hess(i, i) += c;
                hess(i, j) = -c;
            }
        }
        if (grad.cwiseAbs().maxCoeff() < 1e-12) {
            converged = true;
            break;
        }
        RealVector dx = hess.ldlt().solve(grad);
        // damp steps that would reorder ions
        double scale = 1.0;
        for (int i = 0; i + 1 < n; ++i) {
            const double gap = (x[i + 1] - dx[i + 1]) - (x[i] - dx[i]);
            if (gap <= 0.0) scale = std::min(scale, 0.5);
        }
        x -= scale * dx;
    }
    if (!converged)
        throw std::runtime_error("normal_modes: Newton iteration did not converge");

    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(hess);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("normal_modes: Hessian diagonalization failed");

    ChainGeometry geo;
    geo.positions = x;
    geo.frequencies = solver.eigenvalues().cwiseSqrt();
    geo.modes = solver.eigenvectors();
    // normalize to the center-of-mass frequency and fix sign conventions:
    // first nonvanishing entry of each mode vector positive
    geo.frequencies /= geo.frequencies[0];
    for (int m = 0; m < n; ++m) {
        for (int i = 0; i < n; ++i) {
            if (std::abs(geo.modes(i, m)) > 1e-9) {
                if (geo.modes(i, m) < 0.0) geo.modes.col(m) *= -1.0;
                break;
            }
        }
    }
    return geo;
}

RealMatrix lamb_dicke(const RealMatrix& modes, double overall) {
    if (overall <= 0.0) throw std::invalid_argument("lamb_dicke: overall magnitude must be > 0");
    return overall * modes;
}

IonChainModel make_ion_chain(int n_ions, double omega0, double lamb_dicke_scale,
                             double carrier) {
    if (omega0 < 0.0) throw std::invalid_argument("make_ion_chain: omega0 must be >= 0");
    const ChainGeometry geo = normal_modes(n_ions);
    IonChainModel chain;
    chain.n_ions = n_ions;
    chain.n_sites = n_ions - 1;
    chain.omega0 = omega0;
    chain.nu = geo.frequencies;
    chain.eta = lamb_dicke(geo.modes, lamb_dicke_scale);
    chain.delta_shift = geo.frequencies;
    for (int m = 0; m < chain.n_sites; ++m) chain.delta_shift[m] -= omega0 / 3.0;
    chain.carrier = carrier;
    return chain;
}

CompositeBasis ion_basis(const IonChainModel& chain, int cutoff) {
    return CompositeBasis(chain.n_ions, chain.n_ions, cutoff);
}

namespace {
double ising_bracket(const IonChainModel& chain, int i, double delta) {
    double sum = 0.0;
    for (int m = 0; m < chain.n_ions; ++m) {
        const double w = chain.frame_frequency(m);
        const double denom = delta * delta - w * w;
        if (std::abs(delta - w) < kResonanceTol || std::abs(delta + w) < kResonanceTol)
            throw CalibrationError("ising coupling: detuning resonant with mode " +
                                   std::to_string(m + 1));
        sum += chain.eta(i, m) * chain.eta(i + 1, m) * w / denom;
    }
    return sum;
}
}  // namespace

double effective_ising_coupling(const IonChainModel& chain, const DriveSpec& drive) {
    if (drive.ions.size() != 2 || drive.ions[1] != drive.ions[0] + 1)
        throw std::invalid_argument("effective_ising_coupling: drive must address a NN pair");
    const int i = drive.ions[0];
    if (i < 0 || i + 1 >= chain.n_ions)
        throw std::out_of_range("effective_ising_coupling: ion index out of range");
    return drive.rabi * drive.rabi * ising_bracket(chain, i, drive.detuning);
}

DriveSpec calibrate_rabi(const IonChainModel& chain, double target_j, int first_ion, int mode,
                         double tau) {
    if (tau <= 0.0) throw std::invalid_argument("calibrate_rabi: tau must be > 0");
    if (first_ion < 0 || first_ion + 1 >= chain.n_ions)
        throw std::out_of_range("calibrate_rabi: ion index out of range");
    if (mode < 0 || mode >= chain.n_ions)
        throw std::out_of_range("calibrate_rabi: mode index out of range");

    const double eta_product = chain.eta(first_ion, mode) * chain.eta(first_ion + 1, mode);
    const double sign = eta_product >= 0.0 ? 1.0 : -1.0;
    const double delta = sign * 2.0 * M_PI / tau + chain.frame_frequency(mode);

    const double bracket = ising_bracket(chain, first_ion, delta);
    if (target_j * bracket <= 0.0)
        throw CalibrationError(
            "calibrate_rabi: target coupling unreachable with a real Rabi amplitude "
            "(check sign or mode choice)");

    DriveSpec drive;
    drive.ions = {first_ion, first_ion + 1};
    drive.rabi = std::sqrt(target_j / bracket);
    drive.detuning = delta;
    drive.axis = SpinAxis::X;
    drive.motional_phase = 0.0;
    drive.target_mode = mode;
    return drive;
}

TimeDependentHamiltonian drive_terms(const IonChainModel& chain,
                                     const std::vector<DriveSpec>& drives,
                                     const CompositeBasis& basis) {
    if (basis.n_spins != chain.n_ions || basis.n_modes != chain.n_ions)
        throw std::invalid_argument("drive_terms: basis does not match chain");

    // Terms sharing a coefficient (same detuning, frame frequency, phase and
    // quadrature) are merged; a pi phase offset folds into the amplitude sign.
    struct Key {
        double delta, nu, phase;
        int kind;
        bool operator<(const Key& o) const {
            if (delta != o.delta) return delta < o.delta;
            if (nu != o.nu) return nu < o.nu;
            if (phase != o.phase) return phase < o.phase;
            return kind < o.kind;
        }
    };
    std::map<Key, SparseMatrix> merged;

    const ComplexMatrix q = boson_position(basis.cutoff);
    const ComplexMatrix p = boson_momentum(basis.cutoff);
    for (const auto& drive : drives) {
        if (drive.rabi < 0.0)
            throw std::invalid_argument("drive_terms: Rabi amplitude must be nonnegative");
        const ComplexMatrix sigma = pauli(drive.axis == SpinAxis::X ? Pauli::X : Pauli::Y);
        double phase = std::fmod(drive.motional_phase, 2.0 * M_PI);
        if (phase < 0.0) phase += 2.0 * M_PI;
        double sign = 1.0;
        if (phase >= M_PI) {
            phase -= M_PI;
            sign = -1.0;
        }
        for (int m = 0; m < chain.n_ions; ++m) {
            SparseMatrix spin_part(basis.dimension(), basis.dimension());
            bool any = false;
            for (int ion : drive.ions) {
                if (ion < 0 || ion >= chain.n_ions)
                    throw std::out_of_range("drive_terms: ion index out of range");
                const double w = sign * drive.rabi * chain.eta(ion, m);
                if (w == 0.0) continue;
                spin_part += Complex(w) * embed_spin_sparse(sigma, ion, basis);
                any = true;
            }
            if (!any) continue;
            const double wm = chain.frame_frequency(m);
            auto accumulate = [&](int kind, const ComplexMatrix& quad) {
                Key key{drive.detuning, wm, phase, kind};
                SparseMatrix mat = spin_part * embed_mode_sparse(quad, m, basis);
                auto it = merged.find(key);
                if (it == merged.end())
                    merged.emplace(key, std::move(mat));
                else
                    it->second += mat;
            };
            accumulate(0, q);
            accumulate(1, p);
        }
    }

    TimeDependentHamiltonian h;
    for (auto& [key, mat] : merged) {
        TimeTerm term;
        mat.makeCompressed();
        term.mat = std::move(mat);
        term.coeff = key.kind == 0 ? TimeCoeff::sin_cos(1.0, key.delta, key.nu, key.phase)
                                   : TimeCoeff::sin_sin(1.0, key.delta, key.nu, key.phase);
        h.terms.push_back(std::move(term));
    }
    return h;
}

ComplexMatrix drive_hamiltonian(const IonChainModel& chain, const std::vector<DriveSpec>& drives,
                                double t, const CompositeBasis& basis) {
    return drive_terms(chain, drives, basis).dense_at(t);
}

std::vector<int> default_mode_map(const IonChainModel& chain) {
    std::vector<int> map(chain.n_sites);
    std::vector<bool> used(chain.n_ions, false);
    for (int i = 0; i < chain.n_sites; ++i) {
        int pick = -1;
        for (int m = 0; m < chain.n_ions; ++m) {
            if (used[m]) continue;
            if (std::abs(chain.eta(i, m)) > 1e-9 && std::abs(chain.eta(chain.n_ions - 1, m)) > 1e-9) {
                pick = m;
                break;
            }
        }
        if (pick < 0)
            throw CalibrationError("default_mode_map: no coupled mode available for site " +
                                   std::to_string(i + 1));
        map[i] = pick;
        used[pick] = true;
    }
    return map;
}

ComplexMatrix ep_drive_hamiltonian(const IonChainModel& chain, double g,
                                   const std::vector<int>& mode_map,
                                   const CompositeBasis& basis) {
    if (static_cast<int>(mode_map.size()) != chain.n_sites)
        throw std::invalid_argument("ep_drive_hamiltonian: mode map must cover every site");
    const std::int64_t dim = basis.dimension();
    ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
    const ComplexMatrix q = boson_position(basis.cutoff);
    const int passive = chain.n_ions - 1;
    for (int i = 0; i < chain.n_sites; ++i) {
        const int m = mode_map[i];
        if (std::abs(chain.eta(i, m)) < 1e-9 || std::abs(chain.eta(passive, m)) < 1e-9)
            throw CalibrationError("ep_drive_hamiltonian: ion " + std::to_string(i + 1) +
                                   " is uncoupled from mode " + std::to_string(m + 1));
        // Rabi rule W = g / (2 eta) makes each coefficient W * eta = g/2.
        const ComplexMatrix coupling =
            (g / 2.0) * (embed_spin(pauli(Pauli::Z), i, basis) +
                         embed_spin(pauli(Pauli::Z), passive, basis));
        h += coupling * embed_mode(q, m, basis);
    }
    return h;
}

std::vector<DriveSpec> ep_sideband_drives(const IonChainModel& chain, double g,
                                          const std::vector<int>& mode_map) {
    if (static_cast<int>(mode_map.size()) != chain.n_sites)
        throw std::invalid_argument("ep_sideband_drives: mode map must cover every site");
    std::vector<DriveSpec> drives;
    const int passive = chain.n_ions - 1;
    for (int i = 0; i < chain.n_sites; ++i) {
        const int m = mode_map[i];
        if (std::abs(chain.eta(i, m)) < 1e-9 || std::abs(chain.eta(passive, m)) < 1e-9)
            throw CalibrationError("ep_sideband_drives: ion " + std::to_string(i + 1) +
                                   " is uncoupled from mode " + std::to_string(m + 1));
        // Resonant bichromatic drive: the slow part of sin(dt)(a e^{-i(dt+phi)}+h.c.)
        // at phi = -pi/2 is +(1/2)(a + a^dag), so a lab amplitude of g/|eta|
        // leaves an effective g/2 coupling. Sign flips fold into the phase.
        for (int ion : {i, passive}) {
            DriveSpec d;
            d.ions = {ion};
            d.rabi = std::abs(g / chain.eta(ion, m));
            d.detuning = chain.frame_frequency(m);
            d.axis = SpinAxis::X;
            d.motional_phase = -M_PI / 2.0 + (g / chain.eta(ion, m) < 0.0 ? M_PI : 0.0);
            d.target_mode = m;
            drives.push_back(std::move(d));
        }
    }
    return drives;
}

SparseMatrix residual_phonon_energy(const IonChainModel& chain, const std::vector<int>& mode_map,
                                    const CompositeBasis& basis) {
    if (static_cast<int>(mode_map.size()) != chain.n_sites)
        throw std::invalid_argument("residual_phonon_energy: mode map must cover every site");
    SparseMatrix out(basis.dimension(), basis.dimension());
    const ComplexMatrix number = boson_number(basis.cutoff);
    for (int m : mode_map)
        out += Complex(chain.omega0 / 3.0) * embed_mode_sparse(number, m, basis);
    out.makeCompressed();
    return out;
}

SparseMatrix global_rotation_sparse(const IonChainModel& chain, int sign,
                                    const CompositeBasis& basis) {
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("global_rotation: sign must be +1 or -1");
    const double theta = M_PI / 4.0;
    // exp(sign * i theta sigma_y) = cos(theta) I + sign * i sin(theta) sigma_y
    const ComplexMatrix local = std::cos(theta) * ComplexMatrix::Identity(2, 2) +
                                static_cast<double>(sign) * kI * std::sin(theta) *
                                    pauli(Pauli::Y);
    SparseMatrix out = embed_spin_sparse(local, 0, basis);
    for (int i = 1; i < chain.n_ions; ++i) {
        out = (embed_spin_sparse(local, i, basis) * out).eval();
        out.makeCompressed();
    }
    return out;
}

ComplexMatrix global_rotation(const IonChainModel& chain, int sign, const CompositeBasis& basis) {
    return ComplexMatrix(global_rotation_sparse(chain, sign, basis));
}

namespace {
double guarded_sinc_sum(double a, double b, double freq_num, double t) {
    // freq_num * sin((a - b) t) / (a - b), rejecting exact degeneracy
    const double diff = a - b;
    if (std::abs(diff) < kResonanceTol)
        throw std::invalid_argument("magnus_nnn: degenerate frequency pair");
    return freq_num * std::sin(diff * t) / diff;
}
}  // namespace

MagnusReport magnus_nnn(const IonChainModel& chain, double delta1, double delta2, double t) {
    if (std::abs(delta1 - delta2) < kResonanceTol)
        throw std::invalid_argument("magnus_nnn: detunings must differ");
    const int n = chain.n_ions;
    MagnusReport report;
    report.z1 = ComplexVector::Zero(n);
    report.z2 = ComplexVector::Zero(n);

    auto z_coeff = [&](double da, double db, double w) -> Complex {
        // i / (2 (da^2 - w^2)) * [ da sin((db-w)t)/(db-w) - da sin((db+w)t)/(db+w)
        //                        + w sin((db-da)t)/(db-da) - w sin((db+da)t)/(db+da) ]
        const double denom = da * da - w * w;
        if (std::abs(da - w) < kResonanceTol || std::abs(da + w) < kResonanceTol)
            throw std::invalid_argument("magnus_nnn: detuning resonant with a mode");
        double bracket = 0.0;
        bracket += guarded_sinc_sum(db, w, da, t);
        bracket -= guarded_sinc_sum(db, -w, da, t);
        bracket += guarded_sinc_sum(db, da, w, t);
        bracket -= guarded_sinc_sum(db, -da, w, t);
        return kI / (2.0 * denom) * bracket;
    };

    for (int m = 0; m < n; ++m) {
        const double w = chain.frame_frequency(m);
        report.z1[m] = z_coeff(delta1, delta2, w);
        report.z2[m] = z_coeff(delta2, delta1, w);
    }

    auto dominant_mode = [&](double delta) {
        int best = 0;
        double gap = std::abs(delta - chain.frame_frequency(0));
        for (int m = 1; m < n; ++m) {
            const double g = std::abs(delta - chain.frame_frequency(m));
            if (g < gap) {
                gap = g;
                best = m;
            }
        }
        return best;
    };
    const int m1 = dominant_mode(delta1);
    const int m2 = dominant_mode(delta2);
    auto nn_coeff = [&](double delta, int m) {
        const double w = chain.frame_frequency(m);
        return std::abs(w * t / (2.0 * (delta * delta - w * w)));
    };
    const double nn = std::min(nn_coeff(delta1, m1), nn_coeff(delta2, m2));

    double nnn = 0.0;
    for (int m = 0; m < n; ++m)
        nnn = std::max(nnn, std::abs(report.z1[m] + report.z2[m]));
    report.nnn_to_nn_ratio = nn > 0.0 ? nnn / nn : 0.0;

    const double w2 = chain.frame_frequency(m2);
    report.critical_time = std::abs(delta2 / w2 / (delta1 - w2));
    return report;
}

ProtocolResult run_pulse_protocol(const std::vector<PulseSegment>& segments,
                                  const StateVector& psi0, const IntegrationOptions& opt) {
    ProtocolResult result;
    StateVector state = psi0;
    double clock = 0.0;
    for (const auto& seg : segments) {
        if (seg.pre.nonZeros() > 0) state.amps = seg.pre * state.amps;
        IntegrationResult ir = integrate_tdse(seg.hamiltonian, state, 0.0, seg.duration, opt);
        result.convergence_error = std::max(result.convergence_error, ir.convergence_error);
        for (std::size_t k = 0; k < ir.sample_times.size(); ++k) {
            result.sample_times.push_back(clock + ir.sample_times[k]);
            result.samples.push_back(std::move(ir.samples[k]));
        }
        result.max_renorm_drift = std::max(result.max_renorm_drift, ir.max_renorm_drift);
        result.steps += ir.steps;
        state = std::move(ir.final_state);
        if (seg.post.nonZeros() > 0) state.amps = seg.post * state.amps;
        clock += seg.duration;
    }
    result.final_state = std::move(state);
    return result;
}

StateVector embed_in_ion_space(const StateVector& exact, const CompositeBasis& ion_basis,
                               const std::vector<int>& mode_map) {
    const CompositeBasis& eb = exact.basis;
    if (eb.n_spins != eb.n_modes)
        throw std::invalid_argument("embed_in_ion_space: expected one mode per site");
    const int n_sites = eb.n_spins;
    if (ion_basis.n_spins != n_sites + 1 || ion_basis.n_modes != n_sites + 1)
        throw std::invalid_argument("embed_in_ion_space: ion basis size mismatch");
    if (ion_basis.cutoff != eb.cutoff)
        throw std::invalid_argument("embed_in_ion_space: cutoffs differ");
    if (static_cast<int>(mode_map.size()) != n_sites)
        throw std::invalid_argument("embed_in_ion_space: mode map must cover every site");

    ComplexVector amps = ComplexVector::Zero(ion_basis.dimension());
    std::vector<int> ion_occ(ion_basis.n_slots());
    for (std::int64_t idx = 0; idx < eb.dimension(); ++idx) {
        const Complex a = exact.amps[idx];
        if (a == Complex(0.0, 0.0)) continue;
        const std::vector<int> occ = eb.decode(idx);
        std::fill(ion_occ.begin(), ion_occ.end(), 0);
        for (int i = 0; i < n_sites; ++i) ion_occ[i] = occ[i];
        ion_occ[n_sites] = 0;  // passive ion spin-up
        for (int i = 0; i < n_sites; ++i)
            ion_occ[ion_basis.n_spins + mode_map[i]] = occ[n_sites + i];
        amps[ion_basis.encode(ion_occ)] = a;
    }
    return StateVector(std::move(amps), ion_basis);
}

}  // namespace polarion
