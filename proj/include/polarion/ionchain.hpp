#pragma once

#include <string>
#include <vector>

#include "polarion/evolution.hpp"

namespace polarion {

struct CalibrationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Axial normal modes of a harmonically confined 1D Coulomb chain, in units
/// of the center-of-mass frequency. `modes` columns are orthonormal mode
/// vectors; `positions` are the dimensionless equilibrium positions.
struct ChainGeometry {
    RealVector frequencies;
    RealMatrix modes;
    RealVector positions;
};

/// Solve the chain equilibrium by damped Newton iteration (gradient residual
/// below 1e-12) and diagonalize the axial Hessian. Supports 2..10 ions.
ChainGeometry normal_modes(int n_ions);

/// eta_{i,m} = overall * beta_{i,m} with beta the orthonormal mode matrix.
RealMatrix lamb_dicke(const RealMatrix& modes, double overall);

/// Equilibrium data of an N+1 ion chain simulating N sites. Mode m < n_sites
/// rotates at the shifted frequency nu_m - omega0/3 in the interaction
/// picture; the last mode keeps its bare frequency. The carrier frequency
/// cancels in that picture and is stored for bookkeeping only.
struct IonChainModel {
    int n_ions = 0;
    int n_sites = 0;
    double omega0 = 0.0;
    RealVector nu;
    RealMatrix eta;
    RealVector delta_shift;
    double carrier = 0.0;

    /// Interaction-picture rotation frequency of mode m.
    double frame_frequency(int m) const { return delta_shift[m]; }
};

IonChainModel make_ion_chain(int n_ions, double omega0, double lamb_dicke_scale = 0.1,
                             double carrier = 0.0);

/// Composite ion-space basis: n_ions spins and n_ions modes at `cutoff`.
CompositeBasis ion_basis(const IonChainModel& chain, int cutoff);

enum class SpinAxis { X, Y };

/// One bichromatic drive: addressed ions, common Rabi amplitude, detuning
/// +-delta, spin coupling axis, and a motional phase offset (0 for gate
/// drives, -pi/2 for resonant sideband drives producing b + b^dag).
struct DriveSpec {
    std::vector<int> ions;
    double rabi = 0.0;
    double detuning = 0.0;
    SpinAxis axis = SpinAxis::X;
    double motional_phase = 0.0;
    int target_mode = 0;
};

/// Effective Ising coupling of a nearest-neighbor pair drive,
///   J = Omega^2 [ sum_{m<N} eta_im eta_{i+1,m} D_m / (delta^2 - D_m^2)
///               + eta_{i,N} eta_{i+1,N} nu_N / (delta^2 - nu_N^2) ]
/// with D the shifted frequencies. Exact resonance is rejected.
double effective_ising_coupling(const IonChainModel& chain, const DriveSpec& drive);

/// Choose the detuning delta = +-2pi/tau + D_m (sign following
/// sgn(eta_{i,m} eta_{i+1,m})) and invert the coupling formula for the Rabi
/// amplitude reaching `target_j` on the pair (first_ion, first_ion+1).
/// Throws CalibrationError when the bracket sign makes the target unreachable.
DriveSpec calibrate_rabi(const IonChainModel& chain, double target_j, int first_ion, int mode,
                         double tau);

/// Laser-ion interaction Hamiltonian at time t in the interaction picture:
///   H(t) = sum_d sum_m sin(delta_d t) (a_m e^{-i nu~_m t - i phi} + h.c.)
///          * sum_{i in d} Omega_d eta_{i,m} sigma_i
/// with nu~ the frame frequencies. Zero at t = 0.
ComplexMatrix drive_hamiltonian(const IonChainModel& chain, const std::vector<DriveSpec>& drives,
                                double t, const CompositeBasis& basis);

/// Same Hamiltonian as a sparse term list for time stepping.
TimeDependentHamiltonian drive_terms(const IonChainModel& chain,
                                     const std::vector<DriveSpec>& drives,
                                     const CompositeBasis& basis);

/// Static electron-phonon Hamiltonian realized by the sideband scheme:
///   H = sum_i (W_i eta_{i,m_i} sigma_z_i + W_{N,i} eta_{N,m_i} sigma_z_N)
///       * (b_{m_i} + b_{m_i}^dag)
/// with W_i eta chosen as g/2 on the addressed ion and on the passive last
/// ion. mode_map[i] is the mode attached to site i; vanishing eta_{i,m_i} is
/// rejected.
ComplexMatrix ep_drive_hamiltonian(const IonChainModel& chain, double g,
                                   const std::vector<int>& mode_map,
                                   const CompositeBasis& basis);

/// Resonant bichromatic sideband drives whose slow part reproduces
/// ep_drive_hamiltonian after conjugation by the global Y rotations.
std::vector<DriveSpec> ep_sideband_drives(const IonChainModel& chain, double g,
                                          const std::vector<int>& mode_map);

/// Free phonon energy left in the interaction picture on the modes hosting
/// the simulated sites: (omega0/3) sum_i n_{mode_map[i]}. Runs through every
/// protocol segment, so the three segment types together supply the full
/// omega0 term of the simulated model.
SparseMatrix residual_phonon_energy(const IonChainModel& chain, const std::vector<int>& mode_map,
                                    const CompositeBasis& basis);

/// Global spin rotation (tensor of exp(sign * i pi/4 sigma_y) over all ions).
/// Conjugation with sign=+1 maps sigma_x onto sigma_z on every ion.
ComplexMatrix global_rotation(const IonChainModel& chain, int sign, const CompositeBasis& basis);

/// Sparse form used inside pulse protocols (8 entries per row for 3 ions).
SparseMatrix global_rotation_sparse(const IonChainModel& chain, int sign,
                                    const CompositeBasis& basis);

/// Default one-to-one site-to-mode assignment. Falls back to the next
/// available mode when the natural choice is uncoupled (eta ~ 0), as happens
/// for the middle ion and the breathing mode of odd chains.
std::vector<int> default_mode_map(const IonChainModel& chain);

/// Second-order Magnus coefficients of the unwanted next-nearest-neighbor
/// coupling generated by two simultaneous pair drives, evaluated per mode
/// with shifted frequencies, plus the magnitude ratio against the dominant
/// nearest-neighbor coefficients and the critical time of the validity
/// condition.
struct MagnusReport {
    ComplexVector z1;
    ComplexVector z2;
    double nnn_to_nn_ratio = 0.0;
    double critical_time = 0.0;
};

MagnusReport magnus_nnn(const IonChainModel& chain, double delta1, double delta2, double t);

/// One protocol segment: a drive Hamiltonian integrated for `duration` on a
/// local clock, optionally conjugated by instantaneous unitaries.
struct PulseSegment {
    TimeDependentHamiltonian hamiltonian;
    double duration = 0.0;
    SparseMatrix pre;
    SparseMatrix post;
    std::string label;
};

struct ProtocolResult {
    StateVector final_state;
    std::vector<double> sample_times;
    std::vector<ComplexVector> samples;
    double max_renorm_drift = 0.0;
    double convergence_error = 0.0;
    long steps = 0;
};

/// Integrate the segments in order. Samples (taken when opt.sample_interval
/// is positive) are recorded against the global protocol clock; samples
/// inside conjugated segments are in the rotated frame.
ProtocolResult run_pulse_protocol(const std::vector<PulseSegment>& segments,
                                  const StateVector& psi0, const IntegrationOptions& opt);

/// Embed an exact spin-boson state into the ion space: site spins onto the
/// first N ions, the passive ion spin-up, site-i phonons onto mode
/// mode_map[i], remaining modes in vacuum.
StateVector embed_in_ion_space(const StateVector& exact, const CompositeBasis& ion_basis,
                               const std::vector<int>& mode_map);

}  // namespace polarion
