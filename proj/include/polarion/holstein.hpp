#pragma once

#include <array>

#include "polarion/operators.hpp"

namespace polarion {

/// Physical parameters of the Holstein chain. All energies are in units of
/// the reference (center-of-mass) frequency; times in inverse units.
struct HolsteinParams {
    double h = 0.0;       // nearest-neighbor hopping
    double g = 0.0;       // electron-phonon coupling
    double omega0 = 0.0;  // free phonon energy
    int n_sites = 1;
    int cutoff = 1;  // maximum boson occupation per site

    void validate() const {
        if (n_sites < 1) throw std::invalid_argument("HolsteinParams: n_sites must be >= 1");
        if (cutoff < 1) throw std::invalid_argument("HolsteinParams: cutoff must be >= 1");
        if (omega0 < 0.0) throw std::invalid_argument("HolsteinParams: omega0 must be >= 0");
    }
};

/// Composite basis matching the parameter record: one spin and one local
/// phonon mode per site.
CompositeBasis holstein_basis(const HolsteinParams& p);

/// Jordan-Wigner image of the fermionic annihilator on `site` (0-based):
/// the sigma_z string on sites < site times sigma_minus on site.
ComplexMatrix jordan_wigner_lowering(int site, const CompositeBasis& basis);

/// Spin-boson Holstein Hamiltonian
///   H = h sum_i (s+_i s-_{i+1} + h.c.)
///     + g sum_i (b_i + b_i^dag)(sigma_z_i + 1)/2
///     + omega0 sum_i b_i^dag b_i
/// with open boundaries.
ComplexMatrix build_hamiltonian(const HolsteinParams& p, const CompositeBasis& basis);

/// Three-term splitting: XX hopping, YY hopping and electron-phonon parts,
/// each carrying one third of the free phonon energy. Sums to
/// build_hamiltonian exactly.
std::array<ComplexMatrix, 3> decompose(const HolsteinParams& p, const CompositeBasis& basis);

/// One electron injected at the center site (site N/2 for even N, (N+1)/2
/// for odd N, 1-based), every other spin down, all modes in vacuum.
StateVector initial_state(const HolsteinParams& p, const CompositeBasis& basis);

/// 1-based label of the injection site used by initial_state.
int electron_site(int n_sites);

/// Total electron number sum_i (sigma_z_i + 1)/2.
ComplexMatrix total_electron_number(const CompositeBasis& basis);

/// Total phonon number sum_m b_m^dag b_m.
ComplexMatrix total_phonon_number(const CompositeBasis& basis);

}  // namespace polarion
