#pragma once

#include <vector>

#include "polarion/holstein.hpp"

namespace polarion {

/// A sampled trajectory: states against their times, all in one basis.
struct Trajectory {
    std::vector<double> times;
    std::vector<ComplexVector> states;
    CompositeBasis basis;
};

/// <sigma_z^ion>(t) along a trajectory.
std::vector<double> sigma_z_trace(const Trajectory& traj, int ion);

/// <b_m^dag b_m>(t) along a trajectory.
std::vector<double> phonon_number(const Trajectory& traj, int mode);

enum class Picture { SpinBoson, Ion };

/// Electron-phonon displacement correlation chi(i, j). In the spin-boson
/// picture the electron density is evaluated through the Jordan-Wigner
/// operators c_i^dag c_i; in the ion picture through (sigma_z_i + 1)/2 with
/// the displacement of mode mode_map[j]. Both are real for physical states.
double polaron_correlation(const StateVector& psi, int site_i, int site_j, Picture picture,
                           const std::vector<int>& mode_map = {});

/// chi evaluated with the plain spin projector in the spin-boson basis;
/// agrees with the Jordan-Wigner route identically.
double polaron_correlation_spin(const StateVector& psi, int site_i, int site_j);

/// Full chi matrix over site pairs with the polaron width: the normalized
/// second moment of |chi(i0, .)| around the electron injection site (zero
/// when chi vanishes).
struct CorrelationProfile {
    double g = 0.0;
    double time = 0.0;
    RealMatrix chi;
    double width = 0.0;
    int electron_site = 0;  // 1-based
};

CorrelationProfile correlation_profile(const StateVector& psi, const HolsteinParams& p,
                                       double time);

/// Evolve the canonical initial state to `time` for each coupling in
/// `g_values` and collect the correlation profiles.
std::vector<CorrelationProfile> polaron_size_scan(const std::vector<double>& g_values,
                                                  HolsteinParams p, double time);

}  // namespace polarion
