#include "polarion/observables.hpp"

#include "polarion/evolution.hpp"

namespace polarion {

std::vector<double> sigma_z_trace(const Trajectory& traj, int ion) {
    const SparseMatrix op = embed_spin_sparse(pauli(Pauli::Z), ion, traj.basis);
    std::vector<double> out;
    out.reserve(traj.states.size());
    for (const auto& v : traj.states)
        out.push_back(real_expectation(op, StateVector(v, traj.basis)));
    return out;
}

std::vector<double> phonon_number(const Trajectory& traj, int mode) {
    const SparseMatrix op = embed_mode_sparse(boson_number(traj.basis.cutoff), mode, traj.basis);
    std::vector<double> out;
    out.reserve(traj.states.size());
    for (const auto& v : traj.states)
        out.push_back(real_expectation(op, StateVector(v, traj.basis)));
    return out;
}

double polaron_correlation(const StateVector& psi, int site_i, int site_j, Picture picture,
                           const std::vector<int>& mode_map) {
    const CompositeBasis& basis = psi.basis;
    if (site_i < 0 || site_j < 0)
        throw std::out_of_range("polaron_correlation: negative site index");

    if (picture == Picture::SpinBoson) {
        if (site_i >= basis.n_spins || site_j >= basis.n_modes)
            throw std::out_of_range("polaron_correlation: site index out of range");
        const ComplexMatrix c = jordan_wigner_lowering(site_i, basis);
        const ComplexMatrix density = c.adjoint() * c;
        const ComplexMatrix op =
            density * embed_mode(boson_position(basis.cutoff), site_j, basis);
        return expectation(op, psi).real();
    }

    // Ion picture: spin projector on ion i, displacement of the mapped mode.
    const int n_sites = basis.n_spins - 1;
    if (site_i >= n_sites || site_j >= n_sites)
        throw std::out_of_range("polaron_correlation: site index out of range");
    std::vector<int> map = mode_map;
    if (map.empty()) {
        map.resize(n_sites);
        for (int i = 0; i < n_sites; ++i) map[i] = i;
    }
    const std::int64_t dim = basis.dimension();
    const ComplexMatrix projector =
        (embed_spin(pauli(Pauli::Z), site_i, basis) + ComplexMatrix::Identity(dim, dim)) / 2.0;
    const ComplexMatrix op =
        projector * embed_mode(boson_position(basis.cutoff), map[site_j], basis);
    return expectation(op, psi).real();
}

double polaron_correlation_spin(const StateVector& psi, int site_i, int site_j) {
    const CompositeBasis& basis = psi.basis;
    if (site_i < 0 || site_i >= basis.n_spins || site_j < 0 || site_j >= basis.n_modes)
        throw std::out_of_range("polaron_correlation_spin: site index out of range");
    const std::int64_t dim = basis.dimension();
    const ComplexMatrix projector =
        (embed_spin(pauli(Pauli::Z), site_i, basis) + ComplexMatrix::Identity(dim, dim)) / 2.0;
    const ComplexMatrix op =
        projector * embed_mode(boson_position(basis.cutoff), site_j, basis);
    return expectation(op, psi).real();
}

CorrelationProfile correlation_profile(const StateVector& psi, const HolsteinParams& p,
                                       double time) {
    CorrelationProfile prof;
    prof.g = p.g;
    prof.time = time;
    prof.electron_site = electron_site(p.n_sites);
    prof.chi = RealMatrix::Zero(p.n_sites, p.n_sites);
    for (int i = 0; i < p.n_sites; ++i)
        for (int j = 0; j < p.n_sites; ++j)
            prof.chi(i, j) = polaron_correlation_spin(psi, i, j);

    const int i0 = prof.electron_site - 1;
    double total = 0.0;
    double second = 0.0;
    for (int j = 0; j < p.n_sites; ++j) {
        const double w = std::abs(prof.chi(i0, j));
        total += w;
        second += w * (j - i0) * (j - i0);
    }
    prof.width = total > 1e-14 ? std::sqrt(second / total) : 0.0;
    return prof;
}

std::vector<CorrelationProfile> polaron_size_scan(const std::vector<double>& g_values,
                                                  HolsteinParams p, double time) {
    if (g_values.empty()) throw std::invalid_argument("polaron_size_scan: empty g list");
    std::vector<CorrelationProfile> out;
    out.reserve(g_values.size());
    for (double g : g_values) {
        p.g = g;
        const CompositeBasis basis = holstein_basis(p);
        const StateVector psi0 = initial_state(p, basis);
        const StateVector psi = exact_evolve(build_hamiltonian(p, basis), psi0, time);
        out.push_back(correlation_profile(psi, p, time));
    }
    return out;
}

}  // namespace polarion
