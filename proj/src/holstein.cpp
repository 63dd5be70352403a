#include "polarion/holstein.hpp"

namespace polarion {

CompositeBasis holstein_basis(const HolsteinParams& p) {
    p.validate();
    return CompositeBasis(p.n_sites, p.n_sites, p.cutoff);
}

ComplexMatrix jordan_wigner_lowering(int site, const CompositeBasis& basis) {
    if (site < 0 || site >= basis.n_spins)
        throw std::out_of_range("jordan_wigner_lowering: site out of range");
    ComplexMatrix op = embed_spin(pauli(Pauli::Minus), site, basis);
    for (int j = 0; j < site; ++j) op = embed_spin(pauli(Pauli::Z), j, basis) * op;
    return op;
}

ComplexMatrix build_hamiltonian(const HolsteinParams& p, const CompositeBasis& basis) {
    const auto parts = decompose(p, basis);
    return parts[0] + parts[1] + parts[2];
}

std::array<ComplexMatrix, 3> decompose(const HolsteinParams& p, const CompositeBasis& basis) {
    p.validate();
    if (basis.n_spins != p.n_sites || basis.n_modes != p.n_sites || basis.cutoff != p.cutoff)
        throw std::invalid_argument("decompose: basis does not match parameters");

    const std::int64_t dim = basis.dimension();
    ComplexMatrix h1 = ComplexMatrix::Zero(dim, dim);
    ComplexMatrix h2 = ComplexMatrix::Zero(dim, dim);
    ComplexMatrix h3 = ComplexMatrix::Zero(dim, dim);

    for (int i = 0; i + 1 < p.n_sites; ++i) {
        h1 += (p.h / 2.0) * embed_spin(pauli(Pauli::X), i, basis) *
              embed_spin(pauli(Pauli::X), i + 1, basis);
        h2 += (p.h / 2.0) * embed_spin(pauli(Pauli::Y), i, basis) *
              embed_spin(pauli(Pauli::Y), i + 1, basis);
    }

    const ComplexMatrix id = ComplexMatrix::Identity(dim, dim);
    for (int i = 0; i < p.n_sites; ++i) {
        const ComplexMatrix projector =
            (embed_spin(pauli(Pauli::Z), i, basis) + id) / 2.0;
        h3 += p.g * embed_mode(boson_position(p.cutoff), i, basis) * projector;
        const ComplexMatrix third =
            (p.omega0 / 3.0) * embed_mode(boson_number(p.cutoff), i, basis);
        h1 += third;
        h2 += third;
        h3 += third;
    }
    return {h1, h2, h3};
}

int electron_site(int n_sites) {
    return n_sites % 2 == 0 ? n_sites / 2 : (n_sites + 1) / 2;
}

StateVector initial_state(const HolsteinParams& p, const CompositeBasis& basis) {
    const int up_site = electron_site(p.n_sites) - 1;  // 0-based
    std::vector<int> down;
    for (int i = 0; i < p.n_sites; ++i)
        if (i != up_site) down.push_back(i);
    return basis_state(basis, down);
}

ComplexMatrix total_electron_number(const CompositeBasis& basis) {
    const std::int64_t dim = basis.dimension();
    ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
    const ComplexMatrix id = ComplexMatrix::Identity(dim, dim);
    for (int i = 0; i < basis.n_spins; ++i)
        out += (embed_spin(pauli(Pauli::Z), i, basis) + id) / 2.0;
    return out;
}

ComplexMatrix total_phonon_number(const CompositeBasis& basis) {
    const std::int64_t dim = basis.dimension();
    ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
    for (int m = 0; m < basis.n_modes; ++m)
        out += embed_mode(boson_number(basis.cutoff), m, basis);
    return out;
}

}  // namespace polarion
