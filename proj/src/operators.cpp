#include "polarion/operators.hpp"

#include <cmath>

namespace polarion {

namespace {
constexpr Complex kI{0.0, 1.0};

// kron(A, B) with B's index running fastest, matching the little-endian
// basis layout when composing slots from slowest to fastest.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}
}  // namespace

ComplexMatrix pauli(Pauli which) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    switch (which) {
        case Pauli::X: m(0, 1) = 1.0; m(1, 0) = 1.0; break;
        case Pauli::Y: m(0, 1) = -kI; m(1, 0) = kI; break;
        case Pauli::Z: m(0, 0) = 1.0; m(1, 1) = -1.0; break;
        case Pauli::Plus: m(0, 1) = 1.0; break;   // |up><down|
        case Pauli::Minus: m(1, 0) = 1.0; break;  // |down><up|
    }
    return m;
}

ComplexMatrix boson_annihilator(int cutoff) {
    if (cutoff < 1)
        throw std::invalid_argument("boson_annihilator: cutoff must be >= 1");
    const int d = cutoff + 1;
    ComplexMatrix b = ComplexMatrix::Zero(d, d);
    for (int n = 1; n < d; ++n) b(n - 1, n) = std::sqrt(static_cast<double>(n));
    return b;
}

ComplexMatrix boson_number(int cutoff) {
    const ComplexMatrix b = boson_annihilator(cutoff);
    return b.adjoint() * b;
}

ComplexMatrix boson_position(int cutoff) {
    const ComplexMatrix b = boson_annihilator(cutoff);
    return b + b.adjoint();
}

ComplexMatrix boson_momentum(int cutoff) {
    const ComplexMatrix b = boson_annihilator(cutoff);
    return kI * (ComplexMatrix(b.adjoint()) - b);
}

ComplexMatrix embed(const ComplexMatrix& local, int slot, const CompositeBasis& basis) {
    if (slot < 0 || slot >= basis.n_slots())
        throw std::out_of_range("embed: slot out of range");
    if (local.rows() != basis.slot_dim(slot) || local.cols() != basis.slot_dim(slot))
        throw std::invalid_argument("embed: local dimension does not match slot");
    std::int64_t left = 1;   // faster slots
    for (int k = 0; k < slot; ++k) left *= basis.slot_dim(k);
    std::int64_t right = 1;  // slower slots
    for (int k = slot + 1; k < basis.n_slots(); ++k) right *= basis.slot_dim(k);
    ComplexMatrix id_left = ComplexMatrix::Identity(left, left);
    ComplexMatrix id_right = ComplexMatrix::Identity(right, right);
    return kron(id_right, kron(local, id_left));
}

ComplexMatrix embed_spin(const ComplexMatrix& local, int spin, const CompositeBasis& basis) {
    if (spin < 0 || spin >= basis.n_spins)
        throw std::out_of_range("embed_spin: spin index out of range");
    return embed(local, spin, basis);
}

ComplexMatrix embed_mode(const ComplexMatrix& local, int mode, const CompositeBasis& basis) {
    if (mode < 0 || mode >= basis.n_modes)
        throw std::out_of_range("embed_mode: mode index out of range");
    return embed(local, basis.n_spins + mode, basis);
}

namespace {
SparseMatrix embed_sparse_impl(const ComplexMatrix& local, int slot,
                               const CompositeBasis& basis) {
    const std::int64_t dim = basis.dimension();
    const int d = basis.slot_dim(slot);
    std::int64_t left = 1;
    for (int k = 0; k < slot; ++k) left *= basis.slot_dim(k);
    const std::int64_t block = left * d;

    std::vector<Eigen::Triplet<Complex>> trips;
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
            if (local(r, c) != Complex(0.0, 0.0))
                for (std::int64_t outer = 0; outer < dim / block; ++outer)
                    for (std::int64_t inner = 0; inner < left; ++inner)
                        trips.emplace_back(outer * block + r * left + inner,
                                           outer * block + c * left + inner, local(r, c));
    SparseMatrix out(dim, dim);
    out.setFromTriplets(trips.begin(), trips.end());
    out.makeCompressed();
    return out;
}
}  // namespace

SparseMatrix embed_spin_sparse(const ComplexMatrix& local, int spin,
                               const CompositeBasis& basis) {
    if (spin < 0 || spin >= basis.n_spins)
        throw std::out_of_range("embed_spin_sparse: spin index out of range");
    return embed_sparse_impl(local, spin, basis);
}

SparseMatrix embed_mode_sparse(const ComplexMatrix& local, int mode,
                               const CompositeBasis& basis) {
    if (mode < 0 || mode >= basis.n_modes)
        throw std::out_of_range("embed_mode_sparse: mode index out of range");
    return embed_sparse_impl(local, basis.n_spins + mode, basis);
}

double hermiticity_defect(const ComplexMatrix& a) {
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
    return a.rows() == a.cols() && hermiticity_defect(a) < tol;
}

Complex expectation(const ComplexMatrix& op, const StateVector& psi) {
    if (op.rows() != psi.amps.size() || op.cols() != psi.amps.size())
        throw std::invalid_argument("expectation: dimension mismatch");
    return psi.amps.dot(op * psi.amps);
}

Complex expectation(const SparseMatrix& op, const StateVector& psi) {
    if (op.rows() != psi.amps.size() || op.cols() != psi.amps.size())
        throw std::invalid_argument("expectation: dimension mismatch");
    return psi.amps.dot(op * psi.amps);
}

double real_expectation(const ComplexMatrix& op, const StateVector& psi) {
    if (!is_hermitian(op))
        throw std::invalid_argument("real_expectation: operator is not Hermitian");
    return expectation(op, psi).real();
}

double real_expectation(const SparseMatrix& op, const StateVector& psi) {
    const Complex v = expectation(op, psi);
    if (std::abs(v.imag()) > 1e-9 * std::max(1.0, std::abs(v.real())))
        throw std::runtime_error("real_expectation: expectation value is not real");
    return v.real();
}

double fidelity(const StateVector& psi1, const StateVector& psi2) {
    if (psi1.basis != psi2.basis || psi1.amps.size() != psi2.amps.size())
        throw std::invalid_argument("fidelity: states live in different bases");
    const Complex overlap = psi1.amps.dot(psi2.amps);
    return std::norm(overlap);
}

double spectral_norm(const ComplexMatrix& a) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace polarion
