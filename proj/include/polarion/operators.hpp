#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "polarion/basis.hpp"

namespace polarion {

// Row-major storage: the time stepper is dominated by mat-vec products.
using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

enum class Pauli { X, Y, Z, Plus, Minus };

/// 2x2 Pauli or ladder matrix. Convention: index 0 is spin-up.
ComplexMatrix pauli(Pauli which);

/// Bosonic annihilator on a single mode truncated at occupation M,
/// i.e. the (M+1)x(M+1) matrix with b[n-1,n] = sqrt(n). Requires M >= 1.
ComplexMatrix boson_annihilator(int cutoff);

/// Number operator diag(0..M).
ComplexMatrix boson_number(int cutoff);

/// Position-like quadrature b + b^dag.
ComplexMatrix boson_position(int cutoff);

/// Momentum-like quadrature i(b^dag - b).
ComplexMatrix boson_momentum(int cutoff);

/// Kronecker embedding of a local operator into the composite space, with
/// identities on every other slot. Slots follow the basis ordering
/// (spins then modes); the local dimension must match the slot.
ComplexMatrix embed(const ComplexMatrix& local, int slot, const CompositeBasis& basis);

/// Convenience wrappers addressing spins and modes separately.
ComplexMatrix embed_spin(const ComplexMatrix& local, int spin, const CompositeBasis& basis);
ComplexMatrix embed_mode(const ComplexMatrix& local, int mode, const CompositeBasis& basis);

/// Sparse variants for operators used inside time-stepping loops.
SparseMatrix embed_spin_sparse(const ComplexMatrix& local, int spin, const CompositeBasis& basis);
SparseMatrix embed_mode_sparse(const ComplexMatrix& local, int mode, const CompositeBasis& basis);

/// max_ij |A - A^dag|.
double hermiticity_defect(const ComplexMatrix& a);

bool is_hermitian(const ComplexMatrix& a, double tol = 1e-12);

/// <psi|A|psi>.
Complex expectation(const ComplexMatrix& op, const StateVector& psi);
Complex expectation(const SparseMatrix& op, const StateVector& psi);

/// <psi|A|psi> for Hermitian A; throws if A fails the hermiticity check,
/// returns the real part otherwise.
double real_expectation(const ComplexMatrix& op, const StateVector& psi);
double real_expectation(const SparseMatrix& op, const StateVector& psi);

/// |<psi1|psi2>|^2. Requires matching bases.
double fidelity(const StateVector& psi1, const StateVector& psi2);

/// Largest singular value (spectral norm) of a Hermitian matrix.
double spectral_norm(const ComplexMatrix& a);

}  // namespace polarion
