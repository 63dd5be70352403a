#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "polarion/operators.hpp"

namespace polarion {

struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Cached eigendecomposition of a Hermitian matrix, applying e^{-iHt} as two
/// dense mat-vec products per call.
class HermitianPropagator {
public:
    explicit HermitianPropagator(const ComplexMatrix& h, double herm_tol = 1e-10);

    ComplexVector apply(const ComplexVector& psi, double t) const;
    const RealVector& eigenvalues() const { return evals_; }
    std::int64_t dimension() const { return evals_.size(); }

private:
    RealVector evals_;
    ComplexMatrix evecs_;
};

/// psi(t) = e^{-iHt} psi0 via eigendecomposition. H must be Hermitian.
StateVector exact_evolve(const ComplexMatrix& h, const StateVector& psi0, double t);

/// Ordered product-formula plan. With symmetric=true one step applies the
/// terms forward then reversed, each for t/2r; otherwise forward only, each
/// for t/r.
struct TrotterPlan {
    std::vector<ComplexMatrix> terms;
    double total_time = 0.0;
    int steps = 1;
    bool symmetric = true;
};

/// Caches the term eigendecompositions so one set of terms can be reused
/// across many (t, r) evaluations.
class TrotterPropagator {
public:
    explicit TrotterPropagator(const std::vector<ComplexMatrix>& terms);

    StateVector evolve(const StateVector& psi0, double t, int r, bool symmetric = true) const;
    int term_count() const { return static_cast<int>(props_.size()); }

private:
    std::vector<HermitianPropagator> props_;
};

StateVector trotter_evolve(const TrotterPlan& plan, const StateVector& psi0);

/// Scalar coefficient c(t) of one Hamiltonian term. The oscillating kinds
/// cover bichromatic drives: amp * sin(delta t) * cos/sin(nu t + phase).
struct TimeCoeff {
    enum class Kind { Constant, SinCos, SinSin };
    Kind kind = Kind::Constant;
    double amp = 1.0;
    double delta = 0.0;
    double nu = 0.0;
    double phase = 0.0;

    double operator()(double t) const {
        switch (kind) {
            case Kind::SinCos: return amp * std::sin(delta * t) * std::cos(nu * t + phase);
            case Kind::SinSin: return amp * std::sin(delta * t) * std::sin(nu * t + phase);
            case Kind::Constant: break;
        }
        return amp;
    }

    static TimeCoeff constant(double amp) { return {Kind::Constant, amp, 0.0, 0.0, 0.0}; }
    static TimeCoeff sin_cos(double amp, double delta, double nu, double phase = 0.0) {
        return {Kind::SinCos, amp, delta, nu, phase};
    }
    static TimeCoeff sin_sin(double amp, double delta, double nu, double phase = 0.0) {
        return {Kind::SinSin, amp, delta, nu, phase};
    }
};

struct TimeTerm {
    SparseMatrix mat;
    TimeCoeff coeff;
};

/// H(t) = sum_k c_k(t) A_k with sparse Hermitian A_k and real c_k.
struct TimeDependentHamiltonian {
    std::vector<TimeTerm> terms;

    std::int64_t dimension() const { return terms.empty() ? 0 : terms.front().mat.rows(); }

    /// Largest oscillation frequency appearing in any coefficient.
    double max_frequency() const;

    /// out = H(t) * in. `scratch` must have the same size as `in`.
    void apply(double t, const ComplexVector& in, ComplexVector& out,
               ComplexVector& scratch) const;

    ComplexMatrix dense_at(double t) const;
};

struct IntegrationOptions {
    double dt = 0.0;              // 0: derive from max_frequency
    int samples_per_period = 50;  // substeps per fastest oscillation
    double sample_interval = 0.0; // 0: keep only the final state
    bool verify_convergence = false;
    double convergence_tol = 1e-6;
    double renorm_tol = 1e-9;
};

struct IntegrationResult {
    StateVector final_state;
    std::vector<double> sample_times;
    std::vector<ComplexVector> samples;
    double max_renorm_drift = 0.0;
    double convergence_error = 0.0;
    long steps = 0;
};

/// Fixed-step 4th-order integration of i d/dt psi = H(t) psi over
/// [t_begin, t_begin + duration], with per-step renormalization. When
/// verify_convergence is set the run is repeated at half the step and the
/// final amplitudes compared; a gap above convergence_tol throws
/// ConvergenceError.
IntegrationResult integrate_tdse(const TimeDependentHamiltonian& h, const StateVector& psi0,
                                 double t_begin, double duration,
                                 const IntegrationOptions& opt = {});

}  // namespace polarion
