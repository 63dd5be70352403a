#include "polarion/evolution.hpp"

#include <Eigen/Eigenvalues>

namespace polarion {

namespace {
constexpr Complex kI{0.0, 1.0};
}

HermitianPropagator::HermitianPropagator(const ComplexMatrix& h, double herm_tol) {
    if (h.rows() != h.cols())
        throw std::invalid_argument("HermitianPropagator: matrix is not square");
    if (hermiticity_defect(h) > herm_tol)
        throw std::invalid_argument("HermitianPropagator: matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("HermitianPropagator: eigendecomposition failed");
    evals_ = solver.eigenvalues();
    evecs_ = solver.eigenvectors();
}

ComplexVector HermitianPropagator::apply(const ComplexVector& psi, double t) const {
    if (psi.size() != evals_.size())
        throw std::invalid_argument("HermitianPropagator: state dimension mismatch");
    ComplexVector coeffs = evecs_.adjoint() * psi;
    for (Eigen::Index k = 0; k < coeffs.size(); ++k)
        coeffs[k] *= std::exp(-kI * evals_[k] * t);
    return evecs_ * coeffs;
}

StateVector exact_evolve(const ComplexMatrix& h, const StateVector& psi0, double t) {
    HermitianPropagator prop(h);
    return StateVector(prop.apply(psi0.amps, t), psi0.basis);
}

TrotterPropagator::TrotterPropagator(const std::vector<ComplexMatrix>& terms) {
    if (terms.empty())
        throw std::invalid_argument("TrotterPropagator: need at least one term");
    props_.reserve(terms.size());
    for (const auto& term : terms) props_.emplace_back(term);
    for (const auto& p : props_)
        if (p.dimension() != props_.front().dimension())
            throw std::invalid_argument("TrotterPropagator: term dimensions differ");
}

StateVector TrotterPropagator::evolve(const StateVector& psi0, double t, int r,
                                      bool symmetric) const {
    if (r < 1) throw std::invalid_argument("TrotterPropagator: steps must be >= 1");
    if (psi0.amps.size() != props_.front().dimension())
        throw std::invalid_argument("TrotterPropagator: state dimension mismatch");
    const double tau = symmetric ? t / (2.0 * r) : t / r;
    ComplexVector v = psi0.amps;
    for (int step = 0; step < r; ++step) {
        for (const auto& p : props_) v = p.apply(v, tau);
        if (symmetric)
            for (auto it = props_.rbegin(); it != props_.rend(); ++it) v = it->apply(v, tau);
    }
    return StateVector(std::move(v), psi0.basis);
}

StateVector trotter_evolve(const TrotterPlan& plan, const StateVector& psi0) {
    if (plan.total_time < 0.0)
        throw std::invalid_argument("trotter_evolve: negative total time");
    TrotterPropagator prop(plan.terms);
    return prop.evolve(psi0, plan.total_time, plan.steps, plan.symmetric);
}

double TimeDependentHamiltonian::max_frequency() const {
    double f = 0.0;
    for (const auto& term : terms)
        if (term.coeff.kind != TimeCoeff::Kind::Constant)
            f = std::max(f, std::abs(term.coeff.delta) + std::abs(term.coeff.nu));
    return f;
}

void TimeDependentHamiltonian::apply(double t, const ComplexVector& in, ComplexVector& out,
                                     ComplexVector& scratch) const {
    out.setZero();
    for (const auto& term : terms) {
        const double c = term.coeff(t);
        if (c == 0.0) continue;
        scratch.noalias() = term.mat * in;
        out += c * scratch;
    }
}

ComplexMatrix TimeDependentHamiltonian::dense_at(double t) const {
    const std::int64_t dim = dimension();
    ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
    for (const auto& term : terms) out += term.coeff(t) * ComplexMatrix(term.mat);
    return out;
}

namespace {

struct Rk4Run {
    ComplexVector final;
    double max_drift = 0.0;
    long steps = 0;
};

Rk4Run rk4_integrate(const TimeDependentHamiltonian& h, const ComplexVector& psi0,
                     double t_begin, double duration, double dt_target,
                     double sample_interval, std::vector<double>* sample_times,
                     std::vector<ComplexVector>* samples) {
    const long n = std::max<long>(1, static_cast<long>(std::ceil(duration / dt_target)));
    const double dt = duration / static_cast<double>(n);
    long stride = 0;
    if (sample_interval > 0.0)
        stride = std::max<long>(1, static_cast<long>(std::llround(sample_interval / dt)));

    const Eigen::Index dim = psi0.size();
    ComplexVector v = psi0;
    ComplexVector k1(dim), k2(dim), k3(dim), k4(dim), stage(dim), scratch(dim);

    Rk4Run run;
    run.steps = n;
    if (stride > 0 && sample_times) {
        sample_times->push_back(t_begin);
        samples->push_back(v);
    }
    for (long step = 0; step < n; ++step) {
        const double t = t_begin + step * dt;
        h.apply(t, v, k1, scratch);
        stage = v - (kI * 0.5 * dt) * k1;
        h.apply(t + 0.5 * dt, stage, k2, scratch);
        stage = v - (kI * 0.5 * dt) * k2;
        h.apply(t + 0.5 * dt, stage, k3, scratch);
        stage = v - (kI * dt) * k3;
        h.apply(t + dt, stage, k4, scratch);
        v -= (kI * dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        const double norm = v.norm();
        run.max_drift = std::max(run.max_drift, std::abs(norm - 1.0));
        v /= norm;

        if (stride > 0 && sample_times && ((step + 1) % stride == 0 || step + 1 == n)) {
            sample_times->push_back(t_begin + (step + 1) * dt);
            samples->push_back(v);
        }
    }
    run.final = std::move(v);
    return run;
}

}  // namespace

IntegrationResult integrate_tdse(const TimeDependentHamiltonian& h, const StateVector& psi0,
                                 double t_begin, double duration,
                                 const IntegrationOptions& opt) {
    if (duration < 0.0) throw std::invalid_argument("integrate_tdse: negative duration");
    if (h.dimension() != psi0.amps.size())
        throw std::invalid_argument("integrate_tdse: dimension mismatch");

    double dt = opt.dt;
    if (dt <= 0.0) {
        const double f = h.max_frequency();
        if (f <= 0.0)
            throw std::invalid_argument(
                "integrate_tdse: no oscillating terms; an explicit dt is required");
        dt = (2.0 * M_PI / f) / opt.samples_per_period;
    }

    IntegrationResult result;
    if (duration == 0.0) {
        result.final_state = psi0;
        return result;
    }

    Rk4Run run = rk4_integrate(h, psi0.amps, t_begin, duration, dt, opt.sample_interval,
                               &result.sample_times, &result.samples);
    if (run.max_drift > opt.renorm_tol)
        throw ConvergenceError("integrate_tdse: renormalization drift " +
                               std::to_string(run.max_drift) + " exceeds tolerance; dt too coarse");

    if (opt.verify_convergence) {
        Rk4Run half = rk4_integrate(h, psi0.amps, t_begin, duration, dt / 2.0, 0.0, nullptr,
                                    nullptr);
        result.convergence_error = (run.final - half.final).cwiseAbs().maxCoeff();
        if (result.convergence_error > opt.convergence_tol)
            throw ConvergenceError("integrate_tdse: halving dt changed final amplitudes by " +
                                   std::to_string(result.convergence_error));
    }

    result.final_state = StateVector(std::move(run.final), psi0.basis);
    result.max_renorm_drift = run.max_drift;
    result.steps = run.steps;
    return result;
}

}  // namespace polarion
