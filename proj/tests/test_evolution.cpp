#include <doctest.h>

#include "polarion/evolution.hpp"
#include "polarion/holstein.hpp"

using namespace polarion;

TEST_CASE("exact evolution basics") {
    CompositeBasis basis(1, 0, 1);
    const StateVector up = basis_state(basis, {});

    SUBCASE("t = 0 is the identity") {
        const StateVector out = exact_evolve(pauli(Pauli::X), up, 0.0);
        CHECK((out.amps - up.amps).norm() < 1e-15);
    }

    SUBCASE("diagonal Hamiltonian applies phases") {
        ComplexMatrix h = ComplexMatrix::Zero(2, 2);
        h(1, 1) = 0.7;
        StateVector psi(ComplexVector::Constant(2, Complex(M_SQRT1_2, 0)), basis);
        const StateVector out = exact_evolve(h, psi, 2.0);
        CHECK(std::abs(out.amps[0] - Complex(M_SQRT1_2, 0)) < 1e-12);
        CHECK(std::abs(out.amps[1] - M_SQRT1_2 * std::exp(Complex(0, -1.4))) < 1e-12);
    }

    SUBCASE("non-Hermitian input is rejected") {
        CHECK_THROWS_AS(exact_evolve(pauli(Pauli::Plus), up, 1.0), std::invalid_argument);
    }
}

TEST_CASE("exact evolution conserves norm and energy") {
    HolsteinParams p{1.0, 0.3, 0.5, 2, 2};
    const CompositeBasis basis = holstein_basis(p);
    const ComplexMatrix h = build_hamiltonian(p, basis);
    const StateVector psi0 = initial_state(p, basis);
    const double e0 = real_expectation(h, psi0);
    for (double t : {1.0, 5.0, 20.0}) {
        const StateVector psi = exact_evolve(h, psi0, t);
        CHECK(std::abs(psi.norm() - 1.0) < 1e-10);
        CHECK(std::abs(real_expectation(h, psi) - e0) < 1e-8);
    }
}

TEST_CASE("trotter evolution is exact for commuting terms") {
    CompositeBasis basis(2, 0, 1);
    const ComplexMatrix z0 = embed_spin(pauli(Pauli::Z), 0, basis);
    const ComplexMatrix z1 = embed_spin(pauli(Pauli::Z), 1, basis);
    ComplexVector amps(4);
    amps << 0.5, 0.5, 0.5, 0.5;
    const StateVector psi0(amps, basis);
    TrotterPlan plan{{z0, 0.6 * z1}, 3.0, 2, true};
    const StateVector approx = trotter_evolve(plan, psi0);
    const StateVector exact = exact_evolve(z0 + 0.6 * z1, psi0, 3.0);
    CHECK((approx.amps - exact.amps).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(std::abs(approx.norm() - 1.0) < 1e-10);
}

TEST_CASE("doubling the step count does not increase the loss") {
    HolsteinParams p{0.002, 0.3 * 0.002, 0.002 / 4.0, 2, 3};
    const CompositeBasis basis = holstein_basis(p);
    const auto parts = decompose(p, basis);
    const TrotterPropagator trotter({parts[0], parts[1], parts[2]});
    const HermitianPropagator exact(parts[0] + parts[1] + parts[2]);
    const StateVector psi0 = initial_state(p, basis);
    const double t = 1500.0;
    const ComplexVector psi_e = exact.apply(psi0.amps, t);
    double prev = 2.0;
    for (int r : {2, 4, 8}) {
        const double loss = 1.0 - std::norm(psi_e.dot(trotter.evolve(psi0, t, r).amps));
        CHECK(loss < prev + 1e-12);
        prev = loss;
    }
}

TEST_CASE("symmetric splitting converges at fourth order in the fidelity loss") {
    // State error of the symmetric splitting is O(t^3/r^2); the fidelity
    // loss is its square, so log(1-F) vs log r has slope -4.
    HolsteinParams p{0.002, 0.0006, 0.0005, 2, 3};
    const CompositeBasis basis = holstein_basis(p);
    const auto parts = decompose(p, basis);
    const TrotterPropagator trotter({parts[0], parts[1], parts[2]});
    const HermitianPropagator exact(parts[0] + parts[1] + parts[2]);
    const StateVector psi0 = initial_state(p, basis);
    const double t = 1000.0;
    const ComplexVector psi_e = exact.apply(psi0.amps, t);

    std::vector<double> log_r, log_loss;
    for (int r : {2, 4, 8, 16}) {
        const double loss = 1.0 - std::norm(psi_e.dot(trotter.evolve(psi0, t, r).amps));
        log_r.push_back(std::log(static_cast<double>(r)));
        log_loss.push_back(std::log(loss));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = log_r.size();
    for (std::size_t k = 0; k < log_r.size(); ++k) {
        sx += log_r[k];
        sy += log_loss[k];
        sxx += log_r[k] * log_r[k];
        sxy += log_r[k] * log_loss[k];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(slope == doctest::Approx(-4.0).epsilon(0.15));

    // plain (first-order) ordering: state error O(t^2/r), loss slope -2
    std::vector<double> log_loss1;
    for (int r : {2, 4, 8, 16}) {
        const double loss =
            1.0 - std::norm(psi_e.dot(trotter.evolve(psi0, t, r, false).amps));
        log_loss1.push_back(std::log(loss));
    }
    sy = sxy = 0;
    for (std::size_t k = 0; k < log_r.size(); ++k) {
        sy += log_loss1[k];
        sxy += log_r[k] * log_loss1[k];
    }
    const double slope1 = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(slope1 == doctest::Approx(-2.0).epsilon(0.15));
}

TEST_CASE("exact evolution cross-validates against the fixed-step integrator") {
    HolsteinParams p{1.0, 0.3, 0.5, 2, 2};
    const CompositeBasis basis = holstein_basis(p);
    const ComplexMatrix h = build_hamiltonian(p, basis);
    const StateVector psi0 = initial_state(p, basis);
    const double t = 10.0;

    const StateVector via_eigen = exact_evolve(h, psi0, t);

    TimeDependentHamiltonian tdh;
    tdh.terms.push_back({SparseMatrix(h.sparseView()), TimeCoeff::constant(1.0)});
    IntegrationOptions opt;
    opt.dt = 0.002;
    const IntegrationResult res = integrate_tdse(tdh, psi0, 0.0, t, opt);

    CHECK((via_eigen.amps - res.final_state.amps).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(res.max_renorm_drift < 1e-9);
}

TEST_CASE("integrator handles the zero Hamiltonian") {
    CompositeBasis basis(1, 1, 2);
    const StateVector psi0 = basis_state(basis, {});
    TimeDependentHamiltonian tdh;
    tdh.terms.push_back(
        {SparseMatrix(psi0.amps.size(), psi0.amps.size()), TimeCoeff::constant(0.0)});
    IntegrationOptions opt;
    opt.dt = 0.5;
    const IntegrationResult res = integrate_tdse(tdh, psi0, 0.0, 7.0, opt);
    CHECK((res.final_state.amps - psi0.amps).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("convergence gate flags a too-coarse step") {
    CompositeBasis basis(1, 0, 1);
    StateVector psi0 = basis_state(basis, {});
    TimeDependentHamiltonian tdh;
    tdh.terms.push_back({SparseMatrix(pauli(Pauli::X).sparseView()), TimeCoeff::constant(1.0)});
    IntegrationOptions opt;
    opt.dt = 0.5;  // coarse for a unit-frequency rotation over t = 40
    opt.verify_convergence = true;
    CHECK_THROWS_AS(integrate_tdse(tdh, psi0, 0.0, 40.0, opt), ConvergenceError);

    opt.dt = 0.01;
    const IntegrationResult res = integrate_tdse(tdh, psi0, 0.0, 40.0, opt);
    CHECK(res.convergence_error < 1e-6);
}

TEST_CASE("time coefficient forms and dense assembly") {
    const TimeCoeff c = TimeCoeff::sin_cos(2.0, 1.3, 0.4, 0.2);
    CHECK(c(0.7) == doctest::Approx(2.0 * std::sin(1.3 * 0.7) * std::cos(0.4 * 0.7 + 0.2)));
    const TimeCoeff s = TimeCoeff::sin_sin(0.5, 1.3, 0.4, -0.1);
    CHECK(s(1.1) == doctest::Approx(0.5 * std::sin(1.3 * 1.1) * std::sin(0.4 * 1.1 - 0.1)));

    TimeDependentHamiltonian tdh;
    tdh.terms.push_back({SparseMatrix(pauli(Pauli::X).sparseView()), c});
    tdh.terms.push_back({SparseMatrix(pauli(Pauli::Z).sparseView()), s});
    const ComplexMatrix dense = tdh.dense_at(0.9);
    CHECK((dense - (c(0.9) * pauli(Pauli::X) + s(0.9) * pauli(Pauli::Z)))
              .cwiseAbs()
              .maxCoeff() < 1e-15);
    CHECK(tdh.max_frequency() == doctest::Approx(1.7));
}

TEST_CASE("trotter plan validation") {
    CompositeBasis basis(1, 0, 1);
    const StateVector psi0 = basis_state(basis, {});
    CHECK_THROWS_AS(trotter_evolve({{}, 1.0, 1, true}, psi0), std::invalid_argument);
    CHECK_THROWS_AS(trotter_evolve({{pauli(Pauli::X)}, 1.0, 0, true}, psi0),
                    std::invalid_argument);
    CHECK_THROWS_AS(trotter_evolve({{pauli(Pauli::Plus)}, 1.0, 1, true}, psi0),
                    std::invalid_argument);
}
