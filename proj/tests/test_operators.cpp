#include <doctest.h>

#include "polarion/operators.hpp"

using namespace polarion;

namespace {
double mat_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}
}  // namespace

TEST_CASE("boson annihilator matches the Fock representation") {
    const ComplexMatrix b1 = boson_annihilator(1);
    ComplexMatrix expect(2, 2);
    expect << 0, 1, 0, 0;
    CHECK(mat_diff(b1, expect) == 0.0);

    const ComplexMatrix b2 = boson_annihilator(2);
    CHECK(b2(0, 1).real() == doctest::Approx(1.0));
    CHECK(b2(1, 2).real() == doctest::Approx(std::sqrt(2.0)));
    CHECK(spectral_norm(boson_number(2)) == doctest::Approx(2.0));

    CHECK_THROWS_AS(boson_annihilator(0), std::invalid_argument);
}

TEST_CASE("largest displacement eigenvalue at cutoff 3") {
    // eigensolver oracle: sqrt(3 + sqrt 6)
    CHECK(spectral_norm(boson_position(3)) ==
          doctest::Approx(2.3344142183389773).epsilon(1e-12));
}

TEST_CASE("[b, bdag] = 1 below the truncation level") {
    const int cutoff = 4;
    const ComplexMatrix b = boson_annihilator(cutoff);
    const ComplexMatrix comm = b * b.adjoint() - b.adjoint() * b;
    for (int r = 0; r < cutoff; ++r)
        for (int c = 0; c < cutoff; ++c)
            CHECK(std::abs(comm(r, c) - (r == c ? 1.0 : 0.0)) < 1e-14);
    // the top Fock level violates it
    CHECK(std::abs(comm(cutoff, cutoff) - 1.0) > 1.0);
}

TEST_CASE("pauli matrices") {
    ComplexMatrix x(2, 2);
    x << 0, 1, 1, 0;
    CHECK(mat_diff(pauli(Pauli::X), x) == 0.0);

    const ComplexMatrix anti = pauli(Pauli::Plus) * pauli(Pauli::Minus) +
                               pauli(Pauli::Minus) * pauli(Pauli::Plus);
    CHECK(mat_diff(anti, ComplexMatrix::Identity(2, 2)) < 1e-15);

    const ComplexMatrix projector = (pauli(Pauli::Z) + ComplexMatrix::Identity(2, 2)) / 2.0;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(projector);
    CHECK(solver.eigenvalues()(0) == doctest::Approx(0.0));
    CHECK(solver.eigenvalues()(1) == doctest::Approx(1.0));

    const ComplexMatrix xy = pauli(Pauli::X) * pauli(Pauli::Y);
    CHECK(mat_diff(xy, Complex(0, 1) * pauli(Pauli::Z)) < 1e-15);
}

TEST_CASE("embedding") {
    CompositeBasis basis(2, 1, 2);
    const ComplexMatrix z0 = embed_spin(pauli(Pauli::Z), 0, basis);
    const ComplexMatrix z1 = embed_spin(pauli(Pauli::Z), 1, basis);
    CHECK(mat_diff(z0 * z1, z1 * z0) < 1e-15);

    const ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);
    CHECK(mat_diff(embed_spin(id2, 1, basis),
                   ComplexMatrix::Identity(basis.dimension(), basis.dimension())) < 1e-15);

    const StateVector vac = basis_state(basis, {});
    CHECK(std::abs(expectation(embed_mode(boson_number(2), 0, basis), vac)) < 1e-15);

    // embedding preserves the spectral norm
    for (const ComplexMatrix& local : {pauli(Pauli::X), boson_position(2).eval()}) {
        const int slot = local.rows() == 2 ? 0 : 2;
        CHECK(spectral_norm(embed(local, slot, basis)) ==
              doctest::Approx(spectral_norm(local)).epsilon(1e-12));
    }

    CHECK_THROWS_AS(embed_spin(pauli(Pauli::X), 2, basis), std::out_of_range);
    CHECK_THROWS_AS(embed_mode(pauli(Pauli::X), 0, basis), std::invalid_argument);
    CHECK_THROWS_AS(embed(boson_position(2), 0, basis), std::invalid_argument);
}

TEST_CASE("sparse embedding agrees with dense") {
    CompositeBasis basis(2, 2, 2);
    const SparseMatrix s = embed_mode_sparse(boson_position(2), 1, basis);
    const ComplexMatrix d = embed_mode(boson_position(2), 1, basis);
    CHECK(mat_diff(ComplexMatrix(s), d) < 1e-15);
    const SparseMatrix sx = embed_spin_sparse(pauli(Pauli::Y), 1, basis);
    CHECK(mat_diff(ComplexMatrix(sx), embed_spin(pauli(Pauli::Y), 1, basis)) < 1e-15);
}

TEST_CASE("expectation values") {
    CompositeBasis basis(1, 1, 2);
    const StateVector up = basis_state(basis, {});
    CHECK(real_expectation(embed_spin(pauli(Pauli::Z), 0, basis), up) ==
          doctest::Approx(1.0));
    CHECK(std::abs(expectation(embed_mode(boson_position(2), 0, basis), up)) < 1e-15);
    CHECK(real_expectation(
              ComplexMatrix(ComplexMatrix::Identity(basis.dimension(), basis.dimension())),
              up) == doctest::Approx(1.0));

    CHECK_THROWS_AS(expectation(ComplexMatrix::Identity(3, 3).eval(), up),
                    std::invalid_argument);
    CHECK_THROWS_AS(real_expectation(embed_spin(pauli(Pauli::Plus), 0, basis), up),
                    std::invalid_argument);
}

TEST_CASE("fidelity") {
    CompositeBasis basis(1, 0, 1);
    const StateVector up = basis_state(basis, {});
    const StateVector down = basis_state(basis, {0});
    CHECK(fidelity(up, up) == doctest::Approx(1.0));
    CHECK(fidelity(up, down) == doctest::Approx(0.0));

    StateVector phased = up;
    phased.amps *= std::exp(Complex(0, 0.7));
    CHECK(fidelity(up, phased) == doctest::Approx(1.0));

    CompositeBasis other(1, 1, 1);
    CHECK_THROWS_AS(fidelity(up, basis_state(other, {})), std::invalid_argument);
}

TEST_CASE("hermiticity checks") {
    CHECK(is_hermitian(pauli(Pauli::Y)));
    CHECK_FALSE(is_hermitian(pauli(Pauli::Plus)));
    CHECK(hermiticity_defect(boson_position(3)) < 1e-12);
}
