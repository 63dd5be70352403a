#include <doctest.h>

#include "polarion/bounds.hpp"

using namespace polarion;

TEST_CASE("displacement characteristic polynomial recursion") {
    CHECK(displacement_charpoly(0) == std::vector<long long>{1});
    CHECK(displacement_charpoly(1) == std::vector<long long>{0, -1});
    // D_2 = lambda^2 - 1
    CHECK(displacement_charpoly(2) == std::vector<long long>{-1, 0, 1});
    // D_3 = -lambda^3 + 3 lambda
    CHECK(displacement_charpoly(3) == std::vector<long long>{0, 3, 0, -1});
    CHECK_THROWS_AS(displacement_charpoly(-1), std::invalid_argument);
    CHECK_THROWS_AS(displacement_charpoly(30), std::invalid_argument);
}

TEST_CASE("largest zeros") {
    CHECK(displacement_largest_zero(3) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
    // root-finder oracle: sqrt(5 + sqrt 10)
    CHECK(displacement_largest_zero(5) ==
          doctest::Approx(2.8569700138728056).epsilon(1e-12));
}

TEST_CASE("recursion matches the Jacobi characteristic polynomial") {
    // Evaluate the exact-integer recursion coefficients at integer points and
    // compare against (-1)^n det(x I - J_n) computed numerically.
    for (int n = 1; n <= 12; ++n) {
        const auto coeffs = displacement_charpoly(n);
        RealMatrix jacobi = RealMatrix::Zero(n, n);
        for (int k = 1; k < n; ++k) {
            jacobi(k - 1, k) = std::sqrt(static_cast<double>(k));
            jacobi(k, k - 1) = jacobi(k - 1, k);
        }
        for (double x : {-3.0, -1.0, 0.0, 1.0, 2.0, 3.0}) {
            double poly = 0.0, pw = 1.0;
            for (long long c : coeffs) {
                poly += c * pw;
                pw *= x;
            }
            const RealMatrix shifted = x * RealMatrix::Identity(n, n) - jacobi;
            const double det = shifted.determinant() * (n % 2 == 0 ? 1.0 : -1.0);
            CHECK(poly == doctest::Approx(det).epsilon(1e-9));
        }
    }
}

TEST_CASE("largest zero stays below the closed-form bound") {
    for (int m = 2; m <= 50; ++m)
        CHECK(displacement_largest_zero(m) <= 2.0 * std::sqrt(m - 1.0) + 1e-12);
}

TEST_CASE("norm bound closed forms") {
    HolsteinParams p{1.0, 1.0, 1.0, 2, 1};
    CHECK(holstein_norm_bound(p).reported == doctest::Approx(3.0).epsilon(1e-15));

    HolsteinParams q{1.0, 0.3, 0.25, 2, 4};
    CHECK(holstein_norm_bound(q).reported ==
          doctest::Approx(1.0 + 2.0 * 0.3 * 2.0 * std::sqrt(3.0) + 2.0).epsilon(1e-12));
    CHECK(holstein_norm_bound(q).verified > holstein_norm_bound(q).reported);
}

TEST_CASE("gate count bound") {
    HolsteinParams p{1.0, 0.0, 0.0, 2, 1};

    SUBCASE("hand-computed value") {
        CHECK(gate_count_bound(p, 1.0, 0.01, 1) == 3898);
    }

    SUBCASE("doubling time scales as 2^{3/2} at k = 1") {
        const double ratio = static_cast<double>(gate_count_bound(p, 20.0, 0.01)) /
                             static_cast<double>(gate_count_bound(p, 10.0, 0.01));
        CHECK(ratio == doctest::Approx(std::pow(2.0, 1.5)).epsilon(1e-3));
    }

    SUBCASE("polynomial growth in the site count") {
        // straight line on log-log: consecutive doublings scale identically
        HolsteinParams a{1.0, 0.5, 0.5, 4, 3};
        HolsteinParams b = a, c = a;
        b.n_sites = 8;
        c.n_sites = 16;
        const double r1 = std::log(static_cast<double>(gate_count_bound(b, 5.0, 0.01))) -
                          std::log(static_cast<double>(gate_count_bound(a, 5.0, 0.01)));
        const double r2 = std::log(static_cast<double>(gate_count_bound(c, 5.0, 0.01))) -
                          std::log(static_cast<double>(gate_count_bound(b, 5.0, 0.01)));
        CHECK(r1 == doctest::Approx(r2).epsilon(0.05));
    }

    SUBCASE("monotonicity") {
        HolsteinParams a{1.0, 0.5, 0.5, 3, 3};
        CHECK(gate_count_bound(a, 2.0, 0.01) <= gate_count_bound(a, 4.0, 0.01));
        HolsteinParams more_sites = a;
        more_sites.n_sites = 5;
        CHECK(gate_count_bound(a, 2.0, 0.01) <= gate_count_bound(more_sites, 2.0, 0.01));
        HolsteinParams more_bosons = a;
        more_bosons.cutoff = 5;
        CHECK(gate_count_bound(a, 2.0, 0.01) <= gate_count_bound(more_bosons, 2.0, 0.01));
        CHECK(gate_count_bound(a, 2.0, 0.001) >= gate_count_bound(a, 2.0, 0.01));
    }

    SUBCASE("argument validation") {
        CHECK_THROWS_AS(gate_count_bound(p, 1.0, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(gate_count_bound(p, 1.0, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(gate_count_bound(p, 1.0, 0.01, 0), std::invalid_argument);
        CHECK_THROWS_AS(gate_count_bound(p, 0.0, 0.01), std::invalid_argument);
    }
}

TEST_CASE("bound report carries its inputs") {
    HolsteinParams p{1.0, 0.3, 0.25, 2, 2};
    const BoundReport r = bound_report(p, 2.0, 0.05, 1);
    CHECK(r.gate_count == gate_count_bound(p, 2.0, 0.05, 1));
    CHECK(r.norm.reported > 0.0);
    CHECK(r.epsilon == 0.05);
    CHECK(r.fractal_depth == 1);
}
