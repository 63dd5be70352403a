#include "polarion/bounds.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

namespace polarion {

std::vector<long long> displacement_charpoly(int n) {
    if (n < 0) throw std::invalid_argument("displacement_charpoly: negative degree");
    if (n > 24)
        throw std::invalid_argument(
            "displacement_charpoly: exact integer coefficients overflow beyond degree 24");
    std::vector<long long> prev = {1};        // D_0
    if (n == 0) return prev;
    std::vector<long long> cur = {0, -1};     // D_1 = -lambda
    for (int k = 2; k <= n; ++k) {
        std::vector<long long> next(k + 1, 0);
        for (std::size_t j = 0; j < cur.size(); ++j) next[j + 1] -= cur[j];
        for (std::size_t j = 0; j < prev.size(); ++j) next[j] -= (k - 1) * prev[j];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

double displacement_largest_zero(int n) {
    if (n < 1) throw std::invalid_argument("displacement_largest_zero: degree must be >= 1");
    RealMatrix jacobi = RealMatrix::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const double v = std::sqrt(static_cast<double>(k));
        jacobi(k - 1, k) = v;
        jacobi(k, k - 1) = v;
    }
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(jacobi, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().maxCoeff();
}

NormBound holstein_norm_bound(const HolsteinParams& p) {
    p.validate();
    const double n = static_cast<double>(p.n_sites);
    const double m = static_cast<double>(p.cutoff);
    NormBound b;
    b.reported = std::abs(p.h) * (n - 1.0) + 2.0 * std::abs(p.g) * n * std::sqrt(m - 1.0) +
                 p.omega0 * n * m;
    b.verified = std::abs(p.h) * (n - 1.0) + 2.0 * std::abs(p.g) * n * std::sqrt(m) +
                 p.omega0 * n * m;
    return b;
}

std::uint64_t gate_count_bound(const HolsteinParams& p, double t, double eps, int k) {
    if (eps <= 0.0 || eps >= 1.0)
        throw std::invalid_argument("gate_count_bound: eps must lie in (0,1)");
    if (k < 1) throw std::invalid_argument("gate_count_bound: fractal depth must be >= 1");
    if (t <= 0.0) throw std::invalid_argument("gate_count_bound: time must be > 0");
    const NormBound nb = holstein_norm_bound(p);
    const double kk = static_cast<double>(k);
    const double value = 3.0 * std::pow(5.0, 2.0 * kk) *
                         std::pow(3.0 * nb.reported * t, 1.0 + 1.0 / (2.0 * kk)) /
                         std::pow(eps, 1.0 / (2.0 * kk));
    if (!(value >= 0.0) || value > static_cast<double>(std::numeric_limits<std::int64_t>::max()))
        throw std::overflow_error("gate_count_bound: bound does not fit an integer");
    return static_cast<std::uint64_t>(std::ceil(value));
}

BoundReport bound_report(const HolsteinParams& p, double t, double eps, int k) {
    BoundReport r;
    r.norm = holstein_norm_bound(p);
    r.gate_count = gate_count_bound(p, t, eps, k);
    r.params = p;
    r.time = t;
    r.epsilon = eps;
    r.fractal_depth = k;
    return r;
}

}  // namespace polarion
