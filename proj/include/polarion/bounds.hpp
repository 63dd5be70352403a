#pragma once

#include <cstdint>
#include <vector>

#include "polarion/holstein.hpp"

namespace polarion {

/// Exact integer coefficients (ascending powers of lambda) of the recursion
///   D_0 = 1,  D_1 = -lambda,  D_n = -lambda D_{n-1} - (n-1) D_{n-2},
/// a rescaled Hermite family whose zeros are the eigenvalues of the
/// truncated displacement operator b + b^dag.
std::vector<long long> displacement_charpoly(int n);

/// Largest zero of D_n, computed as the top eigenvalue of the n x n Jacobi
/// matrix with off-diagonal sqrt(1)..sqrt(n-1).
double displacement_largest_zero(int n);

/// Closed-form norm estimates for the assembled Holstein Hamiltonian.
/// `reported` is the published expression
///   |h|(N-1) + 2|g| N sqrt(M-1) + omega0 N M;
/// `verified` replaces sqrt(M-1) with sqrt(M), which dominates the true
/// spectral norm for a maximum-occupation-M truncation.
struct NormBound {
    double reported = 0.0;
    double verified = 0.0;
};

NormBound holstein_norm_bound(const HolsteinParams& p);

struct BoundReport {
    NormBound norm;
    std::uint64_t gate_count = 0;
    HolsteinParams params;
    double time = 0.0;
    double epsilon = 0.0;
    int fractal_depth = 1;
};

/// Gate-count estimate
///   N_g <= 3 * 5^{2k} [3 (|h|(N-1) + 2|g| N sqrt(M-1) + omega0 N M) t]^{1+1/2k}
///          / eps^{1/2k},
/// rounded up to an integer. Requires eps in (0,1), k >= 1, t > 0.
std::uint64_t gate_count_bound(const HolsteinParams& p, double t, double eps, int k = 1);

BoundReport bound_report(const HolsteinParams& p, double t, double eps, int k = 1);

}  // namespace polarion
