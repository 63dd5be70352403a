#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace polarion {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Tensor-product basis of n_spins two-level systems followed by n_modes
/// bosonic modes truncated at occupation `cutoff` (mode dimension cutoff+1).
///
/// Index convention: little-endian with spins first. Spin 0 varies fastest,
/// then spin 1, ..., then mode 0, etc.
///   index = sum_i s_i 2^i + 2^n_spins * sum_m n_m (cutoff+1)^m
/// Spin value 0 is "up" (sigma_z = +1), spin value 1 is "down".
struct CompositeBasis {
    int n_spins = 0;
    int n_modes = 0;
    int cutoff = 0;  // maximum boson occupation per mode

    CompositeBasis() = default;
    CompositeBasis(int spins, int modes, int max_occupation)
        : n_spins(spins), n_modes(modes), cutoff(max_occupation) {
        if (spins < 0 || modes < 0)
            throw std::invalid_argument("CompositeBasis: negative slot count");
        if (modes > 0 && max_occupation < 1)
            throw std::invalid_argument("CompositeBasis: cutoff must be >= 1");
    }

    int mode_dim() const { return cutoff + 1; }

    std::int64_t dimension() const {
        std::int64_t d = 1;
        for (int i = 0; i < n_spins; ++i) d *= 2;
        for (int m = 0; m < n_modes; ++m) d *= mode_dim();
        return d;
    }

    int n_slots() const { return n_spins + n_modes; }

    /// Local dimension of slot k (slots: spins first, then modes).
    int slot_dim(int slot) const {
        if (slot < 0 || slot >= n_slots())
            throw std::out_of_range("CompositeBasis: slot out of range");
        return slot < n_spins ? 2 : mode_dim();
    }

    /// Decode a global index into per-slot occupations.
    std::vector<int> decode(std::int64_t index) const {
        if (index < 0 || index >= dimension())
            throw std::out_of_range("CompositeBasis: index out of range");
        std::vector<int> occ(n_slots());
        for (int k = 0; k < n_slots(); ++k) {
            const int d = slot_dim(k);
            occ[k] = static_cast<int>(index % d);
            index /= d;
        }
        return occ;
    }

    /// Encode per-slot occupations into a global index.
    std::int64_t encode(const std::vector<int>& occ) const {
        if (static_cast<int>(occ.size()) != n_slots())
            throw std::invalid_argument("CompositeBasis: occupation length mismatch");
        std::int64_t index = 0;
        std::int64_t stride = 1;
        for (int k = 0; k < n_slots(); ++k) {
            const int d = slot_dim(k);
            if (occ[k] < 0 || occ[k] >= d)
                throw std::out_of_range("CompositeBasis: occupation out of range");
            index += occ[k] * stride;
            stride *= d;
        }
        return index;
    }

    bool operator==(const CompositeBasis& other) const {
        return n_spins == other.n_spins && n_modes == other.n_modes &&
               cutoff == other.cutoff;
    }
    bool operator!=(const CompositeBasis& other) const { return !(*this == other); }
};

/// Normalized amplitude vector over a CompositeBasis.
struct StateVector {
    ComplexVector amps;
    CompositeBasis basis;

    StateVector() = default;
    StateVector(ComplexVector a, CompositeBasis b) : amps(std::move(a)), basis(b) {
        if (amps.size() != basis.dimension())
            throw std::invalid_argument("StateVector: amplitude length does not match basis");
    }

    double norm() const { return amps.norm(); }

    void normalize() {
        const double n = amps.norm();
        if (n <= 0.0) throw std::runtime_error("StateVector: cannot normalize zero vector");
        amps /= n;
    }
};

/// Basis state with every spin and mode in its ground level (all spins up,
/// all modes empty) except the listed down spins.
StateVector basis_state(const CompositeBasis& basis, const std::vector<int>& down_spins,
                        const std::vector<int>& mode_occupations = {});

}  // namespace polarion
