#include "polarion/basis.hpp"

namespace polarion {

StateVector basis_state(const CompositeBasis& basis, const std::vector<int>& down_spins,
                        const std::vector<int>& mode_occupations) {
    std::vector<int> occ(basis.n_slots(), 0);
    for (int s : down_spins) {
        if (s < 0 || s >= basis.n_spins)
            throw std::out_of_range("basis_state: spin index out of range");
        occ[s] = 1;
    }
    if (!mode_occupations.empty()) {
        if (static_cast<int>(mode_occupations.size()) != basis.n_modes)
            throw std::invalid_argument("basis_state: mode occupation length mismatch");
        for (int m = 0; m < basis.n_modes; ++m) occ[basis.n_spins + m] = mode_occupations[m];
    }
    ComplexVector amps = ComplexVector::Zero(basis.dimension());
    amps[basis.encode(occ)] = 1.0;
    return StateVector(std::move(amps), basis);
}

}  // namespace polarion
