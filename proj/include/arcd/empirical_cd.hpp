#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "arcd/grid.hpp"

namespace arcd {

enum class CdSource { simulated, bootstrap, asymptotic_c1, asymptotic_c2, flat_prior, spike_prior };

std::string_view to_string(CdSource source) noexcept;

/// A confidence distribution C(phi) tabulated on a grid.
struct EmpiricalCd {
    PhiGrid grid;
    std::vector<double> values;
    double phi_obs = 0.0;
    CdSource source = CdSource::simulated;
    // Monte Carlo replicates dropped or counted as non-exceeding because their estimator
    // denominator was zero, summed over the grid.
    std::size_t degenerate = 0;
};

}  // namespace arcd
