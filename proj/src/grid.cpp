#include "arcd/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "arcd/empirical_cd.hpp"
#include "arcd/errors.hpp"

namespace arcd {

PhiGrid PhiGrid::span(double lo, double hi, std::size_t intervals) {
    if (!(std::isfinite(lo) && std::isfinite(hi)) || !(hi > lo) || intervals == 0)
        throw InputError("phi grid needs finite bounds lo < hi and at least one interval");
    const double step = (hi - lo) / static_cast<double>(intervals);
    std::vector<double> points(intervals + 1);
    for (std::size_t k = 0; k < intervals; ++k) points[k] = lo + static_cast<double>(k) * step;
    points[intervals] = hi;
    return PhiGrid(std::move(points), step);
}

PhiGrid PhiGrid::around(double phi_obs, std::size_t n_phi) {
    const double lo = std::max(-0.999, phi_obs - 0.5);
    if (!(lo < 1.0))
        throw InputError("no default grid below the unit root for phi_obs = " + std::to_string(phi_obs));
    return to_one(lo, n_phi);
}

PhiGrid PhiGrid::single(double phi) { return PhiGrid({phi}, 1.0); }

PhiGrid PhiGrid::slice(std::size_t first, std::size_t count) const {
    if (count == 0 || first + count > points_.size()) throw InputError("grid slice out of range");
    return PhiGrid(std::vector<double>(points_.begin() + static_cast<std::ptrdiff_t>(first),
                                       points_.begin() + static_cast<std::ptrdiff_t>(first + count)),
                   step_);
}

std::string_view to_string(CdSource source) noexcept {
    switch (source) {
        case CdSource::simulated: return "simulated";
        case CdSource::bootstrap: return "bootstrap";
        case CdSource::asymptotic_c1: return "asymptotic-c1";
        case CdSource::asymptotic_c2: return "asymptotic-c2";
        case CdSource::flat_prior: return "flat-prior";
        case CdSource::spike_prior: return "spike-prior";
    }
    return "unknown";
}

}  // namespace arcd
