#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace arcd {

/// Equally spaced, strictly increasing evaluation points for phi.
class PhiGrid {
public:
    /// lo, lo + h, ..., hi with h = (hi - lo) / intervals. The last point is exactly `hi`.
    static PhiGrid span(double lo, double hi, std::size_t intervals);

    /// phi_min, phi_min + h, ..., 1 with h = (1 - phi_min) / n_phi.
    static PhiGrid to_one(double phi_min, std::size_t n_phi) { return span(phi_min, 1.0, n_phi); }

    /// Default grid for a confidence distribution around phi_obs: lower end
    /// max(-0.999, phi_obs - 0.5), upper end 1, 400 intervals.
    static PhiGrid around(double phi_obs, std::size_t n_phi = 400);

    /// Single-point grid, for evaluating a confidence distribution at one value.
    static PhiGrid single(double phi);

    std::span<const double> points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    double operator[](std::size_t k) const noexcept { return points_[k]; }
    double front() const noexcept { return points_.front(); }
    double back() const noexcept { return points_.back(); }
    double step() const noexcept { return step_; }

    /// Sub-grid of points [first, first + count).
    PhiGrid slice(std::size_t first, std::size_t count) const;

private:
    PhiGrid(std::vector<double> points, double step) : points_(std::move(points)), step_(step) {}

    std::vector<double> points_;
    double step_;
};

}  // namespace arcd
