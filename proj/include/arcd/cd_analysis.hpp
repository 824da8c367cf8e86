#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "arcd/empirical_cd.hpp"
#include "arcd/grid.hpp"

namespace arcd {

struct ConfidenceCurve {
    PhiGrid grid;
    std::vector<double> values;  // |1 - 2 C(phi)|
};

struct ConfidenceInterval {
    double lo;
    double hi;
    double level;
    // The distribution never reaches 1 - alpha/2 on the grid; hi is the last grid point.
    bool hi_clipped;
};

/// Probit fit Phi^{-1}(C(phi)) = a + b phi. The smoothed confidence density is
/// b * phi(a + b phi) (standard normal density).
struct SmoothedDensityFit {
    double a = 0.0;
    double b = 0.0;
    std::pair<double, double> selected_range{0.0, 0.0};
    std::size_t points_used = 0;
    bool nonpositive_slope = false;

    double cdf(double phi) const;
    double density(double phi) const;
    double log_density(double phi) const;
};

ConfidenceCurve confidence_curve(const EmpiricalCd& cd);

/// Least-squares non-decreasing projection (pool adjacent violators, equal weights).
std::vector<double> monotonize(std::span<const double> values);

/// Equal-tailed interval: lo solves C = alpha/2 and hi solves C = 1 - alpha/2 by linear
/// interpolation on the monotonized values. Throws LevelUnreachableError when the lower
/// crossing is not on the grid.
ConfidenceInterval extract_interval(const EmpiricalCd& cd, double level);

/// Interpolated solution of C(phi) = 0.5 on the monotonized values; NoCrossingError otherwise.
double cd_median(const EmpiricalCd& cd);

/// Phi(sqrt(n) (phi - phi_obs) / sqrt(1 - phi^2)); requires |phi| < 1.
double asymptotic_cd_c1(double phi, double phi_obs, std::size_t n);
/// Phi(sqrt(n) (phi - phi_obs) / sqrt(1 - phi_obs^2)); requires |phi_obs| < 1.
double asymptotic_cd_c2(double phi, double phi_obs, std::size_t n);
double asymptotic_density_c1(double phi, double phi_obs, std::size_t n);
double asymptotic_density_c2(double phi, double phi_obs, std::size_t n);
double log_asymptotic_density_c1(double phi, double phi_obs, std::size_t n);
double log_asymptotic_density_c2(double phi, double phi_obs, std::size_t n);

/// Tabulates C1 or C2 on a grid (points outside the formula's domain are rejected).
EmpiricalCd asymptotic_cd(CdSource which, double phi_obs, std::size_t n, const PhiGrid& grid);

/// Regresses Phi^{-1}(C) on phi over the grid points with 0.01 < C < 0.99 (raw values).
/// Throws InsufficientPointsError with fewer than two such points.
SmoothedDensityFit fit_smoothed_density(const EmpiricalCd& cd);

}  // namespace arcd
