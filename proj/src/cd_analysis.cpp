#include "arcd/cd_analysis.hpp"

#include <cmath>
#include <string>

#include "arcd/errors.hpp"
#include "arcd/normal.hpp"

namespace arcd {

namespace {

void require_stationary(double value, const char* what) {
    if (!(std::abs(value) < 1.0))
        throw DomainError(std::string(what) + " must lie in (-1, 1), got " + std::to_string(value));
}

// First k with values[k] >= target, interpolated against k - 1. Returns false if none.
bool first_crossing(const PhiGrid& grid, std::span<const double> values, double target,
                    std::size_t& k, double& phi) {
    for (k = 0; k < values.size(); ++k) {
        if (values[k] >= target) {
            if (k == 0) {
                phi = grid[0];
            } else {
                const double w = (target - values[k - 1]) / (values[k] - values[k - 1]);
                phi = grid[k - 1] + w * (grid[k] - grid[k - 1]);
            }
            return true;
        }
    }
    return false;
}

}  // namespace

double SmoothedDensityFit::cdf(double phi) const { return normal_cdf(a + b * phi); }

double SmoothedDensityFit::density(double phi) const { return b * normal_pdf(a + b * phi); }

double SmoothedDensityFit::log_density(double phi) const {
    return std::log(b) + log_normal_pdf(a + b * phi);
}

ConfidenceCurve confidence_curve(const EmpiricalCd& cd) {
    ConfidenceCurve curve{cd.grid, std::vector<double>(cd.values.size())};
    for (std::size_t k = 0; k < cd.values.size(); ++k)
        curve.values[k] = std::abs(1.0 - 2.0 * cd.values[k]);
    return curve;
}

std::vector<double> monotonize(std::span<const double> values) {
    struct Block {
        double sum;
        std::size_t count;
        double mean() const { return sum / static_cast<double>(count); }
    };
    std::vector<Block> blocks;
    blocks.reserve(values.size());
    for (double v : values) {
        blocks.push_back({v, 1});
        while (blocks.size() > 1 && blocks[blocks.size() - 2].mean() > blocks.back().mean()) {
            Block last = blocks.back();
            blocks.pop_back();
            blocks.back().sum += last.sum;
            blocks.back().count += last.count;
        }
    }
    std::vector<double> out;
    out.reserve(values.size());
    for (const Block& b : blocks) out.insert(out.end(), b.count, b.mean());
    return out;
}

ConfidenceInterval extract_interval(const EmpiricalCd& cd, double level) {
    if (!(level > 0.0 && level < 1.0)) throw DomainError("interval level must lie in (0, 1)");
    const double alpha = 1.0 - level;
    const std::vector<double> m = monotonize(cd.values);

    ConfidenceInterval ci{0.0, 0.0, level, false};
    std::size_t k = 0;
    if (!first_crossing(cd.grid, m, alpha / 2.0, k, ci.lo) || (k == 0 && m[0] > alpha / 2.0))
        throw LevelUnreachableError("confidence distribution does not cross " +
                                    std::to_string(alpha / 2.0) + " on the grid; extend phi_min");
    if (!first_crossing(cd.grid, m, 1.0 - alpha / 2.0, k, ci.hi)) {
        ci.hi = cd.grid.back();
        ci.hi_clipped = true;
    }
    return ci;
}

double cd_median(const EmpiricalCd& cd) {
    const std::vector<double> m = monotonize(cd.values);
    std::size_t k = 0;
    double phi = 0.0;
    if (!first_crossing(cd.grid, m, 0.5, k, phi) || (k == 0 && m[0] > 0.5))
        throw NoCrossingError("confidence distribution does not cross 0.5 on the grid");
    return phi;
}

double asymptotic_cd_c1(double phi, double phi_obs, std::size_t n) {
    require_stationary(phi, "phi");
    const double rn = std::sqrt(static_cast<double>(n));
    return normal_cdf(rn * (phi - phi_obs) / std::sqrt(1.0 - phi * phi));
}

double asymptotic_cd_c2(double phi, double phi_obs, std::size_t n) {
    require_stationary(phi_obs, "phi_obs");
    const double rn = std::sqrt(static_cast<double>(n));
    return normal_cdf(rn * (phi - phi_obs) / std::sqrt(1.0 - phi_obs * phi_obs));
}

double log_asymptotic_density_c1(double phi, double phi_obs, std::size_t n) {
    require_stationary(phi, "phi");
    const double rn = std::sqrt(static_cast<double>(n));
    const double v = 1.0 - phi * phi;
    return std::log(rn * (1.0 - phi_obs * phi)) - 1.5 * std::log(v) +
           log_normal_pdf(rn * (phi - phi_obs) / std::sqrt(v));
}

double asymptotic_density_c1(double phi, double phi_obs, std::size_t n) {
    require_stationary(phi, "phi");
    const double rn = std::sqrt(static_cast<double>(n));
    const double v = 1.0 - phi * phi;
    return rn * (1.0 - phi_obs * phi) / (v * std::sqrt(v)) * normal_pdf(rn * (phi - phi_obs) / std::sqrt(v));
}

double log_asymptotic_density_c2(double phi, double phi_obs, std::size_t n) {
    require_stationary(phi_obs, "phi_obs");
    const double sd = std::sqrt((1.0 - phi_obs * phi_obs) / static_cast<double>(n));
    return log_normal_pdf((phi - phi_obs) / sd) - std::log(sd);
}

double asymptotic_density_c2(double phi, double phi_obs, std::size_t n) {
    require_stationary(phi_obs, "phi_obs");
    const double sd = std::sqrt((1.0 - phi_obs * phi_obs) / static_cast<double>(n));
    return normal_pdf((phi - phi_obs) / sd) / sd;
}

EmpiricalCd asymptotic_cd(CdSource which, double phi_obs, std::size_t n, const PhiGrid& grid) {
    if (which != CdSource::asymptotic_c1 && which != CdSource::asymptotic_c2)
        throw InputError("asymptotic_cd: source must be asymptotic-c1 or asymptotic-c2");
    EmpiricalCd cd{grid, std::vector<double>(grid.size()), phi_obs, which, 0};
    for (std::size_t k = 0; k < grid.size(); ++k)
        cd.values[k] = which == CdSource::asymptotic_c1 ? asymptotic_cd_c1(grid[k], phi_obs, n)
                                                        : asymptotic_cd_c2(grid[k], phi_obs, n);
    return cd;
}

SmoothedDensityFit fit_smoothed_density(const EmpiricalCd& cd) {
    std::vector<double> xs, zs;
    for (std::size_t k = 0; k < cd.values.size(); ++k) {
        const double c = cd.values[k];
        if (c > 0.01 && c < 0.99) {
            xs.push_back(cd.grid[k]);
            zs.push_back(normal_quantile(c));
        }
    }
    if (xs.size() < 2)
        throw InsufficientPointsError("probit smoothing needs at least two grid points with 0.01 < C < 0.99, got " +
                                      std::to_string(xs.size()));

    const double m = static_cast<double>(xs.size());
    double mx = 0.0, mz = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        mz += zs[i];
    }
    mx /= m;
    mz /= m;
    double sxx = 0.0, sxz = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxz += (xs[i] - mx) * (zs[i] - mz);
    }

    SmoothedDensityFit fit;
    fit.b = sxz / sxx;
    fit.a = mz - fit.b * mx;
    fit.selected_range = {xs.front(), xs.back()};
    fit.points_used = xs.size();
    fit.nonpositive_slope = !(fit.b > 0.0);
    return fit;
}

}  // namespace arcd
