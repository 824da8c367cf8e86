#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "arcd/cd_analysis.hpp"
#include "arcd/errors.hpp"
#include "arcd/monte_carlo.hpp"
#include "arcd/normal.hpp"
#include "support/oracles.hpp"

using namespace arcd;

namespace {

EmpiricalCd tabulate(const PhiGrid& grid, auto&& c) {
    EmpiricalCd cd{grid, std::vector<double>(grid.size()), 0.0, CdSource::simulated, 0};
    for (std::size_t k = 0; k < grid.size(); ++k) cd.values[k] = c(grid[k]);
    return cd;
}

EmpiricalCd constant_cd(double value) {
    return EmpiricalCd{PhiGrid::single(1.0), {value}, 0.0, CdSource::simulated, 0};
}

}  // namespace

TEST(Normal, KnownValues) {
    EXPECT_DOUBLE_EQ(normal_cdf(0.0), 0.5);
    EXPECT_DOUBLE_EQ(normal_quantile(0.5), 0.0);
    EXPECT_NEAR(normal_cdf(1.96), 0.9750021049, 1e-9);
    EXPECT_NEAR(normal_pdf(0.0), 1.0 / std::sqrt(2.0 * std::numbers::pi), 1e-15);
}

TEST(Normal, AgreesWithLongDoubleOracle) {
    for (double x = -8.0; x <= 8.0; x += 0.37) {
        EXPECT_NEAR(normal_cdf(x), static_cast<double>(oracle::normal_cdf(x)), 1e-10);
        EXPECT_NEAR(std::log(normal_pdf(x)), log_normal_pdf(x), 1e-12);
    }
}

TEST(Normal, QuantileInvertsCdf) {
    for (double p : {1e-12, 1e-6, 0.001, 0.01, 0.2, 0.5, 0.77, 0.99, 0.999999})
        EXPECT_LT(std::abs(normal_cdf(normal_quantile(p)) - p), 1e-9) << p;
    EXPECT_THROW(normal_quantile(0.0), DomainError);
    EXPECT_THROW(normal_quantile(1.0), DomainError);
    EXPECT_THROW(normal_quantile(-0.1), DomainError);
}

TEST(ConfidenceCurve, PointValues) {
    EXPECT_DOUBLE_EQ(confidence_curve(constant_cd(0.5)).values[0], 0.0);
    EXPECT_DOUBLE_EQ(confidence_curve(constant_cd(0.0)).values[0], 1.0);
    EXPECT_DOUBLE_EQ(confidence_curve(constant_cd(1.0)).values[0], 1.0);
    EXPECT_NEAR(confidence_curve(constant_cd(0.88)).values[0], 0.76, 1e-15);
}

TEST(Monotonize, PoolsAdjacentViolators) {
    EXPECT_EQ(monotonize(std::vector<double>{0.1, 0.3, 0.2, 0.4}), (std::vector<double>{0.1, 0.25, 0.25, 0.4}));
    EXPECT_EQ(monotonize(std::vector<double>{0.5, 0.2, 0.2}), (std::vector<double>{0.3, 0.3, 0.3}));
    const std::vector<double> sorted{0.0, 0.1, 0.1, 0.9};
    EXPECT_EQ(monotonize(sorted), sorted);
}

TEST(Monotonize, ResultIsNonDecreasingAndPreservesMean) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int c = 0; c < 100; ++c) {
        std::vector<double> v(50);
        for (auto& x : v) x = u(rng);
        const auto m = monotonize(v);
        double sv = 0.0, sm = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            sv += v[i];
            sm += m[i];
            if (i) EXPECT_LE(m[i - 1], m[i]);
        }
        EXPECT_NEAR(sv, sm, 1e-12);
    }
}

TEST(ExtractInterval, ClosedFormQuantiles) {
    const PhiGrid grid = PhiGrid::span(0.3, 1.5, 1200);
    const EmpiricalCd cd = tabulate(grid, [](double phi) { return normal_cdf(10.0 * (phi - 0.9)); });
    for (double level : {0.80, 0.90, 0.95}) {
        const double z = normal_quantile(1.0 - (1.0 - level) / 2.0);
        const ConfidenceInterval ci = extract_interval(cd, level);
        EXPECT_NEAR(ci.lo, 0.9 - z / 10.0, 1e-4);
        EXPECT_NEAR(ci.hi, 0.9 + z / 10.0, 1e-4);
        EXPECT_FALSE(ci.hi_clipped);
    }
}

TEST(ExtractInterval, ClipsAtUpperEndAndRejectsMissingLowerCrossing) {
    const EmpiricalCd cd = tabulate(PhiGrid::to_one(0.5, 500), [](double phi) { return 0.97 * normal_cdf(20.0 * (phi - 0.85)); });
    const ConfidenceInterval ci95 = extract_interval(cd, 0.95);
    EXPECT_TRUE(ci95.hi_clipped);
    EXPECT_EQ(ci95.hi, 1.0);
    const ConfidenceInterval ci90 = extract_interval(cd, 0.90);
    EXPECT_FALSE(ci90.hi_clipped);
    EXPECT_LE(ci95.lo, ci90.lo);
    EXPECT_GE(ci95.hi, ci90.hi);

    const EmpiricalCd high = tabulate(PhiGrid::to_one(0.8, 100), [](double phi) { return 0.3 + 0.5 * phi; });
    EXPECT_THROW(extract_interval(high, 0.9), LevelUnreachableError);
    EXPECT_THROW(extract_interval(cd, 1.0), DomainError);
}

TEST(CdMedian, CentredAndProbitCases) {
    const PhiGrid grid = PhiGrid::span(0.0, 0.8, 80);
    EXPECT_NEAR(cd_median(tabulate(grid, [](double phi) { return normal_cdf(6.0 * (phi - 0.4)); })), 0.4, 1e-12);
    const double a = -3.0, b = 5.0;
    EXPECT_NEAR(cd_median(tabulate(PhiGrid::span(0.0, 1.0, 1000), [&](double phi) { return normal_cdf(a + b * phi); })),
                -a / b, 1e-6);
    EXPECT_THROW(cd_median(tabulate(grid, [](double) { return 0.2; })), NoCrossingError);
}

TEST(AsymptoticCd, PointValues) {
    EXPECT_DOUBLE_EQ(asymptotic_cd_c1(0.4, 0.4, 100), 0.5);
    EXPECT_DOUBLE_EQ(asymptotic_cd_c2(0.4, 0.4, 100), 0.5);
    EXPECT_GT(asymptotic_cd_c1(1.0 - 1e-12, 0.9, 100), 1.0 - 1e-6);
    EXPECT_NEAR(asymptotic_cd_c1(0.95, 0.9, 100), static_cast<double>(oracle::normal_cdf(0.5L / std::sqrt(0.0975L))), 1e-12);
    EXPECT_NEAR(asymptotic_cd_c1(0.95, 0.9, 100), 0.9453, 1e-4);
    EXPECT_NEAR(asymptotic_cd_c2(0.95, 0.9, 100), static_cast<double>(oracle::normal_cdf(0.5L / std::sqrt(0.19L))), 1e-12);
    EXPECT_NEAR(asymptotic_cd_c2(0.95, 0.9, 100), 0.8743, 1e-4);
}

TEST(AsymptoticCd, DomainErrors) {
    EXPECT_THROW(asymptotic_cd_c1(1.0, 0.5, 100), DomainError);
    EXPECT_THROW(asymptotic_density_c1(-1.0, 0.5, 100), DomainError);
    EXPECT_THROW(asymptotic_cd_c2(0.5, 1.0, 100), DomainError);
    EXPECT_THROW(asymptotic_density_c2(0.5, -1.2, 100), DomainError);
}

TEST(AsymptoticCd, C2IsShiftScaleNormalAndSymmetric) {
    const double phi_obs = 0.6, sd = std::sqrt((1 - 0.36) / 50.0);
    for (double d : {0.01, 0.05, 0.2}) {
        EXPECT_NEAR(asymptotic_cd_c2(phi_obs + d, phi_obs, 50) + asymptotic_cd_c2(phi_obs - d, phi_obs, 50), 1.0, 1e-15);
        EXPECT_DOUBLE_EQ(asymptotic_cd_c2(phi_obs + d, phi_obs, 50), normal_cdf(d / sd));
    }
}

TEST(AsymptoticDensity, ModesAndDerivatives) {
    EXPECT_NEAR(asymptotic_density_c1(0.0, 0.0, 100), std::sqrt(100.0 / (2.0 * std::numbers::pi)), 1e-12);
    EXPECT_NEAR(asymptotic_density_c2(0.5, 0.5, 100), std::sqrt(100.0 / (2.0 * std::numbers::pi * 0.75)), 1e-12);

    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-0.9, 0.9);
    const double h = 1e-6;
    auto fd = [&](auto&& cdf, double phi) { return (cdf(phi + h) - cdf(phi - h)) / (2.0 * h); };
    for (int c = 0; c < 10; ++c) {
        const double phi_obs = u(rng);
        const std::size_t n = 100;
        const double sd = std::sqrt((1.0 - phi_obs * phi_obs) / n);
        // Points within a few standard deviations, where the density is not negligible.
        const double phi = std::clamp(phi_obs + 2.0 * sd * (u(rng) / 0.9), -0.95, 0.95);
        const double d1 = asymptotic_density_c1(phi, phi_obs, n);
        const double d2 = asymptotic_density_c2(phi, phi_obs, n);
        EXPECT_NEAR(fd([&](double x) { return asymptotic_cd_c1(x, phi_obs, n); }, phi), d1, 1e-4 * d1);
        EXPECT_NEAR(fd([&](double x) { return asymptotic_cd_c2(x, phi_obs, n); }, phi), d2, 1e-4 * d2);
    }
    const double d = asymptotic_density_c1(0.3, 0.5, 100);
    EXPECT_NEAR(fd([](double x) { return asymptotic_cd_c1(x, 0.5, 100); }, 0.3), d, 1e-4 * d);
    EXPECT_NEAR(std::log(asymptotic_density_c1(0.3, 0.5, 100)), log_asymptotic_density_c1(0.3, 0.5, 100), 1e-12);
    EXPECT_NEAR(std::log(asymptotic_density_c2(0.3, 0.5, 100)), log_asymptotic_density_c2(0.3, 0.5, 100), 1e-12);
}

TEST(AsymptoticDensity, IntegratesToOne) {
    const double c1 = oracle::simpson([](double phi) { return asymptotic_density_c1(phi, 0.5, 100); }, -1.0 + 1e-9,
                                      1.0 - 1e-9, 200000);
    EXPECT_NEAR(c1, 1.0, 1e-6);
    const double sd = std::sqrt(0.75 / 100.0);
    const double c2 = oracle::simpson([](double phi) { return asymptotic_density_c2(phi, 0.5, 100); }, 0.5 - 15.0 * sd,
                                      0.5 + 15.0 * sd, 20000);
    EXPECT_NEAR(c2, 1.0, 1e-9);
}

TEST(SmoothedDensity, ExactProbitRecovery) {
    const EmpiricalCd cd = tabulate(PhiGrid::span(-0.5, 1.5, 200), [](double phi) { return normal_cdf(-3.0 + 5.0 * phi); });
    const SmoothedDensityFit fit = fit_smoothed_density(cd);
    EXPECT_NEAR(fit.a, -3.0, 1e-9);
    EXPECT_NEAR(fit.b, 5.0, 1e-9);
    EXPECT_FALSE(fit.nonpositive_slope);
    EXPECT_GT(fit.selected_range.first, 0.6 - 2.33 / 5.0 - 0.02);
    EXPECT_NEAR(fit.density(0.6), 5.0 * normal_pdf(0.0), 1e-8);
}

TEST(SmoothedDensity, RobustToSmallNoise) {
    const PhiGrid grid = PhiGrid::span(-0.5, 1.5, 200);
    EmpiricalCd cd = tabulate(grid, [](double phi) { return normal_cdf(-3.0 + 5.0 * phi); });
    for (std::size_t k = 0; k < cd.values.size(); ++k) cd.values[k] += (k % 2 ? 0.001 : -0.001);
    const SmoothedDensityFit fit = fit_smoothed_density(cd);
    EXPECT_NEAR(fit.a, -3.0, 0.02);
    EXPECT_NEAR(fit.b, 5.0, 0.02);
}

TEST(SmoothedDensity, SelectionBoundsAndErrors) {
    // Only the interior values strictly between 0.01 and 0.99 enter; 0, 0.01, 0.99 and 1 do not.
    const EmpiricalCd cd{PhiGrid::span(0.0, 0.5, 5), {0.0, 0.01, 0.3, 0.99, 1.0, 1.0}, 0.0, CdSource::simulated, 0};
    EXPECT_THROW(fit_smoothed_density(cd), InsufficientPointsError);
    const EmpiricalCd two{PhiGrid::span(0.0, 0.3, 3), {0.0, 0.2, 0.6, 1.0}, 0.0, CdSource::simulated, 0};
    const SmoothedDensityFit fit = fit_smoothed_density(two);
    EXPECT_EQ(fit.points_used, 2u);
    EXPECT_DOUBLE_EQ(fit.selected_range.first, 0.1);
    EXPECT_DOUBLE_EQ(fit.selected_range.second, 0.2);
    const EmpiricalCd down{PhiGrid::span(0.0, 0.3, 3), {0.9, 0.6, 0.2, 0.1}, 0.0, CdSource::simulated, 0};
    EXPECT_TRUE(fit_smoothed_density(down).nonpositive_slope);
}

TEST(SmoothedDensity, SimulatedCdCloserToC2ThanC1) {
    const double phi_obs = 0.533;
    const std::size_t n = 100;
    const EmpiricalCd cd = estimate_cd(phi_obs, PhiGrid::around(phi_obs, 200), McConfig{20000, n, 17, 0});
    const SmoothedDensityFit fit = fit_smoothed_density(cd);
    double d1 = 0.0, d2 = 0.0;
    for (double phi : cd.grid.points()) {
        if (phi < fit.selected_range.first || phi > fit.selected_range.second) continue;
        d1 = std::max(d1, std::abs(fit.log_density(phi) - log_asymptotic_density_c1(phi, phi_obs, n)));
        d2 = std::max(d2, std::abs(fit.log_density(phi) - log_asymptotic_density_c2(phi, phi_obs, n)));
    }
    EXPECT_LT(d2, d1);
}
