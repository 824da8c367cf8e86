#include "arcd/bayes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "arcd/errors.hpp"
#include "arcd/monte_carlo.hpp"
#include "arcd/parallel.hpp"
#include "arcd/rng.hpp"

namespace arcd {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

double stationary_phi_hat(const TimeSeries& series) {
    const double phi_hat = mle_phi(series);
    if (!(std::abs(phi_hat) < 1.0))
        throw DomainError("phi_hat = " + std::to_string(phi_hat) + " is outside (-1, 1)");
    return phi_hat;
}

double h_numerator(double phi, double phi0) {
    return 1.0 - phi0 - phi0 * phi0 + phi * (1.0 + phi0 * phi0) - phi * phi * phi0;
}

void mean_and_sd(const std::vector<std::vector<double>>& rows, std::size_t points,
                 std::vector<double>& mean, std::vector<double>& sd) {
    mean.assign(points, 0.0);
    sd.assign(points, 0.0);
    const double m = static_cast<double>(rows.size());
    if (rows.empty()) return;
    for (const auto& row : rows)
        for (std::size_t k = 0; k < points; ++k) mean[k] += row[k];
    for (double& v : mean) v /= m;
    if (rows.size() < 2) return;
    for (const auto& row : rows)
        for (std::size_t k = 0; k < points; ++k) sd[k] += (row[k] - mean[k]) * (row[k] - mean[k]);
    for (double& v : sd) v = std::sqrt(v / (m - 1.0));
}

}  // namespace

double resolve_sigma2(const TimeSeries& series, const Sigma2Mode& mode) {
    return std::visit(overloaded{[](const Sigma2Known& k) {
                                     if (!(k.value > 0.0)) throw DomainError("sigma2 must be positive");
                                     return k.value;
                                 },
                                 [&](const Sigma2Estimated&) { return mle_sigma2(series); }},
                      mode);
}

double quantity_B(const TimeSeries& series, double phi, double sigma2) {
    const LagSums s = lag_sums(series.values());
    const double phi_hat = stationary_phi_hat(series);
    const double n = static_cast<double>(series.size());
    const double d = phi - phi_hat;
    return n * sigma2 * d * d / (1.0 - phi_hat * phi_hat) - s.last_sq -
           s.lagged_sq * (1.0 - 2.0 * phi_hat * phi + phi * phi);
}

double log_c2_over_likelihood(const TimeSeries& series, double phi, double sigma2) {
    if (!(sigma2 > 0.0)) throw DomainError("sigma2 must be positive");
    const double phi_hat = stationary_phi_hat(series);
    const double n = static_cast<double>(series.size());
    return 0.5 * std::log(n) - 0.5 * std::log(1.0 - phi_hat * phi_hat) +
           0.5 * (n - 1.0) * std::log(2.0 * std::numbers::pi) + 0.5 * n * std::log(sigma2) -
           quantity_B(series, phi, sigma2) / (2.0 * sigma2);
}

double implied_log_prior(const TimeSeries& series, double phi, double sigma2,
                         const ConfidenceDensity& density) {
    const double log_c = std::visit(
        overloaded{[&](const C2ClosedForm&) {
                       return log_asymptotic_density_c2(phi, stationary_phi_hat(series), series.size());
                   },
                   [&](const SmoothedDensityFit& fit) {
                       if (fit.nonpositive_slope)
                           throw DomainError("smoothed density has a non-positive slope");
                       return fit.log_density(phi);
                   }},
        density);
    return log_c - log_likelihood(series, phi, sigma2);
}

ImpliedPriorCurve implied_prior_curve(const TimeSeries& series, const PhiGrid& grid,
                                      const Sigma2Mode& sigma2_mode, const ConfidenceDensity& density) {
    const double sigma2 = resolve_sigma2(series, sigma2_mode);
    const double n = static_cast<double>(series.size());
    ImpliedPriorCurve curve{grid, std::vector<double>(grid.size()), sigma2_mode};
    for (std::size_t k = 0; k < grid.size(); ++k)
        curve.log_ratio[k] = implied_log_prior(series, grid[k], sigma2, density) / n;
    return curve;
}

double h_func(double phi, double phi0) {
    if (!(std::abs(phi0) < 1.0)) throw DomainError("h_func: phi0 must lie in (-1, 1)");
    const double v = 1.0 - phi0 * phi0;
    return h_numerator(phi, phi0) / (v * std::sqrt(v));
}

double g_func(double phi, double phi0) {
    if (!(std::abs(phi0) < 1.0)) throw DomainError("g_func: phi0 must lie in (-1, 1)");
    const double v = 1.0 - phi0 * phi0;
    return h_numerator(phi, phi0) / (v * v);
}

PhiGrid proposition1_window(double phi0, std::size_t intervals) {
    return PhiGrid::span(phi0 - 0.2, std::min(phi0 + 0.2, 0.95), intervals);
}

Proposition1Report proposition1_check(const Proposition1Options& opt) {
    if (!(std::abs(opt.phi0) < 1.0)) throw DomainError("proposition1_check: phi0 must lie in (-1, 1)");
    if (!(opt.sigma2 > 0.0)) throw DomainError("proposition1_check: sigma2 must be positive");
    if (opt.n < 2 || opt.reps < 1) throw InputError("proposition1_check: need n >= 2 and reps >= 1");

    const std::size_t points = opt.window.size();
    const double n = static_cast<double>(opt.n);
    const double sigma = std::sqrt(opt.sigma2);
    const std::uint64_t inner_seed = mix64(opt.seed ^ 0x6A09E667F3BCC909ULL);

    // One row per replicate; empty rows mark skipped replicates. Reduced in index order below.
    std::vector<std::vector<double>> known(opt.reps), estimated(opt.reps);

    const unsigned chunks = resolve_parallelism(opt.max_parallel, opt.reps);
    for_each_chunk(opt.reps, chunks, [&](std::size_t, std::size_t begin, std::size_t end) {
        std::vector<double> noise(opt.n);
        for (std::size_t r = begin; r < end; ++r) {
            fill_normals(opt.seed, r, noise);
            const TimeSeries series(simulate_ar1(opt.phi0, sigma, noise));
            double phi_hat = 0.0;
            try {
                phi_hat = mle_phi(series);
            } catch (const DegenerateSeriesError&) {
                continue;
            }
            if (!(std::abs(phi_hat) < 1.0)) continue;

            ConfidenceDensity density = C2ClosedForm{};
            if (opt.density == DensityKind::smoothed) {
                const double sd = std::sqrt((1.0 - phi_hat * phi_hat) / n);
                const double lo = std::max(-0.999, phi_hat - 4.0 * sd);
                const double hi = std::min(1.0, phi_hat + 4.0 * sd);
                const McConfig inner{opt.inner_reps, opt.n, stream_key(inner_seed, r), 1};
                const EmpiricalCd cd = estimate_cd(phi_hat, PhiGrid::span(lo, hi, opt.cd_intervals), inner);
                try {
                    SmoothedDensityFit fit = fit_smoothed_density(cd);
                    if (fit.nonpositive_slope) continue;
                    density = fit;
                } catch (const InsufficientPointsError&) {
                    continue;
                }
            }

            const double sigma2_hat = mle_sigma2(series);
            if (!(sigma2_hat > 0.0)) continue;
            std::vector<double> row_known(points), row_est(points);
            for (std::size_t k = 0; k < points; ++k) {
                row_known[k] = implied_log_prior(series, opt.window[k], opt.sigma2, density) / n;
                row_est[k] = implied_log_prior(series, opt.window[k], sigma2_hat, density) / n;
            }
            known[r] = std::move(row_known);
            estimated[r] = std::move(row_est);
        }
    });

    Proposition1Report report{opt.window};
    std::vector<std::vector<double>> used_known, used_est;
    for (std::size_t r = 0; r < opt.reps; ++r) {
        if (known[r].empty()) {
            ++report.skipped;
            continue;
        }
        used_known.push_back(std::move(known[r]));
        used_est.push_back(std::move(estimated[r]));
    }
    report.used = used_known.size();
    mean_and_sd(used_known, points, report.mean_known, report.sd_known);
    mean_and_sd(used_est, points, report.mean_estimated, report.sd_estimated);

    report.predicted_sd.resize(points);
    for (std::size_t k = 0; k < points; ++k)
        report.predicted_sd[k] = std::abs(h_func(opt.window[k], opt.phi0)) / std::sqrt(n);

    report.target_level = 0.5 * (std::log(2.0 * std::numbers::pi * opt.sigma2) + 1.0) + 0.5 * std::log(n) / n;
    auto level = [&](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += x;
        return points == 0 ? 0.0 : s / static_cast<double>(points);
    };
    auto spread = [](const std::vector<double>& v) {
        if (v.empty()) return 0.0;
        const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
        return *hi - *lo;
    };
    report.level_known = level(report.mean_known);
    report.level_estimated = level(report.mean_estimated);
    report.spread_known = spread(report.mean_known);
    report.spread_estimated = spread(report.mean_estimated);
    return report;
}

PhiGrid likelihood_grid(std::size_t n_phi) { return PhiGrid::to_one(-1.0 + 1e-6, n_phi); }

IntegratedLikelihood integrated_likelihood(const TimeSeries& series, const PhiGrid& grid, double sigma2) {
    IntegratedLikelihood out{LikelihoodProfile{grid, std::vector<double>(grid.size()), 0.0},
                             std::vector<double>(grid.size(), 0.0)};
    auto& ll = out.profile.log_lik;
    for (std::size_t k = 0; k < grid.size(); ++k) ll[k] = log_likelihood(series, grid[k], sigma2);
    out.profile.normalizer = *std::max_element(ll.begin(), ll.end());
    double prev = std::exp(ll[0] - out.profile.normalizer);
    for (std::size_t k = 1; k < grid.size(); ++k) {
        const double cur = std::exp(ll[k] - out.profile.normalizer);
        out.cumulative[k] = out.cumulative[k - 1] + 0.5 * (prev + cur) * (grid[k] - grid[k - 1]);
        prev = cur;
    }
    return out;
}

EmpiricalCd flat_prior_cd(const TimeSeries& series, const PhiGrid& grid) {
    if (grid.back() != 1.0) throw InputError("flat_prior_cd: grid must end at phi = 1");
    if (grid.size() < 2) throw InputError("flat_prior_cd: grid needs at least two points");
    const IntegratedLikelihood il = integrated_likelihood(series, grid, mle_sigma2(series));
    const double total = il.cumulative.back();
    EmpiricalCd cd{grid, std::vector<double>(grid.size()), mle_phi(series), CdSource::flat_prior, 0};
    for (std::size_t k = 0; k < grid.size(); ++k) cd.values[k] = il.cumulative[k] / total;
    cd.values.back() = 1.0;
    return cd;
}

SpikePriorCd spike_prior_cd(const TimeSeries& series, const PhiGrid& grid, double b) {
    if (!(b >= 0.0 && b < 1.0)) throw DomainError("spike height b must lie in [0, 1)");
    SpikePriorCd out{flat_prior_cd(series, grid), b};
    out.cd.source = CdSource::spike_prior;
    for (double& v : out.cd.values) v *= (1.0 - b);
    out.cd.values.back() = 1.0 - b;
    return out;
}

double default_spike_height(const EmpiricalCd& frequentist) {
    if (frequentist.grid.back() != 1.0)
        throw InputError("default spike height needs a distribution evaluated at phi = 1");
    return std::clamp(1.0 - frequentist.values.back(), 0.0, 1.0);
}

}  // namespace arcd
