#include "arcd/ar1.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "arcd/errors.hpp"

namespace arcd {

TimeSeries::TimeSeries(std::vector<double> values, bool demeaned)
    : values_(std::move(values)), demeaned_(demeaned) {
    if (values_.size() < 2) throw InputError("time series needs at least 2 observations");
    for (double v : values_)
        if (!std::isfinite(v)) throw InputError("time series contains a non-finite value");
}

TimeSeries TimeSeries::demean() const {
    const double mean = std::accumulate(values_.begin(), values_.end(), 0.0) /
                        static_cast<double>(values_.size());
    std::vector<double> centered(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) centered[i] = values_[i] - mean;
    return TimeSeries(std::move(centered), true);
}

LagSums lag_sums(std::span<const double> y) noexcept {
    LagSums s{0.0, 0.0, 0.0};
    for (std::size_t t = 1; t < y.size(); ++t) {
        s.cross += y[t - 1] * y[t];
        s.lagged_sq += y[t - 1] * y[t - 1];
    }
    if (!y.empty()) s.last_sq = y.back() * y.back();
    return s;
}

std::vector<double> simulate_ar1(double phi, double sigma, std::span<const double> noise) {
    std::vector<double> y(noise.size());
    if (noise.empty()) return y;
    y[0] = sigma * noise[0];
    for (std::size_t t = 1; t < noise.size(); ++t) y[t] = phi * y[t - 1] + sigma * noise[t];
    return y;
}

double mle_phi(std::span<const double> y) {
    const LagSums s = lag_sums(y);
    if (!(s.lagged_sq > 0.0))
        throw DegenerateSeriesError("mle_phi: lagged values are all zero");
    return s.cross / s.lagged_sq;
}

double mle_phi(const TimeSeries& series) { return mle_phi(series.values()); }

double mle_sigma2(const TimeSeries& series) {
    const auto y = series.values();
    double sq = 0.0, cross = 0.0, lagged = 0.0;
    for (std::size_t t = 1; t < y.size(); ++t) {
        sq += y[t] * y[t];
        cross += y[t - 1] * y[t];
        lagged += y[t - 1] * y[t - 1];
    }
    if (!(lagged > 0.0)) throw DegenerateSeriesError("mle_sigma2: lagged values are all zero");
    // Cancellation can leave a tiny negative number for a perfect fit.
    return std::max(0.0, (sq - cross * cross / lagged) / static_cast<double>(y.size()));
}

std::vector<double> residuals(const TimeSeries& series, double phi) {
    const auto y = series.values();
    std::vector<double> e(y.size());
    e[0] = y[0];
    for (std::size_t t = 1; t < y.size(); ++t) e[t] = y[t] - phi * y[t - 1];
    return e;
}

double quantity_A(const TimeSeries& series, double phi) {
    const LagSums s = lag_sums(series.values());
    // y_1..y_{n-1} all zero: only y_n contributes, whatever phi_hat would be.
    if (!(s.lagged_sq > 0.0)) return s.last_sq;
    const double phi_hat = s.cross / s.lagged_sq;
    return s.last_sq + s.lagged_sq * (1.0 - 2.0 * phi_hat * phi + phi * phi);
}

double log_likelihood(const TimeSeries& series, double phi, double sigma2) {
    if (!(sigma2 > 0.0)) throw DomainError("log_likelihood: sigma2 must be positive");
    const double n = static_cast<double>(series.size());
    return -0.5 * n * std::log(2.0 * std::numbers::pi * sigma2) -
           quantity_A(series, phi) / (2.0 * sigma2);
}

FitResult fit_ar1(const TimeSeries& series) {
    const double phi_hat = mle_phi(series);
    return FitResult{phi_hat, mle_sigma2(series), residuals(series, phi_hat)};
}

}  // namespace arcd
