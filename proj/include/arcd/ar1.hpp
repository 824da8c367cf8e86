#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace arcd {

/// Observed or simulated series y_1..y_n. The pre-sample value y_0 is taken to be zero
/// throughout the library.
class TimeSeries {
public:
    /// Throws InputError unless n >= 2 and every value is finite.
    explicit TimeSeries(std::vector<double> values, bool demeaned = false);

    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const noexcept { return values_[i]; }
    bool demeaned() const noexcept { return demeaned_; }

    /// Copy with the sample mean subtracted.
    TimeSeries demean() const;

private:
    std::vector<double> values_;
    bool demeaned_;
};

struct Ar1Params {
    double phi;
    double sigma2;
};

struct FitResult {
    double phi_hat;
    double sigma2_hat;
    std::vector<double> residuals;
};

/// Lag sums shared by the estimator, likelihood and Bayesian formulas.
struct LagSums {
    double cross;         // sum_{t=1}^n y_{t-1} y_t
    double lagged_sq;     // sum_{t=1}^n y_{t-1}^2
    double last_sq;       // y_n^2
};

LagSums lag_sums(std::span<const double> y) noexcept;

/// y_1 = sigma e_1, y_t = phi y_{t-1} + sigma e_t. Consumes exactly n deviates from `noise`.
/// Any real phi is accepted, including the unit root and explosive values.
std::vector<double> simulate_ar1(double phi, double sigma, std::span<const double> noise);

/// Least-squares / maximum likelihood estimate sum y_{t-1} y_t / sum y_{t-1}^2.
/// Throws DegenerateSeriesError when y_1..y_{n-1} are all zero.
double mle_phi(std::span<const double> y);
double mle_phi(const TimeSeries& series);

/// n^{-1} (sum_{t>=2} y_t^2 - (sum_{t>=2} y_{t-1} y_t)^2 / sum_{t>=2} y_{t-1}^2).
/// The sums start at t = 2, so y_1^2 does not enter.
double mle_sigma2(const TimeSeries& series);

/// e_1 = y_1 and e_t = y_t - phi y_{t-1}.
std::vector<double> residuals(const TimeSeries& series, double phi);

/// Residual sum of squares y_n^2 + sum y_{t-1}^2 (1 - 2 phi_hat phi + phi^2), which equals
/// y_1^2 + sum_{t>=2} (y_t - phi y_{t-1})^2. Reduces to y_n^2 when the lagged values vanish.
double quantity_A(const TimeSeries& series, double phi);

/// Gaussian log-likelihood -(n/2) log(2 pi sigma2) - A / (2 sigma2). Throws DomainError for
/// sigma2 <= 0.
double log_likelihood(const TimeSeries& series, double phi, double sigma2);

FitResult fit_ar1(const TimeSeries& series);

/// Fused simulate-and-estimate used by the Monte Carlo loops: returns phi_hat for the path
/// driven by `noise` at coefficient `phi` with unit noise scale, without materialising it.
/// Sets `degenerate` instead of throwing.
inline double simulated_phi_hat(std::span<const double> noise, double phi, bool& degenerate) noexcept {
    double y = noise[0];
    double cross = 0.0;
    double lagged = 0.0;
    for (std::size_t t = 1; t < noise.size(); ++t) {
        const double next = phi * y + noise[t];
        cross += y * next;
        lagged += y * y;
        y = next;
    }
    degenerate = !(lagged > 0.0);
    return degenerate ? 0.0 : cross / lagged;
}

}  // namespace arcd
