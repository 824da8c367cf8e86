#pragma once

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "arcd/ar1.hpp"
#include "arcd/cd_analysis.hpp"
#include "arcd/empirical_cd.hpp"
#include "arcd/grid.hpp"

namespace arcd {

struct Sigma2Known {
    double value;
};
struct Sigma2Estimated {};
/// How the noise variance enters the likelihood: a fixed value, or the profile MLE.
using Sigma2Mode = std::variant<Sigma2Known, Sigma2Estimated>;

double resolve_sigma2(const TimeSeries& series, const Sigma2Mode& mode);

/// The closed-form normal confidence density c2 centred at the series' own phi_hat.
struct C2ClosedForm {};
using ConfidenceDensity = std::variant<C2ClosedForm, SmoothedDensityFit>;

/// n^{-1} log(c(phi) / L(phi, sigma2)) over a grid.
struct ImpliedPriorCurve {
    PhiGrid grid;
    std::vector<double> log_ratio;
    Sigma2Mode sigma2_mode;
};

struct LikelihoodProfile {
    PhiGrid grid;
    std::vector<double> log_lik;
    double normalizer;  // max of log_lik
};

struct IntegratedLikelihood {
    LikelihoodProfile profile;
    // Cumulative trapezoid integral of exp(log_lik - normalizer), starting at 0.
    std::vector<double> cumulative;
};

struct SpikePriorCd {
    EmpiricalCd cd;
    double b;  // point mass at phi = 1; cd value at phi = 1 is exactly 1 - b
};

/// B = n sigma2 (phi - phi_hat)^2 / (1 - phi_hat^2) - y_n^2 - sum y_{t-1}^2 (1 - 2 phi_hat phi + phi^2).
/// Throws DomainError when |phi_hat| >= 1.
double quantity_B(const TimeSeries& series, double phi, double sigma2);

/// log(c2 / L) through B: (1/2) log n - (1/2) log(1 - phi_hat^2) + ((n-1)/2) log 2 pi
/// + (n/2) log sigma2 - B / (2 sigma2).
double log_c2_over_likelihood(const TimeSeries& series, double phi, double sigma2);

/// log c(phi) - log L(phi, sigma2), the log of the implied prior density.
double implied_log_prior(const TimeSeries& series, double phi, double sigma2,
                         const ConfidenceDensity& density);

ImpliedPriorCurve implied_prior_curve(const TimeSeries& series, const PhiGrid& grid,
                                      const Sigma2Mode& sigma2_mode, const ConfidenceDensity& density);

/// Coefficient of the O(n^{-1/2}) fluctuation term of n^{-1} log(c2 / L):
/// (1 - p0 - p0^2 + phi (1 + p0^2) - phi^2 p0) / (1 - p0^2)^{3/2}.
double h_func(double phi, double phi0);
/// Same numerator over (1 - p0^2)^2.
double g_func(double phi, double phi0);

enum class DensityKind { c2_closed_form, smoothed };

struct Proposition1Options {
    double phi0 = 0.5;
    double sigma2 = 1.0;
    std::size_t n = 400;
    std::size_t reps = 1000;
    std::uint64_t seed = 0;
    PhiGrid window = PhiGrid::span(0.3, 0.7, 40);
    DensityKind density = DensityKind::c2_closed_form;
    // Smoothed density only: replicates and grid intervals of each per-series simulated CD.
    std::size_t inner_reps = 1000;
    std::size_t cd_intervals = 40;
    unsigned max_parallel = 0;
};

/// Evaluation window phi0 +- 0.2, capped at 0.95.
PhiGrid proposition1_window(double phi0, std::size_t intervals = 40);

struct Proposition1Report {
    PhiGrid grid;
    std::size_t used = 0;
    std::size_t skipped = 0;  // |phi_hat| >= 1 or a failed probit fit
    std::vector<double> mean_known, sd_known;
    std::vector<double> mean_estimated, sd_estimated;
    std::vector<double> predicted_sd;  // n^{-1/2} |h(phi, phi0)|
    double target_level = 0.0;         // (log(2 pi sigma2) + 1) / 2 + log(n) / (2n)
    double level_known = 0.0;          // average of mean_known over the window
    double level_estimated = 0.0;
    double spread_known = 0.0;         // max - min of mean_known
    double spread_estimated = 0.0;
};

/// Simulates `reps` series at phi0 and averages n^{-1} log(c / L) over replicates, for the
/// true sigma2 and for the MLE of sigma2. Bit-identical for any max_parallel.
Proposition1Report proposition1_check(const Proposition1Options& options);

/// Default lower end -1 + 1e-6 up to 1.
PhiGrid likelihood_grid(std::size_t n_phi = 400);

IntegratedLikelihood integrated_likelihood(const TimeSeries& series, const PhiGrid& grid, double sigma2);

/// Profile-likelihood (sigma2 = MLE) flat-prior distribution L1(phi) / L1(1). The grid must end at 1.
EmpiricalCd flat_prior_cd(const TimeSeries& series, const PhiGrid& grid);

/// (1 - b) L1(phi) / L1(1): flat prior on (-1, 1) plus a point mass b at 1. Requires 0 <= b < 1.
SpikePriorCd spike_prior_cd(const TimeSeries& series, const PhiGrid& grid, double b);

/// 1 - C(1) of a frequentist distribution whose grid ends at 1.
double default_spike_height(const EmpiricalCd& frequentist);

}  // namespace arcd
