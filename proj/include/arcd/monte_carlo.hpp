#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "arcd/empirical_cd.hpp"
#include "arcd/grid.hpp"

namespace arcd {

struct McConfig {
    std::size_t reps = 10000;
    std::size_t n = 100;
    std::uint64_t seed = 0;
    // Thread count hint; 0 means hardware concurrency. Never affects results.
    unsigned max_parallel = 0;

    void validate() const;  // reps >= 1, n >= 2
};

/// Fills `out` with standard normal deviates of stream (seed, index).
void fill_normals(std::uint64_t seed, std::uint64_t index, std::span<double> out);

/// Simulated confidence distribution C(phi) = P_phi(phi_hat >= phi_obs), unit noise scale.
/// Replicate r draws its noise from stream (config.seed, r) at every grid point, so the whole
/// curve is driven by common random numbers. Degenerate replicates are dropped from the
/// proportion at the grid point where they occur.
EmpiricalCd estimate_cd(double phi_obs, const PhiGrid& grid, const McConfig& config);

enum class LimitKind { dickey_fuller, ornstein_uhlenbeck };

struct LimitSample {
    std::vector<double> draws;  // ascending
    LimitKind kind = LimitKind::dickey_fuller;
    double c = 0.0;             // local-to-unity constant; 0 for Dickey-Fuller
    std::size_t inner_n = 0;
    std::size_t degenerate = 0;
};

/// Draws of n (phi_hat - 1) from unit-root paths of length config.n.
LimitSample simulate_df_distribution(const McConfig& config);

/// Draws of n (phi_hat - phi) from paths at phi = exp(c / n). c = 0 is the Dickey-Fuller case.
LimitSample simulate_near_unit_limit(double c, const McConfig& config);

/// Right-continuous empirical CDF: fraction of draws <= z.
double df_cdf(const LimitSample& sample, double z);

/// Unit-root value of the confidence distribution, 1 - F(n (phi_obs - 1)).
double c_at_one(double phi_obs, std::size_t n, const LimitSample& sample);

/// Empirical quantile (inverse of df_cdf) at probability p in [0, 1].
double limit_quantile(const LimitSample& sample, double p);

/// One draw per line, 17 significant digits, ascending.
void write_limit_sample(std::ostream& out, const LimitSample& sample);
LimitSample read_limit_sample(std::istream& in, LimitKind kind, double c, std::size_t inner_n);

}  // namespace arcd
