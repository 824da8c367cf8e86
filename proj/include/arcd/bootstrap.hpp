#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "arcd/ar1.hpp"
#include "arcd/cd_analysis.hpp"
#include "arcd/empirical_cd.hpp"
#include "arcd/grid.hpp"

namespace arcd {

/// n x N matrix of resampling indices, drawn once and reused at every grid point.
/// Stored column-major with zero-based entries; the public accessors and the CSV form use
/// the 1..n convention.
class BootstrapPlan {
public:
    /// `indices` holds `columns` consecutive columns of n zero-based entries each.
    BootstrapPlan(std::size_t n, std::size_t columns, std::vector<std::uint32_t> indices,
                  std::uint64_t seed = 0);

    std::size_t n() const noexcept { return n_; }
    std::size_t columns() const noexcept { return columns_; }
    std::uint64_t seed() const noexcept { return seed_; }

    /// Entry in 1..n.
    std::size_t index(std::size_t row, std::size_t column) const noexcept {
        return static_cast<std::size_t>(indices_[column * n_ + row]) + 1;
    }
    std::span<const std::uint32_t> zero_based_column(std::size_t column) const noexcept {
        return {indices_.data() + column * n_, n_};
    }

    bool operator==(const BootstrapPlan& other) const noexcept {
        return n_ == other.n_ && columns_ == other.columns_ && indices_ == other.indices_;
    }

private:
    std::size_t n_;
    std::size_t columns_;
    std::vector<std::uint32_t> indices_;
    std::uint64_t seed_;
};

/// i.i.d. uniform indices; column j comes from stream (seed, j). Rejects n < 2 and N < 1.
BootstrapPlan make_plan(std::size_t n, std::size_t columns, std::uint64_t seed);

/// CSV with n rows and N comma-separated 1-based entries per row.
void write_plan_csv(std::ostream& out, const BootstrapPlan& plan);
BootstrapPlan read_plan_csv(std::istream& in);

/// Residual-bootstrap confidence distribution. At each grid phi the residuals
/// e_t = y_t - phi y_{t-1} (e_1 = y_1, uncentred) are resampled by every plan column,
/// y*_1 = e*_1, y*_t = phi y*_{t-1} + e*_t, and C(phi) is the fraction of columns with
/// phi_hat* >= phi_hat_obs. Degenerate columns count as not exceeding.
EmpiricalCd bootstrap_cd(const TimeSeries& series, const PhiGrid& grid, const BootstrapPlan& plan,
                         unsigned max_parallel = 0);

ConfidenceCurve bootstrap_curve(const TimeSeries& series, const PhiGrid& grid, const BootstrapPlan& plan,
                                unsigned max_parallel = 0);

}  // namespace arcd
