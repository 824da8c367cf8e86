#include "arcd/bootstrap.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include <boost/random/uniform_int_distribution.hpp>

#include "arcd/errors.hpp"
#include "arcd/parallel.hpp"
#include "arcd/rng.hpp"

namespace arcd {

namespace {

// Resampling the residuals in their original order rebuilds the observed series, so phi_hat*
// ties phi_hat_obs exactly in exact arithmetic. Rounding in the rebuild would otherwise decide
// such ties at random; values within this relative distance count as ties (and so as >=).
constexpr double kTieSlack = 1e-12;

}  // namespace

BootstrapPlan::BootstrapPlan(std::size_t n, std::size_t columns, std::vector<std::uint32_t> indices,
                             std::uint64_t seed)
    : n_(n), columns_(columns), indices_(std::move(indices)), seed_(seed) {
    if (n_ < 2) throw InputError("bootstrap plan needs n >= 2");
    if (columns_ < 1) throw InputError("bootstrap plan needs at least one column");
    if (indices_.size() != n_ * columns_) throw InputError("bootstrap plan has the wrong number of entries");
    for (std::uint32_t i : indices_)
        if (i >= n_) throw InputError("bootstrap plan entry out of range");
}

BootstrapPlan make_plan(std::size_t n, std::size_t columns, std::uint64_t seed) {
    if (n < 2) throw InputError("bootstrap plan needs n >= 2");
    if (columns < 1) throw InputError("bootstrap plan needs at least one column");
    std::vector<std::uint32_t> indices(n * columns);
    boost::random::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(n - 1));
    for (std::size_t j = 0; j < columns; ++j) {
        StreamRng rng(seed, j);
        for (std::size_t t = 0; t < n; ++t) indices[j * n + t] = pick(rng);
    }
    return BootstrapPlan(n, columns, std::move(indices), seed);
}

void write_plan_csv(std::ostream& out, const BootstrapPlan& plan) {
    for (std::size_t t = 0; t < plan.n(); ++t) {
        for (std::size_t j = 0; j < plan.columns(); ++j) {
            if (j) out.put(',');
            out << plan.index(t, j);
        }
        out.put('\n');
    }
}

BootstrapPlan read_plan_csv(std::istream& in) {
    std::vector<std::vector<std::uint32_t>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::uint32_t> row;
        const char* p = line.data();
        const char* end = line.data() + line.size();
        while (p < end) {
            std::uint32_t v = 0;
            const auto res = std::from_chars(p, end, v);
            if (res.ec != std::errc{} || v == 0) throw ParseError("bootstrap plan: bad index", lineno);
            row.push_back(v - 1);
            p = res.ptr;
            if (p < end) {
                if (*p != ',') throw ParseError("bootstrap plan: expected ','", lineno);
                ++p;
            }
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw ParseError("bootstrap plan: ragged row", lineno);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw InputError("bootstrap plan: empty file");
    const std::size_t n = rows.size(), columns = rows.front().size();
    std::vector<std::uint32_t> indices(n * columns);
    for (std::size_t t = 0; t < n; ++t)
        for (std::size_t j = 0; j < columns; ++j) indices[j * n + t] = rows[t][j];
    return BootstrapPlan(n, columns, std::move(indices));
}

EmpiricalCd bootstrap_cd(const TimeSeries& series, const PhiGrid& grid, const BootstrapPlan& plan,
                         unsigned max_parallel) {
    if (plan.n() != series.size())
        throw InputError("bootstrap plan has " + std::to_string(plan.n()) + " rows but the series has " +
                         std::to_string(series.size()) + " observations");
    const double phi_obs = mle_phi(series);
    const double threshold = phi_obs - kTieSlack * std::max(1.0, std::abs(phi_obs));
    const std::size_t n = series.size();
    const std::size_t points = grid.size();

    std::vector<std::vector<double>> resid(points);
    for (std::size_t k = 0; k < points; ++k) resid[k] = residuals(series, grid[k]);

    const unsigned chunks = resolve_parallelism(max_parallel, plan.columns());
    std::vector<std::vector<std::size_t>> exceed(chunks, std::vector<std::size_t>(points, 0));
    std::vector<std::vector<std::size_t>> degenerate(chunks, std::vector<std::size_t>(points, 0));

    for_each_chunk(plan.columns(), chunks, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        for (std::size_t j = begin; j < end; ++j) {
            const auto idx = plan.zero_based_column(j);
            for (std::size_t k = 0; k < points; ++k) {
                const double phi = grid[k];
                const double* e = resid[k].data();
                double y = e[idx[0]];
                double cross = 0.0, lagged = 0.0;
                for (std::size_t t = 1; t < n; ++t) {
                    const double next = phi * y + e[idx[t]];
                    cross += y * next;
                    lagged += y * y;
                    y = next;
                }
                if (!(lagged > 0.0))
                    ++degenerate[chunk][k];
                else if (cross / lagged >= threshold)
                    ++exceed[chunk][k];
            }
        }
    });

    EmpiricalCd cd{grid, std::vector<double>(points), phi_obs, CdSource::bootstrap, 0};
    for (std::size_t k = 0; k < points; ++k) {
        std::size_t count = 0;
        for (std::size_t c = 0; c < chunks; ++c) {
            count += exceed[c][k];
            cd.degenerate += degenerate[c][k];
        }
        cd.values[k] = static_cast<double>(count) / static_cast<double>(plan.columns());
    }
    return cd;
}

ConfidenceCurve bootstrap_curve(const TimeSeries& series, const PhiGrid& grid, const BootstrapPlan& plan,
                                unsigned max_parallel) {
    return confidence_curve(bootstrap_cd(series, grid, plan, max_parallel));
}

}  // namespace arcd
