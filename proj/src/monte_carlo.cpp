#include "arcd/monte_carlo.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include <boost/random/normal_distribution.hpp>

#include "arcd/ar1.hpp"
#include "arcd/errors.hpp"
#include "arcd/parallel.hpp"
#include "arcd/rng.hpp"

namespace arcd {

void McConfig::validate() const {
    if (reps < 1) throw InputError("Monte Carlo config needs reps >= 1");
    if (n < 2) throw InputError("Monte Carlo config needs n >= 2");
}

void fill_normals(std::uint64_t seed, std::uint64_t index, std::span<double> out) {
    StreamRng rng(seed, index);
    boost::random::normal_distribution<double> normal;
    for (double& x : out) x = normal(rng);
}

EmpiricalCd estimate_cd(double phi_obs, const PhiGrid& grid, const McConfig& config) {
    config.validate();
    const std::size_t points = grid.size();
    const unsigned chunks = resolve_parallelism(config.max_parallel, config.reps);

    struct Tally {
        std::vector<std::size_t> exceed;
        std::vector<std::size_t> degenerate;
    };
    std::vector<Tally> tallies(chunks, Tally{std::vector<std::size_t>(points, 0),
                                             std::vector<std::size_t>(points, 0)});

    for_each_chunk(config.reps, chunks, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        Tally& tally = tallies[chunk];
        std::vector<double> noise(config.n);
        for (std::size_t r = begin; r < end; ++r) {
            fill_normals(config.seed, r, noise);
            for (std::size_t k = 0; k < points; ++k) {
                bool degenerate = false;
                const double phi_hat = simulated_phi_hat(noise, grid[k], degenerate);
                if (degenerate)
                    ++tally.degenerate[k];
                else if (phi_hat >= phi_obs)
                    ++tally.exceed[k];
            }
        }
    });

    EmpiricalCd cd{grid, std::vector<double>(points, 0.0), phi_obs, CdSource::simulated, 0};
    for (std::size_t k = 0; k < points; ++k) {
        std::size_t exceed = 0, degenerate = 0;
        for (const Tally& t : tallies) {
            exceed += t.exceed[k];
            degenerate += t.degenerate[k];
        }
        cd.degenerate += degenerate;
        const std::size_t valid = config.reps - degenerate;
        cd.values[k] = valid == 0 ? 0.0 : static_cast<double>(exceed) / static_cast<double>(valid);
    }
    return cd;
}

namespace {

LimitSample simulate_scaled_errors(double phi, const McConfig& config) {
    config.validate();
    const unsigned chunks = resolve_parallelism(config.max_parallel, config.reps);
    const double scale = static_cast<double>(config.n);
    std::vector<double> draws(config.reps);
    std::vector<char> bad(config.reps, 0);

    for_each_chunk(config.reps, chunks, [&](std::size_t, std::size_t begin, std::size_t end) {
        std::vector<double> noise(config.n);
        for (std::size_t r = begin; r < end; ++r) {
            fill_normals(config.seed, r, noise);
            bool degenerate = false;
            const double phi_hat = simulated_phi_hat(noise, phi, degenerate);
            bad[r] = degenerate;
            draws[r] = scale * (phi_hat - phi);
        }
    });

    LimitSample sample;
    sample.inner_n = config.n;
    sample.draws.reserve(config.reps);
    for (std::size_t r = 0; r < config.reps; ++r) {
        if (bad[r])
            ++sample.degenerate;
        else
            sample.draws.push_back(draws[r]);
    }
    std::sort(sample.draws.begin(), sample.draws.end());
    return sample;
}

}  // namespace

LimitSample simulate_df_distribution(const McConfig& config) {
    LimitSample sample = simulate_scaled_errors(1.0, config);
    sample.kind = LimitKind::dickey_fuller;
    return sample;
}

LimitSample simulate_near_unit_limit(double c, const McConfig& config) {
    LimitSample sample = simulate_scaled_errors(std::exp(c / static_cast<double>(config.n)), config);
    sample.kind = c == 0.0 ? LimitKind::dickey_fuller : LimitKind::ornstein_uhlenbeck;
    sample.c = c;
    return sample;
}

double df_cdf(const LimitSample& sample, double z) {
    if (sample.draws.empty()) throw InputError("df_cdf: empty limit sample");
    const auto it = std::upper_bound(sample.draws.begin(), sample.draws.end(), z);
    return static_cast<double>(it - sample.draws.begin()) / static_cast<double>(sample.draws.size());
}

double c_at_one(double phi_obs, std::size_t n, const LimitSample& sample) {
    return 1.0 - df_cdf(sample, static_cast<double>(n) * (phi_obs - 1.0));
}

double limit_quantile(const LimitSample& sample, double p) {
    if (sample.draws.empty()) throw InputError("limit_quantile: empty limit sample");
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("limit_quantile: p must lie in [0, 1]");
    const double m = static_cast<double>(sample.draws.size());
    // Smallest draw with empirical CDF >= p.
    const auto idx = static_cast<std::size_t>(std::max(0.0, std::ceil(p * m) - 1.0));
    return sample.draws[std::min(idx, sample.draws.size() - 1)];
}

void write_limit_sample(std::ostream& out, const LimitSample& sample) {
    char buf[64];
    for (double d : sample.draws) {
        const auto res = std::to_chars(buf, buf + sizeof buf, d, std::chars_format::general, 17);
        out.write(buf, res.ptr - buf);
        out.put('\n');
    }
}

LimitSample read_limit_sample(std::istream& in, LimitKind kind, double c, std::size_t inner_n) {
    LimitSample sample;
    sample.kind = kind;
    sample.c = c;
    sample.inner_n = inner_n;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        double v = 0.0;
        const auto res = std::from_chars(line.data(), line.data() + line.size(), v);
        if (res.ec != std::errc{} || res.ptr != line.data() + line.size())
            throw ParseError("limit sample: not a number: '" + line + "'", lineno);
        sample.draws.push_back(v);
    }
    std::sort(sample.draws.begin(), sample.draws.end());
    return sample;
}

}  // namespace arcd
