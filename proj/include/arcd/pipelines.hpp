#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "arcd/bayes.hpp"
#include "arcd/io.hpp"

namespace arcd {

enum class Command { cd, curve, density, df, bootstrap, bayes_flat, bayes_spike, prop1, analyze };

std::string_view to_string(Command command) noexcept;
std::optional<Command> parse_command(std::string_view name) noexcept;

struct SpikeAuto {};
struct SpikeExplicit {
    double b;
};
struct SpikeNone {};
/// auto: b = 1 - C(1) from the bootstrap; explicit: user-given b; none: no spike.
using SpikeMode = std::variant<SpikeAuto, SpikeExplicit, SpikeNone>;

/// Parses "known:<v>" or "mle".
Sigma2Mode parse_sigma2_mode(std::string_view text);
/// Parses "auto", "b:<v>" or "none".
SpikeMode parse_spike_mode(std::string_view text);

struct AnalysisConfig {
    Command command = Command::cd;

    // Data commands (bootstrap, bayes-*, analyze).
    std::string input;
    std::string column = "1";
    bool demean = false;

    std::optional<double> phi_min;
    std::size_t grid_points = 400;
    std::optional<std::size_t> reps;  // 10^4, or 10^5 with `precise`
    std::optional<std::size_t> n;     // 100 for cd/curve/density, 1000 for df, 400 for prop1
    std::optional<std::uint64_t> seed;
    Sigma2Mode sigma2 = Sigma2Estimated{};
    SpikeMode spike = SpikeAuto{};
    OutputFormat format = OutputFormat::csv;
    bool precise = false;

    std::optional<double> phi_obs;  // cd, curve, density
    double phi0 = 0.5;              // prop1
    double c = 0.0;                 // df: local-to-unity constant
    std::vector<double> levels{0.90, 0.95};
    DensityKind density = DensityKind::smoothed;  // prop1
    std::size_t inner_reps = 1000;                // prop1 with smoothed density
    unsigned max_parallel = 0;

    std::size_t resolved_reps() const;
    /// Echo of every resolved setting, written into each output.
    nlohmann::json to_json() const;
};

/// Runs one command end to end and returns its table. Throws InputError for bad
/// configuration or data and NumericalError subclasses for numerical failures.
Table run_pipeline(const AnalysisConfig& config);

}  // namespace arcd
