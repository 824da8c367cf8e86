#include "arcd/pipelines.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <string>

#include "arcd/bootstrap.hpp"
#include "arcd/cd_analysis.hpp"
#include "arcd/errors.hpp"
#include "arcd/monte_carlo.hpp"

namespace arcd {

namespace {

using nlohmann::json;

constexpr std::pair<Command, std::string_view> kCommandNames[] = {
    {Command::cd, "cd"},
    {Command::curve, "curve"},
    {Command::density, "density"},
    {Command::df, "df"},
    {Command::bootstrap, "bootstrap"},
    {Command::bayes_flat, "bayes-flat"},
    {Command::bayes_spike, "bayes-spike"},
    {Command::prop1, "prop1"},
    {Command::analyze, "analyze"},
};

double parse_number(std::string_view text, std::string_view what) {
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || !std::isfinite(v))
        throw InputError("invalid number in " + std::string(what) + ": '" + std::string(text) + "'");
    return v;
}

std::size_t default_n(Command command) {
    switch (command) {
        case Command::df: return 1000;
        case Command::prop1: return 400;
        default: return 100;
    }
}

std::uint64_t require_seed(const AnalysisConfig& cfg) {
    if (!cfg.seed) throw InputError("--seed is required");
    return *cfg.seed;
}

double require_phi_obs(const AnalysisConfig& cfg) {
    if (!cfg.phi_obs) throw InputError("--phi-obs is required for '" + std::string(to_string(cfg.command)) + "'");
    return *cfg.phi_obs;
}

TimeSeries load_series(const AnalysisConfig& cfg) {
    if (cfg.input.empty()) throw InputError("--input is required for '" + std::string(to_string(cfg.command)) + "'");
    return read_series(cfg.input, cfg.column, cfg.demean);
}

McConfig mc_config(const AnalysisConfig& cfg) {
    return McConfig{cfg.resolved_reps(), cfg.n.value_or(default_n(cfg.command)), require_seed(cfg),
                    cfg.max_parallel};
}

PhiGrid cd_grid(const AnalysisConfig& cfg, double phi_obs) {
    return cfg.phi_min ? PhiGrid::to_one(*cfg.phi_min, cfg.grid_points) : PhiGrid::around(phi_obs, cfg.grid_points);
}

PhiGrid bayes_grid(const AnalysisConfig& cfg) {
    return cfg.phi_min ? PhiGrid::to_one(*cfg.phi_min, cfg.grid_points) : likelihood_grid(cfg.grid_points);
}

json interval_json(const EmpiricalCd& cd, double level) {
    try {
        const ConfidenceInterval ci = extract_interval(cd, level);
        return {{"level", level}, {"lo", ci.lo}, {"hi", ci.hi}, {"hi_clipped", ci.hi_clipped}};
    } catch (const LevelUnreachableError& e) {
        return {{"level", level}, {"error", e.what()}};
    }
}

json median_json(const EmpiricalCd& cd) {
    try {
        return cd_median(cd);
    } catch (const NoCrossingError&) {
        return nullptr;
    }
}

json describe_cd(const AnalysisConfig& cfg, const EmpiricalCd& cd) {
    json s{{"source", to_string(cd.source)}, {"phi_obs", cd.phi_obs}, {"median", median_json(cd)},
           {"degenerate", cd.degenerate}};
    if (cd.grid.back() == 1.0) {
        s["C(1)"] = cd.values.back();
        s["cc(1)"] = std::abs(1.0 - 2.0 * cd.values.back());
    }
    json intervals = json::array();
    for (double level : cfg.levels) intervals.push_back(interval_json(cd, level));
    s["intervals"] = intervals;
    return s;
}

void add_cd_rows(Table& table, const EmpiricalCd& cd) {
    table.columns = {"phi", "cd", "cc"};
    for (std::size_t k = 0; k < cd.grid.size(); ++k)
        table.rows.push_back({cd.grid[k], cd.values[k], std::abs(1.0 - 2.0 * cd.values[k])});
}

Table run_cd(const AnalysisConfig& cfg, bool as_curve) {
    const double phi_obs = require_phi_obs(cfg);
    const EmpiricalCd cd = estimate_cd(phi_obs, cd_grid(cfg, phi_obs), mc_config(cfg));
    Table table;
    table.summary = describe_cd(cfg, cd);
    table.columns = {"phi", "value"};
    const auto curve = confidence_curve(cd);
    for (std::size_t k = 0; k < cd.grid.size(); ++k)
        table.rows.push_back({cd.grid[k], as_curve ? curve.values[k] : cd.values[k]});
    return table;
}

Table run_density(const AnalysisConfig& cfg) {
    const double phi_obs = require_phi_obs(cfg);
    const McConfig mc = mc_config(cfg);
    const EmpiricalCd cd = estimate_cd(phi_obs, cd_grid(cfg, phi_obs), mc);
    const SmoothedDensityFit fit = fit_smoothed_density(cd);
    Table table;
    table.summary = {{"a", fit.a},
                     {"b", fit.b},
                     {"selected_lo", fit.selected_range.first},
                     {"selected_hi", fit.selected_range.second},
                     {"points_used", fit.points_used},
                     {"nonpositive_slope", fit.nonpositive_slope}};
    table.columns = {"phi", "c_emp", "c1", "c2"};
    for (std::size_t k = 0; k < cd.grid.size(); ++k) {
        const double phi = cd.grid[k];
        if (phi < fit.selected_range.first || phi > fit.selected_range.second || !(std::abs(phi) < 1.0))
            continue;
        table.rows.push_back({phi, fit.density(phi), asymptotic_density_c1(phi, phi_obs, mc.n),
                              asymptotic_density_c2(phi, phi_obs, mc.n)});
    }
    return table;
}

Table run_df(const AnalysisConfig& cfg) {
    const McConfig mc = mc_config(cfg);
    const LimitSample sample = simulate_near_unit_limit(cfg.c, mc);
    Table table;
    table.summary = {{"kind", sample.kind == LimitKind::dickey_fuller ? "dickey-fuller" : "ornstein-uhlenbeck"},
                     {"c", sample.c},
                     {"inner_n", sample.inner_n},
                     {"draws", sample.draws.size()},
                     {"degenerate", sample.degenerate},
                     {"F(-5)", df_cdf(sample, -5.0)},
                     {"F(-10)", df_cdf(sample, -10.0)},
                     {"F(0)", df_cdf(sample, 0.0)}};
    table.columns = {"p", "quantile"};
    for (double p : {0.01, 0.025, 0.05, 0.10, 0.125, 0.25, 0.5, 0.75, 0.90, 0.95, 0.975, 0.99})
        table.rows.push_back({p, limit_quantile(sample, p)});
    return table;
}

EmpiricalCd bootstrap_for(const AnalysisConfig& cfg, const TimeSeries& series) {
    const double phi_hat = mle_phi(series);
    const BootstrapPlan plan = make_plan(series.size(), cfg.resolved_reps(), require_seed(cfg));
    return bootstrap_cd(series, cd_grid(cfg, phi_hat), plan, cfg.max_parallel);
}

double spike_height(const AnalysisConfig& cfg, const TimeSeries& series) {
    if (const auto* e = std::get_if<SpikeExplicit>(&cfg.spike)) return e->b;
    if (std::holds_alternative<SpikeNone>(cfg.spike)) return 0.0;
    const BootstrapPlan plan = make_plan(series.size(), cfg.resolved_reps(), require_seed(cfg));
    return default_spike_height(bootstrap_cd(series, PhiGrid::single(1.0), plan, cfg.max_parallel));
}

Table run_bootstrap(const AnalysisConfig& cfg) {
    const TimeSeries series = load_series(cfg);
    const EmpiricalCd cd = bootstrap_for(cfg, series);
    Table table;
    table.summary = describe_cd(cfg, cd);
    add_cd_rows(table, cd);
    return table;
}

Table run_bayes(const AnalysisConfig& cfg, bool spike) {
    const TimeSeries series = load_series(cfg);
    const PhiGrid grid = bayes_grid(cfg);
    Table table;
    if (spike) {
        const SpikePriorCd s = spike_prior_cd(series, grid, spike_height(cfg, series));
        table.summary = describe_cd(cfg, s.cd);
        table.summary["b"] = s.b;
        add_cd_rows(table, s.cd);
    } else {
        const EmpiricalCd cd = flat_prior_cd(series, grid);
        table.summary = describe_cd(cfg, cd);
        add_cd_rows(table, cd);
    }
    table.summary["sigma2_hat"] = mle_sigma2(series);
    return table;
}

Table run_prop1(const AnalysisConfig& cfg) {
    Proposition1Options opt;
    opt.phi0 = cfg.phi0;
    if (const auto* k = std::get_if<Sigma2Known>(&cfg.sigma2)) opt.sigma2 = k->value;
    opt.n = cfg.n.value_or(default_n(cfg.command));
    opt.reps = cfg.reps.value_or(cfg.precise ? 10000 : 1000);
    opt.seed = require_seed(cfg);
    opt.window = proposition1_window(cfg.phi0);
    opt.density = cfg.density;
    opt.inner_reps = cfg.inner_reps;
    opt.max_parallel = cfg.max_parallel;
    const Proposition1Report rep = proposition1_check(opt);

    Table table;
    table.summary = {{"target_level", rep.target_level},
                     {"level_known", rep.level_known},
                     {"level_estimated", rep.level_estimated},
                     {"spread_known", rep.spread_known},
                     {"spread_estimated", rep.spread_estimated},
                     {"used", rep.used},
                     {"skipped", rep.skipped}};
    table.columns = {"phi", "mean_known", "sd_known", "mean_estimated", "sd_estimated", "predicted_sd"};
    for (std::size_t k = 0; k < rep.grid.size(); ++k)
        table.rows.push_back({rep.grid[k], rep.mean_known[k], rep.sd_known[k], rep.mean_estimated[k],
                              rep.sd_estimated[k], rep.predicted_sd[k]});
    return table;
}

Table run_analyze(const AnalysisConfig& cfg) {
    const TimeSeries series = load_series(cfg);
    const FitResult fit = fit_ar1(series);
    const EmpiricalCd boot = bootstrap_for(cfg, series);
    const double c_one = boot.values.back();
    const EmpiricalCd flat = flat_prior_cd(series, bayes_grid(cfg));

    double b = 0.0;
    if (const auto* e = std::get_if<SpikeExplicit>(&cfg.spike))
        b = e->b;
    else if (std::holds_alternative<SpikeAuto>(cfg.spike))
        b = default_spike_height(boot);

    Table table;
    table.summary = {{"n", series.size()},
                     {"phi_hat", fit.phi_hat},
                     {"sigma2_hat", fit.sigma2_hat},
                     {"C(1)", c_one},
                     {"cc(1)", std::abs(1.0 - 2.0 * c_one)},
                     {"unit_root_p", 1.0 - c_one},
                     {"b", b},
                     {"bootstrap_degenerate", boot.degenerate},
                     {"median_bootstrap", median_json(boot)},
                     {"median_flat_prior", median_json(flat)}};
    table.columns = {"method", "level", "lo", "hi", "hi_clipped"};

    auto add = [&](std::string_view method, const EmpiricalCd& cd) {
        for (double level : cfg.levels) {
            const json ci = interval_json(cd, level);
            if (ci.contains("error"))
                table.rows.push_back({std::string(method), level, nullptr, nullptr, nullptr});
            else
                table.rows.push_back({std::string(method), level, ci["lo"], ci["hi"], ci["hi_clipped"]});
        }
    };
    add("bootstrap", boot);
    add("flat-prior", flat);
    if (!std::holds_alternative<SpikeNone>(cfg.spike)) {
        const SpikePriorCd spike = spike_prior_cd(series, bayes_grid(cfg), b);
        table.summary["median_spike_prior"] = median_json(spike.cd);
        add("spike-prior", spike.cd);
    }
    return table;
}

}  // namespace

std::string_view to_string(Command command) noexcept {
    for (const auto& [c, name] : kCommandNames)
        if (c == command) return name;
    return "unknown";
}

std::optional<Command> parse_command(std::string_view name) noexcept {
    for (const auto& [c, n] : kCommandNames)
        if (n == name) return c;
    return std::nullopt;
}

Sigma2Mode parse_sigma2_mode(std::string_view text) {
    if (text == "mle") return Sigma2Estimated{};
    if (text.starts_with("known:")) {
        const double v = parse_number(text.substr(6), "--sigma2");
        if (!(v > 0.0)) throw InputError("--sigma2 known:<v> needs v > 0");
        return Sigma2Known{v};
    }
    throw InputError("--sigma2 must be 'known:<v>' or 'mle'");
}

SpikeMode parse_spike_mode(std::string_view text) {
    if (text == "auto") return SpikeAuto{};
    if (text == "none") return SpikeNone{};
    if (text.starts_with("b:")) {
        const double b = parse_number(text.substr(2), "--spike");
        if (!(b >= 0.0 && b < 1.0)) throw InputError("--spike b:<v> needs 0 <= v < 1");
        return SpikeExplicit{b};
    }
    throw InputError("--spike must be 'auto', 'b:<v>' or 'none'");
}

std::size_t AnalysisConfig::resolved_reps() const {
    const std::size_t r = reps.value_or(precise ? 100000 : 10000);
    if (r < 1) throw InputError("--reps must be positive");
    return r;
}

nlohmann::json AnalysisConfig::to_json() const {
    json j{{"command", to_string(command)},
           {"grid_points", grid_points},
           {"reps", command == Command::prop1 ? reps.value_or(precise ? 10000 : 1000) : resolved_reps()},
           {"n", n.value_or(default_n(command))},
           {"seed", seed ? json(*seed) : json(nullptr)},
           {"format", format == OutputFormat::csv ? "csv" : "json"},
           {"precise", precise},
           {"levels", levels}};
    j["phi_min"] = phi_min ? json(*phi_min) : json(nullptr);
    j["sigma2"] = std::holds_alternative<Sigma2Estimated>(sigma2)
                      ? json("mle")
                      : json("known:" + format_real(std::get<Sigma2Known>(sigma2).value));
    if (const auto* e = std::get_if<SpikeExplicit>(&spike))
        j["spike"] = "b:" + format_real(e->b);
    else
        j["spike"] = std::holds_alternative<SpikeNone>(spike) ? "none" : "auto";
    switch (command) {
        case Command::cd:
        case Command::curve:
        case Command::density:
            j["phi_obs"] = phi_obs ? json(*phi_obs) : json(nullptr);
            break;
        case Command::df:
            j["c"] = c;
            break;
        case Command::prop1:
            j["phi0"] = phi0;
            j["density"] = density == DensityKind::smoothed ? "smoothed" : "c2";
            j["inner_reps"] = inner_reps;
            break;
        default:
            j["input"] = input;
            j["column"] = column;
            j["demean"] = demean;
            break;
    }
    return j;
}

Table run_pipeline(const AnalysisConfig& cfg) {
    Table table;
    switch (cfg.command) {
        case Command::cd: table = run_cd(cfg, false); break;
        case Command::curve: table = run_cd(cfg, true); break;
        case Command::density: table = run_density(cfg); break;
        case Command::df: table = run_df(cfg); break;
        case Command::bootstrap: table = run_bootstrap(cfg); break;
        case Command::bayes_flat: table = run_bayes(cfg, false); break;
        case Command::bayes_spike: table = run_bayes(cfg, true); break;
        case Command::prop1: table = run_prop1(cfg); break;
        case Command::analyze: table = run_analyze(cfg); break;
    }
    table.config = cfg.to_json();
    return table;
}

}  // namespace arcd
