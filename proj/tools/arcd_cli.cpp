// arcd: confidence distributions for the AR(1) coefficient.
//
//   arcd cd --phi-obs 0.9 --n 100 --seed 1
//   arcd analyze --input sek_eur.csv --demean --seed 7 --precise
//
// Exit codes: 0 success, 1 unexpected failure, 2 input error, 3 numerical error.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "arcd/errors.hpp"
#include "arcd/pipelines.hpp"

namespace {

struct RawOptions {
    std::string input;
    std::string column = "1";
    bool demean = false;
    double phi_min = 0.0;
    std::size_t grid_points = 400;
    std::size_t reps = 0;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::string sigma2 = "mle";
    std::string spike = "auto";
    std::string format = "csv";
    bool precise = false;
    double phi_obs = 0.0;
    double phi0 = 0.5;
    double c = 0.0;
    std::vector<double> levels{0.90, 0.95};
    std::string density = "smoothed";
    std::size_t inner_reps = 1000;
    unsigned max_parallel = 0;
    std::string output;
};

struct Registered {
    CLI::App* app;
    CLI::Option* phi_min;
    CLI::Option* reps;
    CLI::Option* n;
    CLI::Option* seed;
    CLI::Option* phi_obs;
};

Registered add_command(CLI::App& root, const std::string& name, const std::string& help, RawOptions& o) {
    CLI::App* sub = root.add_subcommand(name, help);
    Registered r{sub, nullptr, nullptr, nullptr, nullptr, nullptr};
    sub->add_option("--input", o.input, "CSV file with the observed series");
    sub->add_option("--column", o.column, "1-based column index or header name")->capture_default_str();
    sub->add_flag("--demean", o.demean, "Subtract the sample mean before fitting");
    r.phi_min = sub->add_option("--phi-min", o.phi_min, "Lower end of the phi grid (upper end is 1)");
    sub->add_option("--grid-points", o.grid_points, "Number of grid intervals")->capture_default_str();
    r.reps = sub->add_option("--reps", o.reps, "Monte Carlo / bootstrap replicates");
    r.n = sub->add_option("--n", o.n, "Simulated sample size");
    r.seed = sub->add_option("--seed", o.seed, "Master seed (required)");
    sub->add_option("--sigma2", o.sigma2, "known:<v> or mle")->capture_default_str();
    sub->add_option("--spike", o.spike, "auto, b:<v> or none")->capture_default_str();
    sub->add_option("--format", o.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_flag("--precise", o.precise, "Use 10^5 replicates by default");
    r.phi_obs = sub->add_option("--phi-obs", o.phi_obs, "Observed estimate (cd, curve, density)");
    sub->add_option("--phi0", o.phi0, "Generating coefficient (prop1)")->capture_default_str();
    sub->add_option("--c", o.c, "Local-to-unity constant for df; 0 is Dickey-Fuller")->capture_default_str();
    sub->add_option("--levels", o.levels, "Interval levels")->capture_default_str();
    sub->add_option("--density", o.density, "smoothed or c2 (prop1)")
        ->check(CLI::IsMember({"smoothed", "c2"}))
        ->capture_default_str();
    sub->add_option("--inner-reps", o.inner_reps, "Replicates per simulated CD (prop1)")->capture_default_str();
    sub->add_option("--max-parallel", o.max_parallel, "Worker threads, 0 = all cores")->capture_default_str();
    sub->add_option("-o,--output", o.output, "Write to file instead of stdout");
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Confidence distributions for the AR(1) coefficient"};
    app.require_subcommand(1);
    RawOptions o;

    const std::pair<const char*, const char*> commands[] = {
        {"cd", "Simulated confidence distribution for a given phi_obs"},
        {"curve", "Simulated confidence curve |1 - 2C|"},
        {"density", "Probit-smoothed confidence density with the c1 and c2 approximations"},
        {"df", "Dickey-Fuller (or near-unit-root) limit distribution table"},
        {"bootstrap", "Residual-bootstrap confidence distribution of an observed series"},
        {"bayes-flat", "Flat-prior (integrated profile likelihood) distribution"},
        {"bayes-spike", "Flat prior plus a point mass at phi = 1"},
        {"prop1", "Monte Carlo check of the implied-prior expansion"},
        {"analyze", "Full pipeline: estimate, bootstrap, flat and spike priors, intervals"},
    };
    std::vector<Registered> subs;
    for (const auto& [name, help] : commands) subs.push_back(add_command(app, name, help, o));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const Registered* active = nullptr;
        for (const auto& r : subs)
            if (r.app->parsed()) active = &r;

        arcd::AnalysisConfig cfg;
        cfg.command = *arcd::parse_command(active->app->get_name());
        cfg.input = o.input;
        cfg.column = o.column;
        cfg.demean = o.demean;
        if (active->phi_min->count()) cfg.phi_min = o.phi_min;
        cfg.grid_points = o.grid_points;
        if (active->reps->count()) cfg.reps = o.reps;
        if (active->n->count()) cfg.n = o.n;
        if (active->seed->count()) cfg.seed = o.seed;
        cfg.sigma2 = arcd::parse_sigma2_mode(o.sigma2);
        cfg.spike = arcd::parse_spike_mode(o.spike);
        cfg.format = o.format == "json" ? arcd::OutputFormat::json : arcd::OutputFormat::csv;
        cfg.precise = o.precise;
        if (active->phi_obs->count()) cfg.phi_obs = o.phi_obs;
        cfg.phi0 = o.phi0;
        cfg.c = o.c;
        cfg.levels = o.levels;
        cfg.density = o.density == "c2" ? arcd::DensityKind::c2_closed_form : arcd::DensityKind::smoothed;
        cfg.inner_reps = o.inner_reps;
        cfg.max_parallel = o.max_parallel;

        const arcd::Table table = arcd::run_pipeline(cfg);
        if (o.output.empty()) {
            arcd::write_table(std::cout, table, cfg.format);
        } else {
            std::ofstream out(o.output);
            if (!out) throw arcd::InputError("cannot write '" + o.output + "'");
            arcd::write_table(out, table, cfg.format);
        }
        return 0;
    } catch (const arcd::InputError& e) {
        std::cerr << "arcd: input error: " << e.what() << '\n';
        return 2;
    } catch (const arcd::NumericalError& e) {
        std::cerr << "arcd: numerical error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "arcd: " << e.what() << '\n';
        return 1;
    }
}
