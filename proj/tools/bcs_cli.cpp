#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bcsim/errors.hpp"
#include "bcsim/tables.hpp"

namespace {

struct Flags {
    std::string config;
    std::string out;
    std::string format = "csv";
    long seed = 0;
    double grid_start = 0.0;
    double grid_stop = 3.0;
    int grid_points = 100;
    std::string grid_units = "n_mean";
    std::vector<std::string> schemes;
    std::string receiver = "helstrom";
    int dim = 0;
    double tail_tol = 1e-10;
    double opt_tolerance = 1e-9;
    long opt_max_evals = 2000000;
    std::string opt_strategy = "coordinate_descent";
    std::string wigner_state = "cat_odd";
    double wigner_n_mean = 0.5;
    int wigner_points = 121;
    bool wigner_diff = false;
    double wigner_pad = 4.5;
};

void add_common_options(CLI::App* sub, Flags& f) {
    sub->add_option("--config", f.config, "JSON configuration file; explicit flags override it");
    sub->add_option("--out", f.out, "Output path (default: <table>.<format>)");
    sub->add_option("--format", f.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", f.seed, "Seed recorded in the run metadata");
    sub->add_option("--grid-start", f.grid_start, "Grid start (in --grid-units)");
    sub->add_option("--grid-stop", f.grid_stop, "Grid stop (in --grid-units)");
    sub->add_option("--grid-points", f.grid_points, "Number of grid points");
    sub->add_option("--grid-units", f.grid_units, "Grid units: n_mean or amplitude")
        ->check(CLI::IsMember({"n_mean", "amplitude"}));
    sub->add_option("--schemes", f.schemes, "Comma-separated scheme list")->delimiter(',');
    sub->add_option("--receiver", f.receiver,
                    "Receiver for measure-and-prepare schemes: helstrom, homodyne, kennedy, od");
    sub->add_option("--dim", f.dim, "Number-basis dimension override (0 = automatic)");
    sub->add_option("--tail-tol", f.tail_tol, "Truncation tail tolerance");
    sub->add_option("--opt-tolerance", f.opt_tolerance, "Optimizer value tolerance");
    sub->add_option("--opt-max-evals", f.opt_max_evals, "Optimizer evaluation budget");
    sub->add_option("--opt-strategy", f.opt_strategy,
                    "Optimizer strategy: golden_section, simplex, coordinate_descent");
}

bcsim::tables::RunConfig build_config(const CLI::App* sub, const Flags& f) {
    // Not every option is registered on every subcommand, so look names up
    // without throwing and treat absent ones as not given.
    const auto given = [sub](const char* name) {
        const CLI::Option* opt = sub->get_option_no_throw(name);
        return opt != nullptr && opt->count() > 0;
    };
    bcsim::tables::RunConfig cfg;
    if (given("--config")) {
        cfg = bcsim::tables::RunConfig::from_json_file(f.config);
    }
    if (given("--out")) cfg.out = f.out;
    if (given("--format")) cfg.format = f.format;
    if (given("--seed")) cfg.seed = f.seed;
    if (given("--grid-start")) cfg.grid.start = f.grid_start;
    if (given("--grid-stop")) cfg.grid.stop = f.grid_stop;
    if (given("--grid-points")) cfg.grid.points = f.grid_points;
    if (given("--grid-units")) cfg.grid.units = f.grid_units;
    if (given("--schemes")) cfg.schemes = f.schemes;
    if (given("--receiver")) cfg.receiver = f.receiver;
    if (given("--dim")) cfg.truncation.dim = f.dim;
    if (given("--tail-tol")) cfg.truncation.tail_tol = f.tail_tol;
    if (given("--opt-tolerance")) cfg.optimizer.tolerance = f.opt_tolerance;
    if (given("--opt-max-evals")) cfg.optimizer.max_evals = f.opt_max_evals;
    if (given("--opt-strategy")) cfg.optimizer.strategy = f.opt_strategy;
    if (given("--state")) cfg.wigner.state = f.wigner_state;
    if (given("--n-mean")) cfg.wigner.n_mean = f.wigner_n_mean;
    if (given("--points")) cfg.wigner.points = f.wigner_points;
    if (given("--diff")) cfg.wigner.diff = f.wigner_diff;
    if (given("--pad-sigmas")) cfg.wigner.pad_sigmas = f.wigner_pad;
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrimination bounds, cloning fidelities, and phase-space maps "
                 "for the binary coherent-state alphabet"};
    app.require_subcommand(1);
    Flags f;

    auto* discrim = app.add_subcommand(
        "discrim-curve", "Error probabilities of the standard receivers across the grid");
    auto* fidelity = app.add_subcommand(
        "fidelity-curve", "Mean cloning fidelity of each scheme across the grid");
    auto* params = app.add_subcommand(
        "params", "Optimized scheme parameters across the grid");
    auto* wigner = app.add_subcommand(
        "wigner", "Wigner map of a selected state (optionally minus the coherent reference)");
    auto* cumulants = app.add_subcommand(
        "cumulants", "Quadrature cumulants k1..k6 of clone states across the grid");
    for (CLI::App* sub : {discrim, fidelity, params, wigner, cumulants}) {
        add_common_options(sub, f);
    }
    wigner->add_option("--state", f.wigner_state,
                       "State selector: coherent, cat_even, cat_odd, qubit_basis_0, "
                       "qubit_basis_1, optimal_clone");
    wigner->add_option("--n-mean", f.wigner_n_mean, "Mean photon number |alpha|^2 of the state");
    wigner->add_option("--points", f.wigner_points, "Grid points per axis");
    wigner->add_flag("--diff", f.wigner_diff, "Emit the difference against the coherent reference");
    wigner->add_option("--pad-sigmas", f.wigner_pad, "Window half-width in sigmas (>= 4)");

    CLI11_PARSE(app, argc, argv);

    try {
        const CLI::App* sub = app.get_subcommands().front();
        std::string kind;
        if (sub == discrim) kind = "discrim_curve";
        if (sub == fidelity) kind = "fidelity_curve";
        if (sub == params) kind = "params";
        if (sub == wigner) kind = "wigner";
        if (sub == cumulants) kind = "cumulants";

        const auto cfg = bcsim::tables::resolve(build_config(sub, f), kind);
        std::string path;
        if (kind == "wigner") {
            path = bcsim::tables::write_wigner_output(bcsim::tables::wigner_output(cfg), cfg);
        } else {
            bcsim::tables::Table table;
            if (kind == "discrim_curve") table = bcsim::tables::discrim_curve(cfg);
            if (kind == "fidelity_curve") table = bcsim::tables::fidelity_curve(cfg);
            if (kind == "params") table = bcsim::tables::params_table(cfg);
            if (kind == "cumulants") table = bcsim::tables::cumulants_table(cfg);
            path = bcsim::tables::write_output(table, cfg);
        }
        std::cout << "wrote " << path << " and " << bcsim::tables::sidecar_path(path) << "\n";
        return 0;
    } catch (const bcsim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const bcsim::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
