#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "bcsim/analysis.hpp"
#include "bcsim/cloners.hpp"
#include "bcsim/discrim.hpp"

namespace bcsim::tables {

/// A table cell: numeric (NaN marks not-applicable or failed) or text.
using Cell = std::variant<double, std::string>;

/// Column-labeled rectangular result set, ready for CSV or JSON dumping.
struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// Signal-strength grid. units selects how start/stop are read:
/// "n_mean" (⟨n⟩ = |α|²) or "amplitude" (α itself). Rows are always
/// emitted in n_mean.
struct GridSpec {
    double start = 0.0;
    double stop = 3.0;
    int points = 100;
    std::string units = "n_mean";

    void validate() const;
    std::vector<double> n_means() const;
};

/// Settings for the bounded maximizer used by the cloning schemes.
struct OptimizerConfig {
    double tolerance = 1e-9;
    long max_evals = 2000000;
    std::string strategy = "coordinate_descent";

    opt::OptimizerSpec to_spec() const;
};

/// Number-basis truncation override; dim = 0 picks the per-amplitude
/// automatic dimension.
struct TruncationSection {
    int dim = 0;
    double tail_tol = 1e-10;
};

/// Settings for the wigner subcommand.
struct WignerSection {
    std::string state = "cat_odd";
    double n_mean = 0.5;
    int points = 121;
    bool diff = false;
    double pad_sigmas = 4.5;
};

/// Full run configuration. Loadable from JSON; every field has a default,
/// unknown keys are rejected. An empty schemes list means "the default set
/// for the table being built".
struct RunConfig {
    GridSpec grid;
    std::vector<std::string> schemes;
    std::string receiver = "helstrom";
    OptimizerConfig optimizer;
    TruncationSection truncation;
    std::string out;
    std::string format = "csv";
    long seed = 0;
    WignerSection wigner;

    void validate() const;
    static RunConfig from_json_text(const std::string& text);
    static RunConfig from_json_file(const std::string& path);
    /// The fully resolved configuration as pretty-printed JSON.
    std::string resolved_json() const;
};

/// Fills table-kind-specific defaults (schemes, output name) into a copy.
/// Kinds: "discrim_curve", "fidelity_curve", "params", "cumulants", "wigner".
RunConfig resolve(const RunConfig& cfg, const std::string& table_kind);

std::vector<std::string> default_fidelity_schemes();
std::vector<std::string> default_params_schemes();
std::vector<std::string> default_cumulant_schemes();

/// Truncation settings for amplitude α, honoring any configured override.
fock::TruncationConfig truncation_for(const RunConfig& cfg, double alpha);

/// Binary-discrimination error probabilities across the grid:
/// n_mean, homodyne, kennedy, od, od_beta, helstrom, status.
Table discrim_curve(const RunConfig& cfg);

/// Cloning fidelity of each configured scheme across the grid, next to the
/// two-state cloning bound: n_mean, bruss_bound, <scheme...>, status.
Table fidelity_curve(const RunConfig& cfg);

/// Optimized scheme parameters: n_mean, scheme, T, g, r1, r2, beta_opt,
/// delta_beta, status. Squeezing-type parameters are reported in r1/r2;
/// delta_beta = beta_opt − α.
Table params_table(const RunConfig& cfg);

/// Quadrature cumulants k1..k6 of selected clone states along both axes:
/// n_mean, scheme, axis, k1..k6, status.
Table cumulants_table(const RunConfig& cfg);

/// Wigner sample of the configured state (optionally the difference against
/// the coherent reference |α⟩ on a shared window), with marginals and
/// scalar summaries (integral, origin parity value, half-plane masses).
struct WignerOutput {
    analysis::WignerGrid grid;
    Table table;
    Table marginals;
    std::map<std::string, double> summary;
};
WignerOutput wigner_output(const RunConfig& cfg);

/// 12-significant-digit trimmed decimal form; NaN prints as "nan".
std::string format_sig(double v);

std::string to_csv(const Table& table);
std::string to_json_text(const Table& table);

/// Path of the JSON sidecar that accompanies an output file.
std::string sidecar_path(const std::string& out);

/// Writes the table in the configured format plus a sidecar JSON carrying
/// the fully resolved configuration. Returns the main output path.
std::string write_output(const Table& table, const RunConfig& cfg);

/// Writes the wigner grid table, its marginals table (alongside the main
/// output), and the sidecar with config and summaries.
std::string write_wigner_output(const WignerOutput& out, const RunConfig& cfg);

} // namespace bcsim::tables
