#include "bcsim/tables.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string_view>
#include <thread>

#include "json.hpp"

#include "bcsim/alphabet.hpp"
#include "bcsim/errors.hpp"

namespace bcsim::tables {
namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_keys(const json& j, std::initializer_list<const char*> allowed, const char* where) {
    if (!j.is_object()) throw ConfigError(std::string("config: ") + where + " must be an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        const bool known = std::any_of(allowed.begin(), allowed.end(),
                                       [&](const char* k) { return it.key() == k; });
        if (!known) {
            throw ConfigError("config: unknown key '" + it.key() + "' in " + where);
        }
    }
}

// Runs fn(0..n−1) on a small thread pool and returns results in index
// order; the first captured exception (by index) is rethrown.
template <typename Fn>
auto parallel_map(std::size_t n, Fn&& fn) {
    using R = decltype(fn(std::size_t{}));
    std::vector<R> out(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers = std::max<std::size_t>(1, std::min(hw, n));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
                try {
                    out[i] = fn(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

cloners::CloneReport clone_for_scheme(const std::string& scheme, double alpha,
                                      const RunConfig& cfg) {
    const auto spec = cfg.optimizer.to_spec();
    const auto receiver = discrim::receiver_from_name(cfg.receiver);
    if (scheme == "beamsplitter") return cloners::beamsplitter_cloner(alpha);
    if (scheme == "psa") return cloners::psa_cloner(alpha, spec);
    if (scheme == "mp_exact") {
        return cloners::mp_cloner(alpha, receiver, cloners::MpPrep::exact, spec);
    }
    if (scheme == "mp_optimized_coherent") {
        return cloners::mp_cloner(alpha, receiver, cloners::MpPrep::optimized_coherent, spec);
    }
    if (scheme == "mp_optimized_squeezed") {
        return cloners::mp_cloner(alpha, receiver, cloners::MpPrep::optimized_squeezed, spec);
    }
    if (scheme == "partial_mp") return cloners::partial_mp_cloner(alpha, spec);
    if (scheme == "usd_random") {
        return cloners::usd_cloner(alpha, cloners::UsdPrep::random_signal, spec);
    }
    if (scheme == "usd_optimized_coherent") {
        return cloners::usd_cloner(alpha, cloners::UsdPrep::optimized_coherent, spec);
    }
    if (scheme == "usd_optimized_squeezed") {
        return cloners::usd_cloner(alpha, cloners::UsdPrep::optimized_squeezed, spec);
    }
    throw ConfigError("unknown scheme: " + scheme);
}

double param_or_nan(const std::map<std::string, double>& params, const std::string& key) {
    const auto it = params.find(key);
    return it == params.end() ? kNaN : it->second;
}

// Clone output density in the number basis for the cumulant table.
fock::DensityOp cumulant_density(const std::string& scheme, double alpha, const RunConfig& cfg) {
    const auto tc = truncation_for(cfg, alpha);
    if (scheme == "optimal") {
        return cloners::optimal_clone_state(alpha, tc).second;
    }
    if (scheme == "mp_exact") {
        const auto receiver = discrim::receiver_from_name(cfg.receiver);
        const double p = discrim::receiver_error(receiver, alpha).error_prob;
        const auto plus = fock::projector(fock::coherent_state(alpha, tc));
        const auto minus = fock::projector(fock::coherent_state(-alpha, tc));
        return fock::make_density((1.0 - p) * plus.matrix + p * minus.matrix, tc);
    }
    if (scheme == "mp_optimized_squeezed") {
        const auto rep = clone_for_scheme(scheme, alpha, cfg);
        const double beta = rep.params.at("beta");
        const double u = rep.params.at("u");
        const double p = rep.params.at("p_error");
        const auto squeezed = fock::apply(fock::squeeze_op(u, tc), fock::coherent_state(0.0, tc));
        const auto plus = fock::projector(fock::apply(fock::displacement_op(beta, tc), squeezed));
        const auto minus = fock::projector(fock::apply(fock::displacement_op(-beta, tc), squeezed));
        return fock::make_density((1.0 - p) * plus.matrix + p * minus.matrix, tc);
    }
    throw ConfigError("cumulants: unsupported scheme: " + scheme);
}

fock::DensityOp wigner_density(const std::string& state, double alpha,
                               const fock::TruncationConfig& tc) {
    if (state == "coherent") return fock::projector(fock::coherent_state(alpha, tc));
    if (state == "cat_even") return fock::projector(alphabet::cat_basis(alpha, tc).first);
    if (state == "cat_odd") return fock::projector(alphabet::cat_basis(alpha, tc).second);
    if (state == "qubit_basis_0") return fock::projector(alphabet::qubit_basis(alpha, tc).first);
    if (state == "qubit_basis_1") return fock::projector(alphabet::qubit_basis(alpha, tc).second);
    if (state == "optimal_clone") return cloners::optimal_clone_state(alpha, tc).second;
    throw ConfigError("wigner: unknown state selector: " + state);
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out.push_back('\\');
            out.push_back(c);
        } else if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04x", c);
            out += buf;
        } else {
            out.push_back(c);
        }
    }
    return out;
}

std::string cell_csv(const Cell& cell) {
    if (std::holds_alternative<double>(cell)) return format_sig(std::get<double>(cell));
    return std::get<std::string>(cell);
}

std::string cell_json(const Cell& cell) {
    if (std::holds_alternative<double>(cell)) {
        const double v = std::get<double>(cell);
        if (std::isnan(v)) return "null";
        return format_sig(v);
    }
    return "\"" + json_escape(std::get<std::string>(cell)) + "\"";
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open output file: " + path);
    f << text;
    if (!f) throw ConfigError("failed writing output file: " + path);
}

void write_sidecar(const Table& table, const RunConfig& cfg,
                   const std::map<std::string, double>* summary) {
    json meta;
    meta["table"] = table.name;
    meta["columns"] = table.columns;
    meta["row_count"] = table.rows.size();
    meta["config"] = json::parse(cfg.resolved_json());
    if (summary != nullptr) {
        json s;
        for (const auto& [k, v] : *summary) s[k] = v;
        meta["summary"] = s;
    }
    write_text_file(sidecar_path(cfg.out), meta.dump(2) + "\n");
}

std::string with_tag(const std::string& out, const std::string& tag) {
    const auto slash = out.find_last_of('/');
    const auto dot = out.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
        return out + "." + tag;
    }
    return out.substr(0, dot) + "." + tag + out.substr(dot);
}

} // namespace

void GridSpec::validate() const {
    if (points < 1 || points > 100000) throw ConfigError("grid: points outside [1, 100000]");
    if (!(start >= 0.0)) throw ConfigError("grid: start must be nonnegative");
    if (points > 1 && !(stop > start)) throw ConfigError("grid: stop must exceed start");
    if (stop < start) throw ConfigError("grid: stop below start");
    if (units != "n_mean" && units != "amplitude") {
        throw ConfigError("grid: units must be n_mean or amplitude");
    }
}

std::vector<double> GridSpec::n_means() const {
    validate();
    std::vector<double> out(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double t = points == 1 ? start
                                     : start + (stop - start) * static_cast<double>(i) /
                                                   static_cast<double>(points - 1);
        out[static_cast<std::size_t>(i)] = units == "amplitude" ? t * t : t;
    }
    return out;
}

opt::OptimizerSpec OptimizerConfig::to_spec() const {
    opt::OptimizerSpec spec;
    spec.tolerance = tolerance;
    spec.max_evals = max_evals;
    if (strategy == "golden_section") {
        spec.strategy = opt::Strategy::golden_section;
    } else if (strategy == "simplex") {
        spec.strategy = opt::Strategy::simplex;
    } else if (strategy == "coordinate_descent") {
        spec.strategy = opt::Strategy::coordinate_descent;
    } else {
        throw ConfigError("optimizer: unknown strategy: " + strategy);
    }
    return spec;
}

void RunConfig::validate() const {
    grid.validate();
    optimizer.to_spec();
    if (optimizer.tolerance <= 0.0) throw ConfigError("optimizer: tolerance must be positive");
    if (optimizer.max_evals < 100) throw ConfigError("optimizer: budget too small");
    discrim::receiver_from_name(receiver);
    if (format != "csv" && format != "json") throw ConfigError("format must be csv or json");
    if (truncation.dim != 0 && truncation.dim < 8) {
        throw ConfigError("truncation: explicit dim must be at least 8");
    }
    if (truncation.tail_tol <= 0.0 || truncation.tail_tol > 1e-2) {
        throw ConfigError("truncation: tail_tol outside (0, 1e-2]");
    }
    if (wigner.points < 2) throw ConfigError("wigner: points must be at least 2");
    if (!(wigner.n_mean >= 0.0)) throw ConfigError("wigner: n_mean must be nonnegative");
    if (wigner.pad_sigmas < 4.0) throw ConfigError("wigner: pad_sigmas must be at least 4");
}

RunConfig RunConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    check_keys(j, {"grid", "schemes", "receiver", "optimizer", "truncation", "out", "format",
                   "seed", "wigner"},
               "top level");
    RunConfig cfg;
    if (j.contains("grid")) {
        const auto& g = j["grid"];
        check_keys(g, {"start", "stop", "points", "units"}, "grid");
        cfg.grid.start = g.value("start", cfg.grid.start);
        cfg.grid.stop = g.value("stop", cfg.grid.stop);
        cfg.grid.points = g.value("points", cfg.grid.points);
        cfg.grid.units = g.value("units", cfg.grid.units);
    }
    if (j.contains("schemes")) {
        if (!j["schemes"].is_array()) throw ConfigError("config: schemes must be an array");
        cfg.schemes = j["schemes"].get<std::vector<std::string>>();
    }
    cfg.receiver = j.value("receiver", cfg.receiver);
    if (j.contains("optimizer")) {
        const auto& o = j["optimizer"];
        check_keys(o, {"tolerance", "max_evals", "strategy"}, "optimizer");
        cfg.optimizer.tolerance = o.value("tolerance", cfg.optimizer.tolerance);
        cfg.optimizer.max_evals = o.value("max_evals", cfg.optimizer.max_evals);
        cfg.optimizer.strategy = o.value("strategy", cfg.optimizer.strategy);
    }
    if (j.contains("truncation")) {
        const auto& t = j["truncation"];
        check_keys(t, {"dim", "tail_tol"}, "truncation");
        cfg.truncation.dim = t.value("dim", cfg.truncation.dim);
        cfg.truncation.tail_tol = t.value("tail_tol", cfg.truncation.tail_tol);
    }
    cfg.out = j.value("out", cfg.out);
    cfg.format = j.value("format", cfg.format);
    cfg.seed = j.value("seed", cfg.seed);
    if (j.contains("wigner")) {
        const auto& w = j["wigner"];
        check_keys(w, {"state", "n_mean", "points", "diff", "pad_sigmas"}, "wigner");
        cfg.wigner.state = w.value("state", cfg.wigner.state);
        cfg.wigner.n_mean = w.value("n_mean", cfg.wigner.n_mean);
        cfg.wigner.points = w.value("points", cfg.wigner.points);
        cfg.wigner.diff = w.value("diff", cfg.wigner.diff);
        cfg.wigner.pad_sigmas = w.value("pad_sigmas", cfg.wigner.pad_sigmas);
    }
    cfg.validate();
    return cfg;
}

RunConfig RunConfig::from_json_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return from_json_text(ss.str());
}

std::string RunConfig::resolved_json() const {
    json j;
    j["grid"] = {{"start", grid.start},
                 {"stop", grid.stop},
                 {"points", grid.points},
                 {"units", grid.units}};
    j["schemes"] = schemes;
    j["receiver"] = receiver;
    j["optimizer"] = {{"tolerance", optimizer.tolerance},
                      {"max_evals", optimizer.max_evals},
                      {"strategy", optimizer.strategy}};
    j["truncation"] = {{"dim", truncation.dim}, {"tail_tol", truncation.tail_tol}};
    j["out"] = out;
    j["format"] = format;
    j["seed"] = seed;
    j["wigner"] = {{"state", wigner.state},
                   {"n_mean", wigner.n_mean},
                   {"points", wigner.points},
                   {"diff", wigner.diff},
                   {"pad_sigmas", wigner.pad_sigmas}};
    return j.dump(2);
}

RunConfig resolve(const RunConfig& cfg, const std::string& table_kind) {
    static const std::array<std::string_view, 5> kinds = {
        "discrim_curve", "fidelity_curve", "params", "cumulants", "wigner"};
    if (std::find(kinds.begin(), kinds.end(), table_kind) == kinds.end()) {
        throw ConfigError("resolve: unknown table kind '" + table_kind + "'");
    }
    RunConfig r = cfg;
    if (r.schemes.empty()) {
        if (table_kind == "fidelity_curve") r.schemes = default_fidelity_schemes();
        if (table_kind == "params") r.schemes = default_params_schemes();
        if (table_kind == "cumulants") r.schemes = default_cumulant_schemes();
    }
    if (r.out.empty()) {
        r.out = table_kind + (r.format == "json" ? ".json" : ".csv");
    }
    r.validate();
    return r;
}

std::vector<std::string> default_fidelity_schemes() {
    return {"beamsplitter", "psa",        "mp_exact",
            "mp_optimized_coherent", "mp_optimized_squeezed", "partial_mp",
            "usd_random",   "usd_optimized_coherent", "usd_optimized_squeezed"};
}

std::vector<std::string> default_params_schemes() {
    return {"psa", "partial_mp", "mp_optimized_coherent", "mp_optimized_squeezed",
            "usd_optimized_coherent", "usd_optimized_squeezed"};
}

std::vector<std::string> default_cumulant_schemes() {
    return {"optimal", "mp_exact", "mp_optimized_squeezed"};
}

fock::TruncationConfig truncation_for(const RunConfig& cfg, double alpha) {
    if (cfg.truncation.dim > 0) {
        fock::TruncationConfig tc;
        tc.dim = cfg.truncation.dim;
        tc.tail_tol = cfg.truncation.tail_tol;
        tc.validate();
        return tc;
    }
    return fock::TruncationConfig::for_amplitude(alpha, cfg.truncation.tail_tol);
}

Table discrim_curve(const RunConfig& cfg) {
    const auto grid = cfg.grid.n_means();
    Table t;
    t.name = "discrim_curve";
    t.columns = {"n_mean", "homodyne", "kennedy", "od", "od_beta", "helstrom", "status"};
    t.rows = parallel_map(grid.size(), [&](std::size_t i) {
        const double n = grid[i];
        const double alpha = std::sqrt(n);
        const auto od = discrim::optimized_displacement(alpha);
        std::vector<Cell> row;
        row.emplace_back(n);
        row.emplace_back(discrim::homodyne_error(alpha).error_prob);
        row.emplace_back(discrim::kennedy_error(alpha).error_prob);
        row.emplace_back(od.error_prob);
        row.emplace_back(od.params.at("beta"));
        row.emplace_back(discrim::helstrom_error(alpha).error_prob);
        row.emplace_back(std::string("ok"));
        return row;
    });
    return t;
}

Table fidelity_curve(const RunConfig& cfg) {
    const auto grid = cfg.grid.n_means();
    const auto schemes = cfg.schemes.empty() ? default_fidelity_schemes() : cfg.schemes;
    Table t;
    t.name = "fidelity_curve";
    t.columns = {"n_mean", "bruss_bound"};
    for (const auto& s : schemes) t.columns.push_back(s);
    t.columns.push_back("status");
    t.rows = parallel_map(grid.size(), [&](std::size_t i) {
        const double n = grid[i];
        const double alpha = std::sqrt(n);
        std::vector<Cell> row;
        row.emplace_back(n);
        row.emplace_back(cloners::bruss_bound_at_alpha(alpha));
        std::string status = "ok";
        for (const auto& s : schemes) {
            try {
                row.emplace_back(clone_for_scheme(s, alpha, cfg).mean_fidelity);
            } catch (const ConvergenceError&) {
                row.emplace_back(kNaN);
                status = "convergence_error";
            }
        }
        row.emplace_back(status);
        return row;
    });
    return t;
}

Table params_table(const RunConfig& cfg) {
    const auto grid = cfg.grid.n_means();
    const auto schemes = cfg.schemes.empty() ? default_params_schemes() : cfg.schemes;
    const auto allowed = default_params_schemes();
    for (const auto& s : schemes) {
        if (std::find(allowed.begin(), allowed.end(), s) == allowed.end()) {
            throw ConfigError("params: scheme has no free parameters: " + s);
        }
    }
    Table t;
    t.name = "params";
    t.columns = {"n_mean", "scheme", "T", "g", "r1", "r2", "beta_opt", "delta_beta", "status"};
    const std::size_t tasks = grid.size() * schemes.size();
    t.rows = parallel_map(tasks, [&](std::size_t idx) {
        const double n = grid[idx / schemes.size()];
        const std::string scheme = schemes[idx % schemes.size()];
        const double alpha = std::sqrt(n);
        std::vector<Cell> row;
        row.emplace_back(n);
        row.emplace_back(scheme);
        double T = kNaN, g = kNaN, r1 = kNaN, r2 = kNaN, beta = kNaN, dbeta = kNaN;
        std::string status = "ok";
        try {
            const auto rep = clone_for_scheme(scheme, alpha, cfg);
            if (scheme == "psa") {
                r2 = param_or_nan(rep.params, "r");
            } else if (scheme == "partial_mp") {
                T = param_or_nan(rep.params, "T");
                g = param_or_nan(rep.params, "g");
                r1 = param_or_nan(rep.params, "r1");
                r2 = param_or_nan(rep.params, "r2");
            } else {
                beta = param_or_nan(rep.params, "beta");
                dbeta = beta - alpha;
                r1 = param_or_nan(rep.params, "u");
            }
        } catch (const ConvergenceError&) {
            status = "convergence_error";
        }
        row.emplace_back(T);
        row.emplace_back(g);
        row.emplace_back(r1);
        row.emplace_back(r2);
        row.emplace_back(beta);
        row.emplace_back(dbeta);
        row.emplace_back(status);
        return row;
    });
    return t;
}

Table cumulants_table(const RunConfig& cfg) {
    const auto grid = cfg.grid.n_means();
    const auto schemes = cfg.schemes.empty() ? default_cumulant_schemes() : cfg.schemes;
    const auto allowed = default_cumulant_schemes();
    for (const auto& s : schemes) {
        if (std::find(allowed.begin(), allowed.end(), s) == allowed.end()) {
            throw ConfigError("cumulants: unsupported scheme: " + s);
        }
    }
    Table t;
    t.name = "cumulants";
    t.columns = {"n_mean", "scheme", "axis", "k1", "k2", "k3", "k4", "k5", "k6", "status"};
    const std::size_t tasks = grid.size() * schemes.size();
    const auto chunks = parallel_map(tasks, [&](std::size_t idx) {
        const double n = grid[idx / schemes.size()];
        const std::string scheme = schemes[idx % schemes.size()];
        const double alpha = std::sqrt(n);
        std::vector<std::vector<Cell>> rows;
        std::string status = "ok";
        analysis::CumulantSet kx, kp;
        try {
            const auto rho = cumulant_density(scheme, alpha, cfg);
            kx = analysis::cumulants(rho, analysis::QuadAxis::x);
            kp = analysis::cumulants(rho, analysis::QuadAxis::p);
        } catch (const ConvergenceError&) {
            status = "convergence_error";
        } catch (const DegenerateBasis&) {
            status = "degenerate_basis";
        }
        for (const auto& [axis, k] :
             {std::pair<std::string, analysis::CumulantSet>{"x", kx}, {"p", kp}}) {
            std::vector<Cell> row;
            row.emplace_back(n);
            row.emplace_back(scheme);
            row.emplace_back(axis);
            if (status == "ok") {
                row.emplace_back(k.k1);
                row.emplace_back(k.k2);
                row.emplace_back(k.k3);
                row.emplace_back(k.k4);
                row.emplace_back(k.k5);
                row.emplace_back(k.k6);
            } else {
                for (int c = 0; c < 6; ++c) row.emplace_back(kNaN);
            }
            row.emplace_back(status);
            rows.push_back(std::move(row));
        }
        return rows;
    });
    for (const auto& chunk : chunks) {
        for (const auto& row : chunk) t.rows.push_back(row);
    }
    return t;
}

WignerOutput wigner_output(const RunConfig& cfg) {
    cfg.validate();
    const double alpha = std::sqrt(cfg.wigner.n_mean);
    const auto tc = truncation_for(cfg, alpha);
    const auto rho = wigner_density(cfg.wigner.state, alpha, tc);
    const std::size_t n = static_cast<std::size_t>(cfg.wigner.points);
    const double pad = cfg.wigner.pad_sigmas;

    WignerOutput out;
    double origin = analysis::parity_expectation(rho) * 2.0 / std::numbers::pi;
    if (cfg.wigner.diff) {
        const auto ref = fock::projector(fock::coherent_state(alpha, tc));
        // Shared window covering mean ± pad·σ of both states on both axes.
        const auto [mx_a, sx_a] = analysis::quad_mean_sigma(rho, analysis::QuadAxis::x);
        const auto [mp_a, sp_a] = analysis::quad_mean_sigma(rho, analysis::QuadAxis::p);
        const auto [mx_b, sx_b] = analysis::quad_mean_sigma(ref, analysis::QuadAxis::x);
        const auto [mp_b, sp_b] = analysis::quad_mean_sigma(ref, analysis::QuadAxis::p);
        const double x_lo = std::min(mx_a - pad * sx_a, mx_b - pad * sx_b);
        const double x_hi = std::max(mx_a + pad * sx_a, mx_b + pad * sx_b);
        const double p_lo = std::min(mp_a - pad * sp_a, mp_b - pad * sp_b);
        const double p_hi = std::max(mp_a + pad * sp_a, mp_b + pad * sp_b);
        const auto grid_state = analysis::wigner(rho, n, n, x_lo, x_hi, p_lo, p_hi);
        const auto grid_ref = analysis::wigner(ref, n, n, x_lo, x_hi, p_lo, p_hi);
        out.grid = analysis::wigner_diff(grid_state, grid_ref);
        origin -= analysis::parity_expectation(ref) * 2.0 / std::numbers::pi;
    } else {
        out.grid = analysis::wigner_auto(rho, n, pad);
    }

    out.table.name = cfg.wigner.diff ? "wigner_diff" : "wigner";
    out.table.columns = {"x", "p", "w"};
    const std::size_t np = out.grid.p_axis.size();
    out.table.rows.reserve(out.grid.values.size());
    for (std::size_t i = 0; i < out.grid.x_axis.size(); ++i) {
        for (std::size_t j = 0; j < np; ++j) {
            out.table.rows.push_back(
                {Cell{out.grid.x_axis[i]}, Cell{out.grid.p_axis[j]}, Cell{out.grid.at(i, j)}});
        }
    }

    out.marginals.name = out.table.name + "_marginals";
    out.marginals.columns = {"x", "px", "p", "pp"};
    const auto mx = analysis::marginal(out.grid, analysis::QuadAxis::x);
    const auto mp = analysis::marginal(out.grid, analysis::QuadAxis::p);
    for (std::size_t i = 0; i < mx.size(); ++i) {
        out.marginals.rows.push_back({Cell{out.grid.x_axis[i]}, Cell{mx[i]},
                                      Cell{out.grid.p_axis[i]}, Cell{mp[i]}});
    }

    out.summary["n_mean"] = cfg.wigner.n_mean;
    out.summary["integral"] = out.grid.integral();
    out.summary["origin_value"] = origin;
    out.summary["mass_negative_x"] = analysis::half_plane_mass(out.grid, true);
    out.summary["mass_positive_x"] = analysis::half_plane_mass(out.grid, false);
    return out;
}

std::string format_sig(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string to_csv(const Table& table) {
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c > 0) out.push_back(',');
        out += table.columns[c];
    }
    out.push_back('\n');
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) out.push_back(',');
            out += cell_csv(row[c]);
        }
        out.push_back('\n');
    }
    return out;
}

std::string to_json_text(const Table& table) {
    std::string out = "{\n  \"name\": \"" + json_escape(table.name) + "\",\n  \"columns\": [";
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c > 0) out += ", ";
        out += "\"" + json_escape(table.columns[c]) + "\"";
    }
    out += "],\n  \"rows\": [\n";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        out += "    {";
        const auto& row = table.rows[r];
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) out += ", ";
            out += "\"" + json_escape(table.columns[c]) + "\": " + cell_json(row[c]);
        }
        out += r + 1 < table.rows.size() ? "},\n" : "}\n";
    }
    out += "  ]\n}\n";
    return out;
}

std::string sidecar_path(const std::string& out) { return out + ".meta.json"; }

std::string write_output(const Table& table, const RunConfig& cfg) {
    if (cfg.out.empty()) throw ConfigError("write_output: empty output path");
    write_text_file(cfg.out, cfg.format == "json" ? to_json_text(table) : to_csv(table));
    write_sidecar(table, cfg, nullptr);
    return cfg.out;
}

std::string write_wigner_output(const WignerOutput& out, const RunConfig& cfg) {
    if (cfg.out.empty()) throw ConfigError("write_wigner_output: empty output path");
    write_text_file(cfg.out, cfg.format == "json" ? to_json_text(out.table) : to_csv(out.table));
    const std::string marg = with_tag(cfg.out, "marginals");
    write_text_file(marg, cfg.format == "json" ? to_json_text(out.marginals)
                                               : to_csv(out.marginals));
    write_sidecar(out.table, cfg, &out.summary);
    return cfg.out;
}

} // namespace bcsim::tables
