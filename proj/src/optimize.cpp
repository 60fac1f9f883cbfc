#include "bcsim/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bcsim::opt {

namespace {

/// Shared evaluation budget; throws once the allowance is spent.
struct Budget {
    const Objective& f;
    long remaining;

    double operator()(const std::vector<double>& x) {
        if (--remaining < 0) {
            throw ConvergenceError("maximize: evaluation budget exhausted");
        }
        return f(x);
    }
};

/// Golden-section search for the maximum of a 1-D slice through `x` along
/// dimension `dim`, restricted to [lo, hi]. Returns (argmax, value).
std::pair<double, double> golden_line(Budget& budget, std::vector<double>& x, int dim,
                                      double lo, double hi) {
    constexpr double kInvPhi = 0.61803398874989485;
    auto eval_at = [&](double t) {
        x[dim] = t;
        return budget(x);
    };
    if (hi - lo < 1e-15) return {lo, eval_at(lo)};
    double a = lo, b = hi;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = eval_at(c);
    double fd = eval_at(d);
    // Interval precision 1e−11·span gives value precision far below the
    // 1e−8 value tolerance for smooth objectives (quadratic convergence of
    // the value at an interior maximum).
    const double xtol = std::max(1e-11 * (hi - lo), 1e-14);
    while (b - a > xtol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = eval_at(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = eval_at(d);
        }
    }
    // Include the bracket endpoints: boundary maxima matter here (e.g. a
    // parameter pinned at the edge of its admissible range).
    double best_x = fc >= fd ? c : d;
    double best_f = std::max(fc, fd);
    for (double t : {lo, hi}) {
        const double ft = eval_at(t);
        if (ft > best_f) {
            best_f = ft;
            best_x = t;
        }
    }
    x[dim] = best_x;
    return {best_x, best_f};
}

/// Golden-section search for the maximum of a scalar function on [lo, hi]
/// (interior points only; callers handle endpoints). Returns (argmax, value).
std::pair<double, double> golden_scalar(const std::function<double(double)>& f, double lo,
                                        double hi) {
    constexpr double kInvPhi = 0.61803398874989485;
    double a = lo, b = hi;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(c);
    double fd = f(d);
    const double xtol = std::max(1e-11 * (hi - lo), 1e-14);
    while (b - a > xtol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(d);
        }
    }
    return fc >= fd ? std::pair{c, fc} : std::pair{d, fd};
}

/// Monotone coordinate descent: full-range line searches on the first sweep,
/// then geometrically shrinking windows around the incumbent. Accepts a line
/// result only when it improves, so the iterate never leaves its basin for a
/// worse one. After each sweep a pattern move searches along the sweep's
/// aggregate displacement: per-axis steps advance along a correlated ridge
/// only by their projections, and the joint extrapolation recovers the rest.
std::pair<std::vector<double>, double> coordinate_descent(
    Budget& budget, const std::vector<std::pair<double, double>>& bounds,
    std::vector<double> x, double fx, double tolerance) {
    const int k = static_cast<int>(bounds.size());
    double window = 1.0; // fraction of each bound span
    for (int sweep = 0; sweep < 60; ++sweep) {
        const double f_before = fx;
        const std::vector<double> x_before = x;
        for (int d = 0; d < k; ++d) {
            const auto [lo_b, hi_b] = bounds[d];
            const double span = hi_b - lo_b;
            if (span <= 0.0) continue;
            const double half = 0.5 * window * span;
            const double lo = std::max(lo_b, x[d] - half);
            const double hi = std::min(hi_b, x[d] + half);
            const double keep = x[d];
            auto [bx, bf] = golden_line(budget, x, d, lo, hi);
            if (bf > fx) {
                fx = bf;
                x[d] = bx;
            } else {
                x[d] = keep;
            }
        }

        if (fx > f_before) {
            // Pattern move along dir = x − x_before, up to the box boundary.
            std::vector<double> dir(static_cast<std::size_t>(k));
            double len_sq = 0.0;
            double t_max = 8.0; // conservative extrapolation cap
            for (int d = 0; d < k; ++d) {
                dir[d] = x[d] - x_before[d];
                len_sq += dir[d] * dir[d];
                if (dir[d] > 0.0) {
                    t_max = std::min(t_max, (bounds[d].second - x[d]) / dir[d]);
                } else if (dir[d] < 0.0) {
                    t_max = std::min(t_max, (bounds[d].first - x[d]) / dir[d]);
                }
            }
            if (len_sq > 0.0 && t_max > 1e-12) {
                std::vector<double> probe(static_cast<std::size_t>(k));
                auto eval_t = [&](double t) {
                    for (int d = 0; d < k; ++d) {
                        // Rounding in the t_max division can land a hair
                        // outside the box; clamp to keep the objective's
                        // domain guards quiet.
                        probe[d] = std::min(bounds[d].second,
                                            std::max(bounds[d].first, x[d] + t * dir[d]));
                    }
                    return budget(probe);
                };
                auto [bt, bf] = golden_scalar(eval_t, 0.0, t_max);
                const double f_edge = eval_t(t_max); // ridges often end on a face
                if (f_edge > bf) {
                    bt = t_max;
                    bf = f_edge;
                }
                if (bf > fx) {
                    for (int d = 0; d < k; ++d) {
                        x[d] = std::min(bounds[d].second,
                                        std::max(bounds[d].first, x[d] + bt * dir[d]));
                    }
                    fx = bf;
                }
            }
        }

        window = std::max(0.5 * window, 1e-10);
        if (fx - f_before <= std::min(tolerance, 1e-11) && sweep >= 3) break;
    }
    return {x, fx};
}

/// Bounded Nelder-Mead (clamping reflections to the box).
std::pair<std::vector<double>, double> nelder_mead(
    Budget& budget, const std::vector<std::pair<double, double>>& bounds,
    const std::vector<double>& start, double tolerance) {
    const int k = static_cast<int>(bounds.size());
    auto clamp = [&](std::vector<double> v) {
        for (int d = 0; d < k; ++d) v[d] = std::min(bounds[d].second, std::max(bounds[d].first, v[d]));
        return v;
    };
    std::vector<std::vector<double>> simplex{clamp(start)};
    for (int d = 0; d < k; ++d) {
        auto v = simplex[0];
        const double span = bounds[d].second - bounds[d].first;
        v[d] += (v[d] + 0.1 * span <= bounds[d].second ? 0.1 : -0.1) * span;
        simplex.push_back(clamp(v));
    }
    std::vector<double> fv(simplex.size());
    for (size_t i = 0; i < simplex.size(); ++i) fv[i] = budget(simplex[i]);
    for (int it = 0; it < 2000; ++it) {
        // Sort descending (maximization): index 0 best, last worst.
        std::vector<size_t> idx(simplex.size());
        for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return fv[a] > fv[b]; });
        std::vector<std::vector<double>> s2;
        std::vector<double> f2;
        for (size_t i : idx) {
            s2.push_back(simplex[i]);
            f2.push_back(fv[i]);
        }
        simplex = s2;
        fv = f2;
        if (fv.front() - fv.back() < std::min(tolerance, 1e-12)) break;
        std::vector<double> centroid(k, 0.0);
        for (size_t i = 0; i + 1 < simplex.size(); ++i) {
            for (int d = 0; d < k; ++d) centroid[d] += simplex[i][d];
        }
        for (int d = 0; d < k; ++d) centroid[d] /= k;
        auto combine = [&](double coef) {
            std::vector<double> v(k);
            for (int d = 0; d < k; ++d) v[d] = centroid[d] + coef * (centroid[d] - simplex.back()[d]);
            return clamp(v);
        };
        auto refl = combine(1.0);
        const double f_refl = budget(refl);
        if (f_refl > fv.front()) {
            auto exp_v = combine(2.0);
            const double f_exp = budget(exp_v);
            if (f_exp > f_refl) {
                simplex.back() = exp_v;
                fv.back() = f_exp;
            } else {
                simplex.back() = refl;
                fv.back() = f_refl;
            }
        } else if (f_refl > fv[fv.size() - 2]) {
            simplex.back() = refl;
            fv.back() = f_refl;
        } else {
            auto contr = combine(-0.5);
            const double f_contr = budget(contr);
            if (f_contr > fv.back()) {
                simplex.back() = contr;
                fv.back() = f_contr;
            } else {
                for (size_t i = 1; i < simplex.size(); ++i) {
                    for (int d = 0; d < k; ++d) {
                        simplex[i][d] = 0.5 * (simplex[i][d] + simplex.front()[d]);
                    }
                    fv[i] = budget(simplex[i]);
                }
            }
        }
    }
    size_t best = 0;
    for (size_t i = 1; i < fv.size(); ++i) {
        if (fv[i] > fv[best]) best = i;
    }
    return {simplex[best], fv[best]};
}

std::vector<double> point_from_fractions(const std::vector<std::pair<double, double>>& bounds,
                                         const std::vector<double>& fr) {
    std::vector<double> x(bounds.size());
    for (size_t d = 0; d < bounds.size(); ++d) {
        x[d] = bounds[d].first + fr[d % fr.size()] * (bounds[d].second - bounds[d].first);
    }
    return x;
}

double norm_sq(const std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
}

} // namespace

void OptimizerSpec::validate() const {
    if (bounds.empty()) throw ConfigError("OptimizerSpec: no parameters");
    for (const auto& [lo, hi] : bounds) {
        if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi) {
            throw ConfigError("OptimizerSpec: bounds must be finite with lo <= hi");
        }
    }
    if (tolerance <= 0.0) throw ConfigError("OptimizerSpec: tolerance must be > 0");
    if (max_evals < 10) throw ConfigError("OptimizerSpec: max_evals too small");
}

std::pair<std::vector<double>, double> maximize(const Objective& objective,
                                                const OptimizerSpec& spec) {
    spec.validate();
    Budget budget{objective, spec.max_evals};
    const int k = static_cast<int>(spec.bounds.size());

    auto run_from = [&](const std::vector<double>& start) {
        std::vector<double> x = start;
        double fx = budget(x);
        if (spec.strategy == Strategy::simplex) {
            return nelder_mead(budget, spec.bounds, x, spec.tolerance);
        }
        // golden_section is the k=1 specialization of the descent loop.
        return coordinate_descent(budget, spec.bounds, x, fx, spec.tolerance);
    };

    std::vector<std::pair<std::vector<double>, double>> results;
    if (k <= 2) {
        results.push_back(run_from(point_from_fractions(spec.bounds, {0.5})));
        // Self-audit: a 50-point-per-axis scan guards against a wrong basin,
        // and the best grid point seeds one more descent.
        constexpr int kGrid = 50;
        std::vector<double> best_grid;
        double best_grid_f = -std::numeric_limits<double>::infinity();
        std::vector<double> x(k);
        if (k == 1) {
            for (int i = 0; i < kGrid; ++i) {
                x[0] = spec.bounds[0].first +
                       (spec.bounds[0].second - spec.bounds[0].first) * i / (kGrid - 1.0);
                const double fx = budget(x);
                if (fx > best_grid_f) {
                    best_grid_f = fx;
                    best_grid = x;
                }
            }
        } else {
            for (int i = 0; i < kGrid; ++i) {
                for (int j = 0; j < kGrid; ++j) {
                    x[0] = spec.bounds[0].first +
                           (spec.bounds[0].second - spec.bounds[0].first) * i / (kGrid - 1.0);
                    x[1] = spec.bounds[1].first +
                           (spec.bounds[1].second - spec.bounds[1].first) * j / (kGrid - 1.0);
                    const double fx = budget(x);
                    if (fx > best_grid_f) {
                        best_grid_f = fx;
                        best_grid = x;
                    }
                }
            }
        }
        results.push_back(run_from(best_grid));
    } else {
        // Deterministic multi-start table (unit-cube fractions, cycled over
        // dimensions) plus any caller-provided starts.
        const std::vector<std::vector<double>> table = {
            {0.5}, {0.15}, {0.85}, {0.95, 0.15}, {0.05, 0.85}, {0.3, 0.7}, {0.7, 0.3}, {0.05, 0.95}};
        for (const auto& fr : table) results.push_back(run_from(point_from_fractions(spec.bounds, fr)));
        for (const auto& s : spec.extra_starts) {
            if (static_cast<int>(s.size()) != k) {
                throw ConfigError("maximize: extra start has wrong dimension");
            }
            results.push_back(run_from(s));
        }
    }

    double best_f = -std::numeric_limits<double>::infinity();
    for (const auto& [x, fx] : results) best_f = std::max(best_f, fx);
    // Value ties go to the smallest parameter vector; this pins down flat
    // valleys (e.g. parameter directions that stop mattering in a limit).
    const double tie = std::max(spec.tolerance, 1e-11);
    const std::pair<std::vector<double>, double>* chosen = nullptr;
    for (const auto& r : results) {
        if (r.second >= best_f - tie &&
            (chosen == nullptr || norm_sq(r.first) < norm_sq(chosen->first))) {
            chosen = &r;
        }
    }
    return *chosen;
}

} // namespace bcsim::opt
