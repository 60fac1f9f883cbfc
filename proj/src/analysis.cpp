#include "bcsim/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "bcsim/errors.hpp"

namespace bcsim::analysis {
namespace {

using cxd = fock::cxd;

// Raw moments Tr[ρ q̂ʲ] for j = 0..upto via dense matrix powers.
std::vector<double> raw_moments(const fock::DensityOp& rho, QuadAxis axis, int upto) {
    const auto [x_op, p_op] = fock::quadrature_ops(rho.config);
    const Eigen::MatrixXcd& q = (axis == QuadAxis::x) ? x_op.matrix : p_op.matrix;
    std::vector<double> m(static_cast<std::size_t>(upto) + 1, 0.0);
    m[0] = 1.0;
    Eigen::MatrixXcd power = Eigen::MatrixXcd::Identity(q.rows(), q.cols());
    for (int j = 1; j <= upto; ++j) {
        power = power * q;
        m[static_cast<std::size_t>(j)] = (rho.matrix * power).trace().real();
    }
    return m;
}

// High moments of the truncated quadrature operator are only trustworthy
// when the state has no weight near the cutoff.
void check_headroom(const fock::DensityOp& rho) {
    const int dim = rho.config.dim;
    if (dim < 12) {
        throw TruncationError("cumulants: dimension too small for sixth moments");
    }
    double top = 0.0;
    for (int n = dim - 6; n < dim; ++n) {
        top += std::abs(rho.matrix(n, n).real());
    }
    if (top > std::max(1e-8, 100.0 * rho.config.tail_tol)) {
        throw TruncationError("cumulants: density has weight near the truncation edge");
    }
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> v(n);
    const double h = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) v[i] = lo + h * static_cast<double>(i);
    v.back() = hi;
    return v;
}

double trapezoid(const std::vector<double>& f, double h) {
    double s = 0.5 * (f.front() + f.back());
    for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
    return s * h;
}

// Hermitian part of the density, rejected early if it has a significantly
// negative eigenvalue — sampling such an operator would not yield a
// quasiprobability.
Eigen::MatrixXcd checked_hermitian_part(const fock::DensityOp& rho) {
    Eigen::MatrixXcd h = 0.5 * (rho.matrix + rho.matrix.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-8) {
        throw NonPhysical("wigner: density has a significantly negative eigenvalue");
    }
    return h;
}

// Tr[ρ D(γ) Π D†(γ)] evaluated as Tr[ρ D(2γ) Π], which only needs the matrix
// elements of D(2γ) on the finite support of ρ:
//   ⟨n+k|D(β)|n⟩ = e^{ik·argβ} U_n⁽ᵏ⁾,   ⟨n|D(β)|n+k⟩ = (−1)ᵏ e^{−ik·argβ} U_n⁽ᵏ⁾,
//   U_n⁽ᵏ⁾ = e^{−|β|²/2} |β|ᵏ √(n!/(n+k)!) L_n⁽ᵏ⁾(|β|²).
// The damped U values are bounded by 1, so the three-term Laguerre recurrence
// runs on them directly without overflow. Unlike applying D†(γ) to truncated
// vectors, this is exact for the truncated ρ at any displacement.
double displaced_parity(const Eigen::MatrixXcd& h, cxd gamma) {
    const Eigen::Index d = h.rows();
    const cxd beta = 2.0 * gamma;
    const double b2 = std::norm(beta);
    const double babs = std::abs(beta);
    const double theta = std::arg(beta);
    const Eigen::Index k_max = (babs > 0.0) ? d - 1 : 0;
    std::vector<double> u(static_cast<std::size_t>(d));
    double total = 0.0;
    for (Eigen::Index k = 0; k <= k_max; ++k) {
        const Eigen::Index rows = d - k;
        const double kd = static_cast<double>(k);
        double log_u0 = -0.5 * b2 - 0.5 * std::lgamma(kd + 1.0);
        if (k > 0) log_u0 += kd * std::log(babs);
        u[0] = std::exp(log_u0);
        for (Eigen::Index j = 0; j + 1 < rows; ++j) {
            const double jd = static_cast<double>(j);
            const double denom = std::sqrt((jd + 1.0) * (jd + kd + 1.0));
            const double a = (2.0 * jd + kd + 1.0 - b2) / denom;
            const double b = std::sqrt(jd * (jd + kd)) / denom;
            u[static_cast<std::size_t>(j) + 1] =
                a * u[static_cast<std::size_t>(j)] -
                (j > 0 ? b * u[static_cast<std::size_t>(j) - 1] : 0.0);
        }
        if (k == 0) {
            for (Eigen::Index n = 0; n < d; ++n) {
                const double sign = (n % 2 == 0) ? 1.0 : -1.0;
                total += sign * h(n, n).real() * u[static_cast<std::size_t>(n)];
            }
        } else {
            const cxd phase = std::polar(1.0, kd * theta);
            for (Eigen::Index n = 0; n < rows; ++n) {
                const double sign = (n % 2 == 0) ? 1.0 : -1.0;
                total += sign * 2.0 * (h(n, n + k) * phase).real() *
                         u[static_cast<std::size_t>(n)];
            }
        }
    }
    return total;
}

} // namespace

double WignerGrid::dx() const {
    if (x_axis.size() < 2) throw ConfigError("WignerGrid: degenerate x axis");
    return (x_axis.back() - x_axis.front()) / static_cast<double>(x_axis.size() - 1);
}

double WignerGrid::dp() const {
    if (p_axis.size() < 2) throw ConfigError("WignerGrid: degenerate p axis");
    return (p_axis.back() - p_axis.front()) / static_cast<double>(p_axis.size() - 1);
}

double WignerGrid::integral() const {
    std::vector<double> per_x(x_axis.size());
    for (std::size_t i = 0; i < x_axis.size(); ++i) {
        std::vector<double> row(values.begin() + static_cast<std::ptrdiff_t>(i * p_axis.size()),
                                values.begin() + static_cast<std::ptrdiff_t>((i + 1) * p_axis.size()));
        per_x[i] = trapezoid(row, dp());
    }
    return trapezoid(per_x, dx());
}

std::pair<double, double> quad_mean_sigma(const fock::DensityOp& rho, QuadAxis axis) {
    const auto m = raw_moments(rho, axis, 2);
    const double var = std::max(0.0, m[2] - m[1] * m[1]);
    return {m[1], std::sqrt(var)};
}

WignerGrid wigner(const fock::DensityOp& rho, std::size_t nx, std::size_t np, double x_lo,
                  double x_hi, double p_lo, double p_hi) {
    if (nx < 2 || np < 2) throw ConfigError("wigner: need at least 2 points per axis");
    if (!(x_lo < x_hi) || !(p_lo < p_hi)) throw ConfigError("wigner: empty window");
    const auto [mx, sx] = quad_mean_sigma(rho, QuadAxis::x);
    const auto [mp, sp] = quad_mean_sigma(rho, QuadAxis::p);
    const double slack = 1e-9;
    if (x_lo > mx - 4.0 * sx + slack || x_hi < mx + 4.0 * sx - slack ||
        p_lo > mp - 4.0 * sp + slack || p_hi < mp + 4.0 * sp - slack) {
        throw GridTooSmall("wigner: window does not cover mean +/- 4 sigma");
    }
    const Eigen::MatrixXcd h = checked_hermitian_part(rho);
    WignerGrid grid;
    grid.x_axis = linspace(x_lo, x_hi, nx);
    grid.p_axis = linspace(p_lo, p_hi, np);
    grid.values.resize(nx * np);
    const double norm = 2.0 / std::numbers::pi;
    for (std::size_t i = 0; i < nx; ++i) {
        for (std::size_t j = 0; j < np; ++j) {
            const cxd gamma(grid.x_axis[i], grid.p_axis[j]);
            grid.values[i * np + j] = norm * displaced_parity(h, gamma);
        }
    }
    return grid;
}

WignerGrid wigner_auto(const fock::DensityOp& rho, std::size_t n, double pad_sigmas) {
    if (pad_sigmas < 4.0) throw ConfigError("wigner_auto: pad must be at least 4 sigma");
    const auto [mx, sx] = quad_mean_sigma(rho, QuadAxis::x);
    const auto [mp, sp] = quad_mean_sigma(rho, QuadAxis::p);
    return wigner(rho, n, n, mx - pad_sigmas * sx, mx + pad_sigmas * sx, mp - pad_sigmas * sp,
                  mp + pad_sigmas * sp);
}

WignerGrid wigner_diff(const WignerGrid& a, const WignerGrid& b) {
    const auto same_axis = [](const std::vector<double>& u, const std::vector<double>& v) {
        if (u.size() != v.size()) return false;
        for (std::size_t i = 0; i < u.size(); ++i) {
            if (std::abs(u[i] - v[i]) > 1e-12) return false;
        }
        return true;
    };
    if (!same_axis(a.x_axis, b.x_axis) || !same_axis(a.p_axis, b.p_axis)) {
        throw GridMismatch("wigner_diff: grids sample different windows");
    }
    WignerGrid out = a;
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] -= b.values[i];
    return out;
}

double half_plane_mass(const WignerGrid& grid, bool negative_x) {
    std::vector<std::size_t> cols;
    for (std::size_t i = 0; i < grid.x_axis.size(); ++i) {
        if ((negative_x && grid.x_axis[i] < 0.0) || (!negative_x && grid.x_axis[i] > 0.0)) {
            cols.push_back(i);
        }
    }
    if (cols.size() < 2) return 0.0;
    std::vector<double> per_x(cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        std::vector<double> row(
            grid.values.begin() + static_cast<std::ptrdiff_t>(cols[c] * grid.p_axis.size()),
            grid.values.begin() + static_cast<std::ptrdiff_t>((cols[c] + 1) * grid.p_axis.size()));
        per_x[c] = trapezoid(row, grid.dp());
    }
    return trapezoid(per_x, grid.dx());
}

std::vector<double> marginal(const WignerGrid& grid, QuadAxis axis) {
    const std::size_t np = grid.p_axis.size();
    const std::size_t nx = grid.x_axis.size();
    if (axis == QuadAxis::x) {
        std::vector<double> out(nx);
        for (std::size_t i = 0; i < nx; ++i) {
            std::vector<double> row(grid.values.begin() + static_cast<std::ptrdiff_t>(i * np),
                                    grid.values.begin() + static_cast<std::ptrdiff_t>((i + 1) * np));
            out[i] = trapezoid(row, grid.dp());
        }
        return out;
    }
    std::vector<double> out(np);
    for (std::size_t j = 0; j < np; ++j) {
        std::vector<double> col(nx);
        for (std::size_t i = 0; i < nx; ++i) col[i] = grid.at(i, j);
        out[j] = trapezoid(col, grid.dx());
    }
    return out;
}

double parity_expectation(const fock::DensityOp& rho) {
    double s = 0.0;
    for (Eigen::Index n = 0; n < rho.matrix.rows(); ++n) {
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        s += sign * rho.matrix(n, n).real();
    }
    return s;
}

CumulantSet cumulants(const fock::DensityOp& rho, QuadAxis axis) {
    check_headroom(rho);
    const auto m = raw_moments(rho, axis, 6);
    const double c = m[1];
    // Central moments μ_j = Σᵢ C(j,i)·mᵢ·(−c)^{j−i}.
    std::array<double, 7> mu{};
    mu[0] = 1.0;
    for (int j = 1; j <= 6; ++j) {
        double sum = 0.0;
        double binom = 1.0;
        for (int i = 0; i <= j; ++i) {
            sum += binom * m[static_cast<std::size_t>(i)] * std::pow(-c, j - i);
            binom = binom * static_cast<double>(j - i) / static_cast<double>(i + 1);
        }
        mu[static_cast<std::size_t>(j)] = sum;
    }
    CumulantSet k;
    k.k1 = m[1];
    k.k2 = mu[2];
    k.k3 = mu[3];
    k.k4 = mu[4] - 3.0 * mu[2] * mu[2];
    k.k5 = mu[5] - 10.0 * mu[3] * mu[2];
    k.k6 = mu[6] - 15.0 * mu[4] * mu[2] - 10.0 * mu[3] * mu[3] + 30.0 * mu[2] * mu[2] * mu[2];
    return k;
}

} // namespace bcsim::analysis
