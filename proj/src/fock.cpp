#include "bcsim/fock.hpp"

#include <cmath>
#include <cstdio>

namespace bcsim::fock {

namespace {

/// U = exp(A) for an anti-Hermitian generator A, via the eigendecomposition
/// of the Hermitian matrix H = −iA: U = V·diag(e^{iλ})·V†. Unconditionally
/// stable on the truncated space (in contrast to scaling-and-squaring, no
/// norm growth to manage), and exactly unitary up to round-off.
Eigen::MatrixXcd exp_anti_hermitian(const Eigen::MatrixXcd& a) {
    const cxd i_unit(0.0, 1.0);
    Eigen::MatrixXcd h = -i_unit * a;
    // Symmetrize to kill round-off asymmetry before the self-adjoint solve.
    h = (h + h.adjoint().eval()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    Eigen::VectorXcd phases = (i_unit * es.eigenvalues().array()).exp();
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

/// Max-norm unitarity defect ‖(U†U − 1)‖_max restricted to the lower half of
/// the basis, where truncation leakage must not have reached.
double lower_half_unitarity_defect(const Eigen::MatrixXcd& u) {
    const int half = static_cast<int>(u.rows()) / 2;
    Eigen::MatrixXcd g = u.adjoint() * u;
    g.topLeftCorner(half, half) -= Eigen::MatrixXcd::Identity(half, half);
    return g.topLeftCorner(half, half).cwiseAbs().maxCoeff();
}

} // namespace

TruncationConfig TruncationConfig::for_amplitude(double amp, double tail_tol) {
    TruncationConfig cfg;
    cfg.dim = std::max(20, static_cast<int>(std::ceil(8.0 * amp * amp + 20.0)));
    cfg.tail_tol = tail_tol;
    return cfg;
}

PureState coherent_state(cxd alpha, const TruncationConfig& cfg) {
    cfg.validate();
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(cfg.dim);
    const double a2 = std::norm(alpha);
    if (a2 == 0.0) {
        c(0) = 1.0;
        return PureState{c, cfg, 0.0, false};
    }
    // Work with log-magnitudes to stay clear of factorial overflow:
    // ln|cₙ| = −|α|²/2 + n·ln|α| − ½·ln(n!).
    const double ln_mag = std::log(std::abs(alpha));
    const cxd phase = alpha / std::abs(alpha);
    cxd phase_n = 1.0;
    double norm_sq = 0.0;
    for (int n = 0; n < cfg.dim; ++n) {
        const double ln_c = -a2 / 2.0 + n * ln_mag - 0.5 * std::lgamma(n + 1.0);
        c(n) = std::exp(ln_c) * phase_n;
        norm_sq += std::exp(2.0 * ln_c);
        phase_n *= phase;
    }
    const double tail = std::max(0.0, 1.0 - norm_sq);
    if (tail > cfg.tail_tol) {
        char msg[96];
        std::snprintf(msg, sizeof msg, "coherent_state: tail weight %.3g exceeds tail_tol at dim %d",
                      tail, cfg.dim);
        throw TruncationError(msg);
    }
    c /= std::sqrt(norm_sq);
    return PureState{c, cfg, tail, true};
}

LinearOp annihilation_op(const TruncationConfig& cfg) {
    cfg.validate();
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(cfg.dim, cfg.dim);
    for (int n = 1; n < cfg.dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return LinearOp{a, cfg};
}

LinearOp displacement_op(cxd beta, const TruncationConfig& cfg) {
    cfg.validate();
    const Eigen::MatrixXcd a = annihilation_op(cfg).matrix;
    const Eigen::MatrixXcd gen = beta * a.adjoint() - std::conj(beta) * a;
    Eigen::MatrixXcd u = exp_anti_hermitian(gen);
    if (lower_half_unitarity_defect(u) > 1e-8) {
        throw TruncationError("displacement_op: truncation leakage breaks unitarity "
                              "on the lower half of the basis");
    }
    return LinearOp{u, cfg};
}

LinearOp squeeze_op(cxd z, const TruncationConfig& cfg) {
    cfg.validate();
    const Eigen::MatrixXcd a = annihilation_op(cfg).matrix;
    const Eigen::MatrixXcd ad = a.adjoint();
    const Eigen::MatrixXcd gen = 0.5 * z * (ad * ad) - 0.5 * std::conj(z) * (a * a);
    Eigen::MatrixXcd u = exp_anti_hermitian(gen);
    if (lower_half_unitarity_defect(u) > 1e-8) {
        throw TruncationError("squeeze_op: truncation leakage breaks unitarity "
                              "on the lower half of the basis");
    }
    return LinearOp{u, cfg};
}

std::pair<LinearOp, LinearOp> quadrature_ops(const TruncationConfig& cfg) {
    const Eigen::MatrixXcd a = annihilation_op(cfg).matrix;
    const cxd i_unit(0.0, 1.0);
    Eigen::MatrixXcd x = (a + a.adjoint()) / 2.0;
    Eigen::MatrixXcd p = (a - a.adjoint()) / (2.0 * i_unit);
    return {LinearOp{x, cfg}, LinearOp{p, cfg}};
}

LinearOp parity_op(const TruncationConfig& cfg) {
    cfg.validate();
    Eigen::VectorXcd d(cfg.dim);
    for (int n = 0; n < cfg.dim; ++n) d(n) = (n % 2 == 0) ? 1.0 : -1.0;
    return LinearOp{Eigen::MatrixXcd(d.asDiagonal()), cfg};
}

PureState apply(const LinearOp& op, const PureState& psi) {
    if (op.matrix.cols() != psi.amplitudes.size()) {
        throw ConfigError("apply: operator/state dimension mismatch");
    }
    return PureState{op.matrix * psi.amplitudes, psi.config, psi.tail_mass, psi.renormalized};
}

DensityOp make_density(const Eigen::MatrixXcd& m, const TruncationConfig& cfg) {
    cfg.validate();
    if (m.rows() != cfg.dim || m.cols() != cfg.dim) {
        throw ConfigError("make_density: matrix does not match config dimension");
    }
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
        throw NonPhysical("make_density: matrix is not Hermitian to 1e-12");
    }
    const double tr = m.trace().real();
    if (std::abs(tr - 1.0) > std::max(cfg.tail_tol, 1e-12)) {
        throw NonPhysical("make_density: trace deviates from 1 by " + std::to_string(tr - 1.0));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
    if (es.eigenvalues().minCoeff() < -1e-10) {
        throw NonPhysical("make_density: negative eigenvalue " +
                          std::to_string(es.eigenvalues().minCoeff()));
    }
    return DensityOp{(m + m.adjoint().eval()) / 2.0, cfg};
}

DensityOp projector(const PureState& psi) {
    return DensityOp{psi.amplitudes * psi.amplitudes.adjoint(), psi.config};
}

double fidelity_pure(const DensityOp& rho, const PureState& psi) {
    if (rho.matrix.rows() != psi.amplitudes.size()) {
        throw ConfigError("fidelity_pure: dimension mismatch");
    }
    const double f = (psi.amplitudes.adjoint() * rho.matrix * psi.amplitudes)(0).real();
    // Round-off from matrix exponentials may push the value marginally outside
    // [0,1]; anything beyond 1e−8 signals a genuinely non-physical input.
    if (f < -1e-8 || f > 1.0 + 1e-8) {
        throw NonPhysical("fidelity_pure: value " + std::to_string(f) + " outside [0,1]");
    }
    return std::min(1.0, std::max(0.0, f));
}

double fidelity_pure(const PureState& phi, const PureState& psi) {
    if (phi.amplitudes.size() != psi.amplitudes.size()) {
        throw ConfigError("fidelity_pure: dimension mismatch");
    }
    // Eigen's dot conjugates its left factor, so this is |⟨φ|ψ⟩|².
    return std::norm(phi.amplitudes.dot(psi.amplitudes));
}

cxd expectation(const LinearOp& op, const DensityOp& rho) {
    if (op.matrix.rows() != rho.matrix.rows()) {
        throw ConfigError("expectation: dimension mismatch");
    }
    return (rho.matrix * op.matrix).trace();
}

cxd expectation(const LinearOp& op, const PureState& psi) {
    if (op.matrix.rows() != psi.amplitudes.size()) {
        throw ConfigError("expectation: dimension mismatch");
    }
    return (psi.amplitudes.adjoint() * op.matrix * psi.amplitudes)(0);
}

} // namespace bcsim::fock
