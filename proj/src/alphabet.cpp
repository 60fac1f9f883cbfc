#include "bcsim/alphabet.hpp"

#include <cmath>

namespace bcsim::alphabet {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kDegenerateCutoff = 1e-6; // minimum admissible π/4 − θ
} // namespace

void OverlapAngle::validate() const {
    if (theta < 0.0 || theta > kPi / 4.0 + 1e-12) {
        throw ConfigError("OverlapAngle: theta outside [0, pi/4]");
    }
    if (alpha < 0.0) throw ConfigError("OverlapAngle: alpha must be >= 0");
    if (std::abs(std::sin(2.0 * theta) - std::exp(-2.0 * alpha * alpha)) > 1e-12) {
        throw ConfigError("OverlapAngle: theta and alpha are mutually inconsistent");
    }
}

void BlochVector::validate() const {
    if (x * x + y * y + z * z > 1.0 + 1e-12) {
        throw NonPhysical("BlochVector: norm exceeds 1");
    }
}

void TwoDimDensity::validate() const {
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
        throw NonPhysical("TwoDimDensity: not Hermitian");
    }
    if (std::abs(m.trace().real() - 1.0) > 1e-12 || std::abs(m.trace().imag()) > 1e-12) {
        throw NonPhysical("TwoDimDensity: trace differs from 1");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(m);
    if (es.eigenvalues().minCoeff() < -1e-12) {
        throw NonPhysical("TwoDimDensity: negative eigenvalue");
    }
}

void CoherentBasisDensity::validate() const {
    if (std::abs(rho_pm - std::conj(rho_mp)) > 1e-12) {
        throw NonPhysical("CoherentBasisDensity: rho_pm != conj(rho_mp)");
    }
    const double s = std::exp(-2.0 * alpha * alpha);
    const cxd tr = rho_pp + rho_mm + (rho_pm + rho_mp) * s;
    if (std::abs(tr - 1.0) > 1e-10) {
        throw NonPhysical("CoherentBasisDensity: physical trace deviates from 1");
    }
}

OverlapAngle overlap_angle(double alpha) {
    if (alpha < 0.0) throw ConfigError("overlap_angle: alpha must be >= 0");
    OverlapAngle a;
    a.alpha = alpha;
    a.theta = 0.5 * std::asin(std::exp(-2.0 * alpha * alpha));
    return a;
}

double amplitude_for_angle(double theta) {
    if (theta < 0.0 || theta > kPi / 4.0) {
        throw ConfigError("amplitude_for_angle: theta outside [0, pi/4]");
    }
    const double s = std::sin(2.0 * theta);
    if (s <= 0.0) throw ConfigError("amplitude_for_angle: theta = 0 maps to infinite amplitude");
    return std::sqrt(std::max(0.0, -0.5 * std::log(s)));
}

std::pair<BlochVector, BlochVector> signal_bloch(const OverlapAngle& angle) {
    angle.validate();
    const double s = std::sin(2.0 * angle.theta);
    const double c = std::cos(2.0 * angle.theta);
    return {BlochVector{s, 0.0, c}, BlochVector{s, 0.0, -c}};
}

std::pair<fock::PureState, fock::PureState> cat_basis(double alpha,
                                                      const fock::TruncationConfig& cfg) {
    if (alpha <= 0.0) throw ConfigError("cat_basis: alpha must be > 0");
    const fock::PureState base = fock::coherent_state(alpha, cfg);
    const double ov = std::exp(-2.0 * alpha * alpha);
    const double omega_p = std::sqrt(1.0 + ov);
    const double omega_m = std::sqrt(1.0 - ov);
    Eigen::VectorXcd even = Eigen::VectorXcd::Zero(cfg.dim);
    Eigen::VectorXcd odd = Eigen::VectorXcd::Zero(cfg.dim);
    // (|α⟩ ± |−α⟩) doubles the even/odd amplitudes and zeroes the rest, so the
    // parity split is exact — no subtractive cancellation for small α.
    for (int n = 0; n < cfg.dim; ++n) {
        if (n % 2 == 0) {
            even(n) = base.amplitudes(n) * std::sqrt(2.0) / omega_p;
        } else {
            odd(n) = base.amplitudes(n) * std::sqrt(2.0) / omega_m;
        }
    }
    fock::PureState psi_even{even, cfg, base.tail_mass, base.renormalized};
    fock::PureState psi_odd{odd, cfg, base.tail_mass, base.renormalized};
    // The parity split redistributes the (already renormalized) coherent
    // amplitudes; renormalize each component exactly.
    psi_even.amplitudes /= psi_even.amplitudes.norm();
    psi_odd.amplitudes /= psi_odd.amplitudes.norm();
    return {psi_even, psi_odd};
}

std::pair<fock::PureState, fock::PureState> qubit_basis(double alpha,
                                                        const fock::TruncationConfig& cfg) {
    const OverlapAngle angle = overlap_angle(alpha);
    if (kPi / 4.0 - angle.theta < kDegenerateCutoff) {
        throw DegenerateBasis("qubit_basis: alphabet too close to degenerate");
    }
    const double ct = std::cos(angle.theta);
    const double st = std::sin(angle.theta);
    const double c2 = std::cos(2.0 * angle.theta);
    const fock::PureState plus = fock::coherent_state(alpha, cfg);
    const fock::PureState minus = fock::coherent_state(-alpha, cfg);
    Eigen::VectorXcd b0 = (ct * plus.amplitudes - st * minus.amplitudes) / c2;
    Eigen::VectorXcd b1 = (ct * minus.amplitudes - st * plus.amplitudes) / c2;
    return {fock::PureState{b0, cfg, plus.tail_mass, plus.renormalized},
            fock::PureState{b1, cfg, minus.tail_mass, minus.renormalized}};
}

CoherentBasisDensity bloch_to_coherent_basis(const BlochVector& b, const OverlapAngle& angle) {
    b.validate();
    angle.validate();
    if (kPi / 4.0 - angle.theta < kDegenerateCutoff) {
        throw DegenerateBasis("bloch_to_coherent_basis: cos(2θ) too close to zero");
    }
    const double s = std::sin(2.0 * angle.theta);
    const double c = std::cos(2.0 * angle.theta);
    const double denom = 2.0 * c * c;
    CoherentBasisDensity out;
    out.alpha = angle.alpha;
    out.rho_pp = (1.0 + b.z * c - b.x * s) / denom;
    out.rho_mm = (1.0 - b.z * c - b.x * s) / denom;
    out.rho_pm = cxd(b.x - s, -b.y * c) / denom;
    out.rho_mp = std::conj(out.rho_pm);
    out.validate();
    return out;
}

fock::DensityOp coherent_basis_to_fock(const CoherentBasisDensity& c,
                                       const fock::TruncationConfig& cfg) {
    c.validate();
    const fock::PureState plus = fock::coherent_state(c.alpha, cfg);
    const fock::PureState minus = fock::coherent_state(-c.alpha, cfg);
    const Eigen::VectorXcd& p = plus.amplitudes;
    const Eigen::VectorXcd& m = minus.amplitudes;
    Eigen::MatrixXcd rho = c.rho_pp * (p * p.adjoint()) + c.rho_pm * (p * m.adjoint()) +
                           c.rho_mp * (m * p.adjoint()) + c.rho_mm * (m * m.adjoint());
    const double tr = rho.trace().real();
    if (std::abs(tr - 1.0) > std::max(cfg.tail_tol, 1e-10)) {
        throw NonPhysical("coherent_basis_to_fock: embedded trace deviates from 1");
    }
    rho = (rho + rho.adjoint().eval()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -1e-8) {
        throw NonPhysical("coherent_basis_to_fock: negative eigenvalue " +
                          std::to_string(min_eig));
    }
    return fock::DensityOp{rho, cfg};
}

} // namespace bcsim::alphabet
