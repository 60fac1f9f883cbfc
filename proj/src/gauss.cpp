#include "bcsim/gauss.hpp"

#include <cmath>

namespace bcsim::gauss {

void GaussianState::validate() const {
    if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
        throw NonPhysicalCovariance("GaussianState: covariance not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(cov);
    if (es.eigenvalues().minCoeff() <= 0.0) {
        throw NonPhysicalCovariance("GaussianState: covariance not positive definite");
    }
    if (cov.determinant() < 1.0 / 16.0 - 1e-12) {
        throw NonPhysicalCovariance("GaussianState: det(cov) below the Heisenberg bound");
    }
}

void TwoModeGaussian::validate() const {
    if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
        throw NonPhysicalCovariance("TwoModeGaussian: covariance not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es_r(cov);
    if (es_r.eigenvalues().minCoeff() <= 0.0) {
        throw NonPhysicalCovariance("TwoModeGaussian: covariance not positive definite");
    }
    // Physicality: cov + iΩ/4 ⪰ 0 with Ω = ⊕ [[0,1],[−1,0]] per mode.
    Eigen::Matrix4d omega = Eigen::Matrix4d::Zero();
    omega(0, 1) = 1.0; omega(1, 0) = -1.0;
    omega(2, 3) = 1.0; omega(3, 2) = -1.0;
    Eigen::Matrix4cd h = cov.cast<cxd>() + cxd(0.0, 0.25) * omega.cast<cxd>();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(h);
    if (es.eigenvalues().minCoeff() < -1e-10) {
        throw NonPhysicalCovariance("TwoModeGaussian: covariance violates the uncertainty bound");
    }
}

void GaussianMixture::validate() const {
    double sum = 0.0;
    for (const auto& [w, g] : components) {
        if (w < 0.0 || w > 1.0) throw ConfigError("GaussianMixture: weight outside [0,1]");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw ConfigError("GaussianMixture: weights sum to " + std::to_string(sum));
    }
}

GaussianState coherent(cxd alpha) {
    GaussianState g;
    g.mean << alpha.real(), alpha.imag();
    g.cov = Eigen::Matrix2d::Identity() / 4.0;
    return g;
}

GaussianState squeeze(const GaussianState& state, double r, double phi) {
    Eigen::Matrix2d rot;
    rot << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
    Eigen::Matrix2d diag = Eigen::Matrix2d::Zero();
    diag(0, 0) = std::exp(r);
    diag(1, 1) = std::exp(-r);
    const Eigen::Matrix2d m = rot * diag * rot.transpose();
    GaussianState out;
    out.mean = m * state.mean;
    out.cov = m * state.cov * m.transpose();
    return out;
}

TwoModeGaussian beamsplit(const GaussianState& a, const GaussianState& b, double T) {
    if (T < 0.0 || T > 1.0) throw ConfigError("beamsplit: transmissivity outside [0,1]");
    const double t = std::sqrt(T);
    const double rr = std::sqrt(1.0 - T);
    Eigen::Matrix4d s = Eigen::Matrix4d::Zero();
    // out₁ = √T·a + √(1−T)·b, out₂ = √(1−T)·a − √T·b, acting identically on
    // both quadratures (orthogonal, hence symplectic).
    s.block<2, 2>(0, 0) = t * Eigen::Matrix2d::Identity();
    s.block<2, 2>(0, 2) = rr * Eigen::Matrix2d::Identity();
    s.block<2, 2>(2, 0) = rr * Eigen::Matrix2d::Identity();
    s.block<2, 2>(2, 2) = -t * Eigen::Matrix2d::Identity();
    Eigen::Vector4d mean_in;
    mean_in << a.mean, b.mean;
    Eigen::Matrix4d cov_in = Eigen::Matrix4d::Zero();
    cov_in.block<2, 2>(0, 0) = a.cov;
    cov_in.block<2, 2>(2, 2) = b.cov;
    TwoModeGaussian out;
    out.mean = s * mean_in;
    out.cov = s * cov_in * s.transpose();
    return out;
}

GaussianState partial_trace(const TwoModeGaussian& tm, int keep) {
    if (keep != 0 && keep != 1) throw ConfigError("partial_trace: keep must be 0 or 1");
    const int off = 2 * keep;
    GaussianState g;
    g.mean = tm.mean.segment<2>(off);
    g.cov = tm.cov.block<2, 2>(off, off);
    return g;
}

double overlap(const GaussianState& g1, const GaussianState& g2) {
    g1.validate();
    g2.validate();
    const Eigen::Vector2d d = g1.mean - g2.mean;
    const Eigen::Matrix2d s = g1.cov + g2.cov;
    const double det = s.determinant();
    const double quad = d.dot(s.inverse() * d);
    return std::exp(-0.5 * quad) / (2.0 * std::sqrt(det));
}

double overlap_with_coherent(const GaussianState& g, cxd alpha) {
    return overlap(g, coherent(alpha));
}

double overlap_with_coherent(const GaussianMixture& mix, cxd alpha) {
    mix.validate();
    double f = 0.0;
    for (const auto& [w, g] : mix.components) f += w * overlap_with_coherent(g, alpha);
    return f;
}

} // namespace bcsim::gauss
