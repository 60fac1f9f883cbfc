#pragma once

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "bcsim/errors.hpp"

namespace bcsim::gauss {

using cxd = std::complex<double>;

/// Single-mode Gaussian state: quadrature mean (x, p) and symmetric 2×2
/// covariance. Vacuum covariance is I/4 (κ₂ = 1/4 convention), so the
/// Heisenberg bound reads det(cov) ≥ 1/16.
struct GaussianState {
    Eigen::Vector2d mean = Eigen::Vector2d::Zero();
    Eigen::Matrix2d cov = Eigen::Matrix2d::Identity() / 4.0;

    /// Throws NonPhysicalCovariance when cov is not symmetric positive
    /// definite or violates det(cov) ≥ 1/16 − 1e−12.
    void validate() const;

    /// Mean photon number ⟨n̂⟩ = |mean|² + tr(cov) − 1/2.
    double mean_photons() const { return mean.squaredNorm() + cov.trace() - 0.5; }
};

/// Two-mode Gaussian state: 4-vector mean and symmetric 4×4 covariance
/// (mode ordering x₁, p₁, x₂, p₂).
struct TwoModeGaussian {
    Eigen::Vector4d mean = Eigen::Vector4d::Zero();
    Eigen::Matrix4d cov = Eigen::Matrix4d::Identity() / 4.0;

    /// Throws NonPhysicalCovariance unless cov is symmetric positive definite
    /// and cov + iΩ/4 ⪰ −1e−10 with Ω the standard symplectic form.
    void validate() const;
};

/// Convex mixture of single-mode Gaussian states.
struct GaussianMixture {
    std::vector<std::pair<double, GaussianState>> components;

    /// Throws ConfigError unless weights are in [0,1] and sum to 1 ± 1e−12.
    void validate() const;
};

/// Gaussian image of the coherent state |α⟩: mean (Re α, Im α), cov = I/4.
GaussianState coherent(cxd alpha);

/// Symplectic single-mode squeeze: M = R(φ)·diag(e^{+r}, e^{−r})·R(φ)ᵀ,
/// mean ↦ M·mean, cov ↦ M·cov·Mᵀ. φ = 0 antisqueezes the x quadrature
/// (vacuum → Var x = e^{+2r}/4, Var p = e^{−2r}/4); φ = π/2 squeezes x.
GaussianState squeeze(const GaussianState& state, double r, double phi);

/// Two-mode beam splitter with intensity transmissivity T acting on a
/// product input: out₁ = √T·a + √(1−T)·b, out₂ = √(1−T)·a − √T·b.
/// Conserves the total mean photon number.
TwoModeGaussian beamsplit(const GaussianState& a, const GaussianState& b, double T);

/// Reduced state of one mode (keep = 0 or 1): mean/cov sub-blocks.
GaussianState partial_trace(const TwoModeGaussian& tm, int keep);

/// Overlap Tr[ρ₁ρ₂] of two single-mode Gaussian states:
/// exp(−½ δᵀ(Σ₁+Σ₂)^{−1} δ) / (2·√det(Σ₁+Σ₂)).
/// The prefactor is calibrated so that vacuum-vs-vacuum yields 1; the
/// number-basis cross-check lives in the test suite.
double overlap(const GaussianState& g1, const GaussianState& g2);

/// Fidelity ⟨α|ρ_g|α⟩ of a Gaussian state with the coherent state |α⟩
/// (specialization of `overlap`). Throws NonPhysicalCovariance.
double overlap_with_coherent(const GaussianState& g, cxd alpha);

/// Mean fidelity of a mixture with |α⟩: the weight-sum of component overlaps.
double overlap_with_coherent(const GaussianMixture& mix, cxd alpha);

} // namespace bcsim::gauss
