#pragma once

#include <complex>
#include <utility>

#include "bcsim/errors.hpp"
#include "bcsim/fock.hpp"

namespace bcsim::alphabet {

using cxd = std::complex<double>;

/// Non-orthogonality angle θ of the two-state alphabet {|+α⟩, |−α⟩},
/// defined by sin(2θ) = ⟨α|−α⟩ = e^{−2α²}; θ ∈ [0, π/4] with θ = π/4 the
/// identical-state limit (α = 0).
struct OverlapAngle {
    double theta = 0.0;
    double alpha = 0.0;

    /// Throws ConfigError unless sin(2θ) and e^{−2α²} agree to 1e−12.
    void validate() const;
};

/// Bloch coordinates of a two-level density matrix; ‖(x,y,z)‖ ≤ 1.
struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    void validate() const;
};

/// 2×2 density matrix together with the basis it refers to.
struct TwoDimDensity {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity() / 2.0;
    enum class Basis { qubit, cat } basis = Basis::qubit;

    /// Throws NonPhysical unless Hermitian, unit trace (1e−12), and PSD.
    void validate() const;
};

/// Density coefficients in the non-orthogonal coherent basis:
/// ρ = Σ c_ij |iα⟩⟨jα| for i, j ∈ {+, −}. Because the basis states are not
/// orthogonal, unit trace reads
/// c₊₊ + c₋₋ + (c₊₋ + c₋₊)·⟨−α|α⟩ = 1 — not the naive coefficient sum.
struct CoherentBasisDensity {
    cxd rho_pp{0.0};
    cxd rho_pm{0.0};
    cxd rho_mp{0.0};
    cxd rho_mm{0.0};
    double alpha = 0.0;

    /// Throws NonPhysical on conjugate-symmetry or physical-trace violation.
    void validate() const;
};

/// θ = ½·arcsin(e^{−2α²}) for real α ≥ 0.
OverlapAngle overlap_angle(double alpha);

/// Inverse map: amplitude α ≥ 0 with sin(2θ) = e^{−2α²}.
double amplitude_for_angle(double theta);

/// Bloch vectors of the two signal states: (sin2θ, 0, ±cos2θ).
std::pair<BlochVector, BlochVector> signal_bloch(const OverlapAngle& angle);

/// Even/odd superposition basis |Ψ±⟩ = (|α⟩ ± |−α⟩)/(√2·Ω±) with
/// Ω± = √(1 ± e^{−2α²}), built directly from the parity-split coherent
/// amplitudes (no cancellation). Returns (even, odd).
std::pair<fock::PureState, fock::PureState> cat_basis(double alpha,
                                                      const fock::TruncationConfig& cfg);

/// Orthonormal qubit basis spanning the alphabet:
/// |0⟩ = (cosθ·|α⟩ − sinθ·|−α⟩)/cos2θ, |1⟩ = (cosθ·|−α⟩ − sinθ·|α⟩)/cos2θ,
/// so that |α⟩ = cosθ|0⟩ + sinθ|1⟩ and |−α⟩ = sinθ|0⟩ + cosθ|1⟩.
std::pair<fock::PureState, fock::PureState> qubit_basis(double alpha,
                                                        const fock::TruncationConfig& cfg);

/// Expand a Bloch-parametrized two-level state over the coherent basis:
/// with S = sin2θ and C = cos2θ,
///   c₊₊ = (1 + z·C − x·S)/(2C²),  c₋₋ = (1 − z·C − x·S)/(2C²),
///   c₊₋ = (x − S − i·y·C)/(2C²),  c₋₊ = conj(c₊₋).
/// Throws DegenerateBasis when π/4 − θ < 1e−6 (the expansion blows up).
CoherentBasisDensity bloch_to_coherent_basis(const BlochVector& b, const OverlapAngle& angle);

/// Embed coherent-basis coefficients in the number basis:
/// ρ = Σ c_ij |iα⟩⟨jα|. Validates trace, Hermiticity, and positivity
/// (eigenvalue floor −1e−8; throws NonPhysical below it).
fock::DensityOp coherent_basis_to_fock(const CoherentBasisDensity& c,
                                       const fock::TruncationConfig& cfg);

} // namespace bcsim::alphabet
