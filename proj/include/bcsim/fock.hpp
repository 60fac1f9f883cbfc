#pragma once

#include <complex>
#include <utility>

#include <Eigen/Dense>

#include "bcsim/errors.hpp"

namespace bcsim::fock {

using cxd = std::complex<double>;

/// Number-basis truncation: how many Fock levels are retained and how much
/// probability weight is allowed to sit above the cutoff.
struct TruncationConfig {
    int dim = 20;            ///< retained Fock levels |0⟩ … |dim−1⟩
    double tail_tol = 1e-10; ///< admissible probability weight above the cutoff

    /// Default truncation for states whose total coherent/displacement
    /// amplitude budget is `amp` (sum of the magnitudes involved):
    /// dim = max(20, ⌈8·amp² + 20⌉). Generous headroom for amplitudes |α|² ≤ 3.
    static TruncationConfig for_amplitude(double amp, double tail_tol = 1e-10);

    void validate() const {
        if (dim < 2) throw ConfigError("TruncationConfig: dim must be ≥ 2");
        if (tail_tol < 0) throw ConfigError("TruncationConfig: tail_tol must be ≥ 0");
    }
};

/// Pure state as a complex amplitude vector over the retained Fock levels.
struct PureState {
    Eigen::VectorXcd amplitudes;
    TruncationConfig config;
    double tail_mass = 0.0;    ///< norm deficit absorbed at construction
    bool renormalized = false; ///< whether an explicit renormalization was applied
};

/// Density operator as a Hermitian matrix over the retained Fock levels.
struct DensityOp {
    Eigen::MatrixXcd matrix;
    TruncationConfig config;
};

/// General linear operator on the truncated space (â, D̂, Ŝ, x̂, p̂, parity, …).
struct LinearOp {
    Eigen::MatrixXcd matrix;
    TruncationConfig config;
};

/// Coherent state with amplitudes cₙ = e^{−|α|²/2} αⁿ/√(n!), renormalized on
/// the retained levels; the norm deficit is recorded on the returned state.
/// Throws TruncationError when the Poisson tail above the cutoff exceeds
/// cfg.tail_tol.
PureState coherent_state(cxd alpha, const TruncationConfig& cfg);

/// Annihilation operator â (subdiagonal √n).
LinearOp annihilation_op(const TruncationConfig& cfg);

/// Displacement operator D(β) = exp(βâ† − β*â), built by exponentiating the
/// truncated generator. Throws TruncationError when the unitarity defect on
/// the lower half of the basis exceeds 1e−8.
LinearOp displacement_op(cxd beta, const TruncationConfig& cfg);

/// Squeezing operator S(z) = exp((z/2)â†² − (z*/2)â²) with z = r·e^{iφ}.
/// φ = 0 antisqueezes x̂ on the vacuum (Var x = e^{+2r}/4, Var p = e^{−2r}/4);
/// φ = π/2 maps x̂ ↦ cosh(r)·x̂ + sinh(r)·p̂, so a real-amplitude coherent
/// state acquires mean ⟨x̂⟩ = cosh(r)·α. Throws TruncationError on leakage.
LinearOp squeeze_op(cxd z, const TruncationConfig& cfg);

/// Quadratures x̂ = (â+â†)/2 and p̂ = (â−â†)/(2i); vacuum variances are 1/4
/// and [x̂, p̂] = i/2 on the retained subspace.
std::pair<LinearOp, LinearOp> quadrature_ops(const TruncationConfig& cfg);

/// Parity operator Π = diag((−1)ⁿ).
LinearOp parity_op(const TruncationConfig& cfg);

/// Apply an operator to a pure state (no renormalization).
PureState apply(const LinearOp& op, const PureState& psi);

/// Validate and wrap a matrix as a density operator: Hermitian to 1e−12
/// elementwise, trace within cfg.tail_tol of 1, eigenvalues ≥ −1e−10.
/// Throws NonPhysical on violation.
DensityOp make_density(const Eigen::MatrixXcd& m, const TruncationConfig& cfg);

/// Projector |ψ⟩⟨ψ| as a density operator.
DensityOp projector(const PureState& psi);

/// ⟨ψ|ρ|ψ⟩, clamped to [0,1] after a tolerance check (negative eigenvalue
/// round-off up to 1e−8 is tolerated). Throws ConfigError on dimension
/// mismatch and NonPhysical when the raw value is outside [−1e−8, 1+1e−8].
double fidelity_pure(const DensityOp& rho, const PureState& psi);

/// Squared overlap |⟨φ|ψ⟩|² of two pure states.
double fidelity_pure(const PureState& phi, const PureState& psi);

/// Tr[ρ·op] for a density operator, or ⟨ψ|op|ψ⟩ for a pure state.
cxd expectation(const LinearOp& op, const DensityOp& rho);
cxd expectation(const LinearOp& op, const PureState& psi);

} // namespace bcsim::fock
