#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "bcsim/alphabet.hpp"
#include "bcsim/discrim.hpp"
#include "bcsim/fock.hpp"
#include "bcsim/gauss.hpp"
#include "bcsim/optimize.hpp"

namespace bcsim::cloners {

/// The symmetric two-state cloner in Bloch form: the input Bloch vector of
/// either signal state shrinks to norm |s| and rotates by ζ toward the
/// equator. With S = sin2θ the cloned coordinates are
///   x′ = S(1+S)/(1+S²),   z′ = √((1−S²)/(1+S²)),
/// so |s| = √(x′² + z′²) and ζ = atan2(x′, z′) − 2θ.
struct OptimalCloneTransform {
    alphabet::OverlapAngle theta;
    double s_norm = 1.0; ///< in (0, 1]
    double zeta = 0.0;   ///< radians, ≥ 0

    void validate() const;
};

/// Per-scheme cloning record: optimized parameters, output branch states,
/// and the mean fidelity with the matching input signal state.
struct CloneReport {
    std::string scheme;
    double alpha = 0.0;
    std::map<std::string, double> params;
    struct Branch {
        double probability = 1.0;
        std::string label;
        std::variant<gauss::GaussianState, gauss::GaussianMixture, fock::DensityOp> state;
    };
    std::vector<Branch> branch_states;
    double mean_fidelity = 1.0;

    /// Enforces: branch probabilities sum to 1 (1e−12) and mean_fidelity does
    /// not exceed the two-state cloning bound by more than 1e−9.
    void validate() const;
};

/// Preparation modes for the measure-and-prepare cloner.
enum class MpPrep { exact, optimized_coherent, optimized_squeezed };

/// Preparation modes for the unambiguous-discrimination cloner's
/// inconclusive branch.
enum class UsdPrep { random_signal, optimized_coherent, optimized_squeezed };

/// Fidelity bound for symmetric 1→2 cloning of two pure states with overlap
/// S = sin2θ: F = ½(1 + (1−S²)/√(1+S²) + S²(1+S)/(1+S²)).
double bruss_bound(double S);

/// Convenience: the bound evaluated at the alphabet's overlap for amplitude α.
double bruss_bound_at_alpha(double alpha);

/// Bloch-vector transform (|s|, ζ) of the optimal cloner at angle θ.
OptimalCloneTransform optimal_transform(const alphabet::OverlapAngle& theta);

/// Optimal clone of |+α⟩: coherent-basis coefficients and the number-basis
/// embedding. The clone Bloch vector is (x′, 0, z′) = |s|·(sin(2θ+ζ), 0,
/// cos(2θ+ζ)); its fidelity with |α⟩ equals the cloning bound.
/// Throws DegenerateBasis for α below the admissible cutoff.
std::pair<alphabet::CoherentBasisDensity, fock::DensityOp> optimal_clone_state(
    double alpha, const fock::TruncationConfig& cfg);

/// Trivial symmetric splitter: both clones are |α/√2⟩,
/// F = e^{−α²(1−1/√2)²}.
CloneReport beamsplitter_cloner(double alpha);

/// Phase-sensitive amplifier model applied to a Gaussian state: amplitude
/// gain cosh(r) on the mean, quadrature variances scaled by e^{±2r}
/// (x antisqueezed). This is the amplifier characterization the cloning
/// analysis is built on; it is not the symplectic single-mode squeeze, whose
/// e^{+r} mean gain would overshoot the cloning bound at small amplitudes.
gauss::GaussianState psa_amplify(const gauss::GaussianState& g, double r);

/// Amplify-then-split cloner: maximize over r the fidelity of
/// psa_amplify(|α⟩, r) → 50:50 split → reduced clone vs |α⟩.
CloneReport psa_cloner(double alpha, const opt::OptimizerSpec& spec);

/// Measure-and-prepare cloner: discriminate with the given receiver
/// (error probability p), then prepare. The clone is the mixture
/// (1−p)·ρ_prep(+) + p·ρ_prep(−); for prep = exact,
/// F = (1−p) + p·e^{−4α²}. Optimized preparations maximize F over the
/// coherent amplitude β (and squeezing u for the squeezed mode).
CloneReport mp_cloner(double alpha, discrim::ReceiverKind receiver, MpPrep prep,
                      const opt::OptimizerSpec& spec);

/// Partial-measurement feed-forward cloner: tap the signal with a beam
/// splitter of transmissivity T against an x-squeezed vacuum (r₁),
/// discriminate the reflected pair, amplify the transmitted beam (r₂),
/// apply a hypothesis-signed conditional displacement with forward gain g
/// (normalized so g = 1 restores clone amplitude exactly α), and split
/// symmetrically. Maximizes the mean fidelity over (T, r₁, r₂, g).
CloneReport partial_mp_cloner(double alpha, const opt::OptimizerSpec& spec);

/// Unambiguous-discrimination cloner: conclusive outcomes contribute unit
/// fidelity; inconclusive ones prepare a fallback state.
/// F = p_succ + (1 − p_succ)·F_inc with F_inc per preparation mode:
/// random_signal → ½(1 + e^{−4α²}); the optimized modes maximize the mean
/// overlap ½(⟨α|ρ|α⟩ + ⟨−α|ρ|−α⟩) over real displacement β (and axis-aligned
/// squeezing u for the squeezed mode).
CloneReport usd_cloner(double alpha, UsdPrep prep, const opt::OptimizerSpec& spec);

/// Error probability of the minimum-error measurement for an equally likely
/// equal-covariance Gaussian pair, valid for mixed states: the pair overlap
/// is normalized by the state purities, O = exp(−¼·δᵀΣ^{−1}δ), and
/// p = ½(1 − √(1 − O)). Coincides with the pure-pair bound when both states
/// are pure.
double normalized_pair_error(const gauss::GaussianState& s_plus,
                             const gauss::GaussianState& s_minus);

/// Default optimizer settings for cloning objectives.
opt::OptimizerSpec default_optimizer();

} // namespace bcsim::cloners
