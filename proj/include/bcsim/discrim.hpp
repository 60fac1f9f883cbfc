#pragma once

#include <map>
#include <string>
#include <utility>

#include "bcsim/errors.hpp"
#include "bcsim/fock.hpp"
#include "bcsim/gauss.hpp"

namespace bcsim::discrim {

/// Result of a binary discrimination strategy: average error probability and
/// any optimized parameters (e.g. the displacement magnitude β).
struct ReceiverResult {
    double error_prob = 0.5;
    std::map<std::string, double> params;
};

/// Result of unambiguous discrimination: conclusive/inconclusive split.
struct UsdResult {
    double success_prob = 0.0;
    double inconclusive_prob = 1.0;
};

/// Receiver selector used by the measure-and-prepare cloner and the CLI.
enum class ReceiverKind { helstrom, homodyne, kennedy, optimized_displacement };

ReceiverKind receiver_from_name(const std::string& name);
std::string receiver_name(ReceiverKind kind);

/// Dispatch to the receiver's error probability at amplitude α.
ReceiverResult receiver_error(ReceiverKind kind, double alpha);

/// Quadrature-threshold (homodyne) receiver: p_err = ½(1 − erf(√2·α)).
ReceiverResult homodyne_error(double alpha);

/// Minimum achievable average error for the {|+α⟩, |−α⟩} pair:
/// p_err = ½(1 − √(1 − e^{−4α²})).
ReceiverResult helstrom_error(double alpha);

/// Displace-to-vacuum photon-counting receiver: p_err = ½·e^{−4α²}.
ReceiverResult kennedy_error(double alpha);

/// Displacement-optimized photon-counting receiver. The optimal β solves
/// α = β·tanh(2αβ) (bisection on [1/√2, α+2], tolerance 1e−12; β = 1/√2
/// returned directly for α < 1e−6) and the error is
/// p_err = ½ − e^{−(α²+β²)}·sinh(2αβ). The result's params carry "beta".
ReceiverResult optimized_displacement(double alpha);

/// Unambiguous discrimination: success probability 1 − e^{−2α²} (the
/// vacuum-click bound for the symmetric pair).
UsdResult usd(double alpha);

/// Minimum-error probability for an equally likely pure Gaussian pair:
/// ½(1 − √(1 − O)) with O the pair overlap. Requires both covariances pure
/// (det ≤ 1/16 + 1e−6); throws MixedStateUnsupported otherwise.
double gaussian_pair_helstrom(const gauss::GaussianState& s_plus,
                              const gauss::GaussianState& s_minus);

/// POVM of the displaced photon-counting measurement: the no-click element
/// projects onto the displaced vacuum, Π₀ = D†(β)|0⟩⟨0|D(β), and the click
/// element is its complement. Returns (no-click, click).
std::pair<fock::LinearOp, fock::LinearOp> kennedy_povm(double beta,
                                                       const fock::TruncationConfig& cfg);

} // namespace bcsim::discrim
