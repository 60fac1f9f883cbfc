#pragma once

#include <stdexcept>
#include <string>

namespace bcsim {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Probability weight above the Fock cutoff exceeds the configured tolerance,
/// or an operator loses too much unitarity to truncation leakage.
class TruncationError : public Error {
public:
    using Error::Error;
};

/// A constructed density operator violates Hermiticity, positivity, or
/// trace normalization beyond the configured tolerances.
class NonPhysical : public Error {
public:
    using Error::Error;
};

/// An iterative solver or optimizer exhausted its evaluation budget.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Invalid run configuration (bad grid, unknown scheme, out-of-domain input).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// The two-state alphabet is too close to degenerate (overlap angle at the
/// upper end of its range) for the non-orthogonal basis expansion.
class DegenerateBasis : public Error {
public:
    using Error::Error;
};

/// A Gaussian-pair discrimination helper was handed a mixed state where a
/// pure one is required.
class MixedStateUnsupported : public Error {
public:
    using Error::Error;
};

/// A covariance matrix is not symmetric positive-definite or violates the
/// Heisenberg bound.
class NonPhysicalCovariance : public Error {
public:
    using Error::Error;
};

/// Two phase-space grids passed to a binary operation do not coincide.
class GridMismatch : public Error {
public:
    using Error::Error;
};

/// A phase-space grid does not cover the support of the state.
class GridTooSmall : public Error {
public:
    using Error::Error;
};

} // namespace bcsim
