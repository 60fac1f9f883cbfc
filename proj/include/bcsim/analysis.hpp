#pragma once

#include <cstddef>
#include <vector>

#include "bcsim/fock.hpp"

namespace bcsim::analysis {

/// Which quadrature a marginal or cumulant refers to: x = (â+â†)/2 or
/// p = (â−â†)/(2i).
enum class QuadAxis { x, p };

/// Uniform rectangular sample of a Wigner function (or a difference of two).
/// values is row-major over (x index, p index).
struct WignerGrid {
    std::vector<double> x_axis;
    std::vector<double> p_axis;
    std::vector<double> values;

    double at(std::size_t ix, std::size_t ip) const { return values[ix * p_axis.size() + ip]; }
    double dx() const;
    double dp() const;
    /// Trapezoidal ∫∫ W dx dp over the sampled window.
    double integral() const;
};

/// First six cumulants of a quadrature distribution. For any Gaussian state
/// k3 through k6 vanish; k2 of the vacuum is 1/4.
struct CumulantSet {
    double k1 = 0.0, k2 = 0.0, k3 = 0.0, k4 = 0.0, k5 = 0.0, k6 = 0.0;
};

/// Mean and standard deviation of the chosen quadrature, from operator
/// moments of the density.
std::pair<double, double> quad_mean_sigma(const fock::DensityOp& rho, QuadAxis axis);

/// W(x, p) = (2/π)·Tr[ρ D(γ) Π D†(γ)] with γ = x + ip, sampled on the given
/// inclusive uniform grid. Throws GridTooSmall unless the window covers
/// mean ± 4σ of both quadratures.
WignerGrid wigner(const fock::DensityOp& rho, std::size_t nx, std::size_t np, double x_lo,
                  double x_hi, double p_lo, double p_hi);

/// Wigner sample on an automatic window, mean ± pad_sigmas·σ per axis.
WignerGrid wigner_auto(const fock::DensityOp& rho, std::size_t n = 121, double pad_sigmas = 4.5);

/// Pointwise difference a − b. Throws GridMismatch unless both grids share
/// identical axes.
WignerGrid wigner_diff(const WignerGrid& a, const WignerGrid& b);

/// Trapezoidal mass of the grid restricted to the half-plane x < 0
/// (negative_x = true) or x > 0; the column nearest zero is excluded from
/// neither side — integration simply stops at the sign boundary.
double half_plane_mass(const WignerGrid& grid, bool negative_x);

/// Marginal distribution along one axis (integrating the other out).
std::vector<double> marginal(const WignerGrid& grid, QuadAxis axis);

/// ⟨Π⟩ = Σₙ (−1)ⁿ ρₙₙ; equals (π/2)·W(0,0).
double parity_expectation(const fock::DensityOp& rho);

/// Cumulants k1..k6 of the chosen quadrature, from operator moments
/// Tr[ρ q̂ʲ]. Throws TruncationError if the density carries weight near the
/// truncation edge, where high moments of the truncated operator go bad.
CumulantSet cumulants(const fock::DensityOp& rho, QuadAxis axis);

} // namespace bcsim::analysis
