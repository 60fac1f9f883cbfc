#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"

#include "bcsim/fock.hpp"
#include "bcsim/gauss.hpp"

using namespace bcsim;
using gauss::GaussianState;

namespace {

/// Total mean photon number of a two-mode state (sum of the two reductions).
double total_photons(const gauss::TwoModeGaussian& tm) {
    return gauss::partial_trace(tm, 0).mean_photons() +
           gauss::partial_trace(tm, 1).mean_photons();
}

} // namespace

TEST_SUITE("gauss") {

TEST_CASE("coherent state has vacuum covariance and |alpha|^2 photons") {
    const std::complex<double> alpha{0.8, -0.3};
    const auto g = gauss::coherent(alpha);
    CHECK(g.mean(0) == doctest::Approx(0.8));
    CHECK(g.mean(1) == doctest::Approx(-0.3));
    CHECK((g.cov - Eigen::Matrix2d::Identity() / 4.0).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(g.mean_photons() == doctest::Approx(std::norm(alpha)).epsilon(1e-12));
}

TEST_CASE("squeeze preserves purity and follows the phase convention") {
    const double r = 0.4;
    const auto vac = gauss::coherent(0.0);

    const auto anti = gauss::squeeze(vac, r, 0.0);
    CHECK(anti.cov(0, 0) == doctest::Approx(std::exp(2.0 * r) / 4.0).epsilon(1e-12));
    CHECK(anti.cov(1, 1) == doctest::Approx(std::exp(-2.0 * r) / 4.0).epsilon(1e-12));
    CHECK(anti.cov.determinant() == doctest::Approx(1.0 / 16.0).epsilon(1e-12));

    const auto sq = gauss::squeeze(vac, r, std::numbers::pi / 2.0);
    CHECK(sq.cov(0, 0) == doctest::Approx(std::exp(-2.0 * r) / 4.0).epsilon(1e-12));
    CHECK(sq.cov(1, 1) == doctest::Approx(std::exp(2.0 * r) / 4.0).epsilon(1e-12));

    // The mean transforms with the same symplectic matrix.
    const auto moved = gauss::squeeze(gauss::coherent(1.0), r, 0.0);
    CHECK(moved.mean(0) == doctest::Approx(std::exp(r)).epsilon(1e-12));
}

TEST_CASE("beam splitter conserves photon number and splits the mean") {
    const double alpha = 1.3, T = 0.37;
    const auto in_a = gauss::coherent(alpha);
    const auto in_b = gauss::squeeze(gauss::coherent(0.2), 0.3, 0.7);
    const auto out = gauss::beamsplit(in_a, in_b, T);
    CHECK(total_photons(out) ==
          doctest::Approx(in_a.mean_photons() + in_b.mean_photons()).epsilon(1e-10));

    // Coherent ⊗ vacuum input: reductions are coherent with scaled means.
    const auto split = gauss::beamsplit(gauss::coherent(alpha), gauss::coherent(0.0), T);
    const auto kept = gauss::partial_trace(split, 0);
    const auto refl = gauss::partial_trace(split, 1);
    CHECK(kept.mean(0) == doctest::Approx(std::sqrt(T) * alpha).epsilon(1e-12));
    CHECK(refl.mean(0) == doctest::Approx(std::sqrt(1.0 - T) * alpha).epsilon(1e-12));
    CHECK((kept.cov - Eigen::Matrix2d::Identity() / 4.0).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((refl.cov - Eigen::Matrix2d::Identity() / 4.0).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("overlap calibration: vacuum self-overlap is one, coherent pairs are gaussian") {
    CHECK(gauss::overlap(gauss::coherent(0.0), gauss::coherent(0.0)) ==
          doctest::Approx(1.0).epsilon(1e-12));
    const std::complex<double> a{0.9, 0.2}, b{-0.4, 0.5};
    CHECK(gauss::overlap(gauss::coherent(a), gauss::coherent(b)) ==
          doctest::Approx(std::exp(-std::norm(a - b))).epsilon(1e-12));
    CHECK(gauss::overlap_with_coherent(gauss::coherent(a), b) ==
          doctest::Approx(std::exp(-std::norm(a - b))).epsilon(1e-12));
}

TEST_CASE("overlap agrees with the number-basis inner product for squeezed states") {
    // ⟨α|S(r)|0⟩ computed both ways: phase-space overlap vs Fock amplitudes.
    const double r = 0.5, alpha = 0.7;
    const auto g = gauss::squeeze(gauss::coherent(0.0), r, 0.0);
    const double phase_space = gauss::overlap_with_coherent(g, alpha);

    const fock::TruncationConfig cfg{60, 1e-10};
    const auto sq = fock::apply(fock::squeeze_op(r, cfg), fock::coherent_state(0.0, cfg));
    const double fock_side = fock::fidelity_pure(fock::coherent_state(alpha, cfg), sq);
    CHECK(phase_space == doctest::Approx(fock_side).epsilon(1e-9));
}

TEST_CASE("displaced squeezed overlap matches the fock computation") {
    const double r = 0.35, phi_op = 1.1, beta = 0.45, alpha = 0.6;
    const fock::TruncationConfig cfg{60, 1e-10};
    const std::complex<double> z = r * std::exp(std::complex<double>(0.0, phi_op));

    // Displace-then-squeeze: the mean transforms with the squeeze matrix.
    // Gaussian squeeze phase is half the operator phase.
    const auto g = gauss::squeeze(gauss::coherent(beta), r, phi_op / 2.0);
    const auto sd = fock::apply(
        fock::squeeze_op(z, cfg),
        fock::apply(fock::displacement_op(beta, cfg), fock::coherent_state(0.0, cfg)));
    CHECK(gauss::overlap_with_coherent(g, alpha) ==
          doctest::Approx(fock::fidelity_pure(fock::coherent_state(alpha, cfg), sd))
              .epsilon(1e-9));

    // Squeeze-then-displace: same covariance, mean shifted by β afterwards.
    const auto shifted = gauss::squeeze(gauss::coherent(0.0), r, phi_op / 2.0);
    GaussianState displaced{Eigen::Vector2d{beta + shifted.mean(0), shifted.mean(1)},
                            shifted.cov};
    const auto ds = fock::apply(
        fock::displacement_op(beta, cfg),
        fock::apply(fock::squeeze_op(z, cfg), fock::coherent_state(0.0, cfg)));
    CHECK(gauss::overlap_with_coherent(displaced, alpha) ==
          doctest::Approx(fock::fidelity_pure(fock::coherent_state(alpha, cfg), ds))
              .epsilon(1e-9));
}

TEST_CASE("mixture overlap is linear in the weights") {
    const double alpha = 0.8;
    gauss::GaussianMixture mix;
    mix.components = {{0.75, gauss::coherent(alpha)}, {0.25, gauss::coherent(-alpha)}};
    mix.validate();
    const double expect = 0.75 + 0.25 * std::exp(-4.0 * alpha * alpha);
    CHECK(gauss::overlap_with_coherent(mix, alpha) == doctest::Approx(expect).epsilon(1e-12));

    gauss::GaussianMixture bad;
    bad.components = {{0.6, gauss::coherent(alpha)}, {0.6, gauss::coherent(-alpha)}};
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("nonphysical covariance is rejected") {
    GaussianState below_heisenberg;
    below_heisenberg.cov = Eigen::Matrix2d::Identity() / 8.0; // det = 1/64 < 1/16
    CHECK_THROWS_AS(below_heisenberg.validate(), NonPhysicalCovariance);

    GaussianState asym;
    asym.cov << 0.3, 0.1, -0.1, 0.3;
    CHECK_THROWS_AS(asym.validate(), NonPhysicalCovariance);

    CHECK_THROWS_AS(gauss::overlap(below_heisenberg, gauss::coherent(0.0)),
                    NonPhysicalCovariance);
}

} // TEST_SUITE
