#include <cmath>
#include <random>

#include "doctest.h"

#include "bcsim/discrim.hpp"
#include "bcsim/fock.hpp"
#include "bcsim/gauss.hpp"

using namespace bcsim;

TEST_SUITE("discrim") {

TEST_CASE("closed forms at a reference amplitude") {
    const double a = 0.8;
    CHECK(discrim::homodyne_error(a).error_prob ==
          doctest::Approx(0.5 * (1.0 - std::erf(std::sqrt(2.0) * a))).epsilon(1e-12));
    CHECK(discrim::helstrom_error(a).error_prob ==
          doctest::Approx(0.5 * (1.0 - std::sqrt(1.0 - std::exp(-4.0 * a * a))))
              .epsilon(1e-12));
    CHECK(discrim::kennedy_error(a).error_prob ==
          doctest::Approx(0.5 * std::exp(-4.0 * a * a)).epsilon(1e-12));
    const auto u = discrim::usd(a);
    CHECK(u.success_prob == doctest::Approx(1.0 - std::exp(-2.0 * a * a)).epsilon(1e-12));
    CHECK(u.success_prob + u.inconclusive_prob == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("all receivers degrade to a coin flip at zero amplitude") {
    for (auto kind : {discrim::ReceiverKind::helstrom, discrim::ReceiverKind::homodyne,
                      discrim::ReceiverKind::kennedy,
                      discrim::ReceiverKind::optimized_displacement}) {
        CHECK(discrim::receiver_error(kind, 0.0).error_prob ==
              doctest::Approx(0.5).epsilon(1e-9));
    }
    CHECK(discrim::usd(0.0).success_prob == doctest::Approx(0.0));
}

TEST_CASE("receiver names round-trip through the selector") {
    for (auto kind : {discrim::ReceiverKind::helstrom, discrim::ReceiverKind::homodyne,
                      discrim::ReceiverKind::kennedy,
                      discrim::ReceiverKind::optimized_displacement}) {
        CHECK(discrim::receiver_from_name(discrim::receiver_name(kind)) == kind);
    }
    CHECK_THROWS_AS(discrim::receiver_from_name("psychic"), ConfigError);
}

TEST_CASE("optimized displacement: root residual, bounds, and kennedy limit") {
    for (double a : {0.05, 0.2, 0.5, 0.9, 1.5, 2.5}) {
        const auto r = discrim::optimized_displacement(a);
        const double beta = r.params.at("beta");
        CHECK(beta >= 1.0 / std::sqrt(2.0) - 1e-12);
        // Stationarity: α = β·tanh(2αβ).
        CHECK(a == doctest::Approx(beta * std::tanh(2.0 * a * beta)).epsilon(1e-9));
        // Evaluating the same error functional at β = α reproduces Kennedy, so
        // the optimized receiver can never do worse.
        CHECK(r.error_prob <= discrim::kennedy_error(a).error_prob + 1e-12);
        CHECK(r.error_prob >= discrim::helstrom_error(a).error_prob - 1e-12);
        const double at_alpha = 0.5 - std::exp(-2.0 * a * a) * std::sinh(2.0 * a * a);
        CHECK(at_alpha == doctest::Approx(discrim::kennedy_error(a).error_prob).epsilon(1e-12));
    }
    // Small-amplitude limit of the optimal displacement.
    CHECK(discrim::optimized_displacement(1e-8).params.at("beta") ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("receiver hierarchy holds across the amplitude range") {
    for (int i = 1; i <= 40; ++i) {
        const double a = 0.05 * i;
        const double hel = discrim::helstrom_error(a).error_prob;
        const double od = discrim::optimized_displacement(a).error_prob;
        const double ken = discrim::kennedy_error(a).error_prob;
        const double hom = discrim::homodyne_error(a).error_prob;
        CHECK(hel <= od + 1e-12);
        CHECK(od <= ken + 1e-12);
        CHECK(od <= hom + 1e-12);
    }
}

TEST_CASE("homodyne closed form matches direct gaussian sampling") {
    // x | ±α is normal with mean ±α and vacuum variance 1/4 (σ = 1/2); the
    // sign-threshold error rate must land within 3σ of the analytic value.
    const double a = 0.4;
    std::mt19937_64 rng(20260816ULL);
    std::normal_distribution<double> noise(0.0, 0.5);
    const int shots = 1'000'000;
    int errors = 0;
    for (int i = 0; i < shots; ++i) {
        const double sign = (i % 2 == 0) ? 1.0 : -1.0;
        const double x = sign * a + noise(rng);
        if (x * sign < 0.0) ++errors;
    }
    const double p = discrim::homodyne_error(a).error_prob;
    const double sigma = std::sqrt(p * (1.0 - p) / shots);
    CHECK(std::abs(static_cast<double>(errors) / shots - p) < 3.0 * sigma);
}

TEST_CASE("gaussian pair helstrom matches the coherent closed form") {
    const double a = 0.7;
    const double via_gauss =
        discrim::gaussian_pair_helstrom(gauss::coherent(a), gauss::coherent(-a));
    CHECK(via_gauss == doctest::Approx(discrim::helstrom_error(a).error_prob).epsilon(1e-12));

    gauss::GaussianState mixed = gauss::coherent(a);
    mixed.cov = Eigen::Matrix2d::Identity() / 2.0; // thermal: det > 1/16
    CHECK_THROWS_AS(discrim::gaussian_pair_helstrom(mixed, gauss::coherent(-a)),
                    MixedStateUnsupported);
}

TEST_CASE("kennedy povm is complete, positive, and reproduces the error rate") {
    const double a = 0.6;
    const fock::TruncationConfig cfg{40, 1e-10};
    const auto [no_click, click] = discrim::kennedy_povm(a, cfg);

    const Eigen::MatrixXcd sum = no_click.matrix + click.matrix;
    CHECK((sum - Eigen::MatrixXcd::Identity(cfg.dim, cfg.dim)).cwiseAbs().maxCoeff() < 1e-10);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(no_click.matrix);
    CHECK(es.eigenvalues().minCoeff() > -1e-10);
    CHECK(es.eigenvalues().maxCoeff() < 1.0 + 1e-10);

    // Displacing |−β⟩ lands exactly on vacuum: certain no-click.
    const auto minus = fock::coherent_state(-a, cfg);
    CHECK(fock::expectation(no_click, minus).real() == doctest::Approx(1.0).epsilon(1e-10));

    // Average error of guess-on-click vs guess-on-silence over {|α⟩, |−α⟩}.
    const auto plus = fock::coherent_state(a, cfg);
    const double p_err = 0.5 * fock::expectation(no_click, plus).real() +
                         0.5 * (1.0 - fock::expectation(no_click, minus).real());
    CHECK(p_err == doctest::Approx(discrim::kennedy_error(a).error_prob).epsilon(1e-9));
}

TEST_CASE("amplitude domain is capped") {
    CHECK_THROWS_AS(discrim::helstrom_error(10.5), ConfigError);
    CHECK_THROWS_AS(discrim::optimized_displacement(-0.1), ConfigError);
    CHECK_THROWS_AS(discrim::usd(11.0), ConfigError);
}

} // TEST_SUITE
