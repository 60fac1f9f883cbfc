#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"

#include "bcsim/fock.hpp"

using namespace bcsim;
using fock::TruncationConfig;

namespace {
const TruncationConfig kCfg{40, 1e-10};
}

TEST_SUITE("fock") {

TEST_CASE("truncation config defaults and amplitude rule") {
    TruncationConfig def;
    CHECK(def.dim == 20);
    CHECK(def.tail_tol == doctest::Approx(1e-10));
    CHECK(TruncationConfig::for_amplitude(0.0).dim == 20);
    const auto big = TruncationConfig::for_amplitude(std::sqrt(3.0));
    CHECK(big.dim >= 44);
    const TruncationConfig too_small{1, 1e-10};
    CHECK_THROWS_AS(too_small.validate(), ConfigError);
}

TEST_CASE("coherent state is normalized with poissonian photon statistics") {
    const double alpha = 1.2;
    const auto psi = fock::coherent_state(alpha, kCfg);
    CHECK(psi.amplitudes.norm() == doctest::Approx(1.0).epsilon(1e-12));
    // ⟨n⟩ = α² via the number operator a†a.
    const auto a = fock::annihilation_op(kCfg);
    fock::LinearOp n_op{a.matrix.adjoint() * a.matrix, kCfg};
    CHECK(fock::expectation(n_op, psi).real() == doctest::Approx(alpha * alpha).epsilon(1e-9));
    // c₁/c₀ = α.
    CHECK((psi.amplitudes(1) / psi.amplitudes(0)).real() == doctest::Approx(alpha));
}

TEST_CASE("coherent state tail above cutoff is rejected") {
    CHECK_THROWS_AS(fock::coherent_state(3.0, TruncationConfig{8, 1e-10}), TruncationError);
}

TEST_CASE("pairwise overlap of opposite coherent states") {
    const double alpha = 0.9;
    const auto plus = fock::coherent_state(alpha, kCfg);
    const auto minus = fock::coherent_state(-alpha, kCfg);
    // |⟨−α|α⟩|² = e^{−4α²}.
    CHECK(fock::fidelity_pure(minus, plus) ==
          doctest::Approx(std::exp(-4.0 * alpha * alpha)).epsilon(1e-10));
}

TEST_CASE("displacement acts as coherent-state factory and is unitary") {
    const std::complex<double> beta{0.7, -0.4};
    const auto d = fock::displacement_op(beta, kCfg);
    const auto vac = fock::coherent_state(0.0, kCfg);
    const auto displaced = fock::apply(d, vac);
    const auto direct = fock::coherent_state(beta, kCfg);
    CHECK(fock::fidelity_pure(displaced, direct) == doctest::Approx(1.0).epsilon(1e-10));
    // D(β)·D(−β) = 1 on the retained lower half.
    const auto d_inv = fock::displacement_op(-beta, kCfg);
    const Eigen::MatrixXcd prod = d.matrix * d_inv.matrix;
    const int half = kCfg.dim / 2;
    CHECK((prod.topLeftCorner(half, half) - Eigen::MatrixXcd::Identity(half, half))
              .cwiseAbs()
              .maxCoeff() < 1e-8);
}

TEST_CASE("quadratures: vacuum variances and commutator") {
    const auto [x, p] = fock::quadrature_ops(kCfg);
    const auto vac = fock::coherent_state(0.0, kCfg);
    fock::LinearOp x2{x.matrix * x.matrix, kCfg};
    fock::LinearOp p2{p.matrix * p.matrix, kCfg};
    CHECK(fock::expectation(x2, vac).real() == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(fock::expectation(p2, vac).real() == doctest::Approx(0.25).epsilon(1e-12));
    // [x, p] = i/2 away from the truncation corner.
    const Eigen::MatrixXcd comm = x.matrix * p.matrix - p.matrix * x.matrix;
    const int half = kCfg.dim / 2;
    const Eigen::MatrixXcd expected =
        std::complex<double>(0.0, 0.5) * Eigen::MatrixXcd::Identity(half, half);
    CHECK((comm.topLeftCorner(half, half) - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("squeeze conventions on the vacuum and on a displaced state") {
    const double r = 0.35;
    const auto vac = fock::coherent_state(0.0, kCfg);
    const auto [x, p] = fock::quadrature_ops(kCfg);
    fock::LinearOp x2{x.matrix * x.matrix, kCfg};
    fock::LinearOp p2{p.matrix * p.matrix, kCfg};

    // Real argument: x is antisqueezed.
    const auto sq = fock::apply(fock::squeeze_op(r, kCfg), vac);
    CHECK(fock::expectation(x2, sq).real() ==
          doctest::Approx(std::exp(2.0 * r) / 4.0).epsilon(1e-9));
    CHECK(fock::expectation(p2, sq).real() ==
          doctest::Approx(std::exp(-2.0 * r) / 4.0).epsilon(1e-9));

    // Phase π/2: x̂ ↦ cosh(r)x̂ + sinh(r)p̂, so ⟨x̂⟩ gains a cosh(r) factor.
    const double alpha = 0.8;
    const std::complex<double> z = r * std::exp(std::complex<double>(0.0, std::numbers::pi / 2));
    const auto amp = fock::apply(fock::squeeze_op(z, kCfg), fock::coherent_state(alpha, kCfg));
    CHECK(fock::expectation(x, amp).real() ==
          doctest::Approx(std::cosh(r) * alpha).epsilon(1e-9));
}

TEST_CASE("operator-order composition: displace-then-squeeze vs squeeze-then-displace") {
    const double r = 0.3, beta = 0.6;
    const auto vac = fock::coherent_state(0.0, kCfg);
    const auto [x, p] = fock::quadrature_ops(kCfg);
    // D(β)S(r)|0⟩ has mean β; S(r)D(β)|0⟩ has mean e^{r}β (antisqueezed x).
    const auto ds = fock::apply(fock::displacement_op(beta, kCfg),
                                fock::apply(fock::squeeze_op(r, kCfg), vac));
    const auto sd = fock::apply(fock::squeeze_op(r, kCfg),
                                fock::apply(fock::displacement_op(beta, kCfg), vac));
    CHECK(fock::expectation(x, ds).real() == doctest::Approx(beta).epsilon(1e-9));
    CHECK(fock::expectation(x, sd).real() == doctest::Approx(std::exp(r) * beta).epsilon(1e-9));
}

TEST_CASE("parity operator alternates signs") {
    const auto par = fock::parity_op(kCfg);
    CHECK(par.matrix(0, 0).real() == doctest::Approx(1.0));
    CHECK(par.matrix(1, 1).real() == doctest::Approx(-1.0));
    CHECK(par.matrix(4, 4).real() == doctest::Approx(1.0));
}

TEST_CASE("density construction validates physicality") {
    const auto psi = fock::coherent_state(0.5, kCfg);
    const auto rho = fock::projector(psi);
    CHECK(rho.matrix.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fock::fidelity_pure(rho, psi) == doctest::Approx(1.0).epsilon(1e-12));

    Eigen::MatrixXcd bad = rho.matrix;
    bad(0, 1) += std::complex<double>(0.0, 1e-3); // breaks Hermiticity
    CHECK_THROWS_AS(fock::make_density(bad, kCfg), NonPhysical);
}

TEST_CASE("negative eigenvalue and trace deficit are rejected") {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(kCfg.dim, kCfg.dim);
    m(0, 0) = 1.5;
    m(1, 1) = -0.5;
    CHECK_THROWS_AS(fock::make_density(m, kCfg), NonPhysical);
    Eigen::MatrixXcd half = Eigen::MatrixXcd::Zero(kCfg.dim, kCfg.dim);
    half(0, 0) = 0.5;
    CHECK_THROWS_AS(fock::make_density(half, kCfg), NonPhysical);
}

TEST_CASE("fidelities are stable under dimension doubling") {
    const double alpha = 1.1;
    const TruncationConfig small{40, 1e-10};
    const TruncationConfig large{80, 1e-10};
    const double f_small = fock::fidelity_pure(fock::coherent_state(-alpha, small),
                                               fock::coherent_state(alpha, small));
    const double f_large = fock::fidelity_pure(fock::coherent_state(-alpha, large),
                                               fock::coherent_state(alpha, large));
    CHECK(f_small == doctest::Approx(f_large).epsilon(1e-10));
}

} // TEST_SUITE
