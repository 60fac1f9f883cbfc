#include <cmath>
#include <vector>

#include "doctest.h"

#include "bcsim/optimize.hpp"

using namespace bcsim;
using opt::OptimizerSpec;

TEST_SUITE("optimize") {

TEST_CASE("one-dimensional quadratic lands on the vertex") {
    OptimizerSpec spec;
    spec.bounds = {{-2.0, 3.0}};
    const auto [x, f] = opt::maximize(
        [](const std::vector<double>& v) { return 1.0 - (v[0] - 0.7) * (v[0] - 0.7); }, spec);
    CHECK(x[0] == doctest::Approx(0.7).epsilon(1e-6));
    CHECK(f == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("boundary maxima are returned exactly at the bracket endpoint") {
    OptimizerSpec spec;
    spec.bounds = {{0.0, 1.0}};
    const auto [x, f] = opt::maximize(
        [](const std::vector<double>& v) { return 2.0 * v[0]; }, spec);
    CHECK(x[0] == 1.0); // exact, not merely close
    CHECK(f == doctest::Approx(2.0));

    const auto [y, g] = opt::maximize(
        [](const std::vector<double>& v) { return -v[0]; }, spec);
    CHECK(y[0] == 0.0);
    CHECK(g == doctest::Approx(0.0));
}

TEST_CASE("two-dimensional separable bowl") {
    OptimizerSpec spec;
    spec.bounds = {{-1.0, 2.0}, {-1.0, 2.0}};
    const auto [x, f] = opt::maximize(
        [](const std::vector<double>& v) {
            return 3.0 - (v[0] - 0.3) * (v[0] - 0.3) - 2.0 * (v[1] - 1.2) * (v[1] - 1.2);
        },
        spec);
    CHECK(x[0] == doctest::Approx(0.3).epsilon(1e-5));
    CHECK(x[1] == doctest::Approx(1.2).epsilon(1e-5));
    CHECK(f == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("grid audit rescues a deceptive multimodal objective") {
    // Narrow global peak at x = 1.62 next to a broad local hill at x = -1;
    // pure descent from the center finds the hill, the 50-point audit must
    // recover the peak.
    OptimizerSpec spec;
    spec.bounds = {{-2.0, 2.0}};
    const auto [x, f] = opt::maximize(
        [](const std::vector<double>& v) {
            const double broad = 0.6 * std::exp(-0.5 * (v[0] + 1.0) * (v[0] + 1.0));
            const double sharp = std::exp(-40.0 * (v[0] - 1.62) * (v[0] - 1.62));
            return broad + sharp;
        },
        spec);
    // The broad hill tilts the composite argmax slightly below 1.62.
    CHECK(x[0] == doctest::Approx(1.6194).epsilon(1e-3));
    CHECK(f > 0.99);
}

TEST_CASE("four-parameter multi-start finds an off-center optimum") {
    OptimizerSpec spec;
    spec.bounds = {{0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}};
    spec.max_evals = 2000000;
    const std::vector<double> target{0.9, 0.1, 0.7, 0.4};
    const auto [x, f] = opt::maximize(
        [&](const std::vector<double>& v) {
            double s = 0.0;
            for (int i = 0; i < 4; ++i) s += (v[i] - target[i]) * (v[i] - target[i]);
            return -s;
        },
        spec);
    for (int i = 0; i < 4; ++i) CHECK(x[i] == doctest::Approx(target[i]).epsilon(1e-4));
    CHECK(f == doctest::Approx(0.0).epsilon(1e-8));
}

TEST_CASE("flat objectives resolve ties toward the smallest parameter norm") {
    OptimizerSpec spec;
    spec.bounds = {{-1.0, 1.0}, {-1.0, 1.0}, {-1.0, 1.0}};
    spec.max_evals = 2000000;
    const auto [x, f] = opt::maximize(
        [](const std::vector<double>&) { return 1.0; }, spec);
    CHECK(f == doctest::Approx(1.0));
    CHECK(std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) < 1e-6);
}

TEST_CASE("exhausted budgets raise instead of returning silently") {
    OptimizerSpec spec;
    spec.bounds = {{0.0, 1.0}, {0.0, 1.0}};
    spec.max_evals = 10;
    CHECK_THROWS_AS(opt::maximize(
                        [](const std::vector<double>& v) { return v[0] + v[1]; }, spec),
                    ConvergenceError);
}

TEST_CASE("specs are validated") {
    OptimizerSpec empty;
    CHECK_THROWS_AS(opt::maximize([](const std::vector<double>&) { return 0.0; }, empty),
                    ConfigError);

    OptimizerSpec inverted;
    inverted.bounds = {{1.0, 0.0}};
    CHECK_THROWS_AS(inverted.validate(), ConfigError);

    OptimizerSpec bad_start;
    bad_start.bounds = {{0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}};
    bad_start.extra_starts = {{0.5, 0.5}}; // wrong dimension
    CHECK_THROWS_AS(opt::maximize(
                        [](const std::vector<double>&) { return 0.0; }, bad_start),
                    ConfigError);
}

} // TEST_SUITE
