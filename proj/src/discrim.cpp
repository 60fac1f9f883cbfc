#include "bcsim/discrim.hpp"

#include <cmath>

namespace bcsim::discrim {

namespace {

constexpr double kAlphaDomainMax = 10.0; // beyond this every error underflows

void check_alpha(double alpha, const char* who) {
    if (alpha < 0.0 || alpha > kAlphaDomainMax) {
        throw ConfigError(std::string(who) + ": amplitude outside supported domain [0, 10]");
    }
}

} // namespace

ReceiverKind receiver_from_name(const std::string& name) {
    if (name == "helstrom") return ReceiverKind::helstrom;
    if (name == "homodyne") return ReceiverKind::homodyne;
    if (name == "kennedy") return ReceiverKind::kennedy;
    if (name == "od" || name == "optimized_displacement") {
        return ReceiverKind::optimized_displacement;
    }
    throw ConfigError("unknown receiver '" + name + "'");
}

std::string receiver_name(ReceiverKind kind) {
    switch (kind) {
        case ReceiverKind::helstrom: return "helstrom";
        case ReceiverKind::homodyne: return "homodyne";
        case ReceiverKind::kennedy: return "kennedy";
        case ReceiverKind::optimized_displacement: return "od";
    }
    throw ConfigError("receiver_name: invalid kind");
}

ReceiverResult receiver_error(ReceiverKind kind, double alpha) {
    switch (kind) {
        case ReceiverKind::helstrom: return helstrom_error(alpha);
        case ReceiverKind::homodyne: return homodyne_error(alpha);
        case ReceiverKind::kennedy: return kennedy_error(alpha);
        case ReceiverKind::optimized_displacement: return optimized_displacement(alpha);
    }
    throw ConfigError("receiver_error: invalid kind");
}

ReceiverResult homodyne_error(double alpha) {
    check_alpha(alpha, "homodyne_error");
    return ReceiverResult{0.5 * (1.0 - std::erf(std::sqrt(2.0) * alpha)), {}};
}

ReceiverResult helstrom_error(double alpha) {
    check_alpha(alpha, "helstrom_error");
    const double ov_sq = std::exp(-4.0 * alpha * alpha);
    return ReceiverResult{0.5 * (1.0 - std::sqrt(1.0 - ov_sq)), {}};
}

ReceiverResult kennedy_error(double alpha) {
    check_alpha(alpha, "kennedy_error");
    return ReceiverResult{0.5 * std::exp(-4.0 * alpha * alpha), {}};
}

ReceiverResult optimized_displacement(double alpha) {
    check_alpha(alpha, "optimized_displacement");
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    double beta = inv_sqrt2;
    if (alpha >= 1e-6) {
        // g(β) = β·tanh(2αβ) − α is increasing on the bracket and changes
        // sign inside it, so plain bisection is unconditionally convergent.
        double lo = inv_sqrt2;
        double hi = alpha + 2.0;
        auto g = [alpha](double b) { return b * std::tanh(2.0 * alpha * b) - alpha; };
        if (g(lo) > 0.0) {
            beta = lo;
        } else {
            if (g(hi) < 0.0) {
                throw ConvergenceError("optimized_displacement: root bracket failed");
            }
            for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
                const double mid = 0.5 * (lo + hi);
                (g(mid) < 0.0 ? lo : hi) = mid;
            }
            beta = 0.5 * (lo + hi);
        }
    }
    const double err =
        0.5 - std::exp(-(alpha * alpha + beta * beta)) * std::sinh(2.0 * alpha * beta);
    ReceiverResult r{err, {}};
    r.params["beta"] = beta;
    return r;
}

UsdResult usd(double alpha) {
    check_alpha(alpha, "usd");
    const double succ = 1.0 - std::exp(-2.0 * alpha * alpha);
    return UsdResult{succ, 1.0 - succ};
}

double gaussian_pair_helstrom(const gauss::GaussianState& s_plus,
                              const gauss::GaussianState& s_minus) {
    if (s_plus.cov.determinant() > 1.0 / 16.0 + 1e-6 ||
        s_minus.cov.determinant() > 1.0 / 16.0 + 1e-6) {
        throw MixedStateUnsupported("gaussian_pair_helstrom: input state is mixed");
    }
    // For pure states Tr[ρ₊ρ₋] is exactly the squared overlap.
    double o = gauss::overlap(s_plus, s_minus);
    o = std::min(1.0, std::max(0.0, o));
    return 0.5 * (1.0 - std::sqrt(1.0 - o));
}

std::pair<fock::LinearOp, fock::LinearOp> kennedy_povm(double beta,
                                                       const fock::TruncationConfig& cfg) {
    const fock::LinearOp d = fock::displacement_op(beta, cfg);
    Eigen::MatrixXcd vac = Eigen::MatrixXcd::Zero(cfg.dim, cfg.dim);
    vac(0, 0) = 1.0;
    Eigen::MatrixXcd no_click = d.matrix.adjoint() * vac * d.matrix;
    Eigen::MatrixXcd click = Eigen::MatrixXcd::Identity(cfg.dim, cfg.dim) - no_click;
    return {fock::LinearOp{no_click, cfg}, fock::LinearOp{click, cfg}};
}

} // namespace bcsim::discrim
