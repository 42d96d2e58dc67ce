#include "fbosc/qnum.hpp"

#include <cmath>
#include <cstdlib>

namespace fbosc {

namespace {

// Spectroscopic letters for l = 0..20 (j is skipped by convention, and the
// letters already used for low l never repeat).
constexpr char kLetters[] = "spdfghiklmnoqrtuvwxyz";

}  // namespace

Channel::Channel(int kappa) : kappa_(kappa) {
    if (kappa == 0)
        throw std::invalid_argument("Channel: kappa must be a nonzero integer");
}

Channel channel_from_lj(int l, int two_j) {
    if (l < 0)
        throw std::invalid_argument("channel_from_lj: l must be nonnegative");
    if (two_j < 1 || two_j % 2 == 0)
        throw std::invalid_argument("channel_from_lj: j must be a positive half-integer");
    const int two_l = 2 * l;
    if (two_l == two_j + 1)
        return Channel(+(two_j + 1) / 2);  // l = j + 1/2
    if (two_l == two_j - 1)
        return Channel(-(two_j + 1) / 2);  // l = j - 1/2
    throw std::invalid_argument("channel_from_lj: requires |l - j| = 1/2");
}

CouplingVerdict validate_couplings(double lambda, double nu) {
    if (lambda == 0.0 && nu == 0.0)
        throw NoInteractionError();
    if (lambda == 0.0)
        return CouplingVerdict::ordering_safe;
    return std::abs(lambda) >= std::abs(nu) ? CouplingVerdict::ordering_safe
                                            : CouplingVerdict::ordering_unsafe;
}

void validate_model(const ModelConfig& cfg) {
    if (!(cfg.m1 > 0.0) || !(cfg.m2 > 0.0))
        throw std::invalid_argument("ModelConfig: masses must be positive");
    if (!std::isfinite(cfg.lambda) || !std::isfinite(cfg.nu))
        throw std::invalid_argument("ModelConfig: couplings must be finite");
    const CouplingVerdict verdict = validate_couplings(cfg.lambda, cfg.nu);
    if (verdict == CouplingVerdict::ordering_unsafe && !cfg.allow_unsafe)
        throw std::invalid_argument(
            "ModelConfig: couplings violate the level-ordering restriction "
            "(need |lambda| >= |nu| or lambda = 0); set allow_unsafe to proceed");
}

std::string spectroscopic_letter(int l) {
    if (l < 0)
        throw std::invalid_argument("spectroscopic_letter: l must be nonnegative");
    if (l <= 20)
        return std::string(1, kLetters[l]);
    return "[l=" + std::to_string(l) + "]";
}

std::string spectroscopic_label(int n, Channel c) {
    return std::to_string(n) + spectroscopic_letter(c.l()) + "_" +
           std::to_string(c.two_j()) + "/2";
}

}  // namespace fbosc
