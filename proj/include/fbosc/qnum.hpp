#ifndef FBOSC_QNUM_HPP
#define FBOSC_QNUM_HPP

#include <stdexcept>
#include <string>

namespace fbosc {

// Thrown when both coupling constants vanish: the potential is identically
// zero and no normalizable bound states exist.
class NoInteractionError : public std::invalid_argument {
public:
    NoInteractionError()
        : std::invalid_argument("no interaction: lambda = nu = 0 leaves no bound states") {}
};

// Angular sector of the relative motion, indexed by the nonzero integer
// quantum number kappa:
//
//   kappa = +(j+1/2)  <=>  l = j + 1/2
//   kappa = -(j+1/2)  <=>  l = j - 1/2
//
// so l = |kappa| + (sgn(kappa) - 1)/2, j = |kappa| - 1/2, parity = (-1)^l.
// Half-integer j is carried as 2j to keep quantum-number algebra exact.
class Channel {
public:
    explicit Channel(int kappa);

    int kappa() const noexcept { return kappa_; }
    int l() const noexcept { return kappa_ > 0 ? kappa_ : -kappa_ - 1; }
    int two_j() const noexcept { return 2 * (kappa_ > 0 ? kappa_ : -kappa_) - 1; }
    int parity() const noexcept { return l() % 2 == 0 ? +1 : -1; }

    friend bool operator==(Channel a, Channel b) noexcept { return a.kappa_ == b.kappa_; }
    friend bool operator!=(Channel a, Channel b) noexcept { return !(a == b); }

private:
    int kappa_;
};

// Inverse map (l, j) -> kappa. Requires |2l - 2j| = 1 with l >= 0 and 2j >= 1.
Channel channel_from_lj(int l, int two_j);

enum class CouplingVerdict {
    ordering_safe,   // |lambda| >= |nu| with lambda != 0, or lambda = 0
    ordering_unsafe  // level inversions n(l+1)_{j+1} < n l_j can occur
};

// Checks the coupling constants against the level-ordering restriction.
// Throws NoInteractionError when both vanish.
CouplingVerdict validate_couplings(double lambda, double nu);

// Masses and coupling constants of the fermion-boson pair. Natural units;
// lambda (Lorentz-vector) and nu (Lorentz-tensor) carry energy^2.
struct ModelConfig {
    double m1 = 1.0;
    double m2 = 1.0;
    double lambda = 0.0;
    double nu = 0.0;
    bool allow_unsafe = false;  // permit ordering-unsafe couplings explicitly
};

// Throws std::invalid_argument for non-positive masses, NoInteractionError
// for lambda = nu = 0, and std::invalid_argument for ordering-unsafe
// couplings unless cfg.allow_unsafe is set.
void validate_model(const ModelConfig& cfg);

// "s", "p", ..., up to l = 20; larger l falls back to "[l=N]".
std::string spectroscopic_letter(int l);

// Standard "n X_j" notation, e.g. (n=0, kappa=-1) -> "0s_1/2".
std::string spectroscopic_label(int n, Channel c);

}  // namespace fbosc

#endif
