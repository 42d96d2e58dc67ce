#ifndef FBOSC_SPECTRUM_HPP
#define FBOSC_SPECTRUM_HPP

#include "fbosc/qnum.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fbosc {

// nu - lambda*kappa = 0: the effective oscillator frequency of the channel
// vanishes and no normalizable bound state exists there.
class DegenerateChannelError : public std::domain_error {
public:
    explicit DegenerateChannelError(int kappa)
        : std::domain_error("degenerate channel kappa=" + std::to_string(kappa) +
                            ": nu - lambda*kappa = 0"),
          kappa_(kappa) {}
    int kappa() const noexcept { return kappa_; }

private:
    int kappa_;
};

// Channel-dependent oscillator strength a^2 = |nu - lambda*kappa| and the
// sign s = sgn(nu - lambda*kappa).
struct EffectiveTension {
    double a_sq;
    int sign;
};

EffectiveTension effective_tension(const ModelConfig& cfg, Channel c);

// Oscillator eigenvalue of the reduced second-order radial equation:
//   calE = a^2 * (4n + 2l + 3 + s(2*kappa - 1))
double oscillator_eigenvalue(const ModelConfig& cfg, int n, Channel c);

// Positive-branch total energy,
//   E^2 = m1^2 + m2^2 + 2*calE + 2*sqrt((m1^2+calE)(m2^2+calE)),
// evaluated as E = sqrt(m1^2+calE) + sqrt(m2^2+calE) (same expression,
// no cancellation). Requires calE >= -min(m1^2, m2^2).
double total_energy(double cal_e, double m1, double m2);

// Mass-shell inversion of total_energy:
//   calE = E^2/4 - (m1^2+m2^2)/2 + (m1^2-m2^2)^2/(4E^2),  E > 0.
double mass_shell_cal_e(double energy, double m1, double m2);

// One bound state (n, kappa) with its derived spectral data.
struct Level {
    int n;
    Channel channel;
    double a_sq;    // effective tension, > 0
    int sign;       // s = sgn(nu - lambda*kappa)
    double cal_e;   // oscillator eigenvalue, energy^2
    double energy;  // total energy E >= m1 + m2
};

// Throws DegenerateChannelError when the channel frequency vanishes.
Level make_level(const ModelConfig& cfg, int n, Channel c);

struct LevelEnumeration {
    std::vector<Level> levels;              // sorted by (E, j, l, n)
    std::vector<Channel> skipped_channels;  // vanishing-frequency channels
};

// All levels with n <= n_max and 2j <= two_j_max over both kappa signs.
LevelEnumeration enumerate_levels(const ModelConfig& cfg, int n_max, int two_j_max);

enum class DegeneracyKind {
    single,
    ground_state_family,       // all members n = 0, kappa < 0 (calE = 0)
    parity_doublet_shifted_n,  // (n, j, l=j+1/2) with (n+1, j, l=j-1/2)
    parity_doublet_same_n,     // (n, j, l=j+1/2) with (n, j, l=j-1/2)
    accidental
};

const char* to_string(DegeneracyKind kind);

struct DegeneracyCluster {
    std::vector<std::size_t> members;  // indices into the input level list
    DegeneracyKind kind;
    double energy;  // energy of the first member
};

// Analytic degeneracies are exact in calE; the tolerance only absorbs float
// noise in E.
inline constexpr double kDegeneracyRelTol = 1e-9;

// Partitions levels into maximal clusters whose adjacent sorted energies
// differ by less than rel_tol * max of the pair.
std::vector<DegeneracyCluster> degeneracy_groups(const std::vector<Level>& levels,
                                                 double rel_tol = kDegeneracyRelTol);

// Scans l = 1..l_max for the unphysical ordering E(n, kappa=l+1) < E(n, kappa=l)
// flagged in the ordering restriction; empty for ordering-safe couplings.
// Pairs whose channels have vanishing frequency are skipped.
std::vector<std::pair<int, int>> unphysical_ordering_scan(const ModelConfig& cfg, int n,
                                                          int l_max);

// One row of the heavy-boson (one-particle) limit table: eps = E - m2
// approaches sqrt(m1^2 + calE) like O(1/m2).
struct DiracLimitRow {
    double m2;
    double eps;          // E - m2
    double limit_value;  // sqrt(m1^2 + calE)
    double deviation;    // |eps - limit_value|
};

// Evaluates the pure-tensor model (lambda = 0, nu = m1*omega) for each boson
// mass in m2_values.
std::vector<DiracLimitRow> dirac_oscillator_limit(double m1, double omega, int n, Channel c,
                                                  std::span<const double> m2_values);

}  // namespace fbosc

#endif
