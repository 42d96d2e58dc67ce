#include "fbosc/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fbosc {

EffectiveTension effective_tension(const ModelConfig& cfg, Channel c) {
    const double w = cfg.nu - cfg.lambda * static_cast<double>(c.kappa());
    if (w == 0.0)
        throw DegenerateChannelError(c.kappa());
    return {std::abs(w), w > 0.0 ? +1 : -1};
}

double oscillator_eigenvalue(const ModelConfig& cfg, int n, Channel c) {
    if (n < 0)
        throw std::invalid_argument("oscillator_eigenvalue: n must be nonnegative");
    const auto [a_sq, s] = effective_tension(cfg, c);
    // The bracket is an integer; keeping it exact makes analytic degeneracies
    // bit-identical across channels.
    const int bracket = 4 * n + 2 * c.l() + 3 + s * (2 * c.kappa() - 1);
    return a_sq * static_cast<double>(bracket);
}

double total_energy(double cal_e, double m1, double m2) {
    if (!(m1 > 0.0) || !(m2 > 0.0))
        throw std::invalid_argument("total_energy: masses must be positive");
    const double lo = std::min(m1 * m1, m2 * m2);
    if (cal_e < -lo)
        throw std::domain_error("total_energy: calE below -min(m1^2, m2^2)");
    return std::sqrt(m1 * m1 + cal_e) + std::sqrt(m2 * m2 + cal_e);
}

double mass_shell_cal_e(double energy, double m1, double m2) {
    if (!(energy > 0.0))
        throw std::domain_error("mass_shell_cal_e: E must be positive");
    const double e_sq = energy * energy;
    const double diff = (m1 - m2) * (m1 + m2);  // m1^2 - m2^2 without squaring first
    return 0.25 * e_sq - 0.5 * (m1 * m1 + m2 * m2) + diff * diff / (4.0 * e_sq);
}

Level make_level(const ModelConfig& cfg, int n, Channel c) {
    const auto [a_sq, s] = effective_tension(cfg, c);
    const double cal_e = oscillator_eigenvalue(cfg, n, c);
    return Level{n, c, a_sq, s, cal_e, total_energy(cal_e, cfg.m1, cfg.m2)};
}

LevelEnumeration enumerate_levels(const ModelConfig& cfg, int n_max, int two_j_max) {
    if (n_max < 0)
        throw std::invalid_argument("enumerate_levels: n_max must be nonnegative");
    if (two_j_max < 1)
        throw std::invalid_argument("enumerate_levels: j_max must be at least 1/2");
    validate_model(cfg);

    LevelEnumeration out;
    for (int two_j = 1; two_j <= two_j_max; two_j += 2) {
        const int k = (two_j + 1) / 2;
        for (const int kappa : {-k, +k}) {
            const Channel c(kappa);
            try {
                for (int n = 0; n <= n_max; ++n)
                    out.levels.push_back(make_level(cfg, n, c));
            } catch (const DegenerateChannelError&) {
                out.skipped_channels.push_back(c);
            }
        }
    }
    std::sort(out.levels.begin(), out.levels.end(), [](const Level& a, const Level& b) {
        if (a.energy != b.energy) return a.energy < b.energy;
        if (a.channel.two_j() != b.channel.two_j()) return a.channel.two_j() < b.channel.two_j();
        if (a.channel.l() != b.channel.l()) return a.channel.l() < b.channel.l();
        return a.n < b.n;
    });
    return out;
}

const char* to_string(DegeneracyKind kind) {
    switch (kind) {
        case DegeneracyKind::single: return "single";
        case DegeneracyKind::ground_state_family: return "ground_state_family";
        case DegeneracyKind::parity_doublet_shifted_n: return "parity_doublet_shifted_n";
        case DegeneracyKind::parity_doublet_same_n: return "parity_doublet_same_n";
        case DegeneracyKind::accidental: return "accidental";
    }
    return "unknown";
}

namespace {

DegeneracyKind classify_cluster(const std::vector<Level>& levels,
                                const std::vector<std::size_t>& members) {
    if (members.size() < 2)
        return DegeneracyKind::single;

    const bool all_ground = std::all_of(members.begin(), members.end(), [&](std::size_t i) {
        return levels[i].n == 0 && levels[i].channel.kappa() < 0;
    });
    if (all_ground)
        return DegeneracyKind::ground_state_family;

    bool shifted = false, same = false;
    for (std::size_t i : members) {
        if (levels[i].channel.kappa() <= 0)
            continue;
        for (std::size_t k : members) {
            if (levels[k].channel.kappa() != -levels[i].channel.kappa())
                continue;
            if (levels[k].n == levels[i].n + 1) shifted = true;
            if (levels[k].n == levels[i].n) same = true;
        }
    }
    if (shifted && !same) return DegeneracyKind::parity_doublet_shifted_n;
    if (same && !shifted) return DegeneracyKind::parity_doublet_same_n;
    return DegeneracyKind::accidental;
}

}  // namespace

std::vector<DegeneracyCluster> degeneracy_groups(const std::vector<Level>& levels,
                                                 double rel_tol) {
    if (!(rel_tol > 0.0))
        throw std::invalid_argument("degeneracy_groups: rel_tol must be positive");

    std::vector<std::size_t> order(levels.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (levels[a].energy != levels[b].energy) return levels[a].energy < levels[b].energy;
        if (levels[a].channel.two_j() != levels[b].channel.two_j())
            return levels[a].channel.two_j() < levels[b].channel.two_j();
        if (levels[a].channel.l() != levels[b].channel.l())
            return levels[a].channel.l() < levels[b].channel.l();
        return levels[a].n < levels[b].n;
    });

    std::vector<DegeneracyCluster> clusters;
    for (std::size_t i = 0; i < order.size(); ++i) {
        const double e = levels[order[i]].energy;
        if (!clusters.empty()) {
            const double prev = levels[clusters.back().members.back()].energy;
            if (e - prev < rel_tol * std::max(std::abs(e), std::abs(prev))) {
                clusters.back().members.push_back(order[i]);
                continue;
            }
        }
        clusters.push_back({{order[i]}, DegeneracyKind::single, e});
    }
    for (auto& cluster : clusters)
        cluster.kind = classify_cluster(levels, cluster.members);
    return clusters;
}

std::vector<std::pair<int, int>> unphysical_ordering_scan(const ModelConfig& cfg, int n,
                                                          int l_max) {
    std::vector<std::pair<int, int>> inversions;
    for (int l = 1; l <= l_max; ++l) {
        try {
            const double e_low = make_level(cfg, n, Channel(l)).energy;
            const double e_high = make_level(cfg, n, Channel(l + 1)).energy;
            if (e_high < e_low)
                inversions.emplace_back(l, l + 1);
        } catch (const DegenerateChannelError&) {
            // Vanishing-frequency channel: no level to compare.
        }
    }
    return inversions;
}

std::vector<DiracLimitRow> dirac_oscillator_limit(double m1, double omega, int n, Channel c,
                                                  std::span<const double> m2_values) {
    if (!(m1 > 0.0) || !(omega > 0.0))
        throw std::invalid_argument("dirac_oscillator_limit: m1 and omega must be positive");

    std::vector<DiracLimitRow> rows;
    rows.reserve(m2_values.size());
    for (const double m2 : m2_values) {
        if (!(m2 > 0.0))
            throw std::invalid_argument("dirac_oscillator_limit: m2 values must be positive");
        const ModelConfig cfg{m1, m2, 0.0, m1 * omega};
        const double cal_e = oscillator_eigenvalue(cfg, n, c);
        const double eps = total_energy(cal_e, m1, m2) - m2;
        const double limit = std::sqrt(m1 * m1 + cal_e);
        rows.push_back({m2, eps, limit, std::abs(eps - limit)});
    }
    return rows;
}

}  // namespace fbosc
