// Closed-form spectrum: effective tension, oscillator eigenvalue, mass-shell
// relation, enumeration, degeneracy patterns, ordering scan, heavy-boson
// limit. The 3.6 / 4.4 eigenvalues asserted here are independently confirmed
// against the finite-difference solver in test_oracle.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fbosc/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace fbosc;

namespace {

const ModelConfig kFig1{1.0, 2.0, 1.0, 0.1};
const ModelConfig kFig2{1.0, 2.0, -1.0, 0.1};

ModelConfig unsafe_config(double lambda, double nu) {
    ModelConfig cfg{1.0, 2.0, lambda, nu};
    cfg.allow_unsafe = true;
    return cfg;
}

}  // namespace

TEST_CASE("effective tension and sign") {
    const auto [a1, s1] = effective_tension(kFig1, Channel(-1));
    CHECK(a1 == doctest::Approx(1.1).epsilon(1e-15));
    CHECK(s1 == +1);

    const auto [a2, s2] = effective_tension(kFig1, Channel(+1));
    CHECK(a2 == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(s2 == -1);

    // nu - lambda*kappa = 0: no oscillator frequency left in the channel.
    const ModelConfig degenerate = unsafe_config(0.1, 1.0);
    CHECK_THROWS_AS(effective_tension(degenerate, Channel(+10)), DegenerateChannelError);
    try {
        effective_tension(degenerate, Channel(+10));
    } catch (const DegenerateChannelError& e) {
        CHECK(e.kappa() == 10);
    }
}

TEST_CASE("oscillator eigenvalues of the fig1 model") {
    CHECK(oscillator_eigenvalue(kFig1, 0, Channel(-1)) == 0.0);  // exact: bracket is 0
    CHECK(oscillator_eigenvalue(kFig1, 0, Channel(+1)) == doctest::Approx(3.6).epsilon(1e-15));
    CHECK(oscillator_eigenvalue(kFig1, 1, Channel(-1)) == doctest::Approx(4.4).epsilon(1e-15));
    CHECK_THROWS_AS(oscillator_eigenvalue(kFig1, -1, Channel(-1)), std::invalid_argument);
}

TEST_CASE("total energy: threshold and frozen values") {
    CHECK(total_energy(0.0, 1.0, 2.0) == 3.0);
    for (const double m : {0.3, 1.0, 7.5})
        CHECK(total_energy(0.0, m, m) == doctest::Approx(2.0 * m).epsilon(1e-15));
    CHECK(total_energy(3.6, 1.0, 2.0) ==
          doctest::Approx(4.9015708093707655).epsilon(1e-14));
    CHECK_THROWS_AS(total_energy(-2.0, 1.0, 2.0), std::domain_error);
}

TEST_CASE("mass-shell relation at threshold") {
    CHECK(mass_shell_cal_e(3.0, 1.0, 2.0) == doctest::Approx(0.0).epsilon(1e-14));
    for (const double m : {0.2, 1.0, 40.0})
        CHECK(mass_shell_cal_e(2.0 * m, m, m) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK_THROWS_AS(mass_shell_cal_e(0.0, 1.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(mass_shell_cal_e(-3.0, 1.0, 2.0), std::domain_error);
}

TEST_CASE("mass-shell relation inverts total_energy") {
    const double e = total_energy(4.4, 1.0, 2.0);
    CHECK(mass_shell_cal_e(e, 1.0, 2.0) == doctest::Approx(4.4).epsilon(1e-12));

    // Property sweep; tolerance relative to max(calE, mean-mass^2 scale),
    // the regime where E's mantissa still carries the calE information.
    std::mt19937 rng(20260809);
    std::uniform_real_distribution<double> cal_dist(0.0, 1e3);
    std::uniform_real_distribution<double> log_mass(std::log(0.1), std::log(1e3));
    for (int trial = 0; trial < 2000; ++trial) {
        const double cal_e = cal_dist(rng);
        const double m1 = std::exp(log_mass(rng));
        const double m2 = std::exp(log_mass(rng));
        const double round_trip = mass_shell_cal_e(total_energy(cal_e, m1, m2), m1, m2);
        const double scale = std::max(cal_e, 0.25 * (m1 + m2) * (m1 + m2));
        CHECK(std::abs(round_trip - cal_e) <= 1e-12 * scale);
    }
}

TEST_CASE("total_energy is strictly increasing in calE and symmetric in masses") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> cal_dist(0.0, 1e3);
    std::uniform_real_distribution<double> mass_dist(0.1, 50.0);
    for (int trial = 0; trial < 500; ++trial) {
        const double m1 = mass_dist(rng);
        const double m2 = mass_dist(rng);
        double a = cal_dist(rng), b = cal_dist(rng);
        if (a == b)
            continue;
        if (a > b)
            std::swap(a, b);
        CHECK(total_energy(a, m1, m2) < total_energy(b, m1, m2));
        CHECK(total_energy(a, m1, m2) == total_energy(a, m2, m1));
    }
}

TEST_CASE("E sits at threshold exactly when calE = 0") {
    for (const int kappa : {-3, -2, -1, 1, 2, 3}) {
        for (int n = 0; n <= 3; ++n) {
            const Level lv = make_level(kFig1, n, Channel(kappa));
            if (lv.cal_e == 0.0)
                CHECK(lv.energy == 3.0);
            else
                CHECK(lv.energy > 3.0);
        }
    }
}

TEST_CASE("calE is nonnegative for every channel, including unsafe couplings") {
    const ModelConfig configs[] = {kFig1, kFig2, unsafe_config(0.15, 1.0),
                                   unsafe_config(-0.2, 3.0), ModelConfig{1, 2, 0.0, 0.5}};
    for (const auto& cfg : configs)
        for (int kappa = -8; kappa <= 8; ++kappa) {
            if (kappa == 0)
                continue;
            for (int n = 0; n <= 3; ++n) {
                try {
                    CHECK(oscillator_eigenvalue(cfg, n, Channel(kappa)) >= 0.0);
                } catch (const DegenerateChannelError&) {
                }
            }
        }
}

TEST_CASE("fig1 ground family is exactly degenerate at threshold") {
    const auto [levels, skipped] = enumerate_levels(kFig1, 0, 5);
    REQUIRE(skipped.empty());
    REQUIRE(levels.size() == 6);
    int at_threshold = 0;
    for (const auto& lv : levels)
        if (lv.channel.kappa() < 0) {
            CHECK(lv.energy == 3.0);
            ++at_threshold;
        }
    CHECK(at_threshold == 3);
    CHECK(spectroscopic_label(levels[0].n, levels[0].channel) == "0s_1/2");
    CHECK(spectroscopic_label(levels[1].n, levels[1].channel) == "0p_3/2");
    CHECK(spectroscopic_label(levels[2].n, levels[2].channel) == "0d_5/2");
}

TEST_CASE("pure tensor coupling gives an equidistant kappa=-1 tower") {
    const ModelConfig cfg{1.0, 2.0, 0.0, 0.1};
    const auto [levels, skipped] = enumerate_levels(cfg, 2, 1);
    REQUIRE(skipped.empty());
    std::vector<double> tower_cal_e;
    double prev_energy = 0.0;
    for (const auto& lv : levels)
        if (lv.channel.kappa() == -1) {
            CHECK(lv.energy > prev_energy);
            prev_energy = lv.energy;
            tower_cal_e.push_back(lv.cal_e);
        }
    REQUIRE(tower_cal_e.size() == 3);
    for (std::size_t i = 1; i < tower_cal_e.size(); ++i)
        CHECK(tower_cal_e[i] - tower_cal_e[i - 1] ==
              doctest::Approx(4.0 * 0.1).epsilon(1e-14));
}

TEST_CASE("fig2 levels are pairwise separated") {
    const auto [levels, skipped] = enumerate_levels(kFig2, 1, 3);
    REQUIRE(skipped.empty());
    REQUIRE(levels.size() == 8);
    for (std::size_t i = 0; i < levels.size(); ++i)
        for (std::size_t k = i + 1; k < levels.size(); ++k)
            CHECK(std::abs(levels[i].energy - levels[k].energy) > 1e-6);
}

TEST_CASE("levels come out sorted with deterministic tie-breaking") {
    const auto [levels, skipped] = enumerate_levels(kFig1, 2, 7);
    for (std::size_t i = 1; i < levels.size(); ++i) {
        const auto& a = levels[i - 1];
        const auto& b = levels[i];
        const auto key = [](const Level& lv) {
            return std::tuple(lv.energy, lv.channel.two_j(), lv.channel.l(), lv.n);
        };
        CHECK(key(a) < key(b));
    }
}

TEST_CASE("vanishing-frequency channels are skipped with a warning record") {
    // |lambda| >= |nu| so the config is ordering-safe, yet kappa = +1 has
    // nu - lambda*kappa = 0.
    const ModelConfig cfg{1.0, 2.0, 2.0, 2.0};
    const auto [levels, skipped] = enumerate_levels(cfg, 1, 3);
    REQUIRE(skipped.size() == 1);
    CHECK(skipped[0].kappa() == +1);
    for (const auto& lv : levels)
        CHECK(lv.channel.kappa() != +1);
}

TEST_CASE("parity doubling for lambda > 0, nu = 0 pairs shifted n") {
    const ModelConfig cfg{1.0, 2.0, 1.0, 0.0};
    for (int k = 1; k <= 4; ++k)
        for (int n = 0; n <= 3; ++n) {
            const double upper = oscillator_eigenvalue(cfg, n, Channel(+k));
            const double lower = oscillator_eigenvalue(cfg, n + 1, Channel(-k));
            CHECK(upper == lower);  // bit-exact: same integer bracket, same a^2
        }
}

TEST_CASE("parity doubling for lambda < 0, nu = 0 pairs equal n") {
    const ModelConfig cfg{1.0, 2.0, -1.0, 0.0};
    for (int k = 1; k <= 4; ++k)
        for (int n = 0; n <= 3; ++n) {
            const double upper = oscillator_eigenvalue(cfg, n, Channel(+k));
            const double lower = oscillator_eigenvalue(cfg, n, Channel(-k));
            CHECK(upper == lower);
        }
}

TEST_CASE("non-equidistance whenever both couplings act") {
    const ModelConfig cfg{1.0, 2.0, 1.0, 0.1};
    const double gap_minus = oscillator_eigenvalue(cfg, 1, Channel(-1)) -
                             oscillator_eigenvalue(cfg, 0, Channel(-1));
    const double gap_plus = oscillator_eigenvalue(cfg, 1, Channel(+1)) -
                            oscillator_eigenvalue(cfg, 0, Channel(+1));
    CHECK(gap_minus == doctest::Approx(4.0 * 1.1).epsilon(1e-14));
    CHECK(gap_plus == doctest::Approx(4.0 * 0.9).epsilon(1e-14));
    CHECK(gap_minus != gap_plus);
}

TEST_CASE("ground family vanishes for all kappa < 0 when every such channel has s = +1") {
    const ModelConfig cfg{1.0, 2.0, 2.0, -1.0};  // safe, nu < 0
    for (int k = 1; k <= 6; ++k) {
        const auto [a_sq, s] = effective_tension(cfg, Channel(-k));
        REQUIRE(s == +1);
        CHECK(oscillator_eigenvalue(cfg, 0, Channel(-k)) == 0.0);
    }
}

TEST_CASE("degeneracy clustering: fig1 has the ground family and nothing else") {
    const auto [levels, skipped] = enumerate_levels(kFig1, 2, 7);
    const auto clusters = degeneracy_groups(levels);
    int families = 0;
    for (const auto& cluster : clusters) {
        if (cluster.members.size() > 1) {
            CHECK(cluster.kind == DegeneracyKind::ground_state_family);
            CHECK(cluster.energy == 3.0);
            CHECK(cluster.members.size() == 4);  // 0s_1/2 0p_3/2 0d_5/2 0f_7/2
            ++families;
        } else {
            CHECK(cluster.kind == DegeneracyKind::single);
        }
    }
    CHECK(families == 1);
}

TEST_CASE("degeneracy clustering: fig2 is all singletons") {
    const auto [levels, skipped] = enumerate_levels(kFig2, 1, 7);
    for (const auto& cluster : degeneracy_groups(levels))
        CHECK(cluster.members.size() == 1);
    CHECK_THROWS_AS(degeneracy_groups(levels, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(degeneracy_groups(levels, -1.0), std::invalid_argument);
}

TEST_CASE("enumeration enforces the model invariants") {
    CHECK_THROWS_AS(enumerate_levels(ModelConfig{1, 2, 0.15, 1.0}, 1, 3),
                    std::invalid_argument);
    CHECK_NOTHROW(enumerate_levels(unsafe_config(0.15, 1.0), 1, 3));
    CHECK_THROWS_AS(enumerate_levels(ModelConfig{-1, 2, 1.0, 0.1}, 1, 3),
                    std::invalid_argument);
    CHECK_THROWS_AS(enumerate_levels(kFig1, -1, 3), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_levels(kFig1, 1, 0), std::invalid_argument);
}

TEST_CASE("degeneracy clustering recognizes both doubling patterns") {
    const ModelConfig shifted{1.0, 2.0, 1.0, 0.0};
    const auto [lv_shift, sk1] = enumerate_levels(shifted, 3, 5);
    bool saw_shifted = false;
    for (const auto& cluster : degeneracy_groups(lv_shift)) {
        if (cluster.members.size() < 2)
            continue;
        const bool ground = cluster.kind == DegeneracyKind::ground_state_family;
        if (!ground) {
            CHECK(cluster.kind == DegeneracyKind::parity_doublet_shifted_n);
            saw_shifted = true;
            // Every kappa > 0 member whose shifted partner fits the
            // enumeration bounds has it in the cluster.
            for (const std::size_t i : cluster.members) {
                if (lv_shift[i].channel.kappa() <= 0 || lv_shift[i].n + 1 > 3)
                    continue;
                const bool partnered = std::any_of(
                    cluster.members.begin(), cluster.members.end(), [&](std::size_t m) {
                        return lv_shift[m].channel.kappa() == -lv_shift[i].channel.kappa() &&
                               lv_shift[m].n == lv_shift[i].n + 1;
                    });
                CHECK(partnered);
            }
        }
    }
    CHECK(saw_shifted);

    const ModelConfig same{1.0, 2.0, -1.0, 0.0};
    const auto [lv_same, sk2] = enumerate_levels(same, 3, 5);
    bool saw_same = false;
    for (const auto& cluster : degeneracy_groups(lv_same)) {
        if (cluster.members.size() < 2)
            continue;
        CHECK(cluster.kind == DegeneracyKind::parity_doublet_same_n);
        saw_same = true;
    }
    CHECK(saw_same);
}

TEST_CASE("ordering scan: safe couplings never invert") {
    CHECK(unphysical_ordering_scan(kFig1, 0, 10).empty());
    CHECK(unphysical_ordering_scan(kFig2, 0, 10).empty());
    CHECK(unphysical_ordering_scan(ModelConfig{1, 2, 0.0, 1.0}, 0, 10).empty());
    // Safe boundary case with a degenerate channel inside the scan range.
    CHECK(unphysical_ordering_scan(ModelConfig{1, 2, 2.0, 2.0}, 0, 15).empty());
}

TEST_CASE("ordering scan: lambda=0.15, nu=1 inverts, including the sign-flip pair (6,7)") {
    const auto pairs = unphysical_ordering_scan(unsafe_config(0.15, 1.0), 0, 10);
    const std::vector<std::pair<int, int>> expected = {{3, 4}, {4, 5}, {5, 6}, {6, 7}};
    CHECK(pairs == expected);

    const ModelConfig cfg = unsafe_config(0.15, 1.0);
    CHECK(oscillator_eigenvalue(cfg, 0, Channel(6)) == doctest::Approx(2.6).epsilon(1e-14));
    CHECK(oscillator_eigenvalue(cfg, 0, Channel(7)) == doctest::Approx(0.2).epsilon(1e-14));
}

TEST_CASE("heavy-boson limit converges to the one-particle value like 1/m2") {
    const double m2_seq[] = {1e3, 1e4};

    // calE = 0 channel: eps equals m1 exactly for every boson mass.
    const auto rows0 = dirac_oscillator_limit(1.0, 0.5, 0, Channel(-1), m2_seq);
    for (const auto& row : rows0) {
        CHECK(row.eps == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(row.deviation < 1e-3);
    }

    const auto rows1 = dirac_oscillator_limit(1.0, 0.5, 1, Channel(-1), m2_seq);
    REQUIRE(rows1.size() == 2);
    CHECK(rows1[1].deviation < 1e-3);
    const double ratio = rows1[0].deviation / rows1[1].deviation;
    CHECK(ratio > 8.0);
    CHECK(ratio < 12.0);

    CHECK_THROWS_AS(dirac_oscillator_limit(-1.0, 0.5, 0, Channel(-1), m2_seq),
                    std::invalid_argument);
    const double bad_m2[] = {0.0};
    CHECK_THROWS_AS(dirac_oscillator_limit(1.0, 0.5, 0, Channel(-1), bad_m2),
                    std::invalid_argument);
}
