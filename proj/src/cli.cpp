#include "fbosc/cli.hpp"

#include "fbosc/oracle.hpp"
#include "fbosc/spectrum.hpp"
#include "fbosc/wavefn.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace fbosc::cli {

using nlohmann::ordered_json;

std::string format_number(double value) {
    char buf[40];
    const auto res =
        std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

namespace {

// Fixed-point text for SVG coordinates; locale-independent.
std::string format_fixed(double value, int precision) {
    char buf[40];
    const auto res =
        std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, precision);
    return std::string(buf, res.ptr);
}

std::string format_short(double value) {
    char buf[40];
    const auto res =
        std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 5);
    return std::string(buf, res.ptr);
}

}  // namespace

int parse_two_j(const std::string& text) {
    const auto fail = [&]() -> int {
        throw std::invalid_argument("cannot parse j value '" + text +
                                    "' (expected forms: 7/2, 3.5, 3)");
    };
    if (text.empty())
        fail();
    if (const auto slash = text.find('/'); slash != std::string::npos) {
        int num = 0, den = 0;
        try {
            std::size_t used = 0;
            num = std::stoi(text.substr(0, slash), &used);
            if (used != slash)
                fail();
            den = std::stoi(text.substr(slash + 1), &used);
            if (used != text.size() - slash - 1)
                fail();
        } catch (const std::exception&) {
            fail();
        }
        if (den != 1 && den != 2)
            fail();
        const int two_j = den == 2 ? num : 2 * num;
        if (two_j < 1)
            fail();
        return two_j;
    }
    double value = 0.0;
    try {
        std::size_t used = 0;
        value = std::stod(text, &used);
        if (used != text.size())
            fail();
    } catch (const std::exception&) {
        fail();
    }
    const int two_j = static_cast<int>(std::floor(2.0 * value + 1e-9));
    if (two_j < 1)
        fail();
    return two_j;
}

namespace {

// ---------------------------------------------------------------------------
// Configuration resolution: JSON file first, flags override, preset fixes
// the model parameters.
// ---------------------------------------------------------------------------

OutputFormat parse_format(const std::string& text) {
    if (text == "csv") return OutputFormat::csv;
    if (text == "json") return OutputFormat::json;
    if (text == "svg") return OutputFormat::svg;
    throw std::invalid_argument("unknown format '" + text + "'");
}

Preset parse_preset(const std::string& text) {
    if (text == "fig1") return Preset::fig1;
    if (text == "fig2") return Preset::fig2;
    if (text == "none" || text.empty()) return Preset::none;
    throw std::invalid_argument("unknown preset '" + text + "'");
}

void apply_config_file(const std::string& path, RunConfig& run) {
    std::ifstream file(path);
    if (!file)
        throw std::invalid_argument("cannot read config file: " + path);
    ordered_json doc;
    try {
        file >> doc;
    } catch (const std::exception& e) {
        throw std::invalid_argument("config file " + path + ": " + e.what());
    }
    static const std::vector<std::string> known = {
        "lambda", "nu",     "m1",    "m2",          "n_max", "j_max",
        "format", "preset", "force", "grid_points", "r_max", "out"};
    for (const auto& [key, value] : doc.items())
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw std::invalid_argument("config file " + path + ": unknown key '" + key + "'");

    if (doc.contains("lambda")) run.model.lambda = doc["lambda"].get<double>();
    if (doc.contains("nu")) run.model.nu = doc["nu"].get<double>();
    if (doc.contains("m1")) run.model.m1 = doc["m1"].get<double>();
    if (doc.contains("m2")) run.model.m2 = doc["m2"].get<double>();
    if (doc.contains("n_max")) run.n_max = doc["n_max"].get<int>();
    if (doc.contains("j_max")) {
        const auto& j = doc["j_max"];
        run.two_j_max = j.is_string() ? parse_two_j(j.get<std::string>())
                                      : parse_two_j(format_number(j.get<double>()));
    }
    if (doc.contains("format")) run.format = parse_format(doc["format"].get<std::string>());
    if (doc.contains("preset")) run.preset = parse_preset(doc["preset"].get<std::string>());
    if (doc.contains("force")) run.force = doc["force"].get<bool>();
    if (doc.contains("grid_points")) run.grid_points = doc["grid_points"].get<int>();
    if (doc.contains("r_max")) run.r_max = doc["r_max"].get<double>();
    if (doc.contains("out")) run.out_path = doc["out"].get<std::string>();
}

struct SharedText {
    std::string j_max;
    std::string preset;
    std::string format;
    std::string config_path;
};

void add_common_options(CLI::App* cmd, RunConfig& run, SharedText& text) {
    cmd->add_option("--lambda", run.model.lambda, "Lorentz-vector coupling (energy^2)");
    cmd->add_option("--nu", run.model.nu, "Lorentz-tensor coupling (energy^2)");
    cmd->add_option("--m1", run.model.m1, "fermion mass");
    cmd->add_option("--m2", run.model.m2, "boson mass");
    cmd->add_option("--n-max", run.n_max, "highest radial quantum number")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--j-max", text.j_max, "highest total angular momentum (7/2, 3.5, ...)");
    cmd->add_option("--preset", text.preset, "parameter preset")
        ->check(CLI::IsMember({"fig1", "fig2"}));
    cmd->add_option("--format", text.format, "output format")
        ->check(CLI::IsMember({"csv", "json", "svg"}));
    cmd->add_flag("--force", run.force, "allow ordering-unsafe couplings");
    cmd->add_option("--grid-points", run.grid_points, "radial sample count")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--r-max", run.r_max, "grid truncation radius (0 = automatic)");
    cmd->add_option("--out", run.out_path, "write output to this path");
    cmd->add_option("--config", text.config_path, "JSON config file (flags override)");
}

void finalize_run(RunConfig& run, const SharedText& text, const CLI::App* active) {
    if (!text.preset.empty())
        run.preset = parse_preset(text.preset);
    if (!text.format.empty())
        run.format = parse_format(text.format);
    if (!text.j_max.empty())
        run.two_j_max = parse_two_j(text.j_max);

    if (run.preset != Preset::none) {
        const bool model_flag_given = active->count("--lambda") || active->count("--nu") ||
                                      active->count("--m1") || active->count("--m2");
        if (model_flag_given)
            throw std::invalid_argument(
                "--preset fixes lambda, nu, m1, m2; drop the explicit model flags");
        const bool fig1 = run.preset == Preset::fig1;
        run.model.lambda = fig1 ? 1.0 : -1.0;
        run.model.nu = 0.1;
        run.model.m1 = 1.0;
        run.model.m2 = 2.0;
    }
    run.model.allow_unsafe = run.force;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw std::invalid_argument("cannot open output path: " + path);
    file << text;
}

void emit(const RunConfig& run, std::ostream& out, const std::string& text) {
    if (run.out_path.empty())
        out << text;
    else
        write_text_file(run.out_path, text);
}

ordered_json model_json(const ModelConfig& model) {
    return ordered_json{{"lambda", model.lambda},
                        {"nu", model.nu},
                        {"m1", model.m1},
                        {"m2", model.m2},
                        {"ordering", validate_couplings(model.lambda, model.nu) ==
                                             CouplingVerdict::ordering_safe
                                         ? "safe"
                                         : "unsafe"}};
}

void warn_skipped(const std::vector<Channel>& skipped, std::ostream& err) {
    for (const Channel& c : skipped)
        err << "warning: channel kappa=" << c.kappa()
            << " skipped: vanishing oscillator frequency (nu - lambda*kappa = 0)\n";
}

constexpr int kScanLMax = 15;

// ---------------------------------------------------------------------------
// spectrum
// ---------------------------------------------------------------------------

int cmd_spectrum(const RunConfig& run, std::ostream& out, std::ostream& err) {
    validate_model(run.model);
    const CouplingVerdict verdict = validate_couplings(run.model.lambda, run.model.nu);

    const auto [levels, skipped] = enumerate_levels(run.model, run.n_max, run.two_j_max);
    const auto clusters = degeneracy_groups(levels);
    std::vector<int> group_of(levels.size(), -1);
    for (std::size_t g = 0; g < clusters.size(); ++g)
        for (const std::size_t idx : clusters[g].members)
            group_of[idx] = static_cast<int>(g);

    warn_skipped(skipped, err);
    std::vector<std::pair<int, int>> inversions;
    if (verdict == CouplingVerdict::ordering_unsafe) {
        inversions = unphysical_ordering_scan(run.model, 0, kScanLMax);
        for (const auto& [low, high] : inversions)
            err << "warning: unphysical level ordering: E(n=0, l=" << high
                << ") < E(n=0, l=" << low << ")\n";
    }

    if (run.format == OutputFormat::csv) {
        std::ostringstream csv;
        csv << "label,n,l,two_j,parity,a_sq,s,cal_e,energy,group\n";
        for (std::size_t i = 0; i < levels.size(); ++i) {
            const Level& lv = levels[i];
            csv << spectroscopic_label(lv.n, lv.channel) << ',' << lv.n << ','
                << lv.channel.l() << ',' << lv.channel.two_j() << ',' << lv.channel.parity()
                << ',' << format_number(lv.a_sq) << ',' << lv.sign << ','
                << format_number(lv.cal_e) << ',' << format_number(lv.energy) << ','
                << group_of[i] << '\n';
        }
        emit(run, out, csv.str());
        return kExitOk;
    }
    if (run.format == OutputFormat::json) {
        ordered_json doc;
        doc["schema"] = 1;
        doc["model"] = model_json(run.model);
        doc["n_max"] = run.n_max;
        doc["two_j_max"] = run.two_j_max;
        doc["levels"] = ordered_json::array();
        for (std::size_t i = 0; i < levels.size(); ++i) {
            const Level& lv = levels[i];
            doc["levels"].push_back({{"label", spectroscopic_label(lv.n, lv.channel)},
                                     {"n", lv.n},
                                     {"kappa", lv.channel.kappa()},
                                     {"l", lv.channel.l()},
                                     {"two_j", lv.channel.two_j()},
                                     {"parity", lv.channel.parity()},
                                     {"a_sq", lv.a_sq},
                                     {"s", lv.sign},
                                     {"cal_e", lv.cal_e},
                                     {"energy", lv.energy},
                                     {"group", group_of[i]}});
        }
        doc["degeneracy_groups"] = ordered_json::array();
        for (std::size_t g = 0; g < clusters.size(); ++g) {
            ordered_json members = ordered_json::array();
            for (const std::size_t idx : clusters[g].members)
                members.push_back(spectroscopic_label(levels[idx].n, levels[idx].channel));
            doc["degeneracy_groups"].push_back({{"id", static_cast<int>(g)},
                                                {"kind", to_string(clusters[g].kind)},
                                                {"energy", clusters[g].energy},
                                                {"members", members}});
        }
        doc["skipped_channels"] = ordered_json::array();
        for (const Channel& c : skipped)
            doc["skipped_channels"].push_back({{"kappa", c.kappa()}});
        doc["ordering_inversions"] = ordered_json::array();
        for (const auto& [low, high] : inversions)
            doc["ordering_inversions"].push_back({low, high});
        emit(run, out, doc.dump(2) + "\n");
        return kExitOk;
    }
    throw std::invalid_argument("spectrum emits csv or json (use the figure command for svg)");
}

// ---------------------------------------------------------------------------
// wavefunction
// ---------------------------------------------------------------------------

int cmd_wavefunction(const RunConfig& run, int n, int kappa, std::ostream& out,
                     std::ostream& err) {
    (void)err;
    validate_model(run.model);
    if (run.format != OutputFormat::csv)
        throw std::invalid_argument("wavefunction emits csv only");
    if (n < 0)
        throw std::invalid_argument("wavefunction: n must be nonnegative");

    const Channel c(kappa);
    const auto sol = sample_radial_solution(run.model, n, c,
                                            GridSpec{run.grid_points, run.r_max});

    std::ostringstream csv;
    csv << "# schema,1\n";
    csv << "# label," << spectroscopic_label(n, c) << '\n';
    csv << "# lambda," << format_number(run.model.lambda) << '\n';
    csv << "# nu," << format_number(run.model.nu) << '\n';
    csv << "# m1," << format_number(run.model.m1) << '\n';
    csv << "# m2," << format_number(run.model.m2) << '\n';
    csv << "# n," << n << '\n';
    csv << "# kappa," << kappa << '\n';
    csv << "# a_sq," << format_number(sol.level.a_sq) << '\n';
    csv << "# s," << sol.level.sign << '\n';
    csv << "# cal_e," << format_number(sol.level.cal_e) << '\n';
    csv << "# energy," << format_number(sol.level.energy) << '\n';
    csv << "# norm_a," << format_number(sol.norm_a) << '\n';
    csv << "# norm," << format_number(sol.norm_quadrature) << '\n';
    csv << "# norm_residual," << format_number(sol.norm_residual) << '\n';
    csv << "r,G,F\n";
    csv << "0,0,0\n";
    for (std::size_t i = 0; i < sol.grid.size(); ++i)
        csv << format_number(sol.grid.r()[i]) << ',' << format_number(sol.g[i]) << ','
            << format_number(sol.f[i]) << '\n';
    emit(run, out, csv.str());
    return kExitOk;
}

// ---------------------------------------------------------------------------
// figure
// ---------------------------------------------------------------------------

struct FigureData {
    std::string csv;
    std::string svg;
};

FigureData render_figure(const RunConfig& run) {
    const auto [levels, skipped] = enumerate_levels(run.model, run.n_max, run.two_j_max);
    (void)skipped;
    if (levels.empty())
        throw std::invalid_argument("figure: no levels to draw");

    std::ostringstream csv;
    csv << "label,energy\n";
    for (const Level& lv : levels)
        csv << spectroscopic_label(lv.n, lv.channel) << ',' << format_number(lv.energy)
            << '\n';

    // Dashed connectors: partners that merge when nu -> 0.
    // lambda > 0: (n, kappa) with (n+1, -kappa); lambda < 0: (n, -kappa).
    std::vector<std::pair<std::size_t, std::size_t>> connectors;
    if (run.model.lambda != 0.0) {
        const int shift = run.model.lambda > 0.0 ? 1 : 0;
        for (std::size_t i = 0; i < levels.size(); ++i) {
            if (levels[i].channel.kappa() <= 0)
                continue;
            for (std::size_t k = 0; k < levels.size(); ++k)
                if (levels[k].channel.kappa() == -levels[i].channel.kappa() &&
                    levels[k].n == levels[i].n + shift)
                    connectors.emplace_back(i, k);
        }
    }

    // One column per (l, j) sector.
    std::vector<std::pair<int, int>> sectors;  // (l, two_j)
    for (const Level& lv : levels) {
        const std::pair<int, int> key{lv.channel.l(), lv.channel.two_j()};
        if (std::find(sectors.begin(), sectors.end(), key) == sectors.end())
            sectors.push_back(key);
    }
    std::sort(sectors.begin(), sectors.end());
    const auto sector_index = [&](const Level& lv) {
        const std::pair<int, int> key{lv.channel.l(), lv.channel.two_j()};
        return static_cast<std::size_t>(
            std::find(sectors.begin(), sectors.end(), key) - sectors.begin());
    };

    const double margin_left = 84.0, margin_right = 36.0, margin_top = 56.0,
                 margin_bottom = 58.0;
    const double column_width = 96.0, half_tick = 30.0;
    const double width = margin_left + column_width * sectors.size() + margin_right;
    const double height = 640.0;

    double e_lo = levels.front().energy, e_hi = levels.front().energy;
    for (const Level& lv : levels) {
        e_lo = std::min(e_lo, lv.energy);
        e_hi = std::max(e_hi, lv.energy);
    }
    const double pad = std::max(0.05 * (e_hi - e_lo), 0.02 * std::max(e_hi, 1.0));
    e_lo -= pad;
    e_hi += pad;
    const auto y_of = [&](double e) {
        return margin_top + (e_hi - e) / (e_hi - e_lo) * (height - margin_top - margin_bottom);
    };
    const auto x_of = [&](std::size_t sector) {
        return margin_left + column_width * (sector + 0.5);
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_fixed(width, 0)
        << "\" height=\"" << format_fixed(height, 0) << "\" viewBox=\"0 0 "
        << format_fixed(width, 0) << ' ' << format_fixed(height, 0) << "\">\n";
    svg << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "  <text x=\"" << format_fixed(width / 2.0, 1)
        << "\" y=\"26\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
        << "Energy levels: lambda=" << format_short(run.model.lambda)
        << ", nu=" << format_short(run.model.nu) << ", m1=" << format_short(run.model.m1)
        << ", m2=" << format_short(run.model.m2) << "</text>\n";

    // Vertical axis with evenly spaced ticks.
    svg << "  <line x1=\"" << format_fixed(margin_left - 14, 1) << "\" y1=\""
        << format_fixed(y_of(e_hi), 1) << "\" x2=\"" << format_fixed(margin_left - 14, 1)
        << "\" y2=\"" << format_fixed(y_of(e_lo), 1)
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    for (int t = 0; t <= 5; ++t) {
        const double e = e_lo + (e_hi - e_lo) * t / 5.0;
        svg << "  <line x1=\"" << format_fixed(margin_left - 19, 1) << "\" y1=\""
            << format_fixed(y_of(e), 1) << "\" x2=\"" << format_fixed(margin_left - 14, 1)
            << "\" y2=\"" << format_fixed(y_of(e), 1) << "\" stroke=\"black\"/>\n";
        svg << "  <text x=\"" << format_fixed(margin_left - 24, 1) << "\" y=\""
            << format_fixed(y_of(e) + 4, 1)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">"
            << format_short(e) << "</text>\n";
    }
    svg << "  <text x=\"22\" y=\"" << format_fixed(height / 2.0, 1)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90 22 "
        << format_fixed(height / 2.0, 1) << ")\">E</text>\n";

    // Sector labels.
    for (std::size_t sct = 0; sct < sectors.size(); ++sct)
        svg << "  <text x=\"" << format_fixed(x_of(sct), 1) << "\" y=\""
            << format_fixed(height - 26, 1)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
            << spectroscopic_letter(sectors[sct].first) << "_" << sectors[sct].second
            << "/2</text>\n";

    // Dashed connectors first so level ticks draw on top.
    for (const auto& [i, k] : connectors) {
        const double xa = x_of(sector_index(levels[i]));
        const double xb = x_of(sector_index(levels[k]));
        const double x1 = xa < xb ? xa + half_tick : xa - half_tick;
        const double x2 = xa < xb ? xb - half_tick : xb + half_tick;
        svg << "  <line x1=\"" << format_fixed(x1, 1) << "\" y1=\""
            << format_fixed(y_of(levels[i].energy), 1) << "\" x2=\"" << format_fixed(x2, 1)
            << "\" y2=\"" << format_fixed(y_of(levels[k].energy), 1)
            << "\" stroke=\"gray\" stroke-width=\"1\" stroke-dasharray=\"6,4\"/>\n";
    }

    // Level ticks.
    for (const Level& lv : levels) {
        const double x = x_of(sector_index(lv));
        const double y = y_of(lv.energy);
        svg << "  <line x1=\"" << format_fixed(x - half_tick, 1) << "\" y1=\""
            << format_fixed(y, 1) << "\" x2=\"" << format_fixed(x + half_tick, 1)
            << "\" y2=\"" << format_fixed(y, 1)
            << "\" stroke=\"black\" stroke-width=\"1.6\" data-label=\""
            << spectroscopic_label(lv.n, lv.channel) << "\" data-energy=\""
            << format_number(lv.energy) << "\"/>\n";
        svg << "  <text x=\"" << format_fixed(x - half_tick - 4, 1) << "\" y=\""
            << format_fixed(y + 4, 1)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << lv.n
            << "</text>\n";
    }
    svg << "</svg>\n";

    return {csv.str(), svg.str()};
}

int cmd_figure(const RunConfig& run, std::ostream& out, std::ostream& err) {
    validate_model(run.model);
    const FigureData fig = render_figure(run);
    if (run.out_path.empty()) {
        err << "note: no --out given; printing the level CSV (SVG needs --out)\n";
        out << fig.csv;
    } else {
        write_text_file(run.out_path + ".csv", fig.csv);
        write_text_file(run.out_path + ".svg", fig.svg);
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct CheckResult {
    std::string name;
    bool pass;
    ordered_json details;
};

CheckResult check_mass_shell_round_trip(const ModelConfig& model) {
    const double cal_values[] = {0.0, 0.5, 4.4, 137.0, 1000.0};
    const std::pair<double, double> mass_pairs[] = {
        {model.m1, model.m2}, {1.0, 1.0}, {0.3, 30.0}};
    double worst = 0.0;
    for (const double cal_e : cal_values)
        for (const auto& [m1, m2] : mass_pairs) {
            const double back = mass_shell_cal_e(total_energy(cal_e, m1, m2), m1, m2);
            const double scale = std::max(cal_e, 0.25 * (m1 + m2) * (m1 + m2));
            worst = std::max(worst, std::abs(back - cal_e) / scale);
        }
    return {"mass_shell_round_trip", worst <= 1e-12,
            ordered_json{{"max_scaled_error", worst}, {"tolerance", 1e-12}}};
}

CheckResult check_threshold_identity(const ModelConfig& model) {
    const double threshold = model.m1 + model.m2;
    const double err = std::abs(total_energy(0.0, model.m1, model.m2) - threshold);
    return {"threshold_identity", err <= 1e-12 * threshold,
            ordered_json{{"abs_error", err}}};
}

CheckResult check_oracle_agreement(const ModelConfig& model) {
    ordered_json rows = ordered_json::array();
    ordered_json skipped = ordered_json::array();
    bool pass = true;
    for (const int kappa : {-3, -2, -1, 1, 2, 3}) {
        try {
            const Channel c(kappa);
            const OracleResult oracle = lowest_eigenvalues(model, c, 4);
            const double a_sq = effective_tension(model, c).a_sq;
            for (int n = 0; n <= 3; ++n) {
                const double analytic = oscillator_eigenvalue(model, n, c);
                const double abs_err = std::abs(oracle.eigenvalues[n] - analytic);
                const double tol = std::max(1e-6 * analytic, 1e-6 * a_sq);
                const bool ok = abs_err <= tol;
                pass = pass && ok;
                rows.push_back({{"kappa", kappa},
                                {"n", n},
                                {"analytic", analytic},
                                {"numeric", oracle.eigenvalues[n]},
                                {"abs_err", abs_err},
                                {"tolerance", tol},
                                {"pass", ok}});
            }
        } catch (const DegenerateChannelError&) {
            skipped.push_back(kappa);
        }
    }
    return {"oracle_agreement", pass,
            ordered_json{{"levels", rows}, {"skipped_kappa", skipped}}};
}

CheckResult check_wavefunction_residuals(const ModelConfig& model) {
    ordered_json rows = ordered_json::array();
    bool pass = true;
    for (const int kappa : {-3, -2, -1, 1, 2, 3}) {
        try {
            for (int n = 0; n <= 3; ++n) {
                const auto sol = sample_radial_solution(model, n, Channel(kappa));
                const auto res = first_order_residual(sol, model.m1, model.m2);
                const bool ok = res.g_equation <= 1e-8 && res.f_equation <= 1e-8 &&
                                sol.norm_residual <= 1e-10;
                pass = pass && ok;
                rows.push_back({{"kappa", kappa},
                                {"n", n},
                                {"residual_g", res.g_equation},
                                {"residual_f", res.f_equation},
                                {"norm_residual", sol.norm_residual},
                                {"pass", ok}});
            }
        } catch (const DegenerateChannelError&) {
        }
    }
    return {"wavefunction_residuals", pass, ordered_json{{"levels", rows}}};
}

CheckResult check_orthogonality(const ModelConfig& model) {
    double worst = 0.0;
    for (const int kappa : {-1, 1}) {
        try {
            std::vector<Level> tower;
            for (int n = 0; n <= 3; ++n)
                tower.push_back(make_level(model, n, Channel(kappa)));
            for (std::size_t i = 0; i < tower.size(); ++i)
                for (std::size_t k = i + 1; k < tower.size(); ++k)
                    worst = std::max(worst,
                                     std::abs(radial_overlap(model, tower[i], tower[k])));
        } catch (const DegenerateChannelError&) {
        }
    }
    return {"orthogonality", worst <= 1e-8,
            ordered_json{{"max_overlap", worst}, {"tolerance", 1e-8}}};
}

CheckResult check_degeneracy_structure(const ModelConfig& model) {
    const auto [levels, skipped] = enumerate_levels(model, 3, 7);
    const auto clusters = degeneracy_groups(levels);

    ordered_json details;
    bool pass = true;
    if (model.nu == 0.0 && model.lambda != 0.0) {
        const bool shifted = model.lambda > 0.0;
        details["mode"] = shifted ? "parity_doublet_shifted_n" : "parity_doublet_same_n";
        int doublets = 0;
        for (const auto& cluster : clusters) {
            if (cluster.members.size() < 2)
                continue;
            const auto kind = cluster.kind;
            if (kind == DegeneracyKind::ground_state_family)
                continue;  // lambda > 0 also has the threshold family
            if (kind != (shifted ? DegeneracyKind::parity_doublet_shifted_n
                                 : DegeneracyKind::parity_doublet_same_n))
                pass = false;
            ++doublets;
        }
        details["doublet_clusters"] = doublets;
        pass = pass && doublets > 0;
    } else if (model.lambda > 0.0) {
        details["mode"] = "ground_state_family";
        bool family = false;
        for (const auto& cluster : clusters)
            if (cluster.kind == DegeneracyKind::ground_state_family) {
                family = true;
                details["family_size"] = cluster.members.size();
                details["family_energy"] = cluster.energy;
            }
        pass = family;
    } else if (model.lambda < 0.0) {
        details["mode"] = "no_ground_family";
        double min_gap = std::numeric_limits<double>::infinity();
        for (std::size_t i = 1; i < levels.size(); ++i)
            min_gap = std::min(min_gap, levels[i].energy - levels[i - 1].energy);
        details["min_gap"] = min_gap;
        for (const auto& cluster : clusters)
            if (cluster.kind == DegeneracyKind::ground_state_family)
                pass = false;
    } else {
        details["mode"] = "equidistant";
        std::vector<double> tower;
        for (int n = 0; n <= 3; ++n)
            tower.push_back(oscillator_eigenvalue(model, n, Channel(-1)));
        const double gap = 4.0 * std::abs(model.nu);
        for (std::size_t i = 1; i < tower.size(); ++i)
            if (std::abs(tower[i] - tower[i - 1] - gap) > 1e-12 * std::max(gap, 1.0))
                pass = false;
        details["gap"] = gap;
    }
    return {"degeneracy_structure", pass, details};
}

CheckResult check_ordering_scan(const ModelConfig& model) {
    const CouplingVerdict verdict = validate_couplings(model.lambda, model.nu);
    const auto inversions = unphysical_ordering_scan(model, 0, kScanLMax);
    ordered_json pairs = ordered_json::array();
    for (const auto& [low, high] : inversions)
        pairs.push_back({low, high});
    const bool safe = verdict == CouplingVerdict::ordering_safe;
    const bool pass = !safe || inversions.empty();
    return {"ordering_scan", pass,
            ordered_json{{"verdict", safe ? "safe" : "unsafe"}, {"inversions", pairs}}};
}

CheckResult check_dirac_limit(const ModelConfig& model, double omega) {
    ordered_json table = ordered_json::array();
    bool pass = true;
    const double m2_values[] = {1e2, 1e3, 1e4};
    for (int n = 0; n <= 2; ++n) {
        const auto rows = dirac_oscillator_limit(model.m1, omega, n, Channel(-1), m2_values);
        ordered_json row_json = ordered_json::array();
        for (const auto& row : rows)
            row_json.push_back({{"m2", row.m2},
                                {"eps", row.eps},
                                {"limit", row.limit_value},
                                {"deviation", row.deviation}});
        const bool zero_mode = rows[0].deviation == 0.0;
        double ratio = 0.0;
        bool ok = true;
        if (zero_mode) {
            for (const auto& row : rows)
                ok = ok && row.deviation <= 1e-12;
        } else {
            ratio = rows[1].deviation / rows[2].deviation;
            ok = ratio >= 8.0 && ratio <= 12.0;
            for (std::size_t i = 1; i < rows.size(); ++i)
                ok = ok && rows[i].deviation < rows[i - 1].deviation;
        }
        pass = pass && ok;
        table.push_back({{"n", n},
                         {"rows", row_json},
                         {"ratio_1e3_over_1e4", ratio},
                         {"pass", ok}});
    }
    return {"dirac_limit", pass, ordered_json{{"omega", omega}, {"table", table}}};
}

int cmd_verify(const RunConfig& run, bool dirac_limit, double omega, std::ostream& out,
               std::ostream& err) {
    (void)err;
    validate_model(run.model);

    std::vector<CheckResult> checks;
    checks.push_back(check_mass_shell_round_trip(run.model));
    checks.push_back(check_threshold_identity(run.model));
    checks.push_back(check_oracle_agreement(run.model));
    checks.push_back(check_wavefunction_residuals(run.model));
    checks.push_back(check_orthogonality(run.model));
    checks.push_back(check_degeneracy_structure(run.model));
    checks.push_back(check_ordering_scan(run.model));
    if (dirac_limit)
        checks.push_back(check_dirac_limit(run.model, omega));

    bool all = true;
    ordered_json doc;
    doc["schema"] = 1;
    doc["model"] = model_json(run.model);
    doc["checks"] = ordered_json::array();
    for (const auto& check : checks) {
        all = all && check.pass;
        doc["checks"].push_back(
            {{"name", check.name}, {"pass", check.pass}, {"details", check.details}});
    }
    doc["pass"] = all;
    emit(run, out, doc.dump(2) + "\n");
    return all ? kExitOk : kExitVerification;
}

}  // namespace

// ---------------------------------------------------------------------------
// argument wiring
// ---------------------------------------------------------------------------

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig run_config;

    // The config file provides defaults, so it must load before CLI11 parses
    // the explicit flags over them.
    try {
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (args[i] == "--config" && i + 1 < args.size())
                apply_config_file(args[i + 1], run_config);
            else if (args[i].rfind("--config=", 0) == 0)
                apply_config_file(args[i].substr(9), run_config);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }

    CLI::App app{"Relativistic spin-1/2 + spin-0 oscillator model: closed-form spectra, "
                 "radial wavefunctions, and a finite-difference cross-check"};
    app.name("fbosc");
    app.require_subcommand(1);

    SharedText text;
    int wf_n = 0;
    int wf_kappa = -1;
    bool dirac_limit = false;
    double omega = 0.5;

    CLI::App* spectrum_cmd =
        app.add_subcommand("spectrum", "Closed-form level table (csv or json)");
    add_common_options(spectrum_cmd, run_config, text);

    CLI::App* wavefn_cmd =
        app.add_subcommand("wavefunction", "Sampled normalized radial functions (csv)");
    add_common_options(wavefn_cmd, run_config, text);
    wavefn_cmd->add_option("-n,--n", wf_n, "radial quantum number")->required();
    wavefn_cmd->add_option("--kappa", wf_kappa, "channel quantum number kappa")->required();

    CLI::App* verify_cmd =
        app.add_subcommand("verify", "Run the invariant suite (json report)");
    add_common_options(verify_cmd, run_config, text);
    verify_cmd->add_flag("--dirac-limit", dirac_limit,
                         "check the heavy-boson one-particle limit");
    verify_cmd->add_option("--omega", omega, "oscillator frequency for --dirac-limit");

    CLI::App* figure_cmd =
        app.add_subcommand("figure", "Level diagram (svg + csv, needs --out)");
    add_common_options(figure_cmd, run_config, text);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        const CLI::App* active = app.get_subcommands().front();
        if (verify_cmd->parsed() && dirac_limit) {
            if (active->count("--lambda") || active->count("--nu") ||
                !text.preset.empty())
                throw std::invalid_argument(
                    "--dirac-limit fixes lambda = 0 and nu = m1*omega; drop "
                    "--lambda/--nu/--preset");
            finalize_run(run_config, text, active);
            run_config.model.lambda = 0.0;
            run_config.model.nu = run_config.model.m1 * omega;
        } else {
            finalize_run(run_config, text, active);
        }

        if (spectrum_cmd->parsed())
            return cmd_spectrum(run_config, out, err);
        if (wavefn_cmd->parsed())
            return cmd_wavefunction(run_config, wf_n, wf_kappa, out, err);
        if (verify_cmd->parsed())
            return cmd_verify(run_config, dirac_limit, omega, out, err);
        if (figure_cmd->parsed())
            return cmd_figure(run_config, out, err);
        throw std::logic_error("no subcommand dispatched");
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }
}

}  // namespace fbosc::cli
