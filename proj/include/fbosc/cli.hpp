#ifndef FBOSC_CLI_HPP
#define FBOSC_CLI_HPP

#include "fbosc/qnum.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace fbosc::cli {

enum class OutputFormat { csv, json, svg };
enum class Preset { none, fig1, fig2 };

// Everything a command run needs; mirrors the JSON config file, with
// command-line flags taking precedence over file values.
struct RunConfig {
    ModelConfig model{1.0, 1.0, 0.0, 0.0};
    int n_max = 2;
    int two_j_max = 7;          // j <= 7/2
    OutputFormat format = OutputFormat::csv;
    Preset preset = Preset::none;
    bool force = false;         // permit ordering-unsafe couplings
    int grid_points = 600;
    double r_max = 0.0;         // 0 = automatic truncation radius
    std::string out_path;       // empty = stdout
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitVerification = 2;

// Locale-independent decimal text with 17 significant digits.
std::string format_number(double value);

// "7/2", "3.5", or "3" -> twice the value, floored to an integer.
int parse_two_j(const std::string& text);

// Entry point shared by the binary and the tests; args excludes the program
// name. Returns one of the kExit* codes.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fbosc::cli

#endif
