#pragma once

// Command-line front end. `run` is the whole program minus process setup so that tests can
// drive it with argument vectors and string streams.

#include <iosfwd>
#include <string>
#include <string_view>

namespace sckn::cli {

enum ExitCode { kOk = 0, kDomain = 2, kSolver = 3, kOutput = 4, kOracle = 5 };

enum class Format { Csv, Json };

struct RunConfig {
    std::string command;
    double alpha = 0.25;
    double p = 9.0;
    int N = 40;
    double tol = 1e-4;
    double alpha_lo = 0.02;
    double alpha_hi = 0.48;
    double p_lo = 2.1;
    double p_hi = 14.0;
    int n_alpha = 100;
    int n_p = 100;
    double exclude_band = 0.05;
    double s_min = -10.0;
    double s_max = 10.0;
    int s_points = 401;
    std::string which = "all";
    std::string output_path = "-";
    Format format = Format::Csv;

    bool operator==(const RunConfig&) const = default;
};

/// Flat key=value lines, reals with 17 significant digits.
std::string to_config_text(const RunConfig& cfg);

/// Overrides fields of `base`. Blank lines and lines starting with '#' are skipped.
/// Throws DomainError on unknown keys or unparsable values.
RunConfig parse_config_text(std::string_view text, RunConfig base = {});

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sckn::cli
