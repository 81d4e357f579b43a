#pragma once

// Parameter-space sweeps: sign maps, boundary bisection and truncation convergence.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sckn/params.hpp"
#include "sckn/regions.hpp"

namespace sckn::sweep {

inline constexpr double kSignTol = 1e-9;
inline constexpr double kConvTol = 1e-8;
// Relative part of the convergence test: successive truncations converge slowly near
// the boundary, so a fixed absolute gap alone would mark nearly every row inconclusive.
inline constexpr double kConvRel = 0.25;

enum class NumericSign { Negative, NonNegative, Inconclusive };

std::string_view to_string(NumericSign sign);

struct GridSpec {
    std::pair<double, double> alpha_range{0.02, 0.48};
    std::pair<double, double> p_range{2.1, 14.0};
    int n_alpha = 100;
    int n_p = 100;
    int N = 40;
    double exclude_band = 0.05;  // half-width around p = 6, where lambda = 0
};

/// Throws DomainError for ranges outside (0, 1/2) x (2, inf), empty counts or N < 4.
void validate_grid(const GridSpec& grid);

/// Evenly spaced samples including both ends (a single sample sits at lo).
std::vector<double> alpha_samples(const GridSpec& grid);
/// As alpha_samples, with the band |p - 6| < exclude_band removed.
std::vector<double> p_samples(const GridSpec& grid);

struct SweepRow {
    double alpha = 0.0;
    double p = 0.0;
    int N = 0;  // truncation the reported value comes from (2 grid.N after a re-solve)
    double lambda_min = 0.0;
    regions::RegionLabel analytic_label;
    NumericSign numeric_sign = NumericSign::Inconclusive;
    bool converged = false;
    std::optional<std::string> error;
};

bool is_converged(double lambda, double lambda_half);
NumericSign numeric_sign(double lambda, bool converged);

/// One grid point: lambda at N and N/2, re-solved at 2N when not converged and not negative.
/// Solver errors are recorded in the row.
SweepRow evaluate(double alpha, double p, int N);

/// Worker count: hardware concurrency capped by SCKN_THREADS when set.
unsigned thread_count();

/// Rows sorted by (p, alpha); byte-identical across runs regardless of thread count.
std::vector<SweepRow> sign_map(const GridSpec& grid);
std::vector<SweepRow> eigenvalue_surface(const GridSpec& grid);

struct Bracket {
    double lo = 0.0;  // stable side: lambda >= -kSignTol
    double hi = 0.0;  // unstable side
    double lambda_lo = 0.0;
    double lambda_hi = 0.0;
    int steps = 0;
};

/// Bisection in alpha at fixed p between 0.01 and 0.49. Throws BracketError when the
/// endpoint signs coincide.
Bracket boundary_bisect(double p, int N, double tol_alpha);

/// Bisection in p at fixed alpha between p_lo (stable) and p_hi (unstable).
Bracket boundary_bisect_p(double alpha, int N, double tol_p, double p_lo, double p_hi);

struct ConvergenceEntry {
    int N = 0;
    double lambda_min = 0.0;
    bool converged = false;  // |lambda - previous| < kConvTol; false for the first entry
};

/// Throws DomainError if N_list decreases.
std::vector<ConvergenceEntry> convergence_study(const ParameterPoint& point, const std::vector<int>& N_list);

inline constexpr std::string_view kCsvHeader = "alpha,p,N,lambda_min,analytic_label,numeric_sign,converged";

/// 17 significant digits, LF endings, header always present.
std::string format_double(double x);
void write_csv(const std::vector<SweepRow>& rows, std::ostream& out);
void write_json(const std::vector<SweepRow>& rows, std::ostream& out);

}  // namespace sckn::sweep
