#pragma once

// Closed-form symmetry / symmetry-breaking conditions on (alpha, p).

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sckn/params.hpp"

namespace sckn::regions {

enum class Region { ProvenSymmetry, ProvenBreaking, Undecided };
enum class Source { CorollaryCondition, RedTest, BlueEnvelope };

std::string_view to_string(Region region);
std::string_view to_string(Source source);

/// Signed distances to each condition; positive means the condition holds.
struct Margins {
    double symmetry = 0.0;   // bound - p
    std::optional<double> corollary;  // rhs - lhs; empty on a negative radicand
    double red = 0.0;        // p - threshold
    double blue = 0.0;       // max_t (lhs - rhs)
};

struct RegionLabel {
    Region tag = Region::Undecided;
    std::vector<Source> sources;  // every breaking source that fired, in enum order
    std::optional<std::string> corollary_error;
    Margins margins;

    bool has(Source s) const;
};

/// p < (2/alpha) sqrt(1 - 3 alpha^2), strict.
bool in_symmetry_region(const ParameterPoint& point);
double symmetry_curve_p(double alpha);

/// Corollary breaking inequality exactly as printed. Throws RadicandError when
/// p^4 - alpha^2 (p-2)^2 (p+2)(3p-2) < 0.
bool in_breaking_region_corollary(const ParameterPoint& point);
double corollary_margin(const ParameterPoint& point);

/// Non-negativity threshold of the first test direction.
double red_threshold(double alpha);
bool red_test_instability(const ParameterPoint& point);

/// lhs - rhs of the t-dependent positivity condition. Throws DomainError for t outside [0,1].
double blue_margin(const ParameterPoint& point, double t);
bool blue_test_instability(const ParameterPoint& point, double t);

struct EnvelopeResult {
    bool unstable = false;
    std::optional<double> t_star;  // violating t with the largest margin
    double t_best = 0.0;
    double margin = 0.0;           // blue_margin at t_best
};

/// Uniform scan over t_samples points, then golden-section refinement to 1e-10 in t.
EnvelopeResult blue_envelope_instability(const ParameterPoint& point, int t_samples = 101);

RegionLabel classify(const ParameterPoint& point);

/// alpha with symmetry_curve_p(alpha) = p, by bisection to 1e-10.
double alpha_on_symmetry_curve(double p);

/// Smallest alpha at which the blue envelope fires at this p, by bisection to 1e-10.
double alpha_on_blue_envelope(double p);

/// Smallest p at which the red test fires for this alpha (the printed threshold).
double p_on_red_threshold(double alpha);

}  // namespace sckn::regions
