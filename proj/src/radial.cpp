#include "sckn/radial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sckn/errors.hpp"
#include "sckn/quadrature.hpp"

namespace sckn::radial {

RadialProfile make_profile(const ParameterPoint& point) {
    RadialProfile profile;
    profile.point = point;
    const double p = point.p;
    const double a = point.alpha;
    profile.amplitude = std::pow(p * a * a / 2.0, 1.0 / (p - 2.0));
    profile.rate = (p - 2.0) * a / 2.0;
    return profile;
}

double log_cosh(double x) {
    const double ax = std::abs(x);
    return ax + std::log1p(std::exp(-2.0 * ax)) - std::numbers::ln2;
}

double phi_star(const RadialProfile& profile, double s) {
    const double m = 2.0 / (profile.point.p - 2.0);
    return profile.amplitude * std::exp(-m * log_cosh(profile.rate * s));
}

double phi_star_second_derivative(const RadialProfile& profile, double s) {
    // phi'' = m r^2 phi ((m+1) tanh^2 - 1), m = 2/(p-2)
    const double m = 2.0 / (profile.point.p - 2.0);
    const double r = profile.rate;
    const double t = std::tanh(r * s);
    return m * r * r * phi_star(profile, s) * ((m + 1.0) * t * t - 1.0);
}

double weight(const RadialProfile& profile, double s) {
    const double a = profile.point.alpha;
    return profile.point.p * a * a / 2.0 * std::exp(-2.0 * log_cosh(profile.rate * s));
}

double ode_residual(const RadialProfile& profile, std::span<const double> s_grid) {
    const double a2 = profile.point.alpha * profile.point.alpha;
    const double p = profile.point.p;
    double worst = 0.0;
    for (const double s : s_grid) {
        const double phi = phi_star(profile, s);
        const double r = -phi_star_second_derivative(profile, s) + a2 * phi - std::pow(phi, p - 1.0);
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

double radial_constant(const RadialProfile& profile, double window_shift) {
    const double p = profile.point.p;
    const double half_width = 40.0 / profile.rate;
    auto integrand = [&](double s) { return std::pow(phi_star(profile, s + window_shift), p); };
    const double lo = -window_shift - half_width;
    const double hi = -window_shift + half_width;
    // Split at the peak so the adaptive rule sees a smooth bump on each side.
    const double norm_p = quadrature::adaptive_integrate(integrand, lo, -window_shift, 1e-10) +
                          quadrature::adaptive_integrate(integrand, -window_shift, hi, 1e-10);
    const double norm = std::pow(norm_p, 1.0 / p);
    return std::pow(norm, p - 2.0) / std::pow(2.0 * std::numbers::pi, p / 2.0 - 1.0);
}

double poschl_teller_ground_exponent(double depth, double rate) {
    if (!(depth > 0.0) || !(rate > 0.0)) {
        throw DomainError("Poschl-Teller well needs positive depth and rate");
    }
    return 0.5 * (std::sqrt(1.0 + 4.0 * depth / (rate * rate)) - 1.0);
}

double poschl_teller_ground_energy(double depth, double rate, double offset) {
    const double sigma = poschl_teller_ground_exponent(depth, rate);
    return offset - rate * rate * sigma * sigma;
}

}  // namespace sckn::radial
