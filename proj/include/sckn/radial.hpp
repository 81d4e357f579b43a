#pragma once

// Closed-form radial optimizer on the cylinder and the Poschl-Teller ground energies
// behind the analytic instability tests.

#include <span>

#include "sckn/params.hpp"

namespace sckn::radial {

/// phi*(s) = amplitude * cosh(rate s)^{-2/(p-2)}.
struct RadialProfile {
    ParameterPoint point;
    double amplitude = 0.0;  // (p alpha^2 / 2)^{1/(p-2)}
    double rate = 0.0;       // (p-2) alpha / 2
};

RadialProfile make_profile(const ParameterPoint& point);

/// log cosh(x), finite for every real x.
double log_cosh(double x);

double phi_star(const RadialProfile& profile, double s);

/// d^2/ds^2 phi*(s) from the closed form.
double phi_star_second_derivative(const RadialProfile& profile, double s);

/// |phi*|^{p-2} = (p alpha^2/2) sech^2(rate s), evaluated without overflow.
double weight(const RadialProfile& profile, double s);

/// max over the grid of |-phi*'' + alpha^2 phi* - phi*^{p-1}|.
double ode_residual(const RadialProfile& profile, std::span<const double> s_grid);

/// C*_{alpha,p} = ||phi*||_{L^p(R)}^{p-2} / (2 pi)^{p/2 - 1}.
/// The window [-window_shift - L, -window_shift + L], L = 40/rate, must contain the profile.
double radial_constant(const RadialProfile& profile, double window_shift = 0.0);

/// Lowest eigenvalue of -d^2/ds^2 + offset - depth sech^2(rate s).
double poschl_teller_ground_energy(double depth, double rate, double offset);

/// Decay exponent sigma of the ground state sech^sigma(rate s) of the same operator.
double poschl_teller_ground_exponent(double depth, double rate);

}  // namespace sckn::radial
