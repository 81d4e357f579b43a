#pragma once

// Self-checks run by `sckn oracle`: recurrence matrices against quadrature, the Gegenbauer
// eigenvalue against finite differences, and closed-form sech^2 bound states against
// finite differences.

#include <string>
#include <vector>

#include "sckn/params.hpp"

namespace sckn::oracles {

struct Check {
    std::string name;
    double deviation = 0.0;
    double tolerance = 0.0;
    bool pass() const { return deviation <= tolerance; }
};

/// lambda in {0.3, 0.5, 1.2}, N = 16: every entry of G, z d/dz, B and the norms, plus the
/// Legendre identities at lambda = 1/2. Relative 1e-9, absolute 1e-12 on structural zeros.
std::vector<Check> gegenbauer_checks();

/// Ten points across the three regions; sign agreement and 5% relative agreement for
/// |lambda| > 1e-4 between N = 80 and the Richardson-extrapolated finite differences.
std::vector<ParameterPoint> cross_oracle_points();
std::vector<Check> fd_checks();

/// Ground energy of -d^2 + offset - depth sech^2(rate s) from the closed form and from
/// finite differences.
double poschl_teller_fd(double depth, double rate, double offset, double L, int grid);
std::vector<Check> poschl_teller_checks();

/// Largest deviation/tolerance ratio; the name of the worst check is written to `worst`.
double worst_ratio(const std::vector<Check>& checks, std::string* worst);

}  // namespace sckn::oracles
