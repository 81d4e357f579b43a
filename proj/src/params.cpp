#include "sckn/params.hpp"

#include <cmath>
#include <string>

#include "sckn/errors.hpp"

namespace sckn {

Exponents derived_exponents(double p) {
    if (!(p > 2.0) || !std::isfinite(p)) {
        throw DomainError("p must satisfy p > 2 (got " + std::to_string(p) + ")");
    }
    const double n = 2.0 * p / (p - 2.0);
    return {n, 0.5 * (n - 3.0)};
}

ParameterPoint validate(double alpha, double p) {
    if (!(alpha > 0.0 && alpha < 0.5)) {
        throw DomainError("alpha must lie in (0, 1/2) (got " + std::to_string(alpha) + ")");
    }
    const auto [n, lambda] = derived_exponents(p);
    if (std::abs(lambda) < kLambdaEps) {
        throw DegenerateBasisError("|lambda| = " + std::to_string(std::abs(lambda)) +
                                   " below 1e-3 (p too close to 6)");
    }
    ParameterPoint pt;
    pt.alpha = alpha;
    pt.p = p;
    pt.beta = alpha - 2.0 / p;
    pt.n = n;
    pt.lambda = lambda;
    return pt;
}

double apply_trace(double alpha_raw, const ReductionTrace& trace) {
    const double shifted = alpha_raw + static_cast<double>(trace.k_shift);
    return trace.conjugated ? -shifted : shifted;
}

ReducedPoint reduce_parameters(double alpha_raw, double p) {
    if (!std::isfinite(alpha_raw)) {
        throw DomainError("alpha must be finite");
    }
    if (alpha_raw == std::floor(alpha_raw)) {
        throw DomainError("integer alpha is excluded (got " + std::to_string(alpha_raw) + ")");
    }
    ReductionTrace trace;
    trace.k_shift = -static_cast<int>(std::lround(alpha_raw));
    trace.conjugated = alpha_raw + static_cast<double>(trace.k_shift) < 0.0;
    const double reduced = apply_trace(alpha_raw, trace);
    if (!(reduced > 0.0 && reduced < 0.5)) {
        throw DomainError("alpha reduces onto the boundary {0, 1/2} (got " +
                          std::to_string(alpha_raw) + ")");
    }
    return {validate(reduced, p), trace};
}

}  // namespace sckn
