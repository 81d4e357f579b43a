#pragma once

// Inequality parameters (alpha, p) on the fundamental domain (0, 1/2) x (2, inf).

namespace sckn {

/// Points with |lambda| below this are rejected: the Gegenbauer norm carries Gamma(lambda)^-2.
inline constexpr double kLambdaEps = 1e-3;

/// Validated parameter point with its derived exponents.
struct ParameterPoint {
    double alpha = 0.0;
    double p = 0.0;
    double beta = 0.0;    // alpha - 2/p
    double n = 0.0;       // 2p/(p-2)
    double lambda = 0.0;  // (n-3)/2, Gegenbauer index
};

/// Record of the symmetries used to bring a raw alpha into (0, 1/2).
struct ReductionTrace {
    int k_shift = 0;          // alpha -> alpha + k_shift
    bool conjugated = false;  // then alpha -> -alpha
};

struct Exponents {
    double n;
    double lambda;
};

struct ReducedPoint {
    ParameterPoint point;
    ReductionTrace trace;
};

/// n = 2p/(p-2), lambda = (n-3)/2. Throws DomainError for p <= 2.
Exponents derived_exponents(double p);

/// Throws DomainError outside (0,1/2) x (2,inf) and DegenerateBasisError when |lambda| < kLambdaEps.
ParameterPoint validate(double alpha, double p);

/// Integer shift into (-1/2, 1/2), then complex conjugation if negative.
ReducedPoint reduce_parameters(double alpha_raw, double p);

/// Applies a trace to a raw alpha; reproduces the reduced alpha bit for bit.
double apply_trace(double alpha_raw, const ReductionTrace& trace);

}  // namespace sckn
