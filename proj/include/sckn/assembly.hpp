#pragma once

// Truncated stability matrix M in the Gegenbauer basis.
//
// Block order is (upper component degrees 0..N-1, lower component degrees 0..N-1). The
// quadratic form w^T M w equals <phi, A phi> for phi_i(s) = phi*(s) sum_k w_{i,k} C_k(z(s)),
// z(s) = tanh(rate s).

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>

#include "sckn/gegenbauer.hpp"
#include "sckn/params.hpp"

namespace sckn::assembly {

inline constexpr double kAsymmetryGate = 1e-8;

struct StabilityMatrix {
    ParameterPoint point;
    int N = 0;
    Eigen::MatrixXd data;    // 2N x 2N, exactly symmetric
    double asymmetry = 0.0;  // ||X - X^T||_F / ||X||_F before symmetrization
    Eigen::VectorXd gram;    // diagonal L2 Gram matrix: prefactor * (norm, norm)

    /// D^{-1/2} M D^{-1/2} with D = gram: M written in an L2-orthonormal basis.
    /// Its eigenvalues are Rayleigh-Ritz values of the operator A.
    Eigen::MatrixXd orthonormal() const;
};

/// (p alpha^2/2)^{(n-4)/2} p alpha / (p-2).
double prefactor(const ParameterPoint& point);

/// Throws DimensionError if blocks are smaller than N or built for another lambda,
/// BuildError if the pre-symmetrization asymmetry reaches kAsymmetryGate.
StabilityMatrix assemble(const ParameterPoint& point, const gegenbauer::OperatorBlocks& blocks, int N);

/// Builds the blocks for lambda(point) and assembles.
StabilityMatrix assemble(const ParameterPoint& point, int N);

double quadratic_form(const StabilityMatrix& m, const Eigen::VectorXd& w);

// Binary dump: 32-byte header then (2N)^2 row-major little-endian doubles.
//   bytes 0-7   magic "SCKNMAT1"
//   bytes 8-15  uint64 N (per block)
//   bytes 16-23 double alpha
//   bytes 24-31 double p
inline constexpr char kDumpMagic[8] = {'S', 'C', 'K', 'N', 'M', 'A', 'T', '1'};

void write_binary(const StabilityMatrix& m, std::ostream& out);

struct MatrixDump {
    std::uint64_t N = 0;
    double alpha = 0.0;
    double p = 0.0;
    Eigen::MatrixXd data;
};

MatrixDump read_binary(std::istream& in);

}  // namespace sckn::assembly
