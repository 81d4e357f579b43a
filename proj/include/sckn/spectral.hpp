#pragma once

// Smallest eigenpairs of symmetric matrices, the finite-difference discretization of the
// linearized operator A on a Dirichlet box, and eigenvector reconstruction on the s-line.

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "sckn/assembly.hpp"
#include "sckn/params.hpp"

namespace sckn::spectral {

enum class Method { DenseQL, Lanczos };

std::string_view to_string(Method method);

/// Dense path up to this dimension (256 per block); Lanczos beyond.
inline constexpr Eigen::Index kDenseLimit = 512;

struct SpectralResult {
    double lambda_min = 0.0;
    Eigen::VectorXd vector;  // unit l2 norm, largest-magnitude entry positive
    double residual = 0.0;   // ||A v - lambda v||_2
    Method method = Method::DenseQL;
    int N = 0;               // per-block truncation, 0 when not from a stability matrix
    int iterations = 0;
};

// --- dense building blocks -------------------------------------------------------------

/// Householder reduction of a symmetric matrix to tridiagonal form. On return `q` holds the
/// orthogonal transform (a = q T q^T) when accumulate is set; diag/sub hold T, sub(0) = 0.
void householder_tridiagonalize(Eigen::MatrixXd& q, Eigen::VectorXd& diag, Eigen::VectorXd& sub,
                                bool accumulate = true);

/// Implicit-shift QL on a symmetric tridiagonal matrix. `sub(i)` couples rows i-1 and i.
/// Eigenvalues land in diag (unsorted); if `vectors` is given it is rotated in place.
/// Throws ConvergenceError after 60 sweeps on one eigenvalue.
void tridiagonal_ql(Eigen::VectorXd& diag, Eigen::VectorXd& sub, Eigen::MatrixXd* vectors);

/// Throws DimensionError for non-square or non-symmetric (beyond 1e-12 relative) input,
/// ConvergenceError if the residual bound 1e-8 max(1, |lambda|) is not met.
SpectralResult smallest_eigenpair(const Eigen::MatrixXd& matrix, double tol = 1e-10,
                                  std::optional<Method> method = std::nullopt);

/// Eigenvalue only, dense path; cheaper than smallest_eigenpair.
double smallest_eigenvalue(const Eigen::MatrixXd& matrix);

/// Lanczos with full reorthogonalization from a fixed start vector.
SpectralResult lanczos_smallest(const Eigen::MatrixXd& matrix, double tol = 1e-10);

// --- stability matrix entry points ---------------------------------------------------

/// Smallest eigenpair of the L2-orthonormalized stability matrix (see StabilityMatrix).
SpectralResult solve(const assembly::StabilityMatrix& m, std::optional<Method> method = std::nullopt);

/// lambda_min of the orthonormalized matrix at truncation N.
double stability_eigenvalue(const ParameterPoint& point, int N);

/// lambda_min of M itself in the coefficient l2 metric. Same sign as stability_eigenvalue.
double l2_smallest_eigenvalue(const assembly::StabilityMatrix& m);

// --- banded symmetric matrices ---------------------------------------------------------

/// Symmetric band matrix; upper(i, d) = A(i, i + d) for d = 0..bandwidth.
class BandMatrix {
public:
    BandMatrix(Eigen::Index n, int bandwidth);

    Eigen::Index size() const { return n_; }
    int bandwidth() const { return bw_; }
    double& at(Eigen::Index i, int d) { return data_[static_cast<std::size_t>(i * (bw_ + 1) + d)]; }
    double at(Eigen::Index i, int d) const { return data_[static_cast<std::size_t>(i * (bw_ + 1) + d)]; }

    Eigen::VectorXd multiply(const Eigen::VectorXd& x) const;
    Eigen::MatrixXd to_dense() const;

    /// Number of eigenvalues strictly below sigma (inertia of the LDL^T pivots of A - sigma I).
    Eigen::Index count_below(double sigma) const;

    /// Solves (A - sigma I) x = b; A - sigma I must be definite.
    Eigen::VectorXd solve_shifted(double sigma, const Eigen::VectorXd& b) const;

    std::pair<double, double> gershgorin() const;

private:
    Eigen::Index n_;
    int bw_;
    std::vector<double> data_;
};

/// Bisection on the inertia count to relative 1e-14, then inverse iteration for the vector.
SpectralResult smallest_eigenpair_band(const BandMatrix& band);

// --- finite-difference oracle ----------------------------------------------------------

struct FdSpec {
    double L = 60.0;  // half-width of the s-interval
    int grid = 4000;  // interior points per component
};

/// Throws DomainError unless grid >= 1000 and L * rate >= 25.
void check_fd_spec(const ParameterPoint& point, const FdSpec& spec);

/// Three-point discretization of A with Dirichlet walls at +-L, h = 2L/(grid+1).
/// Potentials are stored per grid node; the matrix is assembled with band().
struct FdOperator {
    int grid = 0;
    double h = 0.0;
    double L = 0.0;
    Eigen::VectorXd upper;     // (1+alpha)^2 - (p/2)|phi*|^{p-2}
    Eigen::VectorXd lower;     // (1-alpha)^2 - (p/2)|phi*|^{p-2}
    Eigen::VectorXd coupling;  // -((p-2)/2)|phi*|^{p-2}

    /// Interleaved (upper_i, lower_i) ordering, bandwidth 2, symmetric by construction.
    BandMatrix band() const;
    /// Block ordering (all upper nodes, then all lower nodes).
    Eigen::MatrixXd to_dense() const;
    /// Tridiagonal single-component operator -d^2 + potential.
    BandMatrix component(const Eigen::VectorXd& potential) const;
    std::vector<double> nodes() const;
};

FdOperator fd_operator(const ParameterPoint& point, const FdSpec& spec);

struct FdResult {
    SpectralResult result;     // at spec.grid; vector in block ordering
    double refined = 0.0;      // lambda_min at 2 grid + 1 points (step exactly h/2)
    double extrapolated = 0.0; // Richardson, second order
};

FdResult fd_smallest_eigenvalue(const ParameterPoint& point, const FdSpec& spec);

// --- reconstruction --------------------------------------------------------------------

struct Profiles {
    std::vector<double> upper;  // |phi_1(s)|
    std::vector<double> lower;  // |phi_2(s)|
};

/// Converts the orthonormal coefficient vector of `result` back to Gegenbauer coefficients,
/// evaluates phi_i(s) = phi*(s) sum_k w_{i,k} C_k(z(s)), and scales both components by one
/// common factor so that the largest value is 1.
Profiles eigenvector_to_s_profile(const SpectralResult& result, const ParameterPoint& point,
                                  std::span<const double> s_grid);

/// Raw Gegenbauer coefficients (upper block then lower block) of an orthonormal-basis vector.
Eigen::VectorXd gegenbauer_coefficients(const SpectralResult& result, const ParameterPoint& point);

}  // namespace sckn::spectral
