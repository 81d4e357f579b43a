#pragma once

// Gegenbauer basis C_k^lambda and the operator matrices acting on coefficient vectors.
//
// Orientation: every matrix maps coefficients of the input polynomial (column index) to
// coefficients of the output polynomial (row index), i.e. column k holds the expansion of
// Op[C_k]. The quadrature oracle below fixes this; with it N*G and N*G*(B+2A) are symmetric.

#include <Eigen/Dense>
#include <vector>

namespace sckn::gegenbauer {

/// Coefficients of z^2 C_k = eta2 C_{k+2} + eta1 C_k + eta0 C_{k-2}.
struct Eta {
    double eta0;
    double eta1;
    double eta2;
};

Eta eta_coeffs(int k, double lambda);

/// C_k^lambda(z) by the upward three-term recurrence.
double eval(int k, double lambda, double z);

/// C_0 .. C_{count-1} at z.
std::vector<double> eval_all(int count, double lambda, double z);

/// d^order/dz^order C_k^lambda(z), using C_k' = 2 lambda C_{k-1}^{lambda+1}. order in {0,1,2}.
double derivative(int k, double lambda, double z, int order);

struct BasisSpec {
    double lambda = 0.5;
    int size = 4;
};

/// Throws DomainError for lambda <= -1/2, |lambda| < kLambdaEps, or size < 4.
BasisSpec make_basis_spec(double lambda, int size);

struct OperatorBlocks {
    double lambda = 0.0;
    int size = 0;
    Eigen::MatrixXd g;      // multiplication by (1 - z^2)
    Eigen::MatrixXd zdz;    // z d/dz, upper triangular
    Eigen::VectorXd ultra;  // ultraspherical eigenvalues k (k + 2 lambda)
    Eigen::VectorXd norm;   // squared norms of C_k in L2((1-z^2)^{lambda-1/2})
};

/// Throws OverflowError if a norm leaves double range.
OperatorBlocks build_blocks(const BasisSpec& spec);

/// log of the squared norm of C_k^lambda (Gamma ratios in log space).
double log_norm(int k, double lambda);

enum class OracleKind { Gmul, ZDz, Ultra, Norm };

/// Integrals int_{-1}^{1} C_j Op[C_k] (1-z^2)^w dz on a fixed Gauss-Jacobi rule with 4N+64 nodes,
/// evaluated in long double and rounded once.
class EntryOracle {
public:
    EntryOracle(const BasisSpec& spec, double weight_power);

    double entry(OracleKind kind, int j, int k) const;

    const BasisSpec& spec() const { return spec_; }

private:
    BasisSpec spec_;
    double weight_power_;
    std::vector<long double> nodes_;
    std::vector<long double> weights_;
    // Per node: C_k, C_k', C_k'' for k < size.
    std::vector<std::vector<long double>> value_;
    std::vector<std::vector<long double>> d1_;
    std::vector<std::vector<long double>> d2_;
};

double quadrature_entry_oracle(OracleKind kind, int j, int k, const BasisSpec& spec,
                               double weight_power);

}  // namespace sckn::gegenbauer
