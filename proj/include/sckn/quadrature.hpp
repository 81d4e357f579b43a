#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace sckn::quadrature {

/// Nodes and weights on [-1, 1]. Nodes are stored mirrored: node[i] == -node[n-1-i] exactly.
template <class Real>
struct BasicRule {
    std::vector<Real> nodes;
    std::vector<Real> weights;
};

struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }

    /// Sums weight-symmetric pairs first so that odd integrands cancel exactly.
    template <class F>
    double integrate(F&& f) const {
        const std::size_t n = nodes.size();
        double sum = 0.0;
        for (std::size_t i = 0; i < n / 2; ++i) {
            sum += weights[i] * (f(nodes[i]) + f(nodes[n - 1 - i]));
        }
        if (n % 2 == 1) sum += weights[n / 2] * f(nodes[n / 2]);
        return sum;
    }
};

/// n-point Gauss rule for the weight (1-z^2)^w, w > -1; exact for polynomials of degree <= 2n-1.
///
/// Nodes are the eigenvalues of the symmetric Jacobi matrix, located by Sturm-count bisection;
/// weights come from the Christoffel function 1/sum_k p_k(x)^2 of the orthonormal family.
/// Computed in extended precision and rounded.
Rule gauss_jacobi_symmetric(int n, double w);

/// The same rule kept in long double, for the matrix-entry oracle.
BasicRule<long double> gauss_jacobi_symmetric_ld(int n, long double w);

inline Rule gauss_legendre(int n) { return gauss_jacobi_symmetric(n, 0.0); }

/// Integral of (1-z^2)^w over [-1, 1].
double jacobi_moment(double w);

/// Adaptive 15-point Gauss-Kronrod on [a, b]. Throws QuadratureError when the error
/// estimate exceeds rel_tol * |result|.
double adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                          double rel_tol);

}  // namespace sckn::quadrature
