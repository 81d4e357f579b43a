#include "sckn/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <sstream>

#include "sckn/errors.hpp"

namespace sckn::quadrature {

namespace {

// Squared off-diagonal of the Jacobi matrix for the symmetric Jacobi weight, entry k >= 1.
template <class Real>
Real recurrence_b(int k, Real w) {
    const Real kk = k;
    const Real s = 2 * kk + 2 * w;
    return kk * (kk + 2 * w) / ((s + 1) * (s - 1));
}

// Number of eigenvalues of the Jacobi matrix strictly below x.
template <class Real>
int sturm_count(const std::vector<Real>& b, Real x) {
    int count = 0;
    Real d = -x;
    if (d < 0) ++count;
    for (std::size_t i = 1; i < b.size(); ++i) {
        if (d == 0) d = Real(1e-300);
        d = -x - b[i] / d;
        if (d < 0) ++count;
    }
    return count;
}

template <class Real>
Real moment(Real w) {
    // 2^{2w+1} Gamma(w+1)^2 / Gamma(2w+2)
    using std::exp;
    using std::lgamma;
    using std::log;
    return exp((2 * w + 1) * log(Real(2)) + 2 * lgamma(w + 1) - lgamma(2 * w + 2));
}

template <class Real>
BasicRule<Real> build_rule(int n, Real w) {
    if (n < 1) throw DomainError("quadrature rule needs at least one node");
    if (!(w > -1)) throw DomainError("weight power must exceed -1");

    // b[0] unused; b[k] couples p_{k-1} and p_k.
    std::vector<Real> b(static_cast<std::size_t>(n), Real(0));
    for (int k = 1; k < n; ++k) b[static_cast<std::size_t>(k)] = recurrence_b(k, w);

    BasicRule<Real> rule;
    rule.nodes.assign(static_cast<std::size_t>(n), Real(0));
    rule.weights.assign(static_cast<std::size_t>(n), Real(0));

    // Eigenvalue with index i (ascending) for i in the upper half; mirror the rest.
    for (int i = n / 2; i < n; ++i) {
        Real lo = 0;
        Real hi = 1;
        if (n % 2 == 0 || i != n / 2) {
            while (true) {
                const Real mid = (lo + hi) / 2;
                if (mid <= lo || mid >= hi) break;
                if (sturm_count(b, mid) > i) hi = mid; else lo = mid;
            }
        } else {
            hi = 0;  // middle node of an odd rule
        }
        const Real x = (lo + hi) / 2;
        rule.nodes[static_cast<std::size_t>(i)] = x;
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = -x;
    }

    using std::sqrt;
    const Real mu0 = moment(w);
    for (int i = n / 2; i < n; ++i) {
        const Real x = rule.nodes[static_cast<std::size_t>(i)];
        Real p_prev = 0;
        Real p = 1 / sqrt(mu0);
        Real sum = p * p;
        for (int k = 1; k < n; ++k) {
            const Real bk = sqrt(b[static_cast<std::size_t>(k)]);
            const Real bkm = k >= 2 ? sqrt(b[static_cast<std::size_t>(k - 1)]) : Real(0);
            const Real next = (x * p - bkm * p_prev) / bk;
            p_prev = p;
            p = next;
            sum += p * p;
        }
        rule.weights[static_cast<std::size_t>(i)] = 1 / sum;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = 1 / sum;
    }
    return rule;
}

}  // namespace

double jacobi_moment(double w) {
    return static_cast<double>(moment<long double>(w));
}

BasicRule<long double> gauss_jacobi_symmetric_ld(int n, long double w) {
    return build_rule<long double>(n, w);
}

Rule gauss_jacobi_symmetric(int n, double w) {
    const auto ext = build_rule<long double>(n, w);
    Rule rule;
    rule.nodes.assign(ext.nodes.begin(), ext.nodes.end());
    rule.weights.assign(ext.weights.begin(), ext.weights.end());
    return rule;
}

double adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                          double rel_tol) {
    double error = 0.0;
    double l1 = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, a, b, 30, rel_tol, &error, &l1);
    if (!std::isfinite(value) || error > rel_tol * std::abs(value)) {
        std::ostringstream msg;
        msg << "adaptive quadrature missed tolerance " << rel_tol << ": estimate " << error
            << " for value " << value;
        throw QuadratureError(msg.str());
    }
    return value;
}

}  // namespace sckn::quadrature
