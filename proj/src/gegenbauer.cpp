#include "sckn/gegenbauer.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sckn/errors.hpp"
#include "sckn/params.hpp"
#include "sckn/quadrature.hpp"

namespace sckn::gegenbauer {

namespace {

double nonzero(double denom, const char* what) {
    if (denom == 0.0) throw DomainError(std::string("division by zero in ") + what);
    return denom;
}

// log|Gamma(x)| and its sign without touching the global signgam.
double log_abs_gamma(double x, int& sign) {
    return ::lgamma_r(x, &sign);
}

}  // namespace

Eta eta_coeffs(int k, double lambda) {
    if (k < 0) throw DomainError("eta_coeffs needs k >= 0");
    const double kk = k;
    const double l = lambda;
    const double d0 = nonzero(kk + l, "eta (k + lambda)");
    const double d1 = nonzero(kk + 1.0 + l, "eta (k + 1 + lambda)");

    double up = (kk + 1.0) * (kk + 2.0 * l) / (2.0 * d1);
    double down = 0.0;
    if (k >= 1) {
        down = (kk - 1.0 + 2.0 * l) * kk / (2.0 * nonzero(kk - 1.0 + l, "eta (k - 1 + lambda)"));
    }
    Eta eta;
    eta.eta1 = (up + down) / (2.0 * d0);
    eta.eta2 = (kk + 1.0) * (kk + 2.0) / (4.0 * d0 * d1);
    eta.eta0 = 0.0;
    if (k >= 2) {
        eta.eta0 = (kk - 1.0 + 2.0 * l) * (kk - 2.0 + 2.0 * l) / (4.0 * d0 * (kk - 1.0 + l));
    }
    return eta;
}

template <class Real>
Real eval_t(int k, Real lambda, Real z) {
    if (k < 0) return Real(0);
    Real prev = 1;
    if (k == 0) return prev;
    Real cur = 2 * lambda * z;
    for (int m = 1; m < k; ++m) {
        const Real next = (2 * (m + lambda) * z * cur - (m - 1 + 2 * lambda) * prev) / (m + 1);
        prev = cur;
        cur = next;
    }
    return cur;
}

template <class Real>
Real derivative_t(int k, Real lambda, Real z, int order) {
    switch (order) {
        case 0: return eval_t(k, lambda, z);
        case 1: return 2 * lambda * eval_t(k - 1, lambda + 1, z);
        case 2: return 4 * lambda * (lambda + 1) * eval_t(k - 2, lambda + 2, z);
        default: throw DomainError("derivative order must be 0, 1 or 2");
    }
}

double eval(int k, double lambda, double z) {
    return eval_t<double>(k, lambda, z);
}

std::vector<double> eval_all(int count, double lambda, double z) {
    std::vector<double> out(static_cast<std::size_t>(count > 0 ? count : 0));
    if (count <= 0) return out;
    out[0] = 1.0;
    if (count == 1) return out;
    out[1] = 2.0 * lambda * z;
    for (int m = 1; m + 1 < count; ++m) {
        const auto i = static_cast<std::size_t>(m);
        out[i + 1] = (2.0 * (m + lambda) * z * out[i] - (m - 1.0 + 2.0 * lambda) * out[i - 1]) / (m + 1.0);
    }
    return out;
}

double derivative(int k, double lambda, double z, int order) {
    return derivative_t<double>(k, lambda, z, order);
}

BasisSpec make_basis_spec(double lambda, int size) {
    if (!(lambda > -0.5)) throw DomainError("Gegenbauer index must exceed -1/2");
    if (std::abs(lambda) < kLambdaEps) {
        throw DegenerateBasisError("Gegenbauer index too close to 0");
    }
    if (size < 4) throw DomainError("basis size must be at least 4");
    return {lambda, size};
}

double log_norm(int k, double lambda) {
    int s_num = 1;
    int s_lam = 1;
    int s_fact = 1;
    const double lg_num = log_abs_gamma(k + 2.0 * lambda, s_num);
    const double lg_lam = log_abs_gamma(lambda, s_lam);
    const double lg_fact = log_abs_gamma(k + 1.0, s_fact);
    const double shifted = k + lambda;
    if (s_num * (shifted > 0.0 ? 1 : -1) < 0) {
        throw DomainError("Gegenbauer norm is not positive for this index");
    }
    return std::log(std::numbers::pi) + (1.0 - 2.0 * lambda) * std::numbers::ln2 + lg_num - lg_fact -
           std::log(std::abs(shifted)) - 2.0 * lg_lam;
}

OperatorBlocks build_blocks(const BasisSpec& spec) {
    const int n = spec.size;
    const double l = spec.lambda;
    OperatorBlocks blocks;
    blocks.lambda = l;
    blocks.size = n;
    blocks.g = Eigen::MatrixXd::Zero(n, n);
    blocks.zdz = Eigen::MatrixXd::Zero(n, n);
    blocks.ultra = Eigen::VectorXd::Zero(n);
    blocks.norm = Eigen::VectorXd::Zero(n);

    for (int k = 0; k < n; ++k) {
        const Eta eta = eta_coeffs(k, l);
        blocks.g(k, k) = 1.0 - eta.eta1;
        if (k + 2 < n) blocks.g(k + 2, k) = -eta.eta2;
        if (k >= 2) blocks.g(k - 2, k) = -eta.eta0;

        blocks.zdz(k, k) = k;
        for (int j = k - 2; j >= 0; j -= 2) blocks.zdz(j, k) = 2.0 * j + 2.0 * l;

        blocks.ultra(k) = k * (k + 2.0 * l);

        const double ln = log_norm(k, l);
        if (!(std::abs(ln) < 708.0)) {
            throw OverflowError("Gegenbauer norm of degree " + std::to_string(k) +
                                " leaves double range (log = " + std::to_string(ln) + ")");
        }
        blocks.norm(k) = std::exp(ln);
    }
    return blocks;
}

EntryOracle::EntryOracle(const BasisSpec& spec, double weight_power)
    : spec_(spec), weight_power_(weight_power) {
    if (!(weight_power > -1.0)) throw DomainError("weight power must exceed -1");
    const auto rule = quadrature::gauss_jacobi_symmetric_ld(4 * spec.size + 64, weight_power);
    nodes_ = rule.nodes;
    weights_ = rule.weights;
    value_.resize(nodes_.size());
    d1_.resize(nodes_.size());
    d2_.resize(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const long double z = nodes_[i];
        const long double l = spec.lambda;
        for (int k = 0; k < spec.size; ++k) {
            value_[i].push_back(derivative_t(k, l, z, 0));
            d1_[i].push_back(derivative_t(k, l, z, 1));
            d2_[i].push_back(derivative_t(k, l, z, 2));
        }
    }
}

double EntryOracle::entry(OracleKind kind, int j, int k) const {
    if (j < 0 || k < 0 || j >= spec_.size || k >= spec_.size) {
        throw DimensionError("oracle degree out of range");
    }
    const auto ju = static_cast<std::size_t>(j);
    const auto ku = static_cast<std::size_t>(k);
    const long double two_lambda_plus_one = 2.0L * spec_.lambda + 1.0L;  // n - 2
    auto op = [&](std::size_t i) -> long double {
        const long double z = nodes_[i];
        switch (kind) {
            case OracleKind::Gmul: return (1 - z * z) * value_[i][ku];
            case OracleKind::ZDz: return z * d1_[i][ku];
            case OracleKind::Ultra:
                return -(1 - z * z) * d2_[i][ku] + two_lambda_plus_one * z * d1_[i][ku];
            case OracleKind::Norm: return value_[i][ku];
        }
        return 0;
    };
    const std::size_t n = nodes_.size();
    long double acc = 0;
    for (std::size_t i = 0; i < n / 2; ++i) {
        const std::size_t m = n - 1 - i;
        acc += weights_[i] * (value_[i][ju] * op(i) + value_[m][ju] * op(m));
    }
    if (n % 2 == 1) acc += weights_[n / 2] * value_[n / 2][ju] * op(n / 2);
    const double sum = static_cast<double>(acc);
    if (!std::isfinite(sum)) throw QuadratureError("oracle integral is not finite");
    return sum;
}

double quadrature_entry_oracle(OracleKind kind, int j, int k, const BasisSpec& spec,
                               double weight_power) {
    return EntryOracle(spec, weight_power).entry(kind, j, k);
}

}  // namespace sckn::gegenbauer
