#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "sckn/errors.hpp"
#include "sckn/gegenbauer.hpp"
#include "sckn/oracles.hpp"

using namespace sckn;
using gegenbauer::OracleKind;

namespace {

// Explicit sum C_n^l(z) = sum_k (-1)^k Gamma(n-k+l) / (Gamma(l) k! (n-2k)!) (2z)^{n-2k}.
double series(int n, double l, double z) {
    double sum = 0.0;
    for (int k = 0; 2 * k <= n; ++k) {
        const double term = std::exp(std::lgamma(n - k + l) - std::lgamma(l) - std::lgamma(k + 1.0) -
                                     std::lgamma(n - 2.0 * k + 1.0));
        sum += (k % 2 ? -1.0 : 1.0) * term * std::pow(2.0 * z, n - 2 * k);
    }
    return sum;
}

}  // namespace

TEST_CASE("eta coefficients") {
    auto e = gegenbauer::eta_coeffs(0, 0.5);
    CHECK(e.eta0 == 0.0);
    CHECK(e.eta1 == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(e.eta2 == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    for (const double l : {0.3, 1.0, 2.7}) {
        e = gegenbauer::eta_coeffs(0, l);
        CHECK(e.eta1 == doctest::Approx(1.0 / (2.0 * (1.0 + l))).epsilon(1e-14));
        CHECK(e.eta2 == doctest::Approx(1.0 / (2.0 * l * (l + 1.0))).epsilon(1e-14));
    }
    CHECK(gegenbauer::eta_coeffs(1, 0.5).eta0 == 0.0);
    CHECK_THROWS_AS(gegenbauer::eta_coeffs(0, 0.0), DomainError);
    CHECK_THROWS_AS(gegenbauer::eta_coeffs(-1, 0.5), DomainError);
}

TEST_CASE("z^2 C_k identity pointwise") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (const double l : {-0.3, 0.3, 1.2}) {
        for (int k = 0; k <= 18; ++k) {
            const auto e = gegenbauer::eta_coeffs(k, l);
            for (int i = 0; i < 10; ++i) {
                const double z = u(rng);
                const double lhs = z * z * gegenbauer::eval(k, l, z);
                const double rhs = e.eta2 * gegenbauer::eval(k + 2, l, z) + e.eta1 * gegenbauer::eval(k, l, z) +
                                   e.eta0 * gegenbauer::eval(k - 2, l, z);
                CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11).scale(1.0));
            }
        }
    }
}

TEST_CASE("evaluation") {
    CHECK(gegenbauer::eval(0, 1.7, 0.3) == 1.0);
    for (double z = -1.0; z <= 1.0; z += 0.1) {
        CHECK(gegenbauer::eval(2, 0.5, z) == doctest::Approx((3.0 * z * z - 1.0) / 2.0).epsilon(1e-15).scale(1.0));
    }
    CHECK(gegenbauer::eval(5, 1.2, 0.3) == doctest::Approx(series(5, 1.2, 0.3)).epsilon(1e-13));
    const auto all = gegenbauer::eval_all(12, 0.8, -0.45);
    for (int k = 0; k < 12; ++k) CHECK(all[k] == gegenbauer::eval(k, 0.8, -0.45));
}

TEST_CASE("three-term recurrence to 1e-12 for k <= 20 at 100 random z") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (const double l : {0.3, 0.5, 1.2}) {
        for (int i = 0; i < 100; ++i) {
            const double z = u(rng);
            for (int k = 1; k <= 20; ++k) {
                const double lhs = z * gegenbauer::eval(k, l, z);
                const double rhs = ((k + 1.0) * gegenbauer::eval(k + 1, l, z) +
                                    (k - 1.0 + 2.0 * l) * gegenbauer::eval(k - 1, l, z)) / (2.0 * (k + l));
                CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
            }
        }
    }
}

TEST_CASE("derivatives against series differences") {
    const double h = 1e-5;
    for (const double z : {-0.7, 0.1, 0.55}) {
        for (int k = 0; k <= 8; ++k) {
            const double d1 = (series(k, 1.2, z + h) - series(k, 1.2, z - h)) / (2.0 * h);
            const double d2 = (series(k, 1.2, z + h) - 2.0 * series(k, 1.2, z) + series(k, 1.2, z - h)) / (h * h);
            CHECK(gegenbauer::derivative(k, 1.2, z, 1) == doctest::Approx(d1).epsilon(1e-7).scale(1.0));
            CHECK(gegenbauer::derivative(k, 1.2, z, 2) == doctest::Approx(d2).epsilon(1e-3).scale(10.0));
        }
    }
    CHECK_THROWS_AS(gegenbauer::derivative(2, 1.0, 0.0, 3), DomainError);
}

TEST_CASE("basis spec validation") {
    CHECK_THROWS_AS(gegenbauer::make_basis_spec(-0.5, 8), DomainError);
    CHECK_THROWS_AS(gegenbauer::make_basis_spec(5e-4, 8), DegenerateBasisError);
    CHECK_THROWS_AS(gegenbauer::make_basis_spec(0.5, 3), DomainError);
    CHECK_NOTHROW(gegenbauer::make_basis_spec(-0.4, 4));
}

TEST_CASE("block structure") {
    for (const double l : {-0.3, 0.3, 0.5, 1.2}) {
        const auto b = gegenbauer::build_blocks(gegenbauer::make_basis_spec(l, 16));
        CHECK(b.ultra(0) == 0.0);
        for (int j = 0; j < 16; ++j) {
            CHECK(b.norm(j) > 0.0);
            CHECK(b.ultra(j) == j * (j + 2.0 * l));
            for (int k = 0; k < 16; ++k) {
                const int d = std::abs(j - k);
                if (d != 0 && d != 2) CHECK(b.g(j, k) == 0.0);
                if (j > k || (j + k) % 2) CHECK(b.zdz(j, k) == 0.0);
            }
        }
        // N G is symmetric: the Gram metric makes multiplication by (1 - z^2) self-adjoint
        const Eigen::MatrixXd ng = b.norm.asDiagonal() * b.g;
        CHECK((ng - ng.transpose()).cwiseAbs().maxCoeff() <= 1e-13 * ng.cwiseAbs().maxCoeff());
    }
    const auto legendre = gegenbauer::build_blocks(gegenbauer::make_basis_spec(0.5, 8));
    for (int k = 0; k < 8; ++k) {
        CHECK(legendre.norm(k) == doctest::Approx(2.0 / (2 * k + 1)).epsilon(1e-14));
        CHECK(legendre.ultra(k) == k * (k + 1.0));
    }
}

TEST_CASE("ultraspherical operator acts diagonally") {
    const auto b = gegenbauer::build_blocks(gegenbauer::make_basis_spec(0.7, 10));
    const Eigen::MatrixXd op = b.ultra.asDiagonal();
    for (int k = 0; k < 10; ++k) {
        const Eigen::VectorXd e = Eigen::VectorXd::Unit(10, k);
        const Eigen::VectorXd out = op * e;
        CHECK(out(k) == k * (k + 1.4));
        CHECK(out.cwiseAbs().sum() == std::abs(out(k)));
    }
}

TEST_CASE("norm overflow is reported") {
    CHECK_THROWS_AS(gegenbauer::build_blocks(gegenbauer::make_basis_spec(1e6, 128)), OverflowError);
}

TEST_CASE("quadrature oracle examples") {
    const auto spec = gegenbauer::make_basis_spec(0.5, 8);
    CHECK(gegenbauer::quadrature_entry_oracle(OracleKind::Norm, 0, 0, spec, 0.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(std::abs(gegenbauer::quadrature_entry_oracle(OracleKind::Norm, 1, 3, spec, 0.0)) < 1e-12);
    CHECK(gegenbauer::quadrature_entry_oracle(OracleKind::Ultra, 2, 2, spec, 0.0) ==
          doctest::Approx(6.0 * 2.0 / 5.0).epsilon(1e-14));
    const gegenbauer::EntryOracle o(spec, 0.0);
    CHECK_THROWS_AS(o.entry(OracleKind::Gmul, 8, 0), DimensionError);
    CHECK_THROWS_AS(gegenbauer::EntryOracle(spec, -1.0), DomainError);
}

TEST_CASE("every entry matches the quadrature oracle") {
    const auto checks = oracles::gegenbauer_checks();
    CHECK(checks.size() == 26);
    for (const auto& c : checks) {
        INFO(c.name << " deviation " << c.deviation);
        CHECK(c.pass());
    }
}
