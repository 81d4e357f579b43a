#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "sckn/errors.hpp"
#include "sckn/oracles.hpp"
#include "sckn/radial.hpp"
#include "sckn/spectral.hpp"

using namespace sckn;

namespace {

std::vector<double> grid(double lo, double hi, double step) {
    std::vector<double> s;
    for (int i = 0; lo + i * step <= hi + 1e-12; ++i) s.push_back(lo + i * step);
    return s;
}

}  // namespace

TEST_CASE("profile constants and symmetry") {
    const auto prof = radial::make_profile(validate(0.25, 4.0));
    CHECK(prof.amplitude == doctest::Approx(std::sqrt(0.125)).epsilon(1e-15));
    CHECK(radial::phi_star(prof, 0.0) == doctest::Approx(0.3535533905932738).epsilon(1e-15));
    CHECK(radial::phi_star(prof, 10.0) == radial::phi_star(prof, -10.0));
    CHECK(prof.rate == doctest::Approx(0.25).epsilon(1e-15));
    double prev = radial::phi_star(prof, 0.0);
    for (double s = 0.5; s < 200.0; s += 0.5) {
        const double v = radial::phi_star(prof, s);
        CHECK(v < prev);
        prev = v;
    }
    // far tail: no overflow, underflows cleanly
    CHECK(std::isfinite(radial::phi_star(prof, 1e5)));
    CHECK(radial::phi_star(prof, 1e5) >= 0.0);
    CHECK(radial::log_cosh(1000.0) == doctest::Approx(1000.0 - std::log(2.0)).epsilon(1e-15));
}

TEST_CASE("weight is a scaled sech^2") {
    for (const auto& [a, p] : {std::pair{0.25, 4.0}, {0.1, 3.0}, {0.4, 10.0}, {0.3, 2.2}}) {
        const auto pt = validate(a, p);
        const auto prof = radial::make_profile(pt);
        for (double s = -30.0; s <= 30.0; s += 0.37) {
            const double z = std::tanh(prof.rate * s);
            const double expected = p * a * a / 2.0 * (1.0 - z * z);
            CHECK(radial::weight(prof, s) == doctest::Approx(expected).epsilon(1e-12));
            const double direct = std::pow(radial::phi_star(prof, s), p - 2.0);
            CHECK(direct == doctest::Approx(radial::weight(prof, s)).epsilon(1e-12));
        }
    }
}

TEST_CASE("ODE residual") {
    const auto s = grid(-20.0, 20.0, 0.01);
    CHECK(radial::ode_residual(radial::make_profile(validate(0.25, 4.0)), s) < 1e-10);
    CHECK(radial::ode_residual(radial::make_profile(validate(0.4, 10.0)), s) < 1e-10);
    auto broken = radial::make_profile(validate(0.25, 4.0));
    broken.amplitude *= 1.01;
    CHECK(radial::ode_residual(broken, s) > 1e-4);
}

TEST_CASE("second derivative against central differences") {
    const auto prof = radial::make_profile(validate(0.3, 5.0));
    const double h = 1e-4;
    for (double s : {-3.0, -0.7, 0.0, 1.1, 4.0}) {
        const double fd = (radial::phi_star(prof, s + h) - 2.0 * radial::phi_star(prof, s) +
                           radial::phi_star(prof, s - h)) / (h * h);
        CHECK(radial::phi_star_second_derivative(prof, s) == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("radial constant against a trapezoid oracle") {
    const auto pt = validate(0.25, 4.0);
    const auto prof = radial::make_profile(pt);
    // trapezoid on a wide window; the integrand is analytic and decays exponentially,
    // so the trapezoid rule converges geometrically
    const double L = 40.0 / prof.rate;
    const int n = 200000;
    const double h = 2.0 * L / n;
    double sum = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double v = std::pow(radial::phi_star(prof, -L + i * h), pt.p);
        sum += (i == 0 || i == n) ? 0.5 * v : v;
    }
    const double norm = std::pow(sum * h, 1.0 / pt.p);
    const double expected = std::pow(norm, pt.p - 2.0) / std::pow(2.0 * std::numbers::pi, pt.p / 2.0 - 1.0);
    CHECK(radial::radial_constant(prof) == doctest::Approx(expected).epsilon(1e-8));
    CHECK(radial::radial_constant(prof, 3.7) == doctest::Approx(radial::radial_constant(prof)).epsilon(1e-10));
}

TEST_CASE("radial constant vanishes as alpha -> 0 and grows with alpha") {
    const double p = 4.0;
    double prev = INFINITY;
    for (const double a : {0.1, 0.01, 0.001}) {
        const double c = radial::radial_constant(radial::make_profile(validate(a, p)));
        CHECK(c < prev);
        prev = c;
    }
    CHECK(prev < 1e-2);
    prev = 0.0;
    for (double a = 0.05; a < 0.46; a += 0.05) {
        const double c = radial::radial_constant(radial::make_profile(validate(a, 5.0)));
        CHECK(c > prev);
        prev = c;
    }
}

TEST_CASE("Poschl-Teller closed form") {
    CHECK(radial::poschl_teller_ground_energy(2.0, 1.0, 0.0) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(radial::poschl_teller_ground_energy(1e-12, 1.0, 0.7) == doctest::Approx(0.7).epsilon(1e-10));
    CHECK_THROWS_AS(radial::poschl_teller_ground_energy(0.0, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(radial::poschl_teller_ground_energy(1.0, -1.0, 0.0), DomainError);

    // The first-component operator at (0.25, 9): offset (1-alpha)^2, depth (p/2) p alpha^2 / 2.
    const auto pt = validate(0.25, 9.0);
    const auto prof = radial::make_profile(pt);
    const double depth = pt.p / 2.0 * pt.p * pt.alpha * pt.alpha / 2.0;
    const double offset = (1.0 - pt.alpha) * (1.0 - pt.alpha);
    const double e = radial::poschl_teller_ground_energy(depth, prof.rate, offset);
    CHECK(e < 0.0);
    spectral::FdOperator op;
    op.grid = 4000;
    op.L = 60.0;
    op.h = 2.0 * op.L / (op.grid + 1);
    Eigen::VectorXd v(op.grid);
    for (int i = 0; i < op.grid; ++i) {
        v(i) = offset - (pt.p / 2.0) * radial::weight(prof, -op.L + op.h * (i + 1));
    }
    const double fd = spectral::smallest_eigenpair_band(op.component(v)).lambda_min;
    CHECK(fd < 0.0);
    CHECK(fd == doctest::Approx(e).epsilon(1e-3));
}

TEST_CASE("Poschl-Teller against finite differences, 20 random wells") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.5, 5.0);
    for (int i = 0; i < 20; ++i) {
        const double depth = u(rng);
        const double rate = u(rng);
        const double exact = radial::poschl_teller_ground_energy(depth, rate, 0.0);
        // the bound state decays like exp(-sqrt(-E)|s|); keep it below 1e-8 at the wall and
        // put ~40 points across the well width 1/rate
        const double kappa = std::sqrt(-exact);
        const double L = std::max(30.0, 10.0 / kappa);
        const int n = std::max(4000, static_cast<int>(2.0 * L * rate * 40.0));
        const double fd = oracles::poschl_teller_fd(depth, rate, 0.0, L, n);
        INFO("depth=" << depth << " rate=" << rate);
        CHECK(std::abs(fd - exact) < 1e-5);
    }
}
