#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sckn/errors.hpp"
#include "sckn/regions.hpp"

using namespace sckn;
using regions::Region;
using regions::Source;

namespace {

// Printed conditions retyped independently of the module.
double symmetry_bound(double a) { return 2.0 / a * std::sqrt(1.0 - 3.0 * a * a); }

double red_bound(double a) { return (std::sqrt(9.0 * a * a - 14.0 * a + 5.0) - a + 1.0) / a; }

double blue_lhs(double a, double p, double t) {
    const double r = std::sqrt(a * a * (4.0 * p * p + 8.0 * p * (p - 2.0) * t * std::sqrt(1.0 - t * t) +
                                        (p - 2.0) * (p - 2.0)));
    const double q = 2.0 * a + r - a * p;
    return q * q / 16.0;
}

double blue_rhs(double a, double t) { return a * a + a * (4.0 * t * t - 2.0) + 1.0; }

bool usable(double p) { return std::abs(derived_exponents(p).lambda) >= kLambdaEps; }

}  // namespace

TEST_CASE("symmetry region") {
    CHECK(regions::in_symmetry_region(validate(0.1, 3.0)));
    CHECK(symmetry_bound(0.1) == doctest::Approx(19.6977156).epsilon(1e-8));
    CHECK_FALSE(regions::in_symmetry_region(validate(0.25, 7.3)));
    CHECK(regions::symmetry_curve_p(0.25) == doctest::Approx(7.211102550927978).epsilon(1e-14));
    CHECK_FALSE(regions::in_symmetry_region(validate(0.25, regions::symmetry_curve_p(0.25))));
}

TEST_CASE("corollary condition, verbatim") {
    // (0.45, 20): 8 (sqrt(76281.64) + 2) = 2225.53 < 27901.56
    CHECK(regions::in_breaking_region_corollary(validate(0.45, 20.0)));
    CHECK(regions::corollary_margin(validate(0.45, 20.0)) == doctest::Approx(27901.56 - 2225.5304840621684).epsilon(1e-12));
    for (const double p : {2.5, 4.0, 9.0, 30.0}) CHECK_FALSE(regions::in_breaking_region_corollary(validate(1e-4, p)));
    // the radicand stays positive on the whole domain; only a point outside it reaches the error
    ParameterPoint outside;
    outside.alpha = 0.9;
    outside.p = 20.0;
    CHECK_THROWS_AS(regions::corollary_margin(outside), RadicandError);
}

TEST_CASE("red test") {
    CHECK(regions::red_threshold(0.25) == doctest::Approx(8.744562646538029).epsilon(1e-14));
    CHECK(regions::red_test_instability(validate(0.25, 9.0)));
    CHECK_FALSE(regions::red_test_instability(validate(0.25, 8.0)));
    CHECK_FALSE(regions::red_test_instability(validate(0.25, regions::red_threshold(0.25))));
    CHECK(regions::p_on_red_threshold(0.25) == doctest::Approx(red_bound(0.25)).epsilon(1e-9));
}

TEST_CASE("blue test") {
    const auto pt = validate(0.25, 9.0);
    CHECK(blue_lhs(0.25, 9.0, 0.0) == doctest::Approx(0.5922464421031582).epsilon(1e-14));
    CHECK(regions::blue_margin(pt, 0.0) == doctest::Approx(0.5922464421031582 - 0.5625).epsilon(1e-12));
    CHECK(regions::blue_test_instability(pt, 0.0));
    CHECK_FALSE(regions::blue_test_instability(validate(0.1, 3.0), 0.5));
    CHECK_THROWS_AS(regions::blue_test_instability(pt, -0.1), DomainError);
    CHECK_THROWS_AS(regions::blue_test_instability(pt, 1.1), DomainError);
    for (double t = 0.0; t <= 1.0; t += 0.125) {
        CHECK(regions::blue_margin(validate(0.3, 7.0), t) ==
              doctest::Approx(blue_lhs(0.3, 7.0, t) - blue_rhs(0.3, t)).epsilon(1e-12));
    }
}

TEST_CASE("blue envelope") {
    const auto hot = regions::blue_envelope_instability(validate(0.25, 9.0), 101);
    CHECK(hot.unstable);
    REQUIRE(hot.t_star.has_value());
    CHECK(*hot.t_star >= 0.0);
    CHECK(*hot.t_star <= 1.0);
    CHECK(hot.margin >= regions::blue_margin(validate(0.25, 9.0), 0.0));

    const auto cold = regions::blue_envelope_instability(validate(0.1, 3.0), 101);
    CHECK_FALSE(cold.unstable);
    CHECK_FALSE(cold.t_star.has_value());

    for (const auto& [a, p] : {std::pair{0.25, 9.0}, {0.3, 6.5}, {0.2, 9.5}, {0.45, 4.0}}) {
        const auto pt = validate(a, p);
        CHECK(regions::blue_envelope_instability(pt, 2).unstable ==
              regions::blue_envelope_instability(pt, 1001).unstable);
    }
}

TEST_CASE("classify examples") {
    auto label = regions::classify(validate(0.1, 3.0));
    CHECK(label.tag == Region::ProvenSymmetry);
    CHECK(label.sources.empty());

    label = regions::classify(validate(0.25, 9.0));
    CHECK(label.tag == Region::ProvenBreaking);
    CHECK(label.has(Source::RedTest));
    CHECK(label.has(Source::BlueEnvelope));
    // the printed corollary inequality also holds here (620.98 < 703.84)
    CHECK(label.has(Source::CorollaryCondition));

    label = regions::classify(validate(0.25, 7.25));
    const bool any = label.has(Source::CorollaryCondition) || label.has(Source::RedTest) ||
                     label.has(Source::BlueEnvelope);
    CHECK(label.tag == (any ? Region::ProvenBreaking : Region::Undecided));
    CHECK(label.tag == Region::Undecided);

    CHECK(std::string(regions::to_string(Region::Undecided)) == "Undecided");
    CHECK(std::string(regions::to_string(Source::BlueEnvelope)) == "BlueEnvelope");
}

TEST_CASE("mutual exclusion, red inside blue, monotone in alpha on a 200x200 grid") {
    const int n = 200;
    int breaking = 0;
    int symmetric = 0;
    for (int i = 0; i < n; ++i) {
        const double p = 2.05 + (20.0 - 2.05) * i / (n - 1);
        if (!usable(p)) continue;
        bool seen_breaking = false;
        for (int j = 0; j < n; ++j) {
            const double a = 0.01 + (0.49 - 0.01) * j / (n - 1);
            const auto pt = validate(a, p);
            const bool sym = regions::in_symmetry_region(pt);
            const bool red = regions::red_test_instability(pt);
            const bool blue = regions::blue_envelope_instability(pt).unstable;
            bool cor = false;
            try {
                cor = regions::in_breaking_region_corollary(pt);
            } catch (const RadicandError&) {
            }
            INFO("alpha=" << a << " p=" << p);
            CHECK_FALSE((sym && (red || blue || cor)));
            if (red) CHECK(blue);
            const auto label = regions::classify(pt);
            if (seen_breaking) CHECK(label.tag == Region::ProvenBreaking);
            if (label.tag == Region::ProvenBreaking) {
                seen_breaking = true;
                ++breaking;
            }
            if (label.tag == Region::ProvenSymmetry) ++symmetric;
        }
    }
    CHECK(breaking > 0);
    CHECK(symmetric > 0);
}

TEST_CASE("inverted curves") {
    for (const double p : {3.0, 4.0, 8.0, 12.0}) {
        const double a = regions::alpha_on_symmetry_curve(p);
        CHECK(symmetry_bound(a) == doctest::Approx(p).epsilon(1e-8));
        const double b = regions::alpha_on_blue_envelope(p);
        CHECK(b > a);
        CHECK_FALSE(regions::blue_envelope_instability(validate(b - 1e-6, p)).unstable);
        CHECK(regions::blue_envelope_instability(validate(b + 1e-6, p)).unstable);
    }
}
