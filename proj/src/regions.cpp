#include "sckn/regions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "sckn/errors.hpp"

namespace sckn::regions {

std::string_view to_string(Region region) {
    switch (region) {
        case Region::ProvenSymmetry: return "ProvenSymmetry";
        case Region::ProvenBreaking: return "ProvenBreaking";
        case Region::Undecided: return "Undecided";
    }
    return "Undecided";
}

std::string_view to_string(Source source) {
    switch (source) {
        case Source::CorollaryCondition: return "CorollaryCondition";
        case Source::RedTest: return "RedTest";
        case Source::BlueEnvelope: return "BlueEnvelope";
    }
    return "";
}

bool RegionLabel::has(Source s) const {
    return std::find(sources.begin(), sources.end(), s) != sources.end();
}

double symmetry_curve_p(double alpha) {
    return 2.0 / std::abs(alpha) * std::sqrt(1.0 - 3.0 * alpha * alpha);
}

bool in_symmetry_region(const ParameterPoint& point) {
    return point.p < symmetry_curve_p(point.alpha);
}

double corollary_margin(const ParameterPoint& point) {
    const double p = point.p;
    const double a2 = point.alpha * point.alpha;
    const double radicand = p * p * p * p - a2 * (p - 2.0) * (p - 2.0) * (p + 2.0) * (3.0 * p - 2.0);
    if (radicand < 0.0) {
        throw RadicandError("corollary radicand is negative (" + std::to_string(radicand) + ")");
    }
    const double lhs = 8.0 * (std::sqrt(radicand) + 2.0);
    const double rhs = a2 * (p - 2.0) * (p - 2.0) * (p - 2.0) * (p + 2.0) + 4.0 * p * (p + 4.0);
    return rhs - lhs;
}

bool in_breaking_region_corollary(const ParameterPoint& point) {
    return corollary_margin(point) > 0.0;
}

double red_threshold(double alpha) {
    return (std::sqrt(9.0 * alpha * alpha - 14.0 * alpha + 5.0) - alpha + 1.0) / alpha;
}

bool red_test_instability(const ParameterPoint& point) {
    return point.p > red_threshold(point.alpha);
}

double blue_margin(const ParameterPoint& point, double t) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw DomainError("t must lie in [0, 1] (got " + std::to_string(t) + ")");
    }
    const double a = point.alpha;
    const double p = point.p;
    const double mix = t * std::sqrt(1.0 - t * t);
    const double root = std::sqrt(a * a * (4.0 * p * p + 8.0 * p * (p - 2.0) * mix + (p - 2.0) * (p - 2.0)));
    const double inner = 2.0 * a + root - a * p;
    const double lhs = inner * inner / 16.0;
    const double rhs = a * a + a * (4.0 * t * t - 2.0) + 1.0;
    return lhs - rhs;
}

bool blue_test_instability(const ParameterPoint& point, double t) {
    return blue_margin(point, t) > 0.0;
}

EnvelopeResult blue_envelope_instability(const ParameterPoint& point, int t_samples) {
    if (t_samples < 2) throw DomainError("blue envelope needs at least two t samples");
    auto margin = [&](double t) { return blue_margin(point, t); };

    int best = 0;
    double best_margin = margin(0.0);
    const double step = 1.0 / (t_samples - 1);
    for (int i = 1; i < t_samples; ++i) {
        const double t = i == t_samples - 1 ? 1.0 : i * step;
        const double m = margin(t);
        if (m > best_margin) {
            best_margin = m;
            best = i;
        }
    }

    // Golden-section maximization on the neighbouring sample interval.
    double lo = std::max(0.0, (best - 1) * step);
    double hi = std::min(1.0, (best + 1) * step);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = margin(x1);
    double f2 = margin(x2);
    while (hi - lo > 1e-10) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = margin(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = margin(x1);
        }
    }
    const double t_ref = 0.5 * (lo + hi);
    const double m_ref = margin(t_ref);

    EnvelopeResult result;
    if (m_ref >= best_margin) {
        result.t_best = t_ref;
        result.margin = m_ref;
    } else {
        result.t_best = best == t_samples - 1 ? 1.0 : best * step;
        result.margin = best_margin;
    }
    result.unstable = result.margin > 0.0;
    if (result.unstable) result.t_star = result.t_best;
    return result;
}

RegionLabel classify(const ParameterPoint& point) {
    RegionLabel label;
    label.margins.symmetry = symmetry_curve_p(point.alpha) - point.p;
    label.margins.red = point.p - red_threshold(point.alpha);
    const EnvelopeResult envelope = blue_envelope_instability(point);
    label.margins.blue = envelope.margin;

    bool corollary = false;
    try {
        const double m = corollary_margin(point);
        label.margins.corollary = m;
        corollary = m > 0.0;
    } catch (const RadicandError& e) {
        label.corollary_error = e.what();
    }

    if (in_symmetry_region(point)) {
        label.tag = Region::ProvenSymmetry;
        return label;
    }
    if (corollary) label.sources.push_back(Source::CorollaryCondition);
    if (red_test_instability(point)) label.sources.push_back(Source::RedTest);
    if (envelope.unstable) label.sources.push_back(Source::BlueEnvelope);
    label.tag = label.sources.empty() ? Region::Undecided : Region::ProvenBreaking;
    return label;
}

namespace {

// Bisection for the switch of a predicate that is false at lo and true at hi.
double bisect_switch(const std::function<bool(double)>& holds, double lo, double hi, double tol) {
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (holds(mid)) hi = mid; else lo = mid;
    }
    return 0.5 * (lo + hi);
}

ParameterPoint unchecked_point(double alpha, double p) {
    ParameterPoint pt;
    pt.alpha = alpha;
    pt.p = p;
    return pt;
}

}  // namespace

double alpha_on_symmetry_curve(double p) {
    if (!(p > 2.0)) throw DomainError("p must exceed 2");
    // The curve bound decreases in alpha; the region is alpha small.
    return bisect_switch([p](double a) { return symmetry_curve_p(a) <= p; }, 1e-12, 0.5, 1e-10);
}

double alpha_on_blue_envelope(double p) {
    if (!(p > 2.0)) throw DomainError("p must exceed 2");
    auto fires = [p](double a) { return blue_envelope_instability(unchecked_point(a, p)).unstable; };
    if (!fires(0.5 - 1e-12)) throw BracketError("blue envelope does not fire below alpha = 1/2");
    return bisect_switch(fires, 1e-12, 0.5 - 1e-12, 1e-10);
}

double p_on_red_threshold(double alpha) {
    if (!(alpha > 0.0 && alpha < 0.5)) throw DomainError("alpha must lie in (0, 1/2)");
    return red_threshold(alpha);
}

}  // namespace sckn::regions
