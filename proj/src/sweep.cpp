#include "sckn/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "sckn/errors.hpp"
#include "sckn/spectral.hpp"

namespace sckn::sweep {

std::string_view to_string(NumericSign sign) {
    switch (sign) {
        case NumericSign::Negative: return "Negative";
        case NumericSign::NonNegative: return "NonNegative";
        case NumericSign::Inconclusive: return "Inconclusive";
    }
    return "?";
}

void validate_grid(const GridSpec& g) {
    const auto [alo, ahi] = g.alpha_range;
    const auto [plo, phi] = g.p_range;
    if (!(alo > 0.0 && ahi < 0.5 && alo <= ahi)) throw DomainError("alpha range must lie in (0, 1/2)");
    if (!(plo > 2.0 && std::isfinite(phi) && plo <= phi)) throw DomainError("p range must lie in (2, inf)");
    if (g.n_alpha < 1 || g.n_p < 1) throw DomainError("grid counts must be positive");
    if (g.N < 4) throw DomainError("N must be at least 4");
    if (!(g.exclude_band >= 0.0)) throw DomainError("exclude_band must be non-negative");
}

namespace {

std::vector<double> linspace(double lo, double hi, int count) {
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        out[static_cast<std::size_t>(i)] = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
    }
    return out;
}

}  // namespace

std::vector<double> alpha_samples(const GridSpec& g) {
    return linspace(g.alpha_range.first, g.alpha_range.second, g.n_alpha);
}

std::vector<double> p_samples(const GridSpec& g) {
    auto p = linspace(g.p_range.first, g.p_range.second, g.n_p);
    std::erase_if(p, [&](double x) { return std::abs(x - 6.0) < g.exclude_band; });
    return p;
}

bool is_converged(double lambda, double lambda_half) {
    return std::abs(lambda - lambda_half) < std::max(kConvTol, kConvRel * std::abs(lambda));
}

NumericSign numeric_sign(double lambda, bool converged) {
    if (lambda < -kSignTol) return NumericSign::Negative;
    if (converged) return NumericSign::NonNegative;
    return NumericSign::Inconclusive;
}

SweepRow evaluate(double alpha, double p, int N) {
    SweepRow row;
    row.alpha = alpha;
    row.p = p;
    row.N = N;
    row.lambda_min = std::numeric_limits<double>::quiet_NaN();
    try {
        const ParameterPoint pt = validate(alpha, p);
        row.analytic_label = regions::classify(pt);
        double lambda = spectral::stability_eigenvalue(pt, N);
        bool converged = is_converged(lambda, spectral::stability_eigenvalue(pt, std::max(4, N / 2)));
        if (!converged && lambda >= -kSignTol) {
            const double doubled = spectral::stability_eigenvalue(pt, 2 * N);
            converged = is_converged(doubled, lambda);
            lambda = doubled;
            row.N = 2 * N;
        }
        row.lambda_min = lambda;
        row.converged = converged;
        row.numeric_sign = numeric_sign(lambda, converged);
    } catch (const Error& e) {
        row.error = e.what();
        row.numeric_sign = NumericSign::Inconclusive;
        row.converged = false;
    }
    return row;
}

unsigned thread_count() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("SCKN_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1) n = std::min(n, static_cast<unsigned>(cap));
    }
    return n;
}

std::vector<SweepRow> sign_map(const GridSpec& grid) {
    validate_grid(grid);
    const auto alphas = alpha_samples(grid);
    const auto ps = p_samples(grid);
    const std::size_t total = alphas.size() * ps.size();
    std::vector<SweepRow> rows(total);

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < total; i = next++) {
            rows[i] = evaluate(alphas[i % alphas.size()], ps[i / alphas.size()], grid.N);
        }
    };
    const unsigned threads = std::min<std::size_t>(thread_count(), std::max<std::size_t>(1, total));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    return rows;
}

std::vector<SweepRow> eigenvalue_surface(const GridSpec& grid) {
    return sign_map(grid);
}

namespace {

bool stable(double lambda) { return lambda >= -kSignTol; }

}  // namespace

Bracket boundary_bisect(double p, int N, double tol_alpha) {
    if (!(tol_alpha > 0.0)) throw DomainError("tolerance must be positive");
    Bracket b;
    b.lo = 0.01;
    b.hi = 0.49;
    b.lambda_lo = spectral::stability_eigenvalue(validate(b.lo, p), N);
    b.lambda_hi = spectral::stability_eigenvalue(validate(b.hi, p), N);
    if (stable(b.lambda_lo) == stable(b.lambda_hi) || !stable(b.lambda_lo)) {
        char msg[160];
        std::snprintf(msg, sizeof msg, "no sign change in alpha at p=%.17g: lambda(0.01)=%.6g lambda(0.49)=%.6g",
                      p, b.lambda_lo, b.lambda_hi);
        throw BracketError(msg);
    }
    while (b.hi - b.lo > tol_alpha) {
        const double mid = 0.5 * (b.lo + b.hi);
        const double lambda = spectral::stability_eigenvalue(validate(mid, p), N);
        if (stable(lambda)) {
            b.lo = mid;
            b.lambda_lo = lambda;
        } else {
            b.hi = mid;
            b.lambda_hi = lambda;
        }
        ++b.steps;
    }
    return b;
}

Bracket boundary_bisect_p(double alpha, int N, double tol_p, double p_lo, double p_hi) {
    if (!(tol_p > 0.0)) throw DomainError("tolerance must be positive");
    Bracket b;
    b.lo = p_lo;
    b.hi = p_hi;
    b.lambda_lo = spectral::stability_eigenvalue(validate(alpha, p_lo), N);
    b.lambda_hi = spectral::stability_eigenvalue(validate(alpha, p_hi), N);
    if (!stable(b.lambda_lo) || stable(b.lambda_hi)) {
        char msg[160];
        std::snprintf(msg, sizeof msg, "no sign change in p at alpha=%.17g: lambda(%g)=%.6g lambda(%g)=%.6g",
                      alpha, p_lo, b.lambda_lo, p_hi, b.lambda_hi);
        throw BracketError(msg);
    }
    while (std::abs(b.hi - b.lo) > tol_p) {
        const double mid = 0.5 * (b.lo + b.hi);
        const double lambda = spectral::stability_eigenvalue(validate(alpha, mid), N);
        if (stable(lambda)) {
            b.lo = mid;
            b.lambda_lo = lambda;
        } else {
            b.hi = mid;
            b.lambda_hi = lambda;
        }
        ++b.steps;
    }
    return b;
}

std::vector<ConvergenceEntry> convergence_study(const ParameterPoint& point, const std::vector<int>& N_list) {
    if (!std::is_sorted(N_list.begin(), N_list.end())) throw DomainError("N_list must be increasing");
    std::vector<ConvergenceEntry> out;
    for (const int N : N_list) {
        ConvergenceEntry e;
        e.N = N;
        e.lambda_min = spectral::stability_eigenvalue(point, N);
        e.converged = !out.empty() && std::abs(e.lambda_min - out.back().lambda_min) < kConvTol;
        out.push_back(e);
    }
    return out;
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
    out << kCsvHeader << '\n';
    for (const auto& r : rows) {
        out << format_double(r.alpha) << ',' << format_double(r.p) << ',' << r.N << ','
            << format_double(r.lambda_min) << ',' << regions::to_string(r.analytic_label.tag) << ','
            << to_string(r.numeric_sign) << ',' << (r.converged ? "true" : "false") << '\n';
    }
}

void write_json(const std::vector<SweepRow>& rows, std::ostream& out) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json j;
        j["alpha"] = r.alpha;
        j["p"] = r.p;
        j["N"] = r.N;
        j["lambda_min"] = std::isfinite(r.lambda_min) ? nlohmann::ordered_json(r.lambda_min) : nullptr;
        j["analytic_label"] = regions::to_string(r.analytic_label.tag);
        auto sources = nlohmann::ordered_json::array();
        for (const auto s : r.analytic_label.sources) sources.push_back(regions::to_string(s));
        j["sources"] = sources;
        j["numeric_sign"] = to_string(r.numeric_sign);
        j["converged"] = r.converged;
        if (r.error) j["error"] = *r.error;
        arr.push_back(j);
    }
    out << arr.dump(2) << '\n';
}

}  // namespace sckn::sweep
