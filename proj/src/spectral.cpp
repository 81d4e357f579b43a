#include "sckn/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "sckn/errors.hpp"
#include "sckn/gegenbauer.hpp"
#include "sckn/radial.hpp"

namespace sckn::spectral {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

std::string_view to_string(Method method) {
    return method == Method::DenseQL ? "DenseQL" : "Lanczos";
}

namespace {

void normalize_sign(VectorXd& v) {
    v.normalize();
    Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v(arg) < 0.0) v = -v;
}

void check_square_symmetric(const MatrixXd& a) {
    if (a.rows() != a.cols() || a.rows() == 0) throw DimensionError("matrix must be square and non-empty");
    const double scale = std::max(1e-300, a.cwiseAbs().maxCoeff());
    const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * scale) {
        std::ostringstream msg;
        msg << "matrix is not symmetric (max |A - A^T| = " << asym << ")";
        throw DimensionError(msg.str());
    }
}

void finish(SpectralResult& r, const MatrixXd& a) {
    normalize_sign(r.vector);
    r.residual = (a * r.vector - r.lambda_min * r.vector).norm();
    if (!(r.residual <= 1e-8 * std::max(1.0, std::abs(r.lambda_min)))) {
        std::ostringstream msg;
        msg << to_string(r.method) << " residual " << r.residual << " above bound after "
            << r.iterations << " iterations";
        throw ConvergenceError(msg.str());
    }
}

}  // namespace

void householder_tridiagonalize(MatrixXd& a, VectorXd& diag, VectorXd& sub, bool accumulate) {
    const Index n = a.rows();
    diag.resize(n);
    sub = VectorXd::Zero(n);
    std::vector<VectorXd> reflectors;
    std::vector<double> taus;

    for (Index k = 0; k + 2 < n; ++k) {
        const Index m = n - k - 1;
        VectorXd v = a.col(k).tail(m);
        double beta = v.norm();
        double tau = 0.0;
        if (beta != 0.0) {
            if (v(0) > 0.0) beta = -beta;
            v(0) -= beta;
            tau = 2.0 / v.squaredNorm();
            auto trailing = a.bottomRightCorner(m, m);
            const VectorXd p = tau * (trailing * v);
            const VectorXd w = p - (0.5 * tau * p.dot(v)) * v;
            trailing.noalias() -= v * w.transpose() + w * v.transpose();
            a.col(k).tail(m).setZero();
            a.row(k).tail(m).setZero();
            a(k + 1, k) = beta;
            a(k, k + 1) = beta;
        }
        if (accumulate) {
            reflectors.push_back(std::move(v));
            taus.push_back(tau);
        }
    }

    for (Index i = 0; i < n; ++i) diag(i) = a(i, i);
    for (Index i = 1; i < n; ++i) sub(i) = a(i, i - 1);

    if (!accumulate) return;
    a.setIdentity();
    for (Index k = static_cast<Index>(reflectors.size()) - 1; k >= 0; --k) {
        const double tau = taus[static_cast<std::size_t>(k)];
        if (tau == 0.0) continue;
        const VectorXd& v = reflectors[static_cast<std::size_t>(k)];
        auto rows = a.bottomRows(v.size());
        const Eigen::RowVectorXd vt_q = v.transpose() * rows;
        rows.noalias() -= (tau * v) * vt_q;
    }
}

void tridiagonal_ql(VectorXd& d, VectorXd& sub, MatrixXd* z) {
    const Index n = d.size();
    if (n == 0) return;
    VectorXd e(n);
    for (Index i = 0; i + 1 < n; ++i) e(i) = sub(i + 1);
    e(n - 1) = 0.0;
    const double eps = std::numeric_limits<double>::epsilon();

    for (Index l = 0; l < n; ++l) {
        int iter = 0;
        Index m = l;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d(m)) + std::abs(d(m + 1));
                if (std::abs(e(m)) <= eps * dd) break;
            }
            if (m == l) break;
            if (++iter > 60) {
                throw ConvergenceError("tridiagonal QL: no convergence for eigenvalue " + std::to_string(l));
            }
            double g = (d(l + 1) - d(l)) / (2.0 * e(l));
            double r = std::hypot(g, 1.0);
            g = d(m) - d(l) + e(l) / (g + std::copysign(r, g));
            double s = 1.0;
            double c = 1.0;
            double p = 0.0;
            bool deflated = false;
            for (Index i = m - 1; i >= l; --i) {
                double f = s * e(i);
                const double b = c * e(i);
                r = std::hypot(f, g);
                e(i + 1) = r;
                if (r == 0.0) {
                    d(i + 1) -= p;
                    e(m) = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d(i + 1) - p;
                r = (d(i) - g) * s + 2.0 * c * b;
                p = s * r;
                d(i + 1) = g + p;
                g = c * r - b;
                if (z != nullptr) {
                    const VectorXd next = z->col(i + 1);
                    z->col(i + 1) = s * z->col(i) + c * next;
                    z->col(i) = c * z->col(i) - s * next;
                }
            }
            if (deflated) continue;
            d(l) -= p;
            e(l) = g;
            e(m) = 0.0;
        } while (true);
    }
    sub.setZero();
}

SpectralResult smallest_eigenpair(const MatrixXd& matrix, double tol, std::optional<Method> method) {
    check_square_symmetric(matrix);
    const Method chosen = method.value_or(matrix.rows() > kDenseLimit ? Method::Lanczos : Method::DenseQL);
    if (chosen == Method::Lanczos) return lanczos_smallest(matrix, tol);

    MatrixXd q = matrix;
    VectorXd diag;
    VectorXd sub;
    householder_tridiagonalize(q, diag, sub, true);
    tridiagonal_ql(diag, sub, &q);
    Index arg = 0;
    diag.minCoeff(&arg);

    SpectralResult r;
    r.method = Method::DenseQL;
    r.lambda_min = diag(arg);
    r.vector = q.col(arg);
    r.iterations = 1;
    finish(r, matrix);
    return r;
}

double smallest_eigenvalue(const MatrixXd& matrix) {
    check_square_symmetric(matrix);
    MatrixXd work = matrix;
    VectorXd diag;
    VectorXd sub;
    householder_tridiagonalize(work, diag, sub, false);
    tridiagonal_ql(diag, sub, nullptr);
    return diag.minCoeff();
}

SpectralResult lanczos_smallest(const MatrixXd& a, double tol) {
    check_square_symmetric(a);
    const Index n = a.rows();

    // Iterate on sigma I - A, sigma a Gershgorin upper bound: the target becomes the
    // largest, positive end of the spectrum.
    double sigma = -std::numeric_limits<double>::infinity();
    for (Index i = 0; i < n; ++i) {
        sigma = std::max(sigma, a(i, i) + (a.row(i).cwiseAbs().sum() - std::abs(a(i, i))));
    }

    MatrixXd basis(n, n);
    std::vector<double> alpha;
    std::vector<double> beta;
    std::mt19937_64 rng(0x5c4e);
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    VectorXd v(n);
    for (Index i = 0; i < n; ++i) v(i) = uniform(rng);
    basis.col(0) = v.normalized();

    double theta = 0.0;
    VectorXd ritz_coeffs;
    Index steps = 0;
    for (Index j = 0; j < n; ++j) {
        VectorXd w = sigma * basis.col(j) - a * basis.col(j);
        const double aj = basis.col(j).dot(w);
        w -= aj * basis.col(j);
        if (j > 0) w -= beta.back() * basis.col(j - 1);
        for (int pass = 0; pass < 2; ++pass) {
            const auto prev = basis.leftCols(j + 1);
            w -= prev * (prev.transpose() * w);
        }
        alpha.push_back(aj);
        const double bj = w.norm();
        steps = j + 1;

        const bool exhausted = bj <= 1e-14 * std::abs(sigma) || j + 1 == n;
        if (exhausted || steps % 10 == 0) {
            VectorXd d = Eigen::Map<const VectorXd>(alpha.data(), steps);
            VectorXd sub = VectorXd::Zero(steps);
            for (Index i = 1; i < steps; ++i) sub(i) = beta[static_cast<std::size_t>(i - 1)];
            MatrixXd s = MatrixXd::Identity(steps, steps);
            tridiagonal_ql(d, sub, &s);
            Index arg = 0;
            theta = d.maxCoeff(&arg);
            ritz_coeffs = s.col(arg);
            const double estimate = bj * std::abs(ritz_coeffs(steps - 1));
            if (exhausted || estimate <= tol * std::max(1.0, std::abs(sigma - theta))) break;
        }
        beta.push_back(bj);
        basis.col(j + 1) = w / bj;
    }

    SpectralResult r;
    r.method = Method::Lanczos;
    r.iterations = static_cast<int>(steps);
    r.vector = basis.leftCols(steps) * ritz_coeffs;
    r.vector.normalize();
    r.lambda_min = r.vector.dot(a * r.vector);
    finish(r, a);
    return r;
}

SpectralResult solve(const assembly::StabilityMatrix& m, std::optional<Method> method) {
    SpectralResult r = smallest_eigenpair(m.orthonormal(), 1e-12, method);
    r.N = m.N;
    return r;
}

double stability_eigenvalue(const ParameterPoint& point, int N) {
    const auto m = assembly::assemble(point, N);
    if (m.data.rows() > kDenseLimit) return solve(m).lambda_min;
    return smallest_eigenvalue(m.orthonormal());
}

double l2_smallest_eigenvalue(const assembly::StabilityMatrix& m) {
    return smallest_eigenvalue(m.data);
}

// --- band ------------------------------------------------------------------------------

BandMatrix::BandMatrix(Index n, int bandwidth)
    : n_(n), bw_(bandwidth), data_(static_cast<std::size_t>(n * (bandwidth + 1)), 0.0) {
    if (n < 1 || bandwidth < 0) throw DimensionError("invalid band matrix shape");
}

VectorXd BandMatrix::multiply(const VectorXd& x) const {
    if (x.size() != n_) throw DimensionError("band multiply: size mismatch");
    VectorXd y = VectorXd::Zero(n_);
    for (Index i = 0; i < n_; ++i) {
        y(i) += at(i, 0) * x(i);
        for (int d = 1; d <= bw_ && i + d < n_; ++d) {
            y(i) += at(i, d) * x(i + d);
            y(i + d) += at(i, d) * x(i);
        }
    }
    return y;
}

MatrixXd BandMatrix::to_dense() const {
    MatrixXd out = MatrixXd::Zero(n_, n_);
    for (Index i = 0; i < n_; ++i) {
        for (int d = 0; d <= bw_ && i + d < n_; ++d) {
            out(i, i + d) = at(i, d);
            out(i + d, i) = at(i, d);
        }
    }
    return out;
}

std::pair<double, double> BandMatrix::gershgorin() const {
    VectorXd radius = VectorXd::Zero(n_);
    for (Index i = 0; i < n_; ++i) {
        for (int d = 1; d <= bw_ && i + d < n_; ++d) {
            radius(i) += std::abs(at(i, d));
            radius(i + d) += std::abs(at(i, d));
        }
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (Index i = 0; i < n_; ++i) {
        lo = std::min(lo, at(i, 0) - radius(i));
        hi = std::max(hi, at(i, 0) + radius(i));
    }
    return {lo, hi};
}

namespace {

// LDL^T of (A - sigma I) without pivoting; lower(i, d) = L(i, i - d).
struct BandFactor {
    std::vector<double> pivots;
    std::vector<double> lower;
    int bw;
    double l(Index i, Index j) const { return lower[static_cast<std::size_t>(i * (bw + 1) + (i - j))]; }
};

BandFactor factor(const BandMatrix& a, double sigma) {
    const Index n = a.size();
    const int b = a.bandwidth();
    BandFactor f;
    f.bw = b;
    f.pivots.assign(static_cast<std::size_t>(n), 0.0);
    f.lower.assign(static_cast<std::size_t>(n * (b + 1)), 0.0);
    const double tiny = std::numeric_limits<double>::epsilon() * (std::abs(sigma) + 1.0);
    for (Index i = 0; i < n; ++i) {
        const Index first = std::max<Index>(0, i - b);
        for (Index j = first; j < i; ++j) {
            double s = a.at(j, static_cast<int>(i - j));
            for (Index k = first; k < j; ++k) {
                s -= f.l(i, k) * f.l(j, k) * f.pivots[static_cast<std::size_t>(k)];
            }
            f.lower[static_cast<std::size_t>(i * (b + 1) + (i - j))] = s / f.pivots[static_cast<std::size_t>(j)];
        }
        double d = a.at(i, 0) - sigma;
        for (Index k = first; k < i; ++k) {
            const double lik = f.l(i, k);
            d -= lik * lik * f.pivots[static_cast<std::size_t>(k)];
        }
        if (d == 0.0) d = tiny;
        f.pivots[static_cast<std::size_t>(i)] = d;
    }
    return f;
}

}  // namespace

Index BandMatrix::count_below(double sigma) const {
    const BandFactor f = factor(*this, sigma);
    return std::count_if(f.pivots.begin(), f.pivots.end(), [](double d) { return d < 0.0; });
}

VectorXd BandMatrix::solve_shifted(double sigma, const VectorXd& rhs) const {
    if (rhs.size() != n_) throw DimensionError("band solve: size mismatch");
    const BandFactor f = factor(*this, sigma);
    VectorXd y = rhs;
    for (Index i = 0; i < n_; ++i) {
        for (Index k = std::max<Index>(0, i - bw_); k < i; ++k) y(i) -= f.l(i, k) * y(k);
    }
    for (Index i = 0; i < n_; ++i) y(i) /= f.pivots[static_cast<std::size_t>(i)];
    for (Index i = n_ - 1; i >= 0; --i) {
        for (Index k = i + 1; k <= std::min<Index>(n_ - 1, i + bw_); ++k) y(i) -= f.l(k, i) * y(k);
    }
    return y;
}

SpectralResult smallest_eigenpair_band(const BandMatrix& band) {
    auto [lo, hi] = band.gershgorin();
    int iterations = 0;
    while (hi - lo > 1e-14 * std::max(1.0, std::abs(lo) + std::abs(hi))) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (band.count_below(mid) >= 1) hi = mid; else lo = mid;
        if (++iterations > 400) throw ConvergenceError("band bisection did not terminate");
    }

    // Inverse iteration just below the bracket: A - sigma I is positive definite.
    const double shift = lo - 1e-10 * std::max(1.0, std::abs(lo));
    VectorXd v = VectorXd::Ones(band.size()).normalized();
    SpectralResult r;
    r.method = Method::DenseQL;
    for (int it = 0; it < 8; ++it) {
        v = band.solve_shifted(shift, v).normalized();
        ++r.iterations;
    }
    const VectorXd av = band.multiply(v);
    r.lambda_min = v.dot(av);
    r.vector = v;
    normalize_sign(r.vector);
    r.residual = (band.multiply(r.vector) - r.lambda_min * r.vector).norm();
    r.iterations += iterations;
    if (!(r.residual <= 1e-8 * std::max(1.0, std::abs(r.lambda_min)))) {
        throw ConvergenceError("band inverse iteration residual " + std::to_string(r.residual));
    }
    return r;
}

// --- finite differences ----------------------------------------------------------------

void check_fd_spec(const ParameterPoint& point, const FdSpec& spec) {
    if (spec.grid < 1000) throw DomainError("fd grid needs at least 1000 interior points");
    const double rate = (point.p - 2.0) * point.alpha / 2.0;
    if (!(spec.L * rate >= 25.0)) {
        throw DomainError("fd box too small: L * rate = " + std::to_string(spec.L * rate) + " < 25");
    }
}

FdOperator fd_operator(const ParameterPoint& point, const FdSpec& spec) {
    check_fd_spec(point, spec);
    const auto profile = radial::make_profile(point);
    const double a = point.alpha;
    const double p = point.p;
    FdOperator op;
    op.grid = spec.grid;
    op.L = spec.L;
    op.h = 2.0 * spec.L / (spec.grid + 1);
    op.upper.resize(spec.grid);
    op.lower.resize(spec.grid);
    op.coupling.resize(spec.grid);
    for (int i = 0; i < spec.grid; ++i) {
        const double s = -spec.L + op.h * (i + 1);
        const double w = radial::weight(profile, s);
        op.upper(i) = (1.0 + a) * (1.0 + a) - p / 2.0 * w;
        op.lower(i) = (1.0 - a) * (1.0 - a) - p / 2.0 * w;
        op.coupling(i) = -(p - 2.0) / 2.0 * w;
    }
    return op;
}

std::vector<double> FdOperator::nodes() const {
    std::vector<double> s(static_cast<std::size_t>(grid));
    for (int i = 0; i < grid; ++i) s[static_cast<std::size_t>(i)] = -L + h * (i + 1);
    return s;
}

BandMatrix FdOperator::band() const {
    BandMatrix b(2 * static_cast<Index>(grid), 2);
    const double diag = 2.0 / (h * h);
    const double off = -1.0 / (h * h);
    for (Index i = 0; i < grid; ++i) {
        b.at(2 * i, 0) = diag + upper(i);
        b.at(2 * i + 1, 0) = diag + lower(i);
        b.at(2 * i, 1) = coupling(i);
        if (i + 1 < grid) {
            b.at(2 * i, 2) = off;
            b.at(2 * i + 1, 2) = off;
        }
    }
    return b;
}

BandMatrix FdOperator::component(const VectorXd& potential) const {
    if (potential.size() != grid) throw DimensionError("potential length must equal grid");
    BandMatrix b(grid, 1);
    for (Index i = 0; i < grid; ++i) {
        b.at(i, 0) = 2.0 / (h * h) + potential(i);
        if (i + 1 < grid) b.at(i, 1) = -1.0 / (h * h);
    }
    return b;
}

MatrixXd FdOperator::to_dense() const {
    const MatrixXd interleaved = band().to_dense();
    const Index n = 2 * static_cast<Index>(grid);
    MatrixXd out(n, n);
    auto block_index = [this](Index k) { return (k % 2) * grid + k / 2; };
    for (Index j = 0; j < n; ++j) {
        for (Index k = 0; k < n; ++k) out(block_index(j), block_index(k)) = interleaved(j, k);
    }
    return out;
}

FdResult fd_smallest_eigenvalue(const ParameterPoint& point, const FdSpec& spec) {
    const FdOperator coarse_op = fd_operator(point, spec);
    SpectralResult coarse = smallest_eigenpair_band(coarse_op.band());

    VectorXd block(coarse.vector.size());
    for (int i = 0; i < spec.grid; ++i) {
        block(i) = coarse.vector(2 * i);
        block(spec.grid + i) = coarse.vector(2 * i + 1);
    }
    coarse.vector = block;

    FdSpec fine_spec = spec;
    fine_spec.grid = 2 * spec.grid + 1;  // step exactly h/2
    const double fine = smallest_eigenpair_band(fd_operator(point, fine_spec).band()).lambda_min;

    FdResult out;
    out.result = coarse;
    out.refined = fine;
    out.extrapolated = (4.0 * fine - coarse.lambda_min) / 3.0;
    return out;
}

// --- reconstruction --------------------------------------------------------------------

Eigen::VectorXd gegenbauer_coefficients(const SpectralResult& result, const ParameterPoint& point) {
    const int N = result.N;
    if (N < 1 || result.vector.size() != 2 * N) {
        throw DimensionError("eigenvector length does not match 2N");
    }
    VectorXd w(2 * N);
    for (int k = 0; k < N; ++k) {
        const double scale = 1.0 / std::sqrt(std::exp(gegenbauer::log_norm(k, point.lambda)));
        w(k) = result.vector(k) * scale;
        w(N + k) = result.vector(N + k) * scale;
    }
    return w;
}

Profiles eigenvector_to_s_profile(const SpectralResult& result, const ParameterPoint& point,
                                  std::span<const double> s_grid) {
    const int N = result.N;
    const VectorXd w = gegenbauer_coefficients(result, point);
    const auto profile = radial::make_profile(point);

    Profiles out;
    out.upper.reserve(s_grid.size());
    out.lower.reserve(s_grid.size());
    double peak = 0.0;
    for (const double s : s_grid) {
        const double z = std::tanh(profile.rate * s);
        const auto c = gegenbauer::eval_all(N, point.lambda, z);
        double u1 = 0.0;
        double u2 = 0.0;
        for (int k = 0; k < N; ++k) {
            u1 += w(k) * c[static_cast<std::size_t>(k)];
            u2 += w(N + k) * c[static_cast<std::size_t>(k)];
        }
        const double phi = radial::phi_star(profile, s);
        out.upper.push_back(std::abs(u1 * phi));
        out.lower.push_back(std::abs(u2 * phi));
        peak = std::max({peak, out.upper.back(), out.lower.back()});
    }
    if (peak > 0.0) {
        for (auto& x : out.upper) x /= peak;
        for (auto& x : out.lower) x /= peak;
    }
    return out;
}

}  // namespace sckn::spectral
