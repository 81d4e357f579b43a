#include "sckn/assembly.hpp"

#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <vector>

#include "sckn/errors.hpp"

namespace sckn::assembly {

double prefactor(const ParameterPoint& point) {
    const double p = point.p;
    const double a = point.alpha;
    return std::pow(p * a * a / 2.0, (point.n - 4.0) / 2.0) * p * a / (p - 2.0);
}

Eigen::MatrixXd StabilityMatrix::orthonormal() const {
    const Eigen::VectorXd inv_sqrt = gram.array().sqrt().inverse();
    Eigen::MatrixXd out(data.rows(), data.cols());
    for (Eigen::Index k = 0; k < data.cols(); ++k) {
        for (Eigen::Index j = 0; j < data.rows(); ++j) {
            out(j, k) = data(j, k) * (inv_sqrt(j) * inv_sqrt(k));
        }
    }
    return out;
}

StabilityMatrix assemble(const ParameterPoint& point, const gegenbauer::OperatorBlocks& blocks, int N) {
    if (N < 1 || blocks.size < N) throw DimensionError("operator blocks smaller than truncation N");
    if (blocks.lambda != point.lambda) throw DimensionError("operator blocks built for another lambda");

    const double a = point.alpha;
    const double p = point.p;
    const double pref = prefactor(point);
    const double rate = (p - 2.0) * a / 2.0;
    const double kinetic = rate * rate;
    const double coupling = p * a * a / 4.0 * (2.0 - p);
    const double shift[2] = {1.0 + 2.0 * a, 1.0 - 2.0 * a};

    // G (B + 2A) restricted to degrees < N. (B + 2A) is upper triangular, so the sum over
    // intermediate degrees stops at k and the truncated product equals the truncation of the
    // infinite product; the fixed summation order keeps nested truncations bitwise equal.
    Eigen::MatrixXd gba = Eigen::MatrixXd::Zero(N, N);
    for (int k = 0; k < N; ++k) {
        for (int j = 0; j < N; ++j) {
            double sum = 0.0;
            for (int m = std::max(0, j - 2); m <= std::min(k, j + 2); ++m) {
                const double op = blocks.zdz(m, k) * 2.0 + (m == k ? blocks.ultra(k) : 0.0);
                sum += blocks.g(j, m) * op;
            }
            gba(j, k) = sum;
        }
    }

    const int dim = 2 * N;
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(dim, dim);
    for (int bi = 0; bi < 2; ++bi) {
        for (int bj = 0; bj < 2; ++bj) {
            for (int j = 0; j < N; ++j) {
                for (int k = 0; k < N; ++k) {
                    double bracket = coupling * blocks.g(j, k);
                    if (bi == bj) {
                        bracket += kinetic * gba(j, k);
                        if (j == k) bracket += shift[bi];
                    }
                    x(bi * N + j, bj * N + k) = pref * blocks.norm(j) * bracket;
                }
            }
        }
    }

    StabilityMatrix m;
    m.point = point;
    m.N = N;
    const double total = x.norm();
    m.asymmetry = total > 0.0 ? (x - x.transpose()).norm() / total : 0.0;
    if (!(m.asymmetry < kAsymmetryGate)) {
        throw BuildError("stability matrix asymmetry " + std::to_string(m.asymmetry) +
                         " exceeds gate (orientation or transcription fault)");
    }
    m.data.resize(dim, dim);
    for (int j = 0; j < dim; ++j) {
        for (int k = 0; k < dim; ++k) m.data(j, k) = 0.5 * (x(j, k) + x(k, j));
    }
    m.gram.resize(dim);
    for (int k = 0; k < N; ++k) {
        m.gram(k) = pref * blocks.norm(k);
        m.gram(N + k) = pref * blocks.norm(k);
    }
    return m;
}

StabilityMatrix assemble(const ParameterPoint& point, int N) {
    const auto spec = gegenbauer::make_basis_spec(point.lambda, std::max(N, 4));
    return assemble(point, gegenbauer::build_blocks(spec), N);
}

double quadratic_form(const StabilityMatrix& m, const Eigen::VectorXd& w) {
    if (w.size() != m.data.rows()) {
        throw DimensionError("vector length " + std::to_string(w.size()) + " does not match 2N = " +
                             std::to_string(m.data.rows()));
    }
    return w.dot(m.data * w);
}

namespace {

template <class T>
void put(std::ostream& out, const T& value) {
    char buf[sizeof(T)];
    std::memcpy(buf, &value, sizeof(T));
    out.write(buf, sizeof(T));
}

template <class T>
T get(std::istream& in) {
    char buf[sizeof(T)];
    if (!in.read(buf, sizeof(T))) throw DimensionError("truncated matrix dump");
    T value;
    std::memcpy(&value, buf, sizeof(T));
    return value;
}

}  // namespace

void write_binary(const StabilityMatrix& m, std::ostream& out) {
    out.write(kDumpMagic, sizeof(kDumpMagic));
    put(out, static_cast<std::uint64_t>(m.N));
    put(out, m.point.alpha);
    put(out, m.point.p);
    for (Eigen::Index j = 0; j < m.data.rows(); ++j) {
        for (Eigen::Index k = 0; k < m.data.cols(); ++k) put(out, m.data(j, k));
    }
}

MatrixDump read_binary(std::istream& in) {
    char magic[sizeof(kDumpMagic)];
    if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kDumpMagic, sizeof(magic)) != 0) {
        throw DimensionError("not a stability matrix dump");
    }
    MatrixDump dump;
    dump.N = get<std::uint64_t>(in);
    dump.alpha = get<double>(in);
    dump.p = get<double>(in);
    const auto dim = static_cast<Eigen::Index>(2 * dump.N);
    dump.data.resize(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index k = 0; k < dim; ++k) dump.data(j, k) = get<double>(in);
    }
    return dump;
}

}  // namespace sckn::assembly
