#include "fockwc/fock.hpp"

#include "fockwc/classify.hpp"
#include "fockwc/errors.hpp"
#include "kernels.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <cmath>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fockwc {

namespace {

using quad = __float128;
using QCx = detail::Cx<quad>;

struct QuadSymbol {
    QCx a, b, c, d;
    std::vector<QCx> p;
};

QuadSymbol to_quad(const OperatorSymbol& op) {
    QuadSymbol q;
    q.a = QCx::from(op.psi().a.value());
    q.b = QCx::from(op.psi().b.value());
    q.c = QCx::from(op.u().c().value());
    q.d = QCx::from(op.u().d().value());
    for (const Scalar& s : op.u().p()) q.p.push_back(QCx::from(s.value()));
    return q;
}

void store_column(OperatorMatrix& m, std::size_t n, const std::vector<QCx>& col, double log_cap) {
    const std::size_t size = m.size();
    for (std::size_t k = 0; k < size; ++k) {
        const cplx v = col[k].to_double();
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) ||
            (v != cplx{} && std::log(std::abs(v)) > log_cap))
            throw TruncationOverflow("entry (" + std::to_string(k) + ", " + std::to_string(n) +
                                     ") exceeds exp(" + std::to_string(log_cap) + ")");
        m(k, n) = v;
    }
}

OperatorMatrix build_impl(const OperatorSymbol& op, const TruncationParams& trunc, bool parallel) {
    trunc.validate();
    const std::size_t n = trunc.n;
    const QuadSymbol q = to_quad(op);
    const detail::SqrtTable<quad> table(n + 1);
    const auto col0 = detail::multiplier_coefficients(q.d, q.c, q.p, n, table);

    OperatorMatrix m(n);
    m.divergent = !check_bounded(op).affirmative();

    if (!parallel) {
        detail::for_each_column(col0, q.a, q.b, 0, n, table,
                                [&](std::size_t k, const std::vector<QCx>& col) { store_column(m, k, col, trunc.log_cap); });
        return m;
    }

    bool overflow = false;
    std::string overflow_msg;
#pragma omp parallel
    {
        std::size_t threads = 1, id = 0;
#ifdef _OPENMP
        threads = static_cast<std::size_t>(omp_get_num_threads());
        id = static_cast<std::size_t>(omp_get_thread_num());
#endif
        const std::size_t first = n * id / threads;
        const std::size_t last = n * (id + 1) / threads;
        if (first < last) {
            try {
                detail::for_each_column(col0, q.a, q.b, first, last, table,
                                        [&](std::size_t k, const std::vector<QCx>& col) {
                                            store_column(m, k, col, trunc.log_cap);
                                        });
            } catch (const TruncationOverflow& e) {
#pragma omp critical(fockwc_overflow)
                {
                    overflow = true;
                    overflow_msg = e.what();
                }
            }
        }
    }
    if (overflow) throw TruncationOverflow(overflow_msg);
    return m;
}

void check_dims(const OperatorMatrix& m, const CoeffVector& f) {
    if (m.size() != f.size())
        throw DimensionMismatch("matrix is " + std::to_string(m.size()) + "x" + std::to_string(m.size()) +
                                ", vector has " + std::to_string(f.size()) + " entries");
}

} // namespace

void TruncationParams::validate() const {
    if (n < 8) throw InvalidSymbol("truncation N must be at least 8");
    if (!(residual_tol > 0.0) || !(sv_tol > 0.0)) throw InvalidSymbol("tolerances must be positive");
}

CoeffVector CoeffVector::basis(std::size_t n, std::size_t k) {
    CoeffVector v(n);
    v[k] = cplx{1.0, 0.0};
    return v;
}

double CoeffVector::norm() const {
    double s = 0.0;
    for (const cplx& x : v_) s += std::norm(x);
    return std::sqrt(s);
}

cplx CoeffVector::evaluate(cplx w) const {
    cplx acc{0.0, 0.0};
    cplx basis{1.0, 0.0}; // w^k / sqrt(k!)
    for (std::size_t k = 0; k < v_.size(); ++k) {
        acc += v_[k] * basis;
        basis *= w / std::sqrt(static_cast<double>(k + 1));
    }
    return acc;
}

cplx inner(const CoeffVector& f, const CoeffVector& g) {
    if (f.size() != g.size()) throw DimensionMismatch("inner product of vectors of different length");
    cplx s{0.0, 0.0};
    for (std::size_t k = 0; k < f.size(); ++k) s += f[k] * std::conj(g[k]);
    return s;
}

CoeffVector kernel_vector(cplx w, std::size_t n) {
    CoeffVector v(n);
    cplx x{1.0, 0.0};
    const cplx wc = std::conj(w);
    for (std::size_t k = 0; k < n; ++k) {
        v[k] = x;
        x *= wc / std::sqrt(static_cast<double>(k + 1));
    }
    return v;
}

OperatorMatrix build_matrix(const OperatorSymbol& op, const TruncationParams& trunc) {
    return build_impl(op, trunc, true);
}

CoeffVector apply(const OperatorMatrix& m, const CoeffVector& f) {
    check_dims(m, f);
    const std::size_t n = m.size();
    CoeffVector y(n);
#pragma omp parallel for schedule(static)
    for (std::size_t row = 0; row < n; ++row) {
        cplx s{0.0, 0.0};
        for (std::size_t col = 0; col < n; ++col) s += m(row, col) * f[col];
        y[row] = s;
    }
    return y;
}

CoeffVector apply_adjoint(const OperatorMatrix& m, const CoeffVector& f) {
    check_dims(m, f);
    const std::size_t n = m.size();
    CoeffVector y(n);
#pragma omp parallel for schedule(static)
    for (std::size_t col = 0; col < n; ++col) {
        cplx s{0.0, 0.0};
        const auto c = m.column(col);
        for (std::size_t row = 0; row < n; ++row) s += std::conj(c[row]) * f[row];
        y[col] = s;
    }
    return y;
}

namespace serial {

OperatorMatrix build_matrix(const OperatorSymbol& op, const TruncationParams& trunc) {
    return build_impl(op, trunc, false);
}

CoeffVector apply(const OperatorMatrix& m, const CoeffVector& f) {
    check_dims(m, f);
    const std::size_t n = m.size();
    CoeffVector y(n);
    for (std::size_t row = 0; row < n; ++row) {
        cplx s{0.0, 0.0};
        for (std::size_t col = 0; col < n; ++col) s += m(row, col) * f[col];
        y[row] = s;
    }
    return y;
}

CoeffVector apply_adjoint(const OperatorMatrix& m, const CoeffVector& f) {
    check_dims(m, f);
    const std::size_t n = m.size();
    CoeffVector y(n);
    for (std::size_t col = 0; col < n; ++col) {
        cplx s{0.0, 0.0};
        const auto c = m.column(col);
        for (std::size_t row = 0; row < n; ++row) s += std::conj(c[row]) * f[row];
        y[col] = s;
    }
    return y;
}

} // namespace serial

Eigenvector expand_eigenvector(const OperatorSymbol& op, std::size_t m, const TruncationParams& trunc) {
    trunc.validate();
    const cplx g = eigen_exponent(op); // throws DegenerateMap
    const cplx z0 = *op.z0();
    const std::size_t n = trunc.n;
    const std::size_t len = 2 * n + m + 64;
    const detail::SqrtTable<quad> table(len + 1);
    const auto v = detail::eigenvector_coefficients(QCx::from(z0), QCx::from(g), m, len, table);

    Eigenvector out;
    out.coeffs = CoeffVector(n);
    for (std::size_t k = 0; k < n; ++k) out.coeffs[k] = v[k].to_double();
    quad tail = 0;
    for (std::size_t k = n; k < len; ++k) tail += v[k].norm();
    out.tail = std::sqrt(static_cast<double>(tail));
    return out;
}

std::size_t buffered_size(std::size_t n) noexcept { return n - (n + 7) / 8; }

double eigen_residual(const OperatorMatrix& m, const CoeffVector& v, cplx mu) {
    const double vn = v.norm();
    if (vn == 0.0) throw ZeroVector("eigen residual of the zero vector");
    const CoeffVector mv = apply(m, v);
    const std::size_t keep = buffered_size(m.size());
    double s = 0.0;
    for (std::size_t k = 0; k < keep; ++k) s += std::norm(mv[k] - mu * v[k]);
    return std::sqrt(s) / vn;
}

double eigen_residual_extended(const OperatorSymbol& op, std::size_t m, std::size_t n) {
    using real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<240>,
                                               boost::multiprecision::et_off>;
    using XCx = detail::Cx<real>;
    if (!op.u().is_constant_poly())
        throw UnsupportedMultiplier("closed-form eigenvectors need a constant polynomial factor");
    eigen_exponent(op); // validates a not in {0, 1}

    const XCx a = XCx::from(op.psi().a.value());
    const XCx b = XCx::from(op.psi().b.value());
    const XCx c = XCx::from(op.u().c().value());
    const XCx dp = XCx::from(op.u().d().value()) * XCx::from(op.u().p()[0].value());
    const XCx one(real(1), real(0));
    const XCx z0 = b / (one - a);
    const XCx g = c / (one - a);

    // lambda = d p0 exp(c z0); mu = a^m lambda.
    const XCx cz0 = c * z0;
    const real mag = exp(cz0.re);
    XCx mu = dp * XCx(real(mag * cos(cz0.im)), real(mag * sin(cz0.im)));
    for (std::size_t j = 0; j < m; ++j) mu = mu * a;

    const detail::SqrtTable<real> table(n + 1);
    const auto v = detail::eigenvector_coefficients(z0, g, m, n, table);
    const auto col0 = detail::multiplier_coefficients(dp, c, std::vector<XCx>{one}, n, table);

    std::vector<XCx> mv(n);
    detail::for_each_column(col0, a, b, 0, n, table, [&](std::size_t k, const std::vector<XCx>& col) {
        for (std::size_t row = 0; row < n; ++row) mv[row] += col[row] * v[k];
    });
    const std::size_t keep = buffered_size(n);
    real num = 0, den = 0;
    for (std::size_t k = 0; k < n; ++k) {
        den += v[k].norm();
        if (k < keep) num += (mv[k] - mu * v[k]).norm();
    }
    return static_cast<double>(real(sqrt(num / den)));
}

namespace {

// Dense complex product C = A B of column-major n x n matrices.
void multiply(const std::vector<cplx>& a, const std::vector<cplx>& b, std::vector<cplx>& c, std::size_t n,
              bool parallel) {
    c.assign(n * n, cplx{0.0, 0.0});
#pragma omp parallel for schedule(static) if (parallel)
    for (std::size_t col = 0; col < n; ++col) {
        cplx* out = c.data() + col * n;
        for (std::size_t k = 0; k < n; ++k) {
            const cplx s = b[col * n + k];
            const cplx* in = a.data() + k * n;
            for (std::size_t row = 0; row < n; ++row) out[row] += in[row] * s;
        }
    }
}

SingularValue dominant_impl(const OperatorMatrix& m, double tol, std::size_t max_squarings, bool parallel) {
    const std::size_t n = m.size();
    if (n == 0) return {};
    // Gram matrix G = M* M.
    std::vector<cplx> mt(n * n), entries(m.entries().begin(), m.entries().end()), p;
    for (std::size_t col = 0; col < n; ++col)
        for (std::size_t row = 0; row < n; ++row) mt[row * n + col] = std::conj(m(row, col));
    multiply(mt, entries, p, n, parallel);

    const auto rayleigh = [&](const std::vector<cplx>& power) {
        CoeffVector x(n);
        for (std::size_t row = 0; row < n; ++row) {
            cplx s{0.0, 0.0};
            for (std::size_t col = 0; col < n; ++col) s += power[col * n + row];
            x[row] = s;
        }
        const double xn = x.norm();
        if (xn == 0.0) return 0.0;
        for (std::size_t k = 0; k < n; ++k) x[k] /= xn;
        return parallel ? apply(m, x).norm() : serial::apply(m, x).norm();
    };

    // After k squarings a singular value at relative distance delta below
    // the top keeps weight exp(-2^(k+1) delta), so the estimate is off by at
    // most 1 / (e 2^(k+1)) however the spectrum clusters.  Agreement of
    // successive estimates only counts once that bound is below tol.
    const auto min_squarings = static_cast<std::size_t>(std::max(0.0, std::ceil(std::log2(1.0 / (M_E * tol)) - 1.0)));
    if (min_squarings > max_squarings)
        throw NoConvergence("tolerance " + std::to_string(tol) + " needs " + std::to_string(min_squarings) +
                            " squarings, limit is " + std::to_string(max_squarings));

    std::vector<cplx> next;
    double prev = rayleigh(p);
    SingularValue sv{prev, 1, 0.0};
    for (std::size_t k = 1; k <= max_squarings; ++k) {
        double scale = 0.0;
        for (const cplx& v : p) scale = std::max(scale, std::abs(v));
        if (scale == 0.0) return {0.0, sv.iterations, 0.0};
        for (cplx& v : p) v /= scale;
        multiply(p, p, next, n, parallel);
        p.swap(next);
        const double sigma = rayleigh(p);
        sv = {sigma, std::size_t{1} << std::min<std::size_t>(k, 62), std::abs(sigma - prev)};
        if (k >= min_squarings && std::abs(sigma - prev) <= tol * sigma) return sv;
        prev = sigma;
    }
    throw NoConvergence("power iteration stalled after 2^" + std::to_string(max_squarings) +
                        " steps at sigma = " + std::to_string(sv.value) + " (last change " +
                        std::to_string(sv.last_change) + ")");
}

} // namespace

SingularValue dominant_singular_value(const OperatorMatrix& m, double tol, std::size_t max_squarings) {
    return dominant_impl(m, tol, max_squarings, true);
}

SingularValue serial::dominant_singular_value(const OperatorMatrix& m, double tol, std::size_t max_squarings) {
    return dominant_impl(m, tol, max_squarings, false);
}

double adjoint_consistency(const OperatorSymbol& op, const OperatorSymbol& candidate, const TruncationParams& trunc) {
    const OperatorMatrix w = build_matrix(op, trunc);
    const OperatorMatrix c = build_matrix(candidate, trunc);
    double worst = 0.0;
    for (std::size_t col = 0; col < trunc.n; ++col)
        for (std::size_t row = 0; row < trunc.n; ++row)
            worst = std::max(worst, std::abs(c(row, col) - std::conj(w(col, row))));
    return worst;
}

double kernel_covariance_check(const OperatorSymbol& op, cplx w, const TruncationParams& trunc) {
    const OperatorMatrix m = build_matrix(op, trunc);
    const CoeffVector kw = kernel_vector(w, trunc.n);
    const CoeffVector lhs = apply_adjoint(m, kw);
    const CoeffVector kpsi = kernel_vector(op.psi()(w), trunc.n);
    const cplx scale = std::conj(op.u()(w));
    double s = 0.0;
    for (std::size_t k = 0; k < trunc.n; ++k) s += std::norm(lhs[k] - scale * kpsi[k]);
    return std::sqrt(s) / kw.norm();
}

} // namespace fockwc
