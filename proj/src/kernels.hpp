#pragma once

// Precision-generic building blocks shared by the double, quad and MPFR
// paths of the truncated Fock-space engine.  Internal header.

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include <quadmath.h>

namespace fockwc::detail {

inline __float128 real_sqrt(__float128 x) { return sqrtq(x); }
inline double real_sqrt(double x) { return std::sqrt(x); }
inline long double real_sqrt(long double x) { return std::sqrt(x); }
template <class R>
R real_sqrt(const R& x) {
    using std::sqrt;
    return R(sqrt(x));
}

/// Minimal complex number over an arbitrary real type (std::complex is
/// only specified for the builtin floating types).
template <class R>
struct Cx {
    R re{0};
    R im{0};

    Cx() = default;
    Cx(R r, R i) : re(std::move(r)), im(std::move(i)) {}
    static Cx from(std::complex<double> z) { return Cx(R(z.real()), R(z.imag())); }

    std::complex<double> to_double() const { return {static_cast<double>(re), static_cast<double>(im)}; }

    Cx& operator+=(const Cx& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Cx& operator-=(const Cx& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    friend Cx operator+(Cx x, const Cx& y) { return x += y; }
    friend Cx operator-(Cx x, const Cx& y) { return x -= y; }
    friend Cx operator*(const Cx& x, const Cx& y) {
        return Cx(R(x.re * y.re - x.im * y.im), R(x.re * y.im + x.im * y.re));
    }
    friend Cx operator*(const Cx& x, const R& s) { return Cx(R(x.re * s), R(x.im * s)); }
    friend Cx operator/(const Cx& x, const Cx& y) {
        R den = y.re * y.re + y.im * y.im;
        return Cx(R((x.re * y.re + x.im * y.im) / den), R((x.im * y.re - x.re * y.im) / den));
    }
    Cx conj() const { return Cx(re, R(-im)); }
    R norm() const { return R(re * re + im * im); }
};

/// sqrt(k) and 1/sqrt(k) for k < n, computed once per precision.
template <class R>
struct SqrtTable {
    std::vector<R> root;
    std::vector<R> inv_root;
    explicit SqrtTable(std::size_t n) : root(n), inv_root(n) {
        for (std::size_t k = 0; k < n; ++k) {
            root[k] = real_sqrt(R(static_cast<double>(k)));
            inv_root[k] = k == 0 ? R(0) : R(R(1) / root[k]);
        }
    }
};

/// Orthonormal coefficients of exp(g z): g^k / sqrt(k!).
template <class R>
std::vector<Cx<R>> exp_coefficients(const Cx<R>& g, std::size_t n, const SqrtTable<R>& t) {
    std::vector<Cx<R>> e(n);
    if (n == 0) return e;
    e[0] = Cx<R>(R(1), R(0));
    for (std::size_t k = 1; k < n; ++k) e[k] = (e[k - 1] * g) * t.inv_root[k];
    return e;
}

/// out = alpha S x + beta x with (S x)_k = sqrt(k) x_{k-1}.  Exact under
/// truncation because S only moves mass to higher indices.
template <class R>
void shift_combine(const std::vector<Cx<R>>& x, const Cx<R>& alpha, const Cx<R>& beta, const SqrtTable<R>& t,
                   std::vector<Cx<R>>& out) {
    const std::size_t n = x.size();
    out.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        Cx<R> v = beta * x[k];
        if (k > 0) v += (alpha * x[k - 1]) * t.root[k];
        out[k] = v;
    }
}

/// Coefficients of u = d exp(c z) p(z): d p(S) E_c via Horner in S.
template <class R>
std::vector<Cx<R>> multiplier_coefficients(const Cx<R>& d, const Cx<R>& c, const std::vector<Cx<R>>& p,
                                           std::size_t n, const SqrtTable<R>& t) {
    const auto e = exp_coefficients(c, n, t);
    std::vector<Cx<R>> v(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = e[k] * p.back();
    std::vector<Cx<R>> tmp;
    const Cx<R> one(R(1), R(0));
    for (std::size_t i = p.size() - 1; i-- > 0;) {
        shift_combine(v, one, Cx<R>(R(0), R(0)), t, tmp);
        for (std::size_t k = 0; k < n; ++k) v[k] = tmp[k] + e[k] * p[i];
    }
    for (auto& x : v) x = x * d;
    return v;
}

/// Column recurrence of W e_n = u (a z + b)^n / sqrt(n!):
///   col_{n+1} = (a S + b) col_n / sqrt(n + 1).
/// Visits columns [first, last) in order; the ops applied to reach a given
/// column never depend on `first`, so every partition of the column range
/// produces bit-identical columns.
template <class R, class Visit>
void for_each_column(const std::vector<Cx<R>>& col0, const Cx<R>& a, const Cx<R>& b, std::size_t first,
                     std::size_t last, const SqrtTable<R>& t, Visit&& visit) {
    std::vector<Cx<R>> col = col0;
    std::vector<Cx<R>> next;
    for (std::size_t n = 0; n < last; ++n) {
        if (n >= first) visit(n, col);
        if (n + 1 == last) break;
        shift_combine(col, a, b, t, next);
        const R s = t.inv_root[n + 1];
        for (auto& x : next) x = x * s;
        col.swap(next);
    }
}

/// Coefficients of (z - z0)^m exp(g z) = (S - z0)^m E_g.
template <class R>
std::vector<Cx<R>> eigenvector_coefficients(const Cx<R>& z0, const Cx<R>& g, std::size_t m, std::size_t n,
                                            const SqrtTable<R>& t) {
    auto v = exp_coefficients(g, n, t);
    std::vector<Cx<R>> tmp;
    const Cx<R> one(R(1), R(0));
    const Cx<R> minus_z0(R(-z0.re), R(-z0.im));
    for (std::size_t j = 0; j < m; ++j) {
        shift_combine(v, one, minus_z0, t, tmp);
        v.swap(tmp);
    }
    return v;
}

} // namespace fockwc::detail
