#pragma once

// Truncated realization of the Fock space F2 in the orthonormal basis
// e_n(z) = z^n / sqrt(n!).  Everything here is the numerical counterpart of
// the closed forms in classify.hpp and is used to cross-check them.
//
// Matrix columns are produced by the recurrence
//     W e_{n+1} = (a S + b) W e_n / sqrt(n + 1),   (S x)_k = sqrt(k) x_{k-1},
// which is exact under truncation (S never moves mass downwards), evaluated
// in quad precision and rounded once.  The parallel builder splits the
// column range across OpenMP threads and is bit-identical to the serial
// reference in fockwc::serial.

#include "fockwc/symbol.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace fockwc {

struct TruncationParams {
    std::size_t n = 64;          ///< basis size N
    double residual_tol = 1e-8;  ///< eigen-residual acceptance
    double sv_tol = 1e-10;       ///< relative tolerance of the singular value
    double log_cap = 600.0;      ///< max log|entry| before TruncationOverflow
    std::size_t max_squarings = 48; ///< power iteration reaches step 2^48

    /// Throws InvalidSymbol when N < 8 or a tolerance is not positive.
    void validate() const;
};

/// Coefficients against e_n: f(z) = sum_n v_n z^n / sqrt(n!).
class CoeffVector {
public:
    CoeffVector() = default;
    explicit CoeffVector(std::size_t n) : v_(n, cplx{0.0, 0.0}) {}
    explicit CoeffVector(std::vector<cplx> v) : v_(std::move(v)) {}
    static CoeffVector basis(std::size_t n, std::size_t k);

    std::size_t size() const noexcept { return v_.size(); }
    cplx& operator[](std::size_t k) { return v_[k]; }
    const cplx& operator[](std::size_t k) const { return v_[k]; }
    std::span<const cplx> values() const noexcept { return v_; }
    std::vector<cplx>& data() noexcept { return v_; }

    double norm() const;
    /// f(w) by the multiplicative recurrence w^n / sqrt(n!).
    cplx evaluate(cplx w) const;

private:
    std::vector<cplx> v_;
};

/// <f, g> = sum f_n conj(g_n).
cplx inner(const CoeffVector& f, const CoeffVector& g);

/// N x N compression with entry(m, n) = <W e_n, e_m>, stored column-major.
class OperatorMatrix {
public:
    OperatorMatrix() = default;
    explicit OperatorMatrix(std::size_t n) : n_(n), entries_(n * n, cplx{0.0, 0.0}) {}

    std::size_t size() const noexcept { return n_; }
    cplx& operator()(std::size_t m, std::size_t n) { return entries_[n * n_ + m]; }
    const cplx& operator()(std::size_t m, std::size_t n) const { return entries_[n * n_ + m]; }
    std::span<const cplx> column(std::size_t n) const { return {entries_.data() + n * n_, n_}; }
    std::span<const cplx> entries() const noexcept { return entries_; }

    /// Set when the symbol is not bounded: norms grow without limit in N.
    bool divergent = false;

    friend bool operator==(const OperatorMatrix&, const OperatorMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<cplx> entries_;
};

/// K_w: v_n = conj(w)^n / sqrt(n!).
CoeffVector kernel_vector(cplx w, std::size_t n);

OperatorMatrix build_matrix(const OperatorSymbol& op, const TruncationParams& trunc);
CoeffVector apply(const OperatorMatrix& m, const CoeffVector& f);
/// Conjugate transpose times f.
CoeffVector apply_adjoint(const OperatorMatrix& m, const CoeffVector& f);

namespace serial {
OperatorMatrix build_matrix(const OperatorSymbol& op, const TruncationParams& trunc);
CoeffVector apply(const OperatorMatrix& m, const CoeffVector& f);
CoeffVector apply_adjoint(const OperatorMatrix& m, const CoeffVector& f);
} // namespace serial

struct Eigenvector {
    CoeffVector coeffs;
    /// sqrt of the squared coefficient mass beyond index N.
    double tail = 0.0;
};

/// (z - z0)^m exp(beta z) with beta = c / (1 - a).  Throws DegenerateMap
/// for a in {0, 1}.
Eigenvector expand_eigenvector(const OperatorSymbol& op, std::size_t m, const TruncationParams& trunc);

/// Number of leading coordinates kept by residual checks: N - ceil(N/8).
std::size_t buffered_size(std::size_t n) noexcept;

/// ||M v - mu v|| / ||v|| on the buffered coordinates.  Throws ZeroVector.
double eigen_residual(const OperatorMatrix& m, const CoeffVector& v, cplx mu);

/// Same residual for the m-th eigenvector evaluated entirely in 240-digit
/// MPFR arithmetic (matrix, eigenvector and eigenvalue), so that the
/// truncation effect can be measured below double rounding.
double eigen_residual_extended(const OperatorSymbol& op, std::size_t m, std::size_t n);

struct SingularValue {
    double value = 0.0;
    /// Equivalent number of power steps.
    std::size_t iterations = 0;
    double last_change = 0.0;
};

/// Largest singular value by power steps on G = M* M from the all-ones
/// vector.  Step 2^k is taken directly as G^(2^k) 1 by repeated squaring of
/// G; sigma is ||M x|| for the normalized iterate x.  Stops when sigma
/// changes by at most tol relative, but never before log2(1 / (e tol)) - 1
/// squarings, the count at which a clustered spectrum is resolved to tol.
/// Throws NoConvergence after max_squarings squarings.
SingularValue dominant_singular_value(const OperatorMatrix& m, double tol, std::size_t max_squarings = 48);

namespace serial {
SingularValue dominant_singular_value(const OperatorMatrix& m, double tol, std::size_t max_squarings = 48);
} // namespace serial

/// max |entry(candidate) - conj(entry(op)^T)| at truncation N.
double adjoint_consistency(const OperatorSymbol& op, const OperatorSymbol& candidate, const TruncationParams& trunc);

/// ||M* K_w - conj(u(w)) K_{psi(w)}|| / ||K_w||.
double kernel_covariance_check(const OperatorSymbol& op, cplx w, const TruncationParams& trunc);

} // namespace fockwc
