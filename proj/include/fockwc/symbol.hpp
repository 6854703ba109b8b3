#pragma once

// Symbol data of a weighted composition operator W f = u * (f o psi):
// an affine self-map psi(z) = a z + b of the plane and a multiplier of the
// form u(z) = d * exp(c z) * p(z).

#include "fockwc/scalar.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace fockwc {

/// psi(z) = a z + b.  |a| <= 1 is needed for boundedness but is not
/// enforced here.
struct AffineMap {
    Scalar a{1.0};
    Scalar b{0.0};

    cplx operator()(cplx z) const noexcept { return a.value() * z + b.value(); }
    /// (this o inner)(z) = this(inner(z)).
    AffineMap after(const AffineMap& inner) const;
    bool is_identity() const noexcept;
};

/// Fixed point b / (1 - a).  Throws DegenerateMap when a = 1 and b != 0;
/// the identity map (a = 1, b = 0) fixes every point and returns 0.
cplx fixed_point(const AffineMap& psi);

/// psi composed with itself n times: (a^n, b (1 + a + ... + a^{n-1})).
AffineMap iterate_map(const AffineMap& psi, std::uint64_t n);

/// u(z) = d * exp(c z) * p(z), p given constant term first.
class Multiplier {
public:
    Multiplier() = default;
    Multiplier(Scalar d, Scalar c, std::vector<Scalar> p);
    /// d * exp(c z) with p = 1.
    static Multiplier kernel_form(Scalar d, Scalar c);

    const Scalar& d() const noexcept { return d_; }
    const Scalar& c() const noexcept { return c_; }
    const std::vector<Scalar>& p() const noexcept { return p_; }
    std::size_t degree() const noexcept { return p_.size() - 1; }
    bool is_constant_poly() const noexcept { return p_.size() == 1; }

    /// u has no zeros on the plane.
    bool nonvanishing() const noexcept { return is_constant_poly() && !d_.is_zero() && !p_[0].is_zero(); }
    /// d * p[0], the constant factor of u when p is constant; exact when
    /// both factors are.
    Scalar leading() const { return d_ * p_[0]; }

    cplx operator()(cplx z) const;
    cplx poly(cplx z) const;
    /// log |u(z)|, finite away from zeros of p.
    double log_abs(cplx z) const;

private:
    Scalar d_{1.0};
    Scalar c_{0.0};
    std::vector<Scalar> p_{Scalar(1.0)};
};

/// u_n(z) = prod_{j<n} u(psi^j(z)), stored as exp(log_d + c z) * p(z) so
/// that large n does not overflow the leading constant.
struct IteratedMultiplier {
    cplx log_d{0.0, 0.0};
    cplx c{0.0, 0.0};
    std::vector<cplx> p{cplx{1.0, 0.0}};

    cplx operator()(cplx z) const;
    double log_abs(cplx z) const;
    /// Converts to a Multiplier; throws TruncationOverflow if exp(log_d)
    /// is not representable.
    Multiplier to_multiplier() const;
};

/// The pair (u, psi) together with the fixed point z0 and lambda = u(z0).
class OperatorSymbol {
public:
    OperatorSymbol() = default;
    OperatorSymbol(Multiplier u, AffineMap psi, bool c_from_kernel_rule = false);

    /// Symbol with c chosen as -a conj(b) when |a| = 1 exactly (the only
    /// bounded choice) and c = 0 otherwise.
    static OperatorSymbol with_default_c(Scalar a, Scalar b, Scalar d, std::vector<Scalar> p = {Scalar(1.0)});

    const Multiplier& u() const noexcept { return u_; }
    const AffineMap& psi() const noexcept { return psi_; }
    /// True when c was derived as -a conj(b) rather than supplied.
    bool c_from_kernel_rule() const noexcept { return c_from_kernel_rule_; }

    /// Absent when a = 1.
    const std::optional<cplx>& z0() const noexcept { return z0_; }
    const std::optional<cplx>& lambda() const noexcept { return lambda_; }

private:
    Multiplier u_;
    AffineMap psi_;
    bool c_from_kernel_rule_ = false;
    std::optional<cplx> z0_;
    std::optional<cplx> lambda_;
};

/// Closed form of u_n for the iterate W^n = W_(u_n, psi^n).
IteratedMultiplier iterated_multiplier(const OperatorSymbol& op, std::uint64_t n);

/// True when a^k = a for some k >= 2, i.e. a = 0 or a is a root of unity.
/// Throws InexactInput when a has no exact annotation and |a| is within
/// 1e-9 of one.
bool power_equals_base(const Scalar& a);

/// Eigenvalues a^m lambda and eigenvectors (z - z0)^m exp(beta z).
struct EigenSystem {
    struct Pair {
        std::uint64_t m = 0;
        cplx eigenvalue;
    };
    cplx z0;
    cplx beta;
    cplx lambda;
    std::vector<Pair> pairs;
    /// Eigenvalues pairwise distinct (a is not zero or a root of unity).
    bool distinct = false;
};

/// Exponent of the eigenvector family, c / (1 - a).  Equals
/// a conj(b) / (a - 1) for kernel-form multipliers c = -a conj(b).
cplx eigen_exponent(const OperatorSymbol& op);

} // namespace fockwc
