#include "fockwc/symbol.hpp"

#include "fockwc/errors.hpp"

#include <cmath>
#include <limits>

namespace fockwc {

AffineMap AffineMap::after(const AffineMap& inner) const {
    AffineMap r;
    r.a = a * inner.a;
    r.b = Scalar(a.value() * inner.b.value() + b.value());
    return r;
}

bool AffineMap::is_identity() const noexcept {
    return a.value() == cplx{1.0, 0.0} && b.is_zero();
}

cplx fixed_point(const AffineMap& psi) {
    if (psi.a.value() == cplx{1.0, 0.0}) {
        if (psi.b.is_zero()) return {0.0, 0.0};
        throw DegenerateMap("translation z + b with b != 0 has no fixed point");
    }
    return psi.b.value() / (cplx{1.0, 0.0} - psi.a.value());
}

AffineMap iterate_map(const AffineMap& psi, std::uint64_t n) {
    AffineMap result; // identity
    AffineMap base = psi;
    // Binary powering; composition of affine maps is associative and maps
    // commute with their own iterates, so the order of factors is free.
    for (std::uint64_t k = n; k > 0; k >>= 1) {
        if (k & 1) result = result.after(base);
        if (k > 1) base = base.after(base);
    }
    if (psi.a.value() == cplx{1.0, 0.0}) {
        // Translations: n b exactly.
        result.b = Scalar(psi.b.value() * static_cast<double>(n));
    }
    return result;
}

Multiplier::Multiplier(Scalar d, Scalar c, std::vector<Scalar> p)
    : d_(std::move(d)), c_(std::move(c)), p_(std::move(p)) {
    if (p_.empty()) throw InvalidSymbol("polynomial factor needs at least one coefficient");
    if (p_.back().is_zero()) throw InvalidSymbol("leading polynomial coefficient must be nonzero");
    if (d_.is_zero()) throw InvalidSymbol("multiplier scale d must be nonzero");
}

Multiplier Multiplier::kernel_form(Scalar d, Scalar c) {
    return Multiplier(std::move(d), std::move(c), {Scalar(1.0)});
}

cplx Multiplier::poly(cplx z) const {
    cplx acc{0.0, 0.0};
    for (auto it = p_.rbegin(); it != p_.rend(); ++it) acc = acc * z + it->value();
    return acc;
}

cplx Multiplier::operator()(cplx z) const {
    return d_.value() * std::exp(c_.value() * z) * poly(z);
}

double Multiplier::log_abs(cplx z) const {
    return std::log(d_.abs()) + (c_.value() * z).real() + std::log(std::abs(poly(z)));
}

namespace {

cplx eval_poly(const std::vector<cplx>& p, cplx z) {
    cplx acc{0.0, 0.0};
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + *it;
    return acc;
}

std::vector<cplx> poly_mul(const std::vector<cplx>& x, const std::vector<cplx>& y) {
    std::vector<cplx> r(x.size() + y.size() - 1, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) r[i + j] += x[i] * y[j];
    return r;
}

/// Coefficients of p(alpha z + beta).
std::vector<cplx> poly_compose_affine(const std::vector<Scalar>& p, cplx alpha, cplx beta) {
    std::vector<cplx> r{p.back().value()};
    for (std::size_t k = p.size() - 1; k-- > 0;) {
        r = poly_mul(r, {beta, alpha});
        r[0] += p[k].value();
    }
    return r;
}

} // namespace

cplx IteratedMultiplier::operator()(cplx z) const {
    return std::exp(log_d + c * z) * eval_poly(p, z);
}

double IteratedMultiplier::log_abs(cplx z) const {
    return (log_d + c * z).real() + std::log(std::abs(eval_poly(p, z)));
}

Multiplier IteratedMultiplier::to_multiplier() const {
    if (log_d.real() > std::log(std::numeric_limits<double>::max()) * 0.9 ||
        log_d.real() < std::log(std::numeric_limits<double>::min()) * 0.9)
        throw TruncationOverflow("iterated multiplier constant exp(" + std::to_string(log_d.real()) +
                                 ") is out of range");
    std::vector<Scalar> ps;
    ps.reserve(p.size());
    for (const cplx& x : p) ps.push_back(Scalar(x));
    while (ps.size() > 1 && ps.back().is_zero()) ps.pop_back();
    return Multiplier(Scalar(std::exp(log_d)), Scalar(c), std::move(ps));
}

OperatorSymbol::OperatorSymbol(Multiplier u, AffineMap psi, bool c_from_kernel_rule)
    : u_(std::move(u)), psi_(std::move(psi)), c_from_kernel_rule_(c_from_kernel_rule) {
    if (psi_.a.value() != cplx{1.0, 0.0}) {
        z0_ = fixed_point(psi_);
        lambda_ = u_(*z0_);
    }
}

OperatorSymbol OperatorSymbol::with_default_c(Scalar a, Scalar b, Scalar d, std::vector<Scalar> p) {
    const bool unit = a.polar() && a.polar()->modulus == 1.0;
    Scalar c = unit ? Scalar(-(a.value() * std::conj(b.value()))) : Scalar(0.0);
    return OperatorSymbol(Multiplier(std::move(d), c, std::move(p)), AffineMap{std::move(a), std::move(b)}, unit);
}

IteratedMultiplier iterated_multiplier(const OperatorSymbol& op, std::uint64_t n) {
    const Multiplier& u = op.u();
    const cplx a = op.psi().a.value();
    const cplx b = op.psi().b.value();
    const cplx c = u.c().value();

    // psi^j(z) = a^j z + B_j with B_0 = 0, B_{j+1} = a B_j + b.
    IteratedMultiplier r;
    r.log_d = static_cast<double>(n) * std::log(u.d().value());
    cplx sum_aj{0.0, 0.0};
    cplx sum_bj{0.0, 0.0};
    cplx aj{1.0, 0.0};
    cplx bj{0.0, 0.0};
    std::vector<cplx> poly{cplx{1.0, 0.0}};
    for (std::uint64_t j = 0; j < n; ++j) {
        sum_aj += aj;
        sum_bj += bj;
        if (!u.is_constant_poly())
            poly = poly_mul(poly, poly_compose_affine(u.p(), aj, bj));
        else
            r.log_d += std::log(u.p()[0].value());
        bj = a * bj + b;
        aj *= a;
    }
    r.log_d += c * sum_bj;
    r.c = c * sum_aj;
    r.p = std::move(poly);
    return r;
}

bool power_equals_base(const Scalar& a) {
    if (const auto& pol = a.polar()) {
        if (pol->modulus == 0.0) return true;
        if (pol->modulus == 1.0) return pol->angle.is_rational();
        return false;
    }
    const double r = a.abs();
    if (r == 0.0) return true;
    if (std::abs(r - 1.0) <= 1e-9)
        throw InexactInput("|a| = " + std::to_string(r) +
                           " is within 1e-9 of 1 and a carries no exact angle; root-of-unity test undecidable");
    return false;
}

cplx eigen_exponent(const OperatorSymbol& op) {
    const cplx a = op.psi().a.value();
    if (a == cplx{1.0, 0.0} || a == cplx{0.0, 0.0})
        throw DegenerateMap("eigenvector family needs a not in {0, 1}");
    return op.u().c().value() / (cplx{1.0, 0.0} - a);
}

} // namespace fockwc
