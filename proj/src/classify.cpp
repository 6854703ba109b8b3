#include "fockwc/classify.hpp"

#include "fockwc/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace fockwc {

std::string_view to_string(VerdictValue v) noexcept {
    switch (v) {
    case VerdictValue::Yes: return "Yes";
    case VerdictValue::No: return "No";
    case VerdictValue::YesWithMargin: return "YesWithMargin";
    case VerdictValue::NoWithMargin: return "NoWithMargin";
    case VerdictValue::Unknown: return "Unknown";
    }
    return "Unknown";
}

Verdict Verdict::decide(bool value, bool exact, std::string reason, double margin) {
    if (exact) return value ? yes(std::move(reason)) : no(std::move(reason));
    return {value ? VerdictValue::YesWithMargin : VerdictValue::NoWithMargin, std::move(reason), margin};
}

namespace {

constexpr double kUnitTolerance = 1e-9;   // band around |a| = 1 for cartesian input
constexpr double kKernelTolerance = 1e-12; // c + a conj(b) = 0 test
constexpr double kModulusTolerance = 1e-12; // |lambda| = 1 boundary
constexpr double kRealLineThreshold = 1e-9; // inexact Im(lambda a^m) = 0 test

enum class ModulusClass { Zero, Interior, Unit, Exterior, Ambiguous };

struct ModulusInfo {
    ModulusClass cls;
    bool exact;
    double modulus;
};

ModulusInfo modulus_info(const Scalar& a) {
    if (const auto& pol = a.polar()) {
        const double r = pol->modulus;
        if (r == 0.0) return {ModulusClass::Zero, true, r};
        if (r == 1.0) return {ModulusClass::Unit, true, r};
        return {r < 1.0 ? ModulusClass::Interior : ModulusClass::Exterior, true, r};
    }
    const double r = a.abs();
    if (std::abs(r - 1.0) <= kUnitTolerance) return {ModulusClass::Ambiguous, false, r};
    return {r < 1.0 ? ModulusClass::Interior : ModulusClass::Exterior, false, r};
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

double kernel_defect(const OperatorSymbol& op) {
    const cplx a = op.psi().a.value();
    const cplx b = op.psi().b.value();
    return std::abs(op.u().c().value() + a * std::conj(b));
}

bool kernel_rule_holds(const OperatorSymbol& op) {
    if (op.c_from_kernel_rule()) return true;
    return kernel_defect(op) <= kKernelTolerance * std::max(1.0, op.psi().b.abs());
}

bool is_identity_map(const OperatorSymbol& op) { return op.psi().is_identity(); }

/// Orthonormal-basis norm of u = d exp(cz) p(z), summed until the tail is
/// negligible.
double multiplier_norm(const Multiplier& u) {
    using ld = long double;
    const std::complex<ld> c(u.c().re(), u.c().im());
    std::vector<std::complex<ld>> e; // exp(cz) coefficients c^k / sqrt(k!)
    std::vector<std::complex<ld>> v;
    const std::size_t deg = u.degree();
    ld norm2 = 0;
    ld peak = 0;
    std::complex<ld> ek(1.0L, 0.0L);
    for (std::size_t k = 0; k < 100000; ++k) {
        e.push_back(ek);
        ek *= c / std::sqrt(static_cast<ld>(k + 1));
        // coefficient k of p(S) e where (S x)_k = sqrt(k) x_{k-1}
        std::complex<ld> acc(0.0L, 0.0L);
        for (std::size_t i = 0; i <= deg && i <= k; ++i) {
            ld scale = 1.0L;
            for (std::size_t t = 0; t < i; ++t) scale *= std::sqrt(static_cast<ld>(k - t));
            const cplx pi = u.p()[i].value();
            acc += std::complex<ld>(pi.real(), pi.imag()) * scale * e[k - i];
        }
        const ld term = std::norm(acc);
        norm2 += term;
        peak = std::max(peak, term);
        if (k > deg + 8 && term < 1e-40L * norm2 && std::norm(ek) < 1e-40L * norm2) break;
    }
    return static_cast<double>(u.d().abs() * std::sqrt(norm2));
}

/// log of sup_z |p(z)| exp(Re(w z) - alpha |z|^2 / 2), alpha > 0.
double log_sup_numeric(const Multiplier& u, cplx w, double alpha) {
    const double deg = static_cast<double>(u.degree());
    const double radius = 2.0 * std::abs(w) / alpha + 2.0 * std::sqrt(2.0 * (deg + 1.0) / alpha) + 4.0;
    auto g = [&](double x, double y) {
        const cplx z{x, y};
        const double ap = std::abs(u.poly(z));
        if (ap == 0.0) return -std::numeric_limits<double>::infinity();
        return std::log(ap) + (w * z).real() - 0.5 * alpha * std::norm(z);
    };
    constexpr int kGrid = 241;
    double best = -std::numeric_limits<double>::infinity();
    double bx = 0.0, by = 0.0;
    for (int i = 0; i < kGrid; ++i) {
        for (int j = 0; j < kGrid; ++j) {
            const double x = -radius + 2.0 * radius * i / (kGrid - 1);
            const double y = -radius + 2.0 * radius * j / (kGrid - 1);
            const double v = g(x, y);
            if (v > best) {
                best = v;
                bx = x;
                by = y;
            }
        }
    }
    // Compass search from the best grid point.
    double step = 2.0 * radius / (kGrid - 1);
    while (step > 1e-13 * std::max(1.0, radius)) {
        bool moved = false;
        for (auto [dx, dy] : {std::pair{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}}) {
            const double v = g(bx + dx * step, by + dy * step);
            if (v > best) {
                best = v;
                bx += dx * step;
                by += dy * step;
                moved = true;
            }
        }
        if (!moved) step *= 0.5;
    }
    return best;
}

/// Numeric arg / 2pi in [0, 1).
long double turns_of(cplx z) {
    long double t = std::atan2(static_cast<long double>(z.imag()), static_cast<long double>(z.real())) /
                    (2.0L * std::numbers::pi_v<long double>);
    return t - std::floor(t);
}

long double turns_of(const Scalar& s) {
    if (s.polar()) return s.polar()->angle.turns();
    return turns_of(s.value());
}

/// min_{m <= kMarginScanLength} |sin(2 pi (t + m s))|.
double real_line_margin(long double t, long double s) {
    double best = std::numeric_limits<double>::infinity();
    for (std::int64_t m = 0; m <= kMarginScanLength; ++m) {
        long double x = t + static_cast<long double>(m) * s;
        x -= std::floor(x);
        best = std::min(best, static_cast<double>(std::abs(std::sin(2.0L * std::numbers::pi_v<long double> * x))));
    }
    return best;
}

} // namespace

Verdict check_bounded(const OperatorSymbol& op) {
    const ModulusInfo mi = modulus_info(op.psi().a);
    switch (mi.cls) {
    case ModulusClass::Zero:
        return Verdict::yes("a = 0: W is the rank-one operator f -> f(b) u and u lies in the space");
    case ModulusClass::Interior:
        return Verdict::decide(true, mi.exact,
                               "0 < |a| < 1: the Gaussian decay exp(-(1-|a|^2)|z|^2/2) dominates, so "
                               "sup |u(z)| exp((|psi(z)|^2 - |z|^2)/2) is finite",
                               std::min(mi.modulus, 1.0 - mi.modulus));
    case ModulusClass::Exterior:
        return Verdict::decide(false, mi.exact, "|a| > 1: psi does not map into the admissible affine class",
                               mi.modulus - 1.0);
    case ModulusClass::Ambiguous:
        return Verdict::unknown("|a| = " + fmt(mi.modulus) +
                                    " is within 1e-9 of 1 without an exact polar annotation",
                                std::abs(mi.modulus - 1.0));
    case ModulusClass::Unit:
        break;
    }
    if (!op.u().is_constant_poly())
        return Verdict::no("|a| = 1 requires u = u(0) K_{-conj(a) b}; a nonconstant polynomial factor makes "
                           "the boundedness supremum infinite");
    if (kernel_rule_holds(op))
        return Verdict::yes("|a| = 1 and u = u(0) exp(-a conj(b) z): the boundedness supremum equals "
                            "|u(0)| exp(|b|^2/2)");
    return Verdict::no("|a| = 1 requires c = -a conj(b); |c + a conj(b)| = " + fmt(kernel_defect(op)));
}

double boundedness_supremum(const OperatorSymbol& op) {
    const cplx a = op.psi().a.value();
    const cplx b = op.psi().b.value();
    const double alpha = 1.0 - std::norm(a);
    if (!(alpha > 0.0)) throw std::domain_error("boundedness supremum needs |a| < 1");
    const cplx w = op.u().c().value() + a * std::conj(b);
    const double base = std::log(op.u().d().abs()) + 0.5 * std::norm(b);
    if (op.u().is_constant_poly())
        return std::exp(base + std::log(op.u().p()[0].abs()) + std::norm(w) / (2.0 * alpha));
    return std::exp(base + log_sup_numeric(op.u(), w, alpha));
}

NormBounds operator_norm(const OperatorSymbol& op) {
    const Verdict bounded = check_bounded(op);
    if (!bounded.affirmative()) throw Unbounded(bounded.reason);

    const ModulusInfo mi = modulus_info(op.psi().a);
    const double b2 = std::norm(op.psi().b.value());
    if (mi.cls == ModulusClass::Unit) {
        const double v = op.u().leading().abs() * std::exp(0.5 * b2);
        return {v, v, true};
    }
    if (mi.cls == ModulusClass::Zero) {
        // W f = <f, K_b> u, so ||W|| = ||u|| ||K_b||.
        const Multiplier& u = op.u();
        double unorm = u.is_constant_poly() ? u.leading().abs() * std::exp(0.5 * std::norm(u.c().value()))
                                            : multiplier_norm(u);
        const double v = unorm * std::exp(0.5 * b2);
        return {v, v, u.is_constant_poly()};
    }
    const double s = boundedness_supremum(op);
    return {s, s / mi.modulus, false};
}

Verdict check_cyclic(const OperatorSymbol& op) {
    const Verdict bounded = check_bounded(op);
    if (bounded.value == VerdictValue::Unknown) return Verdict::unknown("boundedness undecided: " + bounded.reason);
    if (bounded.negative())
        return Verdict::decide(false, bounded.exact(), "not a bounded operator: " + bounded.reason,
                               bounded.margin.value_or(0.0));
    if (is_identity_map(op))
        return Verdict::no("psi is the identity: W = M_u is a multiplication operator and a^k = a for all k");
    if (!op.u().nonvanishing())
        return Verdict::no("u vanishes at a root of its polynomial factor; cyclicity needs u zero-free");

    const Scalar& a = op.psi().a;
    bool repeats = false;
    try {
        repeats = power_equals_base(a);
    } catch (const InexactInput& e) {
        return Verdict::unknown(e.what(), std::abs(a.abs() - 1.0));
    }
    if (repeats) {
        std::string why = a.is_zero() ? "a = 0, so a^k = a for every k >= 2"
                                       : "a is a root of unity (" + a.polar()->angle.to_string() +
                                             " turns), so a^k = a for some k >= 2";
        return Verdict::no("cyclicity needs u zero-free and a^k != a for all k >= 2; " + why);
    }
    const ModulusInfo mi = modulus_info(a);
    std::string why = mi.cls == ModulusClass::Unit
                          ? "|a| = 1 with irrational angle " + a.polar()->angle.to_string() + " turns"
                          : "0 < |a| < 1, so |a^k| < |a|";
    return Verdict::decide(true, mi.exact, "u is zero-free and a^k != a for all k >= 2: " + why,
                           std::min(mi.modulus, 1.0 - mi.modulus));
}

Verdict check_convex_cyclic(const OperatorSymbol& op) {
    const Verdict cyclic = check_cyclic(op);
    if (cyclic.value == VerdictValue::Unknown) return Verdict::unknown("cyclicity undecided: " + cyclic.reason);
    if (cyclic.negative())
        return Verdict::decide(false, cyclic.exact(), "convex-cyclicity implies cyclicity, which fails: " + cyclic.reason,
                               cyclic.margin.value_or(0.0));

    const Scalar& a = op.psi().a;
    const ModulusInfo mi = modulus_info(a);
    if (mi.cls != ModulusClass::Unit)
        return Verdict::decide(false, mi.exact,
                               "convex-cyclicity needs |a| = 1 (every eigenvalue a^m lambda must lie outside "
                               "the closed unit disc); here |a| = " + fmt(mi.modulus),
                               1.0 - mi.modulus);

    // |a| = 1 and bounded: lambda = u(z0) = d p0 exp(c z0), |lambda| = |d p0| exp(|b|^2/2).
    const Scalar lead = op.u().leading();
    const cplx b = op.psi().b.value();
    const double log_mod = std::log(lead.abs()) + 0.5 * std::norm(b);
    const double lam_mod = std::exp(log_mod);
    if (std::abs(log_mod) <= kModulusTolerance) {
        if (b == cplx{} && lead.abs() == 1.0)
            return Verdict::no("|lambda| = |u(z0)| = 1 exactly; convex-cyclicity needs |u(z0)| > 1");
        return Verdict::unknown("|lambda| = " + fmt(lam_mod) + " is within 1e-12 of 1; strict inequality undecidable",
                                std::abs(log_mod));
    }
    if (log_mod < 0.0)
        return Verdict::no("|lambda| = |u(z0)| = " + fmt(lam_mod) + " <= 1; eigenvalues a^m lambda lie in the unit disc");

    const bool angle_exact = (b == cplx{}) && lead.is_exact();
    if (angle_exact) {
        const ExactAngle t = lead.polar()->angle;
        const ExactAngle s = a.polar()->angle;
        if (auto m = is_half_integer_combination(t, s))
            return Verdict::no("Im(lambda a^m) = 0 at m = " + std::to_string(*m) + " (arg lambda = " + t.to_string() +
                               " turns, arg a = " + s.to_string() + " turns): a real eigenvalue blocks convex-cyclicity");
        return Verdict::yes("cyclic, |a| = 1, |lambda| = " + fmt(lam_mod) +
                            " > 1 and Im(lambda a^m) != 0 for every m >= 0 (arg lambda = " + t.to_string() +
                            " turns, arg a = " + s.to_string() + " turns, decided exactly)");
    }
    // arg(lambda) involves -|b|^2 cot(pi s)/2 and is not exactly representable.
    const cplx lam = *op.lambda();
    const double margin = real_line_margin(turns_of(lam), turns_of(a));
    const bool clear = margin > kRealLineThreshold;
    return Verdict::decide(clear, false,
                           std::string("cyclic, |a| = 1, |lambda| = ") + fmt(lam_mod) + " > 1; arg(lambda) not exact, "
                               "min |sin arg(lambda a^m)| over m <= " + std::to_string(kMarginScanLength) + " is " +
                               fmt(margin) + " (non-exhaustive scan)",
                           margin);
}

std::array<Verdict, 3> check_supercyclic_family(const OperatorSymbol& op) {
    const Verdict bounded = check_bounded(op);
    if (bounded.value == VerdictValue::Unknown) {
        Verdict u = Verdict::unknown("boundedness undecided: " + bounded.reason);
        return {u, u, u};
    }
    if (bounded.negative()) {
        Verdict n = Verdict::decide(false, bounded.exact(), "not a bounded operator: " + bounded.reason,
                                    bounded.margin.value_or(0.0));
        return {n, n, n};
    }
    const double m = bounded.margin.value_or(0.0);
    const bool ex = bounded.exact();
    Verdict tpt = Verdict::decide(
        false, ex,
        "no bounded weighted composition operator is supercyclic for the pointwise topology: on a compact "
        "psi-invariant neighbourhood K the orbit ratios u_n(z) f(psi^n z) / u_n(w) f(psi^n w) stay below "
        "M = max|u| max|f| / (min|u| min|f|), so they cannot be dense in C",
        m);
    Verdict weak = Verdict::decide(false, ex,
                                   "weak supercyclicity implies pointwise-topology supercyclicity, which fails", m);
    Verdict strong = Verdict::decide(false, ex, "norm supercyclicity implies weak supercyclicity, which fails", m);
    return {strong, weak, tpt};
}

EigenSystem eigen_system(const OperatorSymbol& op, std::uint64_t m_max) {
    const Scalar& a = op.psi().a;
    if (a.value() == cplx{1.0, 0.0} || a.is_zero()) throw DegenerateMap("eigen system needs a not in {0, 1}");
    if (!op.u().is_constant_poly())
        throw UnsupportedMultiplier("closed-form eigenvectors need a constant polynomial factor");
    const Verdict bounded = check_bounded(op);
    if (bounded.negative()) throw Unbounded(bounded.reason);

    EigenSystem es;
    es.z0 = *op.z0();
    es.lambda = *op.lambda();
    es.beta = eigen_exponent(op);
    try {
        es.distinct = !power_equals_base(a);
    } catch (const InexactInput&) {
        es.distinct = false;
    }
    es.pairs.reserve(m_max + 1);
    for (std::uint64_t m = 0; m <= m_max; ++m)
        es.pairs.push_back({m, a.pow(static_cast<std::int64_t>(m)).value() * es.lambda});
    return es;
}

std::optional<OperatorSymbol> adjoint_symbol(const OperatorSymbol& op) {
    if (!op.u().is_constant_poly())
        throw UnsupportedMultiplier("adjoint symbol needs u = d exp(cz) (constant polynomial factor)");
    const ModulusInfo mi = modulus_info(op.psi().a);
    switch (mi.cls) {
    case ModulusClass::Zero:
    case ModulusClass::Interior:
        break;
    case ModulusClass::Unit:
        if (!kernel_rule_holds(op)) return std::nullopt;
        break;
    case ModulusClass::Exterior:
    case ModulusClass::Ambiguous:
        return std::nullopt;
    }
    // W* K_w = conj(u(w)) K_{psi(w)} = conj(d p0) exp(conj(b) z) K_w(conj(a) z + conj(c)).
    const Multiplier& u = op.u();
    AffineMap psi2{op.psi().a.conj(), u.c().conj()};
    Multiplier u2(u.d().conj(), op.psi().b.conj(), {u.p()[0].conj()});
    return OperatorSymbol(std::move(u2), std::move(psi2), op.c_from_kernel_rule());
}

namespace {

void require(bool cond, const char* what) {
    if (!cond) throw std::logic_error(std::string("classification report invariant violated: ") + what);
}

Verdict mirrored(const Verdict& v, const std::string& prefix) {
    Verdict r = v;
    r.reason = prefix + v.reason;
    return r;
}

} // namespace

ClassificationReport classify_full(const OperatorSymbol& op) {
    ClassificationReport r;
    r.bounded = check_bounded(op);
    if (r.bounded.affirmative()) r.norm = operator_norm(op);

    r.cyclic = check_cyclic(op);
    r.adjoint_cyclic = mirrored(r.cyclic, "W* is cyclic exactly when W is: ");
    r.weakly_cyclic = mirrored(r.cyclic, "weak and norm closures of the orbit span coincide: ");

    r.convex_cyclic = check_convex_cyclic(op);
    r.adjoint_convex_cyclic = mirrored(r.convex_cyclic, "W* is convex-cyclic exactly when W is: ");
    r.invariant_convex_property = mirrored(
        r.convex_cyclic, "every invariant closed convex set is an invariant subspace exactly when W is convex-cyclic: ");

    auto fam = check_supercyclic_family(op);
    r.supercyclic = fam[0];
    r.weakly_supercyclic = fam[1];
    r.tpt_supercyclic = fam[2];

    const cplx a = op.psi().a.value();
    if (!r.bounded.affirmative()) {
        r.eigen_note = "operator is not bounded";
        r.adjoint_note = "operator is not bounded";
    } else {
        if (a == cplx{1.0, 0.0} || a == cplx{0.0, 0.0})
            r.eigen_note = "a in {0, 1}: no eigenvector family (z - z0)^m exp(beta z)";
        else if (!op.u().is_constant_poly())
            r.eigen_note = "nonconstant polynomial factor: no closed-form eigenvectors";
        else
            r.eigen = eigen_system(op, 5);

        if (!op.u().is_constant_poly()) {
            r.adjoint_note = "nonconstant polynomial factor: adjoint is not a weighted composition operator";
        } else {
            r.adjoint_symbol = adjoint_symbol(op);
            if (!r.adjoint_symbol) r.adjoint_note = "|a| = 1 without c = -a conj(b): adjoint is not of this form";
        }
    }

    // Implication consistency.
    require(!(r.convex_cyclic.affirmative() && !r.cyclic.affirmative()), "convex-cyclic implies cyclic");
    require(!(r.supercyclic.affirmative() && !r.weakly_supercyclic.affirmative()), "supercyclic implies weakly");
    require(!(r.weakly_supercyclic.affirmative() && !r.tpt_supercyclic.affirmative()), "weakly implies tpt");
    require(!(r.supercyclic.affirmative() && !r.cyclic.affirmative()), "supercyclic implies cyclic");
    require(r.cyclic.value == r.weakly_cyclic.value, "cyclic equals weakly cyclic");
    require(r.cyclic.value == r.adjoint_cyclic.value, "cyclic equals adjoint cyclic");
    require(r.convex_cyclic.value == r.adjoint_convex_cyclic.value &&
                r.convex_cyclic.value == r.invariant_convex_property.value,
            "convex-cyclic equivalences");
    if (r.convex_cyclic.value == VerdictValue::Yes) {
        require(r.norm && r.norm->exact, "convex-cyclic implies exact norm");
        require(r.norm->lower > 1.0 && std::abs(r.norm->lower - std::abs(*op.lambda())) <= 1e-9 * r.norm->lower,
                "convex-cyclic implies norm = |lambda| > 1");
    }
    return r;
}

} // namespace fockwc
