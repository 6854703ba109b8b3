#pragma once

// Decision procedures for the dynamics of W_(u, psi) on the Fock space:
// boundedness and norm, cyclicity, convex-cyclicity (with the equivalent
// adjoint and invariant-convex-set properties), the supercyclicity family,
// the point spectrum and the adjoint symbol.

#include "fockwc/symbol.hpp"

#include <array>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

namespace fockwc {

enum class VerdictValue { Yes, No, YesWithMargin, NoWithMargin, Unknown };

std::string_view to_string(VerdictValue v) noexcept;

/// Yes/No are reserved for exact inputs; *WithMargin carries the distance
/// to the nearest verdict-flipping input where that is computable.
struct Verdict {
    VerdictValue value = VerdictValue::Unknown;
    std::string reason;
    std::optional<double> margin;

    bool affirmative() const noexcept { return value == VerdictValue::Yes || value == VerdictValue::YesWithMargin; }
    bool negative() const noexcept { return value == VerdictValue::No || value == VerdictValue::NoWithMargin; }
    bool exact() const noexcept { return value == VerdictValue::Yes || value == VerdictValue::No; }

    static Verdict yes(std::string reason) { return {VerdictValue::Yes, std::move(reason), std::nullopt}; }
    static Verdict no(std::string reason) { return {VerdictValue::No, std::move(reason), std::nullopt}; }
    static Verdict unknown(std::string reason, std::optional<double> margin = std::nullopt) {
        return {VerdictValue::Unknown, std::move(reason), margin};
    }
    /// Yes/No when exact, otherwise the margin-qualified form.
    static Verdict decide(bool value, bool exact, std::string reason, double margin);
};

struct NormBounds {
    double lower = 0.0;
    double upper = std::numeric_limits<double>::infinity();
    bool exact = false;
};

struct ClassificationReport {
    Verdict bounded;
    std::optional<NormBounds> norm;
    Verdict cyclic;
    Verdict adjoint_cyclic;
    Verdict convex_cyclic;
    Verdict adjoint_convex_cyclic;
    Verdict invariant_convex_property;
    Verdict supercyclic;
    Verdict weakly_supercyclic;
    Verdict tpt_supercyclic;
    Verdict weakly_cyclic;
    std::optional<EigenSystem> eigen;
    std::optional<OperatorSymbol> adjoint_symbol;
    /// Why eigen / adjoint_symbol are absent, when they are.
    std::string eigen_note;
    std::string adjoint_note;
};

/// Number of powers scanned by the inexact real-line test.
inline constexpr std::int64_t kMarginScanLength = 10000;

Verdict check_bounded(const OperatorSymbol& op);
/// Throws Unbounded unless check_bounded is affirmative.
NormBounds operator_norm(const OperatorSymbol& op);
Verdict check_cyclic(const OperatorSymbol& op);
Verdict check_convex_cyclic(const OperatorSymbol& op);
/// (supercyclic, weakly supercyclic, pointwise-topology supercyclic).
std::array<Verdict, 3> check_supercyclic_family(const OperatorSymbol& op);

/// Eigenvalues a^m lambda for m = 0..m_max.  Throws DegenerateMap for
/// a in {0, 1} and UnsupportedMultiplier for a nonconstant polynomial factor.
EigenSystem eigen_system(const OperatorSymbol& op, std::uint64_t m_max);

/// Symbol of W* when it is again a weighted composition operator:
/// psi2(z) = conj(a) z + conj(c), u2(z) = conj(d p0) exp(conj(b) z).
/// Returns nullopt when |a| = 1 and c != -a conj(b), or |a| > 1.
/// Throws UnsupportedMultiplier for a nonconstant polynomial factor.
std::optional<OperatorSymbol> adjoint_symbol(const OperatorSymbol& op);

/// Runs every check and enforces the report invariants (throws
/// std::logic_error on an internal inconsistency).
ClassificationReport classify_full(const OperatorSymbol& op);

/// Sup over the plane of |u(z)| exp((|psi(z)|^2 - |z|^2) / 2), the lower
/// bound of the norm bracket when 0 < |a| < 1.
double boundedness_supremum(const OperatorSymbol& op);

} // namespace fockwc
