#pragma once

// Exact angle arithmetic in "turns" (fractions of a full rotation).
//
// An angle is either a rational number of turns, or a rational offset plus a
// nonzero rational multiple of an irrational constant taken from a small
// catalog.  Because 1, sqrt2, sqrt3 and sqrt5 are linearly independent over
// the rationals (and golden = 1/2 + sqrt5/2), questions such as "is the
// angle a root of unity" or "does t + m*s land on {0, 1/2} mod 1" are
// decidable without floating point.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace fockwc {

/// Exact rational with 64-bit numerator/denominator, always in lowest
/// terms with a positive denominator.  Arithmetic is overflow-checked.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }

    bool is_zero() const noexcept { return num_ == 0; }
    bool is_integer() const noexcept { return den_ == 1; }
    /// True when 2*x is an integer, i.e. x lies in (1/2)Z.
    bool is_half_integer() const noexcept { return den_ == 1 || den_ == 2; }

    /// Representative of x modulo 1 in [0, 1).
    Rational frac() const;
    long double value() const noexcept { return static_cast<long double>(num_) / den_; }

    friend Rational operator+(const Rational& x, const Rational& y);
    friend Rational operator-(const Rational& x, const Rational& y);
    friend Rational operator*(const Rational& x, const Rational& y);
    friend Rational operator/(const Rational& x, const Rational& y);
    Rational operator-() const { return Rational(Raw{}, -num_, den_); }

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& x, const Rational& y);

    /// Parses "p", "-p", "p/q".
    static Rational parse(std::string_view text);
    std::string to_string() const;

    struct Raw {};
    /// Trusted constructor for an already reduced fraction.
    constexpr Rational(Raw, std::int64_t num, std::int64_t den) noexcept : num_(num), den_(den) {}

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/// Catalog of constants known to be irrational.
enum class Irrational { Sqrt2, Sqrt3, Sqrt5, Golden };

std::string_view irrational_name(Irrational k) noexcept;
std::optional<Irrational> irrational_from_name(std::string_view name) noexcept;
long double irrational_value(Irrational k) noexcept;

/// An angle measured in turns.
///
/// RationalTurns holds p/q in [0, 1).  IrrationalTurns holds
/// offset + r * kappa with r != 0; it is reduced modulo one turn only when
/// converted to a floating value or compared.  The offset is zero for
/// angles built directly from the catalog and becomes nonzero after adding a
/// rational angle.
class ExactAngle {
public:
    enum class Kind { RationalTurns, IrrationalTurns };

    ExactAngle() = default;
    static ExactAngle rational(Rational turns);
    static ExactAngle rational(std::int64_t p, std::int64_t q) { return rational(Rational(p, q)); }
    static ExactAngle irrational(Rational r, Irrational kappa, Rational offset = Rational(0));

    Kind kind() const noexcept { return kind_; }
    bool is_rational() const noexcept { return kind_ == Kind::RationalTurns; }

    /// Rational part: the reduced turns for RationalTurns, the offset (in
    /// [0, 1)) for IrrationalTurns.
    const Rational& rational_part() const noexcept { return rational_; }
    /// Irrational coefficient r (zero for RationalTurns).
    const Rational& coefficient() const noexcept { return coeff_; }
    Irrational kappa() const noexcept { return kappa_; }

    /// Angle in turns, reduced to [0, 1).
    long double turns() const noexcept;
    /// Angle in radians, reduced to [0, 2pi).
    long double radians() const noexcept;

    ExactAngle negated() const;
    ExactAngle times(std::int64_t m) const;
    /// Sum of two angles.  Throws UnsupportedCombination when the two carry
    /// independent irrational parts (the sum is outside the representation).
    ExactAngle plus(const ExactAngle& other) const;

    /// Same angle modulo one turn.
    bool equivalent(const ExactAngle& other) const;

    std::string to_string() const;
    /// Parses "p/q", "kappa", "r*kappa", "kappa*r" with r rational.
    static ExactAngle parse(std::string_view text);

private:
    Kind kind_ = Kind::RationalTurns;
    Rational rational_{0};
    Rational coeff_{0};
    Irrational kappa_ = Irrational::Sqrt2;
};

/// Canonical linear form offset + coeff * base with base in {sqrt2, sqrt3,
/// sqrt5}; golden is rewritten as 1/2 + sqrt5/2.  coeff == 0 means rational.
struct CanonicalAngle {
    Rational offset;
    Rational coeff;
    Irrational base = Irrational::Sqrt2;
};
CanonicalAngle canonicalize(const ExactAngle& angle);

/// Smallest m >= 0 with t + m*s in {0, 1/2} (mod 1), if any.
///
/// With t = arg(lambda)/2pi and s = arg(a)/2pi this is the first m for which
/// lambda * a^m is real.
std::optional<std::int64_t> is_half_integer_combination(const ExactAngle& t, const ExactAngle& s);

} // namespace fockwc
