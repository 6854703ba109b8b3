#include "fockwc/angle.hpp"

#include "fockwc/errors.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace fockwc {

namespace {

std::int64_t checked(__int128 v) {
    if (v > INT64_MAX || v < -INT64_MAX)
        throw std::overflow_error("rational arithmetic overflow");
    return static_cast<std::int64_t>(v);
}

Rational make(__int128 num, __int128 den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    __int128 a = num < 0 ? -num : num;
    __int128 b = den;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    if (a > 1) {
        num /= a;
        den /= a;
    }
    return Rational(Rational::Raw{}, checked(num), checked(den));
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::int64_t parse_int(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw ParseError("expected an integer, got '" + std::string(s) + "'");
    return v;
}

} // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
    *this = make(num, den);
}

Rational Rational::frac() const {
    std::int64_t q = num_ / den_;
    std::int64_t r = num_ - q * den_;
    if (r < 0) r += den_;
    return Rational(Raw{}, r, den_);
}

Rational operator+(const Rational& x, const Rational& y) {
    return make(static_cast<__int128>(x.num_) * y.den_ + static_cast<__int128>(y.num_) * x.den_,
                static_cast<__int128>(x.den_) * y.den_);
}

Rational operator-(const Rational& x, const Rational& y) { return x + (-y); }

Rational operator*(const Rational& x, const Rational& y) {
    return make(static_cast<__int128>(x.num_) * y.num_, static_cast<__int128>(x.den_) * y.den_);
}

Rational operator/(const Rational& x, const Rational& y) {
    if (y.is_zero()) throw std::domain_error("rational division by zero");
    return make(static_cast<__int128>(x.num_) * y.den_, static_cast<__int128>(x.den_) * y.num_);
}

std::strong_ordering operator<=>(const Rational& x, const Rational& y) {
    __int128 l = static_cast<__int128>(x.num_) * y.den_;
    __int128 r = static_cast<__int128>(y.num_) * x.den_;
    return l <=> r;
}

Rational Rational::parse(std::string_view text) {
    text = trim(text);
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    std::int64_t den = parse_int(text.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return Rational(parse_int(text.substr(0, slash)), den);
}

std::string Rational::to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string_view irrational_name(Irrational k) noexcept {
    switch (k) {
    case Irrational::Sqrt2: return "sqrt2";
    case Irrational::Sqrt3: return "sqrt3";
    case Irrational::Sqrt5: return "sqrt5";
    case Irrational::Golden: return "golden";
    }
    return "?";
}

std::optional<Irrational> irrational_from_name(std::string_view name) noexcept {
    for (auto k : {Irrational::Sqrt2, Irrational::Sqrt3, Irrational::Sqrt5, Irrational::Golden})
        if (irrational_name(k) == name) return k;
    return std::nullopt;
}

long double irrational_value(Irrational k) noexcept {
    switch (k) {
    case Irrational::Sqrt2: return std::sqrt(2.0L);
    case Irrational::Sqrt3: return std::sqrt(3.0L);
    case Irrational::Sqrt5: return std::sqrt(5.0L);
    case Irrational::Golden: return (1.0L + std::sqrt(5.0L)) / 2.0L;
    }
    return 0.0L;
}

ExactAngle ExactAngle::rational(Rational turns) {
    ExactAngle a;
    a.kind_ = Kind::RationalTurns;
    a.rational_ = turns.frac();
    return a;
}

ExactAngle ExactAngle::irrational(Rational r, Irrational kappa, Rational offset) {
    if (r.is_zero()) throw InvalidSymbol("irrational angle needs a nonzero coefficient");
    ExactAngle a;
    a.kind_ = Kind::IrrationalTurns;
    a.rational_ = offset.frac();
    a.coeff_ = r;
    a.kappa_ = kappa;
    return a;
}

long double ExactAngle::turns() const noexcept {
    long double t = rational_.value();
    if (kind_ == Kind::IrrationalTurns) {
        // Split r = n/d so that the integer part of n*kappa/d is removed
        // before adding the offset; keeps full long double accuracy.
        long double x = static_cast<long double>(coeff_.num()) * irrational_value(kappa_) /
                        static_cast<long double>(coeff_.den());
        t += x - std::floor(x);
    }
    t -= std::floor(t);
    return t;
}

long double ExactAngle::radians() const noexcept {
    return 2.0L * std::numbers::pi_v<long double> * turns();
}

ExactAngle ExactAngle::negated() const {
    if (kind_ == Kind::RationalTurns) return rational(-rational_);
    return irrational(-coeff_, kappa_, -rational_);
}

ExactAngle ExactAngle::times(std::int64_t m) const {
    Rational k(m);
    if (kind_ == Kind::RationalTurns || m == 0) return rational(rational_ * k);
    return irrational(coeff_ * k, kappa_, rational_ * k);
}

CanonicalAngle canonicalize(const ExactAngle& angle) {
    CanonicalAngle c;
    c.offset = angle.rational_part();
    if (angle.is_rational()) return c;
    c.coeff = angle.coefficient();
    c.base = angle.kappa();
    if (c.base == Irrational::Golden) {
        // r * golden = r/2 + (r/2) * sqrt5
        c.offset = (c.offset + c.coeff * Rational(1, 2)).frac();
        c.coeff = c.coeff * Rational(1, 2);
        c.base = Irrational::Sqrt5;
    }
    return c;
}

ExactAngle ExactAngle::plus(const ExactAngle& other) const {
    if (is_rational()) {
        if (other.is_rational()) return rational(rational_ + other.rational_);
        return irrational(other.coeff_, other.kappa_, other.rational_ + rational_);
    }
    if (other.is_rational()) return irrational(coeff_, kappa_, rational_ + other.rational_);

    if (kappa_ == other.kappa_) {
        Rational r = coeff_ + other.coeff_;
        if (r.is_zero()) return rational(rational_ + other.rational_);
        return irrational(r, kappa_, rational_ + other.rational_);
    }
    CanonicalAngle x = canonicalize(*this);
    CanonicalAngle y = canonicalize(other);
    if (x.base != y.base)
        throw UnsupportedCombination("cannot add angles in " + std::string(irrational_name(kappa_)) +
                                     " and " + std::string(irrational_name(other.kappa_)) + " turns");
    Rational r = x.coeff + y.coeff;
    if (r.is_zero()) return rational(x.offset + y.offset);
    return irrational(r, x.base, x.offset + y.offset);
}

bool ExactAngle::equivalent(const ExactAngle& other) const {
    CanonicalAngle x = canonicalize(*this);
    CanonicalAngle y = canonicalize(other);
    if (x.coeff != y.coeff) return false;
    if (!x.coeff.is_zero() && x.base != y.base) return false;
    return (x.offset - y.offset).frac().is_zero();
}

std::string ExactAngle::to_string() const {
    if (is_rational()) return rational_.to_string();
    std::string s;
    if (coeff_ == Rational(1))
        s = std::string(irrational_name(kappa_));
    else
        s = coeff_.to_string() + "*" + std::string(irrational_name(kappa_));
    if (!rational_.is_zero()) s = rational_.to_string() + "+" + s;
    return s;
}

ExactAngle ExactAngle::parse(std::string_view text) {
    text = trim(text);
    if (text.empty()) throw ParseError("empty angle");
    // optional rational offset: "o+rest" where rest names an irrational
    auto star = text.find('*');
    auto plus = text.find('+');
    if (plus != std::string_view::npos && plus > 0) {
        ExactAngle head = parse(text.substr(0, plus));
        ExactAngle tail = parse(text.substr(plus + 1));
        return head.plus(tail);
    }
    if (star == std::string_view::npos) {
        if (auto k = irrational_from_name(text)) return irrational(Rational(1), *k);
        if (!text.empty() && text.front() == '-')
            if (auto k = irrational_from_name(trim(text.substr(1)))) return irrational(Rational(-1), *k);
        try {
            return rational(Rational::parse(text));
        } catch (const ParseError&) {
            throw ParseError("angle '" + std::string(text) + "' is neither p/q nor one of sqrt2, sqrt3, sqrt5, golden");
        }
    }
    auto lhs = trim(text.substr(0, star));
    auto rhs = trim(text.substr(star + 1));
    if (auto k = irrational_from_name(rhs)) return irrational(Rational::parse(lhs), *k);
    if (auto k = irrational_from_name(lhs)) return irrational(Rational::parse(rhs), *k);
    throw ParseError("unknown irrational constant in '" + std::string(text) +
                     "' (expected sqrt2, sqrt3, sqrt5 or golden)");
}

std::optional<std::int64_t> is_half_integer_combination(const ExactAngle& t, const ExactAngle& s) {
    CanonicalAngle ct = canonicalize(t);
    CanonicalAngle cs = canonicalize(s);
    const bool t_rat = ct.coeff.is_zero();
    const bool s_rat = cs.coeff.is_zero();

    if (t_rat && s_rat) {
        // m*s mod 1 has period den(s); scan twice that for clarity.
        const std::int64_t period = 2 * cs.offset.den();
        for (std::int64_t m = 0; m < period; ++m)
            if ((ct.offset + cs.offset * Rational(m)).is_half_integer()) return m;
        return std::nullopt;
    }
    if (t_rat) {
        // m * coeff(s) must vanish, so only m = 0 can work.
        if (ct.offset.is_half_integer()) return 0;
        return std::nullopt;
    }
    if (s_rat || ct.base != cs.base) {
        // The irrational part of t can never be cancelled.
        return std::nullopt;
    }
    // Same base: coeff(t) + m coeff(s) = 0 and the rational parts must agree.
    Rational m = -(ct.coeff / cs.coeff);
    if (!m.is_integer() || m.num() < 0) return std::nullopt;
    if ((ct.offset + cs.offset * m).is_half_integer()) return m.num();
    return std::nullopt;
}

} // namespace fockwc
