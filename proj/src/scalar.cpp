#include "fockwc/scalar.hpp"

#include "fockwc/errors.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace fockwc {

cplx polar_value(double modulus, const ExactAngle& angle) {
    if (angle.is_rational()) {
        // Axis angles must produce exact zeros in the other component.
        const Rational& t = angle.rational_part();
        if (t == Rational(0)) return {modulus, 0.0};
        if (t == Rational(1, 4)) return {0.0, modulus};
        if (t == Rational(1, 2)) return {-modulus, 0.0};
        if (t == Rational(3, 4)) return {0.0, -modulus};
    }
    long double th = angle.radians();
    return {static_cast<double>(modulus * std::cos(th)), static_cast<double>(modulus * std::sin(th))};
}

Scalar::Scalar(cplx value) : value_(value) {
    const double re = value.real();
    const double im = value.imag();
    if (re == 0.0 && im == 0.0) {
        polar_ = Polar{0.0, ExactAngle::rational(0, 1)};
    } else if (im == 0.0) {
        polar_ = Polar{std::abs(re), ExactAngle::rational(re > 0 ? 0 : 1, 2)};
    } else if (re == 0.0) {
        polar_ = Polar{std::abs(im), ExactAngle::rational(im > 0 ? 1 : 3, 4)};
    }
    value_ = {re == 0.0 ? 0.0 : re, im == 0.0 ? 0.0 : im}; // drop signed zeros
}

Scalar Scalar::polar(double modulus, ExactAngle angle) {
    if (!(modulus >= 0.0) || !std::isfinite(modulus))
        throw InvalidSymbol("polar modulus must be finite and nonnegative");
    Scalar s;
    s.value_ = polar_value(modulus, angle);
    if (modulus == 0.0) angle = ExactAngle::rational(0, 1);
    s.polar_ = Polar{modulus, angle};
    return s;
}

Scalar Scalar::inexact(cplx value) {
    Scalar s;
    s.value_ = value;
    s.polar_.reset();
    return s;
}

Scalar Scalar::conj() const {
    if (!polar_) return inexact(std::conj(value_));
    return polar(polar_->modulus, polar_->angle.negated());
}

Scalar Scalar::operator*(const Scalar& other) const {
    if (polar_ && other.polar_) {
        try {
            return polar(polar_->modulus * other.polar_->modulus, polar_->angle.plus(other.polar_->angle));
        } catch (const UnsupportedCombination&) {
            // fall through to an inexact product
        }
    }
    return inexact(value_ * other.value_);
}

Scalar Scalar::pow(std::int64_t n) const {
    if (n < 0) throw std::domain_error("negative power");
    if (polar_) return polar(std::pow(polar_->modulus, static_cast<double>(n)), polar_->angle.times(n));
    cplx r{1.0, 0.0};
    cplx base = value_;
    for (std::int64_t k = n; k > 0; k >>= 1) {
        if (k & 1) r *= base;
        base *= base;
    }
    return inexact(r);
}

namespace {

double parse_double(std::string_view s, std::string_view whole) {
    std::string buf(s);
    if (buf.empty() || buf == "+") return 1.0;
    if (buf == "-") return -1.0;
    char* end = nullptr;
    double v = std::strtod(buf.c_str(), &end);
    if (end != buf.c_str() + buf.size() || !std::isfinite(v))
        throw ParseError("malformed complex number '" + std::string(whole) + "'");
    return v;
}

} // namespace

Scalar Scalar::parse(std::string_view text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw ParseError("empty complex number");
    if (s.back() != 'i' && s.back() != 'j') return Scalar(parse_double(s, text), 0.0);

    s.pop_back();
    // Split at the last sign that is not part of an exponent.
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) return Scalar(0.0, parse_double(s, text));
    double re = parse_double(std::string_view(s).substr(0, split), text);
    double im = parse_double(std::string_view(s).substr(split), text);
    return Scalar(re, im);
}

std::string Scalar::to_string() const {
    std::ostringstream os;
    os.precision(17);
    if (polar_ && !polar_->angle.is_rational())
        os << polar_->modulus << "*exp(2pi i*" << polar_->angle.to_string() << ")";
    else
        os << re() << (im() < 0 ? "-" : "+") << std::abs(im()) << "i";
    return os.str();
}

} // namespace fockwc
