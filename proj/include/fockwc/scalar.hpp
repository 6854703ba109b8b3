#pragma once

#include "fockwc/angle.hpp"

#include <complex>
#include <optional>
#include <string>
#include <string_view>

namespace fockwc {

using cplx = std::complex<double>;

/// Exact polar description of a complex number.
struct Polar {
    double modulus = 0.0;
    ExactAngle angle;
};

/// A complex constant with an optional exact polar annotation.
///
/// The cartesian value is always available.  When the annotation is
/// present the value was derived from it (or agrees with it to 1e-12
/// relative).  Cartesian values lying exactly on a coordinate axis get an
/// annotation automatically, so 1, -1, i, 2i, 0 are exact.
class Scalar {
public:
    Scalar() : Scalar(cplx{0.0, 0.0}) {}
    Scalar(double re) : Scalar(cplx{re, 0.0}) {}
    Scalar(cplx value);
    Scalar(double re, double im) : Scalar(cplx{re, im}) {}

    static Scalar polar(double modulus, ExactAngle angle);
    /// Cartesian value without any attempt at an exact annotation.
    static Scalar inexact(cplx value);

    const cplx& value() const noexcept { return value_; }
    double re() const noexcept { return value_.real(); }
    double im() const noexcept { return value_.imag(); }
    double abs() const noexcept { return std::abs(value_); }

    bool is_exact() const noexcept { return polar_.has_value(); }
    const std::optional<Polar>& polar() const noexcept { return polar_; }
    bool is_zero() const noexcept { return value_ == cplx{0.0, 0.0}; }

    Scalar conj() const;
    /// Product; exact when both factors are exact and their angles add.
    Scalar operator*(const Scalar& other) const;
    /// Integer power, exact whenever the base is.
    Scalar pow(std::int64_t n) const;

    /// Parses "1", "-2.5", "2i", "-i", "1+2i", "0.5-1.5i".
    static Scalar parse(std::string_view text);
    std::string to_string() const;

private:
    cplx value_;
    std::optional<Polar> polar_;
};

/// Cartesian value of modulus * exp(2 pi i * turns), evaluated in long double.
cplx polar_value(double modulus, const ExactAngle& angle);

} // namespace fockwc
