#pragma once

// Seeded generators for property tests.

#include "fockwc/fock.hpp"
#include "fockwc/symbol.hpp"

#include <cmath>
#include <cstdint>
#include <random>

namespace fockwc::testing {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    std::int64_t integer(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
    }
    bool coin() { return integer(0, 1) == 1; }

    cplx disk(double r) {
        const double rho = r * std::sqrt(uniform(0.0, 1.0));
        const double th = uniform(0.0, 2.0 * M_PI);
        return std::polar(rho, th);
    }

    Rational rational(std::int64_t max_den) {
        const std::int64_t q = integer(1, max_den);
        return Rational(integer(-3 * q, 3 * q), q);
    }

    ExactAngle angle() {
        if (coin()) return ExactAngle::rational(rational(12));
        Rational r = rational(6);
        if (r.is_zero()) r = Rational(1, 3);
        const auto kappa = static_cast<Irrational>(integer(0, 3));
        const Rational offset = coin() ? Rational(0) : rational(4);
        return ExactAngle::irrational(r, kappa, offset);
    }

    /// Exact scalar: either a polar annotation or an axis value.
    Scalar exact_scalar(double max_mod) {
        switch (integer(0, 3)) {
        case 0: return Scalar(uniform(-max_mod, max_mod));
        case 1: return Scalar(0.0, uniform(-max_mod, max_mod));
        default: return Scalar::polar(uniform(0.05, max_mod), angle());
        }
    }

    /// Random exact symbol, bounded or not.
    OperatorSymbol exact_symbol() {
        Scalar a;
        switch (integer(0, 5)) {
        case 0: a = Scalar::polar(1.0, angle()); break;
        case 1: a = Scalar::polar(1.0, ExactAngle::rational(rational(8))); break;
        case 2: a = Scalar::polar(uniform(0.1, 0.95), angle()); break;
        case 3: a = Scalar(0.0); break;
        case 4: a = Scalar::polar(uniform(1.05, 2.0), angle()); break;
        default: a = Scalar(1.0); break;
        }
        Scalar b = coin() ? Scalar(0.0) : exact_scalar(1.5);
        Scalar d = exact_scalar(3.0);
        if (d.is_zero()) d = Scalar(1.0);
        std::vector<Scalar> p{Scalar(1.0)};
        if (integer(0, 4) == 0) p = {exact_scalar(1.0), Scalar(1.0)};
        if (p[0].is_zero()) p[0] = Scalar(0.5);
        if (coin()) return OperatorSymbol::with_default_c(a, b, d, p);
        return OperatorSymbol(Multiplier(d, exact_scalar(1.0), p), AffineMap{a, b});
    }

    /// Bounded symbol with modest growth: |a| < 1, or |a| = 1 in kernel form.
    OperatorSymbol bounded_symbol(double max_b = 1.0) {
        const cplx b = disk(max_b);
        const cplx d = std::polar(uniform(0.3, 1.0), uniform(0.0, 2.0 * M_PI));
        if (coin()) {
            const Rational r(integer(1, 5), integer(1, 7));
            const Scalar a = Scalar::polar(1.0, ExactAngle::irrational(r, static_cast<Irrational>(integer(0, 3))));
            return OperatorSymbol::with_default_c(a, Scalar(b), Scalar(d));
        }
        const cplx a = std::polar(uniform(0.2, 0.9), uniform(0.0, 2.0 * M_PI));
        return OperatorSymbol(Multiplier(Scalar(d), Scalar(disk(0.5)), {Scalar(1.0)}), AffineMap{Scalar(a), Scalar(b)});
    }

    /// Vector supported on e_0..e_{k-1}.
    CoeffVector low_modes(std::size_t n, std::size_t k) {
        CoeffVector v(n);
        for (std::size_t i = 0; i < k && i < n; ++i) v[i] = disk(1.0);
        return v;
    }

private:
    std::mt19937_64 rng_;
};

} // namespace fockwc::testing
