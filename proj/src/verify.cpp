#include "fockwc/verify.hpp"

#include "fockwc/classify.hpp"
#include "fockwc/dynamics.hpp"
#include "fockwc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace fockwc {

namespace {

std::string sci(double x) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << x;
    return os.str();
}

double max_entry(const OperatorMatrix& m) {
    double s = 0.0;
    for (const cplx& x : m.entries()) s = std::max(s, std::abs(x));
    return s;
}

CheckResult skipped(std::string name, std::string why) {
    CheckResult r;
    r.name = std::move(name);
    r.passed = true;
    r.skipped = true;
    r.detail = std::move(why);
    return r;
}

CheckResult check(std::string name, double value, double tolerance, std::string detail = {}) {
    return {std::move(name), value <= tolerance, false, value, tolerance, std::move(detail)};
}

} // namespace

std::vector<CheckResult> verify_symbol(const OperatorSymbol& op, const TruncationParams& trunc,
                                       const VerifyTolerances& tol) {
    trunc.validate();
    const Verdict bounded = check_bounded(op);
    if (!bounded.affirmative()) throw Unbounded(bounded.reason);

    const TruncationParams twice = [&] {
        TruncationParams t = trunc;
        t.n = 2 * trunc.n;
        return t;
    }();
    const OperatorMatrix m1 = build_matrix(op, trunc);
    const OperatorMatrix m2 = build_matrix(op, twice);
    const std::string sizes = "N = " + std::to_string(trunc.n) + ", " + std::to_string(twice.n);

    std::vector<CheckResult> out;

    // Eigen-relation for m = 0..5.
    const cplx a = op.psi().a.value();
    if (a == cplx{0.0, 0.0} || a == cplx{1.0, 0.0}) {
        out.push_back(skipped("eigen-residual", "no eigenvector family for a in {0, 1}"));
    } else if (!op.u().is_constant_poly()) {
        out.push_back(skipped("eigen-residual", "polynomial factor is not constant"));
    } else {
        const EigenSystem es = eigen_system(op, 5);
        double worst = 0.0;
        for (const auto& [t, m] : {std::pair{&trunc, &m1}, std::pair{&twice, &m2}})
            for (const auto& pr : es.pairs)
                worst = std::max(worst, eigen_residual(*m, expand_eigenvector(op, pr.m, *t).coeffs, pr.eigenvalue));
        out.push_back(check("eigen-residual", worst, tol.residual, "max over m = 0..5, " + sizes));
    }

    // Norm against the closed form or bracket, and stability under doubling.
    try {
        const NormBounds nb = operator_norm(op);
        const double s1 = dominant_singular_value(m1, trunc.sv_tol, trunc.max_squarings).value;
        const double s2 = dominant_singular_value(m2, trunc.sv_tol, trunc.max_squarings).value;
        if (nb.exact) {
            const double gap = std::abs(s2 - nb.lower) / nb.lower;
            CheckResult r = check("norm", gap, tol.norm,
                                  "measured " + sci(s2) + " against closed form " + sci(nb.lower));
            if (s2 > nb.lower * (1.0 + 1e-12) || s1 > s2 * (1.0 + 1e-12)) {
                r.passed = false;
                r.detail += "; not approached from below (" + sci(s1) + " then " + sci(s2) + ")";
            }
            out.push_back(std::move(r));
        } else {
            const double lo = nb.lower * (1.0 - 1e-6);
            const double hi = std::isinf(nb.upper) ? nb.upper : nb.upper * (1.0 + 1e-6);
            const double outside = s2 < lo ? (lo - s2) / lo : (s2 > hi ? (s2 - hi) / hi : 0.0);
            out.push_back(check("norm", outside, 0.0,
                                "measured " + sci(s2) + " in [" + sci(nb.lower) + ", " + sci(nb.upper) + "]"));
        }
        out.push_back(check("norm-doubling", std::abs(s2 - s1) / std::max(s2, 1e-300), tol.norm_doubling, sizes));
    } catch (const NoConvergence& e) {
        CheckResult r;
        r.name = "norm";
        r.passed = false;
        r.value = std::numeric_limits<double>::infinity();
        r.tolerance = tol.norm;
        r.detail = e.what();
        out.push_back(std::move(r));
    }

    // Adjoint symbol against the conjugate transpose.
    try {
        const auto adj = adjoint_symbol(op);
        if (!adj) {
            out.push_back(skipped("adjoint", "adjoint is not a weighted composition operator"));
        } else {
            const double d1 = adjoint_consistency(op, *adj, trunc) / std::max(1.0, max_entry(m1));
            const double d2 = adjoint_consistency(op, *adj, twice) / std::max(1.0, max_entry(m2));
            out.push_back(check("adjoint", std::max(d1, d2), tol.adjoint, "relative max-entry distance, " + sizes));
        }
    } catch (const UnsupportedMultiplier& e) {
        out.push_back(skipped("adjoint", e.what()));
    }

    // Reproducing-kernel covariance.
    {
        const cplx pts[] = {{0.0, 0.0}, {0.5, 0.0}, {0.0, 0.5}, {-0.6, 0.3}, {0.8, -0.4}};
        double worst = 0.0;
        for (const cplx& w : pts)
            worst = std::max({worst, kernel_covariance_check(op, w, trunc), kernel_covariance_check(op, w, twice)});
        out.push_back(check("kernel-covariance", worst, tol.kernel, "5 points with |w| <= 1, " + sizes));
    }

    // Orbit routes.
    {
        double worst = 0.0;
        for (const TruncationParams* t : {&trunc, &twice}) {
            CoeffVector f(t->n);
            f[0] = {1.0, 0.0};
            f[1] = {0.5, 0.0};
            f[2] = {0.0, -0.25};
            const OrbitRecord x = orbit(op, f, 5, OrbitRoute::MatrixIteration, *t);
            const OrbitRecord y = orbit(op, f, 5, OrbitRoute::ClosedForm, *t);
            double scale = 1.0;
            for (const CoeffVector& v : x.vectors)
                for (std::size_t k = 0; k < v.size(); ++k) scale = std::max(scale, std::abs(v[k]));
            worst = std::max(worst, route_disagreement(x, y) / scale);
        }
        out.push_back(check("route-equivalence", worst, tol.route, "5 steps, relative to the largest coordinate, " + sizes));
    }
    return out;
}

} // namespace fockwc
