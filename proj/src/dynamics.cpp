#include "fockwc/dynamics.hpp"

#include "fockwc/classify.hpp"
#include "fockwc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace fockwc {

std::string_view to_string(OrbitRoute r) noexcept {
    return r == OrbitRoute::MatrixIteration ? "matrix-iteration" : "closed-form";
}

std::string_view to_string(RegionKind k) noexcept {
    return k == RegionKind::FixedPointDisk ? "fixed-point-disk" : "translation-disk";
}

OrbitRecord orbit(const OperatorSymbol& op, const CoeffVector& f, std::size_t steps, OrbitRoute route,
                  const TruncationParams& trunc, double budget) {
    trunc.validate();
    if (f.size() != trunc.n)
        throw DimensionMismatch("orbit seed has " + std::to_string(f.size()) + " coefficients, N = " +
                                std::to_string(trunc.n));
    const double unit = static_cast<double>(trunc.n) * static_cast<double>(trunc.n);
    const double cost = route == OrbitRoute::MatrixIteration ? unit * (1.0 + static_cast<double>(steps))
                                                             : 2.0 * unit * static_cast<double>(steps + 1);
    if (cost > budget)
        throw BudgetExceeded("orbit needs " + std::to_string(cost) + " work units, budget is " +
                             std::to_string(budget));
    const Verdict bounded = check_bounded(op);
    if (!bounded.affirmative()) throw Unbounded(bounded.reason);

    OrbitRecord rec;
    rec.route = route;
    rec.vectors.reserve(steps + 1);
    rec.vectors.push_back(f);
    if (route == OrbitRoute::MatrixIteration) {
        const OperatorMatrix m = build_matrix(op, trunc);
        for (std::size_t k = 1; k <= steps; ++k) rec.vectors.push_back(apply(m, rec.vectors.back()));
    } else {
        for (std::size_t k = 1; k <= steps; ++k) {
            const OperatorSymbol iterate(iterated_multiplier(op, k).to_multiplier(), iterate_map(op.psi(), k));
            rec.vectors.push_back(apply(build_matrix(iterate, trunc), f));
        }
    }
    return rec;
}

double route_disagreement(const OrbitRecord& x, const OrbitRecord& y) {
    if (x.vectors.size() != y.vectors.size()) throw DimensionMismatch("orbit records differ in length");
    double worst = 0.0;
    for (std::size_t k = 0; k < x.vectors.size(); ++k) {
        const CoeffVector& u = x.vectors[k];
        const CoeffVector& v = y.vectors[k];
        if (u.size() != v.size()) throw DimensionMismatch("orbit vectors differ in length");
        const std::size_t keep = buffered_size(u.size());
        for (std::size_t i = 0; i < keep; ++i) worst = std::max(worst, std::abs(u[i] - v[i]));
    }
    return worst;
}

namespace {

// Real inner product on C^N viewed as R^{2N}.
double real_inner(const CoeffVector& f, const CoeffVector& g) {
    double s = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) s += f[k].real() * g[k].real() + f[k].imag() * g[k].imag();
    return s;
}

struct HullSolve {
    double objective;
    double gap;
};

// Conditional gradient over the n-simplex on the quadratic
// ||V theta - t||^2 = theta' G theta - 2 h' theta + tt.
HullSolve solve_prefix(const std::vector<double>& gram, std::size_t stride, const std::vector<double>& h, double tt,
                       std::size_t n, std::size_t iterations, HullStep step) {
    const auto g = [&](std::size_t i, std::size_t j) { return gram[i * stride + j]; };

    std::size_t start = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (g(i, i) - 2.0 * h[i] < g(start, start) - 2.0 * h[start]) start = i;

    std::vector<double> q(n); // G theta
    for (std::size_t i = 0; i < n; ++i) q[i] = g(i, start);
    double quad = g(start, start); // theta' G theta
    double lin = h[start];         // h' theta
    double best = quad - 2.0 * lin + tt;
    double gap = 0.0;

    for (std::size_t k = 0; k < iterations; ++k) {
        std::size_t s = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (q[i] - h[i] < q[s] - h[s]) s = i;
        gap = (quad - lin) - (q[s] - h[s]);
        if (gap <= 0.0) break;

        double gamma = 2.0 / (static_cast<double>(k) + 2.0);
        if (step == HullStep::CappedLineSearch) {
            const double dd = g(s, s) - 2.0 * q[s] + quad;
            const double rd = q[s] - quad - h[s] + lin;
            if (dd > 0.0) gamma = std::min(gamma, std::clamp(-rd / dd, 0.0, 1.0));
        }
        const double keep = 1.0 - gamma;
        quad = keep * keep * quad + 2.0 * gamma * keep * q[s] + gamma * gamma * g(s, s);
        lin = keep * lin + gamma * h[s];
        for (std::size_t i = 0; i < n; ++i) q[i] = keep * q[i] + gamma * g(i, s);
        best = std::min(best, quad - 2.0 * lin + tt);
    }
    return {std::sqrt(std::max(best, 0.0)), std::max(gap, 0.0)};
}

HullDistanceCurve hull_impl(const OrbitRecord& orbit, const CoeffVector& target, std::size_t iterations,
                            HullStep step, bool parallel) {
    const std::size_t len = orbit.vectors.size();
    if (len == 0) throw ZeroVector("hull of an empty orbit");
    for (const CoeffVector& v : orbit.vectors)
        if (v.size() != target.size()) throw DimensionMismatch("orbit and target differ in length");

    std::vector<double> gram(len * len), h(len);
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (std::size_t i = 0; i < len; ++i) {
        h[i] = real_inner(orbit.vectors[i], target);
        for (std::size_t j = 0; j <= i; ++j) gram[i * len + j] = gram[j * len + i] =
                                                 real_inner(orbit.vectors[i], orbit.vectors[j]);
    }
    const double tt = real_inner(target, target);

    HullDistanceCurve curve;
    curve.target = target;
    curve.iterations = iterations;
    curve.raw.resize(len);
    curve.gaps.resize(len);
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (std::size_t n = 1; n <= len; ++n) {
        const HullSolve r = solve_prefix(gram, len, h, tt, n, iterations, step);
        curve.raw[n - 1] = r.objective;
        curve.gaps[n - 1] = r.gap;
    }
    // The hull grows with n, so the running minimum is still an upper bound
    // on the true distance.
    curve.errors.resize(len);
    double running = std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n < len; ++n) curve.errors[n] = running = std::min(running, curve.raw[n]);
    return curve;
}

struct RatioPeak {
    double log_ratio = -std::numeric_limits<double>::infinity();
    std::size_t n = 0;

    void merge(const RatioPeak& o) {
        if (o.log_ratio > log_ratio || (o.log_ratio == log_ratio && o.n < n)) *this = o;
    }
};

RatioExperimentReport ratio_impl(const OperatorSymbol& op, cplx sigma, double r, std::size_t n_max,
                                 std::size_t grid, bool parallel) {
    const AffineMap& psi = op.psi();
    if (psi.is_identity()) throw RegionInvalid("the identity map defines no region");
    if (grid < 2) throw RegionInvalid("grid must have at least 2 points per side");
    const Verdict bounded = check_bounded(op);
    if (!bounded.affirmative()) throw Unbounded(bounded.reason);

    RatioExperimentReport rep;
    rep.sigma = sigma;
    rep.n_max = n_max;
    rep.grid = grid;
    if (psi.a.value() == cplx{1.0, 0.0}) {
        rep.region = {RegionKind::TranslationDisk, psi.b.value(), 2.0 * psi.b.abs()};
    } else {
        if (!(r > 0.0)) throw RegionInvalid("radius must be positive");
        rep.region = {RegionKind::FixedPointDisk, fixed_point(psi), r};
    }
    const cplx center = rep.region.center;
    const double radius = rep.region.radius;

    std::vector<cplx> pts;
    for (std::size_t i = 0; i < grid; ++i)
        for (std::size_t j = 0; j < grid; ++j) {
            const double x = -radius + 2.0 * radius * static_cast<double>(i) / static_cast<double>(grid - 1);
            const double y = -radius + 2.0 * radius * static_cast<double>(j) / static_cast<double>(grid - 1);
            if (std::hypot(x, y) <= radius) pts.push_back(center + cplx{x, y});
        }
    rep.samples = pts.size();

    const Multiplier& u = op.u();
    const auto log_f = [&](cplx z) { return (sigma * z).real(); };
    double u_hi = -std::numeric_limits<double>::infinity(), u_lo = std::numeric_limits<double>::infinity();
    double f_hi = u_hi, f_lo = u_lo, excess = -radius;
    for (const cplx& z : pts) {
        const double lu = u.log_abs(z);
        if (!std::isfinite(lu)) throw InvalidSymbol("multiplier vanishes inside the region");
        u_hi = std::max(u_hi, lu);
        u_lo = std::min(u_lo, lu);
        f_hi = std::max(f_hi, log_f(z));
        f_lo = std::min(f_lo, log_f(z));
        excess = std::max(excess, std::abs(psi(z) - center) - radius);
    }
    rep.bound = std::exp((u_hi - u_lo) + (f_hi - f_lo));
    rep.invariance_excess = excess;

    // For each sample, walk z_k = psi^k(z); w = psi(z) has w_k = z_{k+1}.
    const auto scan = [&](const cplx& z0) {
        RatioPeak peak;
        double log_uz = 0.0, log_uw = 0.0; // log|u_n(z)|, log|u_n(w)|
        cplx zk = z0;
        cplx zk1 = psi(z0);
        double lu_k = u.log_abs(zk);
        for (std::size_t n = 0; n <= n_max; ++n) {
            const double lu_k1 = u.log_abs(zk1);
            peak.merge({log_uz + log_f(zk) - log_uw - log_f(zk1), n});
            log_uz += lu_k;
            log_uw += lu_k1;
            zk = zk1;
            zk1 = psi(zk1);
            lu_k = lu_k1;
        }
        return peak;
    };

    RatioPeak overall;
    if (parallel) {
#pragma omp parallel
        {
            RatioPeak local;
#pragma omp for schedule(static) nowait
            for (std::size_t i = 0; i < pts.size(); ++i) local.merge(scan(pts[i]));
#pragma omp critical(fockwc_ratio)
            overall.merge(local);
        }
    } else {
        for (const cplx& z : pts) overall.merge(scan(z));
    }
    rep.max_ratio_observed = std::exp(overall.log_ratio);
    rep.argmax_n = overall.n;
    return rep;
}

} // namespace

HullDistanceCurve hull_distance(const OrbitRecord& orbit, const CoeffVector& target, std::size_t iterations,
                                HullStep step) {
    return hull_impl(orbit, target, iterations, step, true);
}

RatioExperimentReport ratio_experiment(const OperatorSymbol& op, cplx sigma, double r, std::size_t n_max,
                                       std::size_t grid) {
    return ratio_impl(op, sigma, r, n_max, grid, true);
}

namespace serial {

HullDistanceCurve hull_distance(const OrbitRecord& orbit, const CoeffVector& target, std::size_t iterations,
                                HullStep step) {
    return hull_impl(orbit, target, iterations, step, false);
}

RatioExperimentReport ratio_experiment(const OperatorSymbol& op, cplx sigma, double r, std::size_t n_max,
                                       std::size_t grid) {
    return ratio_impl(op, sigma, r, n_max, grid, false);
}

} // namespace serial

} // namespace fockwc
