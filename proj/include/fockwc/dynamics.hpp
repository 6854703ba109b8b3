#pragma once

// Orbits of W = W_(u, psi), distances from a target to the convex hull of
// an orbit prefix, and the bounded-ratio experiment behind the failure of
// supercyclicity in the pointwise topology.

#include "fockwc/fock.hpp"

#include <cstddef>
#include <string_view>
#include <vector>

namespace fockwc {

enum class OrbitRoute { MatrixIteration, ClosedForm };

std::string_view to_string(OrbitRoute r) noexcept;

/// vectors[k] = W^k f for k = 0..steps.
struct OrbitRecord {
    std::vector<CoeffVector> vectors;
    OrbitRoute route = OrbitRoute::MatrixIteration;
};

/// Work units (N^2 per matrix product or matrix build) allowed per orbit.
inline constexpr double kDefaultOrbitBudget = 5e8;

/// MatrixIteration multiplies by the truncated matrix `steps` times.
/// ClosedForm builds the matrix of (u_k, psi^k) for every k and applies it
/// to f once.  Throws BudgetExceeded, Unbounded for a symbol that is not
/// bounded, DimensionMismatch, and propagates TruncationOverflow.
OrbitRecord orbit(const OperatorSymbol& op, const CoeffVector& f, std::size_t steps, OrbitRoute route,
                  const TruncationParams& trunc, double budget = kDefaultOrbitBudget);

/// Largest coordinate difference between the two records on the buffered
/// coordinates.  Throws DimensionMismatch for records of different shape.
double route_disagreement(const OrbitRecord& x, const OrbitRecord& y);

struct HullDistanceCurve {
    /// errors[n - 1]: distance from target to the hull of the first n
    /// vectors, nonincreasing in n.
    std::vector<double> errors;
    /// Objective of the n-th solve before the running minimum is applied.
    std::vector<double> raw;
    /// Final Frank-Wolfe duality gap of each solve.
    std::vector<double> gaps;
    CoeffVector target;
    std::size_t iterations = 0;
};

enum class HullStep {
    /// gamma_k = 2 / (k + 2).
    Schedule,
    /// min(2 / (k + 2), exact line-search step).
    CappedLineSearch,
};

/// min over the simplex of || sum theta_i v_i - target || for every prefix
/// of the orbit, by conditional gradient started at the nearest vertex.
/// Prefix solves run in parallel.  Throws DimensionMismatch and ZeroVector
/// (empty orbit).
HullDistanceCurve hull_distance(const OrbitRecord& orbit, const CoeffVector& target, std::size_t iterations,
                                HullStep step = HullStep::CappedLineSearch);

enum class RegionKind { FixedPointDisk, TranslationDisk };

std::string_view to_string(RegionKind k) noexcept;

struct Region {
    RegionKind kind = RegionKind::FixedPointDisk;
    cplx center;
    double radius = 0.0;
};

struct RatioExperimentReport {
    Region region;
    /// Test function exp(sigma z).
    cplx sigma;
    /// (max|u| max|f|) / (min|u| min|f|) over the grid points of the region.
    double bound = 0.0;
    double slack = 0.05;
    double max_ratio_observed = 0.0;
    /// n at which the largest ratio occurred.
    std::size_t argmax_n = 0;
    std::size_t n_max = 0;
    std::size_t grid = 0;
    /// Grid points inside the region.
    std::size_t samples = 0;
    /// max over samples of |psi(z) - center| - radius.
    double invariance_excess = 0.0;

    bool invariant() const noexcept { return invariance_excess <= 1e-12; }
    bool ratio_bounded() const noexcept { return max_ratio_observed <= bound * (1.0 + slack); }
};

/// Region: disk of radius r about the fixed point when a != 1, the disk
/// |z - b| <= 2|b| when a = 1 and b != 0.  Samples a grid x grid lattice
/// over the enclosing square and checks, for every sample z, w = psi(z) and
/// n <= n_max,
///     |u_n(z) f(psi^n z)| / |u_n(w) f(psi^n w)| <= bound (1 + slack).
/// Throws RegionInvalid for the identity map or r <= 0, Unbounded for a
/// symbol that is not bounded, InvalidSymbol when u vanishes on the region.
RatioExperimentReport ratio_experiment(const OperatorSymbol& op, cplx sigma, double r, std::size_t n_max,
                                       std::size_t grid);

namespace serial {
HullDistanceCurve hull_distance(const OrbitRecord& orbit, const CoeffVector& target, std::size_t iterations,
                                HullStep step = HullStep::CappedLineSearch);
RatioExperimentReport ratio_experiment(const OperatorSymbol& op, cplx sigma, double r, std::size_t n_max,
                                       std::size_t grid);
} // namespace serial

} // namespace fockwc
