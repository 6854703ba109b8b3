#include "fockwc/classify.hpp"
#include "fockwc/errors.hpp"
#include "generators.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace fockwc;

namespace {

OperatorSymbol rotation(ExactAngle turns, Scalar d, Scalar b = Scalar(0.0)) {
    return OperatorSymbol::with_default_c(Scalar::polar(1.0, turns), b, d);
}

void expect_exact(const ClassificationReport& r) {
    for (const Verdict* v : {&r.bounded, &r.cyclic, &r.adjoint_cyclic, &r.convex_cyclic, &r.adjoint_convex_cyclic,
                             &r.invariant_convex_property, &r.supercyclic, &r.weakly_supercyclic, &r.tpt_supercyclic,
                             &r.weakly_cyclic}) {
        EXPECT_TRUE(v->exact()) << to_string(v->value) << ": " << v->reason;
        EXPECT_FALSE(v->margin.has_value());
    }
}

// Brute-force sup of |u(z)| exp((|psi z|^2 - |z|^2)/2) over a polar grid.
double grid_supremum(const OperatorSymbol& op, double radius) {
    double best = 0.0;
    for (int i = 0; i <= 400; ++i)
        for (int j = 0; j < 400; ++j) {
            const cplx z = std::polar(radius * i / 400.0, 2.0 * M_PI * j / 400.0);
            const double v = op.u().log_abs(z) + 0.5 * (std::norm(op.psi()(z)) - std::norm(z));
            best = std::max(best, std::exp(v));
        }
    return best;
}

} // namespace

TEST(TruthTable, ShiftWithExponentialWeight) {
    const OperatorSymbol op(Multiplier(Scalar(1.0), Scalar(-1.0), {Scalar(1.0)}), AffineMap{Scalar(1.0), Scalar(1.0)});
    const ClassificationReport r = classify_full(op);
    EXPECT_EQ(r.bounded.value, VerdictValue::Yes);
    EXPECT_EQ(r.cyclic.value, VerdictValue::No);
    EXPECT_EQ(r.supercyclic.value, VerdictValue::No);
    EXPECT_EQ(r.weakly_supercyclic.value, VerdictValue::No);
    EXPECT_EQ(r.tpt_supercyclic.value, VerdictValue::No);
    ASSERT_TRUE(r.norm);
    EXPECT_TRUE(r.norm->exact);
    EXPECT_NEAR(r.norm->lower, std::exp(0.5), 1e-15);
    expect_exact(r);
}

TEST(TruthTable, UnweightedShiftIsUnbounded) {
    const OperatorSymbol op(Multiplier(), AffineMap{Scalar(1.0), Scalar(1.0)});
    const ClassificationReport r = classify_full(op);
    EXPECT_EQ(r.bounded.value, VerdictValue::No);
    EXPECT_FALSE(r.norm);
    EXPECT_THROW(operator_norm(op), Unbounded);
}

TEST(TruthTable, GoldenRotationIsConvexCyclic) {
    const ClassificationReport r = classify_full(rotation(ExactAngle::parse("golden"), Scalar(0.0, 2.0)));
    EXPECT_EQ(r.cyclic.value, VerdictValue::Yes);
    EXPECT_EQ(r.convex_cyclic.value, VerdictValue::Yes);
    EXPECT_EQ(r.adjoint_convex_cyclic.value, VerdictValue::Yes);
    EXPECT_EQ(r.invariant_convex_property.value, VerdictValue::Yes);
    EXPECT_DOUBLE_EQ(r.norm->lower, 2.0);
    expect_exact(r);
}

TEST(TruthTable, RootOfUnityIsNotCyclic) {
    const ClassificationReport r = classify_full(rotation(ExactAngle::rational(1, 3), Scalar(1.0)));
    EXPECT_EQ(r.cyclic.value, VerdictValue::No);
    EXPECT_EQ(r.convex_cyclic.value, VerdictValue::No);
    expect_exact(r);
}

TEST(TruthTable, UnitMultiplierIsNeverConvexCyclic) {
    fockwc::testing::Gen gen(31);
    for (int trial = 0; trial < 50; ++trial) {
        const Scalar a = gen.coin() ? Scalar::polar(1.0, gen.angle()) : Scalar::polar(gen.uniform(0.1, 0.95), gen.angle());
        const bool unit = a.polar()->modulus == 1.0;
        const Scalar b = unit ? Scalar(0.0) : gen.exact_scalar(1.0);
        const OperatorSymbol op(Multiplier(), AffineMap{a, b});
        const ClassificationReport r = classify_full(op);
        EXPECT_EQ(r.convex_cyclic.value, VerdictValue::No) << r.convex_cyclic.reason;
    }
}

TEST(TruthTable, IdentityMapIsNotCyclic) {
    const ClassificationReport r = classify_full(OperatorSymbol(Multiplier(), AffineMap{}));
    EXPECT_EQ(r.bounded.value, VerdictValue::Yes);
    EXPECT_EQ(r.cyclic.value, VerdictValue::No);
    expect_exact(r);
}

TEST(TruthTable, RealEigenvalueBlocksConvexCyclicity) {
    // lambda = 2 (real) at m = 0.
    EXPECT_EQ(classify_full(rotation(ExactAngle::parse("sqrt2"), Scalar(2.0))).convex_cyclic.value, VerdictValue::No);
    // lambda = 2 exp(2 pi i sqrt2 * (-3)) a^3 is real.
    const Scalar d = Scalar::polar(2.0, ExactAngle::irrational(Rational(-3), Irrational::Sqrt2));
    const ClassificationReport r = classify_full(rotation(ExactAngle::parse("sqrt2"), d));
    EXPECT_EQ(r.convex_cyclic.value, VerdictValue::No);
    EXPECT_NE(r.convex_cyclic.reason.find("m = 3"), std::string::npos) << r.convex_cyclic.reason;
    // |lambda| <= 1.
    EXPECT_EQ(classify_full(rotation(ExactAngle::parse("golden"), Scalar(0.0, 0.5))).convex_cyclic.value,
              VerdictValue::No);
}

TEST(TruthTable, InexactRotationGetsMargins) {
    const OperatorSymbol near(Multiplier(Scalar(0.0, 2.0), Scalar(0.0), {Scalar(1.0)}),
                              AffineMap{Scalar::inexact(std::polar(1.0, 0.3)), Scalar(0.0)});
    const ClassificationReport r = classify_full(near);
    EXPECT_EQ(r.bounded.value, VerdictValue::Unknown);
    EXPECT_TRUE(r.bounded.margin.has_value());
    const OperatorSymbol inner(Multiplier(Scalar(0.0, 2.0), Scalar(0.0), {Scalar(1.0)}),
                               AffineMap{Scalar::inexact(std::polar(0.5, 0.3)), Scalar(0.0)});
    const ClassificationReport q = classify_full(inner);
    EXPECT_EQ(q.bounded.value, VerdictValue::YesWithMargin);
    EXPECT_NEAR(*q.bounded.margin, 0.5, 1e-12);
}

TEST(TruthTable, UnitModulusWithoutKernelRuleIsUnbounded) {
    const Scalar a = Scalar::polar(1.0, ExactAngle::parse("golden"));
    const OperatorSymbol op(Multiplier(Scalar(1.0), Scalar(0.0), {Scalar(1.0)}), AffineMap{a, Scalar(1.0)});
    EXPECT_EQ(check_bounded(op).value, VerdictValue::No);
    const OperatorSymbol poly(Multiplier(Scalar(1.0), Scalar(0.0), {Scalar(1.0), Scalar(1.0)}), AffineMap{a, Scalar(0.0)});
    EXPECT_EQ(check_bounded(poly).value, VerdictValue::No);
    EXPECT_EQ(check_bounded(OperatorSymbol(Multiplier(), AffineMap{Scalar(2.0), Scalar(0.0)})).value, VerdictValue::No);
}

// Randomized equivalence and implication invariants.
TEST(Invariants, ThousandRandomExactSymbols) {
    fockwc::testing::Gen gen(32);
    int checked = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const OperatorSymbol op = gen.exact_symbol();
        const ClassificationReport r = classify_full(op);
        ++checked;
        EXPECT_EQ(r.convex_cyclic.value, r.adjoint_convex_cyclic.value);
        EXPECT_EQ(r.convex_cyclic.value, r.invariant_convex_property.value);
        EXPECT_EQ(r.cyclic.value, r.adjoint_cyclic.value);
        EXPECT_EQ(r.cyclic.value, r.weakly_cyclic.value);
        if (r.convex_cyclic.affirmative()) EXPECT_TRUE(r.cyclic.affirmative());
        if (r.supercyclic.affirmative()) EXPECT_TRUE(r.weakly_supercyclic.affirmative());
        if (r.weakly_supercyclic.affirmative()) EXPECT_TRUE(r.tpt_supercyclic.affirmative());
        if (r.bounded.affirmative()) EXPECT_TRUE(r.tpt_supercyclic.negative());
        if (!r.bounded.affirmative()) EXPECT_FALSE(r.norm.has_value());
    }
    EXPECT_EQ(checked, 1000);
}

TEST(Norm, UnitModulusClosedForm) {
    const Scalar a = Scalar::polar(1.0, ExactAngle::parse("sqrt3"));
    const OperatorSymbol op = OperatorSymbol::with_default_c(a, Scalar(1.0, 1.0), Scalar(0.0, 0.5));
    const NormBounds nb = operator_norm(op);
    EXPECT_TRUE(nb.exact);
    EXPECT_NEAR(nb.lower, 0.5 * std::exp(1.0), 1e-15);
}

TEST(Norm, ZeroSymbolIsRankOne) {
    // W f = f(b) u: ||W|| = ||u|| ||K_b|| = |d| exp(|c|^2/2) exp(|b|^2/2).
    const OperatorSymbol op(Multiplier(Scalar(2.0), Scalar(0.5), {Scalar(1.0)}), AffineMap{Scalar(0.0), Scalar(1.0)});
    const NormBounds nb = operator_norm(op);
    EXPECT_TRUE(nb.exact);
    EXPECT_NEAR(nb.lower, 2.0 * std::exp(0.125 + 0.5), 1e-14);
}

TEST(Norm, BracketLowerEndMatchesGridSupremum) {
    fockwc::testing::Gen gen(33);
    for (int trial = 0; trial < 10; ++trial) {
        const OperatorSymbol op(Multiplier(Scalar(gen.disk(1.0) + cplx(0.5, 0.0)), Scalar(gen.disk(0.8)), {Scalar(1.0)}),
                                AffineMap{Scalar(std::polar(gen.uniform(0.2, 0.8), gen.uniform(0.0, 6.0))),
                                          Scalar(gen.disk(1.0))});
        const NormBounds nb = operator_norm(op);
        EXPECT_FALSE(nb.exact);
        const double grid = grid_supremum(op, 12.0);
        EXPECT_LE(grid, nb.lower * (1.0 + 1e-12));
        EXPECT_GE(grid, nb.lower * (1.0 - 1e-3));
        EXPECT_NEAR(nb.upper, nb.lower / std::abs(op.psi().a.value()), 1e-12 * nb.upper);
    }
}

TEST(Norm, NumericSupremumForPolynomialFactor) {
    const OperatorSymbol op(Multiplier(Scalar(1.0), Scalar(0.3), {Scalar(1.0), Scalar(0.5, 0.5)}),
                            AffineMap{Scalar(0.5), Scalar(0.2, -0.4)});
    const double s = boundedness_supremum(op);
    const double grid = grid_supremum(op, 12.0);
    EXPECT_GE(s, grid * (1.0 - 1e-9));
    EXPECT_LE(s, grid * (1.0 + 1e-3));
}

TEST(EigenSystem, PairsAreGeometric) {
    const Scalar a = Scalar::polar(1.0, ExactAngle::parse("golden"));
    const OperatorSymbol op = rotation(ExactAngle::parse("golden"), Scalar(0.0, 2.0), Scalar(1.0));
    const EigenSystem es = eigen_system(op, 5);
    EXPECT_TRUE(es.distinct);
    ASSERT_EQ(es.pairs.size(), 6u);
    for (const auto& pr : es.pairs)
        EXPECT_LT(std::abs(pr.eigenvalue - std::pow(a.value(), static_cast<double>(pr.m)) * es.lambda), 1e-12);
    EXPECT_NEAR(std::abs(es.lambda), 2.0 * std::exp(0.5), 1e-12);
    EXPECT_FALSE(eigen_system(rotation(ExactAngle::rational(1, 4), Scalar(1.0)), 3).distinct);
    EXPECT_THROW(eigen_system(OperatorSymbol(Multiplier(), AffineMap{}), 3), DegenerateMap);
}

TEST(AdjointSymbol, ExponentIsConjugateTranslation) {
    const OperatorSymbol op(Multiplier(Scalar(2.0, 1.0), Scalar(0.3, 0.1), {Scalar(1.0)}),
                            AffineMap{Scalar(0.4, 0.2), Scalar(-0.5, 0.7)});
    const auto adj = adjoint_symbol(op);
    ASSERT_TRUE(adj);
    EXPECT_EQ(adj->psi().a.value(), cplx(0.4, -0.2));
    EXPECT_EQ(adj->psi().b.value(), cplx(0.3, -0.1));
    EXPECT_EQ(adj->u().c().value(), cplx(-0.5, -0.7));
    EXPECT_EQ(adj->u().d().value(), cplx(2.0, -1.0));
    // |a| = 1 without the kernel rule has no adjoint symbol.
    const OperatorSymbol bad(Multiplier(), AffineMap{Scalar::polar(1.0, ExactAngle::parse("golden")), Scalar(1.0)});
    EXPECT_FALSE(adjoint_symbol(bad));
    EXPECT_THROW(adjoint_symbol(OperatorSymbol(Multiplier(Scalar(1.0), Scalar(0.0), {Scalar(1.0), Scalar(1.0)}),
                                               AffineMap{Scalar(0.5), Scalar(0.0)})),
                 UnsupportedMultiplier);
}
