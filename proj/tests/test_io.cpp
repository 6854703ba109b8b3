#include "fockwc/errors.hpp"
#include "fockwc/io.hpp"
#include "generators.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace fockwc;

namespace {

void expect_same_symbol(const OperatorSymbol& x, const OperatorSymbol& y) {
    EXPECT_EQ(x.psi().a.value(), y.psi().a.value());
    EXPECT_EQ(x.psi().b.value(), y.psi().b.value());
    EXPECT_EQ(x.u().c().value(), y.u().c().value());
    EXPECT_EQ(x.u().d().value(), y.u().d().value());
    ASSERT_EQ(x.u().p().size(), y.u().p().size());
    for (std::size_t k = 0; k < x.u().p().size(); ++k) EXPECT_EQ(x.u().p()[k].value(), y.u().p()[k].value());
    EXPECT_EQ(x.psi().a.is_exact(), y.psi().a.is_exact());
    EXPECT_EQ(x.c_from_kernel_rule(), y.c_from_kernel_rule());
}

} // namespace

TEST(Json, SymbolRoundTrip) {
    fockwc::testing::Gen gen(61);
    for (int trial = 0; trial < 200; ++trial) {
        const OperatorSymbol op = gen.exact_symbol();
        expect_same_symbol(op, symbol_from_json(to_json(op)));
        expect_same_symbol(op, symbol_from_text(to_json(op).dump()));
    }
}

TEST(Json, ScalarForms) {
    EXPECT_EQ(scalar_from_json(json(2.5)).value(), cplx(2.5, 0.0));
    EXPECT_EQ(scalar_from_json(json("1-2i")).value(), cplx(1.0, -2.0));
    EXPECT_EQ(scalar_from_json(json{{"re", 0.5}, {"im", -1.0}}).value(), cplx(0.5, -1.0));
    const Scalar g = scalar_from_json(json{{"mod", 1.0}, {"turns", "golden"}});
    EXPECT_TRUE(g.is_exact());
    EXPECT_EQ(g.polar()->angle.kappa(), Irrational::Golden);
    EXPECT_THROW(scalar_from_json(json::array()), ParseError);
    EXPECT_THROW(scalar_from_json(json{{"mod", 1.0}}), ParseError);
}

TEST(Json, OmittedCUsesKernelRule) {
    const OperatorSymbol op = symbol_from_text(R"({"a": {"mod": 1, "turns": "sqrt2"}, "b": "1+1i", "d": 1})");
    EXPECT_TRUE(op.c_from_kernel_rule());
    EXPECT_LT(std::abs(op.u().c().value() + op.psi().a.value() * cplx(1.0, -1.0)), 1e-15);
}

TEST(Json, ParseErrors) {
    EXPECT_THROW(symbol_from_text("{"), ParseError);
    EXPECT_THROW(symbol_from_text(R"({"b": 1, "d": 1})"), ParseError);
    EXPECT_THROW(symbol_from_text(R"({"a": 1, "b": "x", "d": 1})"), ParseError);
    EXPECT_THROW(symbol_from_text(R"({"a": 1, "b": 1, "d": 0})"), InvalidSymbol);
}

TEST(Json, ReportCarriesSchemaAndNullMargins) {
    const OperatorSymbol op = OperatorSymbol::with_default_c(Scalar::polar(1.0, ExactAngle::parse("golden")), Scalar(0.0),
                                                             Scalar(0.0, 2.0));
    const json r = report_to_json(classify_full(op), op, TruncationParams{});
    EXPECT_EQ(r["schema"], kReportSchema);
    EXPECT_EQ(r["convex_cyclic"]["value"], "Yes");
    EXPECT_TRUE(r["convex_cyclic"]["margin"].is_null());
}

TEST(Json, ReportsAreDeterministic) {
    const OperatorSymbol op(Multiplier(Scalar(1.0), Scalar(0.25), {Scalar(1.0)}),
                            AffineMap{Scalar::polar(0.5, ExactAngle::rational(1, 8)), Scalar(0.5, 0.5)});
    EXPECT_EQ(report_to_json(classify_full(op), op, TruncationParams{}).dump(),
              report_to_json(classify_full(op), op, TruncationParams{}).dump());
}

TEST(Csv, MatrixRowsAndDoubles) {
    TruncationParams t;
    t.n = 8;
    const OperatorMatrix m = build_matrix(OperatorSymbol::with_default_c(Scalar(0.5), Scalar(1.0), Scalar(1.0)), t);
    std::ostringstream os;
    write_csv(os, m);
    std::istringstream is(os.str());
    std::string line;
    std::size_t rows = 0;
    while (std::getline(is, line)) {
        ++rows;
        EXPECT_EQ(std::count(line.begin(), line.end(), ','), 15);
    }
    EXPECT_EQ(rows, 8u);
    EXPECT_EQ(std::stod(format_double(0.1)), 0.1);
    EXPECT_EQ(format_double(1.0 / 3.0), "0.3333333333333333");
}

TEST(Csv, CurveLayout) {
    HullDistanceCurve c;
    c.errors = {0.5, 0.25};
    std::ostringstream os;
    write_csv(os, c);
    EXPECT_EQ(os.str(), "n,error\n1,0.5\n2,0.25\n");
}

TEST(Corpus, EveryFileParsesAndClassifies) {
    for (const char* name : {"shift-exp", "golden-rotation", "root-of-unity", "contraction", "adjoint-probe", "identity"}) {
        std::ifstream in(std::string(FOCKWC_CORPUS_DIR) + "/" + name + ".json");
        ASSERT_TRUE(in) << name;
        std::stringstream ss;
        ss << in.rdbuf();
        const OperatorSymbol op = symbol_from_text(ss.str());
        EXPECT_NO_THROW(classify_full(op)) << name;
    }
}
