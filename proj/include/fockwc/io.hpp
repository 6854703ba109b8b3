#pragma once

// JSON and CSV layouts for symbols, reports, matrices and curves.
//
// Scalars are written as {"re", "im"} plus, when an exact annotation
// exists, {"mod", "turns"}.  Readers accept those two object forms, a bare
// number, or a string such as "1-2i".

#include "fockwc/classify.hpp"
#include "fockwc/dynamics.hpp"
#include "fockwc/fock.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <string_view>

namespace fockwc {

inline constexpr std::string_view kReportSchema = "fockwc-report-1";

using json = nlohmann::ordered_json;

/// Throws ParseError.
Scalar scalar_from_json(const json& j);
json to_json(const Scalar& s);
json to_json(const ExactAngle& a);
ExactAngle angle_from_json(const json& j);
json to_json(cplx z);

/// Symbol object {"a", "b", "d", "c"?, "p"?}.  Without "c" the kernel rule
/// applies (c = -a conj(b) when |a| = 1 exactly, else 0).  Throws
/// ParseError and InvalidSymbol.
OperatorSymbol symbol_from_json(const json& j);
OperatorSymbol symbol_from_text(std::string_view text);
json to_json(const OperatorSymbol& op);

json to_json(const Verdict& v);
json to_json(const TruncationParams& t);
json report_to_json(const ClassificationReport& r, const OperatorSymbol& op, const TruncationParams& t);

/// Row-major {"n", "divergent", "entries": [[[re, im], ...], ...]}.
json to_json(const OperatorMatrix& m);
json to_json(const CoeffVector& v);
json to_json(const OrbitRecord& o);
json to_json(const HullDistanceCurve& c);
json to_json(const RatioExperimentReport& r);

/// One matrix row per line, "re,im" pairs separated by commas.
void write_csv(std::ostream& os, const OperatorMatrix& m);
/// "k,re,im" per coefficient.
void write_csv(std::ostream& os, const CoeffVector& v);
/// "n,error" for n = 1..len.
void write_csv(std::ostream& os, const HullDistanceCurve& c);
/// "step,k,re,im".
void write_csv(std::ostream& os, const OrbitRecord& o);

/// Shortest round-trip decimal form of x.
std::string format_double(double x);

} // namespace fockwc
