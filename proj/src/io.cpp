#include "fockwc/io.hpp"

#include "fockwc/errors.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace fockwc {

namespace {

const json& require(const json& j, const char* key, std::string_view where) {
    if (!j.is_object() || !j.contains(key))
        throw ParseError(std::string(where) + ": missing field \"" + key + "\"");
    return j.at(key);
}

Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    throw ParseError("expected an integer or a \"p/q\" string, got " + j.dump());
}

double number(const json& j, std::string_view what) {
    if (!j.is_number()) throw ParseError(std::string(what) + " must be a number, got " + j.dump());
    return j.get<double>();
}

} // namespace

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

ExactAngle angle_from_json(const json& j) {
    if (j.is_string()) return ExactAngle::parse(j.get<std::string>());
    const std::string kind = require(j, "kind", "turns").get<std::string>();
    if (kind == "rational") {
        const std::int64_t p = require(j, "p", "turns").get<std::int64_t>();
        const std::int64_t q = j.value("q", std::int64_t{1});
        if (q == 0) throw ParseError("turns: zero denominator");
        return ExactAngle::rational(p, q);
    }
    if (kind == "irrational") {
        const std::string name = require(j, "kappa", "turns").get<std::string>();
        const auto kappa = irrational_from_name(name);
        if (!kappa) throw ParseError("turns: unknown irrational \"" + name + "\"");
        const Rational r = j.contains("r") ? rational_from_json(j.at("r")) : Rational(1);
        const Rational offset = j.contains("offset") ? rational_from_json(j.at("offset")) : Rational(0);
        if (r.is_zero()) throw ParseError("turns: irrational coefficient must be nonzero");
        return ExactAngle::irrational(r, *kappa, offset);
    }
    throw ParseError("turns: kind must be \"rational\" or \"irrational\"");
}

json to_json(const ExactAngle& a) {
    json j;
    if (a.is_rational()) {
        j["kind"] = "rational";
        j["p"] = a.rational_part().num();
        j["q"] = a.rational_part().den();
    } else {
        j["kind"] = "irrational";
        j["r"] = a.coefficient().to_string();
        j["kappa"] = irrational_name(a.kappa());
        if (!a.rational_part().is_zero()) j["offset"] = a.rational_part().to_string();
    }
    return j;
}

Scalar scalar_from_json(const json& j) {
    try {
        if (j.is_number()) return Scalar(j.get<double>());
        if (j.is_string()) return Scalar::parse(j.get<std::string>());
        if (j.is_object() && j.contains("mod")) {
            const double mod = number(j.at("mod"), "mod");
            if (mod < 0.0) throw ParseError("mod must be nonnegative");
            return Scalar::polar(mod, angle_from_json(require(j, "turns", "polar scalar")));
        }
        if (j.is_object() && (j.contains("re") || j.contains("im")))
            return Scalar(j.contains("re") ? number(j.at("re"), "re") : 0.0,
                          j.contains("im") ? number(j.at("im"), "im") : 0.0);
    } catch (const json::exception& e) {
        throw ParseError(e.what());
    }
    throw ParseError("cannot read a complex number from " + j.dump());
}

json to_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json to_json(const Scalar& s) {
    json j = to_json(s.value());
    if (s.polar()) {
        j["mod"] = s.polar()->modulus;
        j["turns"] = to_json(s.polar()->angle);
    }
    return j;
}

OperatorSymbol symbol_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("symbol must be a JSON object");
    const Scalar a = scalar_from_json(require(j, "a", "symbol"));
    const Scalar b = scalar_from_json(require(j, "b", "symbol"));
    const Scalar d = j.contains("d") ? scalar_from_json(j.at("d")) : Scalar(1.0);
    std::vector<Scalar> p;
    if (j.contains("p")) {
        if (!j.at("p").is_array() || j.at("p").empty()) throw ParseError("p must be a nonempty array");
        for (const json& x : j.at("p")) p.push_back(scalar_from_json(x));
    } else {
        p.push_back(Scalar(1.0));
    }
    if (!j.contains("c")) return OperatorSymbol::with_default_c(a, b, d, std::move(p));
    bool kernel_rule = false;
    if (j.contains("c_from_kernel_rule")) {
        if (!j.at("c_from_kernel_rule").is_boolean()) throw ParseError("c_from_kernel_rule must be a boolean");
        kernel_rule = j.at("c_from_kernel_rule").get<bool>();
    }
    return OperatorSymbol(Multiplier(d, scalar_from_json(j.at("c")), std::move(p)), AffineMap{a, b}, kernel_rule);
}

OperatorSymbol symbol_from_text(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    return symbol_from_json(j);
}

json to_json(const OperatorSymbol& op) {
    json j;
    j["a"] = to_json(op.psi().a);
    j["b"] = to_json(op.psi().b);
    j["d"] = to_json(op.u().d());
    j["c"] = to_json(op.u().c());
    json p = json::array();
    for (const Scalar& s : op.u().p()) p.push_back(to_json(s));
    j["p"] = p;
    j["c_from_kernel_rule"] = op.c_from_kernel_rule();
    return j;
}

json to_json(const Verdict& v) {
    json j;
    j["value"] = to_string(v.value);
    j["reason"] = v.reason;
    j["margin"] = v.margin ? json(*v.margin) : json(nullptr);
    return j;
}

json to_json(const TruncationParams& t) {
    json j;
    j["n"] = t.n;
    j["residual_tol"] = t.residual_tol;
    j["sv_tol"] = t.sv_tol;
    j["log_cap"] = t.log_cap;
    j["max_squarings"] = t.max_squarings;
    return j;
}

json report_to_json(const ClassificationReport& r, const OperatorSymbol& op, const TruncationParams& t) {
    json j;
    j["schema"] = kReportSchema;
    j["symbol"] = to_json(op);
    j["truncation"] = to_json(t);
    j["bounded"] = to_json(r.bounded);
    if (r.norm) {
        json n;
        n["lower"] = r.norm->lower;
        n["upper"] = std::isinf(r.norm->upper) ? json(nullptr) : json(r.norm->upper);
        n["exact"] = r.norm->exact;
        j["norm"] = n;
    } else {
        j["norm"] = nullptr;
    }
    j["cyclic"] = to_json(r.cyclic);
    j["adjoint_cyclic"] = to_json(r.adjoint_cyclic);
    j["convex_cyclic"] = to_json(r.convex_cyclic);
    j["adjoint_convex_cyclic"] = to_json(r.adjoint_convex_cyclic);
    j["invariant_convex_property"] = to_json(r.invariant_convex_property);
    j["supercyclic"] = to_json(r.supercyclic);
    j["weakly_supercyclic"] = to_json(r.weakly_supercyclic);
    j["tpt_supercyclic"] = to_json(r.tpt_supercyclic);
    j["weakly_cyclic"] = to_json(r.weakly_cyclic);
    if (r.eigen) {
        json e;
        e["z0"] = to_json(r.eigen->z0);
        e["beta"] = to_json(r.eigen->beta);
        e["lambda"] = to_json(r.eigen->lambda);
        e["distinct"] = r.eigen->distinct;
        json pairs = json::array();
        for (const auto& pr : r.eigen->pairs) pairs.push_back(json{{"m", pr.m}, {"eigenvalue", to_json(pr.eigenvalue)}});
        e["pairs"] = pairs;
        j["eigen"] = e;
    } else {
        j["eigen"] = nullptr;
    }
    j["eigen_note"] = r.eigen_note;
    j["adjoint_symbol"] = r.adjoint_symbol ? to_json(*r.adjoint_symbol) : json(nullptr);
    j["adjoint_note"] = r.adjoint_note;
    return j;
}

json to_json(const OperatorMatrix& m) {
    json rows = json::array();
    for (std::size_t row = 0; row < m.size(); ++row) {
        json r = json::array();
        for (std::size_t col = 0; col < m.size(); ++col) r.push_back(json::array({m(row, col).real(), m(row, col).imag()}));
        rows.push_back(std::move(r));
    }
    json j;
    j["n"] = m.size();
    j["divergent"] = m.divergent;
    j["entries"] = std::move(rows);
    return j;
}

json to_json(const CoeffVector& v) {
    json j = json::array();
    for (std::size_t k = 0; k < v.size(); ++k) j.push_back(json::array({v[k].real(), v[k].imag()}));
    return j;
}

json to_json(const OrbitRecord& o) {
    json j;
    j["route"] = to_string(o.route);
    json vs = json::array();
    for (const CoeffVector& v : o.vectors) vs.push_back(to_json(v));
    j["vectors"] = std::move(vs);
    return j;
}

json to_json(const HullDistanceCurve& c) {
    json j;
    j["iterations"] = c.iterations;
    j["target"] = to_json(c.target);
    j["errors"] = c.errors;
    j["raw"] = c.raw;
    j["gaps"] = c.gaps;
    return j;
}

json to_json(const RatioExperimentReport& r) {
    json j;
    j["region"] = json{{"kind", to_string(r.region.kind)}, {"center", to_json(r.region.center)}, {"radius", r.region.radius}};
    j["sigma"] = to_json(r.sigma);
    j["M"] = r.bound;
    j["slack"] = r.slack;
    j["max_ratio_observed"] = std::isinf(r.max_ratio_observed) ? json(nullptr) : json(r.max_ratio_observed);
    j["argmax_n"] = r.argmax_n;
    j["n_max"] = r.n_max;
    j["grid"] = r.grid;
    j["samples"] = r.samples;
    j["invariance_excess"] = r.invariance_excess;
    j["invariant"] = r.invariant();
    j["ratio_bounded"] = r.ratio_bounded();
    return j;
}

void write_csv(std::ostream& os, const OperatorMatrix& m) {
    for (std::size_t row = 0; row < m.size(); ++row) {
        for (std::size_t col = 0; col < m.size(); ++col) {
            if (col) os << ',';
            os << format_double(m(row, col).real()) << ',' << format_double(m(row, col).imag());
        }
        os << '\n';
    }
}

void write_csv(std::ostream& os, const CoeffVector& v) {
    os << "k,re,im\n";
    for (std::size_t k = 0; k < v.size(); ++k)
        os << k << ',' << format_double(v[k].real()) << ',' << format_double(v[k].imag()) << '\n';
}

void write_csv(std::ostream& os, const HullDistanceCurve& c) {
    os << "n,error\n";
    for (std::size_t n = 0; n < c.errors.size(); ++n) os << n + 1 << ',' << format_double(c.errors[n]) << '\n';
}

void write_csv(std::ostream& os, const OrbitRecord& o) {
    os << "step,k,re,im\n";
    for (std::size_t s = 0; s < o.vectors.size(); ++s)
        for (std::size_t k = 0; k < o.vectors[s].size(); ++k)
            os << s << ',' << k << ',' << format_double(o.vectors[s][k].real()) << ','
               << format_double(o.vectors[s][k].imag()) << '\n';
}

} // namespace fockwc
