// fockwc: classify and numerically verify weighted composition operators
// W f = u (f o psi) on the Fock space, psi(z) = a z + b, u = d exp(c z) p(z).
//
// Exit codes: 0 ok, 1 input error, 2 unknown verdicts, 3 unbounded,
// 4 no convergence / failed verification.

#include "fockwc/classify.hpp"
#include "fockwc/dynamics.hpp"
#include "fockwc/errors.hpp"
#include "fockwc/io.hpp"
#include "fockwc/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace fockwc;

enum Exit { kOk = 0, kInput = 1, kUnknown = 2, kUnbounded = 3, kNoConvergence = 4 };

struct SymbolFlags {
    std::optional<double> a_mod;
    std::optional<std::string> a_turns;
    std::optional<double> a_re, a_im;
    std::optional<std::string> b, c, d, p;
    std::optional<std::string> file;
};

struct RunConfig {
    SymbolFlags sym;
    TruncationParams trunc;
    VerifyTolerances tol;
    std::string format;
    std::string out;
    // orbit
    std::size_t steps = 5;
    std::string route = "both";
    std::string seed;
    // ratio
    double radius = 1.0;
    std::size_t n_max = 200;
    std::size_t grid = 64;
    std::string sigma = "1";
};

void add_symbol_options(CLI::App* app, RunConfig& cfg) {
    SymbolFlags& s = cfg.sym;
    app->add_option("--a-mod", s.a_mod, "modulus of a (polar form, default 1)");
    app->add_option("--a-turns", s.a_turns, "argument of a in turns: p/q, golden, r*sqrt2, ...");
    app->add_option("--a-re", s.a_re, "real part of a (inexact mode)");
    app->add_option("--a-im", s.a_im, "imaginary part of a (inexact mode)");
    app->add_option("--b", s.b, "translation b, e.g. 1 or 1+1i");
    app->add_option("--c", s.c, "exponent c of u (default: -a conj(b) when |a| = 1, else 0)");
    app->add_option("--d", s.d, "constant factor d of u (default 1)");
    app->add_option("--p", s.p, "comma-separated polynomial coefficients, constant term first");
    app->add_option("--file", s.file, "symbol JSON file");
    app->add_option("--n", cfg.trunc.n, "truncation N")->check(CLI::PositiveNumber);
    app->add_option("--out", cfg.out, "output path (default stdout)");
    app->add_option("--residual-tol", cfg.tol.residual, "eigen residual tolerance");
    app->add_option("--sv-tol", cfg.trunc.sv_tol, "relative tolerance of the singular value solver");
    app->add_option("--norm-tol", cfg.tol.norm, "relative norm tolerance");
    app->add_option("--adjoint-tol", cfg.tol.adjoint, "adjoint consistency tolerance");
    app->add_option("--kernel-tol", cfg.tol.kernel, "kernel covariance tolerance");
    app->add_option("--route-tol", cfg.tol.route, "orbit route tolerance");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<Scalar> parse_list(const std::string& text) {
    std::vector<Scalar> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(Scalar::parse(item));
    if (out.empty()) throw ParseError("empty coefficient list");
    return out;
}

OperatorSymbol load_symbol(const SymbolFlags& s) {
    const bool inline_given = s.a_mod || s.a_turns || s.a_re || s.a_im || s.b || s.c || s.d || s.p;
    if (s.file) {
        if (inline_given) throw ParseError("give either --file or inline symbol flags, not both");
        return symbol_from_text(read_file(*s.file));
    }
    if (!s.b) throw ParseError("missing --b (or --file)");
    const bool polar = s.a_mod || s.a_turns;
    const bool cart = s.a_re || s.a_im;
    if (polar && cart) throw ParseError("give a either as --a-mod/--a-turns or as --a-re/--a-im");
    if (!polar && !cart) throw ParseError("missing a: use --a-turns/--a-mod or --a-re/--a-im");
    const Scalar a = polar ? Scalar::polar(s.a_mod.value_or(1.0), ExactAngle::parse(s.a_turns.value_or("0")))
                           : Scalar::inexact(cplx{s.a_re.value_or(0.0), s.a_im.value_or(0.0)});
    if (s.a_mod && *s.a_mod < 0.0) throw ParseError("--a-mod must be nonnegative");
    const Scalar b = Scalar::parse(*s.b);
    const Scalar d = s.d ? Scalar::parse(*s.d) : Scalar(1.0);
    std::vector<Scalar> p = s.p ? parse_list(*s.p) : std::vector<Scalar>{Scalar(1.0)};
    if (!s.c) return OperatorSymbol::with_default_c(a, b, d, std::move(p));
    return OperatorSymbol(Multiplier(d, Scalar::parse(*s.c), std::move(p)), AffineMap{a, b});
}

void check_cap(std::size_t n) {
    const char* env = std::getenv("FOCKWC_MAX_N");
    if (!env) return;
    char* end = nullptr;
    const unsigned long long cap = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') throw ParseError(std::string("FOCKWC_MAX_N is not an integer: ") + env);
    if (n > cap)
        throw ParseError("truncation " + std::to_string(n) + " exceeds FOCKWC_MAX_N = " + std::to_string(cap));
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(cfg.out);
    if (!os) throw ParseError("cannot write " + cfg.out);
    os << text;
}

void require_format(const RunConfig& cfg, std::initializer_list<std::string_view> allowed) {
    for (std::string_view f : allowed)
        if (cfg.format == f) return;
    throw ParseError("unsupported --format " + cfg.format);
}

int cmd_classify(const RunConfig& cfg) {
    require_format(cfg, {"json"});
    const OperatorSymbol op = load_symbol(cfg.sym);
    const ClassificationReport r = classify_full(op);
    emit(cfg, report_to_json(r, op, cfg.trunc).dump(2) + "\n");
    for (const Verdict* v : {&r.bounded, &r.cyclic, &r.adjoint_cyclic, &r.convex_cyclic, &r.adjoint_convex_cyclic,
                             &r.invariant_convex_property, &r.supercyclic, &r.weakly_supercyclic, &r.tpt_supercyclic,
                             &r.weakly_cyclic})
        if (v->value == VerdictValue::Unknown) return kUnknown;
    return kOk;
}

int cmd_matrix(const RunConfig& cfg) {
    require_format(cfg, {"csv", "json"});
    check_cap(cfg.trunc.n);
    const OperatorSymbol op = load_symbol(cfg.sym);
    const OperatorMatrix m = build_matrix(op, cfg.trunc);
    std::ostringstream os;
    if (cfg.format == "json") {
        json j;
        j["schema"] = kReportSchema;
        j["symbol"] = to_json(op);
        j["truncation"] = to_json(cfg.trunc);
        j["matrix"] = to_json(m);
        os << j.dump(2) << '\n';
    } else {
        write_csv(os, m);
    }
    emit(cfg, os.str());
    if (m.divergent) std::cerr << "warning: symbol is not bounded, norms diverge with N\n";
    return kOk;
}

int cmd_verify(const RunConfig& cfg) {
    require_format(cfg, {"text", "json"});
    check_cap(2 * cfg.trunc.n);
    const OperatorSymbol op = load_symbol(cfg.sym);
    const std::vector<CheckResult> checks = verify_symbol(op, cfg.trunc, cfg.tol);
    bool all = true;
    std::ostringstream os;
    if (cfg.format == "json") {
        json j;
        j["schema"] = kReportSchema;
        j["symbol"] = to_json(op);
        j["truncation"] = to_json(cfg.trunc);
        json arr = json::array();
        for (const CheckResult& c : checks) {
            arr.push_back(json{{"name", c.name},
                               {"passed", c.passed},
                               {"skipped", c.skipped},
                               {"value", c.value},
                               {"tolerance", c.tolerance},
                               {"detail", c.detail}});
            all = all && c.passed;
        }
        j["checks"] = arr;
        j["passed"] = all;
        os << j.dump(2) << '\n';
    } else {
        for (const CheckResult& c : checks) {
            all = all && c.passed;
            os << (c.skipped ? "SKIP" : c.passed ? "PASS" : "FAIL") << "  " << c.name;
            if (!c.skipped) os << "  value=" << format_double(c.value) << "  tol=" << format_double(c.tolerance);
            os << "  " << c.detail << '\n';
        }
    }
    emit(cfg, os.str());
    if (!all) {
        for (const CheckResult& c : checks)
            if (!c.passed) std::cerr << "failed check: " << c.name << '\n';
        return kNoConvergence;
    }
    return kOk;
}

int cmd_orbit(const RunConfig& cfg) {
    require_format(cfg, {"json", "csv"});
    check_cap(cfg.trunc.n);
    const OperatorSymbol op = load_symbol(cfg.sym);
    CoeffVector f(cfg.trunc.n);
    if (cfg.seed.empty()) {
        f[0] = {1.0, 0.0};
    } else {
        const std::vector<Scalar> coeffs = parse_list(cfg.seed);
        if (coeffs.size() > cfg.trunc.n) throw ParseError("--f has more coefficients than N");
        for (std::size_t k = 0; k < coeffs.size(); ++k) f[k] = coeffs[k].value();
    }
    std::vector<OrbitRecord> recs;
    if (cfg.route == "matrix" || cfg.route == "both")
        recs.push_back(orbit(op, f, cfg.steps, OrbitRoute::MatrixIteration, cfg.trunc));
    if (cfg.route == "closed" || cfg.route == "both")
        recs.push_back(orbit(op, f, cfg.steps, OrbitRoute::ClosedForm, cfg.trunc));
    if (recs.empty()) throw ParseError("--route must be matrix, closed or both");

    std::ostringstream os;
    if (cfg.format == "csv") {
        write_csv(os, recs.front());
    } else {
        json j;
        j["schema"] = kReportSchema;
        j["symbol"] = to_json(op);
        j["truncation"] = to_json(cfg.trunc);
        j["steps"] = cfg.steps;
        json routes = json::array();
        for (const OrbitRecord& r : recs) routes.push_back(to_json(r));
        j["orbits"] = routes;
        if (recs.size() == 2) {
            const double d = route_disagreement(recs[0], recs[1]);
            j["route_disagreement"] = d;
            j["routes_agree"] = d <= cfg.tol.route;
        }
        os << j.dump(2) << '\n';
    }
    emit(cfg, os.str());
    return kOk;
}

int cmd_ratio(const RunConfig& cfg) {
    require_format(cfg, {"json"});
    const OperatorSymbol op = load_symbol(cfg.sym);
    const RatioExperimentReport r =
        ratio_experiment(op, Scalar::parse(cfg.sigma).value(), cfg.radius, cfg.n_max, cfg.grid);
    json j;
    j["schema"] = kReportSchema;
    j["symbol"] = to_json(op);
    j["report"] = to_json(r);
    emit(cfg, j.dump(2) + "\n");
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weighted composition operators on the Fock space"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* classify = app.add_subcommand("classify", "classification report (JSON)");
    auto* matrix = app.add_subcommand("matrix", "truncated matrix (CSV or JSON)");
    auto* verify = app.add_subcommand("verify", "numerical self-checks at N and 2N");
    auto* orbit_cmd = app.add_subcommand("orbit", "orbit of a seed vector");
    auto* ratio = app.add_subcommand("ratio", "bounded-ratio experiment");
    for (CLI::App* sub : {classify, matrix, verify, orbit_cmd, ratio}) add_symbol_options(sub, cfg);

    // Defaults differ per subcommand, so they are filled in after parsing.
    classify->add_option("--format", cfg.format, "json (default)");
    matrix->add_option("--format", cfg.format, "csv (default) or json");
    verify->add_option("--format", cfg.format, "text (default) or json");
    orbit_cmd->add_option("--format", cfg.format, "json (default) or csv");
    ratio->add_option("--format", cfg.format, "json (default)");

    orbit_cmd->add_option("--steps", cfg.steps, "number of applications of W")->default_val(5);
    orbit_cmd->add_option("--route", cfg.route, "matrix, closed or both")->default_val("both");
    orbit_cmd->add_option("--f", cfg.seed, "seed coefficients against e_0, e_1, ... (default e_0)");

    ratio->add_option("--r", cfg.radius, "radius of the fixed-point disk")->default_val(1.0);
    ratio->add_option("--nmax", cfg.n_max, "largest iterate")->default_val(200);
    ratio->add_option("--grid", cfg.grid, "grid points per side")->default_val(64);
    ratio->add_option("--sigma", cfg.sigma, "test function exp(sigma z)")->default_val("1");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInput;
    }

    if (cfg.format.empty()) cfg.format = matrix->parsed() ? "csv" : verify->parsed() ? "text" : "json";

    try {
        cfg.trunc.validate();
        if (classify->parsed()) return cmd_classify(cfg);
        if (matrix->parsed()) return cmd_matrix(cfg);
        if (verify->parsed()) return cmd_verify(cfg);
        if (orbit_cmd->parsed()) return cmd_orbit(cfg);
        return cmd_ratio(cfg);
    } catch (const Unbounded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUnbounded;
    } catch (const TruncationOverflow& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUnbounded;
    } catch (const NoConvergence& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNoConvergence;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\nRun with --help for usage.\n";
        return kInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInput;
    }
}
