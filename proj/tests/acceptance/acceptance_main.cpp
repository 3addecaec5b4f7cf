// Acceptance gate: one function per criterion, one PASS/FAIL line each.
// Usage: latspec_acceptance <path-to-latspec-cli>
// The CLI path is needed by criterion 8 (exit codes and offsets of the
// installed tool); everything else runs in-process against the library.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "latspec/center_operator.hpp"
#include "latspec/ck_example.hpp"
#include "latspec/json_io.hpp"
#include "latspec/oracle.hpp"

using namespace latspec;
using expr::Expr;

namespace {

std::string g_cli;                 // path to the latspec binary (argv[1])
std::filesystem::path g_tmp;       // scratch directory for criterion 8
std::string g_detail;              // set by each criterion for its PASS line
int g_grammar_count = 0;
std::chrono::steady_clock::time_point g_suite_start;

// Always-on requirement: never compiled out in Release.
#define REQUIRE(cond)                                                          \
    do {                                                                       \
        if (!(cond)) {                                                         \
            std::printf("       requirement failed at %s:%d: %s\n", __FILE__, \
                        __LINE__, #cond);                                      \
            return false;                                                      \
        }                                                                      \
    } while (0)

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Complex rand_complex(std::mt19937& rng, double span = 4.0) {
    std::uniform_real_distribution<double> d(-span, span);
    return {d(rng), d(rng)};
}

Complex rand_complex_away_from_zero(std::mt19937& rng, double lo = 0.5, double hi = 3.0) {
    std::uniform_real_distribution<double> mag(lo, hi);
    std::uniform_real_distribution<double> ang(-3.14159, 3.14159);
    return std::polar(mag(rng), ang(rng));
}

std::vector<Complex> rand_values(std::mt19937& rng, int max_len) {
    std::uniform_int_distribution<int> len(0, max_len);
    std::vector<Complex> out;
    for (int j = len(rng); j > 0; --j) out.push_back(rand_complex(rng));
    return out;
}

/// Exact infinite-tail symbol whose prefix stays within the k_max = 64
/// removal budget of the brute-force oracle.
AtomicSymbol random_infinite_symbol(std::mt19937& rng, int which) {
    switch (which % 3) {
        case 0:
            return AtomicSymbol::convergent_tail(rand_values(rng, 64), rand_complex(rng));
        case 1:
            return AtomicSymbol::eventually_zero(rand_values(rng, 64));
        default: {
            std::uniform_int_distribution<int> plen(1, 8);
            std::vector<Complex> period;
            for (int j = plen(rng); j > 0; --j) period.push_back(rand_complex(rng));
            return AtomicSymbol::eventually_periodic(rand_values(rng, 64), period);
        }
    }
}

/// Mixed operator with an exact atomic part and a non-atomic part that
/// always contains a continuum primitive (so sample_points can honor a
/// 1000-point request).
CenterOperator random_composite(std::mt19937& rng, int which) {
    CenterOperator op;
    if (which % 4 == 3)
        op.atomic = AtomicSymbol::finite(rand_values(rng, 10));
    else
        op.atomic = random_infinite_symbol(rng, which);

    SpectralSet set;
    if (which % 2 == 0)
        set.add(Segment{rand_complex(rng), rand_complex(rng)});
    else
        set.add(ClosedDisc{rand_complex(rng), std::abs(rand_complex(rng, 1.5))});
    std::uniform_int_distribution<int> extra(0, 2);
    for (int j = extra(rng); j > 0; --j) {
        switch (extra(rng)) {
            case 0: set.add(Point{rand_complex(rng)}); break;
            case 1: set.add(Segment{rand_complex(rng), rand_complex(rng)}); break;
            default: set.add(ClosedDisc{rand_complex(rng), std::abs(rand_complex(rng, 1.0))});
        }
    }
    op.nonatomic = std::move(set);
    return op;
}

bool mutually_contained(const SpectralSet& a, const SpectralSet& b, double tol, int points) {
    for (const Complex z : a.sample_points(points))
        if (!b.contains(z, tol)) return false;
    for (const Complex z : b.sample_points(points))
        if (!a.contains(z, tol)) return false;
    return true;
}

// --- criterion 1 -----------------------------------------------------------

bool criterion_quotient_norm() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937 rng(174001);
    const int cases = 220;
    double max_gap = 0.0;
    for (int k = 0; k < cases; ++k) {
        const AtomicSymbol sym = random_infinite_symbol(rng, k);
        const double formula = quotient_norm(sym);
        const auto section = oracle::finite_section_values(sym, 10000);
        const auto res = oracle::quotient_norm_oracle(section, 64);
        const double gap = std::abs(formula - res.value);
        max_gap = std::max(max_gap, gap);
        REQUIRE(gap <= 1e-6);
    }
    const double elapsed = seconds_since(t0);
    REQUIRE(elapsed < 10.0);
    std::ostringstream d;
    d << cases << " symbols, max gap " << max_gap << ", " << elapsed << " s";
    g_detail = d.str();
    return true;
}

// --- criterion 2 -----------------------------------------------------------

bool criterion_largest_cluster() {
    std::mt19937 rng(174002);
    int with_clusters = 0;
    for (int k = 0; k < 240; ++k) {
        AtomicSymbol sym = (k % 4 == 3) ? AtomicSymbol::finite(rand_values(rng, 20))
                                        : random_infinite_symbol(rng, k);
        const ClusterEstimate est = cluster_points(sym);
        if (est.points.empty()) continue;
        ++with_clusters;
        double max_mod = 0.0;
        for (const Complex z : est.points) max_mod = std::max(max_mod, std::abs(z));
        REQUIRE(max_mod == limsup_modulus(sym));  // bit-level
    }
    REQUIRE(with_clusters >= 150);
    g_detail = std::to_string(with_clusters) + " non-empty cluster sets, all bit-exact";
    return true;
}

// --- criterion 3 -----------------------------------------------------------

bool criterion_compactness() {
    std::mt19937 rng(174003);
    int checked = 0, compact_count = 0;
    for (int k = 0; k < 120; ++k) {
        AtomicSymbol sym = AtomicSymbol::finite({});
        long analytic_N = 0;
        switch (k % 5) {
            case 0: {  // compact: eventually zero
                auto prefix = rand_values(rng, 30);
                analytic_N = static_cast<long>(prefix.size());
                sym = AtomicSymbol::eventually_zero(std::move(prefix));
                break;
            }
            case 1: {  // compact: convergent with limit exactly zero
                auto prefix = rand_values(rng, 30);
                analytic_N = static_cast<long>(prefix.size());
                sym = AtomicSymbol::convergent_tail(std::move(prefix), Complex(0.0, 0.0));
                break;
            }
            case 2: {  // compact by convention: finite support
                auto values = rand_values(rng, 30);
                analytic_N = static_cast<long>(values.size());
                sym = AtomicSymbol::finite(std::move(values));
                break;
            }
            case 3: {  // not compact: mass at the limit
                auto prefix = rand_values(rng, 30);
                analytic_N = static_cast<long>(prefix.size());
                sym = AtomicSymbol::convergent_tail(std::move(prefix),
                                                    rand_complex_away_from_zero(rng));
                break;
            }
            default: {  // not compact: recurring period values
                auto prefix = rand_values(rng, 30);
                analytic_N = static_cast<long>(prefix.size());
                std::vector<Complex> period = {rand_complex_away_from_zero(rng),
                                               rand_complex(rng)};
                sym = AtomicSymbol::eventually_periodic(std::move(prefix), std::move(period));
                break;
            }
        }
        CenterOperator op;
        op.atomic = sym;
        const bool compact = is_compact(op);
        const long Ns[] = {0, analytic_N, analytic_N + 7};
        const bool bounds_vanish = oracle::compact_tail_check(sym, Ns, 1e-6).compact_consistent;
        REQUIRE(compact == bounds_vanish);
        ++checked;
        if (compact) ++compact_count;
    }
    g_detail = std::to_string(checked) + " symbols, " + std::to_string(compact_count) +
               " compact, no counterexamples";
    return true;
}

// --- criterion 4 -----------------------------------------------------------

bool criterion_union_max() {
    std::mt19937 rng(174004);
    for (int k = 0; k < 110; ++k) {
        const CenterOperator op = random_composite(rng, k);
        CenterOperator atomic_part;
        atomic_part.atomic = op.atomic;
        CenterOperator nonatomic_part;
        nonatomic_part.nonatomic = op.nonatomic;

        const double whole = essential_norm(op);
        REQUIRE(whole == std::max(essential_norm(atomic_part), essential_norm(nonatomic_part)));

        const SpectralSet glued =
            union_of(essential_spectrum(atomic_part), essential_spectrum(nonatomic_part));
        REQUIRE(mutually_contained(essential_spectrum(op), glued, 1e-9, 1000));
    }
    g_detail = "110 composites, union and max exact";
    return true;
}

// --- criterion 5 -----------------------------------------------------------

bool criterion_quasinilpotent_compact() {
    std::mt19937 rng(174005);
    for (int k = 0; k < 110; ++k) {
        CenterOperator op;
        switch (k % 3) {
            case 0: op.atomic = AtomicSymbol::eventually_zero(rand_values(rng, 40)); break;
            case 1:
                op.atomic =
                    AtomicSymbol::convergent_tail(rand_values(rng, 40), Complex(0.0, 0.0));
                break;
            default: op.atomic = AtomicSymbol::finite(rand_values(rng, 40)); break;
        }
        if (k % 2 == 0) op.nonatomic = SpectralSet::point(Complex(0.0, 0.0));
        REQUIRE(essential_norm(op) <= 1e-12);
        REQUIRE(is_essentially_quasinilpotent(op));
        REQUIRE(is_compact(op));
    }
    g_detail = "110 essentially quasinilpotent operators, all compact";
    return true;
}

// --- criterion 6 -----------------------------------------------------------

bool criterion_ck_example() {
    const CkExample ck = build_ck_example(Expr::parse("x", "x"), 16, 64);
    REQUIRE(std::abs(ck.essential_norm - 0.2) <= 1e-9);
    const SpectralReport rep = analyze_ck(ck);
    REQUIRE(std::abs(rep.essential_norm - 0.2) <= 1e-9);
    REQUIRE(rep.atomic_clusters.has_value());
    REQUIRE(rep.atomic_clusters->points.size() == 1);
    REQUIRE(rep.atomic_clusters->points[0] == Complex(0.0, 0.0));

    for (const char* text : {"x", "x^2", "x*(1-x)", "sin(x)"}) {
        const CkExample ok = build_ck_example(Expr::parse(text, "x"), 16, 64);
        bool decomposed = true;
        try {
            decompose(ok.op);
        } catch (const NotDecomposable&) {
            decomposed = false;
        }
        REQUIRE(decomposed);
    }
    for (const char* text : {"1", "cos(x)", "x+0.5", "exp(x)"}) {
        const CkExample bad = build_ck_example(Expr::parse(text, "x"), 16, 64);
        bool decomposed = true;
        try {
            decompose(bad.op);
        } catch (const NotDecomposable&) {
            decomposed = false;
        }
        REQUIRE(!decomposed);
    }
    g_detail = "essential norm 0.2, cluster set {0}, decompose gated by p(0)";
    return true;
}

// --- criterion 7 -----------------------------------------------------------

bool criterion_invariance() {
    std::mt19937 rng(174007);
    for (int k = 0; k < 100; ++k) {
        const CenterOperator op = random_composite(rng, k);
        const Complex alpha = rand_complex(rng, 2.0);
        const Complex mu = rand_complex(rng, 2.0);

        const double direct = essential_norm(scale(op, alpha));
        REQUIRE(std::abs(direct - std::abs(alpha) * essential_norm(op)) <= 1e-9);

        const SpectralSet before = essential_spectrum(op);
        const SpectralSet after = essential_spectrum(translate(op, -mu));
        for (const Complex z : after.sample_points(1000))
            REQUIRE(before.contains(z + mu, 1e-9));
        for (const Complex z : before.sample_points(1000))
            REQUIRE(after.contains(z - mu, 1e-9));
    }
    g_detail = "100 random (T, alpha, mu) triples within 1e-9";
    return true;
}

// --- criterion 8 -----------------------------------------------------------

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

CliResult run_cli(const std::string& args) {
    const auto out_path = g_tmp / "stdout.txt";
    const auto err_path = g_tmp / "stderr.txt";
    const std::string cmd = "\"" + g_cli + "\" " + args + " > \"" + out_path.string() +
                            "\" 2> \"" + err_path.string() + "\"";
    const int status = std::system(cmd.c_str());
    CliResult r;
    if (status != -1 && WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    return r;
}

bool grammar_corpus_parses() {
    const Expr x = Expr::variable("x");
    auto lit = [](double v) { return Expr::literal(v, "x"); };
    auto add = [](Expr a, Expr b) { return Expr::binary(expr::BinaryOp::Add, a, b); };
    auto sub = [](Expr a, Expr b) { return Expr::binary(expr::BinaryOp::Sub, a, b); };
    auto mul = [](Expr a, Expr b) { return Expr::binary(expr::BinaryOp::Mul, a, b); };
    auto dvd = [](Expr a, Expr b) { return Expr::binary(expr::BinaryOp::Div, a, b); };
    auto pow = [](Expr a, Expr b) { return Expr::binary(expr::BinaryOp::Pow, a, b); };
    auto neg = [](Expr a) { return Expr::negate(a); };
    auto fn = [](expr::Func f, Expr a) { return Expr::call(f, a); };
    const Expr pi = Expr::constant(expr::Builtin::Pi, "x");
    const Expr e = Expr::constant(expr::Builtin::E, "x");
    const Expr i = Expr::constant(expr::Builtin::I, "x");
    using expr::Func;

    const std::vector<std::pair<std::string, Expr>> corpus = {
        {"1", lit(1)},
        {"42", lit(42)},
        {"0.125", lit(0.125)},
        {"2.5e-3", lit(2.5e-3)},
        {"x", x},
        {"pi", pi},
        {"e", e},
        {"i", i},
        {"-x", neg(x)},
        {"--x", neg(neg(x))},
        {"1+2", add(lit(1), lit(2))},
        {"1-2", sub(lit(1), lit(2))},
        {"2*3", mul(lit(2), lit(3))},
        {"8/2", dvd(lit(8), lit(2))},
        {"2^3", pow(lit(2), lit(3))},
        {"1+2+3", add(add(lit(1), lit(2)), lit(3))},
        {"1-2-3", sub(sub(lit(1), lit(2)), lit(3))},
        {"1*2*3", mul(mul(lit(1), lit(2)), lit(3))},
        {"8/4/2", dvd(dvd(lit(8), lit(4)), lit(2))},
        {"2^3^2", pow(lit(2), pow(lit(3), lit(2)))},
        {"1+2*3", add(lit(1), mul(lit(2), lit(3)))},
        {"(1+2)*3", mul(add(lit(1), lit(2)), lit(3))},
        {"1+2-3", sub(add(lit(1), lit(2)), lit(3))},
        {"2*x+1", add(mul(lit(2), x), lit(1))},
        {"2*(x+1)", mul(lit(2), add(x, lit(1)))},
        {"-2^2", neg(pow(lit(2), lit(2)))},
        {"(-2)^2", pow(neg(lit(2)), lit(2))},
        {"2^-1", pow(lit(2), neg(lit(1)))},
        {"x*-3", mul(x, neg(lit(3)))},
        {"x/-2", dvd(x, neg(lit(2)))},
        {"sin(x)", fn(Func::Sin, x)},
        {"cos(x)", fn(Func::Cos, x)},
        {"exp(x)", fn(Func::Exp, x)},
        {"log(x)", fn(Func::Log, x)},
        {"abs(x)", fn(Func::Abs, x)},
        {"sqrt(x)", fn(Func::Sqrt, x)},
        {"re(x)", fn(Func::Re, x)},
        {"im(x)", fn(Func::Im, x)},
        {"conj(x)", fn(Func::Conj, x)},
        {"sin(cos(x))", fn(Func::Sin, fn(Func::Cos, x))},
        {"sin(x)^2", pow(fn(Func::Sin, x), lit(2))},
        {"sin(x^2)", fn(Func::Sin, pow(x, lit(2)))},
        {"-sin(x)", neg(fn(Func::Sin, x))},
        {"sin(-x)", fn(Func::Sin, neg(x))},
        {"sin(pi*x)", fn(Func::Sin, mul(pi, x))},
        {"exp(i*pi)", fn(Func::Exp, mul(i, pi))},
        {"e^x", pow(e, x)},
        {"i*x+1", add(mul(i, x), lit(1))},
        {"x/(1-x)", dvd(x, sub(lit(1), x))},
        {"(x+1)*(x-1)", mul(add(x, lit(1)), sub(x, lit(1)))},
        {"1/(2^n)", Expr()},  // placeholder: replaced below with variable n
        {"((x))", x},
        {" 1 + 2 ", add(lit(1), lit(2))},
        {"abs(x)^0.5", pow(fn(Func::Abs, x), lit(0.5))},
        {"conj(x)*x", mul(fn(Func::Conj, x), x)},
        {"x^2+2*x+1", add(add(pow(x, lit(2)), mul(lit(2), x)), lit(1))},
        {"1/2/3", dvd(dvd(lit(1), lit(2)), lit(3))},
        {"-(x+1)", neg(add(x, lit(1)))},
        {"-1+x", add(neg(lit(1)), x)},
        {"2--3", sub(lit(2), neg(lit(3)))},
    };

    int checked = 0;
    for (const auto& [text, expected] : corpus) {
        if (!expected.valid()) continue;  // skip the placeholder row
        const Expr parsed = Expr::parse(text, "x");
        REQUIRE(parsed == expected);
        // Serialization must reproduce the same tree.
        REQUIRE(Expr::parse(parsed.to_string(), "x") == parsed);
        ++checked;
    }
    // The one expression in n exercises the second variable name.
    const Expr in_n = Expr::parse("1/(2^n)", "n");
    REQUIRE(in_n ==
            Expr::binary(expr::BinaryOp::Div, Expr::literal(1, "n"),
                         Expr::binary(expr::BinaryOp::Pow, Expr::literal(2, "n"),
                                      Expr::variable("n"))));
    ++checked;
    REQUIRE(checked >= 50);
    g_grammar_count = checked;
    return true;
}

bool malformed_corpus_rejected() {
    // Broken expressions through the ck entry point: exit 2, offset on stderr.
    const std::vector<std::string> bad_exprs = {
        "sin(", "1+", "x @ 2", "2*", "((x)", "x y", "foo(x)", "0..5", "", "*x",
    };
    for (const std::string& text : bad_exprs) {
        const CliResult r = run_cli("example ck --p '" + text + "'");
        REQUIRE(r.exit_code == 2);
        REQUIRE(r.err.find("offset") != std::string::npos);
    }

    // Broken JSON documents through analyze: exit 2, byte offset on stderr.
    const std::vector<std::string> bad_json = {
        "{",
        "{\"label\": }",
        "[1, 2",
        "{\"label\": \"a\" \"b\"}",
        "",
        "{\"atomic\": {\"kind\": \"finite\", \"values\": [[1, 0]]}",
    };
    int idx = 0;
    for (const std::string& doc : bad_json) {
        const auto path = g_tmp / ("bad" + std::to_string(idx++) + ".json");
        std::ofstream(path) << doc;
        const CliResult r = run_cli("analyze \"" + path.string() + "\"");
        REQUIRE(r.exit_code == 2);
        REQUIRE(r.err.find("byte offset") != std::string::npos);
    }

    // Schema violations are usage errors too (no byte offset to report).
    const auto schema_path = g_tmp / "schema.json";
    std::ofstream(schema_path) << R"({"atomic": {"kind": "spiral"}})";
    const CliResult r = run_cli("analyze \"" + schema_path.string() + "\"");
    REQUIRE(r.exit_code == 2);

    // A missing file must not look like success.
    const CliResult missing = run_cli("analyze \"" + (g_tmp / "nope.json").string() + "\"");
    REQUIRE(missing.exit_code == 2);
    return true;
}

bool report_round_trip_lossless() {
    const auto spec_path = g_tmp / "spec.json";
    std::ofstream(spec_path) << R"({
        "label": "round trip",
        "atomic": {"kind": "convergent", "prefix": [[2, 0], [0, -1]], "limit": [0.25, 0.125]},
        "nonatomic": [
            {"type": "segment", "a": [0, 0], "b": [1, 1]},
            {"type": "disc", "center": [-0.5, 0], "radius": 0.75}
        ],
        "config": {"fredholm_points": [[0, 0], [3, 3]]}
    })";
    const CliResult r = run_cli("analyze \"" + spec_path.string() + "\" --output json");
    REQUIRE(r.exit_code == 0);
    const SpectralReport rep = report_from_json(r.out);
    REQUIRE(report_to_json(rep) == r.out);  // re-emission is a fixed point
    REQUIRE(rep.label == "round trip");
    REQUIRE(rep.fredholm.size() == 2);

    // Library-level: analyze -> json -> parse -> json is the identity.
    CenterOperator op;
    op.atomic = AtomicSymbol::eventually_periodic({Complex(1.5, 0.0)},
                                                  {Complex(0.0, 1.0), Complex(-1.0, 0.0)});
    op.nonatomic = SpectralSet::cloud({Complex(0.1, 0.2), Complex(0.3, -0.4)}, 0.05);
    op.label = "library round trip";
    const std::string emitted = report_to_json(analyze(op));
    REQUIRE(report_to_json(report_from_json(emitted)) == emitted);
    return true;
}

bool criterion_cli_contract() {
    REQUIRE(!g_cli.empty());
    REQUIRE(grammar_corpus_parses());
    REQUIRE(malformed_corpus_rejected());
    REQUIRE(report_round_trip_lossless());
    const double elapsed = seconds_since(g_suite_start);
    REQUIRE(elapsed < 60.0);
    std::ostringstream d;
    d << g_grammar_count << " expressions, 18 malformed inputs, lossless round trip, suite "
      << elapsed << " s";
    g_detail = d.str();
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    g_suite_start = std::chrono::steady_clock::now();
    if (argc > 1) g_cli = argv[1];
    g_tmp = std::filesystem::temp_directory_path() /
            ("latspec_acceptance_" + std::to_string(::getpid()));
    std::filesystem::create_directories(g_tmp);

    struct Criterion {
        const char* name;
        bool (*run)();
    };
    const Criterion table[] = {
        {"quotient norm matches the brute-force oracle", criterion_quotient_norm},
        {"largest cluster point equals the limsup", criterion_largest_cluster},
        {"compactness matches the tail-bound check", criterion_compactness},
        {"essential spectrum/norm are union/max of the parts", criterion_union_max},
        {"essential quasinilpotence implies compactness", criterion_quasinilpotent_compact},
        {"C(K) worked example reproduces", criterion_ck_example},
        {"scaling and translation invariance", criterion_invariance},
        {"expression grammar and CLI contract", criterion_cli_contract},
    };

    int failures = 0;
    int index = 0;
    for (const Criterion& c : table) {
        ++index;
        g_detail.clear();
        bool ok = false;
        try {
            ok = c.run();
        } catch (const std::exception& e) {
            std::printf("       unexpected exception: %s\n", e.what());
        }
        if (!ok) ++failures;
        std::printf("[%s] criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", index, c.name,
                    g_detail.empty() ? "" : " -- ", g_detail.c_str());
    }

    std::error_code ec;
    std::filesystem::remove_all(g_tmp, ec);

    if (failures > 0) {
        std::printf("%d of 8 criteria failed\n", failures);
        return 1;
    }
    std::printf("all 8 criteria passed\n");
    return 0;
}
