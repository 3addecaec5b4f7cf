#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "latspec/center_operator.hpp"
#include "latspec/ck_example.hpp"
#include "latspec/frechet.hpp"
#include "latspec/json_io.hpp"
#include "latspec/oracle.hpp"

namespace {

using namespace latspec;

constexpr int kExitOk = 0;
constexpr int kExitDisagreement = 1;
constexpr int kExitUsage = 2;

std::string fmt(double x) { return format_complex(Complex(x, 0.0)); }

std::string fmt_points(const std::vector<Complex>& pts, std::size_t max_listed = 8) {
    if (pts.empty()) return "{}";
    std::ostringstream out;
    out << "{";
    for (std::size_t i = 0; i < pts.size() && i < max_listed; ++i) {
        if (i > 0) out << ", ";
        out << format_complex(pts[i]);
    }
    if (pts.size() > max_listed) out << ", ... (" << pts.size() - max_listed << " more)";
    out << "}";
    return out.str();
}

/// --tol beats the spec file's "tol", which beats LATSPEC_TOL.
void apply_tolerance_override(AnalysisConfig& cfg, const std::optional<double>& cli_tol) {
    if (cli_tol) {
        cfg.tol_override = *cli_tol;
        return;
    }
    if (cfg.tol_override) return;
    const char* env = std::getenv("LATSPEC_TOL");
    if (!env || !*env) return;
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0) || !std::isfinite(v))
        throw SpecError("LATSPEC_TOL must be a positive number, got \"" + std::string(env) + "\"");
    cfg.tol_override = v;
}

std::size_t line_of_offset(const std::string& text, std::size_t byte_offset) {
    std::size_t line = 1;
    for (std::size_t i = 0; i + 1 < byte_offset && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

int report_spec_error(const SpecError& e, const std::string& path) {
    std::cerr << "error: " << e.what() << "\n";
    if (e.byte_offset > 0 && !path.empty()) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        std::cerr << "  at byte offset " << e.byte_offset << " (line "
                  << line_of_offset(buf.str(), e.byte_offset) << ") of " << path << "\n";
    }
    return kExitUsage;
}

struct AnalyzeArgs {
    std::string path;
    std::optional<double> tol;
    std::optional<long> horizon;
    std::string output = "text";
};

int run_analyze(const AnalyzeArgs& args) {
    try {
        SpecFile spec = load_spec_file(args.path);
        if (args.horizon) {
            spec.config.horizon = *args.horizon;
            if (spec.op.atomic && !spec.op.atomic->exact()) {
                const auto& g =
                    std::get<AtomicSymbol::Generator>(spec.op.atomic->variant());
                spec.op.atomic = AtomicSymbol::generator(g.formula, *args.horizon);
            }
        }
        apply_tolerance_override(spec.config, args.tol);
        const SpectralReport rep = analyze(spec.op, spec.config);
        if (args.output == "json")
            std::cout << report_to_json(rep);
        else
            std::cout << format_report_text(rep, spec.config.spectrum_truncation);
        return kExitOk;
    } catch (const SpecError& e) {
        return report_spec_error(e, args.path);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

struct CheckArgs {
    std::string path;
    std::optional<double> tol;
    std::optional<double> eps;
    std::optional<long> budget;
    std::string csv_path;
};

struct CheckRow {
    std::string quantity;
    std::string formula;
    std::string oracle;
    std::string gap;
    bool pass = true;
    bool skipped = false;
};

double hausdorff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    if (a.empty() && b.empty()) return 0.0;
    if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    auto one_sided = [&](const std::vector<Complex>& from, const std::vector<Complex>& to) {
        for (Complex z : from) {
            double best = std::numeric_limits<double>::infinity();
            for (Complex w : to) best = std::min(best, std::abs(z - w));
            worst = std::max(worst, best);
        }
    };
    one_sided(a, b);
    one_sided(b, a);
    return worst;
}

/// Section length giving exact variants a tail long enough that the order
/// statistics and block scans see the limit behaviour.
long section_length(const AtomicSymbol& sym) {
    const auto& v = sym.variant();
    if (auto fc = sym.finite_count()) return *fc;
    if (!sym.exact()) return static_cast<long>(sym.samples().size());
    long prefix = 0, period = 0;
    if (const auto* z = std::get_if<AtomicSymbol::EventuallyZero>(&v))
        prefix = static_cast<long>(z->prefix.size());
    if (const auto* c = std::get_if<AtomicSymbol::ConvergentTail>(&v))
        prefix = static_cast<long>(c->prefix.size());
    if (const auto* p = std::get_if<AtomicSymbol::EventuallyPeriodic>(&v)) {
        prefix = static_cast<long>(p->prefix.size());
        period = static_cast<long>(p->period.size());
    }
    return std::max({10000L, 2 * prefix + 100, 16 * std::max(period, 1L)});
}

int run_check(const CheckArgs& args) {
    try {
        SpecFile spec = load_spec_file(args.path);
        apply_tolerance_override(spec.config, args.tol);
        const AnalysisConfig& cfg = spec.config;
        if (!spec.op.atomic) {
            std::cerr << "error: check requires an operator with an atomic part\n";
            return kExitUsage;
        }
        const AtomicSymbol& sym = *spec.op.atomic;
        const bool finite_family = sym.finite_count().has_value();
        if (args.eps && (!(*args.eps > 0.0) || !std::isfinite(*args.eps))) {
            std::cerr << "error: --eps must be a positive number\n";
            return kExitUsage;
        }
        const double tol_check = args.eps ? *args.eps : cfg.tolerance_for(!sym.exact());

        const long N = section_length(sym);
        const std::vector<Complex> section = oracle::finite_section_values(sym, N);
        const long budget =
            std::min(args.budget.value_or(64L), static_cast<long>(section.size()) - 1);

        std::vector<CheckRow> rows;
        std::vector<std::pair<long, double>> quotient_history;

        // Quotient norm: the formula must fit between the max over the last
        // sample block (points the family certainly revisits) and the
        // removal-budget order statistic (an upper envelope).
        if (finite_family) {
            rows.push_back({"quotient norm", fmt(quotient_norm(sym, cfg)),
                            "skipped (finite family, degenerate filter)", "-", true, true});
        } else {
            const double formula = quotient_norm(sym, cfg);
            const auto res = oracle::quotient_norm_oracle(section, budget);
            quotient_history = res.history;
            const std::size_t B = static_cast<std::size_t>(cfg.cluster_checkpoints);
            double lower = 0.0;
            for (std::size_t i = section.size() - section.size() / std::max<std::size_t>(B, 1);
                 i < section.size(); ++i)
                lower = std::max(lower, std::abs(section[i]));
            const double gap = std::max({0.0, lower - formula, formula - res.value});
            rows.push_back({"quotient norm", fmt(formula),
                            fmt(res.value) + " (upper), " + fmt(lower) + " (lower)", fmt(gap),
                            gap <= tol_check, false});
        }

        // Cluster points: formula set vs the block-recurrence oracle.
        if (finite_family) {
            rows.push_back({"cluster points", fmt_points(cluster_points(sym, cfg).points),
                            "skipped (finite family, degenerate filter)", "-", true, true});
        } else {
            const auto formula = cluster_points(sym, cfg).points;
            const auto orac = oracle::cluster_oracle(section, tol_check, cfg.cluster_checkpoints);
            const double gap = hausdorff(formula, orac);
            rows.push_back({"cluster points", fmt_points(formula), fmt_points(orac), fmt(gap),
                            gap <= 2.0 * tol_check, false});
        }

        // Compactness: limsup <= tol vs tail bounds reaching tol.
        std::vector<long> Ns;
        for (long frac : {16L, 8L, 4L, 2L}) Ns.push_back(N / frac);
        Ns.push_back(static_cast<long>(
            std::floor(static_cast<double>(N) * cfg.cluster_window_fraction)));
        Ns.push_back(3 * N / 4);
        Ns.push_back(7 * N / 8);
        Ns.push_back(N - 1);
        if (const auto* c = std::get_if<AtomicSymbol::ConvergentTail>(&sym.variant()))
            Ns.push_back(static_cast<long>(c->prefix.size()));
        if (const auto* z = std::get_if<AtomicSymbol::EventuallyZero>(&sym.variant()))
            Ns.push_back(static_cast<long>(z->prefix.size()));
        std::sort(Ns.begin(), Ns.end());
        Ns.erase(std::unique(Ns.begin(), Ns.end()), Ns.end());
        while (!Ns.empty() && Ns.front() < 0) Ns.erase(Ns.begin());
        const auto tail = oracle::compact_tail_check(sym, Ns, tol_check);
        const bool formula_compact = limsup_modulus(sym, cfg) <= tol_check;
        rows.push_back({"compact", formula_compact ? "yes" : "no",
                        tail.compact_consistent ? "yes" : "no",
                        formula_compact == tail.compact_consistent ? "0" : "1",
                        formula_compact == tail.compact_consistent, false});

        if (!args.csv_path.empty()) {
            std::ofstream csv(args.csv_path);
            if (!csv) {
                std::cerr << "error: cannot write " << args.csv_path << "\n";
                return kExitUsage;
            }
            csv << "kind,index,value\n";
            for (const auto& [k, v] : quotient_history) csv << "quotient," << k << "," << v << "\n";
            for (const auto& [n, b] : tail.bounds) csv << "tail," << n << "," << b << "\n";
        }

        std::cout << "check: "
                  << (spec.op.label.empty() ? args.path : spec.op.label) << "\n";
        std::cout << "section length " << section.size() << ", budget " << budget
                  << ", tolerance " << fmt(tol_check) << "\n\n";
        std::cout << std::left << std::setw(16) << "quantity" << std::setw(38) << "formula"
                  << std::setw(56) << "oracle" << std::setw(14) << "gap"
                  << "verdict\n";
        bool all_ok = true;
        std::string offender;
        for (const auto& row : rows) {
            std::cout << std::left << std::setw(16) << row.quantity << std::setw(38) << row.formula
                      << std::setw(56) << row.oracle << std::setw(14) << row.gap
                      << (row.skipped ? "n/a" : (row.pass ? "ok" : "FAIL")) << "\n";
            if (!row.pass && offender.empty()) offender = row.quantity;
            all_ok = all_ok && row.pass;
        }
        if (!all_ok) {
            std::cout << "\ndisagreement: " << offender << "\n";
            return kExitDisagreement;
        }
        std::cout << "\nall quantities agree within tolerance\n";
        return kExitOk;
    } catch (const SpecError& e) {
        return report_spec_error(e, args.path);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

struct CkArgs {
    std::string p_text;
    long n_max = 16;
    int samples_per_interval = 64;
    std::optional<double> tol;
    std::string output = "text";
};

int run_example_ck(const CkArgs& args) {
    expr::Expr p;
    try {
        p = expr::Expr::parse(args.p_text, "x");
    } catch (const expr::SyntaxError& e) {
        std::cerr << "error in --p: " << e.what() << "\n";
        return kExitUsage;
    } catch (const expr::UnknownIdentifier& e) {
        std::cerr << "error in --p: " << e.what() << "\n";
        return kExitUsage;
    }
    try {
        AnalysisConfig cfg;
        apply_tolerance_override(cfg, args.tol);
        const CkExample ck = build_ck_example(p, args.n_max, args.samples_per_interval);
        const SpectralReport rep = analyze_ck(ck, cfg);
        if (args.output == "json") {
            std::cout << report_to_json(rep);
            return kExitOk;
        }
        std::cout << format_report_text(rep, cfg.spectrum_truncation);
        std::size_t cloud_points = 0;
        for (const Primitive& prim : ck.op.nonatomic->primitives())
            if (const auto* c = std::get_if<SampleCloud>(&prim))
                cloud_points = c->points.size();
        std::cout << "sigma_e(T_p) = {p(x) : x in (U_n I_n) U {0}}, sampled as " << cloud_points
                  << " points with resolution " << fmt(ck.cloud_resolution) << "\n";
        std::cout << "||T_p||_e = max |p| over that set = " << fmt(ck.essential_norm) << "\n";
        bool decomposable = true;
        try {
            decompose(ck.op, cfg);
        } catch (const NotDecomposable&) {
            decomposable = false;
        }
        std::cout << "p(0) = " << format_complex(ck.p_at_zero) << "; decompose "
                  << (decomposable ? "succeeds (atomic part compact)"
                                   : "raises NotDecomposable (atomic part not compact)")
                  << "\n";
        return kExitOk;
    } catch (const SpecError& e) {
        return report_spec_error(e, "");
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"latspec: spectra and essential spectra of abstract multiplication operators"};
    app.require_subcommand(1);

    AnalyzeArgs analyze_args;
    auto* cmd_analyze = app.add_subcommand("analyze", "Analyze a JSON operator spec file");
    cmd_analyze->add_option("file", analyze_args.path, "operator spec file")->required();
    cmd_analyze->add_option("--tol", analyze_args.tol, "tolerance override");
    cmd_analyze->add_option("--horizon", analyze_args.horizon,
                            "force the generator sampling horizon (>= 1000)");
    cmd_analyze->add_option("--output", analyze_args.output, "report format")
        ->check(CLI::IsMember({"text", "json"}));

    CheckArgs check_args;
    auto* cmd_check =
        app.add_subcommand("check", "Cross-check the closed-form analytics against oracles");
    cmd_check->add_option("file", check_args.path, "operator spec file")->required();
    cmd_check->add_option("--tol", check_args.tol, "tolerance override");
    cmd_check->add_option("--budget", check_args.budget, "max removal budget (default 64)");
    cmd_check->add_option("--eps", check_args.eps, "agreement / cluster epsilon");
    cmd_check->add_option("--csv", check_args.csv_path, "write oracle histories as CSV");

    auto* cmd_example = app.add_subcommand("example", "Built-in example operators");
    cmd_example->require_subcommand(1);
    CkArgs ck_args;
    auto* cmd_ck = cmd_example->add_subcommand(
        "ck", "multiplication by p on C(K), K = intervals I_n with isolated points x_n");
    cmd_ck->add_option("--p", ck_args.p_text, "expression in x")->required();
    cmd_ck->add_option("--n-max", ck_args.n_max, "intervals and atoms to model (default 16)");
    cmd_ck->add_option("--samples-per-interval", ck_args.samples_per_interval,
                       "sample count per interval (default 64)");
    cmd_ck->add_option("--tol", ck_args.tol, "tolerance override");
    cmd_ck->add_option("--output", ck_args.output, "report format")
        ->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (cmd_analyze->parsed()) return run_analyze(analyze_args);
    if (cmd_check->parsed()) return run_check(check_args);
    if (cmd_example->parsed() && cmd_ck->parsed()) return run_example_ck(ck_args);
    return kExitUsage;
}
