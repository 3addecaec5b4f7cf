#include "latspec/symbol.hpp"

#include "latspec/frechet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>

namespace latspec {

namespace {

constexpr double kModulusBound = 1e12;

bool finite_value(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void check_values(const std::vector<Complex>& vs, const char* what) {
    for (Complex z : vs)
        if (!finite_value(z)) throw ValidationError(std::string(what) + " entries must be finite");
}

double max_modulus(std::span<const Complex> vs) {
    double best = 0.0;
    for (Complex z : vs) best = std::max(best, std::abs(z));
    return best;
}

/// Max |v| over entries with 1-based index > N.
double max_modulus_after(const std::vector<Complex>& vs, long N) {
    double best = 0.0;
    for (std::size_t i = N < 0 ? 0 : static_cast<std::size_t>(N); i < vs.size(); ++i)
        best = std::max(best, std::abs(vs[i]));
    return best;
}

expr::Expr real_expr(double x, const std::string& var) {
    if (x >= 0.0) return expr::Expr::literal(x, var);
    return expr::Expr::negate(expr::Expr::literal(-x, var));
}

expr::Expr complex_expr(Complex z, const std::string& var) {
    if (z.imag() == 0.0) return real_expr(z.real(), var);
    expr::Expr im = expr::Expr::binary(expr::BinaryOp::Mul, real_expr(z.imag(), var),
                                       expr::Expr::constant(expr::Builtin::I, var));
    if (z.real() == 0.0) return im;
    return expr::Expr::binary(expr::BinaryOp::Add, real_expr(z.real(), var), std::move(im));
}

void append_distinct_points(SpectralSet& set, const std::vector<Complex>& vs,
                            std::vector<Complex>& seen) {
    for (Complex z : vs) {
        if (std::find(seen.begin(), seen.end(), z) != seen.end()) continue;
        seen.push_back(z);
        set.add(Point{z});
    }
}

struct CellKey {
    long long x, y;
    bool operator==(const CellKey&) const = default;
};

struct CellHash {
    std::size_t operator()(const CellKey& k) const {
        std::size_t h = std::hash<long long>()(k.x);
        return h ^ (std::hash<long long>()(k.y) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    }
};

}  // namespace

AtomicSymbol AtomicSymbol::finite(std::vector<Complex> values) {
    check_values(values, "finite symbol");
    return AtomicSymbol(Finite{std::move(values)});
}

AtomicSymbol AtomicSymbol::eventually_zero(std::vector<Complex> prefix) {
    check_values(prefix, "eventually-zero symbol");
    return AtomicSymbol(EventuallyZero{std::move(prefix)});
}

AtomicSymbol AtomicSymbol::convergent_tail(std::vector<Complex> prefix, Complex limit) {
    check_values(prefix, "convergent symbol");
    if (!finite_value(limit)) throw ValidationError("convergent symbol limit must be finite");
    return AtomicSymbol(ConvergentTail{std::move(prefix), limit});
}

AtomicSymbol AtomicSymbol::eventually_periodic(std::vector<Complex> prefix,
                                               std::vector<Complex> period) {
    check_values(prefix, "eventually-periodic symbol");
    check_values(period, "eventually-periodic symbol");
    if (period.empty()) throw ValidationError("eventually-periodic symbol needs a non-empty period");
    return AtomicSymbol(EventuallyPeriodic{std::move(prefix), std::move(period)});
}

AtomicSymbol AtomicSymbol::generator(expr::Expr formula, long horizon) {
    if (!formula.valid()) throw ValidationError("generator formula is empty");
    if (horizon < 1000) throw ValidationError("generator horizon must be at least 1000");
    auto samples = std::make_shared<std::vector<Complex>>();
    samples->reserve(static_cast<std::size_t>(horizon));
    for (long n = 1; n <= horizon; ++n) {
        Complex z;
        try {
            z = formula.eval(Complex(static_cast<double>(n), 0.0));
        } catch (const expr::DomainError& e) {
            throw ValidationError("generator formula undefined at n = " + std::to_string(n) +
                                  ": " + e.what());
        }
        const double m = std::abs(z);
        if (!std::isfinite(m) || m > kModulusBound)
            throw ValidationError("generator value at n = " + std::to_string(n) +
                                  " is not a bounded multiplier");
        samples->push_back(z);
    }
    return AtomicSymbol(Generator{std::move(formula), horizon, std::move(samples)});
}

bool AtomicSymbol::exact() const { return !std::holds_alternative<Generator>(v_); }

std::optional<long> AtomicSymbol::finite_count() const {
    if (const auto* f = std::get_if<Finite>(&v_)) return static_cast<long>(f->values.size());
    return std::nullopt;
}

Complex AtomicSymbol::value_at(long n) const {
    if (n < 1) throw std::out_of_range("value_at: index must be >= 1");
    const auto idx = static_cast<std::size_t>(n - 1);
    if (const auto* f = std::get_if<Finite>(&v_)) {
        if (idx >= f->values.size()) throw std::out_of_range("value_at: past finite symbol");
        return f->values[idx];
    }
    if (const auto* z = std::get_if<EventuallyZero>(&v_))
        return idx < z->prefix.size() ? z->prefix[idx] : Complex(0.0, 0.0);
    if (const auto* c = std::get_if<ConvergentTail>(&v_))
        return idx < c->prefix.size() ? c->prefix[idx] : c->limit;
    if (const auto* p = std::get_if<EventuallyPeriodic>(&v_)) {
        if (idx < p->prefix.size()) return p->prefix[idx];
        return p->period[(idx - p->prefix.size()) % p->period.size()];
    }
    const auto& g = std::get<Generator>(v_);
    if (idx >= g.samples->size()) throw std::out_of_range("value_at: past generator horizon");
    return (*g.samples)[idx];
}

std::span<const Complex> AtomicSymbol::samples() const {
    if (const auto* g = std::get_if<Generator>(&v_)) return *g->samples;
    return {};
}

double sup_modulus(const AtomicSymbol& sym) {
    const auto& v = sym.variant();
    if (const auto* f = std::get_if<AtomicSymbol::Finite>(&v)) return max_modulus(f->values);
    if (const auto* z = std::get_if<AtomicSymbol::EventuallyZero>(&v))
        return max_modulus(z->prefix);
    if (const auto* c = std::get_if<AtomicSymbol::ConvergentTail>(&v))
        return std::max(max_modulus(c->prefix), std::abs(c->limit));
    if (const auto* p = std::get_if<AtomicSymbol::EventuallyPeriodic>(&v))
        return std::max(max_modulus(p->prefix), max_modulus(p->period));
    return max_modulus(sym.samples());
}

double tail_sup(const AtomicSymbol& sym, long N) {
    if (N < 0) throw std::invalid_argument("tail_sup: N must be >= 0");
    const auto& v = sym.variant();
    if (const auto* f = std::get_if<AtomicSymbol::Finite>(&v))
        return max_modulus_after(f->values, N);
    if (const auto* z = std::get_if<AtomicSymbol::EventuallyZero>(&v))
        return max_modulus_after(z->prefix, N);
    if (const auto* c = std::get_if<AtomicSymbol::ConvergentTail>(&v))
        return std::max(max_modulus_after(c->prefix, N), std::abs(c->limit));
    if (const auto* p = std::get_if<AtomicSymbol::EventuallyPeriodic>(&v)) {
        // Every period entry recurs for arbitrarily large n.
        return std::max(max_modulus_after(p->prefix, N), max_modulus(p->period));
    }
    const auto& g = std::get<AtomicSymbol::Generator>(v);
    return max_modulus_after(*g.samples, N);
}

SpectralSet values_closure(const AtomicSymbol& sym, const AnalysisConfig& cfg) {
    const auto& v = sym.variant();
    SpectralSet set;
    std::vector<Complex> seen;

    if (const auto* f = std::get_if<AtomicSymbol::Finite>(&v)) {
        append_distinct_points(set, f->values, seen);
        return set;
    }
    if (const auto* z = std::get_if<AtomicSymbol::EventuallyZero>(&v)) {
        append_distinct_points(set, {Complex(0.0, 0.0)}, seen);
        append_distinct_points(set, z->prefix, seen);
        return set;
    }
    if (const auto* c = std::get_if<AtomicSymbol::ConvergentTail>(&v)) {
        append_distinct_points(set, {c->limit}, seen);
        append_distinct_points(set, c->prefix, seen);
        return set;
    }
    if (const auto* p = std::get_if<AtomicSymbol::EventuallyPeriodic>(&v)) {
        append_distinct_points(set, p->period, seen);
        append_distinct_points(set, p->prefix, seen);
        return set;
    }

    // Generator: deduplicate samples on a square grid, coarsening the cell
    // until the kept set fits the cloud budget.  Every sample is then within
    // cell * sqrt(2) of a kept representative.  The estimated cluster points
    // are appended afterwards; they are sample values themselves, so they
    // add no slack.
    const auto samples = sym.samples();
    const int cap = std::max(1, cfg.max_cloud_points);
    double extent = 0.0;
    for (Complex z : samples)
        extent = std::max({extent, std::abs(z.real()), std::abs(z.imag())});
    // Keep coordinate / cell well inside integer range for the grid key.
    double cell = std::max(1e-9, extent / 1e15);
    std::vector<Complex> kept;
    for (;;) {
        kept.clear();
        std::unordered_map<CellKey, bool, CellHash> cells;
        cells.reserve(samples.size());
        for (Complex z : samples) {
            CellKey key{static_cast<long long>(std::floor(z.real() / cell)),
                        static_cast<long long>(std::floor(z.imag() / cell))};
            if (cells.emplace(key, true).second) kept.push_back(z);
        }
        if (static_cast<int>(kept.size()) <= cap) break;
        cell *= 2.0;
    }
    for (Complex z : cluster_points(sym, cfg).points) {
        if (std::find(kept.begin(), kept.end(), z) == kept.end()) kept.push_back(z);
    }
    return SpectralSet::cloud(std::move(kept), cell * std::sqrt(2.0));
}

AtomicSymbol scaled(const AtomicSymbol& sym, Complex alpha) {
    if (!finite_value(alpha)) throw ValidationError("scale factor must be finite");
    const auto& v = sym.variant();
    auto mul = [alpha](std::vector<Complex> vs) {
        for (Complex& z : vs) z *= alpha;
        return vs;
    };
    if (const auto* f = std::get_if<AtomicSymbol::Finite>(&v))
        return AtomicSymbol::finite(mul(f->values));
    if (const auto* z = std::get_if<AtomicSymbol::EventuallyZero>(&v))
        return AtomicSymbol::eventually_zero(mul(z->prefix));
    if (const auto* c = std::get_if<AtomicSymbol::ConvergentTail>(&v))
        return AtomicSymbol::convergent_tail(mul(c->prefix), alpha * c->limit);
    if (const auto* p = std::get_if<AtomicSymbol::EventuallyPeriodic>(&v))
        return AtomicSymbol::eventually_periodic(mul(p->prefix), mul(p->period));
    const auto& g = std::get<AtomicSymbol::Generator>(v);
    expr::Expr formula = expr::Expr::binary(
        expr::BinaryOp::Mul, complex_expr(alpha, g.formula.variable()), g.formula);
    return AtomicSymbol::generator(std::move(formula), g.horizon);
}

AtomicSymbol translated(const AtomicSymbol& sym, Complex delta) {
    if (!finite_value(delta)) throw ValidationError("translation offset must be finite");
    const auto& v = sym.variant();
    auto add = [delta](std::vector<Complex> vs) {
        for (Complex& z : vs) z += delta;
        return vs;
    };
    if (const auto* f = std::get_if<AtomicSymbol::Finite>(&v))
        return AtomicSymbol::finite(add(f->values));
    if (const auto* z = std::get_if<AtomicSymbol::EventuallyZero>(&v))
        return AtomicSymbol::convergent_tail(add(z->prefix), delta);
    if (const auto* c = std::get_if<AtomicSymbol::ConvergentTail>(&v))
        return AtomicSymbol::convergent_tail(add(c->prefix), c->limit + delta);
    if (const auto* p = std::get_if<AtomicSymbol::EventuallyPeriodic>(&v))
        return AtomicSymbol::eventually_periodic(add(p->prefix), add(p->period));
    const auto& g = std::get<AtomicSymbol::Generator>(v);
    expr::Expr formula = expr::Expr::binary(
        expr::BinaryOp::Add, g.formula, complex_expr(delta, g.formula.variable()));
    return AtomicSymbol::generator(std::move(formula), g.horizon);
}

}  // namespace latspec
