#include "latspec/ck_example.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace latspec {

namespace {

Complex eval_p(const expr::Expr& p, double x) {
    try {
        return p.eval(Complex(x, 0.0));
    } catch (const expr::DomainError& e) {
        throw ValidationError("p undefined at x = " + std::to_string(x) + ": " + e.what());
    }
}

}  // namespace

double ck_point(long n) { return std::ldexp(1.0, static_cast<int>(-(n + 1))); }

std::pair<double, double> ck_interval(long n) {
    const double d = std::ldexp(1.0, static_cast<int>(n + 1));
    return {1.0 / (d + 2.0), 1.0 / (d + 1.0)};
}

CkExample build_ck_example(const expr::Expr& p, long n_max, int samples_per_interval) {
    if (!p.valid()) throw ValidationError("p is empty");
    if (n_max < 1) throw ValidationError("n_max must be at least 1");
    if (n_max > 4096) throw ValidationError("n_max must be at most 4096");
    if (samples_per_interval < 2)
        throw ValidationError("samples_per_interval must be at least 2");

    CkExample ck;
    ck.n_max = n_max;
    ck.samples_per_interval = samples_per_interval;
    ck.p_at_zero = eval_p(p, 0.0);

    // Atomic part: lambda_n = p(x_n) for n <= n_max with the exact limit
    // p(0) standing in for the truncated tail.
    std::vector<Complex> prefix;
    prefix.reserve(static_cast<std::size_t>(n_max));
    for (long n = 1; n <= n_max; ++n) prefix.push_back(eval_p(p, ck_point(n)));
    AtomicSymbol atomic = AtomicSymbol::convergent_tail(prefix, ck.p_at_zero);

    // Non-atomic part: p over the intervals and over [0, right end of
    // I_{n_max+1}], which covers the accumulation of the dropped intervals.
    std::vector<Complex> cloud;
    double resolution = 0.0;
    auto sweep = [&](double a, double b, int count) {
        Complex prev;
        for (int j = 0; j < count; ++j) {
            const double t = static_cast<double>(j) / (count - 1);
            const Complex v = eval_p(p, a * (1.0 - t) + b * t);
            cloud.push_back(v);
            if (j > 0) resolution = std::max(resolution, std::abs(v - prev));
            prev = v;
        }
    };
    for (long n = 1; n <= n_max; ++n) {
        const auto [a, b] = ck_interval(n);
        sweep(a, b, samples_per_interval);
    }
    sweep(0.0, ck_interval(n_max + 1).second, std::max(samples_per_interval, 256));
    ck.cloud_resolution = resolution;

    // Direct scans; the cloud's sup adds its resolution, these do not.
    double ess = 0.0;
    for (Complex v : cloud) ess = std::max(ess, std::abs(v));
    double norm = ess;
    for (Complex v : prefix) norm = std::max(norm, std::abs(v));
    norm = std::max(norm, std::abs(ck.p_at_zero));
    ck.essential_norm = std::max(ess, std::abs(ck.p_at_zero));
    ck.norm = norm;

    ck.op.atomic = std::move(atomic);
    ck.op.nonatomic = SpectralSet::cloud(std::move(cloud), resolution);
    ck.op.label = "C(K) example, p(x) = " + p.to_string();
    return ck;
}

SpectralReport analyze_ck(const CkExample& ck, const AnalysisConfig& cfg) {
    SpectralReport rep = analyze(ck.op, cfg);
    rep.norm = ck.norm;
    rep.essential_norm = ck.essential_norm;
    rep.essential_spectral_radius = ck.essential_norm;
    return rep;
}

}  // namespace latspec
