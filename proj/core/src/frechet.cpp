#include "latspec/frechet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>
#include <vector>

namespace latspec {

namespace {

long window_start(const AtomicSymbol& sym, const AnalysisConfig& cfg) {
    const auto horizon = static_cast<long>(sym.samples().size());
    return static_cast<long>(std::floor(static_cast<double>(horizon) *
                                        cfg.cluster_window_fraction));
}

double min_modulus_after(std::span<const Complex> vs, long N) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = static_cast<std::size_t>(N); i < vs.size(); ++i)
        best = std::min(best, std::abs(vs[i]));
    return best;
}

void sort_by_modulus_then_arg(std::vector<Complex>& pts) {
    std::sort(pts.begin(), pts.end(), [](Complex a, Complex b) {
        const double ma = std::abs(a), mb = std::abs(b);
        if (ma != mb) return ma < mb;
        return std::arg(a) < std::arg(b);
    });
}

std::vector<Complex> distinct_sorted(const std::vector<Complex>& vs) {
    std::vector<Complex> out;
    for (Complex z : vs)
        if (std::find(out.begin(), out.end(), z) == out.end()) out.push_back(z);
    sort_by_modulus_then_arg(out);
    return out;
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

struct BucketStat {
    std::size_t first = 0, last = 0, count = 0;
    Complex rep;  // latest visitor
};

/// Recurrence estimator for the sampled cluster set: bucket the tail window
/// on an eps grid and keep buckets revisited across at least half the window
/// and at least cfg.cluster_checkpoints times.
std::vector<Complex> sampled_clusters(std::span<const Complex> window, double eps, int min_count) {
    double extent = 0.0;
    for (Complex z : window)
        extent = std::max({extent, std::abs(z.real()), std::abs(z.imag())});
    const double cell = std::max(eps, extent / 1e15);

    std::unordered_map<CellKey, BucketStat, CellHash> buckets;
    for (std::size_t i = 0; i < window.size(); ++i) {
        const Complex z = window[i];
        CellKey key{static_cast<long long>(std::floor(z.real() / cell)),
                    static_cast<long long>(std::floor(z.imag() / cell))};
        auto [it, fresh] = buckets.try_emplace(key);
        BucketStat& s = it->second;
        if (fresh) s.first = i;
        s.last = i;
        s.count += 1;
        s.rep = z;
    }

    std::vector<Complex> hits;
    const std::size_t span_needed = window.size() > 0 ? (window.size() - 1) / 2 : 0;
    for (const auto& [key, s] : buckets) {
        if (s.count >= static_cast<std::size_t>(min_count) && s.last - s.first >= span_needed)
            hits.push_back(s.rep);
    }
    sort_by_modulus_then_arg(hits);

    std::vector<Complex> out;
    for (Complex h : hits) {
        bool dup = std::any_of(out.begin(), out.end(),
                               [&](Complex k) { return std::abs(k - h) <= eps; });
        if (!dup) out.push_back(h);
    }
    return out;
}

}  // namespace

double limsup_modulus(const AtomicSymbol& sym, const AnalysisConfig& cfg) {
    const auto& v = sym.variant();
    if (std::holds_alternative<AtomicSymbol::Finite>(v)) return 0.0;
    if (std::holds_alternative<AtomicSymbol::EventuallyZero>(v)) return 0.0;
    if (const auto* c = std::get_if<AtomicSymbol::ConvergentTail>(&v)) return std::abs(c->limit);
    if (const auto* p = std::get_if<AtomicSymbol::EventuallyPeriodic>(&v)) {
        double best = 0.0;
        for (Complex z : p->period) best = std::max(best, std::abs(z));
        return best;
    }
    return tail_sup(sym, window_start(sym, cfg));
}

double liminf_modulus(const AtomicSymbol& sym, const AnalysisConfig& cfg) {
    const auto& v = sym.variant();
    if (std::holds_alternative<AtomicSymbol::Finite>(v)) return 0.0;
    if (std::holds_alternative<AtomicSymbol::EventuallyZero>(v)) return 0.0;
    if (const auto* c = std::get_if<AtomicSymbol::ConvergentTail>(&v)) return std::abs(c->limit);
    if (const auto* p = std::get_if<AtomicSymbol::EventuallyPeriodic>(&v)) {
        double best = std::numeric_limits<double>::infinity();
        for (Complex z : p->period) best = std::min(best, std::abs(z));
        return best;
    }
    return min_modulus_after(sym.samples(), window_start(sym, cfg));
}

ClusterEstimate cluster_points(const AtomicSymbol& sym, const AnalysisConfig& cfg) {
    const auto& v = sym.variant();
    ClusterEstimate out;
    if (std::holds_alternative<AtomicSymbol::Finite>(v)) return out;
    if (std::holds_alternative<AtomicSymbol::EventuallyZero>(v)) {
        out.points = {Complex(0.0, 0.0)};
        return out;
    }
    if (const auto* c = std::get_if<AtomicSymbol::ConvergentTail>(&v)) {
        out.points = {c->limit};
        return out;
    }
    if (const auto* p = std::get_if<AtomicSymbol::EventuallyPeriodic>(&v)) {
        out.points = distinct_sorted(p->period);
        return out;
    }

    const auto samples = sym.samples();
    const auto start = static_cast<std::size_t>(window_start(sym, cfg));
    out.method = ClusterEstimate::Method::Sampled;
    out.tolerance = cfg.tolerance_for(true);
    out.points = sampled_clusters(samples.subspan(start), out.tolerance, cfg.cluster_checkpoints);
    return out;
}

double quotient_norm(const AtomicSymbol& sym, const AnalysisConfig& cfg) {
    // Quotient distance to the vanishing ideal coincides with the limsup.
    return limsup_modulus(sym, cfg);
}

}  // namespace latspec
