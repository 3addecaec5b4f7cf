#include "latspec/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace latspec::oracle {

OracleResult quotient_norm_oracle(std::span<const Complex> samples, long k_max) {
    if (k_max < 0 || static_cast<std::size_t>(k_max) >= samples.size())
        throw BudgetExceedsSamples();

    std::vector<double> moduli(samples.size());
    std::transform(samples.begin(), samples.end(), moduli.begin(),
                   [](Complex z) { return std::abs(z); });
    const auto top = moduli.begin() + static_cast<std::ptrdiff_t>(k_max) + 1;
    std::partial_sort(moduli.begin(), top, moduli.end(), std::greater<double>());

    OracleResult out;
    out.history.reserve(static_cast<std::size_t>(k_max) + 1);
    for (long k = 0; k <= k_max; ++k)
        out.history.emplace_back(k, moduli[static_cast<std::size_t>(k)]);
    out.value = out.history.back().second;
    for (const auto& [k, v] : out.history) {
        if (v == out.value) {
            out.budget = k;
            break;
        }
    }
    if (out.history.size() < 2) {
        out.converged = false;
        return out;
    }
    const std::size_t quarter = std::max<std::size_t>(2, out.history.size() / 4);
    double lo = out.value, hi = 0.0;
    for (std::size_t i = out.history.size() - quarter; i < out.history.size(); ++i) {
        lo = std::min(lo, out.history[i].second);
        hi = std::max(hi, out.history[i].second);
    }
    out.converged = (hi - lo) <= 1e-9;
    return out;
}

std::vector<Complex> cluster_oracle(std::span<const Complex> samples, double eps,
                                    int checkpoints) {
    if (checkpoints < 1) throw std::invalid_argument("cluster_oracle: checkpoints must be >= 1");
    if (samples.size() < 2 * static_cast<std::size_t>(checkpoints))
        throw std::invalid_argument("cluster_oracle: need at least 2 samples per checkpoint");
    if (!(eps > 0.0) || !std::isfinite(eps))
        throw std::invalid_argument("cluster_oracle: eps must be positive");

    const std::size_t n = samples.size();
    const auto B = static_cast<std::size_t>(checkpoints);
    auto block_begin = [&](std::size_t b) { return b * n / B; };

    // Candidates come from the last block; exact duplicates collapse first.
    std::vector<Complex> candidates;
    for (std::size_t i = block_begin(B - 1); i < n; ++i) {
        if (std::find(candidates.begin(), candidates.end(), samples[i]) == candidates.end())
            candidates.push_back(samples[i]);
    }

    std::vector<Complex> hits;
    for (Complex c : candidates) {
        bool in_every_block = true;
        for (std::size_t b = 0; b < B && in_every_block; ++b) {
            bool found = false;
            for (std::size_t i = block_begin(b), e = block_begin(b + 1); i < e; ++i) {
                if (std::abs(samples[i] - c) <= eps) {
                    found = true;
                    break;
                }
            }
            in_every_block = found;
        }
        if (in_every_block) hits.push_back(c);
    }

    std::sort(hits.begin(), hits.end(), [](Complex a, Complex b) {
        const double ma = std::abs(a), mb = std::abs(b);
        if (ma != mb) return ma < mb;
        return std::arg(a) < std::arg(b);
    });
    std::vector<Complex> out;
    for (Complex h : hits) {
        bool dup = std::any_of(out.begin(), out.end(),
                               [&](Complex k) { return std::abs(k - h) <= eps; });
        if (!dup) out.push_back(h);
    }
    return out;
}

TailCheckResult compact_tail_check(const AtomicSymbol& sym, std::span<const long> Ns,
                                   double tol) {
    if (!(tol >= 0.0) || !std::isfinite(tol))
        throw std::invalid_argument("compact_tail_check: tol must be finite and >= 0");
    TailCheckResult out;
    out.tol = tol;
    out.bounds.reserve(Ns.size());
    for (long N : Ns) {
        const double bound = tail_sup(sym, N);
        out.bounds.emplace_back(N, bound);
        if (bound <= tol) out.compact_consistent = true;
    }
    return out;
}

std::vector<Complex> finite_section_values(const AtomicSymbol& sym, long N) {
    if (N < 0) throw std::invalid_argument("finite_section_values: N must be >= 0");
    long count = N;
    if (auto fc = sym.finite_count()) count = std::min(count, *fc);
    if (!sym.exact()) count = std::min(count, static_cast<long>(sym.samples().size()));
    std::vector<Complex> out;
    out.reserve(static_cast<std::size_t>(count));
    for (long n = 1; n <= count; ++n) out.push_back(sym.value_at(n));
    return out;
}

}  // namespace latspec::oracle
