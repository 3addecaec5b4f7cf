#ifndef LATSPEC_ORACLE_HPP
#define LATSPEC_ORACLE_HPP

#include <span>
#include <stdexcept>
#include <vector>

#include "latspec/symbol.hpp"

namespace latspec::oracle {

// Brute-force verifiers for the closed-form analytics.  These work from raw
// sample values and order statistics only, so they can cross-check the
// per-variant formulas in frechet.hpp without sharing their code paths.

struct BudgetExceedsSamples : std::runtime_error {
    BudgetExceedsSamples()
        : std::runtime_error("removal budget must be smaller than the sample count") {}
};

struct OracleResult {
    double value = 0.0;
    long budget = 0;
    /// Flat (within 1e-9) over the last quarter of the budget ladder; the
    /// window always spans at least two rungs, so a single-entry ladder
    /// never counts as converged.
    bool converged = false;
    std::vector<std::pair<long, double>> history;  // (budget, value), non-increasing
};

/// Distance to the vanishing ideal by direct minimization: the optimal
/// finitely supported perturbation cancels the k largest entries, so the
/// value at budget k is the (k+1)-th largest |sample|.  The result is the
/// minimum over budgets k <= k_max, with the full ladder in `history`.
/// Throws BudgetExceedsSamples unless 0 <= k_max < samples.size().
OracleResult quotient_norm_oracle(std::span<const Complex> samples, long k_max);

/// "Infinitely often" proxy for cluster points: split the samples into
/// `checkpoints` consecutive blocks; a candidate (drawn from the last block)
/// qualifies iff every block has a point within eps of it.  Output is
/// deduplicated within eps, ascending modulus then argument.
/// Requires samples.size() >= 2 * checkpoints and checkpoints >= 1.
std::vector<Complex> cluster_oracle(std::span<const Complex> samples, double eps,
                                    int checkpoints);

struct TailCheckResult {
    std::vector<std::pair<long, double>> bounds;  // (N, tail_sup(N))
    double tol = 0.0;
    /// Some bound fell to tol or below: the family is a norm limit of its
    /// finite sections, the finite-rank route to compactness.
    bool compact_consistent = false;
};

TailCheckResult compact_tail_check(const AtomicSymbol& sym, std::span<const long> Ns,
                                   double tol = 1e-6);

/// [lambda_1 .. lambda_N]; the Finite variant returns only defined entries.
/// Every returned value lies in the closure of the value set.
std::vector<Complex> finite_section_values(const AtomicSymbol& sym, long N);

}  // namespace latspec::oracle

#endif
