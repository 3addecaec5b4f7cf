#ifndef LATSPEC_FRECHET_HPP
#define LATSPEC_FRECHET_HPP

#include <vector>

#include "latspec/config.hpp"
#include "latspec/symbol.hpp"

namespace latspec {

// Frechet-filter analytics of a multiplier family: limsup/liminf of the
// modulus over cofinite index sets, the cluster-point set, and the quotient
// norm modulo families vanishing along the filter.
//
// A finite index set makes the Frechet filter degenerate (it contains the
// empty set); the Finite variant is assigned limsup = liminf = 0 and an
// empty cluster set, consistent with finite-rank parts contributing nothing
// essentially.

struct ClusterEstimate {
    std::vector<Complex> points;  // deduplicated within `tolerance`
    enum class Method { Exact, Sampled } method = Method::Exact;
    double tolerance = 0.0;  // 0 for exact
};

/// inf over cofinite F of sup |lambda| over F.  Exact per variant:
/// EventuallyZero/Finite -> 0, ConvergentTail -> |limit|,
/// EventuallyPeriodic -> max |period values|; generators are estimated from
/// the tail sample window.
double limsup_modulus(const AtomicSymbol& sym, const AnalysisConfig& cfg = {});

/// sup over cofinite F of inf |lambda| over F (dual of limsup_modulus).
double liminf_modulus(const AtomicSymbol& sym, const AnalysisConfig& cfg = {});

/// The set of values z approached by infinitely many lambda_n.  Exact for
/// exact variants; for generators a sampled estimate over the tail window,
/// deduplicated within cfg.tol_sampled (ascending modulus, then argument).
ClusterEstimate cluster_points(const AtomicSymbol& sym, const AnalysisConfig& cfg = {});

/// Distance from the family to the ideal of families vanishing along the
/// Frechet filter, in sup norm.  Equals limsup_modulus identically.
double quotient_norm(const AtomicSymbol& sym, const AnalysisConfig& cfg = {});

}  // namespace latspec

#endif
