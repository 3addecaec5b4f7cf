#ifndef LATSPEC_CENTER_OPERATOR_HPP
#define LATSPEC_CENTER_OPERATOR_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latspec/frechet.hpp"
#include "latspec/spectra.hpp"
#include "latspec/symbol.hpp"

namespace latspec {

// An abstract multiplication operator T, given by its atomic part (a
// diagonal multiplier family) and/or its non-atomic part.  The non-atomic
// part is represented by its spectrum: for that part the essential spectrum
// equals the spectrum and the essential norm equals the norm equals the
// sup-modulus, so a compact subset of the plane is a complete model.

struct CenterOperator {
    std::optional<AtomicSymbol> atomic;
    std::optional<SpectralSet> nonatomic;  // non-empty when present
    std::string label;

    /// Throws ValidationError unless at least one part is present and the
    /// non-atomic part, if present, is non-empty.
    void validate() const;

    /// Any generator symbol or sample cloud involved.
    bool estimated() const;
};

struct FredholmQuery {
    Complex mu;
    bool fredholm = false;
};

struct SpectralReport {
    std::string label;
    double norm = 0.0;
    double essential_norm = 0.0;
    double essential_spectral_radius = 0.0;  // == essential_norm
    SpectralSet spectrum;
    SpectralSet essential_spectrum;
    std::optional<ClusterEstimate> atomic_clusters;  // absent without an atomic part
    bool compact = false;
    bool essentially_quasinilpotent = false;
    bool invertible = false;
    std::vector<FredholmQuery> fredholm;
    double tolerance = 0.0;  // tolerance the predicates were evaluated at
    bool estimated = false;
};

struct NotDecomposable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Operator norm: max of the parts' sup-moduli.
double op_norm(const CenterOperator& T);

/// Closure of the atomic value set, united with the non-atomic spectrum.
SpectralSet spectrum(const CenterOperator& T, const AnalysisConfig& cfg = {});

/// Atomic cluster points united with the non-atomic spectrum.
SpectralSet essential_spectrum(const CenterOperator& T, const AnalysisConfig& cfg = {});

/// max(limsup of the atomic modulus, sup-modulus of the non-atomic part).
/// Equals the essential spectral radius.
double essential_norm(const CenterOperator& T, const AnalysisConfig& cfg = {});

/// True iff the atomic modulus vanishes along the Frechet filter and the
/// non-atomic part is absent or within tolerance of {0}.
bool is_compact(const CenterOperator& T, const AnalysisConfig& cfg = {});

/// mu is at positive distance from the essential spectrum (vacuously true
/// when the essential spectrum is empty).
bool is_fredholm(const CenterOperator& T, Complex mu, const AnalysisConfig& cfg = {});

/// 0 is at positive distance from the spectrum.
bool is_invertible(const CenterOperator& T, const AnalysisConfig& cfg = {});

/// essential_norm(T) <= tol.  Whenever true, is_compact(T) is also true.
bool is_essentially_quasinilpotent(const CenterOperator& T, const AnalysisConfig& cfg = {});

/// Split T = T1 + T2 with T1 the compact extension of the atomic part and
/// T2 carrying the non-atomic part.  Throws NotDecomposable when the atomic
/// part is not compact (its modulus does not vanish along the filter).
std::pair<CenterOperator, CenterOperator> decompose(const CenterOperator& T,
                                                    const AnalysisConfig& cfg = {});

SpectralReport analyze(const CenterOperator& T, const AnalysisConfig& cfg = {});

/// alpha * T: scales the atomic values and the non-atomic set.
CenterOperator scale(const CenterOperator& T, Complex alpha);

/// T + delta * I: shifts the atomic values and the non-atomic set.
CenterOperator translate(const CenterOperator& T, Complex delta);

}  // namespace latspec

#endif
