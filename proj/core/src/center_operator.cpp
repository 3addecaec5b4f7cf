#include "latspec/center_operator.hpp"

#include <algorithm>
#include <cmath>

namespace latspec {

void CenterOperator::validate() const {
    if (!atomic && !nonatomic)
        throw ValidationError("operator needs an atomic part, a non-atomic part, or both");
    if (nonatomic && nonatomic->empty())
        throw ValidationError("a non-atomic part must have non-empty spectrum");
}

bool CenterOperator::estimated() const {
    if (atomic && !atomic->exact()) return true;
    return nonatomic && nonatomic->estimated();
}

double op_norm(const CenterOperator& T) {
    T.validate();
    double norm = 0.0;
    if (T.atomic) norm = std::max(norm, sup_modulus(*T.atomic));
    if (T.nonatomic) norm = std::max(norm, T.nonatomic->sup_modulus());
    return norm;
}

SpectralSet spectrum(const CenterOperator& T, const AnalysisConfig& cfg) {
    T.validate();
    SpectralSet set;
    if (T.atomic) set = values_closure(*T.atomic, cfg);
    if (T.nonatomic) set = union_of(set, *T.nonatomic);
    return set;
}

SpectralSet essential_spectrum(const CenterOperator& T, const AnalysisConfig& cfg) {
    T.validate();
    SpectralSet set;
    if (T.atomic) {
        const ClusterEstimate est = cluster_points(*T.atomic, cfg);
        if (!est.points.empty()) {
            if (est.method == ClusterEstimate::Method::Exact) {
                for (Complex z : est.points) set.add(Point{z});
            } else {
                set.add(SampleCloud{est.points, est.tolerance});
            }
        }
    }
    if (T.nonatomic) set = union_of(set, *T.nonatomic);
    return set;
}

double essential_norm(const CenterOperator& T, const AnalysisConfig& cfg) {
    T.validate();
    double r = 0.0;
    if (T.atomic) r = std::max(r, limsup_modulus(*T.atomic, cfg));
    if (T.nonatomic) r = std::max(r, T.nonatomic->sup_modulus());
    return r;
}

bool is_compact(const CenterOperator& T, const AnalysisConfig& cfg) {
    T.validate();
    const double tol = cfg.tolerance_for(T.estimated());
    if (T.atomic && limsup_modulus(*T.atomic, cfg) > tol) return false;
    if (T.nonatomic && T.nonatomic->sup_modulus() > tol) return false;
    return true;
}

bool is_fredholm(const CenterOperator& T, Complex mu, const AnalysisConfig& cfg) {
    const SpectralSet ess = essential_spectrum(T, cfg);
    if (ess.empty()) return true;
    return ess.distance(mu) > cfg.tolerance_for(T.estimated());
}

bool is_invertible(const CenterOperator& T, const AnalysisConfig& cfg) {
    const SpectralSet spec = spectrum(T, cfg);
    if (spec.empty()) return true;
    return spec.distance(Complex(0.0, 0.0)) > cfg.tolerance_for(T.estimated());
}

bool is_essentially_quasinilpotent(const CenterOperator& T, const AnalysisConfig& cfg) {
    return essential_norm(T, cfg) <= cfg.tolerance_for(T.estimated());
}

std::pair<CenterOperator, CenterOperator> decompose(const CenterOperator& T,
                                                    const AnalysisConfig& cfg) {
    T.validate();
    if (T.atomic) {
        const double tol = cfg.tolerance_for(T.estimated());
        if (limsup_modulus(*T.atomic, cfg) > tol)
            throw NotDecomposable(
                "atomic multiplier family does not vanish along the filter; "
                "the atomic part is not compact");
    }
    // A missing half becomes the operator of an empty atom family: zero norm,
    // empty spectrum, so both analyses stay faithful to the original parts.
    CenterOperator compact_part;
    compact_part.atomic = T.atomic ? *T.atomic : AtomicSymbol::finite({});
    compact_part.label = T.label.empty() ? "compact part" : T.label + " (compact part)";

    CenterOperator rest;
    if (T.nonatomic)
        rest.nonatomic = *T.nonatomic;
    else
        rest.atomic = AtomicSymbol::finite({});
    rest.label = T.label.empty() ? "non-atomic part" : T.label + " (non-atomic part)";
    return {std::move(compact_part), std::move(rest)};
}

SpectralReport analyze(const CenterOperator& T, const AnalysisConfig& cfg) {
    T.validate();
    cfg.validate();
    SpectralReport rep;
    rep.label = T.label;
    rep.estimated = T.estimated();
    rep.tolerance = cfg.tolerance_for(rep.estimated);
    rep.norm = op_norm(T);
    rep.essential_norm = essential_norm(T, cfg);
    rep.essential_spectral_radius = rep.essential_norm;
    rep.spectrum = spectrum(T, cfg);
    rep.essential_spectrum = essential_spectrum(T, cfg);
    if (T.atomic) rep.atomic_clusters = cluster_points(*T.atomic, cfg);
    rep.compact = is_compact(T, cfg);
    rep.essentially_quasinilpotent = is_essentially_quasinilpotent(T, cfg);
    rep.invertible = is_invertible(T, cfg);
    rep.fredholm.reserve(cfg.fredholm_points.size());
    for (Complex mu : cfg.fredholm_points)
        rep.fredholm.push_back(FredholmQuery{mu, is_fredholm(T, mu, cfg)});
    return rep;
}

CenterOperator scale(const CenterOperator& T, Complex alpha) {
    T.validate();
    CenterOperator out;
    out.label = T.label;
    if (T.atomic) out.atomic = scaled(*T.atomic, alpha);
    if (T.nonatomic) out.nonatomic = T.nonatomic->scaled(alpha);
    return out;
}

CenterOperator translate(const CenterOperator& T, Complex delta) {
    T.validate();
    CenterOperator out;
    out.label = T.label;
    if (T.atomic) out.atomic = translated(*T.atomic, delta);
    if (T.nonatomic) out.nonatomic = T.nonatomic->translated(delta);
    return out;
}

}  // namespace latspec
