#ifndef LATSPEC_CONFIG_HPP
#define LATSPEC_CONFIG_HPP

#include <optional>
#include <vector>

#include "latspec/common.hpp"

namespace latspec {

/// Knobs shared by all analysis entry points.
///
/// Exact symbol variants are compared with `tol_exact`, which only guards
/// floating-point noise.  Sampled inputs (generator symbols, sample clouds)
/// carry an "estimated" flag through the analysis and use `tol_sampled`.
/// `tol_override`, when set (e.g. by --tol or LATSPEC_TOL), wins over both.
struct AnalysisConfig {
    double tol_exact = 1e-9;
    double tol_sampled = 1e-3;
    std::optional<double> tol_override;

    /// Default sampling horizon for generator symbols that do not carry one.
    long horizon = 100000;

    /// Generator tail analytics run on sample indices in
    /// (floor(horizon * cluster_window_fraction), horizon].
    double cluster_window_fraction = 0.5;

    /// Number of consecutive sample blocks a recurring value must visit to
    /// count as a cluster point in sampled detection.
    int cluster_checkpoints = 8;

    /// Max explicit points listed in text reports before summarizing.
    int spectrum_truncation = 32;

    /// Cap on stored points when a sampled value set is turned into a cloud.
    int max_cloud_points = 20000;

    /// Points mu at which Fredholmness of T - mu I is reported.
    std::vector<Complex> fredholm_points = {Complex(0.0, 0.0)};

    double tolerance_for(bool estimated) const {
        if (tol_override) return *tol_override;
        return estimated ? tol_sampled : tol_exact;
    }

    /// Throws ValidationError if any field is out of range.
    void validate() const;
};

}  // namespace latspec

#endif
