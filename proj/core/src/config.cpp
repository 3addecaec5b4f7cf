#include "latspec/config.hpp"

#include <cmath>

namespace latspec {

void AnalysisConfig::validate() const {
    auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
    if (!positive(tol_exact)) throw ValidationError("tol_exact must be finite and positive");
    if (!positive(tol_sampled)) throw ValidationError("tol_sampled must be finite and positive");
    if (tol_override && !positive(*tol_override))
        throw ValidationError("tolerance override must be finite and positive");
    if (horizon < 1000) throw ValidationError("horizon must be at least 1000");
    if (!(cluster_window_fraction >= 0.0) || !(cluster_window_fraction < 1.0))
        throw ValidationError("cluster_window_fraction must lie in [0, 1)");
    if (cluster_checkpoints < 1) throw ValidationError("cluster_checkpoints must be at least 1");
    if (spectrum_truncation < 1) throw ValidationError("spectrum_truncation must be at least 1");
    if (max_cloud_points < 1) throw ValidationError("max_cloud_points must be at least 1");
    for (Complex mu : fredholm_points)
        if (!std::isfinite(mu.real()) || !std::isfinite(mu.imag()))
            throw ValidationError("fredholm points must be finite");
}

}  // namespace latspec
