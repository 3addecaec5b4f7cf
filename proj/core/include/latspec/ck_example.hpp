#ifndef LATSPEC_CK_EXAMPLE_HPP
#define LATSPEC_CK_EXAMPLE_HPP

#include <vector>

#include "latspec/center_operator.hpp"
#include "latspec/expr.hpp"

namespace latspec {

// Multiplication by p on C(K) for the compact set
//
//   K = union of I_n, n >= 1,  with  I_n = [1/(2^{n+1}+2), 1/(2^{n+1}+1)],
//       together with the isolated points x_n = 2^{-(n+1)} and 0.
//
// The Dirac functionals at the x_n are the atoms, so the multiplier family
// is lambda_n = p(x_n) with limit p(0), and the non-atomic part is
// multiplication by p on the intervals, whose spectrum is
// p(union I_n union {0}).  The atomic band is not complemented here, which
// makes the operator decomposable exactly when p(0) = 0.

struct CkExample {
    CenterOperator op;
    /// ||p||_inf over the sampled K (atoms, intervals, 0).
    double norm = 0.0;
    /// max |p| over the sampled non-atomic set union {p(0)}; equals the
    /// essential norm because the atomic part contributes only |p(0)|.
    double essential_norm = 0.0;
    Complex p_at_zero;
    long n_max = 0;
    int samples_per_interval = 0;
    double cloud_resolution = 0.0;
};

double ck_point(long n);                         // x_n = 2^{-(n+1)}
std::pair<double, double> ck_interval(long n);   // I_n endpoints

/// p must be an expression in x; n_max >= 1, samples_per_interval >= 2.
CkExample build_ck_example(const expr::Expr& p, long n_max, int samples_per_interval);

/// analyze() on the built operator, with the norm fields replaced by the
/// direct scans over the sampled set (exact for the scanned points, instead
/// of the cloud's resolution-padded envelope).
SpectralReport analyze_ck(const CkExample& ck, const AnalysisConfig& cfg = {});

}  // namespace latspec

#endif
