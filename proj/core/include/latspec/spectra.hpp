#ifndef LATSPEC_SPECTRA_HPP
#define LATSPEC_SPECTRA_HPP

#include <stdexcept>
#include <variant>
#include <vector>

#include "latspec/common.hpp"

namespace latspec {

// Compact subsets of the complex plane as finite unions of primitives.
// Used for spectra, essential spectra and essential ranges.  Equality of
// sets is only defined through distance/contains, never structurally.

struct Point {
    Complex z;
};

struct Segment {
    Complex a, b;
};

struct ClosedDisc {
    Complex center;
    double radius = 0.0;  // >= 0
};

/// Finite point sample standing in for a set known only numerically.
/// `resolution` bounds the Hausdorff slack claimed for derived quantities:
/// the represented set lies within `resolution` of the points.
struct SampleCloud {
    std::vector<Complex> points;  // non-empty
    double resolution = 0.0;      // >= 0
};

using Primitive = std::variant<Point, Segment, ClosedDisc, SampleCloud>;

struct EmptySetError : std::runtime_error {
    EmptySetError() : std::runtime_error("operation requires a non-empty spectral set") {}
};

class SpectralSet {
  public:
    SpectralSet() = default;
    explicit SpectralSet(std::vector<Primitive> primitives);

    static SpectralSet point(Complex z);
    static SpectralSet segment(Complex a, Complex b);
    static SpectralSet disc(Complex center, double radius);
    static SpectralSet cloud(std::vector<Complex> points, double resolution);

    void add(Primitive p);

    bool empty() const { return prims_.empty(); }
    const std::vector<Primitive>& primitives() const { return prims_; }

    /// True if any primitive is a SampleCloud.
    bool estimated() const;

    /// Max |z| over the set; 0 for the empty set (check empty() when a
    /// genuine radius is required).  Clouds contribute max|point| + resolution.
    double sup_modulus() const;

    /// Euclidean distance from z to the set.  Throws EmptySetError if empty.
    double distance(Complex z) const;

    /// distance(z) <= tol; false for the empty set.
    bool contains(Complex z, double tol) const;

    SpectralSet translated(Complex delta) const;
    SpectralSet scaled(Complex alpha) const;

    /// Deterministic point sample of the union: every point of finite
    /// primitives, plus at least `target` points spread over segments and
    /// discs (used by set-equality-within-tolerance tests).
    std::vector<Complex> sample_points(int target) const;

  private:
    std::vector<Primitive> prims_;
};

SpectralSet union_of(const SpectralSet& s1, const SpectralSet& s2);

}  // namespace latspec

#endif
