#include "latspec/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace latspec {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void check_primitive(const Primitive& p) {
    if (const auto* pt = std::get_if<Point>(&p)) {
        if (!finite(pt->z)) throw ValidationError("point must be finite");
    } else if (const auto* seg = std::get_if<Segment>(&p)) {
        if (!finite(seg->a) || !finite(seg->b)) throw ValidationError("segment must be finite");
    } else if (const auto* d = std::get_if<ClosedDisc>(&p)) {
        if (!finite(d->center) || !std::isfinite(d->radius) || d->radius < 0.0)
            throw ValidationError("disc needs a finite center and radius >= 0");
    } else if (const auto* c = std::get_if<SampleCloud>(&p)) {
        if (c->points.empty()) throw ValidationError("sample cloud must be non-empty");
        if (!std::isfinite(c->resolution) || c->resolution < 0.0)
            throw ValidationError("sample cloud resolution must be >= 0");
        for (Complex z : c->points)
            if (!finite(z)) throw ValidationError("sample cloud points must be finite");
    }
}

double segment_distance(const Segment& s, Complex z) {
    const Complex ab = s.b - s.a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(z - s.a);
    double t = ((z - s.a) * std::conj(ab)).real() / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(z - (s.a + t * ab));
}

double primitive_distance(const Primitive& p, Complex z) {
    if (const auto* pt = std::get_if<Point>(&p)) return std::abs(z - pt->z);
    if (const auto* seg = std::get_if<Segment>(&p)) return segment_distance(*seg, z);
    if (const auto* d = std::get_if<ClosedDisc>(&p))
        return std::max(0.0, std::abs(z - d->center) - d->radius);
    const auto& c = std::get<SampleCloud>(p);
    double best = std::numeric_limits<double>::infinity();
    for (Complex q : c.points) best = std::min(best, std::abs(z - q));
    return std::max(0.0, best - c.resolution);
}

double primitive_sup_modulus(const Primitive& p) {
    if (const auto* pt = std::get_if<Point>(&p)) return std::abs(pt->z);
    if (const auto* seg = std::get_if<Segment>(&p))
        return std::max(std::abs(seg->a), std::abs(seg->b));  // |z| is convex on a segment
    if (const auto* d = std::get_if<ClosedDisc>(&p)) return std::abs(d->center) + d->radius;
    const auto& c = std::get<SampleCloud>(p);
    double best = 0.0;
    for (Complex q : c.points) best = std::max(best, std::abs(q));
    return best + c.resolution;
}

}  // namespace

SpectralSet::SpectralSet(std::vector<Primitive> primitives) : prims_(std::move(primitives)) {
    for (const auto& p : prims_) check_primitive(p);
}

SpectralSet SpectralSet::point(Complex z) { return SpectralSet({Point{z}}); }

SpectralSet SpectralSet::segment(Complex a, Complex b) { return SpectralSet({Segment{a, b}}); }

SpectralSet SpectralSet::disc(Complex center, double radius) {
    return SpectralSet({ClosedDisc{center, radius}});
}

SpectralSet SpectralSet::cloud(std::vector<Complex> points, double resolution) {
    return SpectralSet({SampleCloud{std::move(points), resolution}});
}

void SpectralSet::add(Primitive p) {
    check_primitive(p);
    prims_.push_back(std::move(p));
}

bool SpectralSet::estimated() const {
    return std::any_of(prims_.begin(), prims_.end(), [](const Primitive& p) {
        return std::holds_alternative<SampleCloud>(p);
    });
}

double SpectralSet::sup_modulus() const {
    double best = 0.0;
    for (const auto& p : prims_) best = std::max(best, primitive_sup_modulus(p));
    return best;
}

double SpectralSet::distance(Complex z) const {
    if (prims_.empty()) throw EmptySetError();
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : prims_) best = std::min(best, primitive_distance(p, z));
    return best;
}

bool SpectralSet::contains(Complex z, double tol) const {
    if (prims_.empty()) return false;
    return distance(z) <= tol;
}

SpectralSet SpectralSet::translated(Complex delta) const {
    if (!finite(delta)) throw ValidationError("translation offset must be finite");
    SpectralSet out;
    for (const auto& p : prims_) {
        if (const auto* pt = std::get_if<Point>(&p)) {
            out.prims_.push_back(Point{pt->z + delta});
        } else if (const auto* seg = std::get_if<Segment>(&p)) {
            out.prims_.push_back(Segment{seg->a + delta, seg->b + delta});
        } else if (const auto* d = std::get_if<ClosedDisc>(&p)) {
            out.prims_.push_back(ClosedDisc{d->center + delta, d->radius});
        } else {
            auto c = std::get<SampleCloud>(p);
            for (Complex& q : c.points) q += delta;
            out.prims_.push_back(std::move(c));
        }
    }
    return out;
}

SpectralSet SpectralSet::scaled(Complex alpha) const {
    if (!finite(alpha)) throw ValidationError("scale factor must be finite");
    const double mag = std::abs(alpha);
    SpectralSet out;
    for (const auto& p : prims_) {
        if (const auto* pt = std::get_if<Point>(&p)) {
            out.prims_.push_back(Point{alpha * pt->z});
        } else if (const auto* seg = std::get_if<Segment>(&p)) {
            out.prims_.push_back(Segment{alpha * seg->a, alpha * seg->b});
        } else if (const auto* d = std::get_if<ClosedDisc>(&p)) {
            out.prims_.push_back(ClosedDisc{alpha * d->center, mag * d->radius});
        } else {
            auto c = std::get<SampleCloud>(p);
            for (Complex& q : c.points) q *= alpha;
            c.resolution *= mag;
            out.prims_.push_back(std::move(c));
        }
    }
    return out;
}

std::vector<Complex> SpectralSet::sample_points(int target) const {
    std::vector<Complex> out;
    if (prims_.empty()) return out;
    int continuum = 0;
    for (const auto& p : prims_)
        if (std::holds_alternative<Segment>(p) || std::holds_alternative<ClosedDisc>(p))
            ++continuum;
    const int share = continuum > 0 ? std::max(2, target / continuum) : 0;

    for (const auto& p : prims_) {
        if (const auto* pt = std::get_if<Point>(&p)) {
            out.push_back(pt->z);
        } else if (const auto* seg = std::get_if<Segment>(&p)) {
            for (int j = 0; j < share; ++j) {
                double t = share == 1 ? 0.0 : static_cast<double>(j) / (share - 1);
                out.push_back(seg->a + t * (seg->b - seg->a));
            }
        } else if (const auto* d = std::get_if<ClosedDisc>(&p)) {
            // Center plus concentric rings, boundary included.
            const int rings = std::max(1, static_cast<int>(std::ceil(std::sqrt(share / 3.0))));
            out.push_back(d->center);
            for (int k = 1; k <= rings; ++k) {
                const double rk = d->radius * k / rings;
                const int mk = 6 * k;
                for (int j = 0; j < mk; ++j) {
                    const double theta = 2.0 * 3.141592653589793 * j / mk;
                    out.push_back(d->center + Complex(rk * std::cos(theta), rk * std::sin(theta)));
                }
            }
        } else {
            const auto& c = std::get<SampleCloud>(p);
            out.insert(out.end(), c.points.begin(), c.points.end());
        }
    }
    return out;
}

SpectralSet union_of(const SpectralSet& s1, const SpectralSet& s2) {
    std::vector<Primitive> prims = s1.primitives();
    prims.insert(prims.end(), s2.primitives().begin(), s2.primitives().end());
    return SpectralSet(std::move(prims));
}

}  // namespace latspec
