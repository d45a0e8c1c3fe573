#pragma once

#include <algorithm>
#include <cmath>
#include <charconv>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "htr/core.hpp"
#include "htr/kernels.hpp"

namespace htr {

/// Ordered planar points; when closed the segment last -> first is implicit.
struct Polyline {
    std::vector<cplx> points;
    bool closed = true;

    std::size_t size() const { return points.size(); }
    std::size_t segment_count() const { return closed ? points.size() : (points.empty() ? 0 : points.size() - 1); }
    cplx segment_start(std::size_t i) const { return points[i]; }
    cplx segment_end(std::size_t i) const { return points[(i + 1) % points.size()]; }
};

struct DiskShape {
    cplx center{};
    double radius = 1.0;
};
/// D(-i; sqrt2) intersected with D(i; sqrt2).
struct LensShape {};
/// Lens intersected with {Re z > 0}.
struct HalfLensShape {};
/// {z in disk : |2z/(1+z^2)| < c}.
struct PsiSublevelShape {
    double c = kSqrt2Minus1;
};

using RegionShape = std::variant<DiskShape, LensShape, HalfLensShape, PsiSublevelShape>;

inline constexpr double kDefaultExclusionRadius = 1e-4;

struct Region {
    RegionShape shape;
    double exclusion_radius = kDefaultExclusionRadius;

    static Region disk(double radius, cplx center = {}) {
        if (!(radius > 0.0)) fail(ErrorKind::InvalidInput, "disk radius must be positive");
        return {DiskShape{center, radius}};
    }
    static Region lens() { return {LensShape{}}; }
    static Region half_lens() { return {HalfLensShape{}}; }
    static Region psi_sublevel(double c) {
        if (!(c > 0.0)) fail(ErrorKind::InvalidInput, "psi sublevel needs c > 0");
        return {PsiSublevelShape{c}};
    }

    Region with_exclusion(double eps) const {
        Region r = *this;
        r.exclusion_radius = eps;
        return r;
    }
};

inline bool in_lens(cplx z) { return std::abs(z - cplx(0, 1)) < kSqrt2 && std::abs(z + cplx(0, 1)) < kSqrt2; }

/// True iff z lies in the open region.
inline bool region_contains(Region const& region, cplx z) {
    return std::visit(
        [z](auto const& s) -> bool {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, DiskShape>) {
                return std::abs(z - s.center) < s.radius;
            } else if constexpr (std::is_same_v<S, LensShape>) {
                return in_lens(z);
            } else if constexpr (std::is_same_v<S, HalfLensShape>) {
                return in_lens(z) && z.real() > 0.0;
            } else {
                if (!(std::abs(z) < 1.0)) return false;
                return std::abs(2.0 * z / (1.0 + z * z)) < s.c;
            }
        },
        region.shape);
}

/// True iff z lies on one of the two circular arcs bounding the lens inside the disk:
/// ((1+z)/(1-z))^4 is a negative real (relative imaginary tolerance 1e-10).
inline bool on_lens_boundary_arc(cplx z) {
    if (z == cplx(1.0, 0.0)) fail(ErrorKind::Domain, "lens boundary test undefined at z = 1");
    if (!(std::abs(z) < 1.0)) return false;
    const cplx r = (1.0 + z) / (1.0 - z);
    const cplx q = (r * r) * (r * r);
    return q.real() < 0.0 && std::abs(q.imag()) <= 1e-10 * std::abs(q);
}

// ---------------------------------------------------------------------------
// Boundary geometry

namespace detail {

struct ArcPiece {
    cplx center;
    double radius;
    double a0;
    double a1;
};
struct SegmentPiece {
    cplx from;
    cplx to;
};

/// One smooth boundary piece with the corner status of its two ends.
struct Piece {
    std::variant<ArcPiece, SegmentPiece> geom;
    bool start_excluded = false;
    bool end_excluded = false;

    cplx at(double s) const {
        return std::visit(
            [s](auto const& g) -> cplx {
                if constexpr (std::is_same_v<std::decay_t<decltype(g)>, ArcPiece>)
                    return g.center + std::polar(g.radius, g.a0 + s * (g.a1 - g.a0));
                else
                    return g.from + s * (g.to - g.from);
            },
            geom);
    }

    double length() const {
        return std::visit(
            [](auto const& g) -> double {
                if constexpr (std::is_same_v<std::decay_t<decltype(g)>, ArcPiece>)
                    return g.radius * std::abs(g.a1 - g.a0);
                else
                    return std::abs(g.to - g.from);
            },
            geom);
    }

    /// Parameter offset that moves an endpoint exactly eps away (chordal distance) from it.
    double trim(double eps) const {
        if (eps <= 0.0) return 0.0;
        eps *= 1.0 + 1e-9;
        return std::visit(
            [eps](auto const& g) -> double {
                if constexpr (std::is_same_v<std::decay_t<decltype(g)>, ArcPiece>)
                    return 2.0 * std::asin(std::min(1.0, eps / (2.0 * g.radius))) / std::abs(g.a1 - g.a0);
                else
                    return eps / std::abs(g.to - g.from);
            },
            geom);
    }
};

/// Corner points where maps of T may blow up; these get caps in certification contours.
inline bool is_singular_corner(cplx c) { return std::abs(c - 1.0) < 1e-12 || std::abs(c + 1.0) < 1e-12; }

inline std::vector<Piece> lens_pieces() {
    const cplx i(0, 1);
    return {
        {ArcPiece{-i, kSqrt2, kPi / 4.0, 3.0 * kPi / 4.0}, true, true},
        {ArcPiece{i, kSqrt2, 5.0 * kPi / 4.0, 7.0 * kPi / 4.0}, true, true},
    };
}

inline std::vector<Piece> half_lens_pieces() {
    const cplx i(0, 1);
    return {
        {ArcPiece{-i, kSqrt2, kPi / 4.0, kPi / 2.0}, true, true},
        {SegmentPiece{i * kSqrt2Minus1, -i * kSqrt2Minus1}, true, true},
        {ArcPiece{i, kSqrt2, 3.0 * kPi / 2.0, 7.0 * kPi / 4.0}, true, true},
    };
}

inline std::vector<std::size_t> split_counts(std::vector<double> const& lengths, std::size_t n) {
    double total = 0.0;
    for (double l : lengths) total += l;
    std::vector<std::size_t> counts(lengths.size());
    std::size_t used = 0;
    for (std::size_t k = 0; k + 1 < lengths.size(); ++k) {
        counts[k] = std::max<std::size_t>(2, static_cast<std::size_t>(std::llround(static_cast<double>(n) * lengths[k] / total)));
        used += counts[k];
    }
    counts.back() = n > used + 2 ? n - used : 2;
    return counts;
}

inline std::vector<Piece> region_pieces(Region const& region) {
    if (std::holds_alternative<LensShape>(region.shape)) return lens_pieces();
    if (std::holds_alternative<HalfLensShape>(region.shape)) return half_lens_pieces();
    return {};
}

/// Samples `count` parameters in [lo, hi]. With `include_end` false the last point is dropped
/// (it coincides with the next piece's first point). `graded` clusters points at both ends.
inline std::vector<double> piece_parameters(double lo, double hi, std::size_t count, bool include_end, bool graded) {
    std::vector<double> s(count);
    const double denom = static_cast<double>(include_end ? count - 1 : count);
    for (std::size_t j = 0; j < count; ++j) {
        double u = static_cast<double>(j) / denom;
        if (graded) u = 0.5 * (1.0 - std::cos(kPi * u));
        s[j] = lo + (hi - lo) * u;
    }
    return s;
}

struct SampledBoundary {
    std::vector<cplx> points;
    // Index ranges [begin, end) of each piece's samples, in traversal order.
    std::vector<std::pair<std::size_t, std::size_t>> spans;
};

inline SampledBoundary sample_pieces(std::vector<Piece> const& pieces, double eps, std::size_t n, bool graded) {
    std::vector<double> lengths;
    for (auto const& p : pieces) lengths.push_back(p.length());
    const auto counts = split_counts(lengths, n);
    SampledBoundary out;
    for (std::size_t k = 0; k < pieces.size(); ++k) {
        auto const& p = pieces[k];
        const double lo = p.start_excluded ? p.trim(eps) : 0.0;
        const double hi = 1.0 - (p.end_excluded ? p.trim(eps) : 0.0);
        const bool include_end = eps > 0.0 && p.end_excluded;
        const std::size_t begin = out.points.size();
        for (double s : piece_parameters(lo, hi, counts[k], include_end, graded)) out.points.push_back(p.at(s));
        out.spans.emplace_back(begin, out.points.size());
    }
    return out;
}

}  // namespace detail

/// n points on the region boundary, positively oriented. For the lens kinds, points within
/// exclusion_radius of the corners are omitted and each arc is re-parametrized over what remains.
inline Polyline region_boundary(Region const& region, std::size_t n) {
    if (n < 4) fail(ErrorKind::InvalidInput, "boundary needs at least 4 points");
    Polyline line;
    if (auto const* d = std::get_if<DiskShape>(&region.shape)) {
        for (std::size_t k = 0; k < n; ++k) {
            const double a = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
            line.points.push_back(d->center + d->radius * cplx(std::cos(a), std::sin(a)));
        }
        // Quarter points exactly.
        for (auto& p : line.points) {
            if (std::abs(p.real() - d->center.real()) < 1e-15 * d->radius) p.real(d->center.real());
            if (std::abs(p.imag() - d->center.imag()) < 1e-15 * d->radius) p.imag(d->center.imag());
        }
        return line;
    }
    if (auto const* ps = std::get_if<PsiSublevelShape>(&region.shape)) {
        if (!(ps->c < 1.0)) fail(ErrorKind::InvalidInput, "psi sublevel boundary needs c < 1");
        for (std::size_t k = 0; k < n; ++k) {
            const double a = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
            line.points.push_back(psi_inv(std::polar(ps->c, a)));
        }
        return line;
    }
    line.points = detail::sample_pieces(detail::region_pieces(region), region.exclusion_radius, n, false).points;
    return line;
}

/// Closed contour used by the certifiers: the region boundary with corner clustering and, around the
/// lens corners +-1 (where members of T may blow up), a small arc of radius exclusion_radius inside the
/// region. The certified set is the region minus those corner neighbourhoods.
struct CertificationContour {
    Polyline z;
    double exclusion_radius = 0.0;
    std::vector<cplx> excluded_corners;
};

inline CertificationContour certification_contour(Region const& region, std::size_t n) {
    CertificationContour out;
    out.exclusion_radius = region.exclusion_radius;
    const auto pieces = detail::region_pieces(region);
    if (pieces.empty()) {
        out.z = region_boundary(region, n);
        return out;
    }
    const double eps = region.exclusion_radius;
    if (!(eps > 0.0)) fail(ErrorKind::InvalidInput, "lens certification needs a positive exclusion radius");
    const std::size_t cap_points = std::max<std::size_t>(16, n / 64);
    auto sampled = detail::sample_pieces(pieces, eps, n, true);
    for (std::size_t k = 0; k < pieces.size(); ++k) {
        auto [b, e] = sampled.spans[k];
        out.z.points.insert(out.z.points.end(), sampled.points.begin() + static_cast<std::ptrdiff_t>(b),
                            sampled.points.begin() + static_cast<std::ptrdiff_t>(e));
        const cplx corner = pieces[k].at(1.0);
        out.excluded_corners.push_back(corner);
        if (!detail::is_singular_corner(corner)) continue;
        // Clockwise about the corner from this piece's exit to the next piece's entry.
        const cplx exit = sampled.points[e - 1];
        const cplx entry = sampled.points[sampled.spans[(k + 1) % pieces.size()].first];
        const double a1 = std::arg(exit - corner);
        double a2 = std::arg(entry - corner);
        while (a2 >= a1) a2 -= kTwoPi;
        for (std::size_t j = 1; j < cap_points; ++j) {
            const double a = a1 + (a2 - a1) * static_cast<double>(j) / static_cast<double>(cap_points);
            out.z.points.push_back(corner + std::polar(eps, a));
        }
    }
    return out;
}

/// Reference point used for interior probes.
inline cplx region_anchor(Region const& region) {
    if (auto const* d = std::get_if<DiskShape>(&region.shape)) return d->center;
    if (std::holds_alternative<HalfLensShape>(region.shape)) return {0.3, 0.0};
    return {0.0, 0.0};
}

/// `count` points strictly inside the region, halfway between the anchor and the boundary.
inline std::vector<cplx> interior_probes(Region const& region, std::size_t count = 16) {
    const auto boundary = region_boundary(region, 64 * count);
    const cplx anchor = region_anchor(region);
    std::vector<cplx> probes;
    for (std::size_t k = 0; k < count; ++k) {
        const cplx b = boundary.points[k * boundary.size() / count];
        const cplx p = anchor + 0.5 * (b - anchor);
        if (region_contains(region, p)) probes.push_back(p);
    }
    if (probes.empty()) probes.push_back(anchor);
    return probes;
}

struct BoundingBox {
    double xmin, xmax, ymin, ymax;
};

inline BoundingBox region_bounds(Region const& region) {
    const auto b = region_boundary(region.with_exclusion(0.0), 4096);
    BoundingBox box{1e300, -1e300, 1e300, -1e300};
    for (auto p : b.points) {
        box.xmin = std::min(box.xmin, p.real());
        box.xmax = std::max(box.xmax, p.real());
        box.ymin = std::min(box.ymin, p.imag());
        box.ymax = std::max(box.ymax, p.imag());
    }
    return box;
}

/// Points of an n-by-n lattice over the bounding box that fall inside the region.
inline std::vector<cplx> region_grid(Region const& region, std::size_t n) {
    const auto box = region_bounds(region);
    std::vector<cplx> pts;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double x = box.xmin + (box.xmax - box.xmin) * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
            const double y = box.ymin + (box.ymax - box.ymin) * (static_cast<double>(j) + 0.5) / static_cast<double>(n);
            if (region_contains(region, {x, y})) pts.emplace_back(x, y);
        }
    }
    return pts;
}

// ---------------------------------------------------------------------------
// Region spec strings: "disk:r=0.2134", "lens", "halflens", "psisub:c=0.4142"; optional ",eps=1e-4".

inline Region parse_region(std::string_view spec) {
    const auto head = spec.substr(0, spec.find_first_of(":,"));
    Region r;
    if (head == "disk") {
        const double cx = detail::has_param(spec, "cx") ? detail::parse_param(spec, "cx") : 0.0;
        const double cy = detail::has_param(spec, "cy") ? detail::parse_param(spec, "cy") : 0.0;
        r = Region::disk(detail::parse_param(spec, "r"), {cx, cy});
    } else if (head == "lens") {
        r = Region::lens();
    } else if (head == "halflens") {
        r = Region::half_lens();
    } else if (head == "psisub") {
        r = Region::psi_sublevel(detail::parse_param(spec, "c"));
    } else {
        fail(ErrorKind::InvalidInput, "unknown region '" + std::string(spec) + "'");
    }
    if (detail::has_param(spec, "eps")) {
        const double eps = detail::parse_param(spec, "eps");
        if (!(eps >= 0.0)) fail(ErrorKind::InvalidInput, "exclusion radius must be >= 0");
        r.exclusion_radius = eps;
    }
    return r;
}

inline std::string region_spec(Region const& region) {
    // shortest text that parses back to the same double
    auto num = [](double x) {
        char buf[32];
        auto res = std::to_chars(buf, buf + sizeof buf, x);
        return std::string(buf, res.ptr);
    };
    std::string out = std::visit(
        [&num](auto const& s) -> std::string {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, DiskShape>) {
                std::string d = "disk:r=" + num(s.radius);
                if (s.center != cplx{}) d += ",cx=" + num(s.center.real()) + ",cy=" + num(s.center.imag());
                return d;
            } else if constexpr (std::is_same_v<S, LensShape>) {
                return "lens";
            } else if constexpr (std::is_same_v<S, HalfLensShape>) {
                return "halflens";
            } else {
                return "psisub:c=" + num(s.c);
            }
        },
        region.shape);
    if (region.exclusion_radius != kDefaultExclusionRadius) out += ",eps=" + num(region.exclusion_radius);
    return out;
}

}  // namespace htr
