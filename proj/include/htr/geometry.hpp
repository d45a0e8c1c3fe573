#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <vector>

#include "htr/core.hpp"
#include "htr/regions.hpp"

namespace htr {

inline double cross(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

/// Intersection of segments [a0, a1] and [b0, b1] as parameters along each.
struct SegmentHit {
    double s;
    double u;
};

/// Segments touching within `tol` (absolute distance) count as intersecting.
inline std::optional<SegmentHit> segment_intersection(cplx a0, cplx a1, cplx b0, cplx b1, double tol) {
    const cplx r = a1 - a0;
    const cplx q = b1 - b0;
    const double lr = std::abs(r);
    const double lq = std::abs(q);
    if (lr == 0.0 || lq == 0.0) return std::nullopt;
    const double denom = cross(r, q);
    const cplx d = b0 - a0;
    if (std::abs(denom) <= 1e-14 * lr * lq) {
        // Parallel: report only collinear overlap.
        if (std::abs(cross(d, r)) / lr > tol) return std::nullopt;
        const double t0 = std::real(d * std::conj(r)) / (lr * lr);
        const double t1 = std::real((b1 - a0) * std::conj(r)) / (lr * lr);
        const double lo = std::max(0.0, std::min(t0, t1));
        const double hi = std::min(1.0, std::max(t0, t1));
        if (lo > hi + tol / lr) return std::nullopt;
        const double s = 0.5 * (lo + hi);
        const cplx p = a0 + s * r;
        return SegmentHit{s, std::clamp(std::real((p - b0) * std::conj(q)) / (lq * lq), 0.0, 1.0)};
    }
    const double s = cross(d, q) / denom;
    const double u = cross(d, r) / denom;
    const double ts = tol / lr;
    const double tu = tol / lq;
    if (s < -ts || s > 1.0 + ts || u < -tu || u > 1.0 + tu) return std::nullopt;
    return SegmentHit{std::clamp(s, 0.0, 1.0), std::clamp(u, 0.0, 1.0)};
}

/// Crossing of segments i and j (i < j) of a closed polyline.
struct Crossing {
    std::size_t i;
    std::size_t j;
    double s;
    double u;
};

namespace detail {

inline bool adjacent_segments(std::size_t i, std::size_t j, std::size_t count, bool closed) {
    if (j == i + 1) return true;
    return closed && i == 0 && j + 1 == count;
}

}  // namespace detail

/// Non-adjacent segment pairs that intersect or touch within rel_tol * max(1, |endpoint|) for the
/// largest endpoint of the pair, so the tolerance follows the local size of the curve rather than its
/// far reaches. Below 2048 segments every pair is tested; above, segments are sorted by bounding-box
/// x-extent and swept. Stops after `limit` hits.
inline std::vector<Crossing> self_intersections(Polyline const& line, double rel_tol, std::size_t limit = 64) {
    std::vector<Crossing> hits;
    const std::size_t count = line.segment_count();
    auto local = [&](std::size_t i) {
        return rel_tol * std::max({1.0, std::abs(line.segment_start(i)), std::abs(line.segment_end(i))});
    };
    auto test = [&](std::size_t i, std::size_t j) {
        if (i > j) std::swap(i, j);
        if (detail::adjacent_segments(i, j, count, line.closed)) return;
        const double tol = std::max(local(i), local(j));
        if (auto h = segment_intersection(line.segment_start(i), line.segment_end(i), line.segment_start(j), line.segment_end(j), tol))
            hits.push_back({i, j, h->s, h->u});
    };
    if (count < 2048) {
        for (std::size_t i = 0; i < count && hits.size() < limit; ++i)
            for (std::size_t j = i + 2; j < count && hits.size() < limit; ++j) test(i, j);
        return hits;
    }
    struct Box {
        double xmin, xmax, ymin, ymax;
        std::size_t idx;
    };
    std::vector<Box> boxes(count);
    for (std::size_t i = 0; i < count; ++i) {
        const cplx a = line.segment_start(i);
        const cplx b = line.segment_end(i);
        const double tol = local(i);
        boxes[i] = {std::min(a.real(), b.real()) - tol, std::max(a.real(), b.real()) + tol,
                    std::min(a.imag(), b.imag()) - tol, std::max(a.imag(), b.imag()) + tol, i};
    }
    std::ranges::sort(boxes, [](Box const& a, Box const& b) { return a.xmin < b.xmin || (a.xmin == b.xmin && a.idx < b.idx); });
    for (std::size_t a = 0; a < count && hits.size() < limit; ++a) {
        for (std::size_t b = a + 1; b < count && boxes[b].xmin <= boxes[a].xmax && hits.size() < limit; ++b) {
            if (boxes[b].ymin > boxes[a].ymax || boxes[a].ymin > boxes[b].ymax) continue;
            test(boxes[a].idx, boxes[b].idx);
        }
    }
    std::ranges::sort(hits, [](Crossing const& x, Crossing const& y) { return x.i < y.i || (x.i == y.i && x.j < y.j); });
    return hits;
}

inline bool is_simple(Polyline const& line, double rel_tol = 0.0) { return self_intersections(line, rel_tol, 1).empty(); }

/// Winding number of a closed polyline about w (nearest integer of the summed turning angle).
/// Empty when w lies on a vertex.
inline std::optional<int> winding_number(Polyline const& line, cplx w) {
    double total = 0.0;
    const std::size_t n = line.size();
    for (std::size_t k = 0; k < n; ++k) {
        const cplx a = line.points[k] - w;
        const cplx b = line.points[(k + 1) % n] - w;
        if (a == cplx{} || b == cplx{}) return std::nullopt;
        total += std::arg(b / a);
    }
    return static_cast<int>(std::lround(total / kTwoPi));
}

enum class Direction { Horizontal, Vertical };

struct ConvexityVerdict {
    bool pass = true;
    std::size_t lines_tested = 0;
    std::size_t max_crossings = 0;
    /// Offset (y for horizontal lines, x for vertical) of the first line with more than 2 crossings.
    std::optional<double> witness_offset;
};

/// Sweeps 512 lines in the given direction across the closed polyline and counts transversal
/// crossings; vertices within 1e-9 (relative) of a line are treated as on it, so tangential grazes
/// do not count.
inline ConvexityVerdict direction_convexity_check(Polyline const& image, Direction direction, std::size_t offsets = 512) {
    if (!image.closed || image.size() < 3) fail(ErrorKind::InvalidInput, "convexity check needs a closed polyline");
    double scale = 0.0;
    for (auto p : image.points) scale = std::max(scale, std::abs(p));
    if (!is_simple(image, 1e-12)) fail(ErrorKind::InvalidInput, "convexity check needs a simple polyline");
    auto across = [direction](cplx p) { return direction == Direction::Horizontal ? p.imag() : p.real(); };
    double lo = 1e300, hi = -1e300;
    for (auto p : image.points) {
        lo = std::min(lo, across(p));
        hi = std::max(hi, across(p));
    }
    const double tol = 1e-9 * std::max(scale, 1e-300);
    ConvexityVerdict v;
    std::vector<int> signs;
    signs.reserve(image.size());
    for (std::size_t k = 0; k < offsets; ++k) {
        const double c = lo + (hi - lo) * (static_cast<double>(k) + 0.5) / static_cast<double>(offsets);
        signs.clear();
        for (auto p : image.points) {
            const int s = sign_of(across(p) - c, tol);
            if (s != 0) signs.push_back(s);
        }
        std::size_t crossings = 0;
        for (std::size_t m = 0; m < signs.size(); ++m)
            if (signs[m] != signs[(m + 1) % signs.size()]) ++crossings;
        ++v.lines_tested;
        v.max_crossings = std::max(v.max_crossings, crossings);
        if (crossings > 2 && v.pass) {
            v.pass = false;
            v.witness_offset = c;
        }
    }
    return v;
}

}  // namespace htr
