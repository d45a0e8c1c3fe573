#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "htr/core.hpp"
#include "htr/geometry.hpp"
#include "htr/harmonic.hpp"
#include "htr/kernels.hpp"
#include "htr/parallel.hpp"
#include "htr/regions.hpp"

namespace htr {

template <class F>
concept PlanarMap = std::invocable<F const&, cplx> && std::convertible_to<std::invoke_result_t<F const&, cplx>, cplx>;

// ---------------------------------------------------------------------------
// Typical reality

struct TypicalRealityVerdict {
    bool pass = true;
    std::size_t points_checked = 0;
    std::optional<cplx> witness;
    cplx witness_value{};
};

/// sign(Im f(z)) = sign(Im z) wherever |Im z| > 1e-6, and |Im f(x)| < 1e-9 on real grid points.
template <PlanarMap F>
TypicalRealityVerdict typical_reality_check(F const& f, std::vector<cplx> const& grid, unsigned workers = 0) {
    const auto values = parallel_map<cplx>(grid.size(), [&](std::size_t k) { return cplx(f(grid[k])); }, workers);
    TypicalRealityVerdict v;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const cplx z = grid[k];
        const cplx w = values[k];
        ++v.points_checked;
        bool ok = true;
        if (z.imag() == 0.0)
            ok = std::abs(w.imag()) < 1e-9;
        else if (std::abs(z.imag()) > 1e-6)
            ok = sign_of(w.imag()) == sign_of(z.imag());
        if (!ok) {
            v.pass = false;
            v.witness = z;
            v.witness_value = w;
            return v;
        }
    }
    return v;
}

/// Polar grid inside D(0, rmax): `radial` radii times `angular` angles (none on the real axis),
/// followed by `real_points` points of the real diameter.
inline std::vector<cplx> disk_test_grid(std::size_t radial, std::size_t angular, double rmax, std::size_t real_points = 0) {
    std::vector<cplx> grid;
    grid.reserve(radial * angular + real_points);
    for (std::size_t i = 0; i < radial; ++i) {
        const double r = rmax * (static_cast<double>(i) + 1.0) / static_cast<double>(radial);
        for (std::size_t k = 0; k < angular; ++k)
            grid.push_back(std::polar(r, kTwoPi * (static_cast<double>(k) + 0.5) / static_cast<double>(angular)));
    }
    for (std::size_t k = 0; k < real_points; ++k)
        grid.emplace_back(-rmax + 2.0 * rmax * (static_cast<double>(k) + 1.0) / (static_cast<double>(real_points) + 1.0), 0.0);
    return grid;
}

// ---------------------------------------------------------------------------
// Collision search

struct CollisionWitness {
    cplx z1;
    cplx z2;
    double df;
};

struct CollisionOptions {
    double delta_z = 1e-3;
    /// |f(z1) - f(z2)| must be below delta_w_rel * max(1, |f(z1)|, |f(z2)|).
    double delta_w_rel = 1e-9;
    int max_iterations = 3000;
};

namespace detail {

/// Closure membership for the convex and star-shaped regions used here: shrink toward the anchor.
inline bool in_region_closure(Region const& region, cplx z) {
    const cplx a = region_anchor(region);
    return region_contains(region, a + (1.0 - 1e-12) * (z - a));
}

inline bool in_certified_set(Region const& region, cplx z, std::vector<cplx> const& excluded, double eps) {
    if (!in_region_closure(region, z)) return false;
    for (cplx c : excluded)
        if (detail::is_singular_corner(c) && std::abs(z - c) < eps * (1.0 - 1e-9)) return false;
    return true;
}

template <std::size_t D, class Obj>
std::array<double, D> nelder_mead(Obj const& obj, std::array<double, D> x0, double step, int max_iter, double ftol) {
    using Pt = std::array<double, D>;
    std::array<Pt, D + 1> simplex;
    std::array<double, D + 1> val;
    simplex[0] = x0;
    for (std::size_t k = 0; k < D; ++k) {
        simplex[k + 1] = x0;
        simplex[k + 1][k] += step;
    }
    for (std::size_t k = 0; k <= D; ++k) val[k] = obj(simplex[k]);
    auto combine = [](Pt const& a, Pt const& b, double t) {
        Pt r;
        for (std::size_t k = 0; k < D; ++k) r[k] = a[k] + t * (b[k] - a[k]);
        return r;
    };
    for (int it = 0; it < max_iter; ++it) {
        std::array<std::size_t, D + 1> order;
        for (std::size_t k = 0; k <= D; ++k) order[k] = k;
        std::ranges::sort(order, [&](std::size_t a, std::size_t b) { return val[a] < val[b]; });
        const std::size_t best = order[0], worst = order[D], second = order[D - 1];
        if (val[best] <= ftol || std::abs(val[worst] - val[best]) <= 1e-30) break;
        Pt centroid{};
        for (std::size_t k = 0; k <= D; ++k) {
            if (k == worst) continue;
            for (std::size_t d = 0; d < D; ++d) centroid[d] += simplex[k][d] / static_cast<double>(D);
        }
        const Pt reflected = combine(centroid, simplex[worst], -1.0);
        const double fr = obj(reflected);
        if (fr < val[best]) {
            const Pt expanded = combine(centroid, simplex[worst], -2.0);
            const double fe = obj(expanded);
            if (fe < fr) {
                simplex[worst] = expanded;
                val[worst] = fe;
            } else {
                simplex[worst] = reflected;
                val[worst] = fr;
            }
        } else if (fr < val[second]) {
            simplex[worst] = reflected;
            val[worst] = fr;
        } else {
            const Pt contracted = fr < val[worst] ? combine(centroid, reflected, 0.5) : combine(centroid, simplex[worst], 0.5);
            const double fc = obj(contracted);
            if (fc < std::min(fr, val[worst])) {
                simplex[worst] = contracted;
                val[worst] = fc;
            } else {
                for (std::size_t k = 0; k <= D; ++k) {
                    if (k == best) continue;
                    simplex[k] = combine(simplex[best], simplex[k], 0.5);
                    val[k] = obj(simplex[k]);
                }
            }
        }
    }
    std::size_t best = 0;
    for (std::size_t k = 1; k <= D; ++k)
        if (val[k] < val[best]) best = k;
    return simplex[best];
}

}  // namespace detail

/// Checks a candidate pair against the witness thresholds by direct evaluation.
template <PlanarMap F>
std::optional<CollisionWitness> verify_collision(F const& f, cplx z1, cplx z2, CollisionOptions const& opts = {}) {
    if (!(std::abs(z1 - z2) > opts.delta_z)) return std::nullopt;
    try {
        const cplx w1 = f(z1);
        const cplx w2 = f(z2);
        const double df = std::abs(w1 - w2);
        const double scale = std::max({1.0, std::abs(w1), std::abs(w2)});
        if (df < opts.delta_w_rel * scale) return CollisionWitness{z1, z2, df};
    } catch (Error const&) {
    }
    return std::nullopt;
}

/// A pair passing the value thresholds is kept only when the argument principle places a preimage of
/// f(z1) next to z2: the image of a small circle about z2, lying inside the open region, winds about
/// f(z1). Pairs on a boundary fold, where f agrees only on the boundary itself, fail this.
template <PlanarMap F>
bool confirm_by_degree(F const& f, Region const& region, CollisionWitness const& w) {
    if (!region_contains(region, w.z1) || !region_contains(region, w.z2)) return false;
    constexpr std::size_t kPoints = 256;
    auto circle = [&](double rho, std::size_t k) { return w.z2 + std::polar(rho, kTwoPi * static_cast<double>(k) / kPoints); };
    double rho = std::min(0.25 * std::abs(w.z1 - w.z2), 1e-4 * std::max(1.0, std::abs(w.z2)));
    for (int halvings = 0;; ++halvings) {
        bool inside = true;
        for (std::size_t k = 0; k < kPoints && inside; ++k) inside = region_contains(region, circle(rho, k));
        if (inside) break;
        if (halvings == 60) return false;
        rho *= 0.5;
    }
    try {
        const cplx target = f(w.z1);
        Polyline image;
        for (std::size_t k = 0; k < kPoints; ++k) image.points.push_back(f(circle(rho, k)));
        const auto wn = winding_number(image, target);
        return wn && *wn != 0;
    } catch (Error const&) {
        return false;
    }
}

/// Minimizes |f(z1) - f(z2)|^2 over pairs in the region (derivative-free Nelder-Mead in R^4 with
/// restarts) from each seed pair; returns the first pair meeting the witness thresholds.
template <PlanarMap F>
std::optional<CollisionWitness> collision_search(F const& f, Region const& region, std::vector<std::pair<cplx, cplx>> const& seeds,
                                                 CollisionOptions const& opts = {}) {
    const auto excluded = certification_contour(region, 256).excluded_corners;
    const double eps = region.exclusion_radius;
    auto confirmed = [&](cplx z1, cplx z2) -> std::optional<CollisionWitness> {
        auto w = verify_collision(f, z1, z2, opts);
        if (w && confirm_by_degree(f, region, *w)) return w;
        return std::nullopt;
    };
    for (auto const& [s1, s2] : seeds) {
        if (auto w = confirmed(s1, s2)) return w;
        double scale = 1.0;
        try {
            scale = std::max({1.0, std::abs(f(s1)), std::abs(f(s2))});
        } catch (Error const&) {
            continue;
        }
        const double big = std::numeric_limits<double>::max() / 4;
        auto objective = [&](std::array<double, 4> const& x) {
            const cplx z1(x[0], x[1]);
            const cplx z2(x[2], x[3]);
            if (!detail::in_certified_set(region, z1, excluded, eps) || !detail::in_certified_set(region, z2, excluded, eps)) return big;
            if (std::abs(z1 - z2) < 2.0 * opts.delta_z) return big;
            try {
                return std::norm(cplx(f(z1)) - cplx(f(z2))) / (scale * scale);
            } catch (Error const&) {
                return big;
            }
        };
        std::array<double, 4> x{s1.real(), s1.imag(), s2.real(), s2.imag()};
        double step = 1e-3 * std::max(1e-2, std::abs(s1 - s2));
        for (int restart = 0; restart < 6; ++restart) {
            x = detail::nelder_mead<4>(objective, x, step, opts.max_iterations, 1e-30);
            if (auto w = confirmed(cplx(x[0], x[1]), cplx(x[2], x[3]))) return w;
            step *= 0.1;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Boundary univalence certification

enum class Outcome { CertifiedAtResolution, Collision, Inconclusive };

inline const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::CertifiedAtResolution: return "CERTIFIED_AT_RESOLUTION";
        case Outcome::Collision: return "COLLISION";
        case Outcome::Inconclusive: return "INCONCLUSIVE";
    }
    return "INCONCLUSIVE";
}

/// Resolution-limited verdict; CERTIFIED_AT_RESOLUTION is evidence at the stated sampling, not a proof.
struct UnivalenceVerdict {
    Outcome outcome = Outcome::Inconclusive;
    std::size_t resolution = 0;
    std::optional<CollisionWitness> witness;
    // diagnostics
    std::vector<int> windings;
    std::size_t crossings_found = 0;
    std::size_t crossings_dismissed = 0;
    double image_scale = 0.0;
    double exclusion_radius = 0.0;
    std::vector<cplx> excluded_corners;
    std::string note;
};

struct CertifyOptions {
    std::size_t probes = 16;
    std::size_t max_refinements = 8;
    std::size_t refine_points = 32;
    unsigned workers = 0;
    CollisionOptions collision{};
};

/// Samples the image of the region boundary (corner-capped for lens kinds) and certifies univalence
/// when the image polyline is simple and winds once about the images of interior probes. A
/// self-intersection is refined locally; a persisting one seeds collision_search, and a confirmed
/// pair yields COLLISION. Crossings that persist without a witness give INCONCLUSIVE.
template <PlanarMap F>
UnivalenceVerdict boundary_univalence_certify(F const& f, Region const& region, std::size_t n, CertifyOptions const& opts = {}) {
    if (n < 256) fail(ErrorKind::InvalidInput, "boundary certification needs n >= 256");
    UnivalenceVerdict v;
    v.resolution = n;
    const auto contour = certification_contour(region, n);
    v.exclusion_radius = contour.exclusion_radius;
    v.excluded_corners = contour.excluded_corners;
    Polyline image;
    image.points = parallel_map<cplx>(contour.z.size(), [&](std::size_t k) { return cplx(f(contour.z.points[k])); }, opts.workers);
    for (auto w : image.points) v.image_scale = std::max(v.image_scale, std::abs(w));
    const auto crossings = self_intersections(image, 1e-12, 256);
    v.crossings_found = crossings.size();
    bool ambiguous = false;
    std::size_t examined = 0;
    const std::size_t nz = contour.z.size();
    for (auto const& c : crossings) {
        if (examined >= opts.max_refinements) {
            ambiguous = true;
            break;
        }
        ++examined;
        // Refine both z-segments and look for the crossing again.
        const std::size_t m = opts.refine_points;
        auto refine = [&](std::size_t seg) {
            Polyline sub;
            sub.closed = false;
            const cplx a = contour.z.points[seg];
            const cplx b = contour.z.points[(seg + 1) % nz];
            std::vector<cplx> zs;
            for (std::size_t k = 0; k <= m; ++k) zs.push_back(a + (b - a) * (static_cast<double>(k) / static_cast<double>(m)));
            for (auto z : zs) sub.points.push_back(f(z));
            return std::pair{zs, sub};
        };
        auto [za, wa] = refine(c.i);
        auto [zb, wb] = refine(c.j);
        std::vector<std::pair<cplx, cplx>> seeds;
        for (std::size_t p = 0; p < m; ++p) {
            for (std::size_t q = 0; q < m; ++q) {
                const double tol = 1e-12 * std::max({1.0, std::abs(wa.points[p]), std::abs(wb.points[q])});
                if (auto h = segment_intersection(wa.points[p], wa.points[p + 1], wb.points[q], wb.points[q + 1], tol)) {
                    seeds.emplace_back(za[p] + h->s * (za[p + 1] - za[p]), zb[q] + h->u * (zb[q + 1] - zb[q]));
                }
            }
        }
        if (seeds.empty()) {
            ++v.crossings_dismissed;
            continue;
        }
        if (auto w = collision_search(f, region, seeds, opts.collision)) {
            v.outcome = Outcome::Collision;
            v.witness = w;
            v.note = "boundary image self-intersects; witness confirmed by direct evaluation and a local winding check";
            return v;
        }
        ambiguous = true;
    }
    if (ambiguous) {
        v.outcome = Outcome::Inconclusive;
        v.note = "boundary image has crossings without a confirmed collision witness";
        return v;
    }
    for (cplx zc : interior_probes(region, opts.probes)) {
        const auto wn = winding_number(image, f(zc));
        v.windings.push_back(wn.value_or(0));
    }
    const bool all_one = std::ranges::all_of(v.windings, [](int w) { return w == 1; });
    v.outcome = all_one ? Outcome::CertifiedAtResolution : Outcome::Inconclusive;
    v.note = all_one ? "simple boundary image with winding 1 about all interior probes"
                     : "simple boundary image but a probe winding differs from 1";
    return v;
}

/// Image polyline of the certification contour.
template <PlanarMap F>
Polyline boundary_image(F const& f, Region const& region, std::size_t n, unsigned workers = 0) {
    const auto contour = certification_contour(region, n);
    Polyline image;
    image.points = parallel_map<cplx>(contour.z.size(), [&](std::size_t k) { return cplx(f(contour.z.points[k])); }, workers);
    return image;
}

// ---------------------------------------------------------------------------
// Local univalence

struct LocalUnivalenceReport {
    double min_abs_jacobian = std::numeric_limits<double>::infinity();
    cplx argmin{};
    std::size_t points = 0;
    /// Zeros of the analytic factor controlling the Jacobian (F' for sheared maps), located to 1e-8.
    std::vector<cplx> critical_points;
};

namespace detail {

template <class Crit>
std::optional<cplx> newton_zero(Crit const& crit, cplx z, double cell) {
    for (int it = 0; it < 60; ++it) {
        cplx c;
        cplx dc;
        try {
            c = crit(z);
            const double h = 1e-7 * std::max(1.0, std::abs(z));
            dc = (crit(z + h) - crit(z - h)) / (2.0 * h);
        } catch (Error const&) {
            return std::nullopt;
        }
        if (dc == cplx{}) return std::nullopt;
        cplx step = c / dc;
        if (std::abs(step) > cell) step *= cell / std::abs(step);
        z -= step;
        if (std::abs(step) < 1e-13) return z;
    }
    return std::nullopt;
}

template <class Jac, class Crit>
LocalUnivalenceReport scan_jacobian(Jac const& jac, Crit const& crit, Region const& region, std::size_t n) {
    if (n < 100) fail(ErrorKind::InvalidInput, "local univalence scan needs n >= 100");
    const auto box = region_bounds(region);
    const double hx = (box.xmax - box.xmin) / static_cast<double>(n - 1);
    const double hy = (box.ymax - box.ymin) / static_cast<double>(n - 1);
    auto node = [&](std::size_t i, std::size_t j) { return cplx(box.xmin + hx * static_cast<double>(i), box.ymin + hy * static_cast<double>(j)); };
    std::vector<std::optional<cplx>> c(n * n);
    LocalUnivalenceReport rep;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const cplx z = node(i, j);
            if (!(std::abs(z) < 1.0)) continue;
            try {
                c[i * n + j] = crit(z);
                if (region_contains(region, z)) {
                    ++rep.points;
                    const double J = std::abs(jac(z));
                    if (J < rep.min_abs_jacobian) {
                        rep.min_abs_jacobian = J;
                        rep.argmin = z;
                    }
                }
            } catch (Error const&) {
            }
        }
    }
    const double cell = std::max(hx, hy);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = 0; j + 1 < n; ++j) {
            std::array<std::optional<cplx>, 4> corners{c[i * n + j], c[(i + 1) * n + j], c[i * n + j + 1], c[(i + 1) * n + j + 1]};
            if (!std::ranges::all_of(corners, [](auto const& o) { return o.has_value(); })) continue;
            auto changes = [&](auto part) {
                double lo = 1e300, hi = -1e300;
                for (auto const& o : corners) {
                    lo = std::min(lo, part(*o));
                    hi = std::max(hi, part(*o));
                }
                return lo <= 0.0 && hi >= 0.0;
            };
            if (!changes([](cplx v) { return v.real(); }) || !changes([](cplx v) { return v.imag(); })) continue;
            const cplx center = node(i, j) + cplx(0.5 * hx, 0.5 * hy);
            auto root = newton_zero(crit, center, cell);
            if (!root) continue;
            if (std::abs(root->real() - center.real()) > 1.5 * hx || std::abs(root->imag() - center.imag()) > 1.5 * hy) continue;
            if (!in_region_closure(region, *root)) continue;
            const bool dup = std::ranges::any_of(rep.critical_points, [&](cplx r) { return std::abs(r - *root) < 1e-8; });
            if (!dup) rep.critical_points.push_back(*root);
        }
    }
    return rep;
}

}  // namespace detail

inline LocalUnivalenceReport local_univalence_scan(HarmonicMap const& map, Region const& region, std::size_t n) {
    return detail::scan_jacobian([&](cplx z) { return map.jacobian(z); }, [&](cplx z) { return map.F(z).derivative; }, region, n);
}

inline LocalUnivalenceReport local_univalence_scan(AnalyticEvaluator const& f, Region const& region, std::size_t n) {
    return detail::scan_jacobian([&](cplx z) { return std::norm(f.derivative(z)); }, f.derivative, region, n);
}

// ---------------------------------------------------------------------------
// Starlikeness on a circle

struct StarlikeVerdict {
    bool pass = true;
    double min_real_part = std::numeric_limits<double>::infinity();
    cplx argmin{};
    /// Points where Re(z f'/f) is within 1e-6 of zero.
    std::vector<cplx> near_zero;
};

/// Re(z f'(z)/f(z)) >= -1e-9 at `points` equally spaced points of |z| = r.
inline StarlikeVerdict starlike_boundary_check(AnalyticEvaluator const& f, double r, std::size_t points = 2048) {
    if (!(r > 0.0 && r < 1.0)) fail(ErrorKind::InvalidInput, "starlikeness radius must lie in (0, 1)");
    StarlikeVerdict v;
    for (std::size_t k = 0; k < points; ++k) {
        const cplx z = std::polar(r, kTwoPi * static_cast<double>(k) / static_cast<double>(points));
        const cplx fz = f.value(z);
        if (std::abs(fz) < 1e-300) fail(ErrorKind::Degenerate, "f vanishes on the test circle");
        const double re = (z * f.derivative(z) / fz).real();
        if (re < v.min_real_part) {
            v.min_real_part = re;
            v.argmin = z;
        }
        if (std::abs(re) < 1e-6) v.near_zero.push_back(z);
        if (re < -1e-9) v.pass = false;
    }
    return v;
}

}  // namespace htr
