#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "htr/certify.hpp"
#include "htr/core.hpp"
#include "htr/harmonic.hpp"
#include "htr/kernels.hpp"
#include "htr/measures.hpp"
#include "htr/parallel.hpp"
#include "htr/regions.hpp"

namespace htr {

/// Output of a witness-producing search. Residuals are re-evaluated directly before return.
struct WitnessReport {
    std::string kind;  // critical-point | collision | multivalence | nonconvexity
    std::map<std::string, double> parameters;
    std::vector<cplx> points;
    std::vector<double> residuals;
};

// ---------------------------------------------------------------------------
// Critical points of f_t on the lens boundary

inline cplx lens_quartic(cplx z) {
    const cplx r = (1.0 + z) / (1.0 - z);
    return (r * r) * (r * r);
}

/// t0 = 1/(1 - Q) with Q = ((1+z0)/(1-z0))^4 < 0, so that f_{t0}'(z0) = 0.
inline double critical_t_for_boundary_point(cplx z0) {
    if (!on_lens_boundary_arc(z0)) fail(ErrorKind::Domain, "point is not on the lens boundary inside the disk");
    const double q = lens_quartic(z0).real();
    const double t0 = 1.0 / (1.0 - q);
    const double residual = std::abs(ft_eval(t0, z0).derivative);
    if (!(residual < 1e-10)) fail(ErrorKind::Accuracy, "critical parameter residual too large");
    return t0;
}

struct ScaledCritical {
    double t;
    double R;
    double residual;
};

/// R in (sqrt2-1, 1] with R z0 on the lens boundary (bisection along the ray), and t making
/// f_{t,R} critical at z0.
inline ScaledCritical scaled_critical_T(cplx z0) {
    if (!(std::abs(z0) < 1.0)) fail(ErrorKind::Domain, "scaled critical construction needs |z0| < 1");
    auto gap = [z0](double R) {
        const cplx w = R * z0;
        return std::max(std::abs(w - cplx(0, 1)), std::abs(w + cplx(0, 1))) - kSqrt2;
    };
    if (gap(1.0) < 0.0) fail(ErrorKind::Domain, "point lies inside the lens");
    double lo = 0.0, hi = 1.0;
    if (gap(1.0) == 0.0) lo = hi;
    while (hi - lo > 1e-17 * hi && lo < hi) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (gap(mid) < 0.0 ? lo : hi) = mid;
    }
    // The lens boundary point itself must be on an arc, not at a corner.
    double R = hi;
    if (!on_lens_boundary_arc(R * z0)) R = lo;
    if (!on_lens_boundary_arc(R * z0)) fail(ErrorKind::Domain, "ray does not meet the lens boundary inside the disk");
    const double t = critical_t_for_boundary_point(R * z0);
    const double residual = std::abs(ftR_eval(t, R, z0).derivative);
    if (!(residual < 1e-9)) fail(ErrorKind::Accuracy, "scaled critical residual too large");
    return {t, R, residual};
}

// ---------------------------------------------------------------------------
// Two-atom segment measure whose map has a critical point on the lens arc

/// |F'(e^{i alpha})| for the slit-plane function of (1-lambda) delta_{-1} + lambda delta_{1}; weights
/// are taken as given so lambda may leave [0, 1].
inline double proposition_residual(double alpha, double lambda) {
    const std::array<SegmentAtom, 2> atoms{SegmentAtom{-1.0, 1.0 - lambda}, SegmentAtom{1.0, lambda}};
    return std::abs(slit_rep_eval_atoms(atoms, std::polar(1.0, alpha)).derivative);
}

inline SegmentMeasure proposition_measure(double alpha) {
    if (!(alpha > 0.0 && alpha < kPi)) fail(ErrorKind::InvalidInput, "proposition needs alpha in (0, pi)");
    const double s = std::sin(alpha / 2.0);
    const double lambda = s * s;
    return SegmentMeasure::normalize({{-1.0, 1.0 - lambda}, {1.0, lambda}});
}

// ---------------------------------------------------------------------------
// Non-convexity witness

namespace detail {

/// Damped Newton for an analytic function: a step is halved (up to 40 times) until |f| decreases.
template <class Fn, class Dfn>
std::optional<cplx> damped_newton(Fn const& f, Dfn const& df, cplx z, double tol, int max_iter = 100) {
    cplx fz;
    try {
        fz = f(z);
    } catch (Error const&) {
        return std::nullopt;
    }
    for (int it = 0; it < max_iter; ++it) {
        if (std::abs(fz) < tol) return z;
        cplx d;
        try {
            d = df(z);
        } catch (Error const&) {
            return std::nullopt;
        }
        if (d == cplx{}) return std::nullopt;
        const cplx step = fz / d;
        double lam = 1.0;
        bool moved = false;
        for (int h = 0; h <= 40; ++h, lam *= 0.5) {
            const cplx zn = z - lam * step;
            try {
                const cplx fn = f(zn);
                if (std::abs(fn) < std::abs(fz)) {
                    z = zn;
                    fz = fn;
                    moved = true;
                    break;
                }
            } catch (Error const&) {
            }
        }
        if (!moved) return std::abs(fz) < tol ? std::optional<cplx>(z) : std::nullopt;
    }
    return std::abs(fz) < tol ? std::optional<cplx>(z) : std::nullopt;
}

}  // namespace detail

/// A point a in the punctured disk with q_s'(a)/q_t'(a) = -lambda/(1-lambda). Newton runs from a polar
/// seed grid; among the roots found the smallest modulus wins, ties broken toward Im a > 0.
inline cplx nonconvexity_witness(double s, double t, double lambda) {
    if (s == t) fail(ErrorKind::InvalidInput, "non-convexity witness needs s != t");
    if (!(lambda > 0.0 && lambda < 1.0)) fail(ErrorKind::InvalidInput, "lambda must lie in (0, 1)");
    if (std::abs(s) > 1.0 || std::abs(t) > 1.0) fail(ErrorKind::InvalidInput, "s and t must lie in [-1, 1]");
    auto phi = [&](cplx a) { return (1.0 - lambda) * qt_prime(s, a) + lambda * qt_prime(t, a); };
    auto dphi = [&](cplx a) { return (1.0 - lambda) * qt_second(s, a) + lambda * qt_second(t, a); };
    const double target = -lambda / (1.0 - lambda);
    std::vector<cplx> roots;
    for (int i = 1; i <= 9; ++i) {
        for (int k = 0; k < 16; ++k) {
            const cplx seed = std::polar(0.1 * i, kTwoPi * (k + 0.5) / 16.0);
            auto a = detail::damped_newton(phi, dphi, seed, 1e-13);
            if (!a || !(std::abs(*a) < 1.0 - 1e-9) || std::abs(*a) < 1e-12) continue;
            const double ratio_res = std::abs(qt_prime(s, *a) / qt_prime(t, *a) - target);
            if (!(ratio_res < 1e-10) || !(std::abs(phi(*a)) < 1e-10)) continue;
            if (std::ranges::none_of(roots, [&](cplx r) { return std::abs(r - *a) < 1e-8; })) roots.push_back(*a);
        }
    }
    if (roots.empty()) fail(ErrorKind::SearchFailure, "no non-convexity root found from any seed");
    std::ranges::sort(roots, [](cplx a, cplx b) {
        if (std::abs(std::abs(a) - std::abs(b)) > 1e-9) return std::abs(a) < std::abs(b);
        return a.imag() > b.imag();
    });
    return roots.front();
}

// ---------------------------------------------------------------------------
// The non-univalent example on the lens

/// Closed form of the sheared map composed with psi_inv, principal square roots.
inline cplx theorem5_g(cplx w) {
    const cplx a = (1.0 + w) / (1.0 - w);
    // Summed so that w = 0 gives 1/12 + 1/6 - 1/4 = 0 exactly in floating point.
    const cplx re_part = ((1.0 + w) / (12.0 * (1.0 - w)) * std::sqrt(a) + 1.0 / 6.0) - 0.25 * std::sqrt(1.0 / a);
    return cplx(re_part.real(), 0.5 * (w / (1.0 - w * w)).imag());
}

struct Theorem5 {
    HarmonicMap map;
    AnalyticEvaluator gw;  // derivative left empty: gw is not analytic
};

/// p = (1+z)/(1-z) sheared with F = f_{1/2} = (q_{-1} + q_1)/2.
inline Theorem5 theorem5_map() {
    auto map = HarmonicMap::shear(CircleMeasure::dirac(0.0), SegmentMeasure::normalize({{-1.0, 0.5}, {1.0, 0.5}}));
    return {std::move(map), AnalyticEvaluator{"theorem5-g", theorem5_g, {}}};
}

/// m(r, alpha) = g(r i e^{-i alpha}) - g(r i e^{i alpha}); real by symmetry of the imaginary part.
inline double theorem5_m(double r, double alpha) {
    const cplx w1 = r * cplx(0, 1) * std::polar(1.0, -alpha);
    const cplx w2 = r * cplx(0, 1) * std::polar(1.0, alpha);
    return (theorem5_g(w1) - theorem5_g(w2)).real();
}

/// First sign change of m(., alpha) on a 0.01 grid, bisected to |m| < 1e-11, mapped back by psi_inv
/// and checked against the quadrature map.
inline WitnessReport theorem5_collision(double alpha) {
    if (!(alpha > 0.0 && alpha < kPi / 4.0)) fail(ErrorKind::InvalidInput, "theorem5 collision needs alpha in (0, pi/4)");
    double lo = 0.0, hi = 0.0;
    double prev_r = 0.01;
    double prev_m = theorem5_m(prev_r, alpha);
    bool found = false;
    for (int k = 2; k <= 100; ++k) {
        const double r = 0.01 * k;
        const double m = theorem5_m(r, alpha);
        if (sign_of(m) != sign_of(prev_m)) {
            lo = prev_r;
            hi = r;
            found = true;
            break;
        }
        prev_r = r;
        prev_m = m;
    }
    if (!found) fail(ErrorKind::Falsification, "m(r, alpha) has no sign change on (0, 1]");
    const int s_lo = sign_of(theorem5_m(lo, alpha));
    double r = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        r = 0.5 * (lo + hi);
        const double m = theorem5_m(r, alpha);
        if (std::abs(m) < 1e-11 && hi - lo < 1e-14) break;
        if (m == 0.0) break;
        (sign_of(m) == s_lo ? lo : hi) = r;
        if (hi - lo < 1e-16) break;
    }
    const double m_res = std::abs(theorem5_m(r, alpha));
    if (!(m_res < 1e-11)) fail(ErrorKind::SearchFailure, "bisection on m(r, alpha) did not reach 1e-11");
    const cplx z1 = psi_inv(r * cplx(0, 1) * std::polar(1.0, -alpha));
    const cplx z2 = psi_inv(r * cplx(0, 1) * std::polar(1.0, alpha));
    if (!region_contains(Region::lens(), z1) || !region_contains(Region::lens(), z2))
        fail(ErrorKind::SearchFailure, "collision points left the lens");
    const auto t5 = theorem5_map();
    const double df = std::abs(t5.map(z1) - t5.map(z2));
    if (!(df < 1e-8) || !(std::abs(z1 - z2) > 1e-2)) fail(ErrorKind::SearchFailure, "quadrature map does not confirm the collision");
    return {"collision", {{"alpha", alpha}, {"r_alpha", r}}, {z1, z2}, {m_res, df}};
}

// ---------------------------------------------------------------------------
// Radius of univalence

enum class RadiusKind { HarmonicRu, AnalyticT };

inline const char* to_string(RadiusKind k) { return k == RadiusKind::HarmonicRu ? "ru" : "T"; }

struct RadiusOptions {
    RadiusKind kind = RadiusKind::HarmonicRu;
    std::size_t samples = 20;
    std::size_t resolution = 1024;
    std::uint64_t seed = 1;
    std::vector<double> eps{1e-2, 1e-3, 1e-4};
    int bisection_steps = 14;
    unsigned workers = 0;
};

struct RadiusBracket {
    double r_lo = 0.0;
    double r_hi = 1.0;
    double eps = 0.0;
    std::size_t samples = 0;
    std::size_t resolution = 0;
    std::uint64_t seed = 0;
    WitnessReport witness;
};

struct RadiusReport {
    RadiusOptions options;
    std::vector<RadiusBracket> brackets;
};

/// f_{1/2, R} with its critical point at i(sqrt2 - 1 + eps).
inline WitnessReport critical_radius_witness(double eps) {
    const cplx z0(0.0, kSqrt2Minus1 + eps);
    const auto sc = scaled_critical_T(z0);
    return {"critical-point", {{"eps", eps}, {"t", sc.t}, {"R", sc.R}, {"radius", std::abs(z0)}}, {z0}, {sc.residual}};
}

namespace detail {

/// Sampled members of the class under study, each reduced to a disk certifier.
struct SampledFamily {
    RadiusKind kind;
    std::vector<HarmonicMap> harmonic;
    std::vector<AnalyticEvaluator> analytic;

    static SampledFamily build(RadiusKind kind, std::size_t samples, std::uint64_t seed) {
        SampledFamily fam{kind, {}, {}};
        for (std::size_t i = 0; i < samples; ++i) {
            const auto pair = sample_family_member(seed, i);
            if (kind == RadiusKind::HarmonicRu)
                fam.harmonic.push_back(HarmonicMap::shear(pair));
            else
                fam.analytic.push_back(robertson_evaluator(pair.nu));
        }
        return fam;
    }

    std::size_t size() const { return kind == RadiusKind::HarmonicRu ? harmonic.size() : analytic.size(); }

    UnivalenceVerdict certify(std::size_t i, Region const& region, std::size_t n) const {
        CertifyOptions opts;
        opts.workers = 1;
        if (kind == RadiusKind::HarmonicRu) return boundary_univalence_certify(harmonic[i], region, n, opts);
        return boundary_univalence_certify(analytic[i], region, n, opts);
    }
};

}  // namespace detail

/// Bisection on r over [0, r_hi] with r_hi from the critical witness family; every sampled member must
/// certify on Disk(0, r). The bracket is fixed in advance, so adding samples can only lower r_lo.
inline RadiusReport radius_estimate(RadiusOptions const& opts) {
    RadiusReport rep{opts, {}};
    if (opts.eps.empty()) fail(ErrorKind::InvalidInput, "radius estimate needs at least one eps");
    std::vector<WitnessReport> witnesses;
    double top = 1.0;
    for (double e : opts.eps) {
        witnesses.push_back(critical_radius_witness(e));
        top = std::min(top, witnesses.back().parameters.at("radius"));
    }
    const auto fam = detail::SampledFamily::build(opts.kind, opts.samples, opts.seed);
    std::optional<WitnessReport> member_witness;
    double member_hi = 1.0;
    auto all_certified = [&](double r) {
        const auto region = Region::disk(r);
        const auto verdicts = parallel_map<UnivalenceVerdict>(
            fam.size(),
            [&](std::size_t i) {
                try {
                    return fam.certify(i, region, opts.resolution);
                } catch (Error const&) {
                    return UnivalenceVerdict{};
                }
            },
            opts.workers);
        bool ok = true;
        for (std::size_t i = 0; i < verdicts.size(); ++i) {
            auto const& v = verdicts[i];
            if (v.outcome != Outcome::CertifiedAtResolution) ok = false;
            if (v.outcome == Outcome::Collision && v.witness) {
                const double reach = std::max(std::abs(v.witness->z1), std::abs(v.witness->z2));
                if (reach < member_hi) {
                    member_hi = reach;
                    member_witness = WitnessReport{"collision", {{"member", static_cast<double>(i)}, {"radius", reach}},
                                                   {v.witness->z1, v.witness->z2}, {v.witness->df}};
                }
            }
        }
        return ok;
    };
    double lo = 0.0, hi = top;
    for (int s = 0; s < opts.bisection_steps; ++s) {
        const double mid = 0.5 * (lo + hi);
        (all_certified(mid) ? lo : hi) = mid;
    }
    for (std::size_t k = 0; k < opts.eps.size(); ++k) {
        RadiusBracket b;
        b.eps = opts.eps[k];
        b.samples = opts.samples;
        b.resolution = opts.resolution;
        b.seed = opts.seed;
        b.r_lo = lo;
        b.r_hi = witnesses[k].parameters.at("radius");
        b.witness = witnesses[k];
        if (member_witness && member_hi < b.r_hi) {
            b.r_hi = member_hi;
            b.witness = *member_witness;
        }
        rep.brackets.push_back(std::move(b));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Conjecture scans

enum class ConjectureId { RadiusU, HalfLens, Open3 };

inline const char* to_string(ConjectureId id) {
    switch (id) {
        case ConjectureId::RadiusU: return "1";
        case ConjectureId::HalfLens: return "2";
        case ConjectureId::Open3: return "open3";
    }
    return "?";
}

struct ConjectureOptions {
    ConjectureId id = ConjectureId::HalfLens;
    std::size_t samples = 100;
    std::size_t resolution = 2048;
    std::uint64_t seed = 1;
    unsigned workers = 0;
};

struct ConjectureReport {
    ConjectureOptions options;
    std::size_t certified = 0;
    std::size_t inconclusive = 0;
    std::size_t unconfirmed_collisions = 0;
    std::size_t skipped = 0;
    std::vector<WitnessReport> confirmed;
    std::optional<RadiusReport> radius;
    // open3 only
    std::optional<UnivalenceVerdict> goodman_inside;
    std::optional<std::optional<CollisionWitness>> goodman_outside;
    std::string summary;
};

inline std::optional<CollisionWitness> goodman_collision(double radius) {
    const cplx z0 = cplx(1.0, kSqrt2) / 3.0;
    const auto G = named_map("goodman");
    return collision_search(G, Region::disk(radius), {{z0, -std::conj(z0)}});
}

inline ConjectureReport conjecture_scan(ConjectureOptions const& opts) {
    ConjectureReport rep;
    rep.options = opts;
    if (opts.id == ConjectureId::RadiusU) {
        RadiusOptions ro;
        ro.samples = opts.samples;
        ro.resolution = opts.resolution;
        ro.seed = opts.seed;
        ro.workers = opts.workers;
        rep.radius = radius_estimate(ro);
        rep.summary = "bracket for the radius of univalence; no claim beyond the sampled members";
        return rep;
    }
    if (opts.id == ConjectureId::HalfLens) {
        const auto region = Region::half_lens();
        const auto verdicts = parallel_map<UnivalenceVerdict>(
            opts.samples,
            [&](std::size_t i) {
                const auto map = HarmonicMap::shear(sample_family_member(opts.seed, i));
                CertifyOptions co;
                co.workers = 1;
                auto v = boundary_univalence_certify(map, region, opts.resolution, co);
                if (v.outcome == Outcome::Collision) {
                    // Re-verify at double resolution before anything is reported.
                    auto again = boundary_univalence_certify(map, region, 2 * opts.resolution, co);
                    if (again.outcome != Outcome::Collision) v.outcome = Outcome::Inconclusive;
                }
                return v;
            },
            opts.workers);
        for (std::size_t i = 0; i < verdicts.size(); ++i) {
            auto const& v = verdicts[i];
            if (v.outcome == Outcome::CertifiedAtResolution) ++rep.certified;
            else if (v.outcome == Outcome::Collision && v.witness)
                rep.confirmed.push_back({"collision", {{"member", static_cast<double>(i)}}, {v.witness->z1, v.witness->z2}, {v.witness->df}});
            else if (!v.witness && v.crossings_found > 0) ++rep.unconfirmed_collisions;
            else ++rep.inconclusive;
        }
        rep.summary = rep.confirmed.empty()
                          ? "no counterexample at resolution " + std::to_string(opts.resolution) + " over " + std::to_string(opts.samples) + " samples"
                          : "confirmed collision found; re-verified at resolution " + std::to_string(2 * opts.resolution);
        return rep;
    }
    // open3: locally univalent analytic members and Goodman's G on disks up to 1/sqrt3.
    const double r_in = 0.99 * kInvSqrt3;
    const auto region = Region::disk(r_in);
    const auto verdicts = parallel_map<int>(
        opts.samples,
        [&](std::size_t i) {
            const auto F = robertson_evaluator(sample_family_member(opts.seed, i).nu);
            const auto scan = local_univalence_scan(F, Region::disk(0.999), 100);
            if (!scan.critical_points.empty() || !(scan.min_abs_jacobian > 0.0)) return -1;
            CertifyOptions co;
            co.workers = 1;
            return static_cast<int>(boundary_univalence_certify(F, region, opts.resolution, co).outcome);
        },
        opts.workers);
    for (int v : verdicts) {
        if (v < 0) ++rep.skipped;
        else if (v == static_cast<int>(Outcome::CertifiedAtResolution)) ++rep.certified;
        else if (v == static_cast<int>(Outcome::Collision)) ++rep.unconfirmed_collisions;
        else ++rep.inconclusive;
    }
    rep.goodman_inside = boundary_univalence_certify(named_map("goodman"), region, opts.resolution);
    rep.goodman_outside = goodman_collision(kInvSqrt3 + 0.01);
    rep.summary = "no counterexample below 0.99/sqrt3 among sampled members; Goodman's G collides at radius 1/sqrt3 + 0.01";
    if (rep.goodman_inside->outcome != Outcome::CertifiedAtResolution || !*rep.goodman_outside)
        rep.summary = "Goodman's G did not behave as expected at this resolution";
    return rep;
}

// ---------------------------------------------------------------------------
// Picard multivalence

namespace detail {

/// Branch k of Lambert W by Newton from the asymptotic seed log x + 2 pi i k - log(log x + 2 pi i k).
inline std::optional<cplx> lambert_w(cplx x, int k) {
    cplx w;
    if (k == 0 && std::abs(x) < 0.3) {
        w = x;
    } else {
        const cplx l1 = std::log(x) + cplx(0.0, kTwoPi * k);
        w = l1 - std::log(l1);
    }
    for (int it = 0; it < 100; ++it) {
        const cplx ew = std::exp(w);
        const cplx f = w * ew - x;
        const cplx d = ew * (w + 1.0);
        if (d == cplx{}) return std::nullopt;
        const cplx step = f / d;
        w -= step;
        if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(w))) return w;
    }
    return std::nullopt;
}

}  // namespace detail

/// At least k preimages of w under the Picard map in the disk with |z + 1| < delta. u-preimages come
/// from branches u = -W_j(-w); each gives z from u z^2 + (2u - 4) z + u = 0, polished by Newton on
/// the map itself. Roots are listed by branch order, so |z + 1| is non-increasing along the list.
inline std::vector<cplx> picard_preimages(cplx w, double delta, std::size_t k, int max_branch = 64) {
    if (w == cplx{}) fail(ErrorKind::InvalidInput, "Picard preimages need w != 0");
    if (!(delta > 0.0 && delta < 2.0)) fail(ErrorKind::InvalidInput, "delta must lie in (0, 2)");
    if (k < 2) fail(ErrorKind::InvalidInput, "Picard preimages need k >= 2");
    std::vector<cplx> roots;
    auto f = [w](cplx z) { return picard_map(z) - w; };
    auto df = [](cplx z) { return picard_eval(z).derivative; };
    for (int j = 0; j <= max_branch; ++j) {
        for (int branch : {j, -j - 1}) {
            const auto W = detail::lambert_w(-w, branch);
            if (!W) continue;
            const cplx u = -*W;
            if (u == cplx{}) continue;
            const cplx disc = 2.0 * std::sqrt(1.0 - u);
            for (cplx z : {(2.0 - u + disc) / u, (2.0 - u - disc) / u}) {
                if (!(std::abs(z) < 1.0 - 1e-12)) continue;
                auto zr = detail::damped_newton(f, df, z, 1e-13);
                if (!zr || !(std::abs(*zr) < 1.0 - 1e-12) || !(std::abs(*zr + 1.0) < delta)) continue;
                if (!(std::abs(f(*zr)) < 1e-10)) continue;
                if (std::ranges::any_of(roots, [&](cplx r) { return std::abs(r - *zr) <= 1e-8; })) continue;
                roots.push_back(*zr);
            }
        }
    }
    std::ranges::stable_sort(roots, [](cplx a, cplx b) {
        const double da = std::abs(a + 1.0), db = std::abs(b + 1.0);
        if (std::abs(da - db) > 1e-12) return da > db;
        return a.imag() > b.imag();
    });
    if (roots.size() < k) {
        std::string msg = "found only " + std::to_string(roots.size()) + " preimages:";
        for (cplx z : roots) msg += " (" + std::to_string(z.real()) + "," + std::to_string(z.imag()) + ")";
        fail(ErrorKind::SearchFailure, msg);
    }
    roots.resize(k);
    return roots;
}

// ---------------------------------------------------------------------------
// Coefficient extremes over the extreme points

struct CoefficientExtremes {
    std::size_t n = 0;
    double max_a = 0.0;
    double max_b = 0.0;
    double a_theta = 0.0, a_t = 0.0;
    double b_theta = 0.0, b_t = 0.0;
};

/// Shear coefficient of z^n in h and g for p_eta and q_t.
inline std::pair<cplx, cplx> extreme_point_coefficients(std::size_t n, double theta, double t) {
    const auto map = HarmonicMap::shear(CircleMeasure::dirac(theta), SegmentMeasure::dirac(t), n + 1);
    return {map.h_series()[n], map.g_series()[n]};
}

/// max |a_n| and |b_n| over eta on a `grid`-point circle grid and t on a `grid`-point segment grid
/// (both grids include eta = 1 and t = +-1).
inline CoefficientExtremes coefficient_extremes(std::size_t n, std::size_t grid = 256) {
    if (n < 2) fail(ErrorKind::InvalidInput, "coefficient index must be >= 2");
    if (grid < 2) fail(ErrorKind::InvalidInput, "coefficient grid needs >= 2 points");
    CoefficientExtremes out;
    out.n = n;
    for (std::size_t i = 0; i < grid; ++i) {
        const double theta = kTwoPi * static_cast<double>(i) / static_cast<double>(grid);
        for (std::size_t j = 0; j < grid; ++j) {
            const double t = -1.0 + 2.0 * static_cast<double>(j) / static_cast<double>(grid - 1);
            const auto [a, b] = extreme_point_coefficients(n, theta, t);
            if (std::abs(a) > out.max_a) {
                out.max_a = std::abs(a);
                out.a_theta = theta;
                out.a_t = t;
            }
            if (std::abs(b) > out.max_b) {
                out.max_b = std::abs(b);
                out.b_theta = theta;
                out.b_t = t;
            }
        }
    }
    return out;
}

}  // namespace htr
