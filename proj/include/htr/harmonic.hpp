#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "htr/core.hpp"
#include "htr/kernels.hpp"
#include "htr/measures.hpp"
#include "htr/quadrature.hpp"
#include "htr/regions.hpp"
#include "htr/series.hpp"

namespace htr {

struct HarmonicConfig {
    std::size_t series_order = 64;
    QuadratureConfig quadrature{};
    /// Radial quadrature is refused beyond this modulus. Lens corners cut off at 1e-4 need
    /// points up to |z| ~ 1 - 7e-5, so the limit sits just inside the unit circle.
    double max_radius = 1.0 - 1e-6;
};

/// Values of a sheared map f = h + conj(g) at one point.
struct HarmonicValue {
    cplx f;
    cplx h;
    cplx g;
};

/// The sheared map k(., p, F): Re of the integral of p F' plus i Im F, with p from the circle
/// measure (Herglotz) and F from the segment measure (Robertson). Immutable after construction.
class HarmonicMap {
public:
    static HarmonicMap shear(CircleMeasure mu, SegmentMeasure nu, std::size_t order = 64, HarmonicConfig cfg = {}) {
        if (order < 2) fail(ErrorKind::InvalidInput, "shear needs series order >= 2");
        cfg.series_order = order;
        HarmonicMap m;
        m.mu_ = std::move(mu);
        m.nu_ = std::move(nu);
        m.cfg_ = cfg;
        m.p_series_ = measure_to_series(m.mu_, order);
        m.F_series_ = measure_to_series(m.nu_, order);
        const PowerSeries dF = m.F_series_.derivative();
        // h = int (p+1)F'/2, g = int (p-1)F'/2; F' has order N-1 so both land on order N.
        m.h_series_ = extend_antiderivative(m.p_series_.plus_constant(1.0), dF, order);
        m.g_series_ = extend_antiderivative(m.p_series_.plus_constant(-1.0), dF, order);
        return m;
    }

    static HarmonicMap shear(MeasurePair const& pair, std::size_t order = 64, HarmonicConfig cfg = {}) {
        return shear(pair.mu, pair.nu, order, cfg);
    }

    CircleMeasure const& mu() const { return mu_; }
    SegmentMeasure const& nu() const { return nu_; }
    PowerSeries const& h_series() const { return h_series_; }
    PowerSeries const& g_series() const { return g_series_; }
    PowerSeries const& p_series() const { return p_series_; }
    PowerSeries const& F_series() const { return F_series_; }
    HarmonicConfig const& config() const { return cfg_; }

    cplx p(cplx z) const { return herglotz_eval(mu_, z); }
    AnalyticValue F(cplx z) const { return robertson_eval(nu_, z); }

    /// f, h, g by adaptive Gauss-Legendre on the radial segment [0, z]; Im f is taken from F directly.
    HarmonicValue eval(cplx z) const {
        const double r = std::abs(z);
        if (!(r < 1.0)) fail(ErrorKind::Domain, "sheared map evaluated outside the unit disk");
        if (r > cfg_.max_radius) throw AccuracyError("point too close to the unit circle for radial quadrature", {}, 0.0);
        const AnalyticValue Fz = F(z);
        if (z == cplx{}) return {};
        auto integrand = [this, z](double s) {
            const cplx w = s * z;
            return z * herglotz_eval(mu_, w) * robertson_eval(nu_, w).derivative;
        };
        // Kernel values near the circle carry relative error ~ eps / (1 - |w|) per order of pole
        // (at most four in p F'), so the quadrature floor follows that conditioning.
        QuadratureConfig qc = cfg_.quadrature;
        qc.noise_factor = std::max(qc.noise_factor, 64.0 + 8.0 / (1.0 - r));
        const cplx H = integrate_adaptive(integrand, 0.0, 1.0, qc).value;
        return {cplx(H.real(), Fz.value.imag()), 0.5 * (H + Fz.value), 0.5 * (H - Fz.value)};
    }

    cplx operator()(cplx z) const { return eval(z).f; }

    /// h + conj(g) from the truncated series.
    cplx eval_series(cplx z) const { return h_series_(z) + std::conj(g_series_(z)); }

    cplx hprime(cplx z) const { return 0.5 * (p(z) + 1.0) * F(z).derivative; }
    cplx gprime(cplx z) const { return 0.5 * (p(z) - 1.0) * F(z).derivative; }

    /// |F'|^2 Re p.
    double jacobian(cplx z) const { return std::norm(F(z).derivative) * p(z).real(); }
    /// |h'|^2 - |g'|^2, the same quantity computed from the two analytic parts.
    double jacobian_from_parts(cplx z) const { return std::norm(hprime(z)) - std::norm(gprime(z)); }

    /// Second complex dilatation g'/h' = (p - 1)/(p + 1), defined through zeros of F'.
    cplx dilatation(cplx z) const {
        const cplx pz = p(z);
        return (pz - 1.0) / (pz + 1.0);
    }

    Jet jet(cplx z) const {
        const cplx pz = p(z);
        const cplx dF = F(z).derivative;
        return {eval(z).f, 0.5 * (pz + 1.0) * dF, std::conj(0.5 * (pz - 1.0) * dF)};
    }

private:
    static PowerSeries extend_antiderivative(PowerSeries const& a, PowerSeries const& dF, std::size_t order) {
        PowerSeries prod(order - 1);
        for (std::size_t i = 0; i < order; ++i)
            for (std::size_t j = 0; i + j < order; ++j) prod[i + j] += a[i] * dF[j];
        PowerSeries out(order);
        for (std::size_t k = 1; k <= order; ++k) out[k] = 0.5 * prod[k - 1] / static_cast<double>(k);
        return out;
    }

    CircleMeasure mu_;
    SegmentMeasure nu_;
    HarmonicConfig cfg_;
    PowerSeries p_series_;
    PowerSeries F_series_;
    PowerSeries h_series_;
    PowerSeries g_series_;
};

inline HarmonicMap shear(CircleMeasure mu, SegmentMeasure nu, std::size_t order = 64) {
    return HarmonicMap::shear(std::move(mu), std::move(nu), order);
}

inline HarmonicValue eval_map(HarmonicMap const& map, cplx z) { return map.eval(z); }
inline double jacobian(HarmonicMap const& map, cplx z) { return map.jacobian(z); }
inline cplx dilatation(HarmonicMap const& map, cplx z) { return map.dilatation(z); }

/// Recovers (F, p) from the analytic parts: F = h - g and p = (h' + g') / (h' - g').
inline std::pair<PowerSeries, PowerSeries> decompose(PowerSeries const& h, PowerSeries const& g) {
    const PowerSeries F = h - g;
    const PowerSeries dh = h.derivative();
    const PowerSeries dg = g.derivative();
    return {F, divide(dh + dg, dh - dg)};
}

// ---------------------------------------------------------------------------
// Harmonic maps given only through h' and g' (not produced by shearing)

struct GenericHarmonicInput {
    std::string name;
    std::function<cplx(cplx)> hprime;
    std::function<cplx(cplx)> gprime;
};

/// z - conj(z): |g'| = |h'| everywhere.
inline GenericHarmonicInput example_f1() {
    return {"f1", [](cplx) { return cplx(1.0); }, [](cplx) { return cplx(-1.0); }};
}

/// 2(1+i)z + i z^2 + conj(2(-1+i)z + i z^2).
inline GenericHarmonicInput example_f2() {
    const cplx i(0, 1);
    return {"f2", [i](cplx z) { return 2.0 * (1.0 + i) + 2.0 * i * z; },
            [i](cplx z) { return 2.0 * (-1.0 + i) + 2.0 * i * z; }};
}

inline GenericHarmonicInput identity_input() {
    return {"identity", [](cplx) { return cplx(1.0); }, [](cplx) { return cplx(0.0); }};
}

inline GenericHarmonicInput generic_input(HarmonicMap const& map) {
    return {"sheared", [map](cplx z) { return map.hprime(z); }, [map](cplx z) { return map.gprime(z); }};
}

struct SensePreservingVerdict {
    bool pass = true;
    std::size_t points_checked = 0;
    std::size_t removable_points = 0;
    std::optional<cplx> witness;
    double witness_ratio = 0.0;
};

/// Grid scan of |g'| < |h'|. Where h' vanishes the ratio g'/h' is sampled on a small circle and
/// must stay below 1 (removable singularity of the dilatation).
inline SensePreservingVerdict sense_preserving_scan(GenericHarmonicInput const& input, Region const& region, std::size_t n) {
    if (n < 100) fail(ErrorKind::InvalidInput, "sense-preserving scan needs n >= 100");
    SensePreservingVerdict v;
    for (cplx z : region_grid(region, n)) {
        ++v.points_checked;
        const cplx hp = input.hprime(z);
        const cplx gp = input.gprime(z);
        double ratio = 0.0;
        if (std::abs(hp) > 1e-12) {
            ratio = std::abs(gp) / std::abs(hp);
        } else {
            ++v.removable_points;
            for (int k = 0; k < 8; ++k) {
                const cplx zz = z + std::polar(1e-4, kTwoPi * k / 8.0);
                ratio = std::max(ratio, std::abs(input.gprime(zz)) / std::abs(input.hprime(zz)));
            }
        }
        if (!(ratio < 1.0)) {
            v.pass = false;
            v.witness = z;
            v.witness_ratio = ratio;
            return v;
        }
    }
    return v;
}

}  // namespace htr
