#pragma once

#include <charconv>
#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "htr/core.hpp"
#include "htr/measures.hpp"
#include "htr/series.hpp"

namespace htr {

/// Value and first derivative of an analytic function at one point.
struct AnalyticValue {
    cplx value;
    cplx derivative;
};

/// Closed-form analytic map with its derivative.
struct AnalyticEvaluator {
    std::string name;
    std::function<cplx(cplx)> value;
    std::function<cplx(cplx)> derivative;

    cplx operator()(cplx z) const { return value(z); }
};

// ---------------------------------------------------------------------------
// Herglotz kernel p_eta(z) = (1 + eta z) / (1 - eta z)

inline cplx herglotz_kernel(cplx eta, cplx z) { return (1.0 + eta * z) / (1.0 - eta * z); }

inline AnalyticValue herglotz_eval_atoms(std::span<const CircleAtom> atoms, cplx z) {
    if (!(std::abs(z) < 1.0)) fail(ErrorKind::Domain, "Herglotz sum needs |z| < 1");
    AnalyticValue r{};
    for (auto const& a : atoms) {
        const cplx eta = a.eta();
        const cplx d = 1.0 - eta * z;
        r.value += a.w * (1.0 + eta * z) / d;
        r.derivative += a.w * 2.0 * eta / (d * d);
    }
    return r;
}

inline cplx herglotz_eval(CircleMeasure const& mu, cplx z) { return herglotz_eval_atoms(mu.atoms(), z).value; }

// ---------------------------------------------------------------------------
// Robertson kernel q_t(z) = z / (1 - 2tz + z^2)

namespace detail {

/// 1 - 2tz + z^2 in the factored form (1 - e z)(1 - conj(e) z), e = t + i sqrt(1 - t^2), which keeps
/// full relative accuracy next to the poles on the unit circle.
inline cplx robertson_denominator(double t, cplx z) {
    const cplx e(t, std::sqrt((1.0 - t) * (1.0 + t)));
    const cplx d = (1.0 - e * z) * (1.0 - std::conj(e) * z);
    if (std::abs(d) < kPoleGuard) fail(ErrorKind::Pole, "evaluation at a pole of q_t");
    return d;
}

}  // namespace detail

inline cplx qt(double t, cplx z) { return z / detail::robertson_denominator(t, z); }

inline cplx qt_prime(double t, cplx z) {
    const cplx d = detail::robertson_denominator(t, z);
    return (1.0 - z) * (1.0 + z) / (d * d);
}

inline cplx qt_second(double t, cplx z) {
    const cplx d = detail::robertson_denominator(t, z);
    const cplx dd = 2.0 * z - 2.0 * t;
    return (-2.0 * z * d - 2.0 * (1.0 - z) * (1.0 + z) * dd) / (d * d * d);
}

/// Weighted Robertson sum over raw atoms; weights need not be normalized.
inline AnalyticValue robertson_eval_atoms(std::span<const SegmentAtom> atoms, cplx z) {
    if (std::abs(z) > 1.0 + 1e-15) fail(ErrorKind::Domain, "Robertson sum needs |z| <= 1");
    AnalyticValue r{};
    for (auto const& a : atoms) {
        const cplx d = detail::robertson_denominator(a.t, z);
        r.value += a.w * z / d;
        r.derivative += a.w * (1.0 - z) * (1.0 + z) / (d * d);
    }
    return r;
}

inline AnalyticValue robertson_eval(SegmentMeasure const& nu, cplx z) { return robertson_eval_atoms(nu.atoms(), z); }

inline cplx robertson_second(SegmentMeasure const& nu, cplx z) {
    cplx acc{};
    for (auto const& a : nu.atoms()) acc += a.w * qt_second(a.t, z);
    return acc;
}

// ---------------------------------------------------------------------------
// Taylor coefficients of the measure-backed functions

/// p(z) = 1 + sum_{n>=1} 2 (sum_j w_j eta_j^n) z^n
inline PowerSeries measure_to_series(CircleMeasure const& mu, std::size_t order) {
    if (order < 1) fail(ErrorKind::InvalidInput, "series order must be >= 1");
    PowerSeries s(order);
    s[0] = 1.0;
    for (auto const& a : mu.atoms()) {
        const cplx eta = a.eta();
        cplx pw = 1.0;
        for (std::size_t n = 1; n <= order; ++n) {
            pw *= eta;
            s[n] += 2.0 * a.w * pw;
        }
    }
    return s;
}

/// F(z) = sum_{n>=1} (sum_j w_j U_{n-1}(t_j)) z^n via the Chebyshev-U recurrence.
inline PowerSeries measure_to_series(SegmentMeasure const& nu, std::size_t order) {
    if (order < 1) fail(ErrorKind::InvalidInput, "series order must be >= 1");
    PowerSeries s(order);
    for (auto const& a : nu.atoms()) {
        double u_prev = 0.0;  // U_{-1}
        double u = 1.0;       // U_0
        for (std::size_t n = 1; n <= order; ++n) {
            s[n] += a.w * u;
            const double next = 2.0 * a.t * u - u_prev;
            u_prev = u;
            u = next;
        }
    }
    return s;
}

// ---------------------------------------------------------------------------
// psi(z) = 2z / (1 + z^2): disk onto the plane slit along (-inf,-1] and [1,inf)

inline cplx psi(cplx z) {
    const cplx d = 1.0 + z * z;
    if (std::abs(d) < kPoleGuard) fail(ErrorKind::Pole, "psi is singular at +-i");
    return 2.0 * z / d;
}

inline cplx psi_prime(cplx z) {
    const cplx d = 1.0 + z * z;
    if (std::abs(d) < kPoleGuard) fail(ErrorKind::Pole, "psi is singular at +-i");
    return 2.0 * (1.0 - z * z) / (d * d);
}

inline bool on_slits(cplx zeta) { return zeta.imag() == 0.0 && std::abs(zeta.real()) >= 1.0; }

/// Inverse of psi with the principal root, psi_inv(0) = 0. Written as
/// zeta / (1 + sqrt(1 - zeta^2)), the cancellation-free form of (1 - sqrt(1 - zeta^2)) / zeta.
inline cplx psi_inv(cplx zeta) {
    if (on_slits(zeta)) fail(ErrorKind::Branch, "psi_inv argument lies on a slit");
    return zeta / (1.0 + std::sqrt(1.0 - zeta * zeta));
}

// ---------------------------------------------------------------------------
// Slit-plane representation F(zeta) = sum w zeta / (1 - t zeta); f = F(psi)/2 lies in T

inline AnalyticValue slit_rep_eval_atoms(std::span<const SegmentAtom> atoms, cplx zeta) {
    if (on_slits(zeta)) fail(ErrorKind::Branch, "slit representation evaluated on a slit");
    AnalyticValue r{};
    for (auto const& a : atoms) {
        const cplx d = 1.0 - a.t * zeta;
        if (std::abs(d) < kPoleGuard) fail(ErrorKind::Pole, "slit kernel pole");
        r.value += a.w * zeta / d;
        r.derivative += a.w / (d * d);
    }
    return r;
}

inline AnalyticValue slit_rep_eval(SegmentMeasure const& nu, cplx zeta) {
    return slit_rep_eval_atoms(nu.atoms(), zeta);
}

// ---------------------------------------------------------------------------
// f_t(z) = t z/(1-z)^2 + (1-t) z/(1+z)^2

inline AnalyticValue ft_eval(double t, cplx z) {
    if (!(t >= 0.0 && t <= 1.0)) fail(ErrorKind::InvalidInput, "f_t needs t in [0, 1]");
    const cplx a = 1.0 - z;
    const cplx b = 1.0 + z;
    if (std::abs(a) < kPoleGuard || std::abs(b) < kPoleGuard) fail(ErrorKind::Pole, "f_t is singular at +-1");
    AnalyticValue r;
    r.value = t * z / (a * a) + (1.0 - t) * z / (b * b);
    if (t > 0.0) {
        const cplx ratio = b / a;
        const cplx q = (ratio * ratio) * (ratio * ratio);
        r.derivative = (q + (1.0 - t) / t) * t * a / (b * b * b);
    } else {
        r.derivative = a / (b * b * b);
    }
    return r;
}

/// f_{t,R}(z) = f_t(Rz)/R; derivative is f_t'(Rz).
inline AnalyticValue ftR_eval(double t, double radius, cplx z) {
    if (!(radius > kSqrt2Minus1 && radius <= 1.0)) fail(ErrorKind::InvalidInput, "f_{t,R} needs R in (sqrt2-1, 1]");
    const AnalyticValue v = ft_eval(t, radius * z);
    return {v.value / radius, v.derivative};
}

/// The two-atom measure (1-t) delta_{-1} + t delta_{1} whose Robertson sum is f_t.
inline SegmentMeasure ft_measure(double t) {
    std::vector<SegmentAtom> atoms;
    if (t < 1.0) atoms.push_back({-1.0, 1.0 - t});
    if (t > 0.0) atoms.push_back({1.0, t});
    return SegmentMeasure::normalize(std::move(atoms));
}

// ---------------------------------------------------------------------------
// Goodman's locally univalent member of T: G(z) = tan(pi z / (1 + z^2)) / pi

inline cplx goodman_argument(cplx z) {
    const cplx d = 1.0 + z * z;
    if (std::abs(d) < kPoleGuard) fail(ErrorKind::Pole, "Goodman map is singular at +-i");
    return kPi * z / d;
}

inline AnalyticValue goodman_eval(cplx z) {
    const cplx u = goodman_argument(z);
    const double k = std::round(u.real() / kPi - 0.5);
    if (std::abs(u - cplx(kPi * (k + 0.5), 0.0)) < 1e-10) fail(ErrorKind::Pole, "tan pole in Goodman map");
    const cplx tn = std::tan(u);
    const cplx d = 1.0 + z * z;
    const cplx du = kPi * (1.0 - z * z) / (d * d);
    return {tn / kPi, (1.0 + tn * tn) * du / kPi};
}

inline cplx goodman_G(cplx z) { return goodman_eval(z).value; }

/// Membership in S = {|Re(pi z/(1+z^2))| < pi/2} intersected with the disk.
inline bool in_goodman_S(cplx z) {
    return std::abs(z) < 1.0 && std::abs(goodman_argument(z).real()) < kPi / 2.0;
}

// ---------------------------------------------------------------------------
// Picard example: (f o u)(z) with u = 4z/(1+z)^2 and f(xi) = xi e^{-xi}

inline AnalyticValue picard_eval(cplx z) {
    const cplx b = 1.0 + z;
    if (std::abs(b) < kPoleGuard) fail(ErrorKind::Pole, "Picard map is singular at -1");
    const cplx u = 4.0 * z / (b * b);
    const cplx du = 4.0 * (1.0 - z) / (b * b * b);
    const cplx e = std::exp(-u);
    return {u * e, (1.0 - u) * e * du};
}

inline cplx picard_map(cplx z) { return picard_eval(z).value; }

// ---------------------------------------------------------------------------
// Named analytic maps

inline AnalyticEvaluator robertson_evaluator(SegmentMeasure nu, std::string name = "robertson") {
    auto eval = [nu](cplx z) { return robertson_eval(nu, z); };
    return {std::move(name), [eval](cplx z) { return eval(z).value; }, [eval](cplx z) { return eval(z).derivative; }};
}

inline AnalyticEvaluator slit_rep_evaluator(SegmentMeasure nu) {
    auto eval = [nu](cplx z) { return slit_rep_eval(nu, z); };
    return {"slitrep", [eval](cplx z) { return eval(z).value; }, [eval](cplx z) { return eval(z).derivative; }};
}

inline AnalyticEvaluator identity_evaluator() {
    return {"identity", [](cplx z) { return z; }, [](cplx) { return cplx(1.0); }};
}

namespace detail {

inline double parse_param(std::string_view spec, std::string_view key) {
    const auto pos = spec.find(std::string(key) + "=");
    if (pos == std::string_view::npos) fail(ErrorKind::InvalidInput, "missing parameter '" + std::string(key) + "' in '" + std::string(spec) + "'");
    auto rest = spec.substr(pos + key.size() + 1);
    rest = rest.substr(0, rest.find(','));
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), v);
    if (ec != std::errc{} || ptr != rest.data() + rest.size())
        fail(ErrorKind::InvalidInput, "bad number for '" + std::string(key) + "' in '" + std::string(spec) + "'");
    return v;
}

inline bool has_param(std::string_view spec, std::string_view key) {
    return spec.find(std::string(key) + "=") != std::string_view::npos;
}

}  // namespace detail

/// "koebe", "qt:t=0.5", "ft:t=0.5", "goodman", "picard", "identity".
inline AnalyticEvaluator named_map(std::string_view spec) {
    const auto head = spec.substr(0, spec.find(':'));
    if (head == "identity") return identity_evaluator();
    if (head == "koebe") return robertson_evaluator(SegmentMeasure::dirac(1.0), "koebe");
    if (head == "qt") {
        const double t = detail::parse_param(spec, "t");
        if (!(t >= -1.0 && t <= 1.0)) fail(ErrorKind::InvalidInput, "qt needs t in [-1, 1]");
        return robertson_evaluator(SegmentMeasure::dirac(t), std::string(spec));
    }
    if (head == "ft") {
        const double t = detail::parse_param(spec, "t");
        if (!(t >= 0.0 && t <= 1.0)) fail(ErrorKind::InvalidInput, "ft needs t in [0, 1]");
        return {std::string(spec), [t](cplx z) { return ft_eval(t, z).value; }, [t](cplx z) { return ft_eval(t, z).derivative; }};
    }
    if (head == "goodman") return {"goodman", goodman_G, [](cplx z) { return goodman_eval(z).derivative; }};
    if (head == "picard") return {"picard", picard_map, [](cplx z) { return picard_eval(z).derivative; }};
    fail(ErrorKind::InvalidInput, "unknown map '" + std::string(spec) + "'");
}

}  // namespace htr
