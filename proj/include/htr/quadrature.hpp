#pragma once

#include <array>
#include <cmath>
#include <algorithm>
#include <cstddef>
#include <limits>
#include <utility>

#include "htr/core.hpp"

namespace htr {

/// Gauss-Legendre rule on [-1, 1]; nodes by Newton iteration on P_N.
template <std::size_t N>
struct GaussLegendre {
    std::array<double, N> x{};
    std::array<double, N> w{};

    GaussLegendre() {
        const std::size_t m = (N + 1) / 2;
        for (std::size_t i = 0; i < m; ++i) {
            double z = std::cos(kPi * (static_cast<double>(i) + 0.75) / (static_cast<double>(N) + 0.5));
            double pp = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                double p1 = 1.0, p2 = 0.0;
                for (std::size_t j = 1; j <= N; ++j) {
                    const double p3 = p2;
                    p2 = p1;
                    p1 = ((2.0 * static_cast<double>(j) - 1.0) * z * p2 - (static_cast<double>(j) - 1.0) * p3) / static_cast<double>(j);
                }
                pp = static_cast<double>(N) * (z * p1 - p2) / (z * z - 1.0);
                const double dz = p1 / pp;
                z -= dz;
                if (std::abs(dz) < 1e-16) break;
            }
            x[i] = -z;
            x[N - 1 - i] = z;
            w[i] = w[N - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
        }
    }

    template <class F>
    cplx apply(F const& f, double a, double b) const {
        const double c = 0.5 * (a + b);
        const double h = 0.5 * (b - a);
        cplx acc{};
        for (std::size_t k = 0; k < N; ++k) acc += w[k] * f(c + h * x[k]);
        return h * acc;
    }

    /// Value together with the integral of |f|, which sets the roundoff floor of the panel.
    template <class F>
    std::pair<cplx, double> apply_with_magnitude(F const& f, double a, double b) const {
        const double c = 0.5 * (a + b);
        const double h = 0.5 * (b - a);
        cplx acc{};
        double mag = 0.0;
        for (std::size_t k = 0; k < N; ++k) {
            const cplx v = f(c + h * x[k]);
            acc += w[k] * v;
            mag += w[k] * std::abs(v);
        }
        return {h * acc, std::abs(h) * mag};
    }
};

inline GaussLegendre<32> const& gauss_legendre_32() {
    static const GaussLegendre<32> rule;
    return rule;
}

struct QuadratureConfig {
    double rel_tol = 1e-12;
    int max_depth = 48;
    /// Roundoff floor in units of eps * integral of |f| per panel; raise it when the integrand
    /// itself is ill-conditioned.
    double noise_factor = 64.0;
};

struct QuadratureResult {
    cplx value;
    double error_estimate;
    int panels;
};

namespace detail {

template <class F>
bool adaptive_step(F const& f, double a, double b, cplx whole, double tol_per_unit, int depth,
                   QuadratureConfig const& cfg, QuadratureResult& out) {
    auto const& rule = gauss_legendre_32();
    const double m = 0.5 * (a + b);
    const auto [left, left_mag] = rule.apply_with_magnitude(f, a, m);
    const auto [right, right_mag] = rule.apply_with_magnitude(f, m, b);
    const cplx refined = left + right;
    const double diff = std::abs(refined - whole);
    const double noise = cfg.noise_factor * std::numeric_limits<double>::epsilon() * (left_mag + right_mag);
    if (diff <= std::max({cfg.rel_tol * std::abs(refined), tol_per_unit * (b - a), noise}) || diff == 0.0) {
        out.value += refined;
        out.error_estimate += diff;
        out.panels += 2;
        return true;
    }
    if (depth >= cfg.max_depth) {
        out.value += refined;
        out.error_estimate += diff;
        out.panels += 2;
        return false;
    }
    const bool ok_left = adaptive_step(f, a, m, left, tol_per_unit, depth + 1, cfg, out);
    const bool ok_right = adaptive_step(f, m, b, right, tol_per_unit, depth + 1, cfg, out);
    return ok_left && ok_right;
}

}  // namespace detail

/// Adaptive composite 32-point Gauss-Legendre for a complex integrand on [a, b]. A panel is accepted
/// once its two-half estimate agrees with the whole-panel estimate to rel_tol, or to the roundoff
/// floor set by the integral of |f| (near-singular endpoints); panels still
/// unresolved at max_depth raise AccuracyError carrying the estimate reached.
template <class F>
QuadratureResult integrate_adaptive(F const& f, double a, double b, QuadratureConfig const& cfg = {}) {
    const cplx whole = gauss_legendre_32().apply(f, a, b);
    QuadratureResult out{{}, 0.0, 0};
    const double tol_per_unit = cfg.rel_tol * std::abs(whole) / std::max(b - a, 1e-300);
    const bool ok = detail::adaptive_step(f, a, b, whole, tol_per_unit, 0, cfg, out);
    if (!ok) throw AccuracyError("adaptive quadrature did not converge", out.value, out.error_estimate);
    return out;
}

}  // namespace htr
