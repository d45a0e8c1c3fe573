#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "htr/core.hpp"

namespace htr {

/// Point mass on [-1, 1] (Robertson parameter t).
struct SegmentAtom {
    double t;
    double w;
};

/// Point mass on the unit circle at angle theta (Herglotz parameter eta = e^{i theta}).
struct CircleAtom {
    double theta;
    double w;

    cplx eta() const { return std::polar(1.0, theta); }
};

inline constexpr double kMergeTolerance = 1e-14;

namespace detail {

inline double checked_total(auto const& atoms) {
    if (atoms.empty()) fail(ErrorKind::InvalidMeasure, "empty atom list");
    double total = 0.0;
    for (auto const& a : atoms) {
        if (!std::isfinite(a.w) || a.w < 0.0) fail(ErrorKind::InvalidMeasure, "negative or non-finite weight");
        total += a.w;
    }
    if (!(total > 0.0)) fail(ErrorKind::InvalidMeasure, "nonpositive total weight");
    return total;
}

}  // namespace detail

/// Atomic probability measure on [-1, 1]; atoms sorted by position, weights positive and summing to 1.
class SegmentMeasure {
public:
    SegmentMeasure() = default;

    static SegmentMeasure normalize(std::vector<SegmentAtom> atoms) {
        const double total = detail::checked_total(atoms);
        for (auto const& a : atoms) {
            if (!std::isfinite(a.t) || a.t < -1.0 || a.t > 1.0)
                fail(ErrorKind::InvalidMeasure, "segment atom outside [-1, 1]");
        }
        std::erase_if(atoms, [](SegmentAtom const& a) { return a.w == 0.0; });
        std::ranges::sort(atoms, {}, &SegmentAtom::t);
        std::vector<SegmentAtom> merged;
        for (auto const& a : atoms) {
            if (!merged.empty() && std::abs(a.t - merged.back().t) <= kMergeTolerance)
                merged.back().w += a.w;
            else
                merged.push_back(a);
        }
        for (auto& a : merged) a.w /= total;
        SegmentMeasure m;
        m.atoms_ = std::move(merged);
        return m;
    }

    static SegmentMeasure dirac(double t) { return normalize({{t, 1.0}}); }

    std::span<const SegmentAtom> atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }

private:
    std::vector<SegmentAtom> atoms_;
};

/// Atomic probability measure on the unit circle; angles reduced to [0, 2pi).
class CircleMeasure {
public:
    CircleMeasure() = default;

    static CircleMeasure normalize(std::vector<CircleAtom> atoms) {
        const double total = detail::checked_total(atoms);
        for (auto& a : atoms) {
            if (!std::isfinite(a.theta)) fail(ErrorKind::InvalidMeasure, "non-finite circle angle");
            a.theta = std::fmod(a.theta, kTwoPi);
            if (a.theta < 0.0) a.theta += kTwoPi;
            if (a.theta >= kTwoPi) a.theta = 0.0;
        }
        std::erase_if(atoms, [](CircleAtom const& a) { return a.w == 0.0; });
        std::ranges::sort(atoms, {}, &CircleAtom::theta);
        std::vector<CircleAtom> merged;
        for (auto const& a : atoms) {
            if (!merged.empty() && std::abs(a.theta - merged.back().theta) <= kMergeTolerance)
                merged.back().w += a.w;
            else
                merged.push_back(a);
        }
        // Angles just below 2pi wrap onto 0.
        if (merged.size() > 1 && (kTwoPi - merged.back().theta) + merged.front().theta <= kMergeTolerance) {
            merged.front().w += merged.back().w;
            merged.pop_back();
        }
        for (auto& a : merged) a.w /= total;
        CircleMeasure m;
        m.atoms_ = std::move(merged);
        return m;
    }

    static CircleMeasure dirac(double theta) { return normalize({{theta, 1.0}}); }

    std::span<const CircleAtom> atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }

private:
    std::vector<CircleAtom> atoms_;
};

/// The measure pair generating one sheared map k(., p, F).
struct MeasurePair {
    CircleMeasure mu;
    SegmentMeasure nu;
};

/// SplitMix64 step; used to derive independent per-sample streams from (seed, index).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace detail {

// Uniform double in [0, 1) from the top 53 bits; avoids the
// implementation-defined std::uniform_real_distribution.
inline double unit_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::vector<double> dirichlet_uniform(std::mt19937_64& rng, int k) {
    std::vector<double> w(static_cast<std::size_t>(k));
    // Open-interval uniforms keep every weight strictly positive.
    for (auto& x : w) x = -std::log((static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53);
    return w;
}

}  // namespace detail

/// Random k-atom measures: positions uniform, weights flat-Dirichlet. k = 1 gives extreme-point generators.
inline MeasurePair sample_measures(int k, std::uint64_t seed) {
    if (k < 1) fail(ErrorKind::InvalidInput, "sample_measures needs k >= 1");
    std::mt19937_64 rng(seed);
    std::vector<SegmentAtom> nu;
    std::vector<CircleAtom> mu;
    auto wn = detail::dirichlet_uniform(rng, k);
    auto wm = detail::dirichlet_uniform(rng, k);
    for (int j = 0; j < k; ++j) {
        nu.push_back({std::clamp(-1.0 + 2.0 * detail::unit_uniform(rng), -1.0, 1.0), wn[static_cast<std::size_t>(j)]});
        mu.push_back({kTwoPi * detail::unit_uniform(rng), wm[static_cast<std::size_t>(j)]});
    }
    return {CircleMeasure::normalize(std::move(mu)), SegmentMeasure::normalize(std::move(nu))};
}

/// Sample #index of a reproducible family: atom count drawn from 1..max_atoms.
inline MeasurePair sample_family_member(std::uint64_t seed, std::uint64_t index, int max_atoms = 8) {
    const std::uint64_t s = mix_seed(seed, index);
    const int k = 1 + static_cast<int>(s % static_cast<std::uint64_t>(max_atoms));
    return sample_measures(k, mix_seed(s, 0xA70Full));
}

}  // namespace htr
