#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "htr/core.hpp"

namespace htr {

/// Truncated Taylor series c_0 + c_1 z + ... + c_N z^N about the origin.
/// All arithmetic is exact in the coefficients up to the truncation order.
class PowerSeries {
public:
    PowerSeries() : coeffs_(1, cplx{}) {}
    explicit PowerSeries(std::size_t order) : coeffs_(order + 1, cplx{}) {}
    explicit PowerSeries(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) coeffs_.push_back({});
    }

    std::size_t order() const { return coeffs_.size() - 1; }
    cplx operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : cplx{}; }
    cplx& operator[](std::size_t k) { return coeffs_.at(k); }
    std::vector<cplx> const& coeffs() const { return coeffs_; }

    PowerSeries truncated(std::size_t order) const {
        std::vector<cplx> c(order + 1, cplx{});
        std::copy_n(coeffs_.begin(), std::min(c.size(), coeffs_.size()), c.begin());
        return PowerSeries(std::move(c));
    }

    friend PowerSeries operator+(PowerSeries const& a, PowerSeries const& b) {
        PowerSeries r(std::min(a.order(), b.order()));
        for (std::size_t k = 0; k <= r.order(); ++k) r.coeffs_[k] = a[k] + b[k];
        return r;
    }
    friend PowerSeries operator-(PowerSeries const& a, PowerSeries const& b) {
        PowerSeries r(std::min(a.order(), b.order()));
        for (std::size_t k = 0; k <= r.order(); ++k) r.coeffs_[k] = a[k] - b[k];
        return r;
    }
    friend PowerSeries operator*(cplx s, PowerSeries a) {
        for (auto& c : a.coeffs_) c *= s;
        return a;
    }
    friend PowerSeries operator*(PowerSeries const& a, PowerSeries const& b) {
        PowerSeries r(std::min(a.order(), b.order()));
        for (std::size_t i = 0; i <= r.order(); ++i) {
            if (a[i] == cplx{}) continue;
            for (std::size_t j = 0; i + j <= r.order(); ++j) r.coeffs_[i + j] += a[i] * b[j];
        }
        return r;
    }

    PowerSeries plus_constant(cplx c) const {
        PowerSeries r = *this;
        r.coeffs_[0] += c;
        return r;
    }

    /// Term-by-term integral from 0; keeps the order, dropping the z^{N+1} term.
    PowerSeries antiderivative() const {
        PowerSeries r(order());
        for (std::size_t k = 1; k <= order(); ++k) r.coeffs_[k] = coeffs_[k - 1] / static_cast<double>(k);
        return r;
    }

    /// Order drops by one.
    PowerSeries derivative() const {
        if (order() == 0) return PowerSeries(0);
        PowerSeries r(order() - 1);
        for (std::size_t k = 1; k <= order(); ++k) r.coeffs_[k - 1] = static_cast<double>(k) * coeffs_[k];
        return r;
    }

    /// Series quotient a / b; b must have a nonzero constant term.
    friend PowerSeries divide(PowerSeries const& a, PowerSeries const& b) {
        if (std::abs(b[0]) < 1e-300) fail(ErrorKind::Division, "series divisor has vanishing constant term");
        PowerSeries q(std::min(a.order(), b.order()));
        for (std::size_t k = 0; k <= q.order(); ++k) {
            cplx acc = a[k];
            for (std::size_t j = 1; j <= k; ++j) acc -= b[j] * q.coeffs_[k - j];
            q.coeffs_[k] = acc / b[0];
        }
        return q;
    }

    cplx operator()(cplx z) const {
        cplx acc{};
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
        return acc;
    }

private:
    std::vector<cplx> coeffs_;
};

}  // namespace htr
