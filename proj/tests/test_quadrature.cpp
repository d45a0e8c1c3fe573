#include <gtest/gtest.h>

#include "htr/parallel.hpp"
#include "htr/quadrature.hpp"

using namespace htr;

TEST(GaussLegendre, WeightsAndPolynomialExactness) {
    auto const& rule = gauss_legendre_32();
    // degree 63 is exact for 32 points
    auto poly = [](double x) { return cplx(std::pow(x, 62) + 3.0 * std::pow(x, 10), std::pow(x, 63)); };
    cplx v = rule.apply(poly, -1.0, 1.0);
    EXPECT_NEAR(v.real(), 2.0 / 63.0 + 6.0 / 11.0, 1e-14);
    EXPECT_NEAR(v.imag(), 0.0, 1e-15);
    EXPECT_NEAR(rule.apply([](double) { return cplx(1.0); }, 0.0, 3.0).real(), 3.0, 1e-14);
}

TEST(Adaptive, SmoothIntegrand) {
    auto r = integrate_adaptive([](double x) { return std::exp(cplx(0.0, 20.0 * x)); }, 0.0, 1.0);
    const cplx exact = (std::exp(cplx(0.0, 20.0)) - 1.0) / cplx(0.0, 20.0);
    EXPECT_NEAR(std::abs(r.value - exact), 0.0, 1e-13);
}

TEST(Adaptive, NearSingularEndpointConverges) {
    // integral of 1/(1 + d - x)^2 on [0, 1]; forming 1 + d - x alone costs eps/d relative
    for (double d : {1e-4, 1e-6, 1e-8}) {
        auto r = integrate_adaptive([d](double x) { return cplx(1.0 / ((1.0 + d - x) * (1.0 + d - x))); }, 0.0, 1.0);
        const double exact = 1.0 / d - 1.0 / (1.0 + d);
        EXPECT_NEAR(r.value.real() / exact, 1.0, 1e-12 + 4.0 * std::numeric_limits<double>::epsilon() / d) << d;
    }
}

TEST(Adaptive, NonIntegrableRaisesAccuracyError) {
    QuadratureConfig cfg;
    cfg.max_depth = 6;
    try {
        integrate_adaptive([](double x) { return cplx(1.0 / (1.0 - x + 1e-300)); }, 0.0, 1.0, cfg);
        FAIL();
    } catch (AccuracyError const& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Accuracy);
        EXPECT_GT(e.achieved_error(), 0.0);
    }
}

TEST(ParallelMap, DeterministicAcrossWorkerCounts) {
    auto fn = [](std::size_t k) { return std::sin(static_cast<double>(k)) * 1e3; };
    auto a = parallel_map<double>(1000, fn, 1);
    auto b = parallel_map<double>(1000, fn, 7);
    EXPECT_EQ(a, b);
}

TEST(ParallelMap, PropagatesErrors) {
    EXPECT_THROW(parallel_map<int>(100, [](std::size_t k) -> int { if (k == 57) fail(ErrorKind::Domain, "x"); return 0; }, 4), Error);
}
