#include <gtest/gtest.h>

#include "htr/kernels.hpp"

using namespace htr;

namespace {

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (Error const& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorKind::Degenerate;
}

cplx numeric_derivative(auto const& f, cplx z) {
    const double h = 1e-6;
    return (f(z + h) - f(z - h)) / (2.0 * h);
}

const std::vector<cplx> kPoints{{0.3, 0.2}, {-0.5, 0.4}, {0.0, 0.7}, {0.8, -0.1}, {-0.2, -0.6}};

}  // namespace

TEST(Herglotz, ValueAndRealPart) {
    auto mu = CircleMeasure::normalize({{0.4, 0.3}, {2.0, 0.7}});
    for (cplx z : kPoints) {
        cplx p = herglotz_eval(mu, z);
        EXPECT_GT(p.real(), 0.0);
        cplx direct = 0.3 * herglotz_kernel(std::polar(1.0, 0.4), z) + 0.7 * herglotz_kernel(std::polar(1.0, 2.0), z);
        EXPECT_NEAR(std::abs(p - direct), 0.0, 1e-14);
    }
    EXPECT_EQ(herglotz_eval(mu, 0.0), cplx(1.0));
}

TEST(Robertson, KoebeAndDerivative) {
    auto k = robertson_eval(SegmentMeasure::dirac(1.0), cplx(0.3, 0.4));
    const cplx z(0.3, 0.4);
    EXPECT_NEAR(std::abs(k.value - z / ((1.0 - z) * (1.0 - z))), 0.0, 1e-15);
    for (double t : {-1.0, -0.3, 0.0, 0.6, 1.0})
        for (cplx zz : kPoints)
            EXPECT_NEAR(std::abs(qt_prime(t, zz) - numeric_derivative([t](cplx w) { return qt(t, w); }, zz)), 0.0, 1e-7 * std::max(1.0, std::abs(qt_prime(t, zz))));
}

TEST(Robertson, SecondDerivative) {
    for (double t : {-0.8, 0.25, 1.0})
        for (cplx z : kPoints)
            EXPECT_NEAR(std::abs(qt_second(t, z) - numeric_derivative([t](cplx w) { return qt_prime(t, w); }, z)), 0.0,
                        1e-6 * std::max(1.0, std::abs(qt_second(t, z))));
}

TEST(Robertson, PoleGuard) {
    EXPECT_EQ(kind_of([] { qt(1.0, 1.0); }), ErrorKind::Pole);
    EXPECT_EQ(kind_of([] { qt(-1.0, -1.0); }), ErrorKind::Pole);
}

TEST(Robertson, FactoredDenominatorNearDoubleRoot) {
    // 1 - 2tz + z^2 = (1 - z)^2 at t = 1; the factored form keeps full relative accuracy.
    const cplx z(1.0 - 1e-5, 1e-5);
    const cplx exact = (1.0 - z) * (1.0 - z);
    EXPECT_NEAR(std::abs(z / qt(1.0, z) - exact) / std::abs(exact), 0.0, 1e-12);
}

TEST(Psi, InverseRoundTrip) {
    for (cplx z : kPoints) EXPECT_NEAR(std::abs(psi_inv(psi(z)) - z), 0.0, 1e-14);
    EXPECT_EQ(psi_inv(0.0), cplx(0.0));
    EXPECT_NEAR(std::abs(psi_prime(cplx(0.2, 0.1)) - numeric_derivative(psi, cplx(0.2, 0.1))), 0.0, 1e-8);
}

TEST(Psi, SlitsAndPoles) {
    EXPECT_TRUE(on_slits(cplx(1.0, 0.0)));
    EXPECT_TRUE(on_slits(cplx(-3.0, 0.0)));
    EXPECT_FALSE(on_slits(cplx(0.5, 0.0)));
    EXPECT_FALSE(on_slits(cplx(2.0, 1e-300)));
    EXPECT_EQ(kind_of([] { psi_inv(cplx(2.0, 0.0)); }), ErrorKind::Branch);
    EXPECT_EQ(kind_of([] { psi(cplx(0.0, 1.0)); }), ErrorKind::Pole);
}

TEST(SlitRep, RobertsonIsHalfSlitRepOfPsi) {
    // q_t(z) = psi(z) / (2 (1 - t psi(z)))
    auto nu = SegmentMeasure::normalize({{-0.9, 0.2}, {0.1, 0.3}, {0.7, 0.5}});
    for (cplx z : kPoints) EXPECT_NEAR(std::abs(robertson_eval(nu, z).value - 0.5 * slit_rep_eval(nu, psi(z)).value), 0.0, 1e-13);
}

TEST(Ft, MatchesRobertsonOfTwoAtoms) {
    for (double t : {0.0, 0.25, 0.5, 1.0}) {
        auto nu = ft_measure(t);
        for (cplx z : kPoints) {
            auto a = ft_eval(t, z);
            auto b = robertson_eval(nu, z);
            EXPECT_NEAR(std::abs(a.value - b.value), 0.0, 1e-13);
            EXPECT_NEAR(std::abs(a.derivative - b.derivative), 0.0, 1e-12 * std::max(1.0, std::abs(b.derivative)));
        }
    }
}

TEST(Ft, CriticalPointAtLensBoundary) {
    EXPECT_LT(std::abs(ft_eval(0.5, cplx(0.0, kSqrt2Minus1)).derivative), 1e-14);
    EXPECT_EQ(kind_of([] { ft_eval(1.5, 0.1); }), ErrorKind::InvalidInput);
    EXPECT_EQ(kind_of([] { ftR_eval(0.5, 0.3, 0.1); }), ErrorKind::InvalidInput);
}

TEST(Goodman, CollisionPairOracle) {
    // Re(pi z0 / (1 + z0^2)) = pi/2 at z0 = (1 + i sqrt2)/3, so G(z0) = i coth(pi sqrt2 / 4) / pi.
    const cplx z0 = cplx(1.0, kSqrt2) / 3.0;
    const cplx expected(0.0, 0.39575177642079913019);
    EXPECT_NEAR(std::abs(goodman_G(z0) - expected), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(goodman_G(-std::conj(z0)) - expected), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(z0), kInvSqrt3, 1e-15);
    EXPECT_FALSE(in_goodman_S(z0 * 1.01));
    EXPECT_TRUE(in_goodman_S(z0 * 0.99));
}

TEST(Goodman, DerivativeAndTypicalReality) {
    for (cplx z : kPoints) {
        auto g = goodman_eval(z * 0.8);
        EXPECT_NEAR(std::abs(g.derivative - numeric_derivative(goodman_G, z * 0.8)), 0.0, 1e-6 * std::max(1.0, std::abs(g.derivative)));
        if (z.imag() != 0.0) {
            EXPECT_EQ(g.value.imag() > 0.0, z.imag() > 0.0);
        }
    }
}

TEST(Picard, ValueAndDerivative) {
    const cplx z(0.2, -0.3);
    const cplx u = 4.0 * z / ((1.0 + z) * (1.0 + z));
    EXPECT_NEAR(std::abs(picard_map(z) - u * std::exp(-u)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(picard_eval(z).derivative - numeric_derivative(picard_map, z)), 0.0, 1e-8);
    EXPECT_EQ(kind_of([] { picard_map(-1.0); }), ErrorKind::Pole);
}

TEST(NamedMaps, ParseAndReject) {
    EXPECT_EQ(named_map("koebe").name, "koebe");
    EXPECT_NEAR(std::abs(named_map("qt:t=0.5")(cplx(0.1, 0.2)) - qt(0.5, cplx(0.1, 0.2))), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(named_map("ft:t=0.25")(cplx(0.1, 0.2)) - ft_eval(0.25, cplx(0.1, 0.2)).value), 0.0, 1e-15);
    EXPECT_EQ(named_map("identity")(cplx(0.1, 0.2)), cplx(0.1, 0.2));
    EXPECT_EQ(kind_of([] { named_map("cardioid"); }), ErrorKind::InvalidInput);
    EXPECT_EQ(kind_of([] { named_map("qt:t=2"); }), ErrorKind::InvalidInput);
    EXPECT_EQ(kind_of([] { named_map("qt"); }), ErrorKind::InvalidInput);
    EXPECT_EQ(kind_of([] { named_map("ft:t=abc"); }), ErrorKind::InvalidInput);
}
