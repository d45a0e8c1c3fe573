#include <gtest/gtest.h>

#include "htr/certify.hpp"
#include "htr/geometry.hpp"
#include "htr/search.hpp"

using namespace htr;

TEST(Certify, IdentityOnDisk) {
    auto v = boundary_univalence_certify(identity_evaluator(), Region::disk(0.9), 512);
    EXPECT_EQ(v.outcome, Outcome::CertifiedAtResolution);
    EXPECT_EQ(v.resolution, 512u);
    EXPECT_FALSE(v.witness);
    for (int w : v.windings) EXPECT_EQ(w, 1);
}

TEST(Certify, KoebeOnLens) {
    auto v = boundary_univalence_certify(named_map("koebe"), Region::lens(), 2048);
    EXPECT_EQ(v.outcome, Outcome::CertifiedAtResolution) << v.note;
    EXPECT_EQ(v.excluded_corners.size(), 2u);
}

TEST(Certify, HalfLensMapCollidesOnLens) {
    const auto t5 = theorem5_map();
    for (std::size_t n : {1024u, 2048u}) {
        auto v = boundary_univalence_certify(t5.map, Region::lens(), n);
        ASSERT_EQ(v.outcome, Outcome::Collision) << n;
        ASSERT_TRUE(v.witness);
        const auto& w = *v.witness;
        EXPECT_TRUE(region_contains(Region::lens(), w.z1));
        EXPECT_TRUE(region_contains(Region::lens(), w.z2));
        EXPECT_GT(std::abs(w.z1 - w.z2), 1e-3);
        const cplx f1 = t5.map(w.z1), f2 = t5.map(w.z2);
        EXPECT_LT(std::abs(f1 - f2), 1e-9 * std::max({1.0, std::abs(f1), std::abs(f2)}));
    }
}

TEST(Certify, BoundaryFoldIsNotACollision) {
    // f_1/2 maps the upper lens arc two-to-one onto a slit; the map is univalent inside
    auto v = boundary_univalence_certify(named_map("ft:t=0.5"), Region::lens(), 1024);
    EXPECT_EQ(v.outcome, Outcome::Inconclusive);
    const cplx z1 = cplx(0, -1) + kSqrt2 * std::polar(1.0, 0.3 * kPi);
    const cplx z2 = -std::conj(z1);
    auto w = verify_collision(named_map("ft:t=0.5"), z1, z2);
    ASSERT_TRUE(w);
    EXPECT_FALSE(confirm_by_degree(named_map("ft:t=0.5"), Region::lens(), *w));
    const cplx inside = 0.999 * z1;
    EXPECT_FALSE(confirm_by_degree(named_map("ft:t=0.5"), Region::lens(), {inside, -std::conj(inside), 0.0}));
}

TEST(Certify, DegreeConfirmsInteriorCollision) {
    auto sq = [](cplx z) { return z * z; };
    EXPECT_TRUE(confirm_by_degree(sq, Region::disk(0.9), {cplx(0.3, 0.2), cplx(-0.3, -0.2), 0.0}));
    EXPECT_FALSE(confirm_by_degree(sq, Region::disk(0.2), {cplx(0.3, 0.2), cplx(-0.3, -0.2), 0.0}));
}

TEST(Certify, SquareIsNotCertified) {
    auto v = boundary_univalence_certify([](cplx z) { return z * z; }, Region::disk(0.9), 512);
    EXPECT_NE(v.outcome, Outcome::CertifiedAtResolution);
}

TEST(Certify, RejectsLowResolution) {
    try {
        boundary_univalence_certify(identity_evaluator(), Region::disk(0.5), 255);
        FAIL();
    } catch (Error const& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidInput);
    }
}

TEST(Certify, ShearedMembersOnSmallDisk) {
    for (std::uint64_t i = 0; i < 6; ++i) {
        const auto pair = sample_family_member(21, i);
        auto v = boundary_univalence_certify(HarmonicMap::shear(pair), Region::disk(0.999 * kSqrt6MinusSqrt5), 1024);
        EXPECT_EQ(v.outcome, Outcome::CertifiedAtResolution) << i;
    }
}

TEST(Certify, ShearPreservesUnivalenceAndHorizontalConvexity) {
    // f univalent and convex in the horizontal direction exactly when F = h - g is
    for (std::uint64_t i = 0; i < 6; ++i) {
        const auto pair = sample_family_member(23, i);
        const auto f = HarmonicMap::shear(pair);
        const auto F = robertson_evaluator(pair.nu);
        for (double r : {0.2, 0.3}) {
            const auto region = Region::disk(r);
            const bool uf = boundary_univalence_certify(f, region, 1024).outcome == Outcome::CertifiedAtResolution &&
                            direction_convexity_check(boundary_image(f, region, 1024), Direction::Horizontal).pass;
            const bool uF = boundary_univalence_certify(F, region, 1024).outcome == Outcome::CertifiedAtResolution &&
                            direction_convexity_check(boundary_image(F, region, 1024), Direction::Horizontal).pass;
            EXPECT_EQ(uf, uF) << "member " << i << " radius " << r;
        }
    }
}

TEST(Certify, DirectionalConvexityOfKnownImages) {
    // Koebe maps |z| < 2 - sqrt3 onto a convex set
    auto koebe = boundary_image(named_map("koebe"), Region::disk(kSqrt6MinusSqrt5), 1024);
    EXPECT_TRUE(direction_convexity_check(koebe, Direction::Horizontal).pass);
    EXPECT_TRUE(direction_convexity_check(koebe, Direction::Vertical).pass);
}

TEST(CollisionSearch, FindsGoodmanPairOutsideOnly) {
    auto out = goodman_collision(kInvSqrt3 + 0.01);
    ASSERT_TRUE(out);
    EXPECT_GT(std::abs(out->z1 - out->z2), 1e-3);
    EXPECT_FALSE(collision_search(identity_evaluator(), Region::disk(0.9), {{0.1, -0.1}}));
}

TEST(CollisionSearch, VerifyRespectsSeparation) {
    EXPECT_FALSE(verify_collision(identity_evaluator(), 0.1, 0.1 + 1e-4));
    auto w = verify_collision([](cplx z) { return z * z; }, cplx(0.3, 0.1), cplx(-0.3, -0.1));
    ASSERT_TRUE(w);
    EXPECT_EQ(w->df, 0.0);
}

TEST(TypicalReality, PositiveAndNegative) {
    const auto grid = disk_test_grid(10, 32, 0.95, 19);
    EXPECT_TRUE(typical_reality_check(identity_evaluator(), grid).pass);
    EXPECT_TRUE(typical_reality_check(named_map("qt:t=0.3"), grid).pass);
    EXPECT_TRUE(typical_reality_check(HarmonicMap::shear(sample_family_member(4, 4)), grid).pass);
    auto sq = typical_reality_check([](cplx z) { return z * z; }, grid);
    EXPECT_FALSE(sq.pass);
    ASSERT_TRUE(sq.witness);
    EXPECT_NE(sign_of(sq.witness_value.imag()), sign_of(sq.witness->imag()));
    EXPECT_FALSE(typical_reality_check([](cplx z) { return z + cplx(0, 1e-6); }, grid).pass);
}

TEST(LocalUnivalence, CriticalPointsOfHalfKoebeMix) {
    auto rep = local_univalence_scan(named_map("ft:t=0.5"), Region::disk(0.5), 100);
    ASSERT_EQ(rep.critical_points.size(), 2u);
    for (cplx c : rep.critical_points) EXPECT_NEAR(std::abs(std::abs(c.imag()) - kSqrt2Minus1) + std::abs(c.real()), 0.0, 1e-8);
    auto koebe = local_univalence_scan(named_map("koebe"), Region::lens(), 100);
    EXPECT_TRUE(koebe.critical_points.empty());
    EXPECT_GT(koebe.min_abs_jacobian, 0.0);
    auto sheared = local_univalence_scan(theorem5_map().map, Region::disk(0.5), 100);
    EXPECT_EQ(sheared.critical_points.size(), 2u);
}

TEST(Starlike, KoebeAndMix) {
    EXPECT_TRUE(starlike_boundary_check(named_map("koebe"), 0.99).pass);
    EXPECT_TRUE(starlike_boundary_check(named_map("ft:t=0.5"), 0.3).pass);
    auto mix = starlike_boundary_check(named_map("ft:t=0.5"), 0.6);
    EXPECT_FALSE(mix.pass);
    EXPECT_LT(mix.min_real_part, 0.0);
    EXPECT_THROW(starlike_boundary_check(named_map("koebe"), 1.0), Error);
}
