#include <set>

#include <gtest/gtest.h>

#include "htr/measures.hpp"

using namespace htr;

namespace {

double total(auto const& m) {
    double s = 0.0;
    for (auto const& a : m.atoms()) s += a.w;
    return s;
}

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (Error const& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorKind::Degenerate;
}

}  // namespace

TEST(SegmentMeasure, NormalizesSortsAndMerges) {
    auto m = SegmentMeasure::normalize({{0.5, 2.0}, {-0.25, 1.0}, {0.5, 1.0}});
    ASSERT_EQ(m.size(), 2u);
    EXPECT_EQ(m.atoms()[0].t, -0.25);
    EXPECT_DOUBLE_EQ(m.atoms()[0].w, 0.25);
    EXPECT_DOUBLE_EQ(m.atoms()[1].w, 0.75);
}

TEST(SegmentMeasure, DropsZeroWeights) {
    auto m = SegmentMeasure::normalize({{0.1, 0.0}, {0.2, 3.0}});
    ASSERT_EQ(m.size(), 1u);
    EXPECT_EQ(m.atoms()[0].w, 1.0);
}

TEST(SegmentMeasure, Rejections) {
    EXPECT_EQ(kind_of([] { SegmentMeasure::normalize({}); }), ErrorKind::InvalidMeasure);
    EXPECT_EQ(kind_of([] { SegmentMeasure::normalize({{0.0, -1.0}}); }), ErrorKind::InvalidMeasure);
    EXPECT_EQ(kind_of([] { SegmentMeasure::normalize({{1.5, 1.0}}); }), ErrorKind::InvalidMeasure);
    EXPECT_EQ(kind_of([] { SegmentMeasure::normalize({{0.0, 0.0}}); }), ErrorKind::InvalidMeasure);
    EXPECT_EQ(kind_of([] { SegmentMeasure::normalize({{std::nan(""), 1.0}}); }), ErrorKind::InvalidMeasure);
}

TEST(CircleMeasure, WrapsAngles) {
    auto m = CircleMeasure::normalize({{-kPi / 2.0, 1.0}, {5.0 * kPi, 1.0}});
    ASSERT_EQ(m.size(), 2u);
    EXPECT_NEAR(m.atoms()[0].theta, kPi, 1e-12);
    EXPECT_NEAR(m.atoms()[1].theta, 1.5 * kPi, 1e-12);
}

TEST(CircleMeasure, KeepsDistantAtomsNearTwoPi) {
    auto m = CircleMeasure::normalize({{0.5, 1.0}, {kTwoPi - 0.25, 1.0}});
    EXPECT_EQ(m.size(), 2u);
}

TEST(CircleMeasure, MergesAcrossTwoPi) {
    auto m = CircleMeasure::normalize({{0.0, 1.0}, {kTwoPi - 1e-15, 1.0}});
    ASSERT_EQ(m.size(), 1u);
    EXPECT_EQ(m.atoms()[0].theta, 0.0);
    EXPECT_DOUBLE_EQ(m.atoms()[0].w, 1.0);
}

TEST(CircleMeasure, Rejections) {
    EXPECT_EQ(kind_of([] { CircleMeasure::normalize({{0.0, -0.5}, {1.0, 1.0}}); }), ErrorKind::InvalidMeasure);
    EXPECT_EQ(kind_of([] { CircleMeasure::normalize({{INFINITY, 1.0}}); }), ErrorKind::InvalidMeasure);
}

TEST(Sampling, SameSeedSameMeasures) {
    for (std::uint64_t i = 0; i < 20; ++i) {
        auto a = sample_family_member(42, i);
        auto b = sample_family_member(42, i);
        ASSERT_EQ(a.nu.size(), b.nu.size());
        for (std::size_t k = 0; k < a.nu.size(); ++k) {
            EXPECT_EQ(a.nu.atoms()[k].t, b.nu.atoms()[k].t);
            EXPECT_EQ(a.nu.atoms()[k].w, b.nu.atoms()[k].w);
        }
        ASSERT_EQ(a.mu.size(), b.mu.size());
        for (std::size_t k = 0; k < a.mu.size(); ++k) EXPECT_EQ(a.mu.atoms()[k].theta, b.mu.atoms()[k].theta);
    }
}

TEST(Sampling, FamilyIsValidAndVaried) {
    std::set<std::size_t> sizes;
    for (std::uint64_t i = 0; i < 200; ++i) {
        auto m = sample_family_member(7, i);
        EXPECT_GE(m.nu.size(), 1u);
        EXPECT_LE(m.nu.size(), 8u);
        EXPECT_NEAR(total(m.nu), 1.0, 1e-14);
        EXPECT_NEAR(total(m.mu), 1.0, 1e-14);
        for (auto const& a : m.nu.atoms()) {
            EXPECT_GE(a.t, -1.0);
            EXPECT_LE(a.t, 1.0);
            EXPECT_GT(a.w, 0.0);
        }
        for (auto const& a : m.mu.atoms()) {
            EXPECT_GE(a.theta, 0.0);
            EXPECT_LT(a.theta, kTwoPi);
        }
        sizes.insert(m.nu.size());
    }
    EXPECT_EQ(sizes.size(), 8u);
}

TEST(Sampling, MixSeedSeparatesStreams) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t s = 0; s < 4; ++s)
        for (std::uint64_t i = 0; i < 256; ++i) seen.insert(mix_seed(s, i));
    EXPECT_EQ(seen.size(), 1024u);
}

TEST(Sampling, RejectsEmptyAtomCount) { EXPECT_EQ(kind_of([] { sample_measures(0, 1); }), ErrorKind::InvalidInput); }
