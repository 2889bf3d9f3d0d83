#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "nnst/rng.hpp"

using nnst::Philox4x32;

// Known-answer vectors for Philox4x32-10 (Salmon et al., Random123).
TEST(Philox, KnownAnswerZero) {
    const auto out = Philox4x32::bijection({0, 0, 0, 0}, {0, 0});
    EXPECT_EQ(out, (Philox4x32::Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
}

TEST(Philox, KnownAnswerOnes) {
    const auto out =
        Philox4x32::bijection({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff});
    EXPECT_EQ(out, (Philox4x32::Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
}

TEST(Philox, KnownAnswerPi) {
    const auto out = Philox4x32::bijection({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0});
    EXPECT_EQ(out, (Philox4x32::Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(Philox, UniformInUnitInterval) {
    Philox4x32 g(123);
    for (int i = 0; i < 100000; ++i) {
        const double u = g.uniform();
        ASSERT_GT(u, 0.0);
        ASSERT_LE(u, 1.0);
    }
}

TEST(NormalStream, SameKeySameStream) {
    nnst::NormalStream a(99), b(99), c(100);
    bool differs = false;
    for (int i = 0; i < 1000; ++i) {
        const double x = a.next();
        EXPECT_EQ(x, b.next());
        differs |= x != c.next();
    }
    EXPECT_TRUE(differs);
}

TEST(NormalStream, Moments) {
    nnst::NormalStream s(7);
    const int n = 200000;
    double m = 0, v = 0;
    for (int i = 0; i < n; ++i) {
        const double x = s.next();
        m += x;
        v += x * x;
    }
    m /= n;
    v = v / n - m * m;
    EXPECT_NEAR(m, 0.0, 4.0 / std::sqrt(n));
    EXPECT_NEAR(v, 1.0, 4.0 * std::sqrt(2.0 / n));
}

TEST(MixSeed, OrderAndValueSensitive) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t a = 0; a < 20; ++a)
        for (std::uint64_t b = 0; b < 20; ++b) seen.insert(nnst::mix_seed({1, a, b}));
    EXPECT_EQ(seen.size(), 400u);
    EXPECT_NE(nnst::mix_seed({1, 2}), nnst::mix_seed({2, 1}));
    EXPECT_EQ(nnst::mix_seed({5, 6, 7}), nnst::mix_seed({5, 6, 7}));
}
