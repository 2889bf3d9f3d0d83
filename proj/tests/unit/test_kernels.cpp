#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "nnst/error.hpp"
#include "nnst/kernels.hpp"

using namespace nnst;

TEST(Kernel, Values) {
    EXPECT_NEAR(Kernel::gaussian(0.0), 0.398942, 1e-6);
    EXPECT_EQ(Kernel(KernelFamily::epanechnikov)(1.5), 0.0);
    EXPECT_EQ(Kernel(KernelFamily::uniform)(0.5), 1.0);
    EXPECT_EQ(Kernel(KernelFamily::uniform)(0.51), 0.0);
}

TEST(Kernel, Symmetric) {
    for (auto f : {KernelFamily::gaussian, KernelFamily::epanechnikov, KernelFamily::uniform})
        for (double x = -3.0; x <= 3.0; x += 0.137) EXPECT_EQ(Kernel(f)(x), Kernel(f)(-x));
}

TEST(Kernel, Parse) {
    EXPECT_EQ(Kernel::parse("epanechnikov").family(), KernelFamily::epanechnikov);
    EXPECT_EQ(Kernel::parse("gaussian").name(), "gaussian");
    EXPECT_THROW(Kernel::parse("triangle"), InvalidSpec);
}

TEST(Kernel, L2ClosedFormMatchesQuadrature) {
    EXPECT_NEAR(kernel_l2(Kernel(KernelFamily::uniform)), 1.0, 1e-15);
    EXPECT_NEAR(kernel_l2(Kernel()), 0.2820948, 1e-7);
    EXPECT_NEAR(kernel_l2(Kernel(KernelFamily::epanechnikov)), 0.6, 1e-15);
    for (auto f : {KernelFamily::gaussian, KernelFamily::epanechnikov, KernelFamily::uniform})
        EXPECT_NEAR(kernel_l2_quadrature(Kernel(f)) / kernel_l2(Kernel(f)), 1.0, 1e-10);
    // product identity: int phi^2 = phi_{sqrt 2}(0)
    EXPECT_NEAR(kernel_l2(Kernel()), 1.0 / (2.0 * std::sqrt(std::numbers::pi)), 1e-15);
}

TEST(Kernel, Moments) {
    for (auto f : {KernelFamily::gaussian, KernelFamily::epanechnikov, KernelFamily::uniform})
        EXPECT_NEAR(kernel_moment(Kernel(f), 0), 1.0, 1e-14);
    EXPECT_NEAR(kernel_moment(Kernel(), 2), 1.0, 1e-14);
    EXPECT_NEAR(kernel_moment(Kernel(KernelFamily::uniform), 1), 0.25, 1e-15);
    for (auto f : {KernelFamily::gaussian, KernelFamily::epanechnikov, KernelFamily::uniform})
        for (unsigned m = 0; m <= 6; ++m)
            EXPECT_NEAR(kernel_moment_quadrature(Kernel(f), m), kernel_moment(Kernel(f), m),
                        1e-9 * std::max(1.0, kernel_moment(Kernel(f), m)));
}

TEST(Bandwidth, FromExponent) {
    EXPECT_NEAR(bandwidth_from_exponent(100, 0.25).h, 0.316228, 1e-6);
    EXPECT_NEAR(bandwidth_from_exponent(500, 0.4).h, 0.083255, 1e-6);
    const auto b = bandwidth_from_exponent(500, 0.25);
    EXPECT_TRUE(b.satisfies_nh2);
    EXPECT_FALSE(b.satisfies_nh4_log2n);
}

TEST(Bandwidth, ParseExponent) {
    EXPECT_DOUBLE_EQ(parse_exponent("1/4"), 0.25);
    EXPECT_DOUBLE_EQ(parse_exponent("1/2.5"), 0.4);
    EXPECT_DOUBLE_EQ(parse_exponent("0.3"), 0.3);
    EXPECT_THROW((void)parse_exponent("abc"), InvalidSpec);
    EXPECT_THROW((void)parse_exponent("1/0"), InvalidSpec);
    EXPECT_THROW((void)bandwidth_explicit(10, -1.0), InvalidSpec);
}
