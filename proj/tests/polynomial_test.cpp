#include "starlike/polynomial.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

namespace {

using starlike::Polynomial;

// Independent evaluation by explicit powers.
double naive(const std::vector<double>& c, double x) {
    double s = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) s += c[k] * std::pow(x, static_cast<double>(k));
    return s;
}

TEST(Polynomial, DegreeIgnoresTrailingZeros) {
    EXPECT_EQ(Polynomial({1.0, 2.0, 0.0, 0.0}).degree(), 1);
    EXPECT_EQ(Polynomial({0.0}).degree(), 0);
    EXPECT_EQ(Polynomial(std::vector<double>{}).degree(), 0);
    EXPECT_EQ(Polynomial({0.0, 0.0, 3.0}).degree(), 2);
}

TEST(Polynomial, EvaluationMatchesExplicitPowers) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> c(1 + trial % 9);
        for (double& v : c) v = u(rng);
        const Polynomial p(c);
        const double x = 3.0 * u(rng);
        EXPECT_NEAR(p(x), naive(c, x), 1e-10 * (1.0 + std::abs(naive(c, x))));
    }
}

TEST(Polynomial, DerivativeMatchesDifferenceQuotient) {
    const Polynomial p({1.0, -2.0, 0.5, 3.0, -1.0});
    const Polynomial dp = p.derivative();
    for (double x : {-1.5, -0.2, 0.0, 0.7, 2.0}) {
        const double h = 1e-6;
        EXPECT_NEAR(dp(x), (p(x + h) - p(x - h)) / (2 * h), 1e-5);
    }
    EXPECT_EQ(Polynomial({4.0}).derivative().degree(), 0);
    EXPECT_EQ(Polynomial({4.0}).derivative()(1.0), 0.0);
}

TEST(Polynomial, ShiftPlusConstantAndReflection) {
    const std::vector<double> c{0.3, -1.0, 2.0, 0.0, 1.5};
    const Polynomial p(c);
    for (double s : {-2.0, 0.5, 3.0})
        for (double x : {-1.0, 0.0, 0.25, 2.0})
            EXPECT_NEAR(p.shifted(s)(x), naive(c, x + s), 1e-9 * (1.0 + std::abs(naive(c, x + s))));
    EXPECT_DOUBLE_EQ(p.plus_constant(2.5)(1.3), p(1.3) + 2.5);
    for (double x : {-1.7, 0.4, 2.2}) EXPECT_NEAR(p.reflected()(x), p(-x), 1e-12 * (1.0 + std::abs(p(-x))));
}

}  // namespace
