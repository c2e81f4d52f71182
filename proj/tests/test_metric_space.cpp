#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace ergodia;

namespace {

Word random_word(const SymbolicSpace& X, SplitMix64& rng)
{
    return X.decode(rng.below(static_cast<std::uint64_t>(std::pow(X.alphabet(), X.word_length()))));
}

template <typename D>
void expect_metric(D d, double a, double b, double c)
{
    EXPECT_GE(d(a, b), 0.0);
    EXPECT_EQ(d(a, a), 0.0);
    EXPECT_NEAR(d(a, b), d(b, a), 1e-15);
    EXPECT_LE(d(a, c), d(a, b) + d(b, c) + 1e-15);
}

} // namespace

TEST(MetricSpace, CircleAxioms)
{
    SplitMix64 rng(1);
    for (int i = 0; i < 2000; ++i) {
        const double a = rng.uniform(), b = rng.uniform(), c = rng.uniform();
        expect_metric(CircleSpace::distance, a, b, c);
        expect_metric(IntervalSpace::distance, a, b, c);
        EXPECT_LE(CircleSpace::distance(a, b), 0.5);
    }
    EXPECT_NEAR(CircleSpace::distance(0.05, 0.95), 0.1, 1e-15);
    EXPECT_DOUBLE_EQ(CircleSpace::reduce(-0.25), 0.75);
    EXPECT_DOUBLE_EQ(CircleSpace::reduce(1.0), 0.0);
}

TEST(MetricSpace, SymbolicAxioms)
{
    SplitMix64 rng(2);
    const SymbolicSpace X(2, 4);
    for (int i = 0; i < 2000; ++i) {
        const auto a = random_word(X, rng), b = random_word(X, rng), c = random_word(X, rng);
        EXPECT_EQ(X.distance(a, a), 0.0);
        EXPECT_EQ(X.distance(a, b), X.distance(b, a));
        // ultrametric
        EXPECT_LE(X.distance(a, c), std::max(X.distance(a, b), X.distance(b, c)));
    }
    Word x{std::vector<std::uint8_t>(9, 0)}, y = x;
    y.symbols[4] = 1; // coordinate 0
    EXPECT_EQ(X.distance(x, y), 1.0);
    y = x;
    y.symbols[1] = 1; // coordinate -3
    EXPECT_EQ(X.distance(x, y), 0.125);
}

TEST(MetricSpace, BallMeasureMonotone)
{
    const SymbolicSpace X(3, 5);
    const Word w = X.decode(12345);
    double prev_c = 0, prev_i = 0, prev_s = 0;
    for (double r = 0.0; r <= 1.2; r += 0.01) {
        const double c = CircleSpace::ball_measure(0.3, r), i = IntervalSpace::ball_measure(0.1, r), s = X.ball_measure(w, r);
        EXPECT_GE(c, prev_c);
        EXPECT_GE(i, prev_i);
        EXPECT_GE(s, prev_s);
        EXPECT_LE(c, 1.0);
        prev_c = c;
        prev_i = i;
        prev_s = s;
    }
    EXPECT_DOUBLE_EQ(CircleSpace::ball_measure(0.0, 0.1), 0.2);
    EXPECT_DOUBLE_EQ(CircleSpace::ball_measure(0.0, 0.7), 1.0);
    // radius 1/4 fixes coordinates |n| < 2
    EXPECT_DOUBLE_EQ(X.ball_measure(w, 0.25), std::pow(3.0, -3));
}

TEST(MetricSpace, EncodeDecodeRoundTrip)
{
    const SymbolicSpace X(3, 2);
    for (std::uint64_t c = 0; c < 243; ++c) EXPECT_EQ(X.encode(X.decode(c)), c);
    // little-endian: the lowest digit is x(-N)
    EXPECT_EQ(X.decode(1).symbols.front(), 1);
    EXPECT_THROW(SymbolicSpace(1, 2), std::invalid_argument);
}

TEST(MetricSpace, SetDistancesAndMeasures)
{
    const IntervalUnion C{{{0.2, 0.3}, {0.25, 0.4}, {0.9, 0.95}}};
    EXPECT_NEAR(CircleSpace::measure(C), 0.25, 1e-15);
    EXPECT_EQ(CircleSpace::distance_to(0.35, C), 0.0);
    EXPECT_NEAR(CircleSpace::distance_to(0.5, C), 0.1, 1e-15);
    EXPECT_NEAR(CircleSpace::distance_to(0.02, C), 0.07, 1e-15);
    EXPECT_NEAR(IntervalSpace::distance_to(0.02, C), 0.18, 1e-15);

    const SymbolicSpace X(2, 3);
    const CylinderUnion S0{{Cylinder{{{0, 1}}}}};
    EXPECT_DOUBLE_EQ(X.measure(S0), 0.5);
    const CylinderUnion two{{Cylinder{{{0, 1}}}, Cylinder{{{1, 1}}}}};
    EXPECT_DOUBLE_EQ(X.measure(two), 0.75);
    Word z{std::vector<std::uint8_t>(7, 0)};
    EXPECT_EQ(X.distance_to(z, S0), 1.0);
    z.symbols[3] = 1;
    EXPECT_EQ(X.distance_to(z, S0), 0.0);
}
