#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace ergodia;

TEST(Approximation, GridsAreInjective)
{
    EXPECT_TRUE(is_injective(circle_grid(1000)));
    EXPECT_TRUE(is_injective(interval_grid(77)));
    EXPECT_TRUE(is_injective(symbolic_words(2, 3)));
    EXPECT_THROW(circle_grid(0), std::invalid_argument);
}

TEST(Approximation, WeakStarOnTheGrid)
{
    for (std::size_t M : {100u, 1000u, 10000u}) {
        const auto err = weak_star_error(circle_grid(M), {monomial(1)});
        EXPECT_NEAR(err[0], 0.5 / M, 1e-12);
        const auto higher = weak_star_error(circle_grid(M), {monomial(2), monomial(5)});
        for (double e : higher) EXPECT_LE(e, 3.0 / M);
    }
}

TEST(Approximation, ReferenceIntegralAgreesWithClosedForms)
{
    for (unsigned k = 0; k < 8; ++k) EXPECT_NEAR(reference_integral([k](double x) { return std::pow(x, k); }), 1.0 / (k + 1), 1e-13);
    EXPECT_NEAR(reference_integral(tent), 0.5, 1e-10);
}

TEST(Approximation, WeakStarNeedsAnIntegral)
{
    TestFunction<double> t{"mystery", [](const double& x) { return x; }, std::nullopt};
    EXPECT_THROW(weak_star_error(circle_grid(10), {t}), std::invalid_argument);
}

TEST(Approximation, CylinderIndicatorIsExact)
{
    for (int N : {1, 3, 5}) EXPECT_EQ(weak_star_error(symbolic_words(2, N), {coordinate_indicator(2)})[0], 0.0);
    EXPECT_EQ(weak_star_error(symbolic_words(3, 2), {coordinate_indicator(3)})[0], 0.0);
}

TEST(Approximation, ThickeningExamples)
{
    const std::size_t M = 10000;
    const ClosedSet arc = IntervalUnion{{{0.25, 0.5}}};
    // points within eps of an arc of length 0.25: about 0.25 + 2 eps of the grid
    for (double eps : {0.1, 0.01, 0.001}) {
        const double e = thickening_measure_error(circle_grid(M), arc, eps);
        EXPECT_NEAR(e, 2 * eps, 2.0 / M + 1e-12);
    }
    const ClosedSet point = IntervalUnion{{{0.5, 0.5}}};
    EXPECT_NEAR(thickening_measure_error(circle_grid(M), point, 0.01), 0.02, 2.0 / M);

    const ClosedSet S0 = CylinderUnion{{Cylinder{{{0, 1}}}}};
    // eps <= 1: the eps-neighborhood of a cylinder on coordinate 0 is the cylinder itself
    EXPECT_EQ(thickening_measure_error(symbolic_words(2, 4), S0, 0.5), 0.0);
    EXPECT_EQ(thickening_measure_error(symbolic_words(2, 4), S0, 1.0), 0.0);
    EXPECT_NEAR(thickening_measure_error(symbolic_words(2, 4), S0, 1.5), 0.5, 1e-15);
}

TEST(Approximation, ThickeningRejectsForeignDescriptor)
{
    const ClosedSet S0 = CylinderUnion{{Cylinder{{{0, 1}}}}};
    EXPECT_THROW(thickening_measure_error(circle_grid(100), S0, 0.1), std::invalid_argument);
    const ClosedSet arc = IntervalUnion{{{0.1, 0.2}}};
    EXPECT_THROW(thickening_measure_error(symbolic_words(2, 2), arc, 0.1), std::invalid_argument);
    EXPECT_THROW(thickening_measure_error(circle_grid(100), arc, 0.0), std::invalid_argument);
}

TEST(Approximation, MismatchExamples)
{
    const std::size_t M = 1000;
    const auto drift = build_drift_system(M);
    // only y = M-1 wraps from 1 - 1/M back to 0 on the interval
    const auto bad = map_mismatch_set(drift.phi, drift.T, identity_map(), 2.0 / M);
    EXPECT_EQ(bad, std::vector<index_t>{M - 1});

    const auto rot = build_rotation(M, 1 / std::sqrt(2.0));
    EXPECT_EQ(map_mismatch_fraction(rot.phi, rot.T, rotation_map(rot.t), rot.defect + 1e-12), 0.0);
    EXPECT_EQ(map_mismatch_fraction(rot.phi, rot.T, rotation_map(rot.t), rot.defect + 1e-12, 4), 0.0);

    const auto id = FinitePermutation::identity(M);
    EXPECT_EQ(map_mismatch_fraction(circle_grid(M), id, identity_map(), 1e-9), 0.0);
    EXPECT_GT(map_mismatch_fraction(circle_grid(M), id, doubling_map(), 0.01), 0.9);
}

TEST(Approximation, NaiveShiftMismatch)
{
    // rotating the window moves the old x(-N) into position +N, the map fills 0 there
    const auto sys = build_bernoulli(2, 4, ShiftMode::naive);
    const double f = map_mismatch_fraction(sys.phi, sys.T, symbolic_shift_map(), 1.0 / 32);
    EXPECT_DOUBLE_EQ(f, 0.5);
    EXPECT_EQ(map_mismatch_fraction(sys.phi, sys.T, symbolic_shift_map(), 1.0 / 16), 0.0);
}
