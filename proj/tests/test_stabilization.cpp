#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace ergodia;

namespace {

Observable ex03(std::size_t M, std::uint64_t K)
{
    auto p = ObservableParams::on(M);
    p.K = K;
    return paper_observable("ex03", p);
}

Observable ex01_unit(std::size_t M)
{
    auto p = ObservableParams::on(M);
    p.amplitude = 1.0;
    return paper_observable("ex01", p);
}

double direct_gap(const std::vector<double>& f, const std::vector<index_t>& image, index_t y, std::uint64_t K,
                  std::uint64_t L)
{
    return static_cast<double>(std::abs(oracle::mean_ld(f, image, y, K) - oracle::mean_ld(f, image, y, L)));
}

} // namespace

TEST(Stabilization, SupDiscrepancyMatchesDirectScan)
{
    SplitMix64 rng(31);
    for (int trial = 0; trial < 12; ++trial) {
        const std::size_t M = 2 + rng.below(150);
        const auto image = oracle::random_image(M, rng);
        const FinitePermutation T(image);
        std::vector<double> f(M);
        for (auto& x : f) x = rng.uniform() * 20 - 10;
        const auto F = Observable::dense(f);
        const std::uint64_t L = 1 + rng.below(2 * M);
        const std::uint64_t K = L + 1 + rng.below(2 * M);
        const auto r = sup_discrepancy(F, T, K, L);
        double sup = 0;
        std::vector<double> gaps;
        for (index_t y = 0; y < M; ++y) {
            gaps.push_back(direct_gap(f, image, y, K, L));
            sup = std::max(sup, gaps.back());
        }
        EXPECT_NEAR(r.sup_disc, sup, 1e-12);
        EXPECT_EQ(r.bound_violations, 0u);
        for (double eps : {0.01, 0.1, 0.5, 1.0, 3.0}) {
            const double frac = static_cast<double>(std::count_if(gaps.begin(), gaps.end(), [&](double g) { return g >= eps + 1e-12; })) / M;
            const double frac_hi = static_cast<double>(std::count_if(gaps.begin(), gaps.end(), [&](double g) { return g >= eps - 1e-12; })) / M;
            const double got = r.exceedance(eps);
            EXPECT_GE(got, frac);
            EXPECT_LE(got, frac_hi);
        }
    }
}

TEST(Stabilization, ProofBoundHoldsExactly)
{
    SplitMix64 rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t M = 2 + rng.below(10000);
        const FinitePermutation T(oracle::random_image(M, rng));
        std::vector<double> f(M);
        for (auto& x : f) x = std::round(rng.uniform() * 200 - 100) / 8;
        const auto F = Observable::dense(f);
        const std::uint64_t L = 1 + rng.below(300);
        const std::uint64_t K = L + 1 + rng.below(300);
        for (int q = 0; q < 5; ++q) {
            const auto y = static_cast<index_t>(rng.below(M));
            const auto t = discrepancy_terms<Rational>(F, T, y, K, L);
            ASSERT_LE(t.gap, t.U + t.V);
            const auto d = discrepancy_terms<double>(F, T, y, K, L);
            EXPECT_NEAR(d.gap, to_double(t.gap), 1e-9);
        }
    }
}

TEST(Stabilization, Examples)
{
    const std::size_t M = 1000;
    const auto drift = FinitePermutation::shift(M, 1);
    const std::uint64_t L = M / 2, K = L + 1;
    EXPECT_LE(sup_discrepancy(ex01_unit(M), drift, K, L).sup_disc, 2.0 / L + 1.0 / K);
    EXPECT_EQ(sup_discrepancy(Observable::constant(M, 3.0), drift, 700, 20).sup_disc, 0.0);
    EXPECT_EQ(exceedance_fraction(Observable::constant(M, 3.0), drift, 700, 20, 1e-9), 0.0);
    EXPECT_THROW(sup_discrepancy(Observable::constant(M, 3.0), drift, 20, 20), std::invalid_argument);
}

TEST(Stabilization, ExampleThreeDiscrepancy)
{
    const std::size_t M = 100000;
    const auto F = ex03(M, 1000);
    const auto T = FinitePermutation::shift(M, 1);
    // halfway into an even block: 500 ones, then 500 zeros
    const auto s = ergodic_means_prefix<Rational>(F, T, 500, 1000);
    EXPECT_EQ(s[500], Rational(1));
    EXPECT_EQ(s[1000], Rational(1, 2));
    const auto r = sup_discrepancy(F, T, 1000, 500);
    EXPECT_GE(r.sup_disc, 0.5);
    EXPECT_GE(r.exceedance(0.25), 0.4);
}

TEST(Stabilization, ComparableHorizonsStayClose)
{
    const std::size_t M = 100000;
    EXPECT_EQ(exceedance_fraction(ex01_unit(M), FinitePermutation::shift(M, 1), 40400, 40000, 0.1), 0.0);
}

TEST(Stabilization, FiniteErgMeanStabBound)
{
    SplitMix64 rng(77);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t M = 500 + rng.below(3000);
        std::uint64_t P = 1 + rng.below(M - 1);
        while (std::gcd<std::uint64_t, std::uint64_t>(P, M) != 1) P = 1 + rng.below(M - 1);
        const auto T = FinitePermutation::shift(M, P);
        const double c = 1 + rng.uniform() * 5;
        std::vector<double> f(M);
        for (auto& x : f) x = (rng.uniform() * 2 - 1) * c;
        const double a = 0.1 + 0.8 * rng.uniform();
        const double delta = 0.001 + 0.05 * rng.uniform();
        const auto L = static_cast<std::uint64_t>(std::ceil(a * M));
        const auto K = std::max<std::uint64_t>(L + 1, static_cast<std::uint64_t>(std::floor(L * (1 + delta))));
        const double d = static_cast<double>(K) / L - 1;
        EXPECT_LE(sup_discrepancy(Observable::dense(f), T, K, L).sup_disc, 3 * c * d / a);
    }
}

TEST(Stabilization, SegmentConstantReachesLimit)
{
    const auto s = stabilization_segment(Observable::constant(100, 1.0), FinitePermutation::shift(100, 1), 5, 1, 0.01, 300);
    EXPECT_EQ(s.K_star, 300u);
    EXPECT_TRUE(s.reached_scan_limit);
    EXPECT_THROW(stabilization_segment(Observable::constant(100, 1.0), FinitePermutation::shift(100, 1), 5, 400, 0.01, 300),
                 std::invalid_argument);
    EXPECT_THROW(stabilization_segment(Observable::constant(100, 1.0), FinitePermutation::shift(100, 1), 5, 0, 0.01, 300),
                 std::invalid_argument);
}

TEST(Stabilization, SegmentMatchesBandOracle)
{
    SplitMix64 rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t M = 2 + rng.below(300);
        const auto image = oracle::random_image(M, rng);
        const FinitePermutation T(image);
        std::vector<double> f(M);
        for (auto& x : f) x = rng.uniform();
        const auto F = Observable::dense(f);
        const auto y = static_cast<index_t>(rng.below(M));
        const std::uint64_t n_min = 1 + rng.below(50), limit = n_min + rng.below(600);
        const double eps = 0.02 + 0.2 * rng.uniform();
        const auto s = stabilization_segment(F, T, y, n_min, eps, limit);
        EXPECT_EQ(s.K_star, oracle::band_reach(f, image, y, n_min, eps, limit));
        if (s.K_star < limit) {
            EXPECT_LT(oracle::band_reach(f, image, y, n_min, eps, s.K_star + 1), s.K_star + 1);
        }
    }
}

TEST(Stabilization, ExampleThreeSegment)
{
    // start point 70% into an even block: the means start at 1 and fall once the odd block is reached
    const std::size_t M = 100000;
    const std::uint64_t K = 1000;
    const auto F = ex03(M, K);
    const auto T = FinitePermutation::shift(M, 1);
    const index_t y = 20 * K + 700;
    const auto s = stabilization_segment(F, T, y, 50, 0.05, K);
    EXPECT_EQ(s.K_star, oracle::band_reach(F.values(), oracle::image_of(T), y, 50, 0.05, K));
    EXPECT_GE(s.K_star, K / 5);
    EXPECT_LT(s.K_star, K / 2);
}

TEST(Stabilization, IrrationalRotationIsFlat)
{
    const auto r = build_rotation(25001, 1 / std::sqrt(2.0));
    const auto F = paper_observable("tent", ObservableParams::on(25001));
    for (index_t y : {6119u, 0u, 12345u}) {
        const auto s = stabilization_segment(F, r.T, y, 1000, 0.05, 25001);
        EXPECT_EQ(s.K_star, 25001u);
        EXPECT_NEAR(s.witness, 0.5, 0.01);
    }
}

TEST(Stabilization, CommonSegmentAfterFullCycle)
{
    const std::size_t M = 5000;
    const auto r = build_rotation(M, 1 / std::sqrt(2.0));
    const auto F = paper_observable("tent", ObservableParams::on(M));
    const auto sample = stratified_start_points(M, 200, 10, 1);
    const auto c = common_stabilization_segment(F, r.T, M, 0.05, 0.05, 2 * M, sample);
    EXPECT_EQ(c.K_star, 2 * M);
    EXPECT_TRUE(c.excluded.empty());
    EXPECT_NEAR(c.witness, average(F), 0.01);
}

TEST(Stabilization, CommonSegmentExcludesTopSliver)
{
    const std::size_t M = 100000;
    const std::uint64_t K = M / 50;
    const auto F = paper_observable("linear", ObservableParams::on(M));
    const auto T = FinitePermutation::shift(M, 1);
    std::vector<index_t> all(M);
    std::iota(all.begin(), all.end(), 0);
    const auto c = common_stabilization_segment(F, T, 1, 0.05, 0.05, K, all);
    EXPECT_EQ(c.K_star, K);
    EXPECT_FALSE(c.excluded.empty());
    EXPECT_LE(c.excluded_fraction, 0.05);
    for (index_t y : c.excluded) EXPECT_GE(y, M - K);
}

TEST(Stabilization, CommonSegmentConstant)
{
    const auto sample = stratified_start_points(1000, 50, 0, 0);
    const auto c = common_stabilization_segment(Observable::constant(1000, 2.0), FinitePermutation::shift(1000, 3), 1, 0.01,
                                                0.05, 700, sample);
    EXPECT_EQ(c.K_star, 700u);
    EXPECT_TRUE(c.excluded.empty());
    EXPECT_THROW(common_stabilization_segment(Observable::constant(1000, 2.0), FinitePermutation::shift(1000, 3), 1, 0.01,
                                              1.0, 700, sample),
                 std::invalid_argument);
    EXPECT_THROW(common_stabilization_segment(Observable::constant(1000, 2.0), FinitePermutation::shift(1000, 3), 1, 0.01,
                                              0.05, 700, std::vector<index_t>{}),
                 std::invalid_argument);
}

TEST(Stabilization, ReferencePsi)
{
    EXPECT_DOUBLE_EQ(reference_psi(0.5, 0.25), 0.5);
    EXPECT_DOUBLE_EQ(reference_psi(0.3, 0.0), 0.15);
    EXPECT_THROW(reference_psi(1.5, 0.2), std::invalid_argument);

    const std::size_t M = 100000;
    const auto F = paper_observable("linear", ObservableParams::on(M));
    const auto T = FinitePermutation::shift(M, 1);
    const OrbitSums sums(F, T);
    EXPECT_NEAR(sums.mean(25000, 50000), reference_psi(0.5, 0.25), 1e-4);
    // wrapped branch
    EXPECT_NEAR(sums.mean(80000, 40000), reference_psi(0.4, 0.8), 1e-4);
}
