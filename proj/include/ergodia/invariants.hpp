#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "approximation.hpp"
#include "integrability.hpp"
#include "means.hpp"
#include "model_systems.hpp"
#include "random.hpp"
#include "stabilization.hpp"
#include "surgery.hpp"
#include "synthesis.hpp"

namespace ergodia {

struct InvariantFailure {
    std::string suite;
    std::string invariant;
    std::string detail;
};

using Failures = std::vector<InvariantFailure>;

inline Failures check_bijection_fixture(std::span<const index_t> image, const std::string& label)
{
    if (auto defect = check_bijection(image)) return {{"permutation", "bijection", label + ": " + *defect}};
    return {};
}

/// Orbit periods, orbit means and, for transitive T, A_M(y) = Av(F) at sampled points.
inline Failures check_core(const Observable& F, const FinitePermutation& T, std::span<const index_t> sample,
                           ArithmeticMode mode)
{
    Failures out;
    const auto idx = T.cycle_index();
    std::uint64_t total = 0;
    for (std::size_t c = 0; c < idx->cycle_count(); ++c) total += idx->cycle_length[c];
    if (total != T.size()) out.push_back({"core", "cycle-partition", "cycle lengths do not add up to M"});

    for (index_t y : sample) {
        if (apply_power(T, y, period(T, y)) != y)
            out.push_back({"core", "period", "T^p(y) != y at y = " + std::to_string(y)});
    }
    if (!T.is_transitive()) return out;

    if (mode == ArithmeticMode::exact) {
        const Rational av = average<Rational>(F);
        for (index_t y : sample) {
            const auto s = ergodic_means_prefix<Rational>(F, T, y, T.size());
            if (s[T.size()] != av)
                out.push_back({"core", "full-cycle-mean", "A_M != Av(F) exactly at y = " + std::to_string(y)});
        }
    } else {
        const double av = average(F);
        const OrbitSums sums(F, T);
        const double scale = std::max(1.0, average_abs(F));
        for (index_t y : sample) {
            if (std::abs(sums.mean(y, T.size()) - av) > 1e-9 * scale)
                out.push_back({"core", "full-cycle-mean", "A_M != Av(F) at y = " + std::to_string(y)});
        }
    }
    return out;
}

/// |A_K - A_L| <= U + V everywhere; exact comparison at sampled points in rational mode.
inline Failures check_stabilization(const Observable& F, const FinitePermutation& T, std::uint64_t K, std::uint64_t L,
                                    std::span<const index_t> sample, ArithmeticMode mode)
{
    Failures out;
    const auto report = sup_discrepancy(F, T, K, L);
    if (report.bound_violations != 0)
        out.push_back({"stabilization", "discrepancy-bound",
                       std::to_string(report.bound_violations) + " points exceed U + V"});
    if (mode == ArithmeticMode::exact) {
        for (index_t y : sample) {
            const auto t = discrepancy_terms<Rational>(F, T, y, K, L);
            if (t.gap > t.U + t.V)
                out.push_back({"stabilization", "discrepancy-bound", "exact violation at y = " + std::to_string(y)});
        }
    }
    return out;
}

inline Failures check_integrability(const Observable& F)
{
    Failures out;
    const auto p = integrability_profile(F);
    for (std::size_t i = 0; i < p.tail.size(); ++i) {
        if (p.tail[i] > p.av_abs * (1 + 1e-12) + 1e-300)
            out.push_back({"integrability", "tail-below-mean", "tail mass exceeds Av|F|"});
        if (i > 0 && p.tail[i] > p.tail[i - 1])
            out.push_back({"integrability", "tail-monotone", "tail mass increases with k"});
    }
    if (p.tail.back() != 0.0) out.push_back({"integrability", "tail-vanishes", "tail mass above 2 max|F| is nonzero"});
    return out;
}

inline Failures check_symbolic(unsigned m, int N)
{
    Failures out;
    const auto naive = build_bernoulli(m, N, ShiftMode::naive);
    const auto L = static_cast<std::uint64_t>(2 * N + 1);
    const auto idx = naive.T.cycle_index();
    for (std::size_t c = 0; c < idx->cycle_count(); ++c)
        if (L % idx->cycle_length[c] != 0)
            out.push_back({"symbolic", "naive-orbit-length", "orbit length does not divide 2N+1"});

    const auto db = build_bernoulli(m, N, ShiftMode::debruijn);
    std::unordered_set<std::uint64_t> windows;
    const auto& s = db.sequence;
    for (std::size_t i = 0; i < s.size(); ++i) {
        std::uint64_t code = 0;
        for (std::uint64_t k = L; k-- > 0;) code = code * m + s[(i + k) % s.size()];
        windows.insert(code);
    }
    if (windows.size() != s.size()) out.push_back({"symbolic", "debruijn-windows", "repeated window"});
    if (!db.T.is_transitive()) out.push_back({"symbolic", "debruijn-transitive", "window successor is not one cycle"});
    return out;
}

inline Failures check_surgery(const FinitePermutation& T)
{
    Failures out;
    const auto r = make_transitive(T);
    if (!r.C.is_transitive()) out.push_back({"surgery", "single-cycle", "make_transitive left several cycles"});
    const std::size_t expect = r.cycle_count >= 2 ? r.cycle_count : 0;
    if (r.B.size() != expect)
        out.push_back({"surgery", "mismatch-count",
                       "|B| = " + std::to_string(r.B.size()) + ", expected " + std::to_string(expect)});
    return out;
}

inline Failures check_synthesis(std::size_t M, double t)
{
    Failures out;
    std::vector<double> targets(M);
    for (std::size_t y = 0; y < M; ++y) targets[y] = CircleSpace::reduce(static_cast<double>(y) / static_cast<double>(M) + t);
    const auto r = synthesize_permutation(targets, 2.0 / static_cast<double>(M));
    if (check_bijection(r.T.image())) out.push_back({"approximation", "synthesis-bijection", "T_delta is not a permutation"});
    if (static_cast<double>(r.mismatch_count) > 0.01 * static_cast<double>(M))
        out.push_back({"approximation", "synthesis-mismatch", std::to_string(r.mismatch_count) + " unmatched points"});
    return out;
}

inline Failures check_weak_star(std::size_t M)
{
    Failures out;
    const auto phi = interval_grid(M);
    std::vector<TestFunction<double>> tests;
    for (unsigned k = 0; k <= 3; ++k) tests.push_back(monomial(k));
    const auto errs = weak_star_error(phi, tests);
    for (std::size_t i = 0; i < errs.size(); ++i)
        if (errs[i] > 2.0 / static_cast<double>(M))
            out.push_back({"approximation", "weak-star", tests[i].name + " error above 2/M"});
    return out;
}

/// The default suite at space size M: every module on small standard fixtures.
inline Failures run_default_suite(std::size_t M, ArithmeticMode mode, std::uint64_t seed)
{
    Failures out;
    const auto append = [&](Failures f) { out.insert(out.end(), f.begin(), f.end()); };
    const auto sample = random_start_points(M, 4, seed);

    const auto drift = FinitePermutation::shift(M, 1);
    const auto rot = build_rotation(M, 1.0 / std::sqrt(2.0));
    const auto lin = paper_observable("linear", ObservableParams::on(M));
    const auto tent_obs = paper_observable("tent", ObservableParams::on(M));
    const auto ex01 = paper_observable("ex01", ObservableParams::on(M));

    append(check_bijection_fixture(drift.image(), "drift"));
    append(check_bijection_fixture(rot.T.image(), "rotation"));
    append(check_core(lin, drift, sample, mode));
    append(check_core(tent_obs, rot.T, sample, mode));
    append(check_core(ex01, drift, sample, mode));
    const std::uint64_t L = std::max<std::uint64_t>(1, M / 2);
    append(check_stabilization(tent_obs, rot.T, L + std::max<std::uint64_t>(1, M / 100), L, sample, mode));
    append(check_integrability(lin));
    append(check_integrability(paper_observable("delta", ObservableParams::on(M))));
    append(check_symbolic(2, 3));
    append(check_surgery(FinitePermutation::from_cycles(M, {{0, 1}, {2, 3}})));
    append(check_surgery(build_bernoulli(2, 2, ShiftMode::naive).T));
    append(check_synthesis(M, 1.0 / std::sqrt(2.0)));
    append(check_weak_star(M));
    return out;
}

} // namespace ergodia
