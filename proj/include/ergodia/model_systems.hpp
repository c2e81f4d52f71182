#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "approximation.hpp"
#include "metric_space.hpp"
#include "observable.hpp"
#include "permutation.hpp"
#include "rational.hpp"

namespace ergodia {

struct DriftSystem {
    FinitePermutation T;
    PointEmbedding<IntervalSpace> phi;
};

/// T(y) = y + 1 mod M with phi(y) = y/M in [0,1).
inline DriftSystem build_drift_system(std::size_t M)
{
    if (M < 2) throw std::invalid_argument("drift system needs M >= 2");
    return {FinitePermutation::shift(M, 1), interval_grid(M)};
}

struct RotationSystem {
    std::size_t M = 0;
    std::uint64_t P = 0;
    double t = 0.0;
    double defect = 0.0; // |P/M - t|
    FinitePermutation T;
    PointEmbedding<CircleSpace> phi;
};

/// Explicit shift. With coprime_required = false a non-coprime P is accepted and T
/// splits into gcd(P, M) cycles.
inline RotationSystem rotation_with_shift(std::size_t M, std::uint64_t P, double t, bool coprime_required = true)
{
    if (M < 2) throw std::invalid_argument("rotation needs M >= 2");
    if (P == 0 || P >= M) throw std::invalid_argument("shift P must lie in [1, M-1]");
    if (coprime_required && std::gcd<std::uint64_t, std::uint64_t>(P, M) != 1)
        throw std::invalid_argument("P and M are not coprime");
    const double defect = std::abs(static_cast<double>(P) / static_cast<double>(M) - t);
    return {M, P, t, defect, FinitePermutation::shift(M, P), circle_grid(M)};
}

/// P coprime to M in [1, M-1] minimizing |P/M - t|: scan outward from round(tM), up to 200 steps
/// each way; P = 1 if nothing coprime turns up.
inline std::uint64_t nearest_coprime_shift(std::size_t M, double t)
{
    if (M < 2) throw std::invalid_argument("rotation needs M >= 2");
    if (!(t >= 0.0 && t < 1.0)) throw std::invalid_argument("rotation parameter t must lie in [0, 1)");
    const double m = static_cast<double>(M);
    const auto center = static_cast<std::int64_t>(std::llround(t * m));
    std::optional<std::uint64_t> best;
    double best_defect = 0.0;
    for (std::int64_t d = 0; d <= 200; ++d) {
        for (std::int64_t cand : {center - d, center + d}) {
            if (cand < 1 || cand >= static_cast<std::int64_t>(M)) continue;
            const auto P = static_cast<std::uint64_t>(cand);
            if (std::gcd<std::uint64_t, std::uint64_t>(P, M) != 1) continue;
            const double defect = std::abs(static_cast<double>(P) / m - t);
            if (!best || defect < best_defect || (defect == best_defect && P < *best)) {
                best = P;
                best_defect = defect;
            }
        }
    }
    return best.value_or(1);
}

inline RotationSystem build_rotation(std::size_t M, double t)
{
    return rotation_with_shift(M, nearest_coprime_shift(M, t), t);
}

/// Lexicographically least de Bruijn sequence B(m, n), built from Lyndon words
/// (Fredricksen-Kessler-Maiorana); starts with n zeros.
inline std::vector<std::uint8_t> debruijn_sequence(unsigned m, unsigned n)
{
    if (m < 2 || m > 255) throw std::invalid_argument("alphabet size must lie in [2, 255]");
    if (n < 1) throw std::invalid_argument("window length must be at least 1");
    const double length = std::pow(static_cast<double>(m), static_cast<double>(n));
    if (length > 4294967295.0) throw std::overflow_error("de Bruijn sequence longer than 2^32 - 1");

    std::vector<std::uint8_t> seq;
    seq.reserve(static_cast<std::size_t>(length));
    std::vector<unsigned> a(n + 1, 0);
    // iterative FKM: generate Lyndon words of length dividing n in lexicographic order
    std::size_t i = 1;
    seq.push_back(0);
    for (;;) {
        // next prenecklace
        std::size_t j = n;
        while (j >= 1 && a[j] == m - 1) --j;
        if (j == 0) break;
        ++a[j];
        for (std::size_t k = j + 1; k <= n; ++k) a[k] = a[k - j];
        i = j;
        if (n % i == 0)
            for (std::size_t k = 1; k <= i; ++k) seq.push_back(static_cast<std::uint8_t>(a[k]));
    }
    return seq;
}

/// (m!)^(m^(n-1)) / m^n: number of de Bruijn cycles B(m, n) up to rotation.
inline boost::multiprecision::cpp_int debruijn_cycle_count(unsigned m, unsigned n)
{
    using boost::multiprecision::cpp_int;
    if (m < 2 || n < 1) throw std::invalid_argument("need m >= 2 and n >= 1");
    cpp_int fact = 1;
    for (unsigned k = 2; k <= m; ++k) fact *= k;
    cpp_int e = boost::multiprecision::pow(cpp_int(m), n - 1);
    if (e > 4096) throw std::overflow_error("count too large to expand");
    cpp_int num = boost::multiprecision::pow(fact, static_cast<unsigned>(e));
    return num / boost::multiprecision::pow(cpp_int(m), n);
}

enum class ShiftMode { naive, debruijn };

/// Words y(-N..N) over m letters, indexed base m little-endian:
///   index = sum_k y(k - N) m^k.
struct SymbolicSystem {
    unsigned m = 2;
    int N = 0;
    ShiftMode mode = ShiftMode::naive;
    std::size_t M = 0;
    FinitePermutation T;
    PointEmbedding<SymbolicSpace> phi;
    /// debruijn mode: the sequence and the window start of each word
    std::vector<std::uint8_t> sequence;
    std::vector<index_t> window_start;
};

inline constexpr std::size_t symbolic_size_limit = std::size_t{1} << 28;

inline SymbolicSystem build_bernoulli(unsigned m, int N, ShiftMode mode)
{
    if (N < 0) throw std::invalid_argument("half-window N must be non-negative");
    const unsigned L = static_cast<unsigned>(2 * N + 1);
    const double size = std::pow(static_cast<double>(m), static_cast<double>(L));
    if (size > static_cast<double>(symbolic_size_limit)) throw std::overflow_error("word space exceeds the memory budget");
    const auto M = static_cast<std::size_t>(size);
    auto phi = symbolic_words(m, N);
    std::uint64_t top = 1;
    for (unsigned k = 1; k < L; ++k) top *= m;

    std::vector<index_t> image(M);
    std::vector<std::uint8_t> seq;
    std::vector<index_t> start;
    if (mode == ShiftMode::naive) {
        for (std::uint64_t y = 0; y < M; ++y) image[y] = static_cast<index_t>(y / m + (y % m) * top);
    } else {
        seq = debruijn_sequence(m, L);
        start.assign(M, 0);
        std::uint64_t code = 0;
        for (unsigned k = L; k-- > 0;) code = code * m + seq[k];
        for (std::size_t i = 0; i < M; ++i) {
            const std::uint64_t next = code / m + seq[(i + L) % M] * top;
            image[code] = static_cast<index_t>(next);
            start[code] = static_cast<index_t>(i);
            code = next;
        }
    }
    return {m, N, mode, M, FinitePermutation(std::move(image)), std::move(phi), std::move(seq), std::move(start)};
}

/// f(x) = 10x/9 on [0, 0.9), 10(1 - x) on [0.9, 1); integral 1/2.
inline double tent(double x)
{
    x = CircleSpace::reduce(x);
    return x < 0.9 ? 10.0 * x / 9.0 : 10.0 * (1.0 - x);
}

/// (1/3)[f(x - 1/3) + f(x) + f(x + 1/3)] on the circle: the orbit mean of f under x -> x + 2/3.
inline double three_point_average(double (*f)(double), double x)
{
    return (f(x - 1.0 / 3.0) + f(x) + f(x + 1.0 / 3.0)) / 3.0;
}

struct ObservableParams {
    std::size_t M = 0;
    std::optional<double> amplitude; // ex01, default M
    std::optional<std::uint64_t> K;  // ex03 block length
    std::optional<unsigned> m;       // chi0 alphabet
    std::optional<int> N;            // chi0 half-window
    std::optional<double> value;     // constant

    static ObservableParams on(std::size_t M)
    {
        ObservableParams p;
        p.M = M;
        return p;
    }
};

/// Number of full blocks used by the ex03 observable: floor(M/K) rounded down to even.
inline std::uint64_t ex03_blocks(std::size_t M, std::uint64_t K)
{
    const std::uint64_t R = M / K;
    return R - R % 2;
}

/// Observables of the worked examples, by name:
///   ex01      +A on even y, -A on odd y (A defaults to M)
///   delta     M at 0, 0 elsewhere
///   ex03      1 on even-numbered K-blocks below R K, 0 elsewhere
///   linear    y/M
///   tent      tent(y/M)
///   chi0      1 if the word's coordinate 0 is 1
///   constant  c
inline Observable paper_observable(const std::string& name, const ObservableParams& p)
{
    const std::size_t M = p.M;
    if (M == 0) throw std::invalid_argument("observable '" + name + "' needs M");
    if (name == "ex01") {
        const double A = p.amplitude.value_or(static_cast<double>(M));
        const Rational Aq = p.amplitude ? Rational(*p.amplitude) : Rational(static_cast<long long>(M));
        return Observable::rule(
            M, name, [A](index_t y) { return y % 2 == 0 ? A : -A; },
            [Aq](index_t y) { return y % 2 == 0 ? Aq : Rational(-Aq); });
    }
    if (name == "delta") {
        const double A = static_cast<double>(M);
        return Observable::rule(
            M, name, [A](index_t y) { return y == 0 ? A : 0.0; },
            [M](index_t y) { return y == 0 ? Rational(static_cast<long long>(M)) : Rational(0); });
    }
    if (name == "ex03") {
        if (!p.K || *p.K == 0) throw std::invalid_argument("observable 'ex03' needs a positive block length K");
        const std::uint64_t K = *p.K;
        if (K > M) throw std::invalid_argument("ex03 block length exceeds M");
        const std::uint64_t limit = ex03_blocks(M, K) * K;
        const auto f = [K, limit](index_t y) { return y < limit && (y / K) % 2 == 0 ? 1.0 : 0.0; };
        return Observable::rule(M, name, f, [f](index_t y) { return Rational(static_cast<int>(f(y))); });
    }
    if (name == "linear") {
        const double m = static_cast<double>(M);
        const auto Mi = static_cast<long long>(M);
        return Observable::rule(
            M, name, [m](index_t y) { return static_cast<double>(y) / m; },
            [Mi](index_t y) { return Rational(static_cast<long long>(y), Mi); });
    }
    if (name == "tent") {
        const double m = static_cast<double>(M);
        const auto Mi = static_cast<long long>(M);
        return Observable::rule(
            M, name, [m](index_t y) { return tent(static_cast<double>(y) / m); },
            [Mi](index_t y) {
                // 10y/(9M) below 0.9, 10(M - y)/M above
                const auto yi = static_cast<long long>(y);
                if (10 * yi < 9 * Mi) return Rational(10 * yi, 9 * Mi);
                return Rational(10 * (Mi - yi), Mi);
            });
    }
    if (name == "chi0") {
        if (!p.m || !p.N) throw std::invalid_argument("observable 'chi0' needs m and N");
        const std::uint64_t m = *p.m;
        std::uint64_t place = 1;
        for (int k = 0; k < *p.N; ++k) place *= m;
        const auto f = [m, place](index_t y) { return (y / place) % m == 1 ? 1.0 : 0.0; };
        return Observable::rule(M, name, f, [f](index_t y) { return Rational(static_cast<int>(f(y))); });
    }
    if (name == "constant") {
        if (!p.value) throw std::invalid_argument("observable 'constant' needs a value");
        return Observable::constant(M, *p.value);
    }
    throw std::invalid_argument("unknown observable '" + name + "'");
}

/// |{0 <= j < k : y(j) = 1}| / k for k = 1..kmax.
inline std::vector<double> block_density(const Word& y, int kmax)
{
    const int N = y.half_window();
    if (kmax < 1) throw std::invalid_argument("prefix length must be at least 1");
    if (kmax > N) throw std::invalid_argument("prefix length exceeds the half-window");
    std::vector<double> out;
    int ones = 0;
    for (int k = 1; k <= kmax; ++k) {
        ones += y(k - 1) == 1 ? 1 : 0;
        out.push_back(static_cast<double>(ones) / static_cast<double>(k));
    }
    return out;
}

} // namespace ergodia
