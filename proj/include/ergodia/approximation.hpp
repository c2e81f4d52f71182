#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "metric_space.hpp"
#include "parallel.hpp"
#include "permutation.hpp"
#include "summation.hpp"

namespace ergodia {

/// phi: Y -> X, an injective placement of the finite space in a model space.
template <typename Space>
class PointEmbedding {
public:
    using Point = typename Space::Point;
    using Map = std::function<Point(index_t)>;

    PointEmbedding(Space space, std::size_t M, Map embed) : space_(std::move(space)), M_(M), embed_(std::move(embed))
    {
        if (M == 0) throw std::invalid_argument("embedding of an empty space");
        if (!embed_) throw std::invalid_argument("embedding map is empty");
    }

    [[nodiscard]] const Space& space() const { return space_; }
    [[nodiscard]] std::size_t size() const { return M_; }
    [[nodiscard]] Point operator()(index_t y) const { return embed_(y); }

private:
    Space space_;
    std::size_t M_;
    Map embed_;
};

/// phi(y) = y/M on the circle.
inline PointEmbedding<CircleSpace> circle_grid(std::size_t M)
{
    const double m = static_cast<double>(M);
    return {CircleSpace{}, M, [m](index_t y) { return static_cast<double>(y) / m; }};
}

/// phi(y) = y/M on [0,1].
inline PointEmbedding<IntervalSpace> interval_grid(std::size_t M)
{
    const double m = static_cast<double>(M);
    return {IntervalSpace{}, M, [m](index_t y) { return static_cast<double>(y) / m; }};
}

/// Y = all words on -N..N, y decoded from its base-m index.
inline PointEmbedding<SymbolicSpace> symbolic_words(unsigned m, int N)
{
    SymbolicSpace space(m, N);
    const double M = std::pow(static_cast<double>(m), 2 * N + 1);
    if (M > 4294967295.0) throw std::overflow_error("word space does not fit the index type");
    return {space, static_cast<std::size_t>(M), [space](index_t y) { return space.decode(y); }};
}

/// Injectivity check for an embedding (sort-and-compare on the images).
template <typename Space>
bool is_injective(const PointEmbedding<Space>& phi)
{
    if constexpr (std::is_same_v<typename Space::Point, double>) {
        std::vector<double> pts(phi.size());
        for (std::size_t y = 0; y < pts.size(); ++y) pts[y] = phi(static_cast<index_t>(y));
        std::sort(pts.begin(), pts.end());
        return std::adjacent_find(pts.begin(), pts.end()) == pts.end();
    } else {
        std::vector<std::uint64_t> codes(phi.size());
        for (std::size_t y = 0; y < codes.size(); ++y) codes[y] = phi.space().encode(phi(static_cast<index_t>(y)));
        std::sort(codes.begin(), codes.end());
        return std::adjacent_find(codes.begin(), codes.end()) == codes.end();
    }
}

template <typename Point>
struct TestFunction {
    std::string name;
    std::function<double(const Point&)> f;
    std::optional<double> integral;
};

/// Integral over [0,1] by adaptive Gauss-Kronrod; the oracle for test functions without a closed form.
inline double reference_integral(const std::function<double(double)>& f)
{
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, 1.0, 15, 1e-14);
}

/// x^k on [0,1], integral 1/(k+1).
inline TestFunction<double> monomial(unsigned k)
{
    return {"x^" + std::to_string(k), [k](const double& x) { return std::pow(x, static_cast<double>(k)); },
            1.0 / static_cast<double>(k + 1)};
}

/// Indicator of the cylinder S_0 = {x : x(0) = 1}; integral 1/m.
inline TestFunction<Word> coordinate_indicator(unsigned m)
{
    return {"chi0", [](const Word& x) { return x(0) == 1 ? 1.0 : 0.0; }, 1.0 / static_cast<double>(m)};
}

/// |(1/M) sum_y f(phi(y)) - integral f| for each test function.
template <typename Space>
std::vector<double> weak_star_error(const PointEmbedding<Space>& phi,
                                    const std::vector<TestFunction<typename Space::Point>>& tests)
{
    std::vector<double> out;
    out.reserve(tests.size());
    for (const auto& t : tests) {
        if (!t.integral) throw std::invalid_argument("test function '" + t.name + "' has no reference integral");
        CompensatedSum sum;
        for (std::size_t y = 0; y < phi.size(); ++y) sum += t.f(phi(static_cast<index_t>(y)));
        out.push_back(std::abs(sum.value() / static_cast<double>(phi.size()) - *t.integral));
    }
    return out;
}

using ClosedSet = std::variant<IntervalUnion, CylinderUnion>;

/// |(1/M) |{y : dist(phi(y), C) < eps}| - nu(C)|.
template <typename Space>
double thickening_measure_error(const PointEmbedding<Space>& phi, const ClosedSet& C, double eps)
{
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
    return std::visit(
        [&](const auto& set) -> double {
            using Set = std::decay_t<decltype(set)>;
            const Space& X = phi.space();
            if constexpr (requires { X.distance_to(phi(0), set); X.measure(set); }) {
                std::size_t inside = 0;
                for (std::size_t y = 0; y < phi.size(); ++y)
                    if (X.distance_to(phi(static_cast<index_t>(y)), set) < eps) ++inside;
                return std::abs(static_cast<double>(inside) / static_cast<double>(phi.size()) - X.measure(set));
            } else {
                (void)sizeof(Set);
                throw std::invalid_argument(std::string("unsupported set descriptor for a ") + Space::kind + " space");
            }
        },
        C);
}

/// Points y with rho(phi(T y), tau(phi y)) > eps, ascending.
template <typename Space>
std::vector<index_t> map_mismatch_set(const PointEmbedding<Space>& phi, const FinitePermutation& T,
                                      const std::function<typename Space::Point(const typename Space::Point&)>& tau,
                                      double eps, unsigned threads = 1)
{
    if (phi.size() != T.size()) throw std::invalid_argument("embedding and permutation live on different spaces");
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
    std::vector<std::uint8_t> bad(T.size(), 0);
    parallel_for(T.size(), threads, [&](std::size_t y) {
        const auto i = static_cast<index_t>(y);
        bad[y] = phi.space().distance(phi(T(i)), tau(phi(i))) > eps ? 1 : 0;
    });
    std::vector<index_t> out;
    for (std::size_t y = 0; y < bad.size(); ++y)
        if (bad[y]) out.push_back(static_cast<index_t>(y));
    return out;
}

/// (1/M) |{y : rho(phi(T y), tau(phi y)) > eps}|
template <typename Space>
double map_mismatch_fraction(const PointEmbedding<Space>& phi, const FinitePermutation& T,
                             const std::function<typename Space::Point(const typename Space::Point&)>& tau, double eps,
                             unsigned threads = 1)
{
    return static_cast<double>(map_mismatch_set(phi, T, tau, eps, threads).size()) / static_cast<double>(T.size());
}

/// x -> x + t mod 1
inline std::function<double(const double&)> rotation_map(double t)
{
    return [t](const double& x) { return CircleSpace::reduce(x + t); };
}

/// x -> 2x mod 1
inline std::function<double(const double&)> doubling_map()
{
    return [](const double& x) { return CircleSpace::reduce(2.0 * x); };
}

inline std::function<double(const double&)> identity_map()
{
    return [](const double& x) { return x; };
}

/// Left shift on the window, the coordinate entering at +W set to 0.
inline std::function<Word(const Word&)> symbolic_shift_map()
{
    return [](const Word& x) {
        Word out = x;
        if (out.symbols.empty()) return out;
        std::rotate(out.symbols.begin(), out.symbols.begin() + 1, out.symbols.end());
        out.symbols.back() = 0;
        return out;
    };
}

struct WeakStarEntry {
    std::string test;
    double error = 0.0;
};

struct ThickeningEntry {
    std::string set;
    double eps = 0.0;
    double error = 0.0;
};

struct MismatchEntry {
    double eps = 0.0;
    double fraction = 0.0;
    std::size_t count = 0;
};

struct ApproximationReport {
    std::vector<WeakStarEntry> weak_star_errors;
    std::vector<ThickeningEntry> thickening_errors;
    std::vector<MismatchEntry> map_mismatch;
    std::size_t cycle_count = 0;
    std::vector<std::size_t> cycle_lengths;
    std::vector<index_t> transitivity_mismatch;
};

} // namespace ergodia
