#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ergodia {

/// Closed set on [0,1] or the circle: finite union of closed intervals [a,b] with 0 <= a <= b <= 1.
/// A circle arc across 0 is given as two pieces.
struct IntervalUnion {
    std::vector<std::pair<double, double>> pieces;
};

/// Cylinder S_a = {x : x(n) = a(n) for n in dom(a)}.
struct Cylinder {
    std::vector<std::pair<int, std::uint8_t>> fixed; // (coordinate n, symbol)
};

/// Finite union of cylinders.
struct CylinderUnion {
    std::vector<Cylinder> cylinders;
};

namespace detail {

inline std::vector<std::pair<double, double>> merged(std::vector<std::pair<double, double>> pieces)
{
    for (const auto& [a, b] : pieces)
        if (!(0.0 <= a && a <= b && b <= 1.0)) throw std::invalid_argument("interval pieces must satisfy 0 <= a <= b <= 1");
    std::sort(pieces.begin(), pieces.end());
    std::vector<std::pair<double, double>> out;
    for (const auto& p : pieces) {
        if (!out.empty() && p.first <= out.back().second)
            out.back().second = std::max(out.back().second, p.second);
        else
            out.push_back(p);
    }
    return out;
}

inline double total_length(const IntervalUnion& C)
{
    double len = 0.0;
    for (const auto& [a, b] : merged(C.pieces)) len += b - a;
    return len;
}

} // namespace detail

/// R/Z with the arc-length metric, Lebesgue measure.
struct CircleSpace {
    using Point = double;
    static constexpr const char* kind = "circle";

    [[nodiscard]] static double reduce(double x)
    {
        double r = x - std::floor(x);
        return r >= 1.0 ? 0.0 : r;
    }

    [[nodiscard]] static double distance(double x1, double x2)
    {
        const double d = reduce(x1 - x2);
        return std::min(d, 1.0 - d);
    }

    [[nodiscard]] static double ball_measure(double /*center*/, double r)
    {
        if (r < 0.0) return 0.0;
        return std::min(1.0, 2.0 * r);
    }

    [[nodiscard]] static double distance_to(double x, const IntervalUnion& C)
    {
        if (C.pieces.empty()) throw std::invalid_argument("empty closed set");
        double best = 1.0;
        for (const auto& [a, b] : C.pieces) {
            const double p = reduce(x);
            if (a <= p && p <= b) return 0.0;
            best = std::min({best, distance(p, a), distance(p, b)});
        }
        return best;
    }

    [[nodiscard]] static double measure(const IntervalUnion& C) { return detail::total_length(C); }
};

/// [0,1] with |x1 - x2|, Lebesgue measure.
struct IntervalSpace {
    using Point = double;
    static constexpr const char* kind = "unit-interval";

    [[nodiscard]] static double distance(double x1, double x2) { return std::abs(x1 - x2); }

    [[nodiscard]] static double ball_measure(double center, double r)
    {
        if (r < 0.0) return 0.0;
        return std::max(0.0, std::min(1.0, center + r) - std::max(0.0, center - r));
    }

    [[nodiscard]] static double distance_to(double x, const IntervalUnion& C)
    {
        if (C.pieces.empty()) throw std::invalid_argument("empty closed set");
        double best = 2.0;
        for (const auto& [a, b] : C.pieces) best = std::min(best, std::abs(x - std::clamp(x, a, b)));
        return best;
    }

    [[nodiscard]] static double measure(const IntervalUnion& C) { return detail::total_length(C); }
};

/// Word on the window -W..W; symbols[k] = x(k - W).
struct Word {
    std::vector<std::uint8_t> symbols;

    [[nodiscard]] int half_window() const { return static_cast<int>(symbols.size() / 2); }
    [[nodiscard]] std::uint8_t operator()(int n) const { return symbols.at(static_cast<std::size_t>(n + half_window())); }
    friend bool operator==(const Word&, const Word&) = default;
};

/// Sigma_m^Z seen through the window |n| <= W, uniform product measure.
class SymbolicSpace {
public:
    using Point = Word;
    static constexpr const char* kind = "symbolic";

    SymbolicSpace(unsigned m, int W) : m_(m), W_(W)
    {
        if (m < 2 || m > 255) throw std::invalid_argument("alphabet size must lie in [2, 255]");
        if (W < 0) throw std::invalid_argument("window must be non-negative");
    }

    [[nodiscard]] unsigned alphabet() const { return m_; }
    [[nodiscard]] int window() const { return W_; }
    [[nodiscard]] std::size_t word_length() const { return static_cast<std::size_t>(2 * W_ + 1); }

    /// 2^-min{|n| : x1(n) != x2(n)}, 0 when the words agree on the window.
    [[nodiscard]] double distance(const Word& x1, const Word& x2) const
    {
        check(x1);
        check(x2);
        for (int k = 0; k <= W_; ++k)
            if (x1(k) != x2(k) || x1(-k) != x2(-k)) return std::ldexp(1.0, -k);
        return 0.0;
    }

    /// Closed ball: the cylinder fixing all |n| < k where k is the least integer with 2^-k <= r.
    [[nodiscard]] double ball_measure(const Word& /*center*/, double r) const
    {
        if (r < 0.0) return 0.0;
        if (r >= 1.0) return 1.0;
        const int k = r == 0.0 ? W_ + 1 : static_cast<int>(std::ceil(-std::log2(r) - 1e-12));
        const int fixed = k > W_ ? 2 * W_ + 1 : 2 * k - 1;
        return std::pow(static_cast<double>(m_), -fixed);
    }

    [[nodiscard]] double distance_to(const Word& x, const CylinderUnion& C) const
    {
        check(x);
        if (C.cylinders.empty()) throw std::invalid_argument("empty closed set");
        double best = 1.0;
        for (const auto& cyl : C.cylinders) {
            validate(cyl);
            int first = W_ + 1;
            for (const auto& [n, s] : cyl.fixed)
                if (x(n) != s) first = std::min(first, std::abs(n));
            if (first > W_) return 0.0;
            best = std::min(best, std::ldexp(1.0, -first));
        }
        return best;
    }

    /// nu of a union of cylinders, by enumeration over the joint domain (at most 2^24 cells).
    [[nodiscard]] double measure(const CylinderUnion& C) const
    {
        std::vector<int> dom;
        for (const auto& cyl : C.cylinders) {
            validate(cyl);
            for (const auto& f : cyl.fixed) dom.push_back(f.first);
        }
        std::sort(dom.begin(), dom.end());
        dom.erase(std::unique(dom.begin(), dom.end()), dom.end());
        const double cells = std::pow(static_cast<double>(m_), static_cast<double>(dom.size()));
        if (cells > 16777216.0) throw std::invalid_argument("cylinder union too large to enumerate");
        const auto total = static_cast<std::uint64_t>(cells);
        std::vector<std::uint8_t> a(dom.size());
        std::uint64_t hits = 0;
        for (std::uint64_t code = 0; code < total; ++code) {
            std::uint64_t c = code;
            for (auto& s : a) {
                s = static_cast<std::uint8_t>(c % m_);
                c /= m_;
            }
            const auto symbol_at = [&](int n) {
                return a[static_cast<std::size_t>(std::lower_bound(dom.begin(), dom.end(), n) - dom.begin())];
            };
            for (const auto& cyl : C.cylinders) {
                bool inside = true;
                for (const auto& [n, s] : cyl.fixed) inside = inside && symbol_at(n) == s;
                if (inside) {
                    ++hits;
                    break;
                }
            }
        }
        return static_cast<double>(hits) / cells;
    }

    /// Base-m little-endian index of (x(-W), ..., x(W)).
    [[nodiscard]] std::uint64_t encode(const Word& x) const
    {
        check(x);
        std::uint64_t code = 0;
        for (std::size_t k = x.symbols.size(); k-- > 0;) code = code * m_ + x.symbols[k];
        return code;
    }

    [[nodiscard]] Word decode(std::uint64_t code) const
    {
        Word x;
        x.symbols.resize(word_length());
        for (auto& s : x.symbols) {
            s = static_cast<std::uint8_t>(code % m_);
            code /= m_;
        }
        return x;
    }

private:
    void check(const Word& x) const
    {
        if (x.symbols.size() != word_length()) throw std::invalid_argument("word length does not match the window");
    }

    void validate(const Cylinder& c) const
    {
        for (const auto& [n, s] : c.fixed) {
            if (std::abs(n) > W_) throw std::invalid_argument("cylinder coordinate outside the window");
            if (s >= m_) throw std::invalid_argument("cylinder symbol outside the alphabet");
        }
    }

    unsigned m_;
    int W_;
};

} // namespace ergodia
