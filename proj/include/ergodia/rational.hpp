#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace ergodia {

/// Exact rational arithmetic used by the oracle-grade code paths.
using Rational = boost::multiprecision::cpp_rational;

/// Arithmetic used when accumulating means and sums.
enum class ArithmeticMode { floating, exact };

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(double x) { return x; }

/// A positive rational horizon scale k, so that n ranges over 1..floor(k*M).
///
/// Kept as an integer fraction so floor(k*M) never depends on binary rounding.
struct Scale {
    std::uint64_t num = 1;
    std::uint64_t den = 1;

    /// floor(k * M)
    [[nodiscard]] std::uint64_t horizon(std::uint64_t M) const
    {
        const auto product = static_cast<unsigned __int128>(num) * M;
        return static_cast<std::uint64_t>(product / den);
    }

    [[nodiscard]] double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    /// Parses "p/q", an integer, or a plain decimal such as "0.002".
    static Scale parse(std::string_view text)
    {
        const auto fail = [&] { throw std::invalid_argument("invalid scale: '" + std::string(text) + "'"); };
        if (text.empty()) fail();

        const auto parse_uint = [&](std::string_view digits) {
            if (digits.empty() || digits.size() > 18) fail();
            std::uint64_t v = 0;
            for (char c : digits) {
                if (c < '0' || c > '9') fail();
                v = v * 10 + static_cast<std::uint64_t>(c - '0');
            }
            return v;
        };

        Scale s;
        if (auto slash = text.find('/'); slash != std::string_view::npos) {
            s.num = parse_uint(text.substr(0, slash));
            s.den = parse_uint(text.substr(slash + 1));
        } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
            const auto whole = text.substr(0, dot);
            const auto frac = text.substr(dot + 1);
            std::uint64_t den = 1;
            for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
            s.num = (whole.empty() ? 0 : parse_uint(whole)) * den + (frac.empty() ? 0 : parse_uint(frac));
            s.den = den;
        } else {
            s.num = parse_uint(text);
            s.den = 1;
        }
        if (s.den == 0 || s.num == 0) throw std::invalid_argument("scale must be a positive rational");
        return s;
    }

    [[nodiscard]] std::string to_string() const { return std::to_string(num) + "/" + std::to_string(den); }
};

} // namespace ergodia
