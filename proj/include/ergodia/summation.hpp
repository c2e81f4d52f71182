#pragma once

#include <cmath>
#include <span>

#include "rational.hpp"

namespace ergodia {

/// Neumaier-compensated running sum. Exact sums of integers below 2^53 stay exact.
class CompensatedSum {
public:
    CompensatedSum& operator+=(double value)
    {
        const double t = sum_ + value;
        if (std::abs(sum_) >= std::abs(value))
            compensation_ += (sum_ - t) + value;
        else
            compensation_ += (value - t) + sum_;
        sum_ = t;
        return *this;
    }

    CompensatedSum& operator-=(double value) { return *this += -value; }

    [[nodiscard]] double value() const { return sum_ + compensation_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

/// Accumulator selected by value type: compensated for double, exact for Rational.
template <typename Real>
struct Accumulator;

template <>
struct Accumulator<double> {
    CompensatedSum sum;
    void add(double v) { sum += v; }
    [[nodiscard]] double value() const { return sum.value(); }
};

template <>
struct Accumulator<Rational> {
    Rational sum{0};
    void add(const Rational& v) { sum += v; }
    [[nodiscard]] const Rational& value() const { return sum; }
};

inline double compensated_total(std::span<const double> values)
{
    CompensatedSum s;
    for (double v : values) s += v;
    return s.value();
}

} // namespace ergodia
