#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "permutation.hpp"
#include "rational.hpp"

namespace ergodia {

/// Observables at or below this size are stored densely when materialized.
inline constexpr std::size_t dense_storage_limit = 10'000'000;

/// A real-valued function F on Y, held either as a dense array or as a closed-form rule.
/// A rule may also carry an exact rational form; without one, exact evaluation
/// converts the binary double exactly.
class Observable {
public:
    using Rule = std::function<double(index_t)>;
    using ExactRule = std::function<Rational(index_t)>;

    static Observable dense(std::vector<double> values, std::string name = "dense")
    {
        if (values.empty()) throw std::invalid_argument("observable on an empty space");
        Observable F;
        F.size_ = values.size();
        F.name_ = std::move(name);
        F.dense_ = std::make_shared<const std::vector<double>>(std::move(values));
        return F;
    }

    static Observable rule(std::size_t M, std::string name, Rule f, ExactRule exact = {})
    {
        if (M == 0) throw std::invalid_argument("observable on an empty space");
        if (!f) throw std::invalid_argument("observable rule is empty");
        Observable F;
        F.size_ = M;
        F.name_ = std::move(name);
        F.rule_ = std::move(f);
        F.exact_ = std::move(exact);
        return F;
    }

    static Observable constant(std::size_t M, double c)
    {
        return rule(M, "constant", [c](index_t) { return c; }, [c](index_t) { return Rational(c); });
    }

    [[nodiscard]] std::size_t size() const { return size_; }
    [[nodiscard]] const std::string& name() const { return name_; }
    [[nodiscard]] bool is_dense() const { return dense_ != nullptr; }
    [[nodiscard]] bool has_exact_rule() const { return static_cast<bool>(exact_); }

    [[nodiscard]] double operator()(index_t y) const { return dense_ ? (*dense_)[y] : rule_(y); }

    [[nodiscard]] double at(index_t y) const
    {
        if (y >= size_) throw std::out_of_range("observable index out of range");
        return (*this)(y);
    }

    [[nodiscard]] Rational exact(index_t y) const { return exact_ ? exact_(y) : Rational((*this)(y)); }

    template <typename Real>
    [[nodiscard]] Real value(index_t y) const
    {
        if constexpr (std::is_same_v<Real, Rational>)
            return exact(y);
        else
            return (*this)(y);
    }

    /// Dense copy (keeps the exact rule). Rules above the storage limit stay rules.
    [[nodiscard]] Observable materialized() const
    {
        if (dense_ || size_ > dense_storage_limit) return *this;
        Observable F = dense(values(), name_);
        F.exact_ = exact_;
        return F;
    }

    [[nodiscard]] std::vector<double> values() const
    {
        if (dense_) return *dense_;
        std::vector<double> out(size_);
        for (std::size_t y = 0; y < size_; ++y) out[y] = rule_(static_cast<index_t>(y));
        return out;
    }

    [[nodiscard]] std::vector<Rational> exact_values() const
    {
        std::vector<Rational> out(size_);
        for (std::size_t y = 0; y < size_; ++y) out[y] = exact(static_cast<index_t>(y));
        return out;
    }

private:
    Observable() = default;

    std::size_t size_ = 0;
    std::string name_;
    std::shared_ptr<const std::vector<double>> dense_;
    Rule rule_;
    ExactRule exact_;
};

} // namespace ergodia
