#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "osculata/error.hpp"

namespace osculata {

/// Exponent vector p = (p_1, ..., p_n) over the chart parameters.
///
/// Ordering is graded: ascending total degree, then lexicographically
/// descending exponents within one degree. For n = 2 this lists
/// (0,0), (1,0), (0,1), (2,0), (1,1), (0,2), ... and every ordered
/// container of multi-indices (polynomial terms, jet rows) uses it.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::size_t n) : exps_(n, 0) {}
    MultiIndex(std::initializer_list<std::uint32_t> exps) : exps_(exps) {}
    explicit MultiIndex(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {}

    static MultiIndex unit(std::size_t n, std::size_t i)
    {
        MultiIndex e(n);
        e.exps_.at(i) = 1;
        return e;
    }

    std::size_t size() const noexcept { return exps_.size(); }
    std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
    std::span<const std::uint32_t> exponents() const noexcept { return exps_; }

    std::uint32_t degree() const noexcept
    {
        std::uint32_t d = 0;
        for (auto e : exps_) d += e;
        return d;
    }

    /// Componentwise q <= *this.
    bool dominates(const MultiIndex& q) const
    {
        check_same_size(q);
        for (std::size_t i = 0; i < exps_.size(); ++i) {
            if (q.exps_[i] > exps_[i]) return false;
        }
        return true;
    }

    MultiIndex operator+(const MultiIndex& q) const
    {
        check_same_size(q);
        MultiIndex r = *this;
        for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += q.exps_[i];
        return r;
    }

    /// Requires dominates(q).
    MultiIndex operator-(const MultiIndex& q) const
    {
        if (!dominates(q)) throw InputError("multi-index subtraction would go negative");
        MultiIndex r = *this;
        for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] -= q.exps_[i];
        return r;
    }

    MultiIndex bumped(std::size_t i) const
    {
        MultiIndex r = *this;
        ++r.exps_.at(i);
        return r;
    }

    bool operator==(const MultiIndex&) const = default;

    friend bool operator<(const MultiIndex& a, const MultiIndex& b)
    {
        const auto da = a.degree();
        const auto db = b.degree();
        if (da != db) return da < db;
        // Larger exponent vector first within a degree.
        return b.exps_ < a.exps_;
    }

    std::string str() const
    {
        std::string s = "(";
        for (std::size_t i = 0; i < exps_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(exps_[i]);
        }
        return s + ")";
    }

private:
    void check_same_size(const MultiIndex& q) const
    {
        if (q.size() != size()) throw InputError("multi-index length mismatch");
    }

    std::vector<std::uint32_t> exps_;
};

namespace detail {

inline void fill_degree(std::size_t pos, std::uint32_t remaining, std::vector<std::uint32_t>& cur,
                        std::vector<MultiIndex>& out)
{
    if (pos + 1 == cur.size()) {
        cur[pos] = remaining;
        out.emplace_back(cur);
        return;
    }
    for (std::uint32_t e = remaining + 1; e-- > 0;) {
        cur[pos] = e;
        fill_degree(pos + 1, remaining - e, cur, out);
    }
    cur[pos] = 0;
}

} // namespace detail

/// All p with |p| == d, in graded order.
inline std::vector<MultiIndex> indices_of_degree(std::size_t n, std::uint32_t d)
{
    std::vector<MultiIndex> out;
    if (n == 0) {
        if (d == 0) out.emplace_back(0);
        return out;
    }
    std::vector<std::uint32_t> cur(n, 0);
    detail::fill_degree(0, d, cur, out);
    return out;
}

/// All p with |p| <= k, in graded order.
inline std::vector<MultiIndex> indices_up_to(std::size_t n, std::uint32_t k)
{
    std::vector<MultiIndex> out;
    for (std::uint32_t d = 0; d <= k; ++d) {
        auto layer = indices_of_degree(n, d);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

} // namespace osculata
