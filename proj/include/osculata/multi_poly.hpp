#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <utility>

#include "osculata/multi_index.hpp"
#include "osculata/rational.hpp"

namespace osculata {

/// Sparse multivariate polynomial over Q in a fixed number of variables.
/// Zero coefficients are never stored.
class MultiPoly {
public:
    using TermMap = std::map<MultiIndex, Rational>;

    explicit MultiPoly(std::size_t nvars = 0) : nvars_(nvars) {}

    static MultiPoly constant(std::size_t nvars, const Rational& c)
    {
        return monomial(MultiIndex(nvars), c);
    }

    static MultiPoly variable(std::size_t nvars, std::size_t i)
    {
        if (i >= nvars) throw InputError("variable index out of range");
        return monomial(MultiIndex::unit(nvars, i), Rational{1});
    }

    static MultiPoly monomial(const MultiIndex& p, const Rational& c)
    {
        MultiPoly f(p.size());
        f.add_term(p, c);
        return f;
    }

    std::size_t nvars() const noexcept { return nvars_; }
    const TermMap& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    /// Total degree; -1 for the zero polynomial.
    int degree() const noexcept
    {
        // Graded order puts the highest degree last.
        return terms_.empty() ? -1 : static_cast<int>(terms_.rbegin()->first.degree());
    }

    bool is_homogeneous(std::uint32_t k) const
    {
        for (const auto& [p, c] : terms_) {
            if (p.degree() != k) return false;
        }
        return true;
    }

    Rational coefficient(const MultiIndex& p) const
    {
        auto it = terms_.find(p);
        return it == terms_.end() ? Rational{0} : it->second;
    }

    void add_term(const MultiIndex& p, const Rational& c)
    {
        if (p.size() != nvars_) throw InputError("monomial length does not match nvars");
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(p, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    MultiPoly& operator+=(const MultiPoly& g)
    {
        check_nvars(g);
        for (const auto& [p, c] : g.terms_) add_term(p, c);
        return *this;
    }

    MultiPoly& operator-=(const MultiPoly& g)
    {
        check_nvars(g);
        for (const auto& [p, c] : g.terms_) add_term(p, -c);
        return *this;
    }

    MultiPoly& operator*=(const Rational& a)
    {
        if (a == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [p, c] : terms_) c *= a;
        return *this;
    }

    friend MultiPoly operator+(MultiPoly f, const MultiPoly& g) { return f += g; }
    friend MultiPoly operator-(MultiPoly f, const MultiPoly& g) { return f -= g; }
    friend MultiPoly operator*(MultiPoly f, const Rational& a) { return f *= a; }
    friend MultiPoly operator*(const Rational& a, MultiPoly f) { return f *= a; }
    friend MultiPoly operator-(MultiPoly f) { return f *= Rational{-1}; }

    friend MultiPoly operator*(const MultiPoly& f, const MultiPoly& g)
    {
        f.check_nvars(g);
        MultiPoly h(f.nvars_);
        for (const auto& [p, a] : f.terms_) {
            for (const auto& [q, b] : g.terms_) h.add_term(p + q, a * b);
        }
        return h;
    }

    MultiPoly pow(std::uint32_t e) const
    {
        MultiPoly result = constant(nvars_, 1);
        MultiPoly base = *this;
        while (e) {
            if (e & 1u) result = result * base;
            e >>= 1u;
            if (e) base = base * base;
        }
        return result;
    }

    /// Embeds into nvars + extra variables, new variables appended last.
    MultiPoly extended(std::size_t extra) const
    {
        MultiPoly g(nvars_ + extra);
        for (const auto& [p, c] : terms_) {
            std::vector<std::uint32_t> e(p.exponents().begin(), p.exponents().end());
            e.resize(nvars_ + extra, 0);
            g.terms_.emplace(MultiIndex(std::move(e)), c);
        }
        return g;
    }

    bool operator==(const MultiPoly&) const = default;

private:
    void check_nvars(const MultiPoly& g) const
    {
        if (g.nvars_ != nvars_) throw InputError("polynomials live in different numbers of variables");
    }

    std::size_t nvars_;
    TermMap terms_;
};

namespace detail {

inline void check_point(const MultiPoly& f, std::size_t len, const char* what)
{
    if (len != f.nvars()) {
        throw InputError(std::string(what) + ": expected " + std::to_string(f.nvars()) +
                         " coordinates, got " + std::to_string(len));
    }
}

inline Rational power(const Rational& base, std::uint32_t e)
{
    Rational r{1};
    for (std::uint32_t i = 0; i < e; ++i) r *= base;
    return r;
}

} // namespace detail

/// Divided-power derivative D_p f, with D_p(s^q) = prod_i C(q_i, p_i) s^(q - p).
inline MultiPoly hasse_derivative(const MultiPoly& f, const MultiIndex& p)
{
    if (p.size() != f.nvars()) throw InputError("hasse_derivative: multi-index length mismatch");
    MultiPoly g(f.nvars());
    for (const auto& [q, c] : f.terms()) {
        if (!q.dominates(p)) continue;
        BigInt scale = 1;
        for (std::size_t i = 0; i < p.size(); ++i) scale *= binomial(q[i], p[i]);
        g.add_term(q - p, c * Rational{scale});
    }
    return g;
}

inline Rational evaluate(const MultiPoly& f, std::span<const Rational> x)
{
    detail::check_point(f, x.size(), "evaluate");
    Rational sum{0};
    for (const auto& [q, c] : f.terms()) {
        Rational term = c;
        for (std::size_t i = 0; i < x.size(); ++i) term *= detail::power(x[i], q[i]);
        sum += term;
    }
    return sum;
}

/// Coefficients of f(x + h) as a polynomial in h, by brute-force expansion of
/// each monomial's binomial powers. Shares no code path with hasse_derivative.
inline MultiPoly::TermMap taylor_shift(const MultiPoly& f, std::span<const Rational> x)
{
    detail::check_point(f, x.size(), "taylor_shift");
    const std::size_t n = f.nvars();
    std::vector<MultiPoly> shifted;
    shifted.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        shifted.push_back(MultiPoly::variable(n, i) + MultiPoly::constant(n, x[i]));
    }
    MultiPoly total(n);
    for (const auto& [q, c] : f.terms()) {
        MultiPoly term = MultiPoly::constant(n, c);
        for (std::size_t i = 0; i < n; ++i) term = term * shifted[i].pow(q[i]);
        total += term;
    }
    return total.terms();
}

/// Ordinary partial derivative with respect to variable i.
inline MultiPoly partial_derivative(const MultiPoly& f, std::size_t i)
{
    if (i >= f.nvars()) throw InputError("partial_derivative: variable index out of range");
    MultiPoly g(f.nvars());
    const MultiIndex e = MultiIndex::unit(f.nvars(), i);
    for (const auto& [q, c] : f.terms()) {
        if (q[i] == 0) continue;
        g.add_term(q - e, c * Rational{q[i]});
    }
    return g;
}

/// d_u f = sum_i u_i df/ds_i (ordinary, not divided).
inline MultiPoly directional_derivative(const MultiPoly& f, std::span<const Rational> u)
{
    detail::check_point(f, u.size(), "directional_derivative");
    MultiPoly g(f.nvars());
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] == 0) continue;
        g += partial_derivative(f, i) * u[i];
    }
    return g;
}

} // namespace osculata
