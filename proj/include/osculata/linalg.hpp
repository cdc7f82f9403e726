#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "osculata/rational.hpp"

namespace osculata {

/// Dense rectangular matrix of exact rationals, stored by rows.
class RatMatrix {
public:
    RatMatrix() = default;

    explicit RatMatrix(std::vector<RatVector> rows) : rows_(std::move(rows))
    {
        if (rows_.empty()) return;
        cols_ = rows_.front().size();
        for (const auto& r : rows_) {
            if (r.size() != cols_) throw InputError("ragged matrix rows");
        }
    }

    /// Zero-row matrix with an explicit column count.
    static RatMatrix empty(std::size_t cols)
    {
        RatMatrix m;
        m.cols_ = cols;
        return m;
    }

    std::size_t rows() const noexcept { return rows_.size(); }
    std::size_t cols() const noexcept { return cols_; }
    const RatVector& row(std::size_t i) const { return rows_.at(i); }
    const std::vector<RatVector>& data() const noexcept { return rows_; }

    void push_row(RatVector r)
    {
        if (rows_.empty() && cols_ == 0) cols_ = r.size();
        if (r.size() != cols_) throw InputError("ragged matrix rows");
        rows_.push_back(std::move(r));
    }

    RatMatrix transposed() const
    {
        std::vector<RatVector> t(cols_, RatVector(rows_.size()));
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            for (std::size_t j = 0; j < cols_; ++j) t[j][i] = rows_[i][j];
        }
        auto m = RatMatrix(std::move(t));
        m.cols_ = rows_.size();
        return m;
    }

    bool operator==(const RatMatrix&) const = default;

private:
    std::vector<RatVector> rows_;
    std::size_t cols_ = 0;
};

inline bool is_zero(std::span<const Rational> v)
{
    for (const auto& x : v) {
        if (x != 0) return false;
    }
    return true;
}

inline Rational dot(std::span<const Rational> a, std::span<const Rational> b)
{
    if (a.size() != b.size()) throw InputError("dot: length mismatch");
    Rational s{0};
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// Linear subspace of Q^m held in reduced row echelon form with leading 1s.
/// Two spans of the same space have identical bases, so operator== is
/// equality of subspaces.
class Subspace {
public:
    explicit Subspace(std::size_t ambient_dim = 0) : ambient_dim_(ambient_dim) {}

    /// Span of arbitrary vectors of length ambient_dim.
    static Subspace span(std::size_t ambient_dim, std::span<const RatVector> vectors)
    {
        Subspace s(ambient_dim);
        for (const auto& v : vectors) s.absorb(v);
        s.canonicalize();
        return s;
    }

    static Subspace whole(std::size_t m)
    {
        Subspace s(m);
        for (std::size_t i = 0; i < m; ++i) {
            RatVector e(m, Rational{0});
            e[i] = 1;
            s.basis_.push_back(std::move(e));
            s.pivots_.push_back(i);
        }
        return s;
    }

    std::size_t ambient_dim() const noexcept { return ambient_dim_; }
    std::size_t dim() const noexcept { return basis_.size(); }
    const std::vector<RatVector>& basis() const noexcept { return basis_; }
    /// Pivot column of each basis row, strictly increasing.
    const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

    /// v minus its pivot projection onto this space; zero iff v lies in it.
    RatVector reduce(RatVector v) const
    {
        if (v.size() != ambient_dim_) throw InputError("quotient_reduce: dimension mismatch");
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            const Rational a = v[pivots_[i]];
            if (a == 0) continue;
            for (std::size_t j = pivots_[i]; j < ambient_dim_; ++j) v[j] -= a * basis_[i][j];
        }
        return v;
    }

    bool contains(std::span<const Rational> v) const
    {
        return is_zero(reduce(RatVector(v.begin(), v.end())));
    }

    bool operator==(const Subspace&) const = default;

private:
    /// Adds v if independent, keeping rows in echelon form (not yet fully reduced).
    void absorb(const RatVector& v)
    {
        if (v.size() != ambient_dim_) throw InputError("ragged rows: vector length mismatch");
        RatVector r = reduce(v);
        std::size_t lead = 0;
        while (lead < ambient_dim_ && r[lead] == 0) ++lead;
        if (lead == ambient_dim_) return;
        const Rational inv = 1 / r[lead];
        for (std::size_t j = lead; j < ambient_dim_; ++j) r[j] *= inv;
        // Clear the new pivot column from existing rows.
        for (auto& b : basis_) {
            const Rational a = b[lead];
            if (a == 0) continue;
            for (std::size_t j = lead; j < ambient_dim_; ++j) b[j] -= a * r[j];
        }
        const auto pos = static_cast<std::size_t>(
            std::lower_bound(pivots_.begin(), pivots_.end(), lead) - pivots_.begin());
        pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), lead);
        basis_.insert(basis_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(r));
    }

    void canonicalize()
    {
        // absorb() clears each pivot column in all other rows, so only the
        // ordering remains to be checked.
        for (std::size_t i = 0; i + 1 < pivots_.size(); ++i) {
            if (pivots_[i] >= pivots_[i + 1]) throw InvariantViolation("echelon pivots out of order");
        }
    }

    std::size_t ambient_dim_;
    std::vector<RatVector> basis_;
    std::vector<std::size_t> pivots_;
};

inline Subspace row_space(const RatMatrix& m)
{
    if (m.rows() == 0 && m.cols() == 0) throw InputError("row_space: empty matrix");
    return Subspace::span(m.cols(), m.data());
}

inline std::size_t rank(const RatMatrix& m)
{
    return Subspace::span(m.cols(), m.data()).dim();
}

/// Functionals vanishing on s, identified with Q^m through the standard pairing.
inline Subspace annihilator(const Subspace& s)
{
    const std::size_t m = s.ambient_dim();
    const auto& piv = s.pivots();
    std::vector<RatVector> kernel;
    std::size_t next_pivot = 0;
    for (std::size_t free = 0; free < m; ++free) {
        if (next_pivot < piv.size() && piv[next_pivot] == free) {
            ++next_pivot;
            continue;
        }
        RatVector v(m, Rational{0});
        v[free] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -s.basis()[i][free];
        kernel.push_back(std::move(v));
    }
    return Subspace::span(m, kernel);
}

inline Subspace sum(const Subspace& a, const Subspace& b)
{
    if (a.ambient_dim() != b.ambient_dim()) throw InputError("sum: ambient dimension mismatch");
    std::vector<RatVector> all = a.basis();
    all.insert(all.end(), b.basis().begin(), b.basis().end());
    return Subspace::span(a.ambient_dim(), all);
}

inline std::size_t intersection_dim(const Subspace& a, const Subspace& b)
{
    return a.dim() + b.dim() - sum(a, b).dim();
}

inline RatVector quotient_reduce(RatVector v, const Subspace& s)
{
    return s.reduce(std::move(v));
}

} // namespace osculata
