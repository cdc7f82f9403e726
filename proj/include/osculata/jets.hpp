#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "osculata/linalg.hpp"
#include "osculata/variety.hpp"

namespace osculata {

/// Hasse-derivative rows D_p phi(x) for all |p| <= order, in graded order.
/// Row p = 0 is phi(x) itself.
class JetTable {
public:
    JetTable(const VarietySpec& spec, ChartPoint point, std::uint32_t order)
        : point_(std::move(point)), ambient_(spec.ambient_dim() + 1), nvars_(spec.nparams())
    {
        extend(spec, order);
    }

    /// Grows the table in place to a higher order, keeping the rows already computed.
    void extend(const VarietySpec& spec, std::uint32_t order)
    {
        if (spec.nparams() != nvars_ || spec.ambient_dim() + 1 != ambient_) {
            throw InputError("jet table extended with a different spec");
        }
        if (computed_ && order <= order_) return;
        const std::uint32_t first = computed_ ? order_ + 1 : 0;
        for (std::uint32_t d = first; d <= order; ++d) {
            for (const auto& p : indices_of_degree(nvars_, d)) {
                RatVector row;
                row.reserve(ambient_);
                for (const auto& phi : spec.coords()) {
                    row.push_back(evaluate(hasse_derivative(phi, p), point_.coords));
                }
                index_.emplace(p, rows_.size());
                indices_.push_back(p);
                rows_.push_back(std::move(row));
            }
        }
        order_ = order;
        computed_ = true;
    }

    const ChartPoint& point() const noexcept { return point_; }
    std::uint32_t order() const noexcept { return order_; }
    std::size_t nvars() const noexcept { return nvars_; }
    std::size_t ambient() const noexcept { return ambient_; }

    const std::vector<MultiIndex>& indices() const noexcept { return indices_; }
    const std::vector<RatVector>& rows() const noexcept { return rows_; }

    const RatVector& row(const MultiIndex& p) const
    {
        auto it = index_.find(p);
        if (it == index_.end()) throw InputError("jet row " + p.str() + " beyond table order");
        return rows_[it->second];
    }

    /// Rows with |p| <= k.
    std::span<const RatVector> rows_up_to(std::uint32_t k) const
    {
        if (k > order_) throw InputError("requested jet order exceeds table order");
        std::size_t count = 0;
        while (count < indices_.size() && indices_[count].degree() <= k) ++count;
        return {rows_.data(), count};
    }

    /// Deprojectivized osculating space: the span of rows with |p| <= k.
    Subspace span(std::uint32_t k) const { return Subspace::span(ambient_, rows_up_to(k)); }

    /// Multi-indices |p| <= k whose rows are independent of all earlier rows
    /// (graded order, or its reverse). Their rows form a basis of span(k).
    std::vector<MultiIndex> pivot_set(std::uint32_t k, bool reversed = false) const
    {
        const auto rows = rows_up_to(k);
        std::vector<std::size_t> order(rows.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = reversed ? order.size() - 1 - i : i;
        std::vector<MultiIndex> picked;
        std::vector<RatVector> basis;
        std::size_t dim = 0;
        for (auto i : order) {
            basis.push_back(rows[i]);
            const auto d = Subspace::span(ambient_, basis).dim();
            if (d > dim) {
                dim = d;
                picked.push_back(indices_[i]);
            } else {
                basis.pop_back();
            }
        }
        return picked;
    }

private:
    ChartPoint point_;
    std::size_t ambient_;
    std::size_t nvars_;
    std::uint32_t order_ = 0;
    bool computed_ = false;
    std::vector<MultiIndex> indices_;
    std::vector<RatVector> rows_;
    std::map<MultiIndex, std::size_t> index_;
};

inline JetTable jet_table(const VarietySpec& spec, const ChartPoint& x, std::uint32_t k)
{
    return JetTable(spec, x, k);
}

/// Osculating dimensions t_0 <= t_1 <= ... <= t_K at one point.
struct OsculatingTower {
    std::size_t ambient_dim = 0; // r
    std::vector<std::size_t> dims;
    std::vector<Subspace> spaces;
    std::vector<std::size_t> conormal_ranks;

    std::uint32_t order() const { return static_cast<std::uint32_t>(dims.size() - 1); }
};

/// Throws InvariantViolation if the tower breaks monotone stabilization.
inline void check_monotone_stabilization(std::span<const std::size_t> dims)
{
    for (std::size_t k = 0; k + 1 < dims.size(); ++k) {
        if (dims[k + 1] < dims[k]) {
            throw InvariantViolation("osculating dimensions decrease at order " + std::to_string(k + 1));
        }
        if (dims[k + 1] == dims[k]) {
            for (std::size_t j = k + 1; j < dims.size(); ++j) {
                if (dims[j] != dims[k]) {
                    throw InvariantViolation("osculating dimensions resume growth at order " +
                                             std::to_string(j) + " after a plateau at order " +
                                             std::to_string(k));
                }
            }
            return;
        }
    }
}

inline OsculatingTower osculating_tower(const JetTable& jets, std::uint32_t K)
{
    if (K > jets.order()) throw InputError("tower order exceeds jet table order");
    OsculatingTower tower;
    tower.ambient_dim = jets.ambient() - 1;
    for (std::uint32_t k = 0; k <= K; ++k) {
        auto space = jets.span(k);
        const std::size_t t = space.dim() - 1;
        tower.dims.push_back(t);
        tower.conormal_ranks.push_back(tower.ambient_dim - t);
        tower.spaces.push_back(std::move(space));
    }
    check_monotone_stabilization(tower.dims);
    return tower;
}

inline OsculatingTower osculating_tower(const VarietySpec& spec, const ChartPoint& x, std::uint32_t K)
{
    if (K < 1) throw InputError("osculating tower needs K >= 1");
    return osculating_tower(jet_table(spec, x, K), K);
}

struct Stabilization {
    std::uint32_t order = 0; // first m with t_m == t_{m+1}
    Subspace linear_forms;   // W: functionals vanishing on the linear span of X
};

/// First plateau of the tower and the linear forms cutting out the span of X.
inline Stabilization stabilization(const VarietySpec& spec, const ChartPoint& x, std::uint32_t k_max)
{
    if (k_max < 1) throw InputError("stabilization needs Kmax >= 1");
    const auto jets = jet_table(spec, x, k_max);
    const auto tower = osculating_tower(jets, k_max);
    for (std::uint32_t m = 0; m < k_max; ++m) {
        if (tower.dims[m] != tower.dims[m + 1]) continue;
        Stabilization s{m, annihilator(tower.spaces[m])};
        for (const auto& ell : s.linear_forms.basis()) {
            for (const auto& row : jets.rows()) {
                if (dot(ell, row) != 0) {
                    throw InvariantViolation("span form does not annihilate a jet row");
                }
            }
        }
        return s;
    }
    throw StabilizationError("osculating tower did not stabilize by order " + std::to_string(k_max) +
                             "; increase Kmax");
}

} // namespace osculata
