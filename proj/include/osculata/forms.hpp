#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "osculata/jets.hpp"

namespace osculata {

/// The degree-k linear system |F_k| at a point, one form per conormal functional.
///
/// Each form is G_l(S) = sum_{|p| = k} l(D_p phi(x)) S^p in the tangent
/// variables S_1..S_n, where l runs over a basis of the functionals
/// vanishing on the (k-1)-th osculating space.
struct FormSystem {
    std::uint32_t degree = 0;
    std::size_t nvars = 0;
    std::vector<MultiPoly> forms;
    ChartPoint point;
    std::vector<RatVector> annihilators;

    bool is_zero() const
    {
        for (const auto& f : forms) {
            if (!f.is_zero()) return false;
        }
        return true;
    }
};

/// Basis of the functionals vanishing on T^{k-1}.
inline std::vector<RatVector> conormal_basis(const OsculatingTower& tower, std::uint32_t k)
{
    if (k < 1) throw InputError("conormal_basis needs k >= 1");
    if (k > tower.order()) throw InputError("conormal_basis: k exceeds tower order");
    return annihilator(tower.spaces[k - 1]).basis();
}

inline FormSystem fundamental_form_system(const JetTable& jets, std::uint32_t k)
{
    if (k < 1) throw InputError("fundamental forms start at degree 1");
    if (k > jets.order()) throw InputError("fundamental form degree exceeds jet table order");
    FormSystem fs;
    fs.degree = k;
    fs.nvars = jets.nvars();
    fs.point = jets.point();
    fs.annihilators = annihilator(jets.span(k - 1)).basis();
    const auto layer = indices_of_degree(jets.nvars(), k);
    for (const auto& ell : fs.annihilators) {
        MultiPoly g(jets.nvars());
        for (const auto& p : layer) g.add_term(p, dot(ell, jets.row(p)));
        fs.forms.push_back(std::move(g));
    }
    return fs;
}

inline FormSystem fundamental_form_system(const VarietySpec& spec, const ChartPoint& x, std::uint32_t k)
{
    return fundamental_form_system(jet_table(spec, x, k), k);
}

/// Coefficient matrix of the forms over the degree-k monomials, graded order.
inline RatMatrix coefficient_matrix(const FormSystem& fs)
{
    const auto layer = indices_of_degree(fs.nvars, fs.degree);
    RatMatrix m = RatMatrix::empty(layer.size());
    for (const auto& g : fs.forms) {
        RatVector row;
        for (const auto& p : layer) row.push_back(g.coefficient(p));
        m.push_row(std::move(row));
    }
    return m;
}

/// Dimension of the linear span of the forms.
inline std::size_t form_rank(const FormSystem& fs)
{
    return rank(coefficient_matrix(fs));
}

/// Diagonal values (G_l(v))_l.
inline RatVector evaluate_form(const FormSystem& fs, std::span<const Rational> v)
{
    if (v.size() != fs.nvars) throw InputError("evaluate_form: vector length mismatch");
    RatVector out;
    for (const auto& g : fs.forms) out.push_back(evaluate(g, v));
    return out;
}

/// Symmetric k-linear form recovered from its diagonal:
///   B(v_1..v_k) = (1/k!) sum_{nonempty T} (-1)^(k-|T|) G(sum_{i in T} v_i).
inline RatVector polarize(const FormSystem& fs, std::span<const RatVector> vs)
{
    const std::size_t k = fs.degree;
    if (vs.size() != k) {
        throw InputError("polarize expects " + std::to_string(k) + " vectors, got " +
                         std::to_string(vs.size()));
    }
    for (const auto& v : vs) {
        if (v.size() != fs.nvars) throw InputError("polarize: vector length mismatch");
    }
    RatVector acc(fs.forms.size(), Rational{0});
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
        RatVector s(fs.nvars, Rational{0});
        std::size_t size = 0;
        for (std::size_t i = 0; i < k; ++i) {
            if (!(mask >> i & 1u)) continue;
            ++size;
            for (std::size_t j = 0; j < fs.nvars; ++j) s[j] += vs[i][j];
        }
        const auto vals = evaluate_form(fs, s);
        const bool negative = (k - size) % 2 == 1;
        for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += negative ? Rational{-vals[j]} : vals[j];
    }
    const Rational scale = Rational{1} / Rational{factorial(static_cast<std::uint32_t>(k))};
    for (auto& a : acc) a *= scale;
    return acc;
}

/// F_k as a symmetric multilinear map into V*/T^{k-1}: values on sorted
/// k-tuples of basis directions, as canonical quotient representatives.
struct SymmetricForm {
    std::uint32_t degree = 0;
    std::map<std::vector<std::size_t>, RatVector> values;
};

/// Builds F_k(e_I) = (p!/k!) D_p phi(x) mod T^{k-1}, p the exponent vector of I.
inline SymmetricForm symmetric_form(const JetTable& jets, std::uint32_t k)
{
    if (k < 1 || k > jets.order()) throw InputError("symmetric_form: degree out of range");
    SymmetricForm sf;
    sf.degree = k;
    const auto below = jets.span(k - 1);
    const Rational k_fact{factorial(k)};
    for (const auto& p : indices_of_degree(jets.nvars(), k)) {
        std::vector<std::size_t> tuple;
        BigInt p_fact = 1;
        for (std::size_t i = 0; i < p.size(); ++i) {
            p_fact *= factorial(p[i]);
            for (std::uint32_t m = 0; m < p[i]; ++m) tuple.push_back(i);
        }
        RatVector v = below.reduce(jets.row(p));
        const Rational scale = Rational{p_fact} / k_fact;
        for (auto& e : v) e *= scale;
        sf.values.emplace(std::move(tuple), std::move(v));
    }
    return sf;
}

} // namespace osculata
