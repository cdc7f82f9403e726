#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "osculata/forms.hpp"
#include "osculata/sampling.hpp"

namespace osculata {

/// How "generic" is realized: `trials` independent seeded draws with
/// integer coordinates in [-coord_bound, coord_bound].
struct SamplerConfig {
    std::uint64_t seed = 1;
    std::uint32_t trials = 3;
    std::int64_t coord_bound = 10;

    void validate() const
    {
        if (trials < 1) throw InputError("sampler needs trials >= 1");
        if (coord_bound < 1) throw InputError("sampler needs coord_bound >= 1");
    }
};

/// A generic value estimated over trials, with the per-trial observations.
/// stable is true when every trial observed the same value.
struct Estimate {
    long value = 0;
    bool stable = true;
    std::vector<long> samples;

    static Estimate max_of(std::vector<long> samples)
    {
        const long v = *std::max_element(samples.begin(), samples.end());
        return from(std::move(samples), v);
    }

    static Estimate min_of(std::vector<long> samples)
    {
        const long v = *std::min_element(samples.begin(), samples.end());
        return from(std::move(samples), v);
    }

private:
    static Estimate from(std::vector<long> samples, long value)
    {
        Estimate e;
        e.value = value;
        e.stable = std::all_of(samples.begin(), samples.end(), [&](long s) { return s == samples.front(); });
        e.samples = std::move(samples);
        return e;
    }
};

inline constexpr int kMaxPointAttempts = 1000;

/// Draws chart points from the (seed, salt, trial) stream until one validates.
/// With avoid set, points equal to it are skipped as well.
inline ChartPoint sample_point(const VarietySpec& spec, const SamplerConfig& cfg, IntegerStream& stream,
                               const ChartPoint* avoid = nullptr)
{
    for (int attempt = 0; attempt < kMaxPointAttempts; ++attempt) {
        const RatVector x = stream.vector(spec.nparams(), cfg.coord_bound);
        if (avoid && x == avoid->coords) continue;
        try {
            return validate_point(spec, x);
        } catch (const PointRejected&) {
        }
    }
    throw InputError("no smooth chart point found after " + std::to_string(kMaxPointAttempts) +
                     " draws; increase the coordinate bound");
}

inline ChartPoint sample_point(const VarietySpec& spec, const SamplerConfig& cfg, std::uint32_t trial)
{
    IntegerStream stream(cfg.seed, salt::point, trial);
    return sample_point(spec, cfg, stream);
}

inline std::pair<ChartPoint, ChartPoint> sample_pair(const VarietySpec& spec, const SamplerConfig& cfg,
                                                     std::uint32_t trial)
{
    IntegerStream stream(cfg.seed, salt::pair, trial);
    auto x = sample_point(spec, cfg, stream);
    auto y = sample_point(spec, cfg, stream, &x);
    return {std::move(x), std::move(y)};
}

inline long rank_of(std::size_t ambient, std::span<const RatVector> columns)
{
    return static_cast<long>(Subspace::span(ambient, columns).dim());
}

// ---------------------------------------------------------------------------
// f_{k+1,x}: derivatives of the osculating frame modulo T^k
// ---------------------------------------------------------------------------

/// The map f_{k+1,x}(u) on T^k, one column per frame index p in `basis`:
/// column p is d_u(D_p phi)(x) mod T^k, using d_i D_p = (p_i + 1) D_{p + e_i}.
struct DirectionalMap {
    std::vector<MultiIndex> basis;
    std::vector<RatVector> columns;
    std::size_t ambient = 0;

    long rank() const { return rank_of(ambient, columns); }
};

/// d_u of the frame section D_p phi, evaluated at the point (needs order |p|+1).
inline RatVector frame_derivative(const JetTable& jets, const MultiIndex& p, std::span<const Rational> u)
{
    RatVector v(jets.ambient(), Rational{0});
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] == 0) continue;
        const Rational scale = u[i] * Rational{p[i] + 1};
        const auto& row = jets.row(p.bumped(i));
        for (std::size_t j = 0; j < v.size(); ++j) v[j] += scale * row[j];
    }
    return v;
}

inline DirectionalMap f_map_direction(const JetTable& jets, std::uint32_t k, std::span<const Rational> u,
                                      std::vector<MultiIndex> basis)
{
    if (k + 1 > jets.order()) throw InputError("f_map_direction needs jets of order k+1");
    if (u.size() != jets.nvars()) throw InputError("tangent vector length mismatch");
    const auto tk = jets.span(k);
    DirectionalMap map;
    map.ambient = jets.ambient();
    for (const auto& p : basis) map.columns.push_back(tk.reduce(frame_derivative(jets, p, u)));
    map.basis = std::move(basis);
    return map;
}

inline DirectionalMap f_map_direction(const JetTable& jets, std::uint32_t k, std::span<const Rational> u)
{
    return f_map_direction(jets, k, u, jets.pivot_set(k));
}

inline DirectionalMap f_map_direction(const VarietySpec& spec, const ChartPoint& x, std::uint32_t k,
                                      std::span<const Rational> u)
{
    if (k < 1) throw InputError("f_map_direction needs k >= 1");
    return f_map_direction(jet_table(spec, x, k + 1), k, u);
}

/// f_{k+1,x,y} for y = sum_p c_p D_p phi(x): column i is d_i(y) mod T^k.
inline DirectionalMap f_map_point(const JetTable& jets, std::uint32_t k, std::span<const MultiIndex> basis,
                                  std::span<const Rational> coeffs)
{
    if (basis.size() != coeffs.size()) throw InputError("one coefficient per frame index expected");
    const auto tk = jets.span(k);
    const std::size_t n = jets.nvars();
    DirectionalMap map;
    map.ambient = jets.ambient();
    for (std::size_t i = 0; i < n; ++i) {
        const auto e = MultiIndex::unit(n, i);
        RatVector v(jets.ambient(), Rational{0});
        for (std::size_t b = 0; b < basis.size(); ++b) {
            if (coeffs[b] == 0) continue;
            const Rational scale = coeffs[b] * Rational{basis[b][i] + 1};
            const auto& row = jets.row(basis[b].bumped(i));
            for (std::size_t j = 0; j < v.size(); ++j) v[j] += scale * row[j];
        }
        map.basis.push_back(e);
        map.columns.push_back(tk.reduce(std::move(v)));
    }
    return map;
}

// ---------------------------------------------------------------------------
// Generic invariants
// ---------------------------------------------------------------------------

/// Osculating dimensions at sampled points, per order max over trials.
inline std::vector<Estimate> generic_tower(const VarietySpec& spec, std::uint32_t K, const SamplerConfig& cfg)
{
    cfg.validate();
    std::vector<std::vector<long>> per_order(K + 1);
    for (std::uint32_t t = 0; t < cfg.trials; ++t) {
        const auto tower = osculating_tower(spec, sample_point(spec, cfg, t), K);
        for (std::uint32_t k = 0; k <= K; ++k) per_order[k].push_back(static_cast<long>(tower.dims[k]));
    }
    std::vector<Estimate> out;
    for (auto& s : per_order) out.push_back(Estimate::max_of(std::move(s)));
    return out;
}

/// theta_k at a fixed point: generic rank of f_{k+1,x}(u) over sampled u.
inline Estimate theta_k(const VarietySpec& spec, const ChartPoint& x, std::uint32_t k, const SamplerConfig& cfg)
{
    cfg.validate();
    if (k < 1) throw InputError("theta_k needs k >= 1");
    const auto jets = jet_table(spec, x, k + 1);
    const auto basis = jets.pivot_set(k);
    std::vector<long> ranks;
    for (std::uint32_t t = 0; t < cfg.trials; ++t) {
        IntegerStream stream(cfg.seed, salt::direction, t);
        const auto u = stream.nonzero_vector(spec.nparams(), cfg.coord_bound);
        ranks.push_back(f_map_direction(jets, k, u, basis).rank());
    }
    return Estimate::max_of(std::move(ranks));
}

/// theta_k with the point sampled as well, one (x, u) per trial.
inline Estimate theta_k(const VarietySpec& spec, std::uint32_t k, const SamplerConfig& cfg)
{
    cfg.validate();
    if (k < 1) throw InputError("theta_k needs k >= 1");
    std::vector<long> ranks;
    for (std::uint32_t t = 0; t < cfg.trials; ++t) {
        const auto jets = jet_table(spec, sample_point(spec, cfg, t), k + 1);
        IntegerStream stream(cfg.seed, salt::direction, t);
        const auto u = stream.nonzero_vector(spec.nparams(), cfg.coord_bound);
        ranks.push_back(f_map_direction(jets, k, u).rank());
    }
    return Estimate::max_of(std::move(ranks));
}

/// delta_k = dim of the intersection of two generic projective k-th osculating
/// spaces (-1 when disjoint); minimum over sampled pairs.
inline Estimate delta_k(const VarietySpec& spec, std::uint32_t k, const SamplerConfig& cfg)
{
    cfg.validate();
    if (k < 1) throw InputError("delta_k needs k >= 1");
    std::vector<long> dims;
    for (std::uint32_t t = 0; t < cfg.trials; ++t) {
        const auto [x, y] = sample_pair(spec, cfg, t);
        const auto a = jet_table(spec, x, k).span(k);
        const auto b = jet_table(spec, y, k).span(k);
        dims.push_back(static_cast<long>(intersection_dim(a, b)) - 1);
    }
    return Estimate::min_of(std::move(dims));
}

/// rank f_{k+1,x,y} for y a sampled combination of the osculating frame at x.
inline Estimate tangent_rank(const VarietySpec& spec, const ChartPoint& x, std::uint32_t k,
                             const SamplerConfig& cfg)
{
    cfg.validate();
    if (k < 1) throw InputError("tangent_rank needs k >= 1");
    const auto jets = jet_table(spec, x, k + 1);
    const auto basis = jets.pivot_set(k);
    std::vector<long> ranks;
    for (std::uint32_t t = 0; t < cfg.trials; ++t) {
        IntegerStream stream(cfg.seed, salt::tangent, t);
        const auto c = stream.nonzero_vector(basis.size(), cfg.coord_bound);
        ranks.push_back(f_map_point(jets, k, basis, c).rank());
    }
    return Estimate::max_of(std::move(ranks));
}

struct TangentVariety {
    std::uint32_t k = 0;
    Estimate osculating_dim; // t_k
    Estimate rank;           // rank f_{k+1,x,y}
    Estimate dim;            // dim tau^k = t_k + rank
    long defect = 0;         // t_k + n - dim tau^k
};

inline TangentVariety tangent_variety_dim(const VarietySpec& spec, std::uint32_t k, const SamplerConfig& cfg)
{
    cfg.validate();
    if (k < 1) throw InputError("tangent_variety_dim needs k >= 1");
    std::vector<long> tks, ranks, dims;
    for (std::uint32_t t = 0; t < cfg.trials; ++t) {
        const auto jets = jet_table(spec, sample_point(spec, cfg, t), k + 1);
        const auto basis = jets.pivot_set(k);
        IntegerStream stream(cfg.seed, salt::tangent, t);
        const auto c = stream.nonzero_vector(basis.size(), cfg.coord_bound);
        const long tk = static_cast<long>(basis.size()) - 1;
        const long rk = f_map_point(jets, k, basis, c).rank();
        tks.push_back(tk);
        ranks.push_back(rk);
        dims.push_back(tk + rk);
    }
    TangentVariety tv;
    tv.k = k;
    tv.osculating_dim = Estimate::max_of(std::move(tks));
    tv.rank = Estimate::max_of(std::move(ranks));
    tv.dim = Estimate::max_of(std::move(dims));
    tv.defect = tv.osculating_dim.value + static_cast<long>(spec.nparams()) - tv.dim.value;
    return tv;
}

struct SecantVariety {
    Estimate dim;         // dim Sec(X) = dim(T_x + T_y) - 1
    long defect = 0;      // delta_X = 2n + 1 - dim Sec
    Estimate delta1;      // from the same sampled pairs
    bool delta_consistent = true; // delta_1 == delta_X - 1
};

/// Terracini: dim Sec(X) from the span of two generic tangent spaces.
inline SecantVariety secant_dim_terracini(const VarietySpec& spec, const SamplerConfig& cfg)
{
    cfg.validate();
    std::vector<long> dims, deltas;
    for (std::uint32_t t = 0; t < cfg.trials; ++t) {
        const auto [x, y] = sample_pair(spec, cfg, t);
        const auto a = jet_table(spec, x, 1).span(1);
        const auto b = jet_table(spec, y, 1).span(1);
        const auto s = static_cast<long>(sum(a, b).dim());
        dims.push_back(s - 1);
        deltas.push_back(static_cast<long>(a.dim() + b.dim()) - s - 1);
    }
    SecantVariety sv;
    sv.dim = Estimate::max_of(std::move(dims));
    sv.defect = 2 * static_cast<long>(spec.nparams()) + 1 - sv.dim.value;
    sv.delta1 = Estimate::min_of(std::move(deltas));
    sv.delta_consistent = sv.delta1.value == sv.defect - 1;
    return sv;
}

// ---------------------------------------------------------------------------
// Theorem checkers
// ---------------------------------------------------------------------------

/// t_k == theta_k + delta_k  implies  F_{k+2} = 0 (t_{k+2} == t_{k+1}).
struct VanishingVerdict {
    std::uint32_t k = 0;
    long t_k = 0, theta = 0, delta = 0, t_k1 = 0, t_k2 = 0;
    bool hypothesis = false;
    bool conclusion = false;
    bool respected = true;
    bool stable = true;
};

inline VanishingVerdict vanishing_check(const VarietySpec& spec, std::uint32_t k, const SamplerConfig& cfg)
{
    if (k < 1) throw InputError("vanishing_check needs k >= 1");
    const auto tower = generic_tower(spec, k + 2, cfg);
    const auto theta = theta_k(spec, k, cfg);
    const auto delta = delta_k(spec, k, cfg);
    VanishingVerdict v;
    v.k = k;
    v.t_k = tower[k].value;
    v.t_k1 = tower[k + 1].value;
    v.t_k2 = tower[k + 2].value;
    v.theta = theta.value;
    v.delta = delta.value;
    v.hypothesis = v.t_k == v.theta + v.delta;
    v.conclusion = v.t_k2 == v.t_k1;
    v.respected = !v.hypothesis || v.conclusion;
    v.stable = theta.stable && delta.stable &&
               std::all_of(tower.begin(), tower.end(), [](const Estimate& e) { return e.stable; });
    return v;
}

/// tau(X) == Sec(X)  implies  III = 0 (t_3 == t_2).
struct SecantTangentVerdict {
    long tangent_dim = 0, secant_dim = 0, t2 = 0, t3 = 0;
    bool hypothesis = false;
    bool conclusion = false;
    bool respected = true;
    bool stable = true;
};

inline SecantTangentVerdict cor_tm06_check(const VarietySpec& spec, const SamplerConfig& cfg)
{
    const auto tau = tangent_variety_dim(spec, 1, cfg);
    const auto sec = secant_dim_terracini(spec, cfg);
    const auto tower = generic_tower(spec, 3, cfg);
    SecantTangentVerdict v;
    v.tangent_dim = tau.dim.value;
    v.secant_dim = sec.dim.value;
    v.t2 = tower[2].value;
    v.t3 = tower[3].value;
    v.hypothesis = v.tangent_dim == v.secant_dim;
    v.conclusion = v.t3 == v.t2;
    v.respected = !v.hypothesis || v.conclusion;
    v.stable = tau.dim.stable && sec.dim.stable && tower[2].stable && tower[3].stable;
    return v;
}

/// rank II >= min(codim X, dim X). The Tan(X) = tau(X) hypothesis cannot be
/// checked here, so a shortfall is never reported as a refutation.
struct SecondFormBoundVerdict {
    long rank_II = 0;
    long bound = 0;
    bool satisfied = false;
    bool advisory = false;
    bool nondegenerate = false;
    bool tangent_degenerate = false;
    bool stable = true;
};

inline SecondFormBoundVerdict cor_tm07_check(const VarietySpec& spec, const SamplerConfig& cfg)
{
    const long n = static_cast<long>(spec.nparams());
    const long r = static_cast<long>(spec.ambient_dim());
    // The tower strictly increases until it plateaus, so it is flat by order r + 1.
    const auto tower = generic_tower(spec, static_cast<std::uint32_t>(r + 1), cfg);
    const auto tau = tangent_variety_dim(spec, 1, cfg);
    SecondFormBoundVerdict v;
    v.rank_II = tower[2].value - tower[1].value;
    v.bound = std::min(r - n, n);
    v.satisfied = v.rank_II >= v.bound;
    v.nondegenerate = tower.back().value == r;
    v.tangent_degenerate = tau.defect > 0;
    v.advisory = !v.nondegenerate || v.tangent_degenerate || !v.satisfied;
    v.stable = tower[1].stable && tower[2].stable && tower.back().stable && tau.dim.stable;
    return v;
}

/// rank f_{2,x,y} == rank II_{x,w}, w the tangent class of y.
struct TangentSecondFormVerdict {
    Estimate tangent_rank;
    Estimate second_form_rank;
    bool consistent = true;
};

/// Rank of v -> II_x(v, w) over the tangent basis, via polarization.
inline long second_form_rank(const FormSystem& second, std::span<const Rational> w)
{
    const std::size_t n = second.nvars;
    std::vector<RatVector> rows;
    for (std::size_t i = 0; i < n; ++i) {
        RatVector e(n, Rational{0});
        e[i] = 1;
        const std::vector<RatVector> args{e, RatVector(w.begin(), w.end())};
        rows.push_back(polarize(second, args));
    }
    return rank_of(second.forms.size(), rows);
}

inline TangentSecondFormVerdict cor_p09_consistency(const VarietySpec& spec, const SamplerConfig& cfg)
{
    cfg.validate();
    const std::size_t n = spec.nparams();
    std::vector<long> tangent, second;
    bool consistent = true;
    for (std::uint32_t t = 0; t < cfg.trials; ++t) {
        const auto jets = jet_table(spec, sample_point(spec, cfg, t), 2);
        const auto basis = jets.pivot_set(1);
        IntegerStream stream(cfg.seed, salt::tangent, t);
        const auto c = stream.nonzero_vector(basis.size(), cfg.coord_bound);
        RatVector w(n, Rational{0});
        for (std::size_t b = 0; b < basis.size(); ++b) {
            if (basis[b].degree() != 1) continue;
            for (std::size_t i = 0; i < n; ++i) {
                if (basis[b][i] == 1) w[i] = c[b];
            }
        }
        const long tr = f_map_point(jets, 1, basis, c).rank();
        const long sr = second_form_rank(fundamental_form_system(jets, 2), w);
        tangent.push_back(tr);
        second.push_back(sr);
        consistent = consistent && tr == sr;
    }
    TangentSecondFormVerdict v;
    v.tangent_rank = Estimate::max_of(std::move(tangent));
    v.second_form_rank = Estimate::max_of(std::move(second));
    v.consistent = consistent;
    return v;
}

} // namespace osculata
