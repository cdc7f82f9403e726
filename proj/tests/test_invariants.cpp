#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace osculata;
using osculata::testing::ints;
using osculata::testing::oracle_jet_rows;
using osculata::testing::oracle_delta;
using osculata::testing::oracle_rank;
using osculata::testing::oracle_theta;
using osculata::testing::plane_in_p4;
using osculata::testing::quadric_surface;
using osculata::testing::segre_p1_p2;

namespace {

const SamplerConfig kCfg{};

ChartPoint at(const VarietySpec& spec, const RatVector& x) { return validate_point(spec, x); }

} // namespace

TEST(SamplerTest, ConfigValidation)
{
    EXPECT_THROW((SamplerConfig{1, 0, 10}.validate()), InputError);
    EXPECT_THROW((SamplerConfig{1, 3, 0}.validate()), InputError);
    EXPECT_NO_THROW(kCfg.validate());
}

TEST(SamplerTest, StreamsAreDeterministicAndSeparated)
{
    IntegerStream a(7, salt::point, 2), b(7, salt::point, 2), c(7, salt::pair, 2), d(8, salt::point, 2);
    const auto va = a.vector(6, 10);
    EXPECT_EQ(va, b.vector(6, 10));
    EXPECT_NE(va, c.vector(6, 10));
    EXPECT_NE(va, d.vector(6, 10));
    for (const auto& x : va) {
        EXPECT_LE(abs(x), 10);
        EXPECT_EQ(boost::multiprecision::denominator(x), 1);
    }
}

TEST(EstimateTest, MaxMinAndStability)
{
    const auto e = Estimate::max_of({1, 3, 2});
    EXPECT_EQ(e.value, 3);
    EXPECT_FALSE(e.stable);
    const auto m = Estimate::min_of({4, 4});
    EXPECT_EQ(m.value, 4);
    EXPECT_TRUE(m.stable);
}

TEST(FMapDirectionTest, TwistedCubicAtOne)
{
    const auto spec = gen_rnc(3);
    const auto map = f_map_direction(spec, at(spec, ints({1})), 1, ints({1}));
    ASSERT_EQ(map.basis.size(), 2u);
    EXPECT_EQ(map.basis[0], MultiIndex{0});
    EXPECT_TRUE(is_zero(map.columns[0]));
    EXPECT_FALSE(is_zero(map.columns[1]));
    EXPECT_EQ(map.rank(), 1);
}

TEST(FMapDirectionTest, PlaneGivesZeroMatrix)
{
    const auto spec = plane_in_p4();
    for (const auto& u : {ints({1, 0}), ints({2, -3})}) {
        const auto map = f_map_direction(spec, at(spec, ints({1, 2})), 1, u);
        for (const auto& c : map.columns) EXPECT_TRUE(is_zero(c));
    }
}

TEST(FMapDirectionTest, QuadricAtOrigin)
{
    const auto spec = quadric_surface();
    const auto map = f_map_direction(spec, at(spec, ints({0, 0})), 1, ints({1, 1}));
    EXPECT_EQ(map.rank(), 1);
    for (const auto& c : map.columns) {
        EXPECT_EQ(c[0], 0);
        EXPECT_EQ(c[1], 0);
        EXPECT_EQ(c[2], 0);
    }
}

TEST(ThetaTest, Examples)
{
    EXPECT_EQ(theta_k(gen_rnc(3), 1, kCfg).value, 1);
    EXPECT_EQ(theta_k(quadric_surface(), 1, kCfg).value, 1);
    EXPECT_EQ(theta_k(gen_veronese(2, 2), 1, kCfg).value, 2);
    const auto q = quadric_surface();
    const auto x = at(q, ints({0, 0}));
    long best = 0;
    for (const auto& u : {ints({1, 0}), ints({0, 1}), ints({1, 1})}) best = std::max(best, oracle_theta(q, x.coords, 1, u));
    EXPECT_EQ(best, 1);
    EXPECT_EQ(theta_k(q, x, 1, kCfg).value, 1);
}

TEST(DeltaTest, Examples)
{
    EXPECT_EQ(delta_k(gen_rnc(3), 1, kCfg).value, -1);
    EXPECT_EQ(delta_k(quadric_surface(), 1, kCfg).value, 1);
    EXPECT_EQ(delta_k(gen_veronese(2, 2), 1, kCfg).value, 0);
    EXPECT_THROW(delta_k(gen_rnc(3), 0, kCfg), InputError);
}

TEST(TangentRankTest, Examples)
{
    const auto c = gen_rnc(3);
    EXPECT_EQ(tangent_rank(c, at(c, ints({2})), 1, kCfg).value, 1);
    const auto v = gen_veronese(2, 2);
    EXPECT_EQ(tangent_rank(v, at(v, ints({1, -2})), 1, kCfg).value, 2);
    const auto p = plane_in_p4();
    EXPECT_EQ(tangent_rank(p, at(p, ints({1, 1})), 1, kCfg).value, 0);
}

TEST(TangentVarietyTest, Examples)
{
    const auto c = tangent_variety_dim(gen_rnc(3), 1, kCfg);
    EXPECT_EQ(c.dim.value, 2);
    EXPECT_EQ(c.defect, 0);
    const auto v = tangent_variety_dim(gen_veronese(2, 2), 1, kCfg);
    EXPECT_EQ(v.dim.value, 4);
    EXPECT_EQ(v.defect, 0);
    const auto p = tangent_variety_dim(plane_in_p4(), 1, kCfg);
    EXPECT_EQ(p.dim.value, 2);
    EXPECT_EQ(p.defect, 2);
}

TEST(SecantTest, Examples)
{
    const auto c = secant_dim_terracini(gen_rnc(3), kCfg);
    EXPECT_EQ(c.dim.value, 3);
    EXPECT_EQ(c.defect, 0);
    const auto v = secant_dim_terracini(gen_veronese(2, 2), kCfg);
    EXPECT_EQ(v.dim.value, 4);
    EXPECT_EQ(v.defect, 1);
    const auto p = secant_dim_terracini(gen_projection(gen_veronese(2, 3), 5, 42), kCfg);
    EXPECT_EQ(p.dim.value, 5);
    EXPECT_EQ(p.defect, 0);
}

TEST(VanishingCheckTest, Examples)
{
    const auto q = vanishing_check(quadric_surface(), 1, kCfg);
    EXPECT_TRUE(q.hypothesis);
    EXPECT_TRUE(q.conclusion);
    EXPECT_TRUE(q.respected);
    EXPECT_EQ(q.t_k2, 3);

    const auto c = vanishing_check(gen_rnc(3), 1, kCfg);
    EXPECT_FALSE(c.hypothesis);
    EXPECT_TRUE(c.respected);

    const auto p = vanishing_check(plane_in_p4(), 1, kCfg);
    EXPECT_TRUE(p.hypothesis);
    EXPECT_TRUE(p.conclusion);
    EXPECT_TRUE(p.respected);
}

TEST(SecantTangentCheckTest, Examples)
{
    const auto q = cor_tm06_check(quadric_surface(), kCfg);
    EXPECT_EQ(q.tangent_dim, 3);
    EXPECT_EQ(q.secant_dim, 3);
    EXPECT_TRUE(q.hypothesis && q.conclusion && q.respected);

    const auto v = cor_tm06_check(gen_veronese(2, 2), kCfg);
    EXPECT_EQ(v.tangent_dim, 4);
    EXPECT_EQ(v.secant_dim, 4);
    EXPECT_EQ(v.t2, 5);
    EXPECT_TRUE(v.hypothesis && v.conclusion);

    const auto p = cor_tm06_check(gen_projection(gen_veronese(2, 3), 5, 42), kCfg);
    EXPECT_TRUE(p.conclusion);
    EXPECT_TRUE(p.respected);
}

TEST(SecondFormBoundTest, Examples)
{
    const auto q = cor_tm07_check(quadric_surface(), kCfg);
    EXPECT_EQ(q.rank_II, 1);
    EXPECT_EQ(q.bound, 1);
    EXPECT_TRUE(q.satisfied);
    const auto v = cor_tm07_check(gen_veronese(2, 2), kCfg);
    EXPECT_EQ(v.rank_II, 3);
    EXPECT_EQ(v.bound, 2);
    EXPECT_TRUE(v.satisfied);
    const auto s = cor_tm07_check(segre_p1_p2(), kCfg);
    EXPECT_EQ(s.rank_II, 2);
    EXPECT_EQ(s.bound, 2);
    EXPECT_TRUE(s.satisfied);
    // A plane never reaches the bound; it is degenerate, so the verdict is advisory only.
    const auto p = cor_tm07_check(plane_in_p4(), kCfg);
    EXPECT_FALSE(p.satisfied);
    EXPECT_TRUE(p.advisory);
    EXPECT_FALSE(p.nondegenerate);
}

TEST(TangentSecondFormTest, Examples)
{
    const auto c = cor_p09_consistency(gen_rnc(3), kCfg);
    EXPECT_EQ(c.tangent_rank.value, 1);
    EXPECT_EQ(c.second_form_rank.value, 1);
    const auto q = cor_p09_consistency(quadric_surface(), kCfg);
    EXPECT_EQ(q.tangent_rank.value, 1);
    EXPECT_EQ(q.second_form_rank.value, 1);
    const auto v = cor_p09_consistency(gen_veronese(2, 2), kCfg);
    EXPECT_EQ(v.tangent_rank.value, 2);
    EXPECT_EQ(v.second_form_rank.value, 2);
    EXPECT_TRUE(c.consistent && q.consistent && v.consistent);
}

// Property suites ---------------------------------------------------------

TEST(InvariantsProperties, BoundChain)
{
    for (const auto& spec : builtin_corpus()) {
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            const SamplerConfig cfg{seed, 3, 10};
            for (std::uint32_t t = 0; t < cfg.trials; ++t) {
                const auto x = sample_point(spec, cfg, t);
                const auto tower = osculating_tower(spec, x, 4);
                for (std::uint32_t k = 1; k <= 3; ++k) {
                    const auto th = theta_k(spec, x, k, cfg);
                    const auto tr = tangent_rank(spec, x, k, cfg);
                    const long step = static_cast<long>(tower.dims[k] - tower.dims[k - 1]);
                    const long next = static_cast<long>(tower.dims[k + 1] - tower.dims[k]);
                    for (auto s : th.samples) {
                        ASSERT_GE(s, 0);
                        ASSERT_LE(s, step) << spec.name() << " k=" << k;
                    }
                    for (auto s : tr.samples) ASSERT_LE(s, std::min<long>(spec.nparams(), next)) << spec.name();
                }
            }
        }
    }
}

TEST(InvariantsProperties, DeltaConsistency)
{
    for (const auto& spec : builtin_corpus()) {
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            const auto sv = secant_dim_terracini(spec, SamplerConfig{seed, 3, 10});
            if (sv.dim.stable && sv.delta1.stable) {
                ASSERT_TRUE(sv.delta_consistent) << spec.name();
                ASSERT_EQ(sv.delta1.value, sv.defect - 1);
            }
            ASSERT_LE(sv.dim.value, std::min<long>(2 * spec.nparams() + 1, spec.ambient_dim()));
        }
    }
}

TEST(InvariantsProperties, ImageConsistency)
{
    for (const auto& spec : builtin_corpus()) {
        const auto x = sample_point(spec, kCfg, 0u);
        const auto jets = jet_table(spec, x, 4);
        for (std::uint32_t k = 1; k <= 3; ++k) {
            auto rows = std::vector<RatVector>(jets.span(k).basis());
            for (std::size_t i = 0; i < spec.nparams(); ++i) {
                RatVector e(spec.nparams(), Rational{0});
                e[i] = 1;
                for (const auto& c : f_map_direction(jets, k, e).columns) rows.push_back(c);
            }
            ASSERT_EQ(Subspace::span(jets.ambient(), rows), jets.span(k + 1)) << spec.name() << " k=" << k;
        }
    }
}

TEST(InvariantsProperties, LowOrderColumnsVanish)
{
    std::mt19937_64 rng(51);
    for (const auto& spec : builtin_corpus()) {
        const auto x = sample_point(spec, kCfg, 2u);
        const auto jets = jet_table(spec, x, 4);
        for (std::uint32_t k = 1; k <= 3; ++k) {
            const auto u = osculata::testing::random_vector(rng, spec.nparams(), 5);
            const auto map = f_map_direction(jets, k, u);
            for (std::size_t c = 0; c < map.basis.size(); ++c) {
                if (map.basis[c].degree() + 1 <= k) {
                    ASSERT_TRUE(is_zero(map.columns[c])) << spec.name();
                }
            }
        }
    }
}

TEST(InvariantsProperties, PerturbedPivotSetGivesEqualRanks)
{
    std::mt19937_64 rng(52);
    for (const auto& spec : builtin_corpus()) {
        for (std::uint32_t t = 0; t < 3; ++t) {
            const auto x = sample_point(spec, kCfg, t);
            const auto jets = jet_table(spec, x, 4);
            for (std::uint32_t k = 1; k <= 3; ++k) {
                const auto fwd = jets.pivot_set(k);
                const auto rev = jets.pivot_set(k, true);
                ASSERT_EQ(fwd.size(), rev.size());
                const auto u = osculata::testing::random_vector(rng, spec.nparams(), 5);
                const auto a = f_map_direction(jets, k, u, fwd);
                const auto b = f_map_direction(jets, k, u, rev);
                ASSERT_EQ(a.rank(), b.rank()) << spec.name() << " k=" << k;
                ASSERT_EQ(Subspace::span(jets.ambient(), a.columns), Subspace::span(jets.ambient(), b.columns));
            }
        }
    }
}

TEST(InvariantsProperties, ThetaAndDeltaAgreeWithStackedOracles)
{
    for (const auto& spec : builtin_corpus()) {
        for (std::uint32_t t = 0; t < 3; ++t) {
            const auto x = sample_point(spec, kCfg, t);
            IntegerStream stream(kCfg.seed, salt::direction, t);
            const auto u = stream.nonzero_vector(spec.nparams(), kCfg.coord_bound);
            const auto jets = jet_table(spec, x, 3);
            for (std::uint32_t k = 1; k <= 2; ++k) {
                ASSERT_EQ(f_map_direction(jets, k, u).rank(), oracle_theta(spec, x.coords, k, u)) << spec.name();
            }
            const auto [p, q] = sample_pair(spec, kCfg, t);
            for (std::uint32_t k = 1; k <= 2; ++k) {
                const auto a = jet_table(spec, p, k).span(k);
                const auto b = jet_table(spec, q, k).span(k);
                ASSERT_EQ(static_cast<long>(intersection_dim(a, b)) - 1, oracle_delta(spec, p.coords, q.coords, k));
            }
        }
    }
}

TEST(InvariantsProperties, DeterministicPerSeed)
{
    for (const auto& spec : builtin_corpus()) {
        const SamplerConfig cfg{9, 3, 10};
        const auto a = vanishing_check(spec, 1, cfg);
        const auto b = vanishing_check(spec, 1, cfg);
        ASSERT_EQ(a.theta, b.theta);
        ASSERT_EQ(a.delta, b.delta);
        ASSERT_EQ(a.t_k2, b.t_k2);
        ASSERT_EQ(a.stable, b.stable);
        ASSERT_EQ(delta_k(spec, 2, cfg).samples, delta_k(spec, 2, cfg).samples);
    }
}

TEST(InvariantsProperties, TangentRankMatchesSecondFormAcrossSeeds)
{
    for (const auto& spec : builtin_corpus()) {
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            const auto v = cor_p09_consistency(spec, SamplerConfig{seed, 3, 10});
            ASSERT_TRUE(v.consistent) << spec.name() << " seed " << seed;
            ASSERT_EQ(v.tangent_rank.samples, v.second_form_rank.samples);
        }
    }
}
