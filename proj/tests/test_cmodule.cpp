#include <gtest/gtest.h>

#include "support/oracles.hpp"

using namespace cmod;

namespace {

const FieldSpec F2(2), F5(5);

// Relation the interval module of `bar` must carry between positions a <= b, read off the four-case table:
// inside-inside Δ, inside-after k×0 or 0×0, before-inside 0×k or 0×0, everything else between zero spaces.
Correspondence expected_relation(const Bar& bar, std::size_t a, std::size_t b, FieldSpec f) {
    bool ia = bar.start <= a && a <= bar.end, ib = bar.start <= b && b <= bar.end;
    if (ia && ib) return Correspondence::identity(f, 1);
    if (ia) return right_closed(bar.type) ? Correspondence::zero(f, 1, 0) : Correspondence::full(f, 1, 0);
    if (ib) return left_closed(bar.type) ? Correspondence::zero(f, 0, 1) : Correspondence::full(f, 0, 1);
    return Correspondence::zero(f, 0, 0);
}

} // namespace

TEST(GridLine, PositionsAndRepresentatives) {
    GridLine g({Rational(-1), Rational(0), Rational(2)});
    EXPECT_EQ(g.positions(), 7u);
    EXPECT_EQ(g.representative(0), Rational(-2));
    EXPECT_EQ(g.representative(1), Rational(-1));
    EXPECT_EQ(g.representative(2), Rational(-1, 2));
    EXPECT_EQ(g.representative(5), Rational(2));
    EXPECT_EQ(g.representative(6), Rational(3));
    EXPECT_THROW(GridLine({Rational(1), Rational(1)}), Error);
    EXPECT_THROW(GridLine(std::vector<Rational>{}), Error);
}

TEST(Bar, DecoratedEndpoints) {
    GridLine g({Rational(-1), Rational(0), Rational(2)});
    Bar b{1, 2, BarType::CoOpen};
    EXPECT_EQ(format_decorated(bar_birth(g, b)), "-1-");
    EXPECT_EQ(format_decorated(bar_death(g, b)), "0-");
    b = {2, 5, BarType::Open};
    EXPECT_EQ(format_decorated(bar_birth(g, b)), "-1+");
    EXPECT_EQ(format_decorated(bar_death(g, b)), "2+");
    b = {0, 6, BarType::Open};
    EXPECT_EQ(format_decorated(bar_birth(g, b)), "-inf");
    EXPECT_EQ(format_decorated(bar_death(g, b)), "inf");
}

TEST(IntervalModule, DerivedRelationsMatchTableExhaustively) {
    for (std::size_t n = 1; n <= 3; ++n) {
        GridLine g = oracle::integer_grid(n);
        for (std::size_t s = 0; s <= g.last(); ++s)
            for (std::size_t e = s; e <= g.last(); ++e)
                for (int ty = 0; ty < 4; ++ty) {
                    Bar bar = canonicalize(g, {s, e, static_cast<BarType>(ty)});
                    auto m = interval_module(g, bar, F2);
                    for (std::size_t a = 0; a <= g.last(); ++a)
                        for (std::size_t b = a + 1; b <= g.last(); ++b) {
                            bool before_after = a < bar.start && b > bar.end;
                            auto want = expected_relation(bar, a, b, F2);
                            // Between zero spaces the only relation is {0}; the table's 0×0 for s,t outside.
                            if (before_after) want = Correspondence::zero(F2, 0, 0);
                            EXPECT_EQ(m.derived(a, b), want) << "bar " << s << ".." << e << " type " << ty;
                        }
                }
    }
}

TEST(IntervalModule, OpenBarSeenFromBothSidesIsZero) {
    GridLine g = oracle::integer_grid(3);
    auto m = interval_module(g, {2, 4, BarType::Open}, F2);
    // (k×0) ∘ (0×k) through the support
    EXPECT_EQ(compose(m.derived(1, 3), m.derived(3, 5)), Correspondence::zero(F2, 0, 0));
    EXPECT_EQ(compose(Correspondence::full(F2, 0, 1), Correspondence::full(F2, 1, 0)), Correspondence::zero(F2, 0, 0));
}

TEST(IntervalModule, SingletonClosedBar) {
    GridLine g({Rational(0)});
    auto m = interval_module(g, {1, 1, BarType::Closed}, F2);
    EXPECT_EQ(m.dims(), (std::vector<std::size_t>{0, 1, 0}));
    EXPECT_EQ(m.corr(0), Correspondence::zero(F2, 0, 1));
    EXPECT_EQ(m.corr(1), Correspondence::zero(F2, 1, 0));
}

TEST(IntervalModule, FullLineTypesCoincide) {
    GridLine g = oracle::integer_grid(2);
    auto open = interval_module(g, {0, 4, BarType::Open}, F2);
    for (int ty = 0; ty < 4; ++ty) EXPECT_EQ(interval_module(g, canonicalize(g, {0, 4, static_cast<BarType>(ty)}), F2), open);
}

TEST(IntervalModule, RejectsBadBars) {
    GridLine g = oracle::integer_grid(2);
    EXPECT_THROW(interval_module(g, {0, 2, BarType::Closed}, F2), Error);
    EXPECT_THROW(interval_module(g, {1, 4, BarType::ContraOpen}, F2), Error);
    EXPECT_THROW(interval_module(g, {3, 2, BarType::Open}, F2), Error);
    EXPECT_THROW(interval_module(g, {1, 5, BarType::Open}, F2), Error);
}

TEST(DirectSum, Basics) {
    std::mt19937 rng(1);
    for (int it = 0; it < 100; ++it) {
        FieldSpec f = it % 2 ? F5 : F2;
        auto a = oracle::random_module(rng, f, 3);
        auto z = GridCModule::zero(f, a.grid());
        EXPECT_EQ(direct_sum(a, z), a);
        auto b = oracle::random_pmodule(rng, f, a.grid());
        auto s = direct_sum(a, b);
        for (std::size_t q = 0; q < a.positions(); ++q) EXPECT_EQ(s.dim(q), a.dim(q) + b.dim(q));
        std::size_t x = rng() % a.positions(), y = rng() % a.positions();
        if (x > y) std::swap(x, y);
        EXPECT_EQ(s.derived(x, y), corr_direct_sum(a.derived(x, y), b.derived(x, y)));
    }
    EXPECT_THROW(direct_sum(GridCModule::zero(F2, oracle::integer_grid(1)), GridCModule::zero(F2, oracle::integer_grid(2))),
                 Error);
}

TEST(Morphism, CompatibilityExtendsToDerivedPairs) {
    std::mt19937 rng(2);
    for (int it = 0; it < 60; ++it) {
        FieldSpec f = it % 2 ? F5 : F2;
        GridLine g = oracle::integer_grid(1 + rng() % 3);
        auto m = oracle::random_pmodule(rng, f, g), n = oracle::random_pmodule(rng, f, g);
        auto phi = morphism_from_maps(m, n, oracle::random_natural(rng, m, n));
        for (std::size_t a = 0; a < g.positions(); ++a)
            for (std::size_t b = a; b < g.positions(); ++b)
                EXPECT_EQ(compose(m.derived(a, b), phi.f[b]), compose(phi.f[a], n.derived(a, b)));
    }
}

TEST(Morphism, RejectsNonNatural) {
    GridLine g = oracle::integer_grid(1);
    auto m = interval_module(g, {1, 2, BarType::CoOpen}, F2);
    std::vector<Mat> maps = oracle::identity_maps(m);
    maps[1] = Mat(F2, 1, 1);
    EXPECT_THROW(morphism_from_maps(m, m, maps), Error);
}

TEST(Morphism, ImageKernelCokernelTrivialCases) {
    std::mt19937 rng(3);
    for (int it = 0; it < 40; ++it) {
        FieldSpec f = it % 2 ? F5 : F2;
        GridLine g = oracle::integer_grid(1 + rng() % 3);
        auto m = oracle::random_pmodule(rng, f, g);
        auto id = morphism_from_maps(m, m, oracle::identity_maps(m));
        auto zero = morphism_from_maps(m, m, oracle::zero_maps(m, m));
        EXPECT_EQ(morphism_image(id), m);
        EXPECT_EQ(morphism_image(zero), GridCModule::zero(f, g));
        EXPECT_EQ(morphism_cokernel(id), GridCModule::zero(f, g));
        EXPECT_EQ(morphism_cokernel(zero), m);
        // ker(0) = source, witnessed by the identity
        EXPECT_EQ(morphism_kernel(zero, id), m);
        // ker(id) = 0, witnessed by the zero module
        auto z = GridCModule::zero(f, g);
        EXPECT_EQ(morphism_kernel(id, morphism_from_maps(z, m, oracle::zero_maps(z, m))), z);
        bool nonzero = false;
        for (auto d : m.dims()) nonzero = nonzero || d > 0;
        if (nonzero) {
            EXPECT_THROW(morphism_kernel(id, id), Error);
        }
    }
}

TEST(Morphism, InclusionOfCoOpenBars) {
    // Grid {0,1,2}: the bar [1,+inf) includes into (0,+inf); image is the source bar, cokernel the bar (0,1).
    GridLine g = oracle::integer_grid(3);
    auto src = interval_module(g, {3, 6, BarType::CoOpen}, F2);
    auto tgt = interval_module(g, {2, 6, BarType::CoOpen}, F2);
    std::vector<Mat> maps = oracle::zero_maps(src, tgt);
    for (std::size_t q = 3; q <= 6; ++q) maps[q] = Mat::identity(F2, 1);
    auto phi = morphism_from_maps(src, tgt, maps);
    EXPECT_EQ(multiplicities(morphism_image(phi)).mult, (std::map<Bar, std::size_t>{{{3, 6, BarType::CoOpen}, 1}}));
    EXPECT_EQ(multiplicities(morphism_cokernel(phi)).mult, (std::map<Bar, std::size_t>{{{2, 2, BarType::CoOpen}, 1}}));
}

TEST(Morphism, RandomImageAndCokernelDimensions) {
    std::mt19937 rng(4);
    for (int it = 0; it < 60; ++it) {
        FieldSpec f = it % 2 ? F5 : F2;
        GridLine g = oracle::integer_grid(1 + rng() % 3);
        auto m = oracle::random_pmodule(rng, f, g), n = oracle::random_pmodule(rng, f, g);
        auto maps = oracle::random_natural(rng, m, n);
        auto phi = morphism_from_maps(m, n, maps);
        auto im = morphism_image(phi), co = morphism_cokernel(phi);
        for (std::size_t q = 0; q < g.positions(); ++q) {
            EXPECT_EQ(im.dim(q), rank(maps[q]));
            EXPECT_EQ(co.dim(q), n.dim(q) - rank(maps[q]));
        }
        EXPECT_TRUE(is_p_module(co));
    }
}

TEST(Morphism, CokernelNeedsPModuleTarget) {
    GridLine g = oracle::integer_grid(1);
    auto m = interval_module(g, {0, 1, BarType::ContraOpen}, F2);
    auto id = morphism_from_maps(m, m, oracle::identity_maps(m));
    EXPECT_THROW(morphism_cokernel(id), Error);
}
