#include <gtest/gtest.h>

#include "cmod/decompose.hpp"
#include "cmod/slice2d.hpp"
#include "support/random2d.hpp"

using namespace cmod;

namespace {

FieldSpec F2(2), F3(3);

// k on [0,2) x [0,2) under the lower-left convention
GridModule2D rect() { return oracle::rectangle2d(F3, {0, 2}, {0, 2}, 0, 0, 0, 0); }

struct Expected {
    bool nonempty = false;
    BarType type = BarType::Open;
    DecoratedValue birth, death;
};

// support of the slice of [a1,a2) x [b1,b2) along y = m x + c, by hand
Expected analytic(Rational a1, Rational a2, Rational b1, Rational b2, const LineSpec& l) {
    Rational xlo = (b2 - l.intercept) / l.slope, xhi = (b1 - l.intercept) / l.slope;
    Rational p = std::max(a1, xlo), q = std::min(a2, xhi);
    bool lc = a1 > xlo, rc = xhi < a2;
    Expected e;
    e.nonempty = p < q || (p == q && lc && rc);
    e.type = make_bar_type(lc, rc);
    e.birth = {ExtReal(p), lc ? '-' : '+'};
    e.death = {ExtReal(q), rc ? '+' : '-'};
    return e;
}

} // namespace

TEST(Slice2D, Validation) {
    Mat one = Mat::identity(F2, 1), zero10(F2, 1, 0), zero01(F2, 0, 1);
    // all spaces k; h identity, v identity except one zero: the square fails
    std::vector<std::vector<std::size_t>> d{{1, 1}, {1, 1}};
    std::vector<std::vector<Mat>> h{{one, one}};
    std::vector<std::vector<Mat>> v{{one}, {Mat(F2, 1, 1)}};
    EXPECT_THROW(GridModule2D(F2, {0, 1}, {0, 1}, d, h, v), Error);
    v[1][0] = one;
    EXPECT_NO_THROW(GridModule2D(F2, {0, 1}, {0, 1}, d, h, v));

    try {
        line_positions(rect(), {Rational(1), Rational(0)});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DegenerateLine);
    }
    EXPECT_THROW(slice(rect(), {Rational(0), Rational(1)}), Error);
    try {
        staircase_correspondence(rect(), {Rational(-1), Rational(1)}, Rational(1), Rational(0));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::OrderViolation);
    }
}

TEST(Slice2D, LinePositions) {
    GridModule2D m = GridModule2D::zero(F2, {0, 1}, {0, 1});
    auto g = line_positions(m, {Rational(-1), Rational(3, 2)});
    EXPECT_LE(g.n(), 4u);
    EXPECT_EQ(g.values(), (std::vector<Rational>{Rational(0), Rational(1, 2), Rational(1), Rational(3, 2)}));
    // through the vertex (1,0) and (0,1): crossings merge
    auto h = line_positions(m, {Rational(-1), Rational(1)});
    EXPECT_EQ(h.values(), (std::vector<Rational>{Rational(0), Rational(1)}));
    // missing the support
    auto s = slice(m, {Rational(-1), Rational(-10)});
    EXPECT_EQ(multiplicities(s).total(), 0u);
}

TEST(Slice2D, StaircaseExamples) {
    auto m = rect();
    LineSpec l{Rational(-1), Rational(2)};
    // s = t
    EXPECT_EQ(staircase_correspondence(m, l, Rational(1, 2), Rational(1, 2)), Correspondence::identity(F3, 1));
    // both inside
    EXPECT_EQ(staircase_correspondence(m, l, Rational(1, 4), Rational(3, 2)), Correspondence::identity(F3, 1));
    // s above the rectangle, t inside
    LineSpec steep{Rational(-4), Rational(5)};
    EXPECT_EQ(m.dim_at(Rational(1, 8), steep.y(Rational(1, 8))), 0u);
    EXPECT_EQ(m.dim_at(Rational(1), steep.y(Rational(1))), 1u);
    EXPECT_EQ(staircase_correspondence(m, steep, Rational(1, 8), Rational(1)), Correspondence::right_full(F3, 0, 1));
}

TEST(Slice2D, RectangleOpenBarThroughTopAndRight) {
    // enters through the top edge, leaves through the right edge
    auto m = rect();
    LineSpec l{Rational(-1, 2), Rational(5, 2)};
    auto d = multiplicities(slice(m, l));
    ASSERT_EQ(d.total(), 1u);
    const Bar& b = d.mult.begin()->first;
    EXPECT_EQ(b.type, BarType::Open);
    EXPECT_EQ(format_decorated(bar_birth(d.grid, b)), "1+");
    EXPECT_EQ(format_decorated(bar_death(d.grid, b)), "2-");
}

TEST(Slice2D, RectangleTypeFollowsEntryAndExitEdges) {
    // the left and bottom edges belong to the rectangle, so lines crossing them give closed ends
    std::mt19937 rng(3);
    auto m = rect();
    int crossing = 0;
    std::map<BarType, int> seen;
    for (int it = 0; it < 300; ++it) {
        LineSpec l = oracle::random_line(rng, 2);
        Expected e = analytic(0, 2, 0, 2, l);
        auto d = multiplicities(slice(m, l));
        if (!e.nonempty) {
            EXPECT_EQ(d.total(), 0u);
            continue;
        }
        ++crossing;
        ASSERT_EQ(d.total(), 1u);
        const Bar& b = d.mult.begin()->first;
        EXPECT_EQ(b.type, e.type);
        EXPECT_EQ(bar_birth(d.grid, b), e.birth);
        EXPECT_EQ(bar_death(d.grid, b), e.death);
        ++seen[b.type];
    }
    EXPECT_GT(crossing, 50);
    EXPECT_EQ(seen.size(), 4u);
}

TEST(Slice2D, RandomModulesAreValidAndDecomposeConsistently) {
    std::mt19937 rng(17);
    for (int it = 0; it < 40; ++it) {
        auto m = oracle::random_module2d(rng, it % 2 ? F2 : F3);
        auto s = slice(m, oracle::random_line(rng));
        EXPECT_EQ(multiplicities(s), decompose_via_unfolding(s));
    }
}

TEST(Slice2D, Functoriality) {
    std::mt19937 rng(23);
    int checked = 0;
    for (int it = 0; it < 60; ++it) {
        auto m = oracle::random_module2d(rng, it % 2 ? F2 : F3);
        auto l = oracle::random_line(rng);
        auto g = line_positions(m, l);
        // sample from crossings, midpoints and points beyond
        std::vector<Rational> pool;
        for (std::size_t q = 0; q < g.positions(); ++q) pool.push_back(g.representative(q));
        std::uniform_int_distribution<long> num(-14, 70);
        for (int k = 0; k < 6; ++k) pool.push_back(Rational(num(rng), 7));
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        for (int k = 0; k < 5; ++k) {
            std::array<Rational, 3> t{pool[pick(rng)], pool[pick(rng)], pool[pick(rng)]};
            std::sort(t.begin(), t.end());
            auto rt = staircase_correspondence(m, l, t[0], t[2]);
            auto rs = staircase_correspondence(m, l, t[0], t[1]);
            auto st = staircase_correspondence(m, l, t[1], t[2]);
            EXPECT_EQ(rt, compose(rs, st));
            ++checked;
        }
    }
    EXPECT_EQ(checked, 300);
}

TEST(Slice2D, CoarseningConsistency) {
    std::mt19937 rng(29);
    for (int it = 0; it < 30; ++it) {
        auto m = oracle::random_module2d(rng, F2);
        auto l = oracle::random_line(rng);
        auto g = line_positions(m, l);
        Rational s = g.representative(0), t = g.representative(g.last());
        auto fine = finest_nodes(m, l, s, t);
        auto finest = staircase_along(m, l, fine);
        for (int k = 0; k < 20; ++k) {
            std::vector<Rational> coarse{fine.front()};
            std::bernoulli_distribution keep(0.4);
            for (std::size_t i = 1; i + 1 < fine.size(); ++i)
                if (keep(rng)) coarse.push_back(fine[i]);
            coarse.push_back(fine.back());
            auto c = staircase_along(m, l, coarse);
            // each basis pair of the finest composite has a witness chain on the coarser staircase
            for (std::size_t r = 0; r < finest.space().dim(); ++r) {
                Vec w = finest.space().basis().row(r);
                Vec u(w.begin(), w.begin() + finest.dim_left()), v(w.begin() + finest.dim_left(), w.end());
                EXPECT_TRUE(c.contains(u, v));
            }
        }
    }
}

TEST(Slice2D, Additivity) {
    std::mt19937 rng(31);
    for (int it = 0; it < 30; ++it) {
        auto a = oracle::random_module2d(rng, F3), b = oracle::random_module2d(rng, F3);
        auto l = oracle::random_line(rng);
        auto ds = multiplicities(slice(direct_sum(a, b), l));
        EXPECT_EQ(ds, diagram_sum(multiplicities(slice(a, l)), multiplicities(slice(b, l))));
    }
    // two disjoint rectangles: two bars
    std::vector<Rational> xs{0, 1, 2, 3}, ys{0, 1, 2, 3};
    auto r1 = oracle::rectangle2d(F2, xs, ys, 0, 0, 2, 2), r2 = oracle::rectangle2d(F2, xs, ys, 2, 2, 0, 0);
    EXPECT_EQ(multiplicities(slice(direct_sum(r1, r2), {Rational(-1), Rational(3)})).total(), 2u);
}

TEST(Slice2D, ZeroModule) {
    auto z = GridModule2D::zero(F2, {0, 1, 2}, {0, 1});
    auto s = slice(z, {Rational(-2), Rational(1)});
    for (auto d : s.dims()) EXPECT_EQ(d, 0u);
}
