#include <gtest/gtest.h>

#include "support/oracles.hpp"

using namespace cmod;

namespace {

const FieldSpec F2(2), F5(5);

Mat M(FieldSpec f, std::size_t cols, std::vector<std::vector<std::int64_t>> rows) { return Mat::from_rows(f, cols, rows); }
Subspace S(FieldSpec f, std::size_t cols, std::vector<std::vector<std::int64_t>> rows) { return Subspace::span(M(f, cols, rows)); }

} // namespace

TEST(FieldSpec, RejectsNonPrimes) {
    EXPECT_THROW(FieldSpec(4), Error);
    EXPECT_THROW(FieldSpec(1), Error);
    EXPECT_THROW(FieldSpec(65537), Error);
    EXPECT_NO_THROW(FieldSpec(65521));
    FieldSpec f(7);
    for (Elem a = 1; a < 7; ++a) EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
    EXPECT_EQ(f.reduce(-1), 6u);
}

TEST(Rref, Examples) {
    auto r = rref(Mat::identity(F2, 3));
    EXPECT_EQ(r.rank, 3u);
    EXPECT_EQ(r.canonical, Mat::identity(F2, 3));

    r = rref(M(F2, 2, {{1, 1}, {1, 1}}));
    EXPECT_EQ(r.rank, 1u);
    EXPECT_EQ(r.canonical, M(F2, 2, {{1, 1}}));

    r = rref(M(F5, 2, {{1, 2}, {2, 4}}));
    EXPECT_EQ(r.rank, 1u);
    EXPECT_EQ(r.canonical, M(F5, 2, {{1, 2}}));

    EXPECT_EQ(rref(Mat(F2, 0, 3)).rank, 0u);
}

TEST(Kernel, Examples) {
    EXPECT_EQ(kernel_basis(Mat(F2, 2, 3)), Subspace::full(F2, 3));
    EXPECT_EQ(kernel_basis(Mat::identity(F2, 2)), Subspace::zero(F2, 2));
    // Oracle: keep the vectors of GF(2)^3 annihilated by [1,1,0].
    Mat m = M(F2, 3, {{1, 1, 0}});
    auto k = kernel_basis(m);
    EXPECT_EQ(oracle::elements(k), oracle::kernel_elements(m));
    EXPECT_EQ(k, S(F2, 3, {{1, 1, 0}, {0, 0, 1}}));
}

TEST(SubspaceOps, SumExamples) {
    EXPECT_EQ(subspace_sum(S(F2, 2, {{1, 0}}), S(F2, 2, {{0, 1}})), Subspace::full(F2, 2));
    auto v = S(F5, 3, {{1, 2, 3}});
    EXPECT_EQ(subspace_sum(v, v), v);
    auto a = S(F2, 2, {{1, 1}}), b = S(F2, 2, {{1, 0}});
    std::set<Vec> un;
    for (auto& x : oracle::elements(a))
        for (auto& y : oracle::elements(b)) un.insert({static_cast<Elem>((x[0] + y[0]) % 2), static_cast<Elem>((x[1] + y[1]) % 2)});
    EXPECT_EQ(oracle::elements(subspace_sum(a, b)), un);
    EXPECT_EQ(subspace_sum(a, b), Subspace::full(F2, 2));
    EXPECT_THROW(subspace_sum(a, Subspace::full(F2, 3)), Error);
}

TEST(SubspaceOps, IntersectExamples) {
    EXPECT_EQ(subspace_intersect(S(F2, 2, {{1, 0}}), S(F2, 2, {{0, 1}})), Subspace::zero(F2, 2));
    EXPECT_EQ(subspace_intersect(S(F2, 2, {{1, 1}}), Subspace::full(F2, 2)), S(F2, 2, {{1, 1}}));
    auto a = S(F2, 3, {{1, 0, 0}, {0, 1, 0}}), b = S(F2, 3, {{0, 1, 0}, {0, 0, 1}});
    std::set<Vec> meet;
    auto eb = oracle::elements(b);
    for (auto& x : oracle::elements(a))
        if (eb.count(x)) meet.insert(x);
    EXPECT_EQ(oracle::elements(subspace_intersect(a, b)), meet);
    EXPECT_EQ(subspace_intersect(a, b), S(F2, 3, {{0, 1, 0}}));
}

TEST(SubspaceOps, PreimageExamples) {
    std::mt19937 rng(3);
    Mat m = oracle::random_mat(rng, F5, 3, 2);
    EXPECT_EQ(preimage(m, Subspace::full(F5, 3)), Subspace::full(F5, 2));
    EXPECT_EQ(preimage(m, Subspace::zero(F5, 3)), kernel_basis(m));
    Mat p = M(F2, 2, {{1, 0}, {0, 0}});
    auto target = S(F2, 2, {{1, 0}});
    std::set<Vec> pre;
    for (auto& v : oracle::all_vectors(F2, 2))
        if (target.contains(mul_vec(p, v))) pre.insert(v);
    EXPECT_EQ(oracle::elements(preimage(p, target)), pre);
    EXPECT_EQ(preimage(p, target), Subspace::full(F2, 2));
}

TEST(SubspaceProperties, ModularLawAndContainment) {
    std::mt19937 rng(11);
    for (FieldSpec f : {F2, F5})
        for (int it = 0; it < 300; ++it) {
            std::size_t n = 1 + rng() % 6;
            auto a = oracle::random_subspace(rng, f, n), b = oracle::random_subspace(rng, f, n);
            auto meet = subspace_intersect(a, b), join = subspace_sum(a, b);
            EXPECT_TRUE(meet.is_subspace_of(a));
            EXPECT_TRUE(meet.is_subspace_of(b));
            EXPECT_TRUE(a.is_subspace_of(join));
            EXPECT_EQ(a.dim() + b.dim(), join.dim() + meet.dim());
        }
}

TEST(SubspaceProperties, RrefCanonicalOnRowEquivalentPairs) {
    std::mt19937 rng(12);
    for (FieldSpec f : {F2, F5})
        for (int it = 0; it < 300; ++it) {
            std::size_t r = 1 + rng() % 4, c = 1 + rng() % 6;
            Mat a = oracle::random_mat(rng, f, r, c);
            // Multiply by a random invertible matrix to get a row-equivalent matrix.
            Mat g;
            do g = oracle::random_mat(rng, f, r, r);
            while (rank(g) < r);
            Mat b = g * a;
            EXPECT_EQ(rref(a).canonical, rref(b).canonical);
            EXPECT_EQ(rref(rref(a).canonical).canonical, rref(a).canonical);
        }
}

TEST(SubspaceProperties, RankNullity) {
    std::mt19937 rng(13);
    for (FieldSpec f : {F2, F5})
        for (int it = 0; it < 300; ++it) {
            Mat m = oracle::random_mat(rng, f, rng() % 5, 1 + rng() % 5);
            EXPECT_EQ(kernel_basis(m).dim() + image(m).dim(), m.cols());
            auto k = kernel_basis(m);
            for (std::size_t i = 0; i < k.dim(); ++i)
                for (Elem e : mul_vec(m, k.basis().row(i))) EXPECT_EQ(e, 0u);
        }
}

TEST(SubspaceProperties, KernelMatchesEnumeration) {
    std::mt19937 rng(14);
    for (FieldSpec f : {F2, FieldSpec(3)})
        for (int it = 0; it < 100; ++it) {
            Mat m = oracle::random_mat(rng, f, rng() % 4, 1 + rng() % 4);
            EXPECT_EQ(oracle::elements(kernel_basis(m)), oracle::kernel_elements(m));
        }
}

TEST(SubspaceOps, ComplementAndInverse) {
    std::mt19937 rng(15);
    for (int it = 0; it < 200; ++it) {
        std::size_t n = 1 + rng() % 5;
        auto s = oracle::random_subspace(rng, F5, n);
        Mat w = complement_basis(s);
        EXPECT_EQ(w.rows() + s.dim(), n);
        EXPECT_EQ(rank(vstack(w, s.basis())), n);
        Mat full = vstack(w, s.basis());
        EXPECT_EQ(full * inverse(full), Mat::identity(F5, n));
    }
    EXPECT_EQ(complement_basis(S(F2, 2, {{1, 1}})), M(F2, 2, {{1, 0}}));
}
