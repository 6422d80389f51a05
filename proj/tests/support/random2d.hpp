#pragma once

// Random commuting grid modules for the slicing tests.

#include "cmod/slice2d.hpp"
#include "support/oracles.hpp"

namespace oracle {

// k on [xs[i0], xs[i1+1]) x [ys[j0], ys[j1+1]) in grid terms, identities inside
inline cmod::GridModule2D rectangle2d(FieldSpec f, const std::vector<cmod::Rational>& xs, const std::vector<cmod::Rational>& ys,
                                      std::size_t i0, std::size_t i1, std::size_t j0, std::size_t j1) {
    std::size_t nx = xs.size(), ny = ys.size();
    auto in = [&](std::size_t i, std::size_t j) { return i0 <= i && i <= i1 && j0 <= j && j <= j1; };
    std::vector<std::vector<std::size_t>> d(nx, std::vector<std::size_t>(ny));
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < ny; ++j) d[i][j] = in(i, j);
    std::vector<std::vector<Mat>> h(nx - 1), v(nx);
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < ny; ++j) {
            if (i + 1 < nx) h[i].push_back(in(i, j) && in(i + 1, j) ? Mat::identity(f, 1) : Mat(f, d[i + 1][j], d[i][j]));
            if (j + 1 < ny) v[i].push_back(in(i, j) && in(i, j + 1) ? Mat::identity(f, 1) : Mat(f, d[i][j + 1], d[i][j]));
        }
    return cmod::GridModule2D(f, xs, ys, d, h, v);
}

inline Mat random_invertible(std::mt19937& rng, FieldSpec f, std::size_t n) {
    while (true) {
        Mat m = random_mat(rng, f, n, n);
        if (cmod::rank(m) == n) return m;
    }
}

// Same module in random bases at every grid point.
inline cmod::GridModule2D conjugate(std::mt19937& rng, const cmod::GridModule2D& m) {
    FieldSpec f = m.field();
    std::size_t nx = m.xs().size(), ny = m.ys().size();
    std::vector<std::vector<Mat>> g(nx), gi(nx);
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < ny; ++j) {
            g[i].push_back(random_invertible(rng, f, m.dims()[i][j]));
            gi[i].push_back(cmod::inverse(g[i].back()));
        }
    auto h = m.hmaps(), v = m.vmaps();
    for (std::size_t i = 0; i + 1 < nx; ++i)
        for (std::size_t j = 0; j < ny; ++j) h[i][j] = g[i + 1][j] * m.hmaps()[i][j] * gi[i][j];
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j + 1 < ny; ++j) v[i][j] = g[i][j + 1] * m.vmaps()[i][j] * gi[i][j];
    return cmod::GridModule2D(f, m.xs(), m.ys(), m.dims(), h, v);
}

// Random hmaps, then vmaps drawn from the solution space of the commutativity equations.
inline cmod::GridModule2D random_solved2d(std::mt19937& rng, FieldSpec f, const std::vector<cmod::Rational>& xs,
                                          const std::vector<cmod::Rational>& ys, std::size_t max_dim) {
    std::size_t nx = xs.size(), ny = ys.size();
    std::uniform_int_distribution<std::size_t> dd(0, max_dim);
    std::bernoulli_distribution low(0.5);
    std::vector<std::vector<std::size_t>> d(nx, std::vector<std::size_t>(ny));
    for (auto& r : d)
        for (auto& x : r) x = dd(rng);
    std::vector<std::vector<Mat>> h(nx - 1), v(nx);
    for (std::size_t i = 0; i + 1 < nx; ++i)
        for (std::size_t j = 0; j < ny; ++j) {
            Mat m = random_mat(rng, f, d[i + 1][j], d[i][j]);
            // rank-deficient maps leave room for nonzero vertical maps
            if (low(rng) && m.cols() > 0)
                for (std::size_t r = 0; r < m.rows(); ++r) m.at(r, 0) = 0;
            h[i].push_back(m);
        }
    for (std::size_t j = 0; j + 1 < ny; ++j) {
        // unknown entries of v(i,j) for every i
        std::vector<std::size_t> off(nx + 1, 0);
        for (std::size_t i = 0; i < nx; ++i) off[i + 1] = off[i] + d[i][j + 1] * d[i][j];
        std::size_t unknowns = off[nx];
        Mat eq(f, 0, unknowns);
        for (std::size_t i = 0; i + 1 < nx; ++i) {
            // v(i+1,j) h(i,j) - h(i,j+1) v(i,j) = 0, entrywise
            const Mat& ha = h[i][j];
            const Mat& hb = h[i][j + 1];
            for (std::size_t r = 0; r < d[i + 1][j + 1]; ++r)
                for (std::size_t c = 0; c < d[i][j]; ++c) {
                    Vec row(unknowns, 0);
                    for (std::size_t k = 0; k < d[i + 1][j]; ++k)
                        row[off[i + 1] + r * d[i + 1][j] + k] = f.add(row[off[i + 1] + r * d[i + 1][j] + k], ha.at(k, c));
                    for (std::size_t k = 0; k < d[i][j + 1]; ++k)
                        row[off[i] + k * d[i][j] + c] = f.sub(row[off[i] + k * d[i][j] + c], hb.at(r, k));
                    eq.append_row(row);
                }
        }
        Mat sol = cmod::kernel_basis(eq).basis();
        Vec x(unknowns, 0);
        std::uniform_int_distribution<Elem> coef(0, f.p() - 1);
        for (std::size_t b = 0; b < sol.rows(); ++b) {
            Elem c = coef(rng);
            for (std::size_t u = 0; u < unknowns; ++u) x[u] = f.add(x[u], f.mul(c, sol.at(b, u)));
        }
        for (std::size_t i = 0; i < nx; ++i) {
            Mat m(f, d[i][j + 1], d[i][j]);
            for (std::size_t r = 0; r < m.rows(); ++r)
                for (std::size_t c = 0; c < m.cols(); ++c) m.at(r, c) = x[off[i] + r * d[i][j] + c];
            v[i].push_back(m);
        }
    }
    return cmod::GridModule2D(f, xs, ys, d, h, v);
}

inline std::vector<cmod::Rational> integer_values(std::size_t n, long start = 0) {
    std::vector<cmod::Rational> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(cmod::Rational(start + long(i)));
    return out;
}

// Either a conjugated sum of grid rectangles or a solved random module.
inline cmod::GridModule2D random_module2d(std::mt19937& rng, FieldSpec f, std::size_t n = 4, std::size_t max_dim = 3) {
    auto xs = integer_values(n), ys = integer_values(n);
    std::bernoulli_distribution pick(0.5);
    if (pick(rng)) return random_solved2d(rng, f, xs, ys, max_dim);
    std::uniform_int_distribution<std::size_t> cnt(1, max_dim), ix(0, n - 1);
    cmod::GridModule2D acc = cmod::GridModule2D::zero(f, xs, ys);
    std::size_t k = cnt(rng);
    for (std::size_t r = 0; r < k; ++r) {
        std::size_t a = ix(rng), b = ix(rng), c = ix(rng), e = ix(rng);
        acc = cmod::direct_sum(acc, rectangle2d(f, xs, ys, std::min(a, b), std::max(a, b), std::min(c, e), std::max(c, e)));
    }
    return conjugate(rng, acc);
}

// random line of slope -p/q through the box [-1, n]^2
inline cmod::LineSpec random_line(std::mt19937& rng, std::size_t n = 4) {
    std::uniform_int_distribution<long> num(1, 6), den(1, 4), icpt(-4, long(4 * n));
    cmod::Rational slope = -cmod::Rational(num(rng), den(rng));
    cmod::Rational x0 = cmod::Rational(icpt(rng), 4), y0 = cmod::Rational(icpt(rng), 4);
    return {slope, y0 - slope * x0};
}

} // namespace oracle
