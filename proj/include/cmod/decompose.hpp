#pragma once

#include <map>
#include <vector>

#include "cmod/sections.hpp"

namespace cmod {

struct DecoratedDiagram {
    GridLine grid;
    std::map<Bar, std::size_t> mult;  // ordered by type, start, end

    void add(const Bar& b, std::size_t k = 1) {
        if (k) mult[b] += k;
    }
    std::size_t total() const {
        std::size_t n = 0;
        for (const auto& [b, k] : mult) n += k;
        return n;
    }
    std::size_t covering(std::size_t q) const {
        std::size_t n = 0;
        for (const auto& [b, k] : mult)
            if (b.start <= q && q <= b.end) n += k;
        return n;
    }
    friend bool operator==(const DecoratedDiagram&, const DecoratedDiagram&) = default;
};

inline DecoratedDiagram diagram_sum(const DecoratedDiagram& a, const DecoratedDiagram& b) {
    require(a.grid == b.grid, ErrorKind::GridMismatch, "diagram_sum over different grids");
    DecoratedDiagram d = a;
    for (const auto& [bar, k] : b.mult) d.add(bar, k);
    return d;
}

inline void check_pointwise_dims(const GridCModule& m, const DecoratedDiagram& d) {
    for (std::size_t q = 0; q < m.positions(); ++q)
        require(d.covering(q) == m.dim(q), ErrorKind::Internal,
                "bars over position " + std::to_string(q) + " sum to " + std::to_string(d.covering(q)) + ", dim is " +
                    std::to_string(m.dim(q)));
}

// Direct sum of the interval modules of a diagram.
inline GridCModule reconstruct(const DecoratedDiagram& d, FieldSpec f) {
    GridCModule acc = GridCModule::zero(f, d.grid);
    for (const auto& [bar, k] : d.mult)
        for (std::size_t i = 0; i < k; ++i) acc = direct_sum(acc, interval_module(d.grid, bar, f));
    return acc;
}

inline DecoratedDiagram multiplicities(const GridCModule& m) {
    const std::size_t P = m.positions(), last = P - 1;
    const FieldSpec f = m.field();
    auto pdim = [&](std::size_t a, std::size_t b) { return detail::product_dim(m, a, b); };

    std::vector<std::vector<Subspace>> F(P, std::vector<Subspace>(P));
    for (std::size_t a = 0; a < P; ++a)
        for (std::size_t b = a; b < P; ++b) F[a][b] = section_subspace(m, a, b);

    // Sections of F(lo, hi) vanishing outside [a..b], written on [a..b].
    auto vanishing = [&](std::size_t lo, std::size_t hi, std::size_t a, std::size_t b) {
        return vanishing_outside(F[lo][hi], pdim(lo, a) - m.dim(a), pdim(a, b));
    };
    auto zero_on = [&](std::size_t a, std::size_t b) { return Subspace::zero(f, pdim(a, b)); };
    auto excess = [](const Subspace& whole, const Subspace& x, const Subspace& y) {
        std::size_t s = subspace_sum(x, y).dim();
        require(s <= whole.dim(), ErrorKind::Internal, "complement dimension would be negative");
        return whole.dim() - s;
    };

    DecoratedDiagram d;
    d.grid = m.grid();
    for (std::size_t a = 0; a < P; ++a) {
        for (std::size_t b = a; b < P; ++b) {
            std::size_t len = pdim(a, b);
            // Closed
            if (a > 0 && b < last) {
                Subspace left = project(F[a - 1][b], m.dim(a - 1), len);
                Subspace right = project(F[a][b + 1], 0, len);
                d.add({a, b, BarType::Closed}, excess(F[a][b], left, right));
            }
            // CoOpen: K(a,b) = sections on [a..last] vanishing after b
            if (a > 0) {
                Subspace k = vanishing(a, last, a, b);
                Subspace ext = project(vanishing(a - 1, last, a - 1, b), m.dim(a - 1), len);
                Subspace shrunk = b > a ? embed(vanishing(a, last, a, b - 1), len, 0) : zero_on(a, b);
                d.add({a, b, BarType::CoOpen}, excess(k, ext, shrunk));
            }
            // ContraOpen: sections on [0..b] vanishing before a
            if (b < last) {
                Subspace k = vanishing(0, b, a, b);
                Subspace ext = project(vanishing(0, b + 1, a, b + 1), 0, len);
                Subspace shrunk = b > a ? embed(vanishing(0, b, a + 1, b), len, m.dim(a)) : zero_on(a, b);
                d.add({a, b, BarType::ContraOpen}, excess(k, ext, shrunk));
            }
            // Open: global sections supported in [a..b]
            {
                Subspace k = vanishing(0, last, a, b);
                Subspace l = b > a ? embed(vanishing(0, last, a + 1, b), len, m.dim(a)) : zero_on(a, b);
                Subspace r = b > a ? embed(vanishing(0, last, a, b - 1), len, 0) : zero_on(a, b);
                d.add({a, b, BarType::Open}, excess(k, l, r));
            }
        }
    }
    check_pointwise_dims(m, d);
    return d;
}

// Zigzag of vector spaces; arrow i joins node i and node i+1.
struct ZigzagArrow {
    bool forward;  // node i -> node i+1 when true, node i+1 -> node i otherwise
    Mat map;
};

struct ZigzagModule {
    FieldSpec field;
    std::vector<std::size_t> dims;
    std::vector<ZigzagArrow> arrows;

    std::size_t nodes() const { return dims.size(); }
};

// V_0 <- C_0 -> V_1 <- C_1 -> ... with C_q the correspondence itself and block projections as legs.
inline ZigzagModule unfold(const GridCModule& m) {
    ZigzagModule z;
    z.field = m.field();
    for (std::size_t q = 0; q < m.positions(); ++q) {
        z.dims.push_back(m.dim(q));
        if (q + 1 == m.positions()) break;
        const Correspondence& c = m.corr(q);
        z.dims.push_back(c.dim());
        Mat left(z.field, c.dim_left(), c.dim()), right(z.field, c.dim_right(), c.dim());
        for (std::size_t i = 0; i < c.dim(); ++i) {
            for (std::size_t j = 0; j < c.dim_left(); ++j) left.at(j, i) = c.space().basis().at(i, j);
            for (std::size_t j = 0; j < c.dim_right(); ++j) right.at(j, i) = c.space().basis().at(i, c.dim_left() + j);
        }
        z.arrows.push_back({false, left});
        z.arrows.push_back({true, right});
    }
    return z;
}

struct ZigzagInterval {
    std::size_t u, w, mult;
    friend bool operator==(const ZigzagInterval&, const ZigzagInterval&) = default;
};

// dim of the image of lim -> colim over nodes [u..w].
inline std::size_t generalized_rank(const ZigzagModule& z, std::size_t u, std::size_t w) {
    FieldSpec f = z.field;
    std::vector<std::size_t> off{0};
    for (std::size_t i = u; i <= w; ++i) off.push_back(off.back() + z.dims[i]);
    std::size_t n = off.back();
    Mat constraints(f, 0, n), rel(f, 0, n);
    for (std::size_t i = u; i < w; ++i) {
        const auto& ar = z.arrows[i];
        std::size_t src = ar.forward ? i : i + 1, dst = ar.forward ? i + 1 : i;
        std::size_t so = off[src - u], doff = off[dst - u];
        // x_dst = A x_src
        for (std::size_t r = 0; r < z.dims[dst]; ++r) {
            Vec row(n, 0);
            for (std::size_t c = 0; c < z.dims[src]; ++c) row[so + c] = ar.map.at(r, c);
            row[doff + r] = f.sub(row[doff + r], 1);
            constraints.append_row(row);
        }
        // colim relation: ι_dst(A e) - ι_src(e)
        for (std::size_t c = 0; c < z.dims[src]; ++c) {
            Vec row(n, 0);
            for (std::size_t r = 0; r < z.dims[dst]; ++r) row[doff + r] = ar.map.at(r, c);
            row[so + c] = f.sub(row[so + c], 1);
            rel.append_row(row);
        }
    }
    Subspace lim = kernel_basis(constraints);
    Mat at_u(f, 0, n);
    for (std::size_t i = 0; i < lim.dim(); ++i) {
        Vec row(n, 0);
        for (std::size_t c = 0; c < z.dims[u]; ++c) row[c] = lim.basis().at(i, c);
        at_u.append_row(row);
    }
    std::size_t base = rank(rel);
    return rank(vstack(rel, at_u)) - base;
}

inline std::vector<ZigzagInterval> zigzag_barcode(const ZigzagModule& z) {
    const std::size_t N = z.nodes();
    std::vector<std::vector<std::size_t>> r(N, std::vector<std::size_t>(N, 0));
    for (std::size_t u = 0; u < N; ++u)
        for (std::size_t w = u; w < N; ++w) r[u][w] = generalized_rank(z, u, w);
    auto R = [&](long u, long w) -> long {
        if (u < 0 || w >= static_cast<long>(N)) return 0;
        return static_cast<long>(r[u][w]);
    };
    std::vector<ZigzagInterval> out;
    for (long u = 0; u < static_cast<long>(N); ++u)
        for (long w = u; w < static_cast<long>(N); ++w) {
            long m = R(u, w) - R(u - 1, w) - R(u, w + 1) + R(u - 1, w + 1);
            require(m >= 0, ErrorKind::Internal, "negative zigzag multiplicity");
            if (m > 0) out.push_back({static_cast<std::size_t>(u), static_cast<std::size_t>(w), static_cast<std::size_t>(m)});
        }
    return out;
}

inline DecoratedDiagram decompose_via_unfolding(const GridCModule& m) {
    DecoratedDiagram d;
    d.grid = m.grid();
    for (const auto& iv : zigzag_barcode(unfold(m))) {
        std::size_t a = (iv.u + 1) / 2, b = iv.w / 2;
        require(a <= b, ErrorKind::Internal, "zigzag interval supported on correspondence nodes only");
        Bar bar{a, b, make_bar_type(iv.u % 2 == 0, iv.w % 2 == 0)};
        d.add(canonicalize(m.grid(), bar), iv.mult);
    }
    check_pointwise_dims(m, d);
    return d;
}

} // namespace cmod
