#pragma once

#include <array>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cmod/cmodule.hpp"
#include "cmod/decompose.hpp"

namespace cmod {

struct PLVertex {
    long long id = 0;
    Rational value;
};

struct PLComplex {
    FieldSpec field;
    std::vector<PLVertex> vertices;
    std::vector<std::vector<long long>> simplices;
};

// Ids unique, simplices of dim <= 2 on known vertices, closed under faces (vertices are implicit).
inline void validate(const PLComplex& c) {
    std::set<long long> ids;
    for (const auto& v : c.vertices)
        require(ids.insert(v.id).second, ErrorKind::InvalidInput, "duplicate vertex id " + std::to_string(v.id));
    std::set<std::vector<long long>> listed;
    for (auto s : c.simplices) {
        require(!s.empty(), ErrorKind::InvalidInput, "empty simplex");
        require(s.size() <= 3, ErrorKind::DimTooHigh, "simplex of dimension " + std::to_string(s.size() - 1) + " (max 2)");
        for (auto id : s) require(ids.count(id), ErrorKind::InvalidInput, "simplex uses unknown vertex " + std::to_string(id));
        std::sort(s.begin(), s.end());
        require(std::adjacent_find(s.begin(), s.end()) == s.end(), ErrorKind::InvalidInput, "simplex repeats a vertex");
        listed.insert(s);
    }
    for (const auto& s : listed) {
        if (s.size() != 3) continue;
        for (std::size_t k = 0; k < 3; ++k) {
            std::vector<long long> face;
            for (std::size_t j = 0; j < 3; ++j)
                if (j != k) face.push_back(s[j]);
            require(listed.count(face), ErrorKind::InvalidInput,
                    "not closed under faces: edge [" + std::to_string(face[0]) + "," + std::to_string(face[1]) + "] missing");
        }
    }
}

// Refinement in which every level, gap level, interlevel, sublevel and superlevel set is a subcomplex.
struct CutComplex {
    FieldSpec field;
    GridLine grid;
    bool empty = false;
    std::vector<Rational> values;
    std::vector<std::array<std::size_t, 2>> edges;
    std::vector<std::array<std::size_t, 3>> triangles;

    std::size_t count(int d) const { return d == 0 ? values.size() : d == 1 ? edges.size() : triangles.size(); }
    long euler() const { return long(values.size()) - long(edges.size()) + long(triangles.size()); }
};

// Cuts at every critical value, and with gap_levels also at one midpoint per gap so that
// gap level sets are subcomplexes too.
inline CutComplex refine(const PLComplex& c, bool gap_levels = true) {
    validate(c);
    CutComplex out;
    out.field = c.field;
    std::map<long long, std::size_t> index;
    for (const auto& v : c.vertices) {
        index[v.id] = out.values.size();
        out.values.push_back(v.value);
    }
    using E = std::array<std::size_t, 2>;
    using T = std::array<std::size_t, 3>;
    std::set<E> edges;
    std::set<T> tris;
    for (const auto& s : c.simplices) {
        std::vector<std::size_t> ix;
        for (auto id : s) ix.push_back(index.at(id));
        std::sort(ix.begin(), ix.end());
        if (ix.size() == 2) edges.insert({ix[0], ix[1]});
        if (ix.size() == 3) tris.insert({ix[0], ix[1], ix[2]});
    }
    std::set<Rational> crit(out.values.begin(), out.values.end());
    if (crit.empty()) {
        out.empty = true;
        out.grid = GridLine({Rational(0)});
        return out;
    }
    out.grid = GridLine(std::vector<Rational>(crit.begin(), crit.end()));
    std::vector<Rational> levels(crit.begin(), crit.end());
    if (gap_levels)
        for (std::size_t i = 1; i < out.grid.n(); ++i) levels.push_back((out.grid.t(i) + out.grid.t(i + 1)) / 2);

    auto sorted2 = [](std::size_t a, std::size_t b) { return a < b ? E{a, b} : E{b, a}; };
    auto sorted3 = [](std::size_t a, std::size_t b, std::size_t x) {
        T t{a, b, x};
        std::sort(t.begin(), t.end());
        return t;
    };
    for (const auto& lev : levels) {
        std::vector<E> straddling;
        for (const auto& e : edges) {
            const auto &a = out.values[e[0]], &b = out.values[e[1]];
            if ((a < lev && lev < b) || (b < lev && lev < a)) straddling.push_back(e);
        }
        for (const auto& e : straddling) {
            std::size_t w = out.values.size();
            out.values.push_back(lev);
            edges.erase(e);
            edges.insert(sorted2(e[0], w));
            edges.insert(sorted2(e[1], w));
            std::vector<T> hit;
            for (const auto& t : tris) {
                bool has0 = std::find(t.begin(), t.end(), e[0]) != t.end();
                bool has1 = std::find(t.begin(), t.end(), e[1]) != t.end();
                if (has0 && has1) hit.push_back(t);
            }
            for (const auto& t : hit) {
                std::size_t x = t[0] + t[1] + t[2] - e[0] - e[1];
                tris.erase(t);
                tris.insert(sorted3(e[0], w, x));
                tris.insert(sorted3(w, e[1], x));
                edges.insert(sorted2(w, x));
            }
        }
    }
    out.edges.assign(edges.begin(), edges.end());
    out.triangles.assign(tris.begin(), tris.end());
    return out;
}

// Full subcomplex on the vertices selected by a predicate on f.
struct Subcomplex {
    std::vector<char> v, e, t;
};

inline Subcomplex select(const CutComplex& cc, const std::function<bool(const Rational&)>& keep) {
    Subcomplex s;
    for (const auto& x : cc.values) s.v.push_back(keep(x));
    for (const auto& e : cc.edges) s.e.push_back(s.v[e[0]] && s.v[e[1]]);
    for (const auto& t : cc.triangles) s.t.push_back(s.v[t[0]] && s.v[t[1]] && s.v[t[2]]);
    return s;
}

inline Subcomplex level_set(const CutComplex& cc, Rational c) {
    return select(cc, [c](const Rational& x) { return x == c; });
}
inline Subcomplex interlevel_set(const CutComplex& cc, Rational s, Rational t) {
    return select(cc, [s, t](const Rational& x) { return s <= x && x <= t; });
}
inline Subcomplex sublevel_set(const CutComplex& cc, Rational t) {
    return select(cc, [t](const Rational& x) { return x <= t; });
}
inline Subcomplex superlevel_set(const CutComplex& cc, Rational t) {
    return select(cc, [t](const Rational& x) { return x >= t; });
}
inline Subcomplex whole(const CutComplex& cc) {
    return select(cc, [](const Rational&) { return true; });
}

inline bool is_subcomplex_of(const Subcomplex& a, const Subcomplex& b) {
    auto sub = [](const std::vector<char>& x, const std::vector<char>& y) {
        if (x.size() != y.size()) return false;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i] && !y[i]) return false;
        return true;
    };
    return sub(a.v, b.v) && sub(a.e, b.e) && sub(a.t, b.t);
}

namespace detail {

inline std::size_t edge_index(const CutComplex& cc, std::size_t a, std::size_t b) {
    std::array<std::size_t, 2> e = a < b ? std::array<std::size_t, 2>{a, b} : std::array<std::size_t, 2>{b, a};
    auto it = std::lower_bound(cc.edges.begin(), cc.edges.end(), e);
    require(it != cc.edges.end() && *it == e, ErrorKind::Internal, "missing edge in refinement");
    return std::size_t(it - cc.edges.begin());
}

// boundary of d-chains, as a (#(d-1)-simplices) x (#d-simplices) matrix; d in {1,2}
inline Mat boundary(const CutComplex& cc, int d) {
    FieldSpec f = cc.field;
    if (d == 1) {
        Mat m(f, cc.values.size(), cc.edges.size());
        for (std::size_t j = 0; j < cc.edges.size(); ++j) {
            m.at(cc.edges[j][0], j) = f.neg(1);
            m.at(cc.edges[j][1], j) = 1;
        }
        return m;
    }
    Mat m(f, cc.edges.size(), cc.triangles.size());
    for (std::size_t j = 0; j < cc.triangles.size(); ++j) {
        auto [a, b, c] = cc.triangles[j];
        m.at(edge_index(cc, b, c), j) = f.add(m.at(edge_index(cc, b, c), j), 1);
        m.at(edge_index(cc, a, c), j) = f.sub(m.at(edge_index(cc, a, c), j), 1);
        m.at(edge_index(cc, a, b), j) = f.add(m.at(edge_index(cc, a, b), j), 1);
    }
    return m;
}

inline const std::vector<char>& flags(const Subcomplex& s, int d) { return d == 0 ? s.v : d == 1 ? s.e : s.t; }

inline Mat select_columns(const Mat& m, const std::vector<char>& keep) {
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < keep.size(); ++j)
        if (keep[j]) cols.push_back(j);
    Mat out(m.field(), m.rows(), cols.size());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t k = 0; k < cols.size(); ++k) out.at(i, k) = m.at(i, cols[k]);
    return out;
}

// Rows of a restricted-coordinate matrix pushed back to global chain coordinates.
inline Mat spread_rows(const Mat& rows, const std::vector<char>& keep) {
    Mat out(rows.field(), rows.rows(), keep.size());
    for (std::size_t i = 0; i < rows.rows(); ++i) {
        std::size_t k = 0;
        for (std::size_t j = 0; j < keep.size(); ++j)
            if (keep[j]) out.at(i, j) = rows.at(i, k++);
    }
    return out;
}

} // namespace detail

// H_d of a subcomplex: cycle representatives (rows, global chain coordinates) modulo boundaries.
struct Homology {
    int degree = 0;
    Mat reps;
    Subspace boundaries;
    std::size_t betti() const { return reps.rows(); }

    // Coordinates of the class of cycle z in the basis reps.
    Vec coordinates(const Vec& z) const {
        Mat m = vstack(reps, boundaries.basis());
        auto x = solve(transpose(m), z);
        require(x.has_value(), ErrorKind::Internal, "chain is not a cycle of this subcomplex");
        return Vec(x->begin(), x->begin() + betti());
    }
};

inline Homology homology(const CutComplex& cc, const Subcomplex& sub, int degree) {
    require(degree == 0 || degree == 1, ErrorKind::InvalidInput, "homology degree must be 0 or 1");
    FieldSpec f = cc.field;
    const auto& keep = detail::flags(sub, degree);
    std::size_t n = cc.count(degree);
    Mat cycles(f, 0, n);
    if (degree == 0) {
        for (std::size_t j = 0; j < n; ++j)
            if (keep[j]) {
                Vec e(n, 0);
                e[j] = 1;
                cycles.append_row(e);
            }
    } else {
        Mat d = detail::select_columns(detail::boundary(cc, 1), keep);
        cycles = detail::spread_rows(kernel_basis(d).basis(), keep);
    }
    Mat higher = detail::boundary(cc, degree + 1);
    const auto& keep_hi = detail::flags(sub, degree + 1);
    Subspace bnd = image(detail::select_columns(higher, keep_hi));
    Homology h{degree, Mat(f, 0, n), bnd};
    Subspace acc = bnd;
    for (std::size_t i = 0; i < cycles.rows(); ++i) {
        Vec z = cycles.row(i);
        if (acc.contains(z)) continue;
        h.reps.append_row(z);
        acc = subspace_sum(acc, Subspace::span(Mat::from_vecs(f, n, {z})));
    }
    return h;
}

inline Subspace homology_basis(const CutComplex& cc, const Subcomplex& sub, int degree) {
    return Subspace::span(homology(cc, sub, degree).reps);
}

inline Mat induced_map(const Homology& small, const Homology& big) {
    FieldSpec f = big.reps.field();
    Mat m(f, big.betti(), small.betti());
    for (std::size_t j = 0; j < small.betti(); ++j) {
        Vec c = big.coordinates(small.reps.row(j));
        for (std::size_t i = 0; i < big.betti(); ++i) m.at(i, j) = c[i];
    }
    return m;
}

inline Mat induced_map(const CutComplex& cc, const Subcomplex& small, const Subcomplex& big, int degree) {
    require(is_subcomplex_of(small, big), ErrorKind::NotSubcomplex, "induced_map: source is not contained in target");
    return induced_map(homology(cc, small, degree), homology(cc, big, degree));
}

// {(a,b) : φ a = ψ b} for φ: H(X[s]) -> H(X_s^t) <- H(X[t]) : ψ
inline Correspondence levelset_relation(const CutComplex& cc, int degree, std::size_t r, std::size_t t) {
    require(r <= t && t < cc.grid.positions(), ErrorKind::RangeError, "levelset_relation needs r <= t in range");
    Rational s0 = cc.grid.representative(r), s1 = cc.grid.representative(t);
    Homology a = homology(cc, level_set(cc, s0), degree);
    Homology b = homology(cc, level_set(cc, s1), degree);
    Homology mid = homology(cc, interlevel_set(cc, s0, s1), degree);
    Mat phi = induced_map(a, mid), psi = induced_map(b, mid);
    return Correspondence(a.betti(), b.betti(), kernel_basis(hstack(phi, negate(psi))));
}

inline GridCModule levelset_cmodule(const CutComplex& cc, int degree) {
    require(degree == 0 || degree == 1, ErrorKind::InvalidInput, "degree must be 0 or 1");
    if (cc.empty) return GridCModule::zero(cc.field, cc.grid);
    const auto& g = cc.grid;
    std::vector<Homology> h;
    std::vector<std::size_t> dims;
    for (std::size_t q = 0; q < g.positions(); ++q) {
        h.push_back(homology(cc, level_set(cc, g.representative(q)), degree));
        dims.push_back(h.back().betti());
    }
    std::vector<Correspondence> corrs;
    for (std::size_t q = 0; q + 1 < g.positions(); ++q) {
        Homology mid = homology(cc, interlevel_set(cc, g.representative(q), g.representative(q + 1)), degree);
        Mat phi = induced_map(h[q], mid), psi = induced_map(h[q + 1], mid);
        corrs.emplace_back(dims[q], dims[q + 1], kernel_basis(hstack(phi, negate(psi))));
    }
    return GridCModule(cc.field, g, dims, corrs);
}

inline GridCModule levelset_cmodule(const PLComplex& c, int degree) { return levelset_cmodule(refine(c), degree); }

namespace detail {

// Sublevel (forward graphs) or superlevel (reversed graphs) module.
inline GridCModule filtration_module(const CutComplex& cc, int degree, bool sub) {
    require(degree == 0 || degree == 1, ErrorKind::InvalidInput, "degree must be 0 or 1");
    if (cc.empty) return GridCModule::zero(cc.field, cc.grid);
    const auto& g = cc.grid;
    std::vector<Homology> h;
    std::vector<std::size_t> dims;
    for (std::size_t q = 0; q < g.positions(); ++q) {
        Rational r = g.representative(q);
        h.push_back(homology(cc, sub ? sublevel_set(cc, r) : superlevel_set(cc, r), degree));
        dims.push_back(h.back().betti());
    }
    std::vector<Correspondence> corrs;
    for (std::size_t q = 0; q + 1 < g.positions(); ++q) {
        if (sub)
            corrs.push_back(Correspondence::graph(induced_map(h[q], h[q + 1])));
        else
            corrs.push_back(reverse(Correspondence::graph(induced_map(h[q + 1], h[q]))));
    }
    return GridCModule(cc.field, g, dims, corrs);
}

} // namespace detail

inline GridCModule sublevel_cmodule(const CutComplex& cc, int degree) { return detail::filtration_module(cc, degree, true); }
inline GridCModule superlevel_cmodule(const CutComplex& cc, int degree) { return detail::filtration_module(cc, degree, false); }
inline GridCModule sublevel_cmodule(const PLComplex& c, int degree) { return sublevel_cmodule(refine(c), degree); }
inline GridCModule superlevel_cmodule(const PLComplex& c, int degree) { return superlevel_cmodule(refine(c), degree); }

// One row of the Mayer-Vietoris table
//   H1^v+H1^^ -> H1(X) -> H0(X[t]) -> H0^v+H0^^ -> H0(X) -> 0
struct MVRow {
    std::size_t position = 0;
    Rational value;
    std::size_t h1_sub = 0, h1_sup = 0, h1_x = 0, h0_level = 0, h0_sub = 0, h0_sup = 0, h0_x = 0;
    bool exact_h1_x = false, exact_h0_level = false, exact_h0_cover = false, onto_h0_x = false;
    bool exact() const { return exact_h1_x && exact_h0_level && exact_h0_cover && onto_h0_x; }
};

struct MVReport {
    GridLine grid;
    std::vector<MVRow> table;
    // naturality of p1-q1, Δ1, ψ0+φ0: "strict" (equality) or "lax" (inclusion only)
    std::map<std::string, std::string> naturality;
    GridCModule cokernel;
    DecoratedDiagram cokernel_diagram;
    DecoratedDiagram levelset_h0;
};

namespace detail {

inline bool image_equals_kernel(const Mat& in, const Mat& out) {
    return image(in) == kernel_basis(out);
}

} // namespace detail

inline MVReport mayer_vietoris(const PLComplex& c, int i = 1) {
    require(i == 1, ErrorKind::InvalidInput, "mayer_vietoris supports i = 1 only");
    CutComplex cc = refine(c);
    FieldSpec f = cc.field;
    const auto& g = cc.grid;
    MVReport rep;
    rep.grid = g;

    GridCModule sub1 = sublevel_cmodule(cc, 1), sup1 = superlevel_cmodule(cc, 1);
    GridCModule sub0 = sublevel_cmodule(cc, 0), sup0 = superlevel_cmodule(cc, 0);
    GridCModule lev0 = levelset_cmodule(cc, 0);
    Homology hx1 = homology(cc, whole(cc), 1), hx0 = homology(cc, whole(cc), 0);
    std::size_t b1 = hx1.betti();
    GridCModule h1x(f, g, std::vector<std::size_t>(g.positions(), b1),
                    std::vector<Correspondence>(g.positions() - 1, Correspondence::identity(f, b1)));
    Mat d1 = detail::boundary(cc, 1);

    std::vector<Mat> pq1, delta, psiphi;
    for (std::size_t q = 0; q < g.positions(); ++q) {
        Rational t = g.representative(q);
        Subcomplex lo = sublevel_set(cc, t), hi = superlevel_set(cc, t), lev = level_set(cc, t);
        Homology s1 = homology(cc, lo, 1), u1 = homology(cc, hi, 1);
        Homology s0 = homology(cc, lo, 0), u0 = homology(cc, hi, 0), l0 = homology(cc, lev, 0);
        Mat a = hstack(induced_map(s1, hx1), negate(induced_map(u1, hx1)));
        // connecting map: z = c1 + c2 with c1 the part of z inside X^t, then [∂c1] in H0(X[t])
        Mat d(f, l0.betti(), b1);
        for (std::size_t j = 0; j < b1; ++j) {
            Vec z = hx1.reps.row(j);
            for (std::size_t e = 0; e < z.size(); ++e)
                if (!lo.e[e]) z[e] = 0;
            Vec bz = mul_vec(d1, z);
            for (std::size_t v = 0; v < bz.size(); ++v)
                require(bz[v] == 0 || lev.v[v], ErrorKind::Internal, "connecting chain leaves the level set");
            Vec col = l0.coordinates(bz);
            for (std::size_t k = 0; k < l0.betti(); ++k) d.at(k, j) = col[k];
        }
        Mat b = vstack(induced_map(l0, s0), induced_map(l0, u0));
        Mat cm = hstack(induced_map(s0, hx0), negate(induced_map(u0, hx0)));

        MVRow row;
        row.position = q;
        row.value = t;
        row.h1_sub = s1.betti();
        row.h1_sup = u1.betti();
        row.h1_x = b1;
        row.h0_level = l0.betti();
        row.h0_sub = s0.betti();
        row.h0_sup = u0.betti();
        row.h0_x = hx0.betti();
        row.exact_h1_x = detail::image_equals_kernel(a, d);
        row.exact_h0_level = detail::image_equals_kernel(d, b);
        row.exact_h0_cover = detail::image_equals_kernel(b, cm);
        row.onto_h0_x = rank(cm) == hx0.betti();
        if (!row.exact())
            fail(ErrorKind::ExactnessViolation,
                 "Mayer-Vietoris not exact at position " + std::to_string(q) + " (dims h1: " + std::to_string(row.h1_sub) +
                     "+" + std::to_string(row.h1_sup) + " -> " + std::to_string(b1) + " -> h0 level " +
                     std::to_string(row.h0_level) + " -> " + std::to_string(row.h0_sub) + "+" +
                     std::to_string(row.h0_sup) + " -> " + std::to_string(row.h0_x) + ")");
        rep.table.push_back(row);
        pq1.push_back(a);
        delta.push_back(d);
        psiphi.push_back(b);
    }

    auto graphs = [](const std::vector<Mat>& ms) {
        std::vector<Correspondence> out;
        for (const auto& m : ms) out.push_back(Correspondence::graph(m));
        return out;
    };
    auto record = [&](const std::string& name, const GridCModule& s, const GridCModule& t, const std::vector<Mat>& ms) {
        auto fs = graphs(ms);
        rep.naturality[name] = naturality_holds(s, t, fs, true) ? "strict" : "lax";
        return make_lax_morphism(s, t, fs);
    };
    GridCMorphism m1 = record("p1-q1", direct_sum(sub1, sup1), h1x, pq1);
    record("delta1", h1x, lev0, delta);
    record("psi0+phi0", lev0, direct_sum(sub0, sup0), psiphi);

    rep.cokernel = morphism_cokernel(m1);
    rep.cokernel_diagram = multiplicities(rep.cokernel);
    rep.levelset_h0 = multiplicities(lev0);
    return rep;
}

} // namespace cmod
