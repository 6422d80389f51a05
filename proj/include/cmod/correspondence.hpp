#pragma once

#include "cmod/field.hpp"

namespace cmod {

// Linear relation C ⊆ U×V; coordinates are the U-block followed by the V-block.
class Correspondence {
public:
    Correspondence() = default;
    Correspondence(std::size_t left, std::size_t right, Subspace space) : left_(left), right_(right), space_(std::move(space)) {
        require(space_.ambient_dim() == left + right, ErrorKind::AmbientMismatch,
                "correspondence space has ambient " + std::to_string(space_.ambient_dim()) + ", expected " +
                    std::to_string(left + right));
    }

    static Correspondence from_rows(std::size_t left, std::size_t right, const Mat& rows) {
        return Correspondence(left, right, Subspace::span(rows));
    }
    static Correspondence zero(FieldSpec f, std::size_t left, std::size_t right) {
        return Correspondence(left, right, Subspace::zero(f, left + right));
    }
    static Correspondence full(FieldSpec f, std::size_t left, std::size_t right) {
        return Correspondence(left, right, Subspace::full(f, left + right));
    }
    // U×0
    static Correspondence left_full(FieldSpec f, std::size_t left, std::size_t right) {
        return Correspondence(left, right, embed(Subspace::full(f, left), left + right, 0));
    }
    // 0×V
    static Correspondence right_full(FieldSpec f, std::size_t left, std::size_t right) {
        return Correspondence(left, right, embed(Subspace::full(f, right), left + right, left));
    }
    // Graph of m: k^cols -> k^rows, spanned by (e_i, m e_i).
    static Correspondence graph(const Mat& m) {
        FieldSpec f = m.field();
        std::size_t u = m.cols(), v = m.rows();
        Mat rows(f, u, u + v);
        for (std::size_t i = 0; i < u; ++i) {
            rows.at(i, i) = 1;
            for (std::size_t j = 0; j < v; ++j) rows.at(i, u + j) = m.at(j, i);
        }
        return Correspondence(u, v, Subspace::span(rows));
    }
    static Correspondence identity(FieldSpec f, std::size_t n) { return graph(Mat::identity(f, n)); }

    FieldSpec field() const { return space_.field(); }
    std::size_t dim_left() const { return left_; }
    std::size_t dim_right() const { return right_; }
    const Subspace& space() const { return space_; }
    std::size_t dim() const { return space_.dim(); }
    bool contains(const Vec& u, const Vec& v) const {
        Vec w = u;
        w.insert(w.end(), v.begin(), v.end());
        return space_.contains(w);
    }

    friend bool operator==(const Correspondence& a, const Correspondence& b) {
        return a.left_ == b.left_ && a.right_ == b.right_ && a.space_ == b.space_;
    }

private:
    std::size_t left_ = 0, right_ = 0;
    Subspace space_;
};

// c2 ∘ c1 = {(u,w) : (u,v) ∈ c1, (v,w) ∈ c2 for some v}.
inline Correspondence compose(const Correspondence& c1, const Correspondence& c2) {
    require(c1.dim_right() == c2.dim_left(), ErrorKind::DimensionMismatch,
            "compose: c1 right dim " + std::to_string(c1.dim_right()) + " != c2 left dim " +
                std::to_string(c2.dim_left()));
    FieldSpec f = c1.field();
    std::size_t u = c1.dim_left(), v = c1.dim_right(), w = c2.dim_right();
    std::size_t n = u + v + w;
    Subspace a = subspace_sum(embed(c1.space(), n, 0), embed(Subspace::full(f, w), n, u + v));
    Subspace b = subspace_sum(embed(Subspace::full(f, u), n, 0), embed(c2.space(), n, u));
    Subspace meet = subspace_intersect(a, b);
    // Drop the V block.
    Mat drop(f, u + w, n);
    for (std::size_t i = 0; i < u; ++i) drop.at(i, i) = 1;
    for (std::size_t i = 0; i < w; ++i) drop.at(u + i, u + v + i) = 1;
    return Correspondence(u, w, map_subspace(drop, meet));
}

inline Correspondence reverse(const Correspondence& c) {
    FieldSpec f = c.field();
    std::size_t u = c.dim_left(), v = c.dim_right();
    Mat swap(f, u + v, u + v);
    for (std::size_t i = 0; i < v; ++i) swap.at(i, u + i) = 1;
    for (std::size_t i = 0; i < u; ++i) swap.at(v + i, i) = 1;
    return Correspondence(v, u, map_subspace(swap, c.space()));
}

struct CorrespondenceParts {
    Subspace dom, im, ker;
    std::size_t coker_dim = 0;
};

// {u : (u,0) ∈ C}
inline Subspace corr_kernel(const Correspondence& c) {
    return vanishing_outside(c.space(), 0, c.dim_left());
}

inline CorrespondenceParts parts(const Correspondence& c) {
    CorrespondenceParts p;
    p.dom = project(c.space(), 0, c.dim_left());
    p.im = project(c.space(), c.dim_left(), c.dim_right());
    p.ker = corr_kernel(c);
    p.coker_dim = c.dim_right() - p.im.dim();
    return p;
}

// True iff c is the graph of a linear map defined on all of U.
inline bool is_graph_of_map(const Correspondence& c) {
    return project(c.space(), 0, c.dim_left()).dim() == c.dim_left() && corr_kernel(reverse(c)).dim() == 0;
}

// Matrix T with c = G_T; requires is_graph_of_map(c).
inline Mat to_map(const Correspondence& c) {
    require(is_graph_of_map(c), ErrorKind::Internal, "correspondence is not the graph of a map");
    FieldSpec f = c.field();
    std::size_t u = c.dim_left(), v = c.dim_right();
    // The RREF basis of a graph has the identity in its U block.
    Mat t(f, v, u);
    for (std::size_t i = 0; i < u; ++i)
        for (std::size_t j = 0; j < v; ++j) t.at(j, i) = c.space().basis().at(i, u + j);
    return t;
}

inline bool is_cvec_iso(const Correspondence& c) {
    auto p = parts(c);
    return p.dom.dim() == c.dim_left() && p.im.dim() == c.dim_right() && p.ker.dim() == 0 &&
           corr_kernel(reverse(c)).dim() == 0;
}

// Block direct sum: (u1,v1) and (u2,v2) become (u1,u2,v1,v2).
inline Correspondence corr_direct_sum(const Correspondence& a, const Correspondence& b) {
    FieldSpec f = a.field();
    std::size_t u1 = a.dim_left(), v1 = a.dim_right(), u2 = b.dim_left(), v2 = b.dim_right();
    std::size_t n = u1 + u2 + v1 + v2;
    Mat rows(f, 0, n);
    for (std::size_t i = 0; i < a.dim(); ++i) {
        Vec r(n, 0), src = a.space().basis().row(i);
        for (std::size_t j = 0; j < u1; ++j) r[j] = src[j];
        for (std::size_t j = 0; j < v1; ++j) r[u1 + u2 + j] = src[u1 + j];
        rows.append_row(r);
    }
    for (std::size_t i = 0; i < b.dim(); ++i) {
        Vec r(n, 0), src = b.space().basis().row(i);
        for (std::size_t j = 0; j < u2; ++j) r[u1 + j] = src[j];
        for (std::size_t j = 0; j < v2; ++j) r[u1 + u2 + v1 + j] = src[u2 + j];
        rows.append_row(r);
    }
    return Correspondence(u1 + u2, v1 + v2, Subspace::span(rows));
}

} // namespace cmod
