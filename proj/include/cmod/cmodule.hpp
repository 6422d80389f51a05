#pragma once

#include <algorithm>
#include <string>
#include <tuple>
#include <vector>

#include "cmod/correspondence.hpp"
#include "cmod/rational.hpp"

namespace cmod {

// Critical values t_1 < ... < t_n. Position 2i is the gap (t_i, t_{i+1}), position 2i-1 the point t_i.
class GridLine {
public:
    GridLine() = default;
    explicit GridLine(std::vector<Rational> values) : values_(std::move(values)) {
        require(!values_.empty(), ErrorKind::InvalidInput, "grid needs at least one critical value");
        for (std::size_t i = 1; i < values_.size(); ++i)
            require(values_[i - 1] < values_[i], ErrorKind::InvalidInput, "grid values must be strictly increasing");
    }

    const std::vector<Rational>& values() const { return values_; }
    std::size_t n() const { return values_.size(); }
    std::size_t positions() const { return 2 * values_.size() + 1; }
    std::size_t last() const { return 2 * values_.size(); }
    static bool is_point(std::size_t q) { return q % 2 == 1; }
    // t_i for 1-based i.
    const Rational& t(std::size_t i) const { return values_.at(i - 1); }
    const Rational& point_value(std::size_t q) const { return t((q + 1) / 2); }

    // A real number lying in the cell of position q.
    Rational representative(std::size_t q) const {
        if (is_point(q)) return point_value(q);
        if (q == 0) return values_.front() - 1;
        if (q == last()) return values_.back() + 1;
        return (t(q / 2) + t(q / 2 + 1)) / 2;
    }

    friend bool operator==(const GridLine&, const GridLine&) = default;

private:
    std::vector<Rational> values_;
};

enum class BarType { Closed = 0, CoOpen = 1, ContraOpen = 2, Open = 3 };

inline const char* bar_type_code(BarType t) {
    switch (t) {
    case BarType::Closed: return "[]";
    case BarType::CoOpen: return "[>";
    case BarType::ContraOpen: return "<]";
    case BarType::Open: return "<>";
    }
    return "?";
}

inline BarType parse_bar_type(const std::string& s) {
    if (s == "[]") return BarType::Closed;
    if (s == "[>") return BarType::CoOpen;
    if (s == "<]") return BarType::ContraOpen;
    if (s == "<>") return BarType::Open;
    fail(ErrorKind::InvalidInput, "unknown bar type '" + s + "'");
}

inline bool left_closed(BarType t) { return t == BarType::Closed || t == BarType::CoOpen; }
inline bool right_closed(BarType t) { return t == BarType::Closed || t == BarType::ContraOpen; }
inline BarType make_bar_type(bool left_closed_end, bool right_closed_end) {
    if (left_closed_end) return right_closed_end ? BarType::Closed : BarType::CoOpen;
    return right_closed_end ? BarType::ContraOpen : BarType::Open;
}

// Element of the decorated line: a finite value with '-' or '+', or an infinity (dec = 0).
struct DecoratedValue {
    ExtReal value;
    char dec = 0;

    friend bool operator==(const DecoratedValue&, const DecoratedValue&) = default;
    friend auto operator<=>(const DecoratedValue& a, const DecoratedValue& b) {
        if (auto c = a.value <=> b.value; c != 0) return c;
        return a.dec <=> b.dec;
    }
};

inline std::string format_decorated(const DecoratedValue& d) {
    std::string s = format_ext(d.value);
    if (d.dec) s.push_back(d.dec);
    return s;
}

struct Bar {
    std::size_t start = 0, end = 0;
    BarType type = BarType::Closed;

    friend bool operator==(const Bar&, const Bar&) = default;
    friend auto operator<=>(const Bar& a, const Bar& b) {
        return std::tie(a.type, a.start, a.end) <=> std::tie(b.type, b.start, b.end);
    }
};

inline DecoratedValue bar_birth(const GridLine& g, const Bar& b) {
    if (b.start == 0) return {ExtReal::neg_inf(), 0};
    if (GridLine::is_point(b.start)) return {ExtReal(g.point_value(b.start)), '-'};
    return {ExtReal(g.t(b.start / 2)), '+'};
}

inline DecoratedValue bar_death(const GridLine& g, const Bar& b) {
    if (b.end == g.last()) return {ExtReal::pos_inf(), 0};
    if (GridLine::is_point(b.end)) return {ExtReal(g.point_value(b.end)), '+'};
    return {ExtReal(g.t(b.end / 2 + 1)), '-'};
}

// Merge the ±infinity conventions: an unbounded end is always open.
inline Bar canonicalize(const GridLine& g, Bar b) {
    bool l = left_closed(b.type) && b.start != 0;
    bool r = right_closed(b.type) && b.end != g.last();
    b.type = make_bar_type(l, r);
    return b;
}

inline void validate_bar(const GridLine& g, const Bar& b) {
    require(b.start <= b.end && b.end <= g.last(), ErrorKind::BadBar,
            "bar positions [" + std::to_string(b.start) + ".." + std::to_string(b.end) + "] out of range 0.." +
                std::to_string(g.last()));
    require(!(b.start == 0 && left_closed(b.type)), ErrorKind::BadBar, "bar touching position 0 must have left type '<'");
    require(!(b.end == g.last() && right_closed(b.type)), ErrorKind::BadBar,
            "bar touching the last position must have right type '>'");
}

class GridCModule {
public:
    GridCModule() = default;
    GridCModule(FieldSpec f, GridLine grid, std::vector<std::size_t> dims, std::vector<Correspondence> corrs)
        : field_(f), grid_(std::move(grid)), dims_(std::move(dims)), corrs_(std::move(corrs)) {
        require(dims_.size() == grid_.positions(), ErrorKind::DimensionMismatch,
                "expected " + std::to_string(grid_.positions()) + " dims, got " + std::to_string(dims_.size()));
        require(corrs_.size() + 1 == dims_.size(), ErrorKind::DimensionMismatch,
                "expected " + std::to_string(dims_.size() - 1) + " correspondences, got " + std::to_string(corrs_.size()));
        for (std::size_t q = 0; q < corrs_.size(); ++q) {
            require(corrs_[q].dim_left() == dims_[q] && corrs_[q].dim_right() == dims_[q + 1],
                    ErrorKind::DimensionMismatch, "correspondence " + std::to_string(q) + " has wrong shape");
            require(corrs_[q].field() == field_, ErrorKind::FieldMismatch, "correspondence over a different field");
        }
    }

    static GridCModule zero(FieldSpec f, const GridLine& g) {
        std::vector<Correspondence> c(g.positions() - 1, Correspondence::zero(f, 0, 0));
        return GridCModule(f, g, std::vector<std::size_t>(g.positions(), 0), std::move(c));
    }

    FieldSpec field() const { return field_; }
    const GridLine& grid() const { return grid_; }
    std::size_t positions() const { return dims_.size(); }
    const std::vector<std::size_t>& dims() const { return dims_; }
    std::size_t dim(std::size_t q) const { return dims_.at(q); }
    const std::vector<Correspondence>& corrs() const { return corrs_; }
    const Correspondence& corr(std::size_t q) const { return corrs_.at(q); }

    // v_a^b = corr_{b-1} ∘ ... ∘ corr_a
    Correspondence derived(std::size_t a, std::size_t b) const {
        require(a <= b && b < positions(), ErrorKind::RangeError, "derived relation needs a <= b within range");
        Correspondence c = Correspondence::identity(field_, dims_[a]);
        for (std::size_t q = a; q < b; ++q) c = compose(c, corrs_[q]);
        return c;
    }

    friend bool operator==(const GridCModule&, const GridCModule&) = default;

private:
    FieldSpec field_;
    GridLine grid_;
    std::vector<std::size_t> dims_;
    std::vector<Correspondence> corrs_;
};

inline GridCModule interval_module(const GridLine& g, const Bar& bar, FieldSpec f) {
    validate_bar(g, bar);
    std::size_t n = g.positions();
    std::vector<std::size_t> dims(n, 0);
    for (std::size_t q = bar.start; q <= bar.end; ++q) dims[q] = 1;
    std::vector<Correspondence> corrs;
    for (std::size_t q = 0; q + 1 < n; ++q) {
        if (q >= bar.start && q + 1 <= bar.end)
            corrs.push_back(Correspondence::identity(f, 1));
        else if (q + 1 == bar.start)
            corrs.push_back(left_closed(bar.type) ? Correspondence::zero(f, 0, 1) : Correspondence::full(f, 0, 1));
        else if (q == bar.end)
            corrs.push_back(right_closed(bar.type) ? Correspondence::zero(f, 1, 0) : Correspondence::full(f, 1, 0));
        else
            corrs.push_back(Correspondence::zero(f, 0, 0));
    }
    return GridCModule(f, g, dims, corrs);
}

inline GridCModule direct_sum(const GridCModule& a, const GridCModule& b) {
    require(a.grid() == b.grid(), ErrorKind::GridMismatch, "direct_sum of modules on different grids");
    require(a.field() == b.field(), ErrorKind::FieldMismatch, "direct_sum of modules over different fields");
    std::vector<std::size_t> dims(a.positions());
    std::vector<Correspondence> corrs;
    for (std::size_t q = 0; q < a.positions(); ++q) dims[q] = a.dim(q) + b.dim(q);
    for (std::size_t q = 0; q + 1 < a.positions(); ++q) corrs.push_back(corr_direct_sum(a.corr(q), b.corr(q)));
    return GridCModule(a.field(), a.grid(), dims, corrs);
}

inline GridCModule direct_sum(const std::vector<GridCModule>& ms, FieldSpec f, const GridLine& g) {
    GridCModule acc = GridCModule::zero(f, g);
    for (const auto& m : ms) acc = direct_sum(acc, m);
    return acc;
}

inline bool is_p_module(const GridCModule& m) {
    for (const auto& c : m.corrs())
        if (!is_graph_of_map(c)) return false;
    return true;
}

// Per-position correspondences f_q ⊆ source_q × target_q.
struct GridCMorphism {
    GridCModule source, target;
    std::vector<Correspondence> f;
};

inline GridCMorphism make_morphism(GridCModule source, GridCModule target, std::vector<Correspondence> f) {
    require(source.grid() == target.grid(), ErrorKind::GridMismatch, "morphism between different grids");
    require(f.size() == source.positions(), ErrorKind::DimensionMismatch, "morphism needs one relation per position");
    for (std::size_t q = 0; q < f.size(); ++q)
        require(f[q].dim_left() == source.dim(q) && f[q].dim_right() == target.dim(q), ErrorKind::DimensionMismatch,
                "morphism component " + std::to_string(q) + " has wrong shape");
    for (std::size_t q = 0; q + 1 < f.size(); ++q) {
        if (!(compose(source.corr(q), f[q + 1]) == compose(f[q], target.corr(q))))
            fail(ErrorKind::IncompatibleMorphism, "naturality fails between positions " + std::to_string(q) + " and " +
                                                      std::to_string(q + 1));
    }
    return {std::move(source), std::move(target), std::move(f)};
}

// f_t ∘ u_s^t ⊆ v_s^t ∘ f_s at every adjacent pair (equality when strict).
inline bool naturality_holds(const GridCModule& source, const GridCModule& target, const std::vector<Correspondence>& f,
                             bool strict) {
    for (std::size_t q = 0; q + 1 < f.size(); ++q) {
        Correspondence lhs = compose(source.corr(q), f[q + 1]);
        Correspondence rhs = compose(f[q], target.corr(q));
        if (strict ? !(lhs == rhs) : !lhs.space().is_subspace_of(rhs.space())) return false;
    }
    return true;
}

// Same as make_morphism but only asks for the inclusion f_t ∘ u ⊆ v ∘ f_s.
inline GridCMorphism make_lax_morphism(GridCModule source, GridCModule target, std::vector<Correspondence> f) {
    require(source.grid() == target.grid(), ErrorKind::GridMismatch, "morphism between different grids");
    require(f.size() == source.positions(), ErrorKind::DimensionMismatch, "morphism needs one relation per position");
    for (std::size_t q = 0; q < f.size(); ++q)
        require(f[q].dim_left() == source.dim(q) && f[q].dim_right() == target.dim(q), ErrorKind::DimensionMismatch,
                "morphism component " + std::to_string(q) + " has wrong shape");
    require(naturality_holds(source, target, f, false), ErrorKind::IncompatibleMorphism, "lax naturality fails");
    return {std::move(source), std::move(target), std::move(f)};
}

inline GridCMorphism morphism_from_maps(GridCModule source, GridCModule target, const std::vector<Mat>& maps) {
    std::vector<Correspondence> f;
    for (const auto& m : maps) f.push_back(Correspondence::graph(m));
    return make_morphism(std::move(source), std::move(target), std::move(f));
}

namespace detail {

// Relation c restricted to sub_l × sub_r and rewritten in the bases of the two subspaces.
inline Correspondence restrict_to_bases(const Correspondence& c, const Subspace& sub_l, const Subspace& sub_r) {
    Mat e = block_diag(transpose(sub_l.basis()), transpose(sub_r.basis()));
    return Correspondence(sub_l.dim(), sub_r.dim(), preimage(e, c.space()));
}

} // namespace detail

inline GridCModule morphism_image(const GridCMorphism& f) {
    const auto& t = f.target;
    std::vector<Subspace> im;
    for (const auto& c : f.f) im.push_back(parts(c).im);
    std::vector<std::size_t> dims;
    for (const auto& s : im) dims.push_back(s.dim());
    std::vector<Correspondence> corrs;
    for (std::size_t q = 0; q + 1 < t.positions(); ++q) corrs.push_back(detail::restrict_to_bases(t.corr(q), im[q], im[q + 1]));
    return GridCModule(t.field(), t.grid(), dims, corrs);
}

// Kernel of f, assuming Im(g) = ker(f) pointwise.
inline GridCModule morphism_kernel(const GridCMorphism& f, const GridCMorphism& g) {
    require(g.target == f.source, ErrorKind::NotExact, "target of g must be the source of f");
    const auto& s = f.source;
    std::vector<Subspace> ker;
    for (std::size_t q = 0; q < s.positions(); ++q) {
        Subspace k = corr_kernel(f.f[q]);
        if (!(parts(g.f[q]).im == k))
            fail(ErrorKind::NotExact, "Im(g) != ker(f) at position " + std::to_string(q) + " (dims " +
                                          std::to_string(parts(g.f[q]).im.dim()) + " vs " + std::to_string(k.dim()) + ")");
        ker.push_back(k);
    }
    std::vector<std::size_t> dims;
    for (const auto& k : ker) dims.push_back(k.dim());
    std::vector<Correspondence> corrs;
    for (std::size_t q = 0; q + 1 < s.positions(); ++q) corrs.push_back(detail::restrict_to_bases(s.corr(q), ker[q], ker[q + 1]));
    return GridCModule(s.field(), s.grid(), dims, corrs);
}

struct Quotient {
    Mat complement;  // rows: chosen representatives of the quotient basis
    Mat projection;  // k^n -> k^{dim Q}
};

// Quotient k^n / sub with the lexicographically first complement as carrier.
inline Quotient quotient_by(const Subspace& sub) {
    FieldSpec f = sub.field();
    std::size_t n = sub.ambient_dim();
    Mat w = complement_basis(sub);
    Mat m = vstack(w, sub.basis());
    Mat inv_t = transpose(inverse(m));
    Mat proj(f, w.rows(), n);
    for (std::size_t i = 0; i < w.rows(); ++i)
        for (std::size_t j = 0; j < n; ++j) proj.at(i, j) = inv_t.at(i, j);
    return {w, proj};
}

inline GridCModule morphism_cokernel(const GridCMorphism& f) {
    const auto& t = f.target;
    require(is_p_module(t), ErrorKind::TargetNotPModule, "cokernel requires the target to be a p-module");
    std::vector<Subspace> im;
    std::vector<Quotient> quo;
    std::vector<std::size_t> dims;
    for (const auto& c : f.f) {
        im.push_back(parts(c).im);
        quo.push_back(quotient_by(im.back()));
        dims.push_back(quo.back().complement.rows());
    }
    std::vector<Correspondence> corrs;
    for (std::size_t q = 0; q + 1 < t.positions(); ++q) {
        std::size_t a = t.dim(q), b = t.dim(q + 1);
        Subspace enlarged = subspace_sum(t.corr(q).space(),
                                         subspace_sum(embed(im[q], a + b, 0), embed(im[q + 1], a + b, a)));
        Mat proj = block_diag(quo[q].projection, quo[q + 1].projection);
        corrs.emplace_back(dims[q], dims[q + 1], map_subspace(proj, enlarged));
    }
    return GridCModule(t.field(), t.grid(), dims, corrs);
}

} // namespace cmod
