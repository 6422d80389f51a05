#pragma once

#include <set>
#include <string>
#include <vector>

#include "cmod/cmodule.hpp"

namespace cmod {

// U(i,j) at (xs[i], ys[j]); hmaps[i][j]: U(i,j) -> U(i+1,j), vmaps[i][j]: U(i,j) -> U(i,j+1).
// Off-grid points take the space of the largest grid point below-left of them, 0 if there is none.
class GridModule2D {
public:
    GridModule2D() = default;
    GridModule2D(FieldSpec f, std::vector<Rational> xs, std::vector<Rational> ys, std::vector<std::vector<std::size_t>> dims,
                 std::vector<std::vector<Mat>> hmaps, std::vector<std::vector<Mat>> vmaps)
        : f_(f), xs_(std::move(xs)), ys_(std::move(ys)), dims_(std::move(dims)), h_(std::move(hmaps)), v_(std::move(vmaps)) {
        auto increasing = [](const std::vector<Rational>& g) {
            for (std::size_t i = 1; i < g.size(); ++i)
                if (!(g[i - 1] < g[i])) return false;
            return !g.empty();
        };
        require(increasing(xs_) && increasing(ys_), ErrorKind::InvalidInput, "xs and ys must be nonempty and strictly increasing");
        std::size_t nx = xs_.size(), ny = ys_.size();
        require(dims_.size() == nx, ErrorKind::DimensionMismatch, "dims needs one row per x value");
        for (const auto& r : dims_) require(r.size() == ny, ErrorKind::DimensionMismatch, "dims row needs one entry per y value");
        require(h_.size() + 1 == nx, ErrorKind::DimensionMismatch, "hmaps needs len(xs)-1 rows");
        require(v_.size() == nx, ErrorKind::DimensionMismatch, "vmaps needs len(xs) rows");
        for (std::size_t i = 0; i < nx; ++i) {
            if (i + 1 < nx) require(h_[i].size() == ny, ErrorKind::DimensionMismatch, "hmaps row needs len(ys) maps");
            require(v_[i].size() + 1 == ny, ErrorKind::DimensionMismatch, "vmaps row needs len(ys)-1 maps");
            for (std::size_t j = 0; j < ny; ++j) {
                if (i + 1 < nx)
                    require(h_[i][j].rows() == dims_[i + 1][j] && h_[i][j].cols() == dims_[i][j] && h_[i][j].field() == f_,
                            ErrorKind::DimensionMismatch, "hmap (" + std::to_string(i) + "," + std::to_string(j) + ") has wrong shape");
                if (j + 1 < ny)
                    require(v_[i][j].rows() == dims_[i][j + 1] && v_[i][j].cols() == dims_[i][j] && v_[i][j].field() == f_,
                            ErrorKind::DimensionMismatch, "vmap (" + std::to_string(i) + "," + std::to_string(j) + ") has wrong shape");
            }
        }
        for (std::size_t i = 0; i + 1 < nx; ++i)
            for (std::size_t j = 0; j + 1 < ny; ++j)
                require((v_[i + 1][j] * h_[i][j]).to_rows() == (h_[i][j + 1] * v_[i][j]).to_rows(), ErrorKind::InvalidInput,
                        "square at (" + std::to_string(i) + "," + std::to_string(j) + ") does not commute");
    }

    static GridModule2D zero(FieldSpec f, std::vector<Rational> xs, std::vector<Rational> ys) {
        std::size_t nx = xs.size(), ny = ys.size();
        std::vector<std::vector<std::size_t>> d(nx, std::vector<std::size_t>(ny, 0));
        std::vector<std::vector<Mat>> h(nx ? nx - 1 : 0, std::vector<Mat>(ny, Mat(f, 0, 0)));
        std::vector<std::vector<Mat>> v(nx, std::vector<Mat>(ny ? ny - 1 : 0, Mat(f, 0, 0)));
        return GridModule2D(f, std::move(xs), std::move(ys), std::move(d), std::move(h), std::move(v));
    }

    FieldSpec field() const { return f_; }
    const std::vector<Rational>& xs() const { return xs_; }
    const std::vector<Rational>& ys() const { return ys_; }
    const std::vector<std::vector<std::size_t>>& dims() const { return dims_; }
    const std::vector<std::vector<Mat>>& hmaps() const { return h_; }
    const std::vector<std::vector<Mat>>& vmaps() const { return v_; }

    // index of the largest grid value <= x, or -1
    static long cell(const std::vector<Rational>& g, const Rational& x) {
        auto it = std::upper_bound(g.begin(), g.end(), x);
        return long(it - g.begin()) - 1;
    }

    std::size_t dim_at(const Rational& x, const Rational& y) const {
        long i = cell(xs_, x), j = cell(ys_, y);
        return i < 0 || j < 0 ? 0 : dims_[i][j];
    }

    // u_a^b for a <= b componentwise
    Mat map(const Rational& ax, const Rational& ay, const Rational& bx, const Rational& by) const {
        require(ax <= bx && ay <= by, ErrorKind::OrderViolation, "structure map needs a <= b componentwise");
        long i0 = cell(xs_, ax), j0 = cell(ys_, ay), i1 = cell(xs_, bx), j1 = cell(ys_, by);
        std::size_t db = dim_at(bx, by);
        if (i0 < 0 || j0 < 0) return Mat(f_, db, 0);
        Mat m = Mat::identity(f_, dims_[i0][j0]);
        for (long i = i0; i < i1; ++i) m = h_[i][j0] * m;
        for (long j = j0; j < j1; ++j) m = v_[i1][j] * m;
        return m;
    }

    friend bool operator==(const GridModule2D& a, const GridModule2D& b) {
        if (!(a.f_ == b.f_ && a.xs_ == b.xs_ && a.ys_ == b.ys_ && a.dims_ == b.dims_)) return false;
        for (std::size_t i = 0; i < a.h_.size(); ++i)
            for (std::size_t j = 0; j < a.h_[i].size(); ++j)
                if (a.h_[i][j].to_rows() != b.h_[i][j].to_rows()) return false;
        for (std::size_t i = 0; i < a.v_.size(); ++i)
            for (std::size_t j = 0; j < a.v_[i].size(); ++j)
                if (a.v_[i][j].to_rows() != b.v_[i][j].to_rows()) return false;
        return true;
    }

private:
    FieldSpec f_;
    std::vector<Rational> xs_, ys_;
    std::vector<std::vector<std::size_t>> dims_;
    std::vector<std::vector<Mat>> h_, v_;
};

inline GridModule2D direct_sum(const GridModule2D& a, const GridModule2D& b) {
    require(a.xs() == b.xs() && a.ys() == b.ys(), ErrorKind::GridMismatch, "direct_sum of 2-D modules on different grids");
    require(a.field() == b.field(), ErrorKind::FieldMismatch, "direct_sum of 2-D modules over different fields");
    auto d = a.dims();
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = 0; j < d[i].size(); ++j) d[i][j] += b.dims()[i][j];
    auto h = a.hmaps(), v = a.vmaps();
    for (std::size_t i = 0; i < h.size(); ++i)
        for (std::size_t j = 0; j < h[i].size(); ++j) h[i][j] = block_diag(a.hmaps()[i][j], b.hmaps()[i][j]);
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v[i].size(); ++j) v[i][j] = block_diag(a.vmaps()[i][j], b.vmaps()[i][j]);
    return GridModule2D(a.field(), a.xs(), a.ys(), d, h, v);
}

// y = slope * x + intercept, parametrized and ordered by x.
struct LineSpec {
    Rational slope, intercept;
    Rational y(const Rational& x) const { return slope * x + intercept; }
};

inline void validate_line(const LineSpec& l) {
    require(l.slope < 0, ErrorKind::DegenerateLine, "slice needs a line of negative slope, got " + format_rational(l.slope));
}

// x-parameters where l meets the lines x = xs_i and y = ys_j
inline GridLine line_positions(const GridModule2D& m, const LineSpec& l) {
    validate_line(l);
    std::set<Rational> c(m.xs().begin(), m.xs().end());
    for (const auto& y : m.ys()) c.insert((y - l.intercept) / l.slope);
    return GridLine(std::vector<Rational>(c.begin(), c.end()));
}

// C = reverse(graph(u_b^r)) ∘ graph(u_a^r), r = a ∨ b
inline Correspondence staircase_step(const GridModule2D& m, const LineSpec& l, const Rational& a, const Rational& b) {
    Rational ry = l.y(a);
    Correspondence up = Correspondence::graph(m.map(a, l.y(a), b, ry));
    Correspondence back = reverse(Correspondence::graph(m.map(b, l.y(b), b, ry)));
    return compose(up, back);
}

// Composite of steps through the given staircase nodes (x-parameters, nondecreasing).
inline Correspondence staircase_along(const GridModule2D& m, const LineSpec& l, const std::vector<Rational>& nodes) {
    validate_line(l);
    require(!nodes.empty(), ErrorKind::InvalidInput, "staircase needs at least one node");
    for (std::size_t i = 1; i < nodes.size(); ++i)
        require(nodes[i - 1] <= nodes[i], ErrorKind::OrderViolation, "staircase nodes must be ordered along the line");
    Correspondence c = Correspondence::identity(m.field(), m.dim_at(nodes[0], l.y(nodes[0])));
    for (std::size_t i = 1; i < nodes.size(); ++i) c = compose(c, staircase_step(m, l, nodes[i - 1], nodes[i]));
    return c;
}

// Finest staircase: every crossing strictly between s and t, plus one point inside each gap.
// Further points in a gap add nothing, the line stays in one grid cell there.
inline std::vector<Rational> finest_nodes(const GridModule2D& m, const LineSpec& l, const Rational& s, const Rational& t) {
    require(s <= t, ErrorKind::OrderViolation, "staircase needs s <= t along the line");
    std::vector<Rational> breaks{s};
    GridLine g = line_positions(m, l);
    for (const auto& c : g.values())
        if (s < c && c < t) breaks.push_back(c);
    if (t != s) breaks.push_back(t);
    std::vector<Rational> nodes{s};
    for (std::size_t i = 1; i < breaks.size(); ++i) {
        nodes.push_back((breaks[i - 1] + breaks[i]) / 2);
        nodes.push_back(breaks[i]);
    }
    return nodes;
}

inline Correspondence staircase_correspondence(const GridModule2D& m, const LineSpec& l, const Rational& s, const Rational& t) {
    validate_line(l);
    return staircase_along(m, l, finest_nodes(m, l, s, t));
}

inline GridCModule slice(const GridModule2D& m, const LineSpec& l) {
    GridLine g = line_positions(m, l);
    std::vector<std::size_t> dims;
    for (std::size_t q = 0; q < g.positions(); ++q) {
        Rational x = g.representative(q);
        dims.push_back(m.dim_at(x, l.y(x)));
    }
    std::vector<Correspondence> corrs;
    for (std::size_t q = 0; q + 1 < g.positions(); ++q)
        corrs.push_back(staircase_correspondence(m, l, g.representative(q), g.representative(q + 1)));
    return GridCModule(m.field(), g, dims, corrs);
}

} // namespace cmod
