#pragma once

#include <algorithm>
#include <utility>
#include <variant>
#include <vector>

#include "cmod/cmodule.hpp"

namespace cmod {

// Compatible tuples (v_a, ..., v_b) in the product of the position spaces, position-major.
class SectionSpace {
public:
    SectionSpace(GridCModule m, std::size_t a, std::size_t b, Subspace space)
        : module_(std::move(m)), a_(a), b_(b), space_(std::move(space)) {}

    const GridCModule& module() const { return module_; }
    std::size_t start() const { return a_; }
    std::size_t end() const { return b_; }
    const Subspace& space() const { return space_; }
    std::size_t dim() const { return space_.dim(); }
    // Offset of position q inside the product coordinates.
    std::size_t offset(std::size_t q) const {
        std::size_t off = 0;
        for (std::size_t r = a_; r < q; ++r) off += module_.dim(r);
        return off;
    }
    std::size_t ambient_dim() const { return space_.ambient_dim(); }

private:
    GridCModule module_;
    std::size_t a_, b_;
    Subspace space_;
};

namespace detail {

inline std::size_t product_dim(const GridCModule& m, std::size_t a, std::size_t b) {
    std::size_t n = 0;
    for (std::size_t q = a; q <= b; ++q) n += m.dim(q);
    return n;
}

// Rows whose common kernel is the set of tuples on [a..b] compatible with every adjacent correspondence.
inline Mat section_constraints(const GridCModule& m, std::size_t a, std::size_t b) {
    std::size_t n = product_dim(m, a, b);
    Mat rows(m.field(), 0, n);
    std::size_t off = 0;
    for (std::size_t q = a; q < b; ++q) {
        Mat ann = annihilator(m.corr(q).space());
        for (std::size_t i = 0; i < ann.rows(); ++i) {
            Vec r(n, 0);
            for (std::size_t j = 0; j < ann.cols(); ++j) r[off + j] = ann.at(i, j);
            rows.append_row(r);
        }
        off += m.dim(q);
    }
    return rows;
}

} // namespace detail

inline Subspace section_subspace(const GridCModule& m, std::size_t a, std::size_t b) {
    require(a <= b && b < m.positions(), ErrorKind::RangeError,
            "section range [" + std::to_string(a) + ".." + std::to_string(b) + "] invalid");
    return kernel_basis(detail::section_constraints(m, a, b));
}

inline SectionSpace section_space(const GridCModule& m, std::size_t a, std::size_t b) {
    return SectionSpace(m, a, b, section_subspace(m, a, b));
}

inline bool is_section(const GridCModule& m, std::size_t a, std::size_t b, const Vec& tuple) {
    require(tuple.size() == detail::product_dim(m, a, b), ErrorKind::DimensionMismatch, "section tuple has wrong length");
    return section_subspace(m, a, b).contains(tuple);
}

struct Restriction {
    Mat map;  // coordinates in s -> coordinates in target
    SectionSpace target;
};

inline Restriction restriction(const SectionSpace& s, std::size_t a2, std::size_t b2) {
    require(s.start() <= a2 && a2 <= b2 && b2 <= s.end(), ErrorKind::NotSubinterval,
            "[" + std::to_string(a2) + ".." + std::to_string(b2) + "] is not inside [" + std::to_string(s.start()) +
                ".." + std::to_string(s.end()) + "]");
    SectionSpace target = section_space(s.module(), a2, b2);
    std::size_t off = s.offset(a2), len = target.ambient_dim();
    Mat map(s.module().field(), target.dim(), s.dim());
    for (std::size_t i = 0; i < s.dim(); ++i) {
        Vec row = s.space().basis().row(i);
        Vec piece(row.begin() + off, row.begin() + off + len);
        auto c = target.space().coordinates(piece);
        require(c.has_value(), ErrorKind::Internal, "restricted section is not a section");
        for (std::size_t j = 0; j < target.dim(); ++j) map.at(j, i) = (*c)[j];
    }
    return {map, std::move(target)};
}

struct SectionPiece {
    std::size_t start, end;
    Vec values;  // tuple over [start..end], position-major
};

struct GluingFailure {
    std::string reason;
};

using GlueResult = std::variant<Vec, GluingFailure>;

inline GlueResult glue(const GridCModule& m, std::vector<SectionPiece> pieces) {
    require(!pieces.empty(), ErrorKind::InvalidInput, "glue needs at least one piece");
    auto local = [&](const SectionPiece& p, std::size_t q) {
        std::size_t off = 0;
        for (std::size_t r = p.start; r < q; ++r) off += m.dim(r);
        return Vec(p.values.begin() + off, p.values.begin() + off + m.dim(q));
    };
    for (const auto& p : pieces) {
        require(p.start <= p.end && p.end < m.positions(), ErrorKind::RangeError, "piece range invalid");
        require(is_section(m, p.start, p.end, p.values), ErrorKind::InvalidInput, "piece is not a section");
    }
    std::sort(pieces.begin(), pieces.end(), [](const auto& x, const auto& y) {
        return std::tie(x.start, x.end) < std::tie(y.start, y.end);
    });
    for (std::size_t i = 0; i < pieces.size(); ++i)
        for (std::size_t j = i + 1; j < pieces.size(); ++j) {
            std::size_t lo = std::max(pieces[i].start, pieces[j].start), hi = std::min(pieces[i].end, pieces[j].end);
            for (std::size_t q = lo; q <= hi && lo <= hi; ++q)
                require(local(pieces[i], q) == local(pieces[j], q), ErrorKind::OverlapMismatch,
                        "pieces disagree at position " + std::to_string(q));
        }
    // Sorted by start, so the union is an interval iff each piece starts no later than one past the reach so far.
    std::size_t a = pieces.front().start, reach = pieces.front().end;
    bool connected = true;
    for (std::size_t i = 1; i < pieces.size(); ++i) {
        require(pieces[i].start <= reach + 1, ErrorKind::RangeError, "pieces do not cover a position interval");
        if (pieces[i].start > reach) connected = false;
        reach = std::max(reach, pieces[i].end);
    }
    Vec glued;
    for (std::size_t q = a; q <= reach; ++q) {
        for (const auto& p : pieces)
            if (p.start <= q && q <= p.end) {
                Vec v = local(p, q);
                glued.insert(glued.end(), v.begin(), v.end());
                break;
            }
    }
    bool ok = is_section(m, a, reach, glued);
    if (connected) {
        require(ok, ErrorKind::Internal, "gluing over a connected cover produced a non-section");
        return glued;
    }
    if (ok) return glued;
    return GluingFailure{"union over a disconnected cover is not a section"};
}

} // namespace cmod
