#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cmod/error.hpp"

namespace cmod {

using Elem = std::uint32_t;
using Vec = std::vector<Elem>;

inline bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Prime field GF(p), p < 2^16 so products of representatives fit in 32 bits.
class FieldSpec {
public:
    FieldSpec() = default;
    explicit FieldSpec(std::int64_t p) {
        require(p >= 2 && p < 65536 && is_prime(static_cast<std::uint32_t>(p)), ErrorKind::InvalidInput,
                "field modulus must be a prime below 65536, got " + std::to_string(p));
        p_ = static_cast<Elem>(p);
    }

    Elem p() const { return p_; }
    Elem reduce(std::int64_t x) const {
        std::int64_t r = x % static_cast<std::int64_t>(p_);
        return static_cast<Elem>(r < 0 ? r + p_ : r);
    }
    Elem add(Elem a, Elem b) const { Elem s = a + b; return s >= p_ ? s - p_ : s; }
    Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
    Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
    Elem mul(Elem a, Elem b) const { return (a * b) % p_; }
    Elem inv(Elem a) const {
        require(a != 0, ErrorKind::Internal, "inverse of zero");
        std::int64_t t = 0, nt = 1, r = p_, nr = a;
        while (nr != 0) {
            std::int64_t q = r / nr;
            std::int64_t tmp = t - q * nt; t = nt; nt = tmp;
            tmp = r - q * nr; r = nr; nr = tmp;
        }
        return reduce(t);
    }

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

private:
    Elem p_ = 2;
};

// Dense row-major matrix over GF(p). Viewed as a linear map k^cols -> k^rows.
class Mat {
public:
    Mat() = default;
    Mat(FieldSpec f, std::size_t rows, std::size_t cols) : f_(f), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    static Mat identity(FieldSpec f, std::size_t n) {
        Mat m(f, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
    // Entries are reduced mod p.
    static Mat from_rows(FieldSpec f, std::size_t cols, const std::vector<std::vector<std::int64_t>>& rows) {
        Mat m(f, rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            require(rows[i].size() == cols, ErrorKind::DimensionMismatch,
                    "row " + std::to_string(i) + " has length " + std::to_string(rows[i].size()) + ", expected " +
                        std::to_string(cols));
            for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = f.reduce(rows[i][j]);
        }
        return m;
    }
    static Mat from_vecs(FieldSpec f, std::size_t cols, const std::vector<Vec>& rows) {
        Mat m(f, rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            require(rows[i].size() == cols, ErrorKind::DimensionMismatch, "row length mismatch");
            for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j] % f.p();
        }
        return m;
    }

    FieldSpec field() const { return f_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Elem& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    Elem at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    Vec row(std::size_t i) const { return Vec(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_); }
    Vec col(std::size_t j) const {
        Vec v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
        return v;
    }
    void append_row(const Vec& v) {
        require(v.size() == cols_, ErrorKind::DimensionMismatch, "append_row length mismatch");
        a_.insert(a_.end(), v.begin(), v.end());
        ++rows_;
    }
    bool is_zero() const {
        for (Elem e : a_)
            if (e) return false;
        return true;
    }
    std::vector<std::vector<std::int64_t>> to_rows() const {
        std::vector<std::vector<std::int64_t>> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i) out[i].assign(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
        return out;
    }

    friend bool operator==(const Mat&, const Mat&) = default;

private:
    FieldSpec f_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Elem> a_;
};

inline Mat transpose(const Mat& m) {
    Mat t(m.field(), m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) t.at(j, i) = m.at(i, j);
    return t;
}

inline Mat operator*(const Mat& a, const Mat& b) {
    require(a.cols() == b.rows(), ErrorKind::DimensionMismatch, "matrix product shape mismatch");
    require(a.field() == b.field(), ErrorKind::FieldMismatch, "matrix product over different fields");
    FieldSpec f = a.field();
    Mat c(f, a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            Elem x = a.at(i, k);
            if (!x) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c.at(i, j) = f.add(c.at(i, j), f.mul(x, b.at(k, j)));
        }
    return c;
}

inline Vec mul_vec(const Mat& m, const Vec& v) {
    require(m.cols() == v.size(), ErrorKind::DimensionMismatch, "apply shape mismatch");
    FieldSpec f = m.field();
    Vec out(m.rows(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out[i] = f.add(out[i], f.mul(m.at(i, j), v[j]));
    return out;
}

inline Mat hstack(const Mat& a, const Mat& b) {
    require(a.rows() == b.rows(), ErrorKind::DimensionMismatch, "hstack row mismatch");
    Mat c(a.field(), a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) c.at(i, a.cols() + j) = b.at(i, j);
    }
    return c;
}

inline Mat vstack(const Mat& a, const Mat& b) {
    require(a.cols() == b.cols(), ErrorKind::DimensionMismatch, "vstack column mismatch");
    Mat c(a.field(), a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) c.at(a.rows() + i, j) = b.at(i, j);
    return c;
}

inline Mat block_diag(const Mat& a, const Mat& b) {
    Mat c(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) c.at(a.rows() + i, a.cols() + j) = b.at(i, j);
    return c;
}

inline Mat negate(const Mat& m) {
    Mat n = m;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) n.at(i, j) = m.field().neg(m.at(i, j));
    return n;
}

struct RrefResult {
    std::size_t rank = 0;
    Mat canonical;
    std::vector<std::size_t> pivots;
};

inline RrefResult rref(const Mat& m) {
    FieldSpec f = m.field();
    Mat a = m;
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t piv = r;
        while (piv < a.rows() && a.at(piv, c) == 0) ++piv;
        if (piv == a.rows()) continue;
        if (piv != r)
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(piv, j), a.at(r, j));
        Elem s = f.inv(a.at(r, c));
        for (std::size_t j = c; j < a.cols(); ++j) a.at(r, j) = f.mul(a.at(r, j), s);
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || a.at(i, c) == 0) continue;
            Elem x = a.at(i, c);
            for (std::size_t j = c; j < a.cols(); ++j) a.at(i, j) = f.sub(a.at(i, j), f.mul(x, a.at(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    Mat out(f, r, a.cols());
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j);
    return {r, out, pivots};
}

inline std::size_t rank(const Mat& m) { return rref(m).rank; }

// Subspace of k^ambient with canonical RREF basis rows.
class Subspace {
public:
    Subspace() = default;
    Subspace(FieldSpec f, std::size_t ambient) : basis_(f, 0, ambient) {}

    static Subspace span(const Mat& rows) {
        Subspace s;
        auto r = rref(rows);
        s.basis_ = std::move(r.canonical);
        s.pivots_ = std::move(r.pivots);
        return s;
    }
    static Subspace zero(FieldSpec f, std::size_t n) { return Subspace(f, n); }
    static Subspace full(FieldSpec f, std::size_t n) { return span(Mat::identity(f, n)); }

    FieldSpec field() const { return basis_.field(); }
    std::size_t ambient_dim() const { return basis_.cols(); }
    std::size_t dim() const { return basis_.rows(); }
    const Mat& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    // Coefficients of v in the basis, or nothing if v is not in the subspace.
    std::optional<Vec> coordinates(const Vec& v) const {
        require(v.size() == ambient_dim(), ErrorKind::AmbientMismatch, "vector length differs from ambient dim");
        FieldSpec f = field();
        Vec c(dim());
        Vec rest = v;
        for (std::size_t i = 0; i < dim(); ++i) {
            c[i] = rest[pivots_[i]];
            if (!c[i]) continue;
            for (std::size_t j = 0; j < ambient_dim(); ++j) rest[j] = f.sub(rest[j], f.mul(c[i], basis_.at(i, j)));
        }
        for (Elem e : rest)
            if (e) return std::nullopt;
        return c;
    }
    bool contains(const Vec& v) const { return coordinates(v).has_value(); }
    bool is_subspace_of(const Subspace& other) const {
        require(ambient_dim() == other.ambient_dim(), ErrorKind::AmbientMismatch, "ambient dims differ");
        for (std::size_t i = 0; i < dim(); ++i)
            if (!other.contains(basis_.row(i))) return false;
        return true;
    }

    friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }

private:
    Mat basis_;
    std::vector<std::size_t> pivots_;
};

inline Subspace kernel_basis(const Mat& m) {
    FieldSpec f = m.field();
    auto r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : r.pivots) is_pivot[p] = true;
    Mat k(f, 0, m.cols());
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vec v(m.cols(), 0);
        v[free] = 1;
        for (std::size_t i = 0; i < r.rank; ++i) v[r.pivots[i]] = f.neg(r.canonical.at(i, free));
        k.append_row(v);
    }
    return Subspace::span(k);
}

// Column space {m v}, a subspace of k^rows.
inline Subspace image(const Mat& m) { return Subspace::span(transpose(m)); }

// Rows spanning {w : <b, w> = 0 for all b in s}.
inline Mat annihilator(const Subspace& s) { return kernel_basis(s.basis()).basis(); }

inline Subspace subspace_sum(const Subspace& a, const Subspace& b) {
    require(a.ambient_dim() == b.ambient_dim(), ErrorKind::AmbientMismatch, "subspace_sum ambient dims differ");
    return Subspace::span(vstack(a.basis(), b.basis()));
}

inline Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
    require(a.ambient_dim() == b.ambient_dim(), ErrorKind::AmbientMismatch, "subspace_intersect ambient dims differ");
    return kernel_basis(vstack(annihilator(a), annihilator(b)));
}

inline Subspace preimage(const Mat& m, const Subspace& target) {
    require(target.ambient_dim() == m.rows(), ErrorKind::AmbientMismatch, "preimage target ambient differs from rows");
    return kernel_basis(annihilator(target) * m);
}

// Image of a subspace under v -> m v.
inline Subspace map_subspace(const Mat& m, const Subspace& s) {
    require(s.ambient_dim() == m.cols(), ErrorKind::AmbientMismatch, "map_subspace shape mismatch");
    return Subspace::span(transpose(m * transpose(s.basis())));
}

// Restrict every vector to the coordinate block [offset, offset+count).
inline Subspace project(const Subspace& s, std::size_t offset, std::size_t count) {
    require(offset + count <= s.ambient_dim(), ErrorKind::AmbientMismatch, "projection out of range");
    Mat m(s.field(), s.dim(), count);
    for (std::size_t i = 0; i < s.dim(); ++i)
        for (std::size_t j = 0; j < count; ++j) m.at(i, j) = s.basis().at(i, offset + j);
    return Subspace::span(m);
}

// Subspace of vectors in s whose coordinates outside [offset, offset+count) vanish, restricted to that block.
inline Subspace vanishing_outside(const Subspace& s, std::size_t offset, std::size_t count) {
    std::size_t n = s.ambient_dim();
    Mat constraints(s.field(), 0, n);
    for (std::size_t j = 0; j < n; ++j) {
        if (j >= offset && j < offset + count) continue;
        Vec e(n, 0);
        e[j] = 1;
        constraints.append_row(e);
    }
    Subspace z = subspace_intersect(s, kernel_basis(constraints));
    return project(z, offset, count);
}

// Embed s (in k^m) into k^n at coordinate block [offset, offset+m).
inline Subspace embed(const Subspace& s, std::size_t n, std::size_t offset) {
    require(offset + s.ambient_dim() <= n, ErrorKind::AmbientMismatch, "embedding out of range");
    Mat m(s.field(), s.dim(), n);
    for (std::size_t i = 0; i < s.dim(); ++i)
        for (std::size_t j = 0; j < s.ambient_dim(); ++j) m.at(i, offset + j) = s.basis().at(i, j);
    return Subspace::span(m);
}

inline Mat inverse(const Mat& m) {
    require(m.rows() == m.cols(), ErrorKind::DimensionMismatch, "inverse of a non-square matrix");
    std::size_t n = m.rows();
    auto r = rref(hstack(m, Mat::identity(m.field(), n)));
    require(r.rank == n && (n == 0 || r.pivots[n - 1] == n - 1), ErrorKind::Internal, "matrix is singular");
    Mat inv(m.field(), n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = r.canonical.at(i, n + j);
    return inv;
}

// Some x with a x = b, or nothing if the system is inconsistent.
inline std::optional<Vec> solve(const Mat& a, const Vec& b) {
    require(a.rows() == b.size(), ErrorKind::DimensionMismatch, "solve: right-hand side length mismatch");
    FieldSpec f = a.field();
    Mat aug(f, a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, a.cols()) = b[i] % f.p();
    }
    auto r = rref(aug);
    if (!r.pivots.empty() && r.pivots.back() == a.cols()) return std::nullopt;
    Vec x(a.cols(), 0);
    for (std::size_t i = 0; i < r.rank; ++i) x[r.pivots[i]] = r.canonical.at(i, a.cols());
    return x;
}

// Lexicographically first complement: standard basis vectors added greedily in index order.
inline Mat complement_basis(const Subspace& s) {
    FieldSpec f = s.field();
    std::size_t n = s.ambient_dim();
    Mat acc = s.basis();
    Mat out(f, 0, n);
    std::size_t r = s.dim();
    for (std::size_t j = 0; j < n && r < n; ++j) {
        Vec e(n, 0);
        e[j] = 1;
        Mat trial = acc;
        trial.append_row(e);
        if (rank(trial) > r) {
            acc = std::move(trial);
            out.append_row(e);
            ++r;
        }
    }
    return out;
}

} // namespace cmod
