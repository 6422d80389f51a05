#pragma once

#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

#include "cmod/diagram.hpp"

namespace cmod {

struct InterleavingOptions {
    std::size_t max_bars = 3;
    std::size_t max_candidates = 1u << 16;  // bound on brute-forced Φ coefficient vectors
};

namespace detail {

// Bar of an interval p-sheaf on the half-integer lattice.
struct LatticeBar {
    std::size_t x, y;
    BarType type;
};

// Whether the interval sheaf of `b` is k on the position interval [a..e].
inline bool sheaf_nonzero(const LatticeBar& b, std::size_t a, std::size_t e) {
    switch (b.type) {
    case BarType::Closed: return b.x <= a && e <= b.y;
    case BarType::CoOpen: return b.x <= a && a <= b.y;
    case BarType::ContraOpen: return b.x <= e && e <= b.y;
    case BarType::Open: return a <= b.y && e >= b.x;
    }
    return false;
}

struct Lattice {
    Rational lo, step;
    std::size_t points = 0;  // N; positions 0..2N
    std::size_t last() const { return 2 * points; }
    std::size_t index(const Rational& t) const {
        Rational k = (t - lo) / step;
        require(boost::multiprecision::denominator(k) == 1 && k >= 0, ErrorKind::Misaligned, "value off the lattice");
        return static_cast<std::size_t>(boost::multiprecision::numerator(k));
    }
};

inline LatticeBar to_lattice(const Lattice& L, const GridLine& g, const Bar& bar) {
    DecoratedValue s = bar_birth(g, bar), e = bar_death(g, bar);
    LatticeBar out{0, L.last(), bar.type};
    if (s.value.finite()) out.x = 2 * L.index(s.value.value) + (s.dec == '-' ? 1 : 2);
    if (e.value.finite()) out.y = 2 * L.index(e.value.value) + (e.dec == '+' ? 1 : 0);
    return out;
}

struct Interval {
    std::size_t a, b;
    bool empty;
};

inline Interval erode(const Interval& iv, std::size_t shift, std::size_t last) {
    if (iv.empty) return iv;
    std::size_t a = iv.a == 0 ? 0 : std::min(iv.a + shift, last);
    long b = iv.b == last ? static_cast<long>(last) : static_cast<long>(iv.b) - static_cast<long>(shift);
    if (b < static_cast<long>(a)) return {0, 0, true};
    return {a, static_cast<std::size_t>(b), false};
}

// Components of the ε-morphism space Hom(k_A, k_B(·^{-ε})): comp[I] is a free coefficient index or -1.
struct HomComponents {
    std::vector<int> comp;
    int count = 0;
};

inline HomComponents hom_components(const LatticeBar& A, const LatticeBar& B, std::size_t shift, std::size_t last,
                                    const std::vector<Interval>& ivs, const std::vector<std::vector<int>>& id_of) {
    const std::size_t n = ivs.size();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int u) { return parent[u] == u ? u : parent[u] = find(parent[u]); };
    std::vector<bool> zero(n, false);
    auto a_nz = [&](const Interval& iv) { return !iv.empty && sheaf_nonzero(A, iv.a, iv.b); };
    auto b_nz = [&](const Interval& iv) { return !iv.empty && sheaf_nonzero(B, iv.a, iv.b); };
    std::vector<bool> in_s(n);
    for (std::size_t k = 0; k < n; ++k) in_s[k] = a_nz(ivs[k]) && b_nz(erode(ivs[k], shift, last));
    for (std::size_t k = 0; k < n; ++k) {
        const Interval& J = ivs[k];
        if (J.a == J.b || !a_nz(J)) continue;
        for (int side = 0; side < 2; ++side) {
            std::size_t a = J.a + (side == 0), b = J.b - (side == 1);
            int ki = id_of[a][b];
            const Interval& I = ivs[ki];
            if (!b_nz(erode(I, shift, last))) continue;
            bool i_in = a_nz(I), j_in = b_nz(erode(J, shift, last));
            if (i_in && j_in) parent[find(ki)] = find(static_cast<int>(k));
            else if (i_in) zero[ki] = true;
            else if (j_in) zero[k] = true;
        }
    }
    std::vector<bool> root_zero(n, false);
    for (std::size_t k = 0; k < n; ++k)
        if (in_s[k] && zero[k]) root_zero[find(static_cast<int>(k))] = true;
    HomComponents hc;
    hc.comp.assign(n, -1);
    std::vector<int> label(n, -1);
    for (std::size_t k = 0; k < n; ++k) {
        if (!in_s[k]) continue;
        int r = find(static_cast<int>(k));
        if (root_zero[r]) continue;
        if (label[r] < 0) label[r] = hc.count++;
        hc.comp[k] = label[r];
    }
    return hc;
}

// One equation Σ y[yv] * x[xv] = rhs, terms as (x index, y index).
struct SymbolicEquation {
    std::vector<std::pair<int, int>> terms;
    Elem rhs;
    friend auto operator<=>(const SymbolicEquation&, const SymbolicEquation&) = default;
};

} // namespace detail

inline std::vector<Bar> expanded_bars(const DecoratedDiagram& d) {
    std::vector<Bar> out;
    for (const auto& [b, k] : d.mult) out.insert(out.end(), k, b);
    return out;
}

// Brute-force test for an ε-interleaving between two interval-decomposable modules.
inline bool interleaving_feasible(const GridCModule& m1, const GridCModule& m2, const Rational& eps,
                                  const InterleavingOptions& opt = {}) {
    using namespace detail;
    require(m1.field() == m2.field(), ErrorKind::FieldMismatch, "modules over different fields");
    const FieldSpec f = m1.field();
    const Rational step(1, 2);
    require(eps >= 0 && boost::multiprecision::denominator(eps / step) == 1, ErrorKind::Misaligned,
            "epsilon must be a nonnegative multiple of 1/2");
    for (const auto* m : {&m1, &m2})
        for (const auto& t : m->grid().values())
            require(boost::multiprecision::denominator(t) == 1, ErrorKind::Misaligned, "grid values must be integers");

    auto bars1 = expanded_bars(multiplicities(m1)), bars2 = expanded_bars(multiplicities(m2));
    require(bars1.size() <= opt.max_bars && bars2.size() <= opt.max_bars, ErrorKind::TooLarge,
            "modules have more than " + std::to_string(opt.max_bars) + " bars");

    Rational lo = std::min(m1.grid().values().front(), m2.grid().values().front());
    Rational hi = std::max(m1.grid().values().back(), m2.grid().values().back());
    Rational pad = 2 * eps + 1;
    Lattice L{lo - pad, step, 0};
    L.points = static_cast<std::size_t>(boost::multiprecision::numerator((hi - lo + 2 * pad) / step)) + 1;
    const std::size_t last = L.last();
    const std::size_t shift = static_cast<std::size_t>(boost::multiprecision::numerator(4 * eps));

    std::vector<LatticeBar> A, B;
    for (const auto& b : bars1) A.push_back(to_lattice(L, m1.grid(), b));
    for (const auto& b : bars2) B.push_back(to_lattice(L, m2.grid(), b));

    std::vector<Interval> ivs;
    std::vector<std::vector<int>> id_of(last + 1, std::vector<int>(last + 1, -1));
    for (std::size_t a = 0; a <= last; ++a)
        for (std::size_t b = a; b <= last; ++b) {
            id_of[a][b] = static_cast<int>(ivs.size());
            ivs.push_back({a, b, false});
        }
    auto find_id = [&](const Interval& iv) { return iv.empty ? -1 : id_of[iv.a][iv.b]; };

    // Φ: A_i -> B_j and Ψ: B_j -> A_i, coefficient variables numbered per direction.
    std::vector<std::vector<HomComponents>> phi(A.size()), psi(B.size());
    std::vector<std::vector<int>> phi_base(A.size()), psi_base(B.size());
    int nx = 0, ny = 0;
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < B.size(); ++j) {
            phi[i].push_back(hom_components(A[i], B[j], shift, last, ivs, id_of));
            phi_base[i].push_back(nx);
            nx += phi[i].back().count;
        }
    for (std::size_t j = 0; j < B.size(); ++j)
        for (std::size_t i = 0; i < A.size(); ++i) {
            psi[j].push_back(hom_components(B[j], A[i], shift, last, ivs, id_of));
            psi_base[j].push_back(ny);
            ny += psi[j].back().count;
        }
    auto var = [](const HomComponents& h, int base, int id) { return id < 0 || h.comp[id] < 0 ? -1 : base + h.comp[id]; };

    // Symbolic equations of Ψ∘Φ = e^{2ε}_F and Φ∘Ψ = e^{2ε}_G over every interval.
    std::set<SymbolicEquation> eqs;
    auto collect = [&](const std::vector<LatticeBar>& X, const std::vector<LatticeBar>& Y,
                       const std::vector<std::vector<HomComponents>>& first, const std::vector<std::vector<int>>& first_base,
                       const std::vector<std::vector<HomComponents>>& second, const std::vector<std::vector<int>>& second_base,
                       bool x_first) {
        for (std::size_t k = 0; k < ivs.size(); ++k) {
            Interval I = ivs[k], I1 = erode(I, shift, last), I2 = erode(I1, shift, last);
            if (I2.empty) continue;
            int id1 = find_id(I1);
            for (std::size_t i = 0; i < X.size(); ++i) {
                if (!sheaf_nonzero(X[i], I.a, I.b)) continue;
                for (std::size_t i2 = 0; i2 < X.size(); ++i2) {
                    if (!sheaf_nonzero(X[i2], I2.a, I2.b)) continue;
                    SymbolicEquation e;
                    e.rhs = i == i2 ? 1 : 0;
                    for (std::size_t j = 0; j < Y.size(); ++j) {
                        int v1 = var(first[i][j], first_base[i][j], static_cast<int>(k));
                        int v2 = var(second[j][i2], second_base[j][i2], id1);
                        if (v1 < 0 || v2 < 0) continue;
                        // Φ variables are the x side in both families.
                        e.terms.push_back(x_first ? std::make_pair(v1, v2) : std::make_pair(v2, v1));
                    }
                    std::sort(e.terms.begin(), e.terms.end());
                    eqs.insert(e);
                }
            }
        }
    };
    collect(A, B, phi, phi_base, psi, psi_base, true);
    collect(B, A, psi, psi_base, phi, phi_base, false);

    double combos = std::pow(static_cast<double>(f.p()), nx);
    require(combos <= static_cast<double>(opt.max_candidates), ErrorKind::TooLarge,
            "interleaving search needs " + std::to_string(nx) + " brute-forced coefficients");

    std::vector<SymbolicEquation> eq(eqs.begin(), eqs.end());
    for (const auto& e : eq)
        if (e.terms.empty() && e.rhs != 0) return false;
    Vec x(nx, 0);
    while (true) {
        Mat sys(f, eq.size(), ny + 1);
        for (std::size_t r = 0; r < eq.size(); ++r) {
            for (auto [xv, yv] : eq[r].terms) sys.at(r, yv) = f.add(sys.at(r, yv), x[xv]);
            sys.at(r, ny) = eq[r].rhs;
        }
        auto rr = rref(sys);
        bool consistent = rr.pivots.empty() || rr.pivots.back() != static_cast<std::size_t>(ny);
        if (consistent) return true;
        int i = 0;
        while (i < nx && ++x[i] == f.p()) x[i++] = 0;
        if (i == nx) break;
    }
    return false;
}

} // namespace cmod
