#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "cmod/decompose.hpp"

namespace cmod {

using DiagramPoint = std::pair<ExtReal, ExtReal>;

struct UndecoratedDiagram {
    std::array<std::map<DiagramPoint, std::size_t>, 4> classes;  // indexed by BarType

    std::map<DiagramPoint, std::size_t>& of(BarType t) { return classes[static_cast<int>(t)]; }
    const std::map<DiagramPoint, std::size_t>& of(BarType t) const { return classes[static_cast<int>(t)]; }
    void add(BarType t, const DiagramPoint& p, std::size_t k = 1) {
        if (k) of(t)[p] += k;
    }
    // Points of one class with multiplicity expanded, in sorted order.
    std::vector<DiagramPoint> expanded(BarType t) const {
        std::vector<DiagramPoint> out;
        for (const auto& [p, k] : of(t)) out.insert(out.end(), k, p);
        return out;
    }
    bool empty() const {
        for (const auto& c : classes)
            if (!c.empty()) return false;
        return true;
    }
    friend bool operator==(const UndecoratedDiagram&, const UndecoratedDiagram&) = default;
};

inline constexpr std::array<BarType, 4> kBarTypes{BarType::Closed, BarType::CoOpen, BarType::ContraOpen, BarType::Open};

inline void validate_point(BarType t, const DiagramPoint& p) {
    const auto& [s, e] = p;
    require(!s.is_pos_inf() && !e.is_neg_inf() && s <= e, ErrorKind::InvalidInput, "diagram point needs s <= t");
    switch (t) {
    case BarType::Closed:
        require(s.finite() && e.finite() && s < e, ErrorKind::InvalidInput, "Closed points need finite s < t");
        break;
    case BarType::CoOpen: require(s.finite(), ErrorKind::InvalidInput, "CoOpen points need finite s"); break;
    case BarType::ContraOpen: require(e.finite(), ErrorKind::InvalidInput, "ContraOpen points need finite t"); break;
    case BarType::Open: break;
    }
}

inline UndecoratedDiagram undecorate(const DecoratedDiagram& d) {
    UndecoratedDiagram u;
    for (const auto& [bar, k] : d.mult) {
        DiagramPoint p{bar_birth(d.grid, bar).value, bar_death(d.grid, bar).value};
        if (bar.type != BarType::Open && p.first == p.second) continue;
        u.add(bar.type, p, k);
    }
    return u;
}

inline UndecoratedDiagram undecorated_sum(const UndecoratedDiagram& a, const UndecoratedDiagram& b) {
    UndecoratedDiagram s = a;
    for (auto t : kBarTypes)
        for (const auto& [p, k] : b.of(t)) s.add(t, p, k);
    return s;
}

inline ExtReal d_inf(const DiagramPoint& a, const DiagramPoint& b) {
    return std::max(abs_diff(a.first, b.first), abs_diff(a.second, b.second));
}

inline ExtReal d_inf_diagonal(const DiagramPoint& a) {
    ExtReal d = abs_diff(a.first, a.second);
    if (!d.finite()) return d;
    return ExtReal(d.value / 2);
}

// Deletion slack L; Open points can never be deleted.
inline std::optional<int> deletion_factor(BarType t) {
    switch (t) {
    case BarType::Closed: return 2;
    case BarType::CoOpen:
    case BarType::ContraOpen: return 1;
    case BarType::Open: return std::nullopt;
    }
    return std::nullopt;
}

struct ClassMatching {
    std::vector<std::pair<std::size_t, std::size_t>> matched;  // indices into the expanded point lists
    std::vector<std::size_t> deleted_a, deleted_b;
};

struct MatchingCertificate {
    Rational epsilon;
    std::array<ClassMatching, 4> classes;
};

// Maximum bipartite matching (Hopcroft-Karp). Returns match of each left vertex or -1.
inline std::vector<int> hopcroft_karp(std::size_t nl, std::size_t nr, const std::vector<std::vector<int>>& adj) {
    const int INF = std::numeric_limits<int>::max();
    std::vector<int> ml(nl, -1), mr(nr, -1), dist(nl);
    auto bfs = [&]() {
        std::queue<int> q;
        bool found = false;
        for (std::size_t u = 0; u < nl; ++u) {
            dist[u] = ml[u] == -1 ? 0 : INF;
            if (ml[u] == -1) q.push(static_cast<int>(u));
        }
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : adj[u]) {
                int w = mr[v];
                if (w == -1) found = true;
                else if (dist[w] == INF) {
                    dist[w] = dist[u] + 1;
                    q.push(w);
                }
            }
        }
        return found;
    };
    std::function<bool(int)> dfs = [&](int u) {
        for (int v : adj[u]) {
            int w = mr[v];
            if (w == -1 || (dist[w] == dist[u] + 1 && dfs(w))) {
                ml[u] = v;
                mr[v] = u;
                return true;
            }
        }
        dist[u] = INF;
        return false;
    };
    while (bfs())
        for (std::size_t u = 0; u < nl; ++u)
            if (ml[u] == -1) dfs(static_cast<int>(u));
    return ml;
}

// (eps, L)-matching of one class: left = A ∪ diagonal copies of B, right = B ∪ diagonal copies of A.
inline std::optional<ClassMatching> match_class(const std::vector<DiagramPoint>& a, const std::vector<DiagramPoint>& b,
                                                std::optional<int> L, const Rational& eps) {
    const std::size_t na = a.size(), nb = b.size();
    if (!L && na != nb) return std::nullopt;
    ExtReal e(eps), le = L ? ExtReal(eps * *L) : ExtReal(0);
    auto deletable = [&](const DiagramPoint& p) { return L.has_value() && d_inf_diagonal(p) <= le; };
    // Without deletions the graph is just A against B.
    const std::size_t extra_l = L ? nb : 0, extra_r = L ? na : 0;
    std::vector<std::vector<int>> adj(na + extra_l);
    for (std::size_t i = 0; i < na; ++i) {
        for (std::size_t j = 0; j < nb; ++j)
            if (d_inf(a[i], b[j]) <= e) adj[i].push_back(static_cast<int>(j));
        if (deletable(a[i])) adj[i].push_back(static_cast<int>(nb + i));
    }
    for (std::size_t j = 0; j < extra_l; ++j) {
        if (deletable(b[j])) adj[na + j].push_back(static_cast<int>(j));
        for (std::size_t i = 0; i < na; ++i) adj[na + j].push_back(static_cast<int>(nb + i));
    }
    auto ml = hopcroft_karp(na + extra_l, nb + extra_r, adj);
    ClassMatching cm;
    for (std::size_t u = 0; u < na + extra_l; ++u) {
        if (ml[u] == -1) return std::nullopt;
        std::size_t v = static_cast<std::size_t>(ml[u]);
        if (u < na && v < nb) cm.matched.push_back({u, v});
        else if (u < na) cm.deleted_a.push_back(u);
        else if (v < nb) cm.deleted_b.push_back(v);
    }
    return cm;
}

inline std::optional<MatchingCertificate> matching_exists(const UndecoratedDiagram& d1, const UndecoratedDiagram& d2,
                                                          const Rational& eps) {
    require(eps >= 0, ErrorKind::InvalidInput, "epsilon must be nonnegative");
    MatchingCertificate cert;
    cert.epsilon = eps;
    for (auto t : kBarTypes) {
        auto cm = match_class(d1.expanded(t), d2.expanded(t), deletion_factor(t), eps);
        if (!cm) return std::nullopt;
        cert.classes[static_cast<int>(t)] = std::move(*cm);
    }
    return cert;
}

struct BottleneckResult {
    ExtReal distance;
    std::optional<MatchingCertificate> certificate;  // at the distance, when finite
};

inline BottleneckResult bottleneck(const UndecoratedDiagram& d1, const UndecoratedDiagram& d2) {
    std::vector<Rational> cand{Rational(0)};
    for (auto t : kBarTypes) {
        auto a = d1.expanded(t), b = d2.expanded(t);
        for (const auto& x : a)
            for (const auto& y : b)
                if (auto d = d_inf(x, y); d.finite()) cand.push_back(d.value);
        if (auto L = deletion_factor(t))
            for (const auto* side : {&a, &b})
                for (const auto& x : *side)
                    if (auto d = d_inf_diagonal(x); d.finite()) cand.push_back(d.value / *L);
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    auto top = matching_exists(d1, d2, cand.back());
    if (!top) return {ExtReal::pos_inf(), std::nullopt};
    std::size_t lo = 0, hi = cand.size() - 1;
    std::optional<MatchingCertificate> best = top;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (auto c = matching_exists(d1, d2, cand[mid])) {
            best = c;
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    if (best->epsilon != cand[lo]) best = matching_exists(d1, d2, cand[lo]);
    return {ExtReal(cand[lo]), best};
}

} // namespace cmod
