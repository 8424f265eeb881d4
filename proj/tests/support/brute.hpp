#pragma once

// Test-side reference implementations. Everything here works on plain
// adjacency matrices built from edge lists and avoids the library's kernels.

#include "indturan/graph.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace brute {

using Matrix = std::vector<std::vector<char>>;

inline Matrix matrix(const indturan::Graph& g) {
    Matrix m(g.n(), std::vector<char>(g.n(), 0));
    for (const auto& e : g.edges()) m[e.u][e.v] = m[e.v][e.u] = 1;
    return m;
}

inline indturan::Graph random_graph(std::size_t n, double p, std::mt19937_64& gen) {
    std::bernoulli_distribution coin(p);
    std::vector<indturan::Edge> edges;
    for (indturan::Vertex u = 0; u < n; ++u)
        for (indturan::Vertex v = u + 1; v < n; ++v)
            if (coin(gen)) edges.push_back({u, v});
    return indturan::Graph(n, edges);
}

/// Some pair A, B with |A|, |B| >= t and e(A,B) > (1-c)|A||B|, over all sizes.
/// c is given as num/den so the comparison is exact.
inline bool violates_any_size(const indturan::Graph& g, std::size_t t, std::uint64_t c_num, std::uint64_t c_den) {
    const auto adj = matrix(g);
    const std::size_t n = g.n();
    const std::uint32_t full = (1u << n) - 1;
    std::vector<std::int64_t> w(n);
    for (std::uint32_t A = 1; A <= full; ++A) {
        const auto a = static_cast<std::size_t>(std::popcount(A));
        if (a < t) continue;
        for (std::size_t v = 0; v < n; ++v) {
            w[v] = 0;
            for (std::size_t x = 0; x < n; ++x)
                if ((A >> x) & 1u) w[v] += adj[v][x];
        }
        // Walk every B in Gray-code order, updating e(A,B) and |B| incrementally.
        std::int64_t e = 0;
        std::size_t b = 0;
        std::uint32_t B = 0;
        for (std::uint32_t i = 1; i <= full; ++i) {
            const int bit = std::countr_zero(i);
            B ^= 1u << bit;
            if ((B >> bit) & 1u) e += w[bit], ++b;
            else e -= w[bit], --b;
            if (b < t) continue;
            if (static_cast<std::uint64_t>(e) * c_den > (c_den - c_num) * a * b) return true;
        }
    }
    return false;
}

inline std::size_t clique_number(const indturan::Graph& g) {
    const auto adj = matrix(g);
    std::size_t best = g.n() ? 1 : 0;
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t from) -> void {
        best = std::max(best, cur.size());
        for (std::size_t v = from; v < g.n(); ++v) {
            if (!std::all_of(cur.begin(), cur.end(), [&](std::size_t u) { return adj[u][v]; })) continue;
            cur.push_back(v);
            self(self, v + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return best;
}

/// K_{s,r} as a (not necessarily induced) subgraph, by subset enumeration.
inline bool has_ksr(const indturan::Graph& g, std::size_t s, std::size_t r) {
    const auto adj = matrix(g);
    const std::size_t n = g.n();
    std::vector<std::size_t> S;
    bool found = false;
    auto rec = [&](auto&& self, std::size_t from) -> void {
        if (found) return;
        if (S.size() == s) {
            std::size_t common = 0;
            for (std::size_t v = 0; v < n; ++v)
                if (std::find(S.begin(), S.end(), v) == S.end() &&
                    std::all_of(S.begin(), S.end(), [&](std::size_t u) { return adj[u][v]; }))
                    ++common;
            if (common >= r) found = true;
            return;
        }
        for (std::size_t v = from; v < n; ++v) {
            S.push_back(v);
            self(self, v + 1);
            S.pop_back();
        }
    };
    rec(rec, 0);
    return found;
}

/// Shortest cycle by BFS from every vertex; 0 for forests.
inline std::size_t girth(const indturan::Graph& g) {
    const auto adj = matrix(g);
    const std::size_t n = g.n();
    std::size_t best = 0;
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<int> dist(n, -1), par(n, -1);
        std::vector<std::size_t> q{s};
        dist[s] = 0;
        for (std::size_t h = 0; h < q.size(); ++h) {
            const auto u = q[h];
            for (std::size_t v = 0; v < n; ++v) {
                if (!adj[u][v]) continue;
                if (dist[v] < 0) {
                    dist[v] = dist[u] + 1, par[v] = static_cast<int>(u), q.push_back(v);
                } else if (par[u] != static_cast<int>(v)) {
                    const auto len = static_cast<std::size_t>(dist[u] + dist[v] + 1);
                    if (!best || len < best) best = len;
                }
            }
        }
    }
    return best;
}

/// Labelled induced copies of h in (g, gamma) by trying all injective maps.
inline std::uint64_t count_induced(const indturan::Graph& gamma, const indturan::Graph& g, const indturan::Graph& h) {
    const auto G = matrix(g), Gm = matrix(gamma), H = matrix(h);
    const std::size_t k = h.n(), n = g.n();
    std::vector<std::size_t> phi;
    std::vector<char> used(n, 0);
    std::uint64_t count = 0;
    auto rec = [&](auto&& self) -> void {
        const std::size_t i = phi.size();
        if (i == k) {
            ++count;
            return;
        }
        for (std::size_t x = 0; x < n; ++x) {
            if (used[x]) continue;
            bool ok = true;
            for (std::size_t j = 0; j < i && ok; ++j)
                ok = H[i][j] ? G[x][phi[j]] : !Gm[x][phi[j]];
            if (!ok) continue;
            used[x] = 1;
            phi.push_back(x);
            self(self);
            phi.pop_back();
            used[x] = 0;
        }
    };
    rec(rec);
    return count;
}

inline double binom(std::size_t n, std::size_t k) {
    double r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

}  // namespace brute
