#pragma once

#include "indturan/graph.hpp"

#include <functional>
#include <vector>

namespace brute {

/// Calls f on every labelled tree on k vertices (Prüfer decoding).
inline void for_each_labelled_tree(std::size_t k, const std::function<void(const indturan::Graph&)>& f) {
    using indturan::Edge;
    using indturan::Vertex;
    if (k == 1) {
        f(indturan::Graph(1, std::vector<Edge>{}));
        return;
    }
    if (k == 2) {
        f(indturan::Graph(2, {{0, 1}}));
        return;
    }
    std::vector<std::size_t> seq(k - 2, 0);
    for (;;) {
        std::vector<std::size_t> deg(k, 1);
        for (auto x : seq) ++deg[x];
        std::vector<Edge> edges;
        for (auto x : seq) {
            std::size_t leaf = 0;
            while (deg[leaf] != 1) ++leaf;
            edges.push_back({static_cast<Vertex>(std::min(leaf, x)), static_cast<Vertex>(std::max(leaf, x))});
            --deg[leaf];
            --deg[x];
        }
        std::size_t a = k, b = k;
        for (std::size_t v = 0; v < k; ++v)
            if (deg[v] == 1) (a == k ? a : b) = v;
        edges.push_back({static_cast<Vertex>(a), static_cast<Vertex>(b)});
        f(indturan::Graph(k, edges));
        std::size_t i = 0;
        while (i < seq.size() && ++seq[i] == k) seq[i++] = 0;
        if (i == seq.size()) return;
    }
}

}  // namespace brute
