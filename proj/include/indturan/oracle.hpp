#pragma once

// Brute-force ground truth. These routines read only the edge lists of their
// inputs and keep their own adjacency matrices, so they share no search code
// with the modules they are used to check.

#include "indturan/graph.hpp"

#include <cstdint>
#include <vector>

namespace indturan::oracle {

struct Budget {
    std::uint64_t max_nodes = 2'000'000'000ULL;
    /// Wall-clock cap in seconds; 0 disables it.
    double max_seconds = 0;
};

/// Labelled copies: injective maps with H-edges on G-edges and H-non-edges on Gamma-non-edges.
std::uint64_t count_induced_in(const Graph& gamma, const Graph& g, const Graph& h, const Budget& budget = {});

struct AvoidResult {
    std::size_t edges = 0;
    Graph witness;
};

/// Largest subgraph G of Gamma (same vertex set) with no induced copy of H.
AvoidResult max_subgraph_avoiding(const Graph& gamma, const Graph& h, const Budget& budget = {});

/// ex(n, H): most edges in an n-vertex graph with no H subgraph.
std::size_t turan_number(std::size_t n, const Graph& h, const Budget& budget = {});

}  // namespace indturan::oracle
