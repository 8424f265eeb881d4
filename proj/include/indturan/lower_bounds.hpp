#pragma once

#include "indturan/graph.hpp"
#include "indturan/rng.hpp"
#include "indturan/sparseness.hpp"

#include <functional>
#include <string>
#include <vector>

namespace indturan {

/// What the construction promises about induced K_{s,r} copies.
enum class Guarantee { None, InducedFree, Unverified };
std::string to_string(Guarantee g);

struct ConstructionResult {
    Graph subgraph;
    std::size_t cover_size = 0;
    Graph auxiliary;
    Seed bijection_seed = 0;
    /// bijection[i] = vertex of F assigned to cover part i.
    std::vector<Vertex> bijection;
    double guaranteed_bound = 0;
    Guarantee guarantee = Guarantee::None;
};

struct KsrTarget {
    std::size_t s = 0;
    std::size_t r = 0;
};

/// Keeps every intra-part edge and every Gamma edge between parts i, j whose
/// images under a uniform random bijection are adjacent in F. With a target,
/// the result is labelled InducedFree when F is bipartite, K_{s,r}-free and
/// r > 2, and Unverified when r = 2.
ConstructionResult build_random_quotient_subgraph(const Graph& gamma, const CliqueCover& cover, const Graph& F,
                                                  Seed seed, std::optional<KsrTarget> target = std::nullopt);

using CliqueSampler = std::function<std::vector<VertexSet>(std::size_t count, Seed seed)>;

struct PartialCover {
    /// Disjoint cliques in sampled order (parts emptied by disjointification are dropped).
    CliqueCover cover;
    VertexSet covered;
    std::size_t k = 0;
    std::size_t omega = 0;
    std::size_t attempts = 0;
};

/// Samples k = ceil(ln 4 * n / omega) cliques until at least 3n/4 vertices are
/// covered, then makes them disjoint in sampled order.
PartialCover vt_partial_cover(const Graph& gamma, const CliqueSampler& sampler, Seed seed,
                              std::size_t max_attempts = 64);

struct QuotientFamily {
    Graph source;
    std::vector<Graph> members;
};

/// Canonical adjacency string: the lexicographically largest upper-triangle
/// string over all labellings that list vertices by non-increasing degree.
std::string canonical_form(const Graph& g);
bool isomorphic(const Graph& a, const Graph& b);

/// Bipartite graphs obtained by contracting disjoint cliques of H, up to isomorphism.
QuotientFamily clique_quotients(const Graph& h);

/// Some (not necessarily induced) copy of `pattern` in `host`, as pattern -> host.
std::optional<std::vector<Vertex>> find_subgraph(const Graph& host, const Graph& pattern);
bool family_subgraph_free(const Graph& F, const QuotientFamily& family);

/// C_4-free bipartite graph on k vertices: greedily pick k vertices of the
/// smallest projective incidence graph with at least k vertices, alternating
/// sides and taking the vertex with most edges into the current selection.
Graph incidence_auxiliary(std::size_t k);
/// Random bipartite graph on k vertices (balanced sides) whose cycles all have
/// length >= min_girth: cross pairs are tried in random order and added when
/// they close no shorter cycle.
Graph random_high_girth_bipartite(std::size_t k, std::size_t min_girth, Seed seed);

}  // namespace indturan
