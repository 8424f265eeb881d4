#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace indturan {

using Vertex = std::uint32_t;

/// Fixed-universe vertex subset stored as 64-bit blocks.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(std::size_t universe);

    static VertexSet of(std::size_t universe, std::initializer_list<Vertex> members);
    static VertexSet from(std::size_t universe, std::span<const Vertex> members);
    static VertexSet full(std::size_t universe);

    std::size_t universe() const noexcept { return universe_; }
    std::size_t size() const noexcept;
    bool empty() const noexcept;

    bool contains(Vertex v) const noexcept {
        return v < universe_ && ((words_[v >> 6] >> (v & 63)) & 1ULL);
    }
    void insert(Vertex v);
    void erase(Vertex v);
    void clear() noexcept;

    VertexSet& operator|=(const VertexSet& other);
    VertexSet& operator&=(const VertexSet& other);
    VertexSet& operator-=(const VertexSet& other);

    friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
    friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
    friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }
    friend bool operator==(const VertexSet&, const VertexSet&) = default;

    /// |this ∩ other| without materialising the intersection.
    std::size_t intersection_size(const VertexSet& other) const;
    bool intersects(const VertexSet& other) const;
    bool is_subset_of(const VertexSet& other) const;

    std::vector<Vertex> members() const;
    /// The k-th smallest member (0-based); k < size().
    Vertex nth(std::size_t k) const;
    /// Smallest member, or universe() when empty.
    Vertex first() const noexcept;

    std::span<const std::uint64_t> words() const noexcept { return words_; }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits) {
                const int b = std::countr_zero(bits);
                f(static_cast<Vertex>(w * 64 + static_cast<std::size_t>(b)));
                bits &= bits - 1;
            }
        }
    }

private:
    void require_same_universe(const VertexSet& other) const;

    std::size_t universe_ = 0;
    std::vector<std::uint64_t> words_;
};

struct Edge {
    Vertex u = 0;
    Vertex v = 0;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Immutable simple undirected graph on vertices 0..n-1.
class Graph {
public:
    Graph() = default;
    /// Throws InputError on self-loops, duplicate edges or out-of-range ids.
    Graph(std::size_t n, std::span<const Edge> edges);
    Graph(std::size_t n, std::initializer_list<Edge> edges)
        : Graph(n, std::span<const Edge>(edges.begin(), edges.size())) {}

    /// Adopts adjacency rows; throws InputError unless symmetric and loop-free.
    static Graph from_rows(std::vector<VertexSet> rows);

    std::size_t n() const noexcept { return rows_.size(); }
    std::size_t edge_count() const noexcept { return edge_count_; }
    std::size_t degree(Vertex v) const { return degrees_.at(v); }
    std::size_t max_degree() const noexcept;
    const VertexSet& neighbors(Vertex v) const { return rows_.at(v); }
    bool adjacent(Vertex u, Vertex v) const { return rows_.at(u).contains(v); }

    VertexSet vertices() const { return VertexSet::full(n()); }
    /// Edges with u < v in lexicographic order.
    std::vector<Edge> edges() const;

    /// Same vertex ids; keeps only edges with both ends in `keep`.
    Graph restricted_to(const VertexSet& keep) const;
    /// Same vertex ids; keeps only edges between `a` and `b`.
    Graph between(const VertexSet& a, const VertexSet& b) const;
    Graph complement() const;

    friend bool operator==(const Graph& a, const Graph& b) { return a.rows_ == b.rows_; }

private:
    void finalize();

    std::vector<VertexSet> rows_;
    std::vector<std::size_t> degrees_;
    std::size_t edge_count_ = 0;
};

/// Graph on `vertices.size()` vertices, vertex i standing for vertices[i].
Graph compact_induced(const Graph& g, std::span<const Vertex> vertices);
/// Graph with vertex v renamed to perm[v].
Graph relabel(const Graph& g, std::span<const Vertex> perm);
/// Edge-disjoint union on the same vertex set; both graphs must share n.
Graph edge_union(const Graph& a, const Graph& b);
bool is_subgraph_of(const Graph& sub, const Graph& host);

/// Injective map from pattern vertices (by index) to host vertices.
struct Embedding {
    std::vector<Vertex> assignment;
    std::string source;

    std::size_t size() const noexcept { return assignment.size(); }
    Vertex operator[](std::size_t i) const { return assignment[i]; }
    bool injective() const;
    VertexSet image(std::size_t universe) const;
};

// Neighbourhood and density kernels.

/// Ordered pairs (a, b) in A x B with ab an edge; edges inside A ∩ B count twice.
std::uint64_t pair_count(const Graph& g, const VertexSet& a, const VertexSet& b);
double pair_density(const Graph& g, const VertexSet& a, const VertexSet& b);
/// Intersection of the neighbourhoods of S; S must be non-empty.
VertexSet common_neighborhood(const Graph& g, const VertexSet& s);
/// Union of the neighbourhoods of S; empty for empty S.
VertexSet union_neighborhood(const Graph& g, const VertexSet& s);

/// True iff every pattern edge maps to a G-edge and every pattern non-edge
/// maps to a Gamma non-edge. Throws InputError when phi is not injective and
/// total, or when G and Gamma differ in vertex count.
bool is_copy_induced_in(const Graph& g, const Graph& gamma, const Graph& pattern,
                        const Embedding& phi);

// Small structural helpers shared by several modules.

bool is_bipartite(const Graph& g);
/// Side 0/1 per vertex of a 2-colouring (isolated vertices get side 0);
/// empty when the graph is not bipartite.
std::vector<int> two_coloring(const Graph& g);
bool is_connected(const Graph& g);
/// Length of a shortest cycle, or 0 for a forest.
std::size_t girth(const Graph& g);

// Edge-list text format: "n m" then m lines "u v". Lines starting with '#'
// before the header are comments.

Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& g, const std::string& comment = {});
void write_edge_list_file(const std::string& path, const Graph& g, const std::string& comment = {});

}  // namespace indturan
