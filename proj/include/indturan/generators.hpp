#pragma once

#include "indturan/graph.hpp"
#include "indturan/rng.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace indturan {

bool is_prime(std::uint64_t x);

/// Element of GF(p) or GF(p^2); GF(p^2) is GF(p)[x]/(x^2 - d).
struct FieldElement {
    std::uint32_t c0 = 0;
    std::uint32_t c1 = 0;
    friend bool operator==(const FieldElement&, const FieldElement&) = default;
};

class FiniteField {
public:
    /// q prime, or q = p^2 with p an odd prime.
    explicit FiniteField(std::uint32_t q);

    std::uint32_t order() const noexcept { return q_; }
    std::uint32_t characteristic() const noexcept { return p_; }
    unsigned degree() const noexcept { return degree_; }
    /// The non-residue d defining x^2 = d (0 for prime fields).
    std::uint32_t nonresidue() const noexcept { return d_; }

    /// Elements are indexed c0 + c1 * p.
    FieldElement element(std::uint32_t index) const;
    std::uint32_t index(FieldElement x) const noexcept { return x.c0 + x.c1 * p_; }

    FieldElement add(FieldElement x, FieldElement y) const noexcept;
    FieldElement sub(FieldElement x, FieldElement y) const noexcept;
    FieldElement mul(FieldElement x, FieldElement y) const noexcept;
    FieldElement neg(FieldElement x) const noexcept;

    /// Indicator over element indices of the nonzero squares.
    const std::vector<bool>& square_table() const noexcept { return squares_; }
    bool is_nonzero_square(FieldElement x) const noexcept { return squares_[index(x)]; }

    std::string describe() const;

private:
    std::uint32_t q_ = 0, p_ = 0, d_ = 0;
    unsigned degree_ = 1;
    std::vector<bool> squares_;
};

Graph gnp(std::size_t n, double p, Seed seed);
Graph paley(std::uint32_t q);
Graph clique_union(std::size_t k, std::size_t s);
/// Point-line incidence graph of PG(2,p): points 0..N-1, lines N..2N-1.
Graph projective_incidence(std::uint32_t p);
/// Bipartite K_{s,r}-free graph on k <= 64 vertices by sample-then-delete.
Graph random_ksr_free(std::size_t k, std::size_t s, std::size_t r, Seed seed);

// Small named graphs.
Graph complete_graph(std::size_t n);
Graph empty_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph path_graph(std::size_t n);
Graph star_graph(std::size_t leaves);
/// Sides 0..a-1 and a..a+b-1.
Graph complete_bipartite(std::size_t a, std::size_t b);
Graph petersen_graph();

/// Some K_{s,r} subgraph (s vertices first, then r) or nothing.
std::optional<std::vector<Vertex>> find_ksr(const Graph& g, std::size_t s, std::size_t r);
inline bool contains_ksr(const Graph& g, std::size_t s, std::size_t r) { return find_ksr(g, s, r).has_value(); }

}  // namespace indturan
