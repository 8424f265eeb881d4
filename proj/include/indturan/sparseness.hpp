#pragma once

#include "indturan/graph.hpp"
#include "indturan/rng.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace indturan {

enum class Verdict { SparseCertified, Violated, Inconclusive };
enum class SparsenessMethod { Exhaustive, Randomized };

std::string to_string(Verdict v);
std::string to_string(SparsenessMethod m);

struct SparsenessReport {
    Verdict verdict = Verdict::Inconclusive;
    double c = 0;
    std::size_t t = 0;
    std::optional<std::pair<VertexSet, VertexSet>> witness;
    SparsenessMethod method = SparsenessMethod::Exhaustive;
    /// A-subsets examined (exact) or trials run (random).
    std::uint64_t work = 0;
    std::string note;
};

/// e(A,B) > (1-c)|A||B|, with a relative slack of 1e-9 on the right side so
/// that integer thresholds are not broken by rounding.
bool exceeds_density(std::uint64_t pair_count, double c, std::size_t a, std::size_t b);
/// Witness re-check: sizes >= t and the density bound is exceeded.
bool witness_is_valid(const Graph& g, const SparsenessReport& report);

struct ExactCheckOptions {
    /// Cap on C(n,t) * n elementary steps; beyond it the verdict is inconclusive.
    std::uint64_t budget = 4'000'000'000ULL;
    /// 0 picks the worker count from INDTURAN_WORKERS or the hardware.
    unsigned workers = 0;
};

/// Decides (c,t)-sparseness over pairs of size exactly t. For each t-subset
/// A the densest partner B is the t vertices with most neighbours in A.
SparsenessReport check_exact(const Graph& g, double c, std::size_t t, const ExactCheckOptions& opts = {});

/// Greedy swap ascent from random t-subset pairs; never certifies.
SparsenessReport refute_random(const Graph& g, double c, std::size_t t, std::uint64_t trials, Seed seed,
                               unsigned workers = 0);

/// Exact clique number by branch and bound; throws ResourceError (carrying
/// the best size found) once `node_budget` search nodes are spent.
std::size_t clique_number(const Graph& g, std::uint64_t node_budget = 200'000'000ULL);
std::vector<Vertex> maximum_clique(const Graph& g, std::uint64_t node_budget = 200'000'000ULL);

enum class CoverMode { Greedy, ExactSmall };

struct CliqueCover {
    std::vector<VertexSet> parts;
    std::size_t size() const noexcept { return parts.size(); }
};

CliqueCover clique_cover(const Graph& g, CoverMode mode = CoverMode::Greedy);
bool is_clique(const Graph& g, const VertexSet& s);
/// Parts are cliques, pairwise disjoint, and cover `universe` (all of V when omitted).
bool is_valid_cover(const Graph& g, const CliqueCover& cover, const std::optional<VertexSet>& universe = std::nullopt);

/// Uniform members of {a*GF(p) + b : a a nonzero square, b in GF(p^2)}, each a
/// clique of size p in paley(p^2).
std::vector<VertexSet> subfield_cliques(std::uint32_t q, std::size_t count, Seed seed);

/// Worker count: INDTURAN_WORKERS if set and positive, else hardware concurrency.
unsigned default_workers();

}  // namespace indturan
