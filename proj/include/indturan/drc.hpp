#pragma once

#include "indturan/graph.hpp"
#include "indturan/rng.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace indturan {

/// d-bounded bipartite pattern. Vertex ids: A0 = 0..l-1, A1 = l..l+a-1,
/// B = l+a..l+a+b-1. A0 is complete to B; A1 vertex i sees a1[i] (indices into B).
class BipartitePattern {
public:
    BipartitePattern(std::size_t l, std::size_t b, std::vector<std::vector<std::size_t>> a1);

    /// "bip l=<l> B=<b> A1=<d1,d2,...>": A1 vertex i is joined to B vertices
    /// (o_i + j) mod b for j < d_i, where o_i is the sum of the earlier degrees.
    static BipartitePattern parse(const std::string& spec);
    /// Connected bipartite graph; the side giving the smaller d becomes A.
    static BipartitePattern from_graph(const Graph& h);

    std::size_t l() const noexcept { return l_; }
    std::size_t a() const noexcept { return a1_.size(); }
    std::size_t b() const noexcept { return b_; }
    std::size_t d() const noexcept;
    std::size_t e() const noexcept;
    std::size_t v() const noexcept { return l_ + a() + b_; }
    const std::vector<std::vector<std::size_t>>& a1() const noexcept { return a1_; }

    Vertex a0_id(std::size_t i) const { return static_cast<Vertex>(i); }
    Vertex a1_id(std::size_t i) const { return static_cast<Vertex>(l_ + i); }
    Vertex b_id(std::size_t i) const { return static_cast<Vertex>(l_ + a() + i); }

    Graph graph() const;
    /// Same pattern with one A0 vertex removed (requires l >= 2).
    BipartitePattern without_apex() const;
    std::string describe() const;

private:
    std::size_t l_, b_;
    std::vector<std::vector<std::size_t>> a1_;
};

/// Bipartite view [U, R] of a host G; only U-R edges of G are visible.
struct HostView {
    std::shared_ptr<const Graph> host;
    VertexSet U, R;

    HostView(std::shared_ptr<const Graph> g, VertexSet u, VertexSet r);
    std::size_t m() const noexcept { return U.size(); }
    std::size_t r() const noexcept { return R.size(); }
    std::uint64_t edges() const noexcept { return edges_; }
    double q() const noexcept;
    /// Degree into the other side.
    std::size_t degree(Vertex v) const;
    double avg_degree_U() const;

private:
    std::uint64_t edges_ = 0;
};

/// Random balanced split: floor(n/2) vertices to U, the rest to R.
HostView random_host_view(std::shared_ptr<const Graph> g, Seed seed);

/// Largest delta on the 2^-20 grid in (0, 1/4) with 1 - 2 delta > delta^(1 - 1/kappa).
double choose_delta(double kappa);
inline double kappa_for(const BipartitePattern& h) { return 1.0 + 1.0 / static_cast<double>(h.v()); }

struct ReductionReport {
    std::size_t iterations = 0;
    double avg_before = 0, avg_after = 0;
    std::size_t m_before = 0, m_after = 0;
};

/// Shrinks U to a delta^2-reduced U'. Each postcondition is re-checked on the
/// output and a failure raises InternalError. `exponents` are the x >= kappa
/// values for the mass inequality.
HostView delta_reduce(const HostView& view, double delta, const std::vector<double>& exponents,
                      ReductionReport* report = nullptr);

/// |N_G(S) ∩ U \ N^+_Gamma(T)| >= eps * m * q^|S|.
bool is_rich(const HostView& view, const Graph& gamma, const VertexSet& S, const VertexSet& T, double eps);
/// Richness with the exponent given explicitly (tuples with repeats use their length).
bool is_rich_k(const HostView& view, const Graph& gamma, const VertexSet& S, const VertexSet& T, double eps,
               std::size_t exponent);

enum class Goodness { Good, Bad, Uncertain };
std::string to_string(Goodness g);

struct GoodnessResult {
    Goodness verdict = Goodness::Uncertain;
    double bad_fraction = 0;
    double half_width = 0;
    bool exhaustive = false;
    std::uint64_t tuples = 0;
};

/// Fraction of k-tuples (repeats allowed) of N_G(u) ∩ R that are not
/// (eps, {u})-rich, compared against beta. Exhaustive when deg^k <= budget,
/// otherwise a Monte-Carlo estimate with a 1e-3 Hoeffding band.
GoodnessResult goodness_estimate(const HostView& view, const Graph& gamma, Vertex u, double beta, double eps,
                                 std::size_t k, std::uint64_t samples, Seed seed,
                                 std::uint64_t exhaustive_budget = 200'000);

enum class Reject {
    None,
    XNotIndependent,
    TupleNotRich,
    A1PickCollision,
    A1PickAdjacent,
    ApexNotGood,
    EmptySubview,
    BudgetExhausted,
};
std::string to_string(Reject r);

struct Schedule {
    double c = 0, t = 0;
    std::size_t d = 1;
    double delta = 0, kappa = 0, eps = 0, beta = 0, gamma = 0;
    /// Indexed by level 1..l (entry 0 unused).
    std::vector<double> C, Cp, gamma_l;
};

/// Defaults eps = c^(b+1)/4, beta = c^(b^2)/(8 C(b,d)), delta from choose_delta,
/// and the per-level recurrences for C_l, C'_l, gamma_l.
Schedule default_schedule(const BipartitePattern& h, double c, double t);

struct DrcConfig {
    Schedule schedule;
    bool enforce_guards = false;
    Seed seed = 0;
    std::size_t apex_budget = 32;
    std::size_t tuple_budget = 64;
    bool check_goodness = false;
    std::uint64_t goodness_samples = 2000;
};

struct GuardEvaluation {
    std::size_t level = 0;
    double q = 0, q_required = 0, r = 0, r_required = 0;
    bool passed = true;
};

struct EmbedStats {
    std::size_t reductions = 0;
    std::size_t apexes_tried = 0;
    std::size_t tuple_attempts = 0;
    std::map<std::string, std::size_t> rejects;
    std::vector<GuardEvaluation> guards;
    void merge(const EmbedStats& o);
};

struct EmbedOutcome {
    std::optional<Embedding> embedding;
    Reject reason = Reject::None;
    EmbedStats stats;
    bool success() const noexcept { return embedding.has_value(); }
};

/// One attempt of the single-apex sampler (l = 1): A0 at u, B on a uniform
/// b-tuple of N_G(u) ∩ R, each A1 vertex on its unique neighbourhood.
EmbedOutcome sample_apex_copy(const Graph& gamma, const HostView& view, const BipartitePattern& h, Vertex u,
                              const DrcConfig& cfg, Rng& rng);

/// The l-level recursion. Attempt i at a level draws from derive_seed(seed, {i}),
/// so enlarging a budget never turns a success into a reject.
EmbedOutcome embed_recursive(const Graph& gamma, const HostView& view, const BipartitePattern& h,
                             const DrcConfig& cfg);

/// `runs` independent embed_recursive calls with seeds derive_seed(cfg.seed, {run}),
/// spread over workers and returned in run order.
std::vector<EmbedOutcome> embed_batch(const Graph& gamma, const HostView& view, const BipartitePattern& h,
                                      const DrcConfig& cfg, std::size_t runs, unsigned workers = 0);

struct SurvivorSample {
    std::vector<Vertex> tuple;
    VertexSet surviving;
};

/// Uniform r-tuple from V; surviving = W \ N^+_Gamma(tuple).
SurvivorSample sample_nonneighbor_survivors(const Graph& gamma, const VertexSet& V, const VertexSet& W,
                                            std::size_t r, Rng& rng);

/// Uniform element of V_1 x ... x V_k; returned only when the picks are
/// distinct and pairwise non-adjacent in Gamma.
std::optional<std::vector<Vertex>> sample_independent_tuple(const Graph& gamma, const std::vector<VertexSet>& sets,
                                                            Rng& rng);

}  // namespace indturan
