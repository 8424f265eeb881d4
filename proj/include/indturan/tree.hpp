#pragma once

// Rejection-sampling hierarchy for induced copies of a tree. Subtrees are keyed
// by bitmasks over the tree's vertices; an assignment is a vector indexed by
// tree vertex with kUnset for vertices outside the subtree.

#include "indturan/graph.hpp"
#include "indturan/rng.hpp"

#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace indturan {

using SubtreeKey = std::uint64_t;
inline constexpr Vertex kUnset = std::numeric_limits<Vertex>::max();

class LabeledTree {
public:
    /// Throws InputError unless g is a tree with 1..64 vertices.
    explicit LabeledTree(Graph g);
    static LabeledTree from_edges(std::size_t k, const std::vector<Edge>& edges);

    std::size_t size() const noexcept { return g_.n(); }
    const Graph& graph() const noexcept { return g_; }
    SubtreeKey full() const noexcept;
    bool is_subtree(SubtreeKey s) const;
    /// Leaves of the subtree s (a single vertex counts as a leaf).
    std::vector<Vertex> leaves(SubtreeKey s) const;
    /// Unique neighbour of leaf v inside s.
    Vertex attachment(SubtreeKey s, Vertex v) const;
    /// Induced subgraph on s, relabelled to 0..|s|-1 in increasing id order.
    Graph subgraph(SubtreeKey s) const;
    /// Every connected vertex subset.
    std::vector<SubtreeKey> all_subtrees() const;

private:
    Graph g_;
};

std::vector<Vertex> key_vertices(SubtreeKey s);
std::string key_string(SubtreeKey s);

class PeelingMap {
public:
    /// Built along the elimination order that repeatedly removes the lowest-id leaf.
    explicit PeelingMap(const LabeledTree& t);

    const std::vector<Vertex>& order() const noexcept { return order_; }
    /// nu(s), sorted; s must be a subtree.
    std::vector<Vertex> operator()(SubtreeKey s) const;

private:
    const LabeledTree* tree_;
    std::vector<Vertex> order_;
    mutable std::unordered_map<SubtreeKey, std::vector<Vertex>> memo_;
};

PeelingMap build_peeling(const LabeledTree& t);
/// Checks the peeling definition on every subtree.
bool satisfies_peeling(const LabeledTree& t, const PeelingMap& nu);

/// |N_G(x) \ N^+_Gamma(S - x)| >= c^(|S|-1) |N_G(x)| for each image vertex x.
bool is_c_unique(const Graph& gamma, const Graph& g, const std::vector<Vertex>& image, double c);

struct ConstantSchedule {
    double c = 0, C = 0;
    std::size_t size = 0;
    /// Indexed by subtree size 2..size; entries 0 and 1 unused.
    std::vector<double> K, eps, kappa;
    double L(std::size_t l) const { return K.at(l - 1) / eps.at(l - 1); }
};

ConstantSchedule make_schedule(std::size_t tree_size, double c, double C);

enum class TreeMode { Diagnostic, Strict };

struct TreeConfig {
    double c = 0.5;
    double t = 1;
    double C = 1;
    TreeMode mode = TreeMode::Diagnostic;
    /// Minimum G-degree kept by the pre-peeling; default max(1, ceil(C t)).
    std::optional<std::size_t> degree_floor;
    Seed seed = 0;
    /// Monte-Carlo runs used to estimate p_succ of subtrees with >= 3 vertices.
    std::size_t psucc_samples = 2000;
    /// Cap on the repeat-until-success loop behind "sample rho ~ lambda_R".
    std::size_t max_inner_attempts = 100000;
};

struct TreeDraw {
    std::optional<std::vector<Vertex>> phi;
    std::string reject;
    bool success() const noexcept { return phi.has_value(); }
};

struct ExactTable {
    SubtreeKey key = 0;
    /// Probability of each outcome of a single run of the process.
    std::map<std::vector<Vertex>, double> copies;
    std::map<std::string, double> rejects;
    double p_succ = 0;
    double total() const;
    /// lambda(phi) = copies[phi] / p_succ.
    double lambda(const std::vector<Vertex>& phi) const;
};

/// Degeneracy pre-peeling: drops edges at vertices of degree below floor until none remain.
Graph degeneracy_peel(const Graph& g, std::size_t floor);

class TreeSampler {
public:
    TreeSampler(std::shared_ptr<const Graph> gamma, const Graph& g, LabeledTree tree, TreeConfig cfg);
    TreeSampler(const TreeSampler&) = delete;
    TreeSampler& operator=(const TreeSampler&) = delete;

    const LabeledTree& tree() const noexcept { return tree_; }
    const PeelingMap& peeling() const noexcept { return nu_; }
    const ConstantSchedule& schedule() const noexcept { return schedule_; }
    const Graph& host() const noexcept { return g_; }
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }
    /// Subtrees carrying a sampler, in increasing size.
    const std::vector<SubtreeKey>& chain() const noexcept { return chain_; }

    /// One run of the process for subtree s.
    TreeDraw draw(SubtreeKey s, Rng& rng);
    /// Unnormalised output mass of phi (the success probability of producing it).
    double weight(SubtreeKey s, const std::vector<Vertex>& phi);
    double p_succ(SubtreeKey s) const { return p_.at(s); }
    bool p_exact(SubtreeKey s) const { return exact_.count(s) > 0; }

    /// Exhaustive expansion of the choice tree for every chain subtree. Replaces
    /// the Monte-Carlo p_succ values by exact ones. Throws ResourceError past budget.
    std::map<SubtreeKey, ExactTable> exact_tables(std::uint64_t budget = 50'000'000);

private:
    struct Split {
        Vertex u, w, hu, hw;
        SubtreeKey R, Ru, Rw;
    };
    const Split& split(SubtreeKey s);
    std::vector<Vertex> sample_success(SubtreeKey s, Rng& rng);
    double mass(SubtreeKey ru, const std::vector<Vertex>& rho, Vertex u, Vertex hu);
    bool step_one(SubtreeKey s, const std::vector<Vertex>& rho);
    double edge_accept(Vertex xu, Vertex xw) const;
    std::string check_pair(const std::vector<Vertex>& phi, Vertex xu, Vertex xw) const;
    void validate(SubtreeKey s, const std::vector<Vertex>& phi) const;
    void estimate_p(SubtreeKey s);

    std::shared_ptr<const Graph> gamma_;
    Graph g_;
    LabeledTree tree_;
    TreeConfig cfg_;
    PeelingMap nu_;
    ConstantSchedule schedule_;
    std::vector<std::string> warnings_;
    std::vector<SubtreeKey> chain_;
    std::vector<Vertex> endpoints_;  // each edge twice, for degree-proportional picks
    std::unordered_map<SubtreeKey, Split> splits_;
    std::unordered_map<SubtreeKey, double> p_;
    std::unordered_map<SubtreeKey, char> exact_;

    struct VecHash {
        std::size_t operator()(const std::vector<Vertex>& v) const noexcept;
    };
    std::unordered_map<SubtreeKey, std::unordered_map<std::vector<Vertex>, double, VecHash>> wcache_;
    std::unordered_map<SubtreeKey, std::unordered_map<std::vector<Vertex>, double, VecHash>> mcache_;
};

struct ExtensionReport {
    double K_nominal = 0, eps_nominal = 0, kappa_nominal = 0;
    /// max over the support of lambda_T(phi) deg(phi(h_v)) / lambda_{T-v}(phi - v).
    double K_measured = 0;
    /// Largest eps with Pr[lambda_T(phi') >= eps lambda_{T-v}(phi')] >= 1 - kappa_nominal.
    double eps_measured = 0;
    /// Pr[lambda_T(phi') < eps_nominal lambda_{T-v}(phi')].
    double kappa_measured = 1;
    bool upper_holds = false, lower_holds = false;
    /// lambda_T(phi') <= K_measured lambda_{T-v}(phi') on the support of lambda_{T-v}.
    bool marginal_bound_holds = false;
    bool empty = false;
};

ExtensionReport check_extension(const Graph& g, const LabeledTree& tree, const ExactTable& table_t,
                                const ExactTable& table_minus, Vertex v, double K, double eps, double kappa);

/// {x : pi2(y with xy not in Gamma, y = x included) >= c}.
VertexSet good_set(const Graph& gamma, const std::vector<double>& pi2, double c);
/// {x : pi2(y : |S_y \ N_Gamma(x)| < c |S_y|) < sqrt(gamma)}; S_y needed only on supp(pi2), each of size >= t.
VertexSet good_set_family(const Graph& gamma, const std::vector<double>& pi2, const std::vector<VertexSet>& family,
                          double c, double gamma_param, std::size_t t);

}  // namespace indturan
