#include "indturan/lower_bounds.hpp"

#include "indturan/errors.hpp"
#include "indturan/generators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>

namespace indturan {

std::string to_string(Guarantee g) {
    switch (g) {
        case Guarantee::None: return "none";
        case Guarantee::InducedFree: return "induced-free";
        case Guarantee::Unverified: return "unverified";
    }
    return "?";
}

ConstructionResult build_random_quotient_subgraph(const Graph& gamma, const CliqueCover& cover, const Graph& F,
                                                  Seed seed, std::optional<KsrTarget> target) {
    const std::size_t k = cover.size();
    if (F.n() != k)
        throw InputError("auxiliary graph has " + std::to_string(F.n()) + " vertices but the cover has " +
                         std::to_string(k) + " parts");
    if (!is_bipartite(F)) throw InputError("auxiliary graph must be bipartite");
    const std::size_t n = gamma.n();
    std::vector<std::int64_t> part_of(n, -1);
    VertexSet covered(n);
    for (std::size_t i = 0; i < k; ++i) {
        const auto& part = cover.parts[i];
        if (part.universe() != n) throw InputError("cover part has the wrong universe");
        if (covered.intersects(part)) throw InputError("cover parts overlap");
        if (!is_clique(gamma, part)) throw InputError("cover part is not a clique");
        part.for_each([&](Vertex v) { part_of[v] = static_cast<std::int64_t>(i); });
        covered |= part;
    }

    ConstructionResult res;
    res.cover_size = k;
    res.auxiliary = F;
    res.bijection_seed = seed;
    res.bijection.resize(k);
    std::iota(res.bijection.begin(), res.bijection.end(), Vertex{0});
    Rng rng(seed);
    rng.shuffle(std::span<Vertex>(res.bijection));

    std::vector<Edge> kept;
    std::size_t gamma_edges = 0;
    for (const auto& e : gamma.edges()) {
        const auto pu = part_of[e.u], pv = part_of[e.v];
        if (pu < 0 || pv < 0) continue;
        ++gamma_edges;
        if (pu == pv || F.adjacent(res.bijection[static_cast<std::size_t>(pu)], res.bijection[static_cast<std::size_t>(pv)]))
            kept.push_back(e);
    }
    res.subgraph = Graph(n, kept);
    res.guaranteed_bound = k <= 1 ? static_cast<double>(gamma_edges)
                                  : static_cast<double>(gamma_edges) * static_cast<double>(F.edge_count()) /
                                        (static_cast<double>(k) * static_cast<double>(k - 1) / 2.0);
    if (target) {
        if (target->s < 2 || target->s > target->r) throw InputError("target needs 2 <= s <= r");
        if (target->r == 2)
            res.guarantee = Guarantee::Unverified;
        else if (!contains_ksr(F, target->s, target->r))
            res.guarantee = Guarantee::InducedFree;
    }
    return res;
}

PartialCover vt_partial_cover(const Graph& gamma, const CliqueSampler& sampler, Seed seed, std::size_t max_attempts) {
    const std::size_t n = gamma.n();
    if (n == 0) throw InputError("vt_partial_cover: empty graph");
    PartialCover out;
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        const Seed s = derive_seed(seed, {attempt});
        if (out.omega == 0) {
            const auto probe = sampler(1, s);
            if (probe.empty() || probe[0].empty()) throw InputError("clique sampler returned nothing");
            out.omega = probe[0].size();
            out.k = static_cast<std::size_t>(std::ceil(std::log(4.0) * static_cast<double>(n) / static_cast<double>(out.omega)));
        }
        const auto cliques = sampler(out.k, s);
        if (cliques.size() != out.k) throw InputError("clique sampler returned the wrong count");
        VertexSet covered(n);
        for (const auto& c : cliques) {
            if (c.universe() != n || !is_clique(gamma, c)) throw InputError("clique sampler returned a non-clique");
            covered |= c;
        }
        out.attempts = attempt + 1;
        if (4 * covered.size() < 3 * n) continue;
        VertexSet seen(n);
        for (const auto& c : cliques) {
            VertexSet part = c - seen;
            seen |= part;
            if (!part.empty()) out.cover.parts.push_back(std::move(part));
        }
        out.covered = covered;
        return out;
    }
    throw ResourceError("vt_partial_cover: no sample covered 3n/4 vertices within " + std::to_string(max_attempts) +
                        " attempts");
}

// ------------------------------------------------------- canonical forms

namespace {

class Canonizer {
public:
    explicit Canonizer(const Graph& g) : g_(g), n_(g.n()) {
        order_.resize(n_);
        std::iota(order_.begin(), order_.end(), Vertex{0});
        std::stable_sort(order_.begin(), order_.end(),
                         [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
        slot_degree_.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) slot_degree_[i] = g.degree(order_[i]);
        used_.assign(n_, 0);
    }

    std::string run() {
        if (n_ == 0) return "0:";
        place(0);
        return std::to_string(n_) + ":" + best_;
    }

private:
    bool twins(Vertex a, Vertex b) const {
        VertexSet na = g_.neighbors(a), nb = g_.neighbors(b);
        na.erase(b);
        nb.erase(a);
        return na == nb;
    }

    // Prefixes are compared against the best complete string found so far.
    void place(std::size_t j) {
        if (j == n_) {
            if (current_ > best_) best_ = current_;
            return;
        }
        std::vector<Vertex> tried;
        for (Vertex v = 0; v < n_; ++v) {
            if (used_[v] || g_.degree(v) != slot_degree_[j]) continue;
            if (std::any_of(tried.begin(), tried.end(), [&](Vertex u) { return twins(u, v); })) continue;
            tried.push_back(v);
            const auto mark = current_.size();
            for (std::size_t i = 0; i < j; ++i) current_.push_back(g_.adjacent(labelled_[i], v) ? '1' : '0');
            const bool prune = !best_.empty() && current_.compare(0, current_.size(), best_, 0, current_.size()) < 0;
            if (!prune) {
                used_[v] = 1;
                labelled_.push_back(v);
                place(j + 1);
                labelled_.pop_back();
                used_[v] = 0;
            }
            current_.resize(mark);
        }
    }

    const Graph& g_;
    std::size_t n_;
    std::vector<Vertex> order_;
    std::vector<std::size_t> slot_degree_;
    std::vector<char> used_;
    std::vector<Vertex> labelled_;
    std::string current_, best_;
};

}  // namespace

std::string canonical_form(const Graph& g) {
    if (g.n() > 16) throw ResourceError("canonical_form: at most 16 vertices supported");
    return Canonizer(g).run();
}

bool isomorphic(const Graph& a, const Graph& b) {
    if (a.n() != b.n() || a.edge_count() != b.edge_count()) return false;
    return canonical_form(a) == canonical_form(b);
}

QuotientFamily clique_quotients(const Graph& h) {
    const std::size_t n = h.n();
    if (n > 12) throw ResourceError("clique_quotients: at most 12 vertices supported");
    QuotientFamily fam;
    fam.source = h;
    std::map<std::string, Graph> seen;
    std::vector<int> block(n, -1);
    int blocks = 0;

    auto emit = [&] {
        std::vector<Edge> edges;
        std::vector<std::vector<char>> adj(static_cast<std::size_t>(blocks), std::vector<char>(static_cast<std::size_t>(blocks), 0));
        for (const auto& e : h.edges()) {
            const auto a = static_cast<std::size_t>(block[e.u]), b = static_cast<std::size_t>(block[e.v]);
            if (a == b || adj[a][b]) continue;
            adj[a][b] = adj[b][a] = 1;
            edges.push_back({static_cast<Vertex>(std::min(a, b)), static_cast<Vertex>(std::max(a, b))});
        }
        Graph q(static_cast<std::size_t>(blocks), edges);
        if (!is_bipartite(q)) return;
        auto key = canonical_form(q);
        seen.emplace(std::move(key), std::move(q));
    };

    // Pick the lowest unassigned vertex v and every clique through v among
    // the unassigned vertices as its block.
    auto assign = [&](auto&& self) -> void {
        Vertex v = 0;
        while (v < n && block[v] >= 0) ++v;
        if (v == n) {
            emit();
            return;
        }
        const int id = blocks++;
        block[v] = id;
        std::vector<Vertex> cand;
        h.neighbors(v).for_each([&](Vertex u) {
            if (block[u] < 0) cand.push_back(u);
        });
        std::vector<Vertex> members{v};
        auto extend = [&](auto&& ext, std::size_t from) -> void {
            self(self);
            for (std::size_t i = from; i < cand.size(); ++i) {
                const Vertex u = cand[i];
                if (!std::all_of(members.begin(), members.end(), [&](Vertex m) { return h.adjacent(m, u); })) continue;
                members.push_back(u);
                block[u] = id;
                ext(ext, i + 1);
                block[u] = -1;
                members.pop_back();
            }
        };
        extend(extend, 0);
        block[v] = -1;
        --blocks;
    };
    assign(assign);

    for (auto& [key, g] : seen) fam.members.push_back(std::move(g));
    std::stable_sort(fam.members.begin(), fam.members.end(), [](const Graph& a, const Graph& b) {
        if (a.n() != b.n()) return a.n() > b.n();
        return a.edge_count() > b.edge_count();
    });
    return fam;
}

std::optional<std::vector<Vertex>> find_subgraph(const Graph& host, const Graph& pattern) {
    const std::size_t k = pattern.n();
    if (k == 0) return std::vector<Vertex>{};
    if (k > host.n() || pattern.edge_count() > host.edge_count()) return std::nullopt;

    // Order pattern vertices so each one after the first of its component has
    // an earlier neighbour.
    std::vector<Vertex> order;
    std::vector<char> placed(k, 0);
    while (order.size() < k) {
        Vertex root = 0;
        std::size_t bd = 0;
        bool any = false;
        for (Vertex v = 0; v < k; ++v)
            if (!placed[v] && (!any || pattern.degree(v) > bd)) root = v, bd = pattern.degree(v), any = true;
        std::queue<Vertex> q;
        q.push(root);
        placed[root] = 1;
        while (!q.empty()) {
            const Vertex v = q.front();
            q.pop();
            order.push_back(v);
            pattern.neighbors(v).for_each([&](Vertex u) {
                if (!placed[u]) placed[u] = 1, q.push(u);
            });
        }
    }

    std::vector<Vertex> image(k, 0);
    std::vector<char> mapped(k, 0);
    VertexSet used(host.n());
    auto rec = [&](auto&& self, std::size_t i) -> bool {
        if (i == k) return true;
        const Vertex v = order[i];
        VertexSet cand = VertexSet::full(host.n()) - used;
        pattern.neighbors(v).for_each([&](Vertex u) {
            if (mapped[u]) cand &= host.neighbors(image[u]);
        });
        bool ok = false;
        cand.for_each([&](Vertex x) {
            if (ok || host.degree(x) < pattern.degree(v)) return;
            image[v] = x;
            mapped[v] = 1;
            used.insert(x);
            if (self(self, i + 1)) ok = true;
            used.erase(x);
            mapped[v] = 0;
        });
        return ok;
    };
    if (rec(rec, 0)) return image;
    return std::nullopt;
}

bool family_subgraph_free(const Graph& F, const QuotientFamily& family) {
    return std::none_of(family.members.begin(), family.members.end(),
                        [&](const Graph& m) { return find_subgraph(F, m).has_value(); });
}

Graph incidence_auxiliary(std::size_t k) {
    if (k == 0) return empty_graph(0);
    std::uint32_t p = 2;
    while (2 * (static_cast<std::size_t>(p) * p + p + 1) < k) {
        ++p;
        while (!is_prime(p)) ++p;
    }
    const Graph inc = projective_incidence(p);
    const std::size_t half = inc.n() / 2;
    std::vector<Vertex> chosen;
    std::vector<std::uint32_t> gain(inc.n(), 0);
    std::vector<char> taken(inc.n(), 0);
    std::size_t left[2] = {half, half};
    for (std::size_t i = 0; i < k; ++i) {
        int side = static_cast<int>(i % 2);
        if (left[side] == 0) side = 1 - side;
        const Vertex lo = side == 0 ? 0 : static_cast<Vertex>(half);
        Vertex pick = lo;
        bool any = false;
        for (Vertex v = lo; v < lo + half; ++v)
            if (!taken[v] && (!any || gain[v] > gain[pick])) pick = v, any = true;
        taken[pick] = 1;
        --left[side];
        chosen.push_back(pick);
        inc.neighbors(pick).for_each([&](Vertex u) { ++gain[u]; });
    }
    return compact_induced(inc, chosen);
}

Graph random_high_girth_bipartite(std::size_t k, std::size_t min_girth, Seed seed) {
    const std::size_t L = k / 2;
    std::vector<Edge> pairs;
    for (Vertex a = 0; a < L; ++a)
        for (Vertex b = static_cast<Vertex>(L); b < k; ++b) pairs.push_back({a, b});
    Rng rng(seed);
    rng.shuffle(std::span<Edge>(pairs));
    std::vector<std::vector<Vertex>> adj(k);
    std::vector<Edge> edges;
    std::vector<int> dist(k);
    for (const auto& e : pairs) {
        // Shortest existing path from e.u to e.v, stopping once it is long enough.
        std::fill(dist.begin(), dist.end(), -1);
        dist[e.u] = 0;
        std::queue<Vertex> q;
        q.push(e.u);
        bool close = false;
        while (!q.empty() && !close) {
            const Vertex x = q.front();
            q.pop();
            if (static_cast<std::size_t>(dist[x]) + 2 > min_girth) break;
            for (auto y : adj[x]) {
                if (dist[y] >= 0) continue;
                dist[y] = dist[x] + 1;
                if (y == e.v && static_cast<std::size_t>(dist[y]) + 1 < min_girth) close = true;
                q.push(y);
            }
        }
        if (close) continue;
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
        edges.push_back(e);
    }
    std::sort(edges.begin(), edges.end());
    return Graph(k, edges);
}

}  // namespace indturan
