#include "indturan/graph.hpp"

#include "indturan/errors.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>

namespace indturan {

// ---------------------------------------------------------------- VertexSet

VertexSet::VertexSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

VertexSet VertexSet::of(std::size_t universe, std::initializer_list<Vertex> members) {
    return from(universe, std::span<const Vertex>(members.begin(), members.size()));
}

VertexSet VertexSet::from(std::size_t universe, std::span<const Vertex> members) {
    VertexSet s(universe);
    for (auto v : members) s.insert(v);
    return s;
}

VertexSet VertexSet::full(std::size_t universe) {
    VertexSet s(universe);
    std::fill(s.words_.begin(), s.words_.end(), ~0ULL);
    if (universe % 64 != 0 && !s.words_.empty()) s.words_.back() = (1ULL << (universe % 64)) - 1;
    return s;
}

std::size_t VertexSet::size() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

bool VertexSet::empty() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

void VertexSet::insert(Vertex v) {
    if (v >= universe_)
        throw InputError("vertex " + std::to_string(v) + " out of range for universe of size " +
                         std::to_string(universe_));
    words_[v >> 6] |= 1ULL << (v & 63);
}

void VertexSet::erase(Vertex v) {
    if (v >= universe_) return;
    words_[v >> 6] &= ~(1ULL << (v & 63));
}

void VertexSet::clear() noexcept { std::fill(words_.begin(), words_.end(), 0); }

void VertexSet::require_same_universe(const VertexSet& other) const {
    if (other.universe_ != universe_)
        throw InputError("vertex sets over different universes (" + std::to_string(universe_) +
                         " vs " + std::to_string(other.universe_) + ")");
}

VertexSet& VertexSet::operator|=(const VertexSet& other) {
    require_same_universe(other);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
}

VertexSet& VertexSet::operator&=(const VertexSet& other) {
    require_same_universe(other);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
    return *this;
}

VertexSet& VertexSet::operator-=(const VertexSet& other) {
    require_same_universe(other);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
    return *this;
}

std::size_t VertexSet::intersection_size(const VertexSet& other) const {
    require_same_universe(other);
    std::size_t c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i)
        c += static_cast<std::size_t>(std::popcount(words_[i] & other.words_[i]));
    return c;
}

bool VertexSet::intersects(const VertexSet& other) const {
    require_same_universe(other);
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & other.words_[i]) return true;
    return false;
}

bool VertexSet::is_subset_of(const VertexSet& other) const {
    require_same_universe(other);
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~other.words_[i]) return false;
    return true;
}

std::vector<Vertex> VertexSet::members() const {
    std::vector<Vertex> out;
    out.reserve(size());
    for_each([&](Vertex v) { out.push_back(v); });
    return out;
}

Vertex VertexSet::nth(std::size_t k) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
        const auto c = static_cast<std::size_t>(std::popcount(words_[w]));
        if (k < c) {
            std::uint64_t bits = words_[w];
            for (std::size_t i = 0; i < k; ++i) bits &= bits - 1;
            return static_cast<Vertex>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
        }
        k -= c;
    }
    throw InputError("VertexSet::nth index out of range");
}

Vertex VertexSet::first() const noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w)
        if (words_[w]) return static_cast<Vertex>(w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w])));
    return static_cast<Vertex>(universe_);
}

// -------------------------------------------------------------------- Graph

Graph::Graph(std::size_t n, std::span<const Edge> edges) {
    rows_.assign(n, VertexSet(n));
    for (const auto& e : edges) {
        if (e.u >= n || e.v >= n)
            throw InputError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                             ") out of range for n=" + std::to_string(n));
        if (e.u == e.v) throw InputError("self-loop at vertex " + std::to_string(e.u));
        if (rows_[e.u].contains(e.v))
            throw InputError("duplicate edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
        rows_[e.u].insert(e.v);
        rows_[e.v].insert(e.u);
    }
    finalize();
}

Graph Graph::from_rows(std::vector<VertexSet> rows) {
    const auto n = rows.size();
    for (std::size_t u = 0; u < n; ++u) {
        if (rows[u].universe() != n) throw InputError("adjacency row has wrong universe");
        if (rows[u].contains(static_cast<Vertex>(u)))
            throw InputError("self-loop at vertex " + std::to_string(u));
    }
    for (std::size_t u = 0; u < n; ++u)
        rows[u].for_each([&](Vertex v) {
            if (!rows[v].contains(static_cast<Vertex>(u))) throw InputError("adjacency is not symmetric");
        });
    Graph g;
    g.rows_ = std::move(rows);
    g.finalize();
    return g;
}

void Graph::finalize() {
    degrees_.resize(rows_.size());
    std::size_t total = 0;
    for (std::size_t v = 0; v < rows_.size(); ++v) {
        degrees_[v] = rows_[v].size();
        total += degrees_[v];
    }
    edge_count_ = total / 2;
}

std::size_t Graph::max_degree() const noexcept {
    return degrees_.empty() ? 0 : *std::max_element(degrees_.begin(), degrees_.end());
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (std::size_t u = 0; u < rows_.size(); ++u)
        rows_[u].for_each([&](Vertex v) {
            if (v > u) out.push_back({static_cast<Vertex>(u), v});
        });
    return out;
}

Graph Graph::restricted_to(const VertexSet& keep) const {
    std::vector<VertexSet> rows(n(), VertexSet(n()));
    keep.for_each([&](Vertex v) { rows[v] = rows_[v] & keep; });
    return from_rows(std::move(rows));
}

Graph Graph::between(const VertexSet& a, const VertexSet& b) const {
    std::vector<VertexSet> rows(n(), VertexSet(n()));
    a.for_each([&](Vertex v) { rows[v] |= rows_[v] & b; });
    b.for_each([&](Vertex v) { rows[v] |= rows_[v] & a; });
    return from_rows(std::move(rows));
}

Graph Graph::complement() const {
    std::vector<VertexSet> rows(n());
    for (std::size_t v = 0; v < n(); ++v) {
        rows[v] = VertexSet::full(n()) - rows_[v];
        rows[v].erase(static_cast<Vertex>(v));
    }
    return from_rows(std::move(rows));
}

Graph compact_induced(const Graph& g, std::span<const Vertex> vertices) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (std::size_t j = i + 1; j < vertices.size(); ++j)
            if (g.adjacent(vertices[i], vertices[j]))
                edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(j)});
    return Graph(vertices.size(), edges);
}

Graph relabel(const Graph& g, std::span<const Vertex> perm) {
    if (perm.size() != g.n()) throw InputError("relabel: permutation size mismatch");
    auto edges = g.edges();
    for (auto& e : edges) e = {perm[e.u], perm[e.v]};
    return Graph(g.n(), edges);
}

Graph edge_union(const Graph& a, const Graph& b) {
    if (a.n() != b.n()) throw InputError("edge_union: vertex count mismatch");
    std::vector<VertexSet> rows(a.n());
    for (Vertex v = 0; v < a.n(); ++v) rows[v] = a.neighbors(v) | b.neighbors(v);
    return Graph::from_rows(std::move(rows));
}

bool is_subgraph_of(const Graph& sub, const Graph& host) {
    if (sub.n() != host.n()) return false;
    for (Vertex v = 0; v < sub.n(); ++v)
        if (!sub.neighbors(v).is_subset_of(host.neighbors(v))) return false;
    return true;
}

bool Embedding::injective() const {
    auto sorted = assignment;
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

VertexSet Embedding::image(std::size_t universe) const { return VertexSet::from(universe, assignment); }

// ------------------------------------------------------------------ kernels

namespace {
void require_universe(const Graph& g, const VertexSet& s, const char* what) {
    if (s.universe() != g.n())
        throw InputError(std::string(what) + ": vertex set universe " + std::to_string(s.universe()) +
                         " does not match graph order " + std::to_string(g.n()));
}
}  // namespace

std::uint64_t pair_count(const Graph& g, const VertexSet& a, const VertexSet& b) {
    require_universe(g, a, "pair_count");
    require_universe(g, b, "pair_count");
    std::uint64_t total = 0;
    a.for_each([&](Vertex v) { total += g.neighbors(v).intersection_size(b); });
    return total;
}

double pair_density(const Graph& g, const VertexSet& a, const VertexSet& b) {
    if (a.empty() || b.empty()) throw InputError("pair_density: empty vertex set");
    return static_cast<double>(pair_count(g, a, b)) /
           (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

VertexSet common_neighborhood(const Graph& g, const VertexSet& s) {
    require_universe(g, s, "common_neighborhood");
    if (s.empty()) throw InputError("common_neighborhood of the empty set is undefined");
    VertexSet out = VertexSet::full(g.n());
    s.for_each([&](Vertex v) { out &= g.neighbors(v); });
    return out;
}

VertexSet union_neighborhood(const Graph& g, const VertexSet& s) {
    require_universe(g, s, "union_neighborhood");
    VertexSet out(g.n());
    s.for_each([&](Vertex v) { out |= g.neighbors(v); });
    return out;
}

bool is_copy_induced_in(const Graph& g, const Graph& gamma, const Graph& pattern, const Embedding& phi) {
    if (g.n() != gamma.n()) throw InputError("is_copy_induced_in: G and Gamma differ in order");
    if (phi.size() != pattern.n()) throw InputError("is_copy_induced_in: embedding is not total");
    for (auto x : phi.assignment)
        if (x >= g.n()) throw InputError("is_copy_induced_in: image vertex out of range");
    if (!phi.injective()) throw InputError("is_copy_induced_in: embedding is not injective");
    for (Vertex i = 0; i < pattern.n(); ++i)
        for (Vertex j = i + 1; j < pattern.n(); ++j) {
            const auto x = phi[i], y = phi[j];
            if (pattern.adjacent(i, j)) {
                if (!g.adjacent(x, y)) return false;
            } else if (gamma.adjacent(x, y)) {
                return false;
            }
        }
    return true;
}

// ------------------------------------------------------------- structure

std::vector<int> two_coloring(const Graph& g) {
    std::vector<int> side(g.n(), -1);
    for (Vertex s = 0; s < g.n(); ++s) {
        if (side[s] != -1) continue;
        side[s] = 0;
        std::queue<Vertex> q;
        q.push(s);
        while (!q.empty()) {
            const auto v = q.front();
            q.pop();
            bool ok = true;
            g.neighbors(v).for_each([&](Vertex w) {
                if (side[w] == -1) {
                    side[w] = 1 - side[v];
                    q.push(w);
                } else if (side[w] == side[v]) {
                    ok = false;
                }
            });
            if (!ok) return {};
        }
    }
    return side;
}

bool is_bipartite(const Graph& g) { return g.n() == 0 || !two_coloring(g).empty(); }

bool is_connected(const Graph& g) {
    if (g.n() == 0) return true;
    VertexSet seen(g.n());
    std::vector<Vertex> stack{0};
    seen.insert(0);
    while (!stack.empty()) {
        const auto v = stack.back();
        stack.pop_back();
        const auto fresh = g.neighbors(v) - seen;
        fresh.for_each([&](Vertex w) { stack.push_back(w); });
        seen |= fresh;
    }
    return seen.size() == g.n();
}

std::size_t girth(const Graph& g) {
    std::size_t best = 0;
    std::vector<int> dist(g.n()), parent(g.n());
    for (Vertex s = 0; s < g.n(); ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[s] = 0;
        parent[s] = -1;
        std::queue<Vertex> q;
        q.push(s);
        while (!q.empty()) {
            const auto v = q.front();
            q.pop();
            g.neighbors(v).for_each([&](Vertex w) {
                if (dist[w] == -1) {
                    dist[w] = dist[v] + 1;
                    parent[w] = static_cast<int>(v);
                    q.push(w);
                } else if (static_cast<int>(w) != parent[v]) {
                    const auto len = static_cast<std::size_t>(dist[v] + dist[w] + 1);
                    if (best == 0 || len < best) best = len;
                }
            });
        }
    }
    return best;
}

// --------------------------------------------------------------------- I/O

Graph read_edge_list(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    auto fail = [&](const std::string& msg) -> InputError {
        return InputError("edge list line " + std::to_string(lineno) + ": " + msg);
    };

    long long n = -1, m = -1;
    while (std::getline(in, line)) {
        ++lineno;
        const auto pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos || line[pos] == '#') continue;
        std::istringstream ss(line);
        if (!(ss >> n >> m) || n < 0 || m < 0) throw fail("expected header \"n m\"");
        std::string extra;
        if (ss >> extra) throw fail("trailing tokens after header");
        break;
    }
    if (n < 0) throw InputError("edge list: missing header");

    const auto nn = static_cast<std::size_t>(n);
    std::vector<VertexSet> rows(nn, VertexSet(nn));
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    while (static_cast<long long>(edges.size()) < m) {
        if (!std::getline(in, line)) {
            ++lineno;
            throw fail("expected " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
        }
        ++lineno;
        const auto pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos) continue;
        std::istringstream ss(line);
        long long u = -1, v = -1;
        if (!(ss >> u >> v)) throw fail("expected \"u v\"");
        std::string extra;
        if (ss >> extra) throw fail("trailing tokens after edge");
        if (u < 0 || v < 0 || u >= n || v >= n) throw fail("vertex id out of range");
        if (u == v) throw fail("self-loop at vertex " + std::to_string(u));
        const auto a = static_cast<Vertex>(std::min(u, v)), b = static_cast<Vertex>(std::max(u, v));
        if (rows[a].contains(b)) throw fail("duplicate edge " + std::to_string(a) + " " + std::to_string(b));
        rows[a].insert(b);
        rows[b].insert(a);
        edges.push_back({a, b});
    }
    while (std::getline(in, line)) {
        ++lineno;
        const auto pos = line.find_first_not_of(" \t\r");
        if (pos != std::string::npos && line[pos] != '#') throw fail("more edges than declared in header");
    }
    return Graph::from_rows(std::move(rows));
}

Graph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open graph file " + path);
    return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g, const std::string& comment) {
    if (!comment.empty()) out << "# " << comment << '\n';
    out << g.n() << ' ' << g.edge_count() << '\n';
    for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

void write_edge_list_file(const std::string& path, const Graph& g, const std::string& comment) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write graph file " + path);
    write_edge_list(out, g, comment);
}

}  // namespace indturan
