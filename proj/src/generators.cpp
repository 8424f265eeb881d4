// Generator algorithm: SplitMix64 counter stream (see rng.hpp). gnp walks the
// pairs u < v in lexicographic order and keeps a pair when the next uniform
// real is below p, so a (n, p, seed) triple fixes the graph on any platform.

#include "indturan/generators.hpp"

#include "indturan/errors.hpp"

#include <array>
#include <cmath>
#include <functional>

namespace indturan {

bool is_prime(std::uint64_t x) {
    if (x < 2) return false;
    for (std::uint64_t f = 2; f * f <= x; ++f)
        if (x % f == 0) return false;
    return true;
}

namespace {

std::uint32_t mod_pow(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = r * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

double binom(std::size_t n, std::size_t k) {
    if (k > n) return 0.0;
    double r = 1.0;
    for (std::size_t i = 0; i < k; ++i) r = r * static_cast<double>(n - i) / static_cast<double>(i + 1);
    return r;
}

}  // namespace

FiniteField::FiniteField(std::uint32_t q) : q_(q) {
    if (is_prime(q)) {
        p_ = q;
        degree_ = 1;
    } else {
        const auto root = static_cast<std::uint32_t>(std::llround(std::sqrt(static_cast<double>(q))));
        if (static_cast<std::uint64_t>(root) * root != q || !is_prime(root) || root == 2)
            throw InputError("unsupported field order " + std::to_string(q) +
                             " (need a prime or the square of an odd prime)");
        p_ = root;
        degree_ = 2;
        for (std::uint32_t d = 2; d < p_; ++d)
            if (mod_pow(d, (p_ - 1) / 2, p_) == p_ - 1) {
                d_ = d;
                break;
            }
    }
    squares_.assign(q_, false);
    for (std::uint32_t i = 1; i < q_; ++i) {
        const auto x = element(i);
        squares_[index(mul(x, x))] = true;
    }
}

FieldElement FiniteField::element(std::uint32_t index) const {
    if (index >= q_) throw InputError("field element index out of range");
    return {index % p_, index / p_};
}

FieldElement FiniteField::add(FieldElement x, FieldElement y) const noexcept {
    return {(x.c0 + y.c0) % p_, (x.c1 + y.c1) % p_};
}

FieldElement FiniteField::neg(FieldElement x) const noexcept { return {(p_ - x.c0) % p_, (p_ - x.c1) % p_}; }

FieldElement FiniteField::sub(FieldElement x, FieldElement y) const noexcept { return add(x, neg(y)); }

FieldElement FiniteField::mul(FieldElement x, FieldElement y) const noexcept {
    const std::uint64_t p = p_;
    const std::uint64_t c0 = (static_cast<std::uint64_t>(x.c0) * y.c0 +
                              static_cast<std::uint64_t>(d_) * (static_cast<std::uint64_t>(x.c1) * y.c1 % p)) %
                             p;
    const std::uint64_t c1 = (static_cast<std::uint64_t>(x.c0) * y.c1 + static_cast<std::uint64_t>(x.c1) * y.c0) % p;
    return {static_cast<std::uint32_t>(c0), static_cast<std::uint32_t>(c1)};
}

std::string FiniteField::describe() const {
    if (degree_ == 1) return "GF(" + std::to_string(p_) + ")";
    return "GF(" + std::to_string(p_) + "^2)=GF(" + std::to_string(p_) + ")[x]/(x^2-" + std::to_string(d_) + ")";
}

Graph gnp(std::size_t n, double p, Seed seed) {
    if (!(p >= 0.0 && p <= 1.0)) throw InputError("gnp: p must lie in [0,1]");
    Rng rng(seed);
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (rng.uniform01() < p) edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
    return Graph(n, edges);
}

Graph paley(std::uint32_t q) {
    if (q % 4 != 1) throw InputError("paley: q must be 1 mod 4");
    const FiniteField f(q);
    const auto& sq = f.square_table();
    std::vector<Edge> edges;
    for (std::uint32_t i = 0; i < q; ++i)
        for (std::uint32_t j = i + 1; j < q; ++j)
            if (sq[f.index(f.sub(f.element(i), f.element(j)))]) edges.push_back({i, j});
    return Graph(q, edges);
}

Graph clique_union(std::size_t k, std::size_t s) {
    if (k < 1 || s < 1) throw InputError("clique_union: k and s must be positive");
    std::vector<Edge> edges;
    for (std::size_t c = 0; c < k; ++c)
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t j = i + 1; j < s; ++j)
                edges.push_back({static_cast<Vertex>(c * s + i), static_cast<Vertex>(c * s + j)});
    return Graph(k * s, edges);
}

Graph projective_incidence(std::uint32_t p) {
    if (!is_prime(p)) throw InputError("projective_incidence: p must be prime");
    if (p > 101) throw InputError("projective_incidence: p must be at most 101");
    std::vector<std::array<std::uint32_t, 3>> pts;
    for (std::uint32_t y = 0; y < p; ++y)
        for (std::uint32_t z = 0; z < p; ++z) pts.push_back({1, y, z});
    for (std::uint32_t z = 0; z < p; ++z) pts.push_back({0, 1, z});
    pts.push_back({0, 0, 1});
    const auto N = static_cast<Vertex>(pts.size());
    std::vector<Edge> edges;
    for (Vertex i = 0; i < N; ++i)
        for (Vertex j = 0; j < N; ++j) {
            const std::uint64_t dot = static_cast<std::uint64_t>(pts[i][0]) * pts[j][0] +
                                      static_cast<std::uint64_t>(pts[i][1]) * pts[j][1] +
                                      static_cast<std::uint64_t>(pts[i][2]) * pts[j][2];
            if (dot % p == 0) edges.push_back({i, N + j});
        }
    return Graph(2 * static_cast<std::size_t>(N), edges);
}

std::optional<std::vector<Vertex>> find_ksr(const Graph& g, std::size_t s, std::size_t r) {
    if (s == 0 || r == 0) throw InputError("find_ksr: part sizes must be positive");
    std::vector<Vertex> chosen;
    std::optional<std::vector<Vertex>> found;
    // Grow S in increasing id order; common neighbourhood shrinks monotonically.
    std::function<void(Vertex, const VertexSet&)> grow = [&](Vertex from, const VertexSet& common) {
        if (found) return;
        if (chosen.size() == s) {
            auto out = chosen;
            auto rest = common.members();
            out.insert(out.end(), rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(r));
            found = std::move(out);
            return;
        }
        for (Vertex v = from; v < g.n() && !found; ++v) {
            if (g.degree(v) < r) continue;
            VertexSet next = chosen.empty() ? g.neighbors(v) : (common & g.neighbors(v));
            if (next.size() < r) continue;
            chosen.push_back(v);
            grow(v + 1, next);
            chosen.pop_back();
        }
    };
    grow(0, VertexSet(g.n()));
    return found;
}

Graph random_ksr_free(std::size_t k, std::size_t s, std::size_t r, Seed seed) {
    if (s < 2 || s > r) throw InputError("random_ksr_free: need 2 <= s <= r");
    if (k > 64) throw ResourceError("random_ksr_free: exhaustive verification is capped at k <= 64");
    const std::size_t L = k / 2, R = k - L;
    if (k < s + r) return complete_bipartite(L, R);

    double copies = binom(L, s) * binom(R, r);
    if (s != r) copies += binom(L, r) * binom(R, s);
    double p = 1.0;
    if (copies > 0) {
        p = std::pow(static_cast<double>(L * R) / (2.0 * copies), 1.0 / static_cast<double>(s * r - 1));
        p = std::min(1.0, p);
    }

    Rng rng(seed);
    std::vector<VertexSet> rows(k, VertexSet(k));
    for (Vertex a = 0; a < L; ++a)
        for (Vertex b = static_cast<Vertex>(L); b < k; ++b)
            if (rng.uniform01() < p) {
                rows[a].insert(b);
                rows[b].insert(a);
            }
    for (;;) {
        const Graph g = Graph::from_rows(rows);
        const auto copy = find_ksr(g, s, r);
        if (!copy) return g;
        const auto pick = rng.below(s * r);
        const Vertex x = (*copy)[pick / r], y = (*copy)[s + pick % r];
        rows[x].erase(y);
        rows[y].erase(x);
    }
}

Graph complete_graph(std::size_t n) {
    std::vector<VertexSet> rows(n);
    for (std::size_t v = 0; v < n; ++v) {
        rows[v] = VertexSet::full(n);
        rows[v].erase(static_cast<Vertex>(v));
    }
    return Graph::from_rows(std::move(rows));
}

Graph empty_graph(std::size_t n) { return Graph(n, std::span<const Edge>{}); }

Graph cycle_graph(std::size_t n) {
    if (n < 3) throw InputError("cycle_graph: need n >= 3");
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i) {
        const auto j = (i + 1) % n;
        edges.push_back({static_cast<Vertex>(std::min(i, j)), static_cast<Vertex>(std::max(i, j))});
    }
    return Graph(n, edges);
}

Graph path_graph(std::size_t n) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(i + 1)});
    return Graph(n, edges);
}

Graph star_graph(std::size_t leaves) {
    std::vector<Edge> edges;
    for (std::size_t i = 1; i <= leaves; ++i) edges.push_back({0, static_cast<Vertex>(i)});
    return Graph(leaves + 1, edges);
}

Graph complete_bipartite(std::size_t a, std::size_t b) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = 0; j < b; ++j) edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(a + j)});
    return Graph(a + b, edges);
}

Graph petersen_graph() {
    std::vector<Edge> edges;
    for (Vertex i = 0; i < 5; ++i) {
        edges.push_back({i, static_cast<Vertex>(i + 5)});
        edges.push_back({std::min(i, (i + 1) % 5), std::max(i, (i + 1) % 5)});
        const Vertex a = 5 + i, b = 5 + (i + 2) % 5;
        edges.push_back({std::min(a, b), std::max(a, b)});
    }
    return Graph(10, edges);
}

}  // namespace indturan
