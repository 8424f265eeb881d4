#include "indturan/oracle.hpp"

#include "indturan/errors.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <limits>
#include <optional>

namespace indturan::oracle {

namespace {

struct Matrix {
    std::size_t n = 0;
    std::vector<std::uint8_t> a;

    explicit Matrix(std::size_t n_ = 0) : n(n_), a(n_ * n_, 0) {}
    static Matrix of(const Graph& g) {
        Matrix m(g.n());
        for (const auto& e : g.edges()) m.set(e.u, e.v, 1);
        return m;
    }
    std::uint8_t at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
    void set(std::size_t i, std::size_t j, std::uint8_t v) { a[i * n + j] = a[j * n + i] = v; }
    std::size_t degree(std::size_t i) const {
        std::size_t d = 0;
        for (std::size_t j = 0; j < n; ++j) d += a[i * n + j];
        return d;
    }
    std::size_t edges() const {
        std::size_t e = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) e += at(i, j);
        return e;
    }
};

class Meter {
public:
    explicit Meter(const Budget& b) : b_(b), start_(std::chrono::steady_clock::now()) {}
    void tick(const char* what, std::optional<std::int64_t> best = std::nullopt) {
        if (++nodes_ > b_.max_nodes) throw ResourceError(std::string(what) + ": node budget exhausted", best);
        if (b_.max_seconds > 0 && (nodes_ & 4095) == 0) {
            const std::chrono::duration<double> el = std::chrono::steady_clock::now() - start_;
            if (el.count() > b_.max_seconds) throw ResourceError(std::string(what) + ": time budget exhausted", best);
        }
    }

private:
    Budget b_;
    std::chrono::steady_clock::time_point start_;
    std::uint64_t nodes_ = 0;
};

// Pattern vertex order: each vertex after the first of its component has an
// already-placed neighbour, which makes adjacency tests bite early.
std::vector<std::size_t> pattern_order(const Matrix& h) {
    std::vector<std::size_t> order;
    std::vector<char> in(h.n, 0);
    while (order.size() < h.n) {
        std::size_t best = h.n;
        std::size_t best_links = 0;
        for (std::size_t v = 0; v < h.n; ++v) {
            if (in[v]) continue;
            std::size_t links = 0;
            for (auto u : order) links += h.at(u, v);
            if (best == h.n || links > best_links || (links == best_links && h.degree(v) > h.degree(best)))
                best = v, best_links = links;
        }
        in[best] = 1;
        order.push_back(best);
    }
    return order;
}

// Enumerates injective maps of h into a host. `edge_ok(x, y)` is tested for
// pattern edges and `nonedge_ok(x, y)` for pattern non-edges; visit returns
// true to stop the enumeration.
template <class EdgeOk, class NonEdgeOk, class Visit>
void enumerate_maps(const Matrix& h, std::size_t host_n, const std::vector<std::size_t>& host_deg, EdgeOk edge_ok,
                    NonEdgeOk nonedge_ok, Visit visit, Meter& meter, const char* what) {
    const auto order = pattern_order(h);
    std::vector<std::size_t> hdeg(h.n);
    for (std::size_t v = 0; v < h.n; ++v) hdeg[v] = h.degree(v);
    std::vector<std::size_t> img(h.n, 0);
    std::vector<char> used(host_n, 0);
    bool stop = false;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (stop) return;
        meter.tick(what);
        if (i == h.n) {
            stop = visit(img);
            return;
        }
        const std::size_t v = order[i];
        for (std::size_t x = 0; x < host_n && !stop; ++x) {
            if (used[x] || host_deg[x] < hdeg[v]) continue;
            bool ok = true;
            for (std::size_t j = 0; j < i && ok; ++j) {
                const std::size_t w = order[j];
                ok = h.at(v, w) ? edge_ok(x, img[w]) : nonedge_ok(x, img[w]);
            }
            if (!ok) continue;
            img[v] = x;
            used[x] = 1;
            rec(i + 1);
            used[x] = 0;
        }
    };
    rec(0);
}

}  // namespace

std::uint64_t count_induced_in(const Graph& gamma, const Graph& g, const Graph& h, const Budget& budget) {
    if (gamma.n() != g.n()) throw InputError("count_induced_in: Gamma and G differ in order");
    const Matrix G = Matrix::of(g), Gm = Matrix::of(gamma), H = Matrix::of(h);
    std::vector<std::size_t> deg(G.n);
    for (std::size_t x = 0; x < G.n; ++x) deg[x] = G.degree(x);
    Meter meter(budget);
    std::uint64_t count = 0;
    enumerate_maps(
        H, G.n, deg, [&](std::size_t x, std::size_t y) { return G.at(x, y) == 1; },
        [&](std::size_t x, std::size_t y) { return Gm.at(x, y) == 0; },
        [&](const std::vector<std::size_t>&) {
            ++count;
            return false;
        },
        meter, "count_induced_in");
    return count;
}

namespace {

// Edge-deletion branch and bound shared by the two extremal oracles. A "copy"
// is found by `find(cur, blocked)`, which returns the host pairs carrying the
// pattern's edges, skipping copies that use a deletable pair in `blocked`.
class DeletionSearch {
public:
    using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;
    using Finder = std::function<std::optional<Pairs>(const Matrix& cur, const Matrix& blocked)>;

    DeletionSearch(Matrix start, Finder find, const Budget& budget, const char* what)
        : cur_(std::move(start)), forced_(cur_.n), find_(std::move(find)), meter_(budget), what_(what) {
        edges_ = cur_.edges();
    }

    std::optional<Matrix> run() {
        rec();
        return best_;
    }
    long long best_edges() const { return best_edges_; }

private:
    // Lower bound on deletions still needed: copies packed on disjoint sets of deletable pairs.
    std::optional<std::size_t> packing() {
        Matrix blocked(cur_.n);
        std::size_t packed = 0;
        for (;;) {
            auto copy = find_(cur_, blocked);
            if (!copy) return packed;
            bool deletable = false;
            for (auto [x, y] : *copy)
                if (!forced_.at(x, y)) {
                    blocked.set(x, y, 1);
                    deletable = true;
                }
            if (!deletable) return std::nullopt;
            ++packed;
        }
    }

    void rec() {
        meter_.tick(what_, best_edges_ >= 0 ? std::optional<std::int64_t>(best_edges_) : std::nullopt);
        if (static_cast<long long>(edges_) <= best_edges_) return;
        const auto pack = packing();
        if (!pack) return;
        if (static_cast<long long>(edges_ - *pack) <= best_edges_) return;
        const auto copy = find_(cur_, Matrix(cur_.n));
        if (!copy) {
            best_edges_ = static_cast<long long>(edges_);
            best_ = cur_;
            return;
        }
        // Delete the i-th deletable pair while keeping the earlier ones.
        Pairs choices;
        for (auto pr : *copy)
            if (!forced_.at(pr.first, pr.second)) choices.push_back(pr);
        std::vector<std::pair<std::size_t, std::size_t>> pinned;
        for (auto [x, y] : choices) {
            cur_.set(x, y, 0);
            --edges_;
            rec();
            cur_.set(x, y, 1);
            ++edges_;
            forced_.set(x, y, 1);
            pinned.emplace_back(x, y);
        }
        for (auto [x, y] : pinned) forced_.set(x, y, 0);
    }

    Matrix cur_, forced_;
    Finder find_;
    Meter meter_;
    const char* what_;
    std::size_t edges_ = 0;
    long long best_edges_ = -1;
    std::optional<Matrix> best_;
};

Graph to_graph(const Matrix& m) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < m.n; ++i)
        for (std::size_t j = i + 1; j < m.n; ++j)
            if (m.at(i, j)) edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(j)});
    return Graph(m.n, edges);
}

}  // namespace

AvoidResult max_subgraph_avoiding(const Graph& gamma, const Graph& h, const Budget& budget) {
    const Matrix H = Matrix::of(h);
    std::vector<std::pair<std::size_t, std::size_t>> hedges;
    for (std::size_t i = 0; i < H.n; ++i)
        for (std::size_t j = i + 1; j < H.n; ++j)
            if (H.at(i, j)) hedges.emplace_back(i, j);
    Meter inner(Budget{std::numeric_limits<std::uint64_t>::max(), 0});

    auto find = [&](const Matrix& cur, const Matrix& blocked) -> std::optional<DeletionSearch::Pairs> {
        std::vector<std::size_t> deg(cur.n);
        for (std::size_t x = 0; x < cur.n; ++x) deg[x] = cur.degree(x);
        std::optional<DeletionSearch::Pairs> out;
        enumerate_maps(
            H, cur.n, deg, [&](std::size_t x, std::size_t y) { return cur.at(x, y) == 1 && !blocked.at(x, y); },
            [&](std::size_t x, std::size_t y) { return cur.at(x, y) == 0; },
            [&](const std::vector<std::size_t>& img) {
                DeletionSearch::Pairs p;
                for (auto [i, j] : hedges) p.emplace_back(img[i], img[j]);
                out = std::move(p);
                return true;
            },
            inner, "max_subgraph_avoiding");
        return out;
    };
    DeletionSearch search(Matrix::of(gamma), find, budget, "max_subgraph_avoiding");
    const auto best = search.run();
    if (!best) throw InputError("max_subgraph_avoiding: every subgraph of Gamma contains an induced copy of H");
    return {best->edges(), to_graph(*best)};
}

std::size_t turan_number(std::size_t n, const Graph& h, const Budget& budget) {
    const Matrix H = Matrix::of(h);
    if (H.edges() == 0) {
        if (H.n <= n) throw InputError("turan_number: an edgeless pattern is contained in every large enough graph");
        return n * (n - 1) / 2;
    }
    std::vector<std::pair<std::size_t, std::size_t>> hedges;
    for (std::size_t i = 0; i < H.n; ++i)
        for (std::size_t j = i + 1; j < H.n; ++j)
            if (H.at(i, j)) hedges.emplace_back(i, j);
    Meter inner(Budget{std::numeric_limits<std::uint64_t>::max(), 0});
    auto find = [&](const Matrix& cur, const Matrix& blocked) -> std::optional<DeletionSearch::Pairs> {
        std::vector<std::size_t> deg(cur.n);
        for (std::size_t x = 0; x < cur.n; ++x) deg[x] = cur.degree(x);
        std::optional<DeletionSearch::Pairs> out;
        enumerate_maps(
            H, cur.n, deg, [&](std::size_t x, std::size_t y) { return cur.at(x, y) == 1 && !blocked.at(x, y); },
            [](std::size_t, std::size_t) { return true; },
            [&](const std::vector<std::size_t>& img) {
                DeletionSearch::Pairs p;
                for (auto [i, j] : hedges) p.emplace_back(img[i], img[j]);
                out = std::move(p);
                return true;
            },
            inner, "turan_number");
        return out;
    };
    Matrix kn(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) kn.set(i, j, 1);
    DeletionSearch search(std::move(kn), find, budget, "turan_number");
    const auto best = search.run();
    return best ? best->edges() : 0;
}

}  // namespace indturan::oracle
