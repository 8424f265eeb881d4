#include "indturan/sparseness.hpp"

#include "indturan/errors.hpp"
#include "indturan/generators.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <thread>

namespace indturan {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::SparseCertified: return "sparse-certified";
        case Verdict::Violated: return "violated";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

std::string to_string(SparsenessMethod m) {
    return m == SparsenessMethod::Exhaustive ? "exhaustive" : "randomized";
}

unsigned default_workers() {
    if (const char* env = std::getenv("INDTURAN_WORKERS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

bool exceeds_density(std::uint64_t pair_count, double c, std::size_t a, std::size_t b) {
    const double threshold = (1.0 - c) * static_cast<double>(a) * static_cast<double>(b);
    return static_cast<double>(pair_count) > threshold * (1.0 + 1e-9);
}

bool witness_is_valid(const Graph& g, const SparsenessReport& report) {
    if (!report.witness) return false;
    const auto& [a, b] = *report.witness;
    if (a.size() < report.t || b.size() < report.t) return false;
    return exceeds_density(pair_count(g, a, b), report.c, a.size(), b.size());
}

namespace {

void check_params(const Graph& g, double c, std::size_t t) {
    if (!(c > 0.0 && c < 1.0)) throw InputError("sparseness: c must lie in (0,1)");
    if (t < 1) throw InputError("sparseness: t must be at least 1");
    if (t > g.n()) throw InputError("sparseness: t exceeds the vertex count");
}

double binom(std::size_t n, std::size_t k) {
    double r = 1.0;
    for (std::size_t i = 0; i < k; ++i) r = r * static_cast<double>(n - i) / static_cast<double>(i + 1);
    return r;
}

// Indices of the t largest weights; ties go to the lower vertex id.
std::vector<Vertex> top_t(const std::vector<std::uint32_t>& w, std::size_t t, std::vector<Vertex>& scratch) {
    scratch.resize(w.size());
    std::iota(scratch.begin(), scratch.end(), Vertex{0});
    std::partial_sort(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(t), scratch.end(),
                      [&](Vertex x, Vertex y) { return w[x] != w[y] ? w[x] > w[y] : x < y; });
    return {scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(t)};
}

template <class F>
void run_workers(unsigned workers, F&& body) {
    if (workers <= 1) {
        body(0u);
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back([&, w] { body(w); });
    for (auto& th : pool) th.join();
}

}  // namespace

SparsenessReport check_exact(const Graph& g, double c, std::size_t t, const ExactCheckOptions& opts) {
    check_params(g, c, t);
    SparsenessReport report;
    report.c = c;
    report.t = t;
    report.method = SparsenessMethod::Exhaustive;

    const std::size_t n = g.n();
    const double subsets = binom(n, t);
    if (subsets * static_cast<double>(n) > static_cast<double>(opts.budget)) {
        report.verdict = Verdict::Inconclusive;
        report.note = "enumeration budget exceeded";
        return report;
    }

    const unsigned workers = std::max(1u, opts.workers ? opts.workers : default_workers());
    constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();
    std::atomic<std::uint64_t> first_violation{kNone};
    std::atomic<std::uint64_t> examined{0};

    run_workers(workers, [&](unsigned worker) {
        std::vector<Vertex> comb(t);
        std::iota(comb.begin(), comb.end(), Vertex{0});
        std::vector<std::uint32_t> weight(n);
        std::vector<Vertex> scratch;
        std::uint64_t local = 0;
        for (std::uint64_t index = 0;; ++index) {
            if (index >= first_violation.load(std::memory_order_relaxed)) break;
            if (index % workers == worker) {
                ++local;
                VertexSet a = VertexSet::from(n, comb);
                std::uint64_t best = 0;
                for (Vertex v = 0; v < n; ++v)
                    weight[v] = static_cast<std::uint32_t>(g.neighbors(v).intersection_size(a));
                const auto b = top_t(weight, t, scratch);
                for (auto v : b) best += weight[v];
                if (exceeds_density(best, c, t, t)) {
                    std::uint64_t cur = first_violation.load();
                    while (index < cur && !first_violation.compare_exchange_weak(cur, index)) {
                    }
                    break;
                }
            }
            // Next combination in lexicographic order.
            std::size_t i = t;
            while (i > 0 && comb[i - 1] == n - t + i - 1) --i;
            if (i == 0) break;
            ++comb[i - 1];
            for (std::size_t j = i; j < t; ++j) comb[j] = comb[j - 1] + 1;
        }
        examined += local;
    });

    report.work = examined.load();
    const auto hit = first_violation.load();
    if (hit == kNone) {
        report.verdict = Verdict::SparseCertified;
        return report;
    }
    // Rebuild the witness for the lowest violating index.
    std::vector<Vertex> comb(t);
    std::iota(comb.begin(), comb.end(), Vertex{0});
    for (std::uint64_t index = 0; index < hit; ++index) {
        std::size_t i = t;
        while (i > 0 && comb[i - 1] == n - t + i - 1) --i;
        ++comb[i - 1];
        for (std::size_t j = i; j < t; ++j) comb[j] = comb[j - 1] + 1;
    }
    VertexSet a = VertexSet::from(n, comb);
    std::vector<std::uint32_t> weight(n);
    std::vector<Vertex> scratch;
    for (Vertex v = 0; v < n; ++v) weight[v] = static_cast<std::uint32_t>(g.neighbors(v).intersection_size(a));
    const auto b = top_t(weight, t, scratch);
    report.verdict = Verdict::Violated;
    report.witness = std::make_pair(a, VertexSet::from(n, b));
    return report;
}

namespace {

// One ascent trial. Returns the pair when it violates the bound.
std::optional<std::pair<VertexSet, VertexSet>> ascent_trial(const Graph& g, double c, std::size_t t, Rng& rng) {
    const std::size_t n = g.n();
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), Vertex{0});
    std::vector<char> in_a(n, 0), in_b(n, 0);
    rng.shuffle(std::span<Vertex>(perm));
    for (std::size_t i = 0; i < t; ++i) in_a[perm[i]] = 1;
    rng.shuffle(std::span<Vertex>(perm));
    for (std::size_t i = 0; i < t; ++i) in_b[perm[i]] = 1;

    // wa[v] = |N(v) ∩ B| (gain of v as an A member); wb[v] = |N(v) ∩ A|.
    std::vector<std::int64_t> wa(n, 0), wb(n, 0);
    std::uint64_t count = 0;
    for (Vertex v = 0; v < n; ++v)
        g.neighbors(v).for_each([&](Vertex u) {
            if (in_b[u]) ++wa[v];
            if (in_a[u]) ++wb[v];
        });
    for (Vertex v = 0; v < n; ++v)
        if (in_a[v]) count += static_cast<std::uint64_t>(wa[v]);

    auto finish = [&]() -> std::optional<std::pair<VertexSet, VertexSet>> {
        VertexSet a(n), b(n);
        for (Vertex v = 0; v < n; ++v) {
            if (in_a[v]) a.insert(v);
            if (in_b[v]) b.insert(v);
        }
        return std::make_pair(a, b);
    };
    if (exceeds_density(count, c, t, t)) return finish();

    // Swap the weakest member of one side for the strongest outsider.
    auto improve = [&](std::vector<char>& in, std::vector<std::int64_t>& gain, std::vector<std::int64_t>& other) {
        Vertex worst = 0, best = 0;
        std::int64_t wv = std::numeric_limits<std::int64_t>::max(), bv = -1;
        for (Vertex v = 0; v < n; ++v) {
            if (in[v]) {
                if (gain[v] < wv) wv = gain[v], worst = v;
            } else if (gain[v] > bv) {
                bv = gain[v], best = v;
            }
        }
        if (bv <= wv) return false;
        in[worst] = 0;
        in[best] = 1;
        count += static_cast<std::uint64_t>(bv - wv);
        g.neighbors(worst).for_each([&](Vertex u) { --other[u]; });
        g.neighbors(best).for_each([&](Vertex u) { ++other[u]; });
        return true;
    };
    for (;;) {
        bool moved = false;
        if (t < n) {
            moved |= improve(in_a, wa, wb);
            if (exceeds_density(count, c, t, t)) return finish();
            moved |= improve(in_b, wb, wa);
            if (exceeds_density(count, c, t, t)) return finish();
        }
        if (!moved) return std::nullopt;
    }
}

}  // namespace

SparsenessReport refute_random(const Graph& g, double c, std::size_t t, std::uint64_t trials, Seed seed,
                               unsigned workers) {
    check_params(g, c, t);
    SparsenessReport report;
    report.c = c;
    report.t = t;
    report.method = SparsenessMethod::Randomized;
    report.verdict = Verdict::Inconclusive;

    workers = std::max(1u, workers ? workers : default_workers());
    constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();
    std::atomic<std::uint64_t> first{kNone};
    std::atomic<std::uint64_t> done{0};
    run_workers(workers, [&](unsigned worker) {
        for (std::uint64_t i = worker; i < trials; i += workers) {
            if (i >= first.load(std::memory_order_relaxed)) break;
            Rng rng(derive_seed(seed, {i}));
            ++done;
            if (ascent_trial(g, c, t, rng)) {
                std::uint64_t cur = first.load();
                while (i < cur && !first.compare_exchange_weak(cur, i)) {
                }
                break;
            }
        }
    });
    report.work = done.load();
    if (const auto hit = first.load(); hit != kNone) {
        Rng rng(derive_seed(seed, {hit}));
        report.witness = ascent_trial(g, c, t, rng);
        report.verdict = Verdict::Violated;
        report.note = "trial " + std::to_string(hit);
    }
    return report;
}

// ----------------------------------------------------------------- cliques

namespace {

class CliqueSearch {
public:
    CliqueSearch(const Graph& g, std::uint64_t budget) : g_(g), budget_(budget) {
        // Degeneracy order: repeatedly remove a minimum-degree vertex, then
        // search from the last removed (densest core) first.
        const std::size_t n = g.n();
        std::vector<std::size_t> deg(n);
        std::vector<char> gone(n, 0);
        for (Vertex v = 0; v < n; ++v) deg[v] = g.degree(v);
        order_.reserve(n);
        for (std::size_t step = 0; step < n; ++step) {
            Vertex best = 0;
            std::size_t bd = std::numeric_limits<std::size_t>::max();
            for (Vertex v = 0; v < n; ++v)
                if (!gone[v] && deg[v] < bd) bd = deg[v], best = v;
            gone[best] = 1;
            order_.push_back(best);
            g.neighbors(best).for_each([&](Vertex u) {
                if (!gone[u]) --deg[u];
            });
        }
        std::reverse(order_.begin(), order_.end());
        pos_.resize(n);
        for (std::size_t i = 0; i < n; ++i) pos_[order_[i]] = static_cast<Vertex>(i);
        // Adjacency in the permuted labelling.
        rows_.assign(n, VertexSet(n));
        for (Vertex v = 0; v < n; ++v)
            g.neighbors(v).for_each([&](Vertex u) { rows_[pos_[v]].insert(pos_[u]); });
    }

    std::vector<Vertex> run() {
        const std::size_t n = g_.n();
        if (n == 0) return {};
        best_.assign(1, 0);
        VertexSet all = VertexSet::full(n);
        std::vector<Vertex> current;
        expand(current, all);
        std::vector<Vertex> out;
        for (auto v : best_) out.push_back(order_[v]);
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    void expand(std::vector<Vertex>& current, VertexSet cand) {
        if (++nodes_ > budget_)
            throw ResourceError("clique search exceeded node budget", static_cast<std::int64_t>(best_.size()));
        // Greedy colouring of the candidates gives the bound.
        std::vector<Vertex> verts;
        std::vector<std::size_t> colour;
        VertexSet uncoloured = cand;
        std::size_t k = 0;
        while (!uncoloured.empty()) {
            ++k;
            VertexSet q = uncoloured;
            while (!q.empty()) {
                const Vertex v = q.first();
                q.erase(v);
                q -= rows_[v];
                uncoloured.erase(v);
                verts.push_back(v);
                colour.push_back(k);
            }
        }
        for (std::size_t i = verts.size(); i-- > 0;) {
            if (current.size() + colour[i] <= best_.size()) return;
            const Vertex v = verts[i];
            current.push_back(v);
            VertexSet next = cand & rows_[v];
            if (next.empty()) {
                if (current.size() > best_.size()) best_ = current;
            } else {
                expand(current, std::move(next));
            }
            current.pop_back();
            cand.erase(v);
        }
    }

    const Graph& g_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    std::vector<Vertex> order_, pos_, best_;
    std::vector<VertexSet> rows_;
};

}  // namespace

std::vector<Vertex> maximum_clique(const Graph& g, std::uint64_t node_budget) {
    return CliqueSearch(g, node_budget).run();
}

std::size_t clique_number(const Graph& g, std::uint64_t node_budget) {
    return maximum_clique(g, node_budget).size();
}

bool is_clique(const Graph& g, const VertexSet& s) {
    bool ok = true;
    s.for_each([&](Vertex v) {
        VertexSet others = s;
        others.erase(v);
        if (!others.is_subset_of(g.neighbors(v))) ok = false;
    });
    return ok;
}

bool is_valid_cover(const Graph& g, const CliqueCover& cover, const std::optional<VertexSet>& universe) {
    VertexSet seen(g.n());
    for (const auto& part : cover.parts) {
        if (part.universe() != g.n() || part.empty()) return false;
        if (seen.intersects(part)) return false;
        if (!is_clique(g, part)) return false;
        seen |= part;
    }
    return seen == (universe ? *universe : g.vertices());
}

CliqueCover clique_cover(const Graph& g, CoverMode mode) {
    const std::size_t n = g.n();
    CliqueCover cover;
    if (mode == CoverMode::Greedy) {
        VertexSet uncovered = g.vertices();
        while (!uncovered.empty()) {
            const Vertex v = uncovered.first();
            VertexSet part(n);
            part.insert(v);
            VertexSet cand = g.neighbors(v) & uncovered;
            while (!cand.empty()) {
                Vertex pick = 0;
                std::size_t best = 0;
                bool any = false;
                cand.for_each([&](Vertex u) {
                    const auto s = g.neighbors(u).intersection_size(cand);
                    if (!any || s > best) best = s, pick = u, any = true;
                });
                part.insert(pick);
                cand &= g.neighbors(pick);
            }
            uncovered -= part;
            cover.parts.push_back(std::move(part));
        }
        return cover;
    }

    if (n > 20) throw InputError("clique_cover: exact-small mode needs n <= 20");
    // Assign vertices in id order to an existing compatible part or a new one.
    std::vector<std::uint32_t> rows(n);
    for (Vertex v = 0; v < n; ++v)
        g.neighbors(v).for_each([&](Vertex u) { rows[v] |= 1u << u; });
    std::vector<std::uint32_t> parts, best;
    std::size_t best_k = n + 1;
    auto rec = [&](auto&& self, Vertex v) -> void {
        if (parts.size() >= best_k) return;
        if (v == n) {
            best_k = parts.size();
            best = parts;
            return;
        }
        // Index access: the recursion may grow `parts` and move it.
        for (std::size_t i = 0; i < parts.size(); ++i)
            if ((parts[i] & ~rows[v]) == 0) {
                parts[i] |= 1u << v;
                self(self, v + 1);
                parts[i] &= ~(1u << v);
            }
        parts.push_back(1u << v);
        self(self, v + 1);
        parts.pop_back();
    };
    rec(rec, 0);
    for (auto mask : best) {
        VertexSet part(n);
        for (Vertex v = 0; v < n; ++v)
            if (mask >> v & 1u) part.insert(v);
        cover.parts.push_back(std::move(part));
    }
    return cover;
}

std::vector<VertexSet> subfield_cliques(std::uint32_t q, std::size_t count, Seed seed) {
    const FiniteField f(q);
    if (f.degree() != 2) throw InputError("subfield_cliques: q must be the square of an odd prime");
    const std::uint32_t p = f.characteristic();
    std::vector<std::uint32_t> squares;
    for (std::uint32_t i = 0; i < q; ++i)
        if (f.square_table()[i]) squares.push_back(i);
    Rng rng(seed);
    std::vector<VertexSet> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const auto a = f.element(squares[rng.below(squares.size())]);
        const auto b = f.element(static_cast<std::uint32_t>(rng.below(q)));
        VertexSet s(q);
        for (std::uint32_t x = 0; x < p; ++x) s.insert(f.index(f.add(f.mul(a, FieldElement{x, 0}), b)));
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace indturan
