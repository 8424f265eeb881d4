#include "indturan/drc.hpp"

#include "indturan/errors.hpp"
#include "indturan/sparseness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <sstream>
#include <thread>

namespace indturan {

// --------------------------------------------------------------- patterns

BipartitePattern::BipartitePattern(std::size_t l, std::size_t b, std::vector<std::vector<std::size_t>> a1)
    : l_(l), b_(b), a1_(std::move(a1)) {
    if (l_ < 1) throw InputError("pattern needs at least one A0 vertex");
    if (b_ < 1) throw InputError("pattern needs a non-empty B side");
    for (auto& nb : a1_) {
        std::sort(nb.begin(), nb.end());
        if (nb.empty() || nb.size() >= b_)
            throw InputError("A1 degrees must lie in [1, b-1] (a vertex complete to B belongs to A0)");
        if (std::adjacent_find(nb.begin(), nb.end()) != nb.end() || nb.back() >= b_)
            throw InputError("A1 neighbourhood has a repeated or out-of-range B index");
    }
}

std::size_t BipartitePattern::d() const noexcept {
    std::size_t d = l_;
    for (const auto& nb : a1_) d = std::max(d, nb.size());
    return d;
}

std::size_t BipartitePattern::e() const noexcept {
    std::size_t e = l_ * b_;
    for (const auto& nb : a1_) e += nb.size();
    return e;
}

Graph BipartitePattern::graph() const {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < l_; ++i)
        for (std::size_t j = 0; j < b_; ++j) edges.push_back({a0_id(i), b_id(j)});
    for (std::size_t i = 0; i < a1_.size(); ++i)
        for (auto j : a1_[i]) edges.push_back({a1_id(i), b_id(j)});
    return Graph(v(), edges);
}

BipartitePattern BipartitePattern::without_apex() const {
    if (l_ < 2) throw InputError("without_apex needs l >= 2");
    return BipartitePattern(l_ - 1, b_, a1_);
}

std::string BipartitePattern::describe() const {
    std::ostringstream os;
    os << "l=" << l_ << " a=" << a() << " b=" << b_ << " d=" << d() << " e=" << e();
    return os.str();
}

BipartitePattern BipartitePattern::parse(const std::string& spec) {
    std::istringstream is(spec);
    std::string tok;
    if (!(is >> tok) || tok != "bip") throw InputError("pattern spec must start with 'bip'");
    std::optional<std::size_t> l, b;
    std::vector<std::size_t> degs;
    while (is >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw InputError("pattern spec token without '=': " + tok);
        const auto key = tok.substr(0, eq), val = tok.substr(eq + 1);
        auto number = [&](const std::string& s) -> std::size_t {
            std::size_t pos = 0;
            unsigned long v = 0;
            try {
                v = std::stoul(s, &pos);
            } catch (const std::exception&) {
                throw InputError("bad number in pattern spec: " + s);
            }
            if (pos != s.size()) throw InputError("bad number in pattern spec: " + s);
            return v;
        };
        if (key == "l") l = number(val);
        else if (key == "B") b = number(val);
        else if (key == "A1") {
            std::istringstream ds(val);
            std::string part;
            while (std::getline(ds, part, ','))
                if (!part.empty()) degs.push_back(number(part));
        } else {
            throw InputError("unknown pattern spec key: " + key);
        }
    }
    if (!l || !b) throw InputError("pattern spec needs l=<l> and B=<b>");
    std::vector<std::vector<std::size_t>> a1;
    std::size_t offset = 0;
    for (auto dg : degs) {
        if (dg == 0 || dg >= *b) throw InputError("A1 degrees must lie in [1, b-1]");
        std::vector<std::size_t> nb;
        for (std::size_t j = 0; j < dg; ++j) nb.push_back((offset + j) % *b);
        offset += dg;
        a1.push_back(std::move(nb));
    }
    return BipartitePattern(*l, *b, std::move(a1));
}

BipartitePattern BipartitePattern::from_graph(const Graph& h) {
    if (h.n() < 2 || !is_connected(h)) throw InputError("pattern graph must be connected with at least two vertices");
    const auto side = two_coloring(h);
    if (side.empty()) throw InputError("pattern graph must be bipartite");
    std::optional<BipartitePattern> best;
    for (int aside = 0; aside < 2; ++aside) {
        std::vector<Vertex> A, B;
        for (Vertex v = 0; v < h.n(); ++v) (side[v] == aside ? A : B).push_back(v);
        std::vector<std::size_t> bindex(h.n(), 0);
        for (std::size_t j = 0; j < B.size(); ++j) bindex[B[j]] = j;
        std::size_t l = 0;
        std::vector<std::vector<std::size_t>> a1;
        for (auto v : A) {
            if (h.degree(v) == B.size()) {
                ++l;
                continue;
            }
            std::vector<std::size_t> nb;
            h.neighbors(v).for_each([&](Vertex u) { nb.push_back(bindex[u]); });
            a1.push_back(std::move(nb));
        }
        if (l == 0) continue;
        BipartitePattern cand(l, B.size(), std::move(a1));
        if (!best || cand.d() < best->d()) best = std::move(cand);
    }
    if (!best) throw InputError("pattern graph has no vertex complete to the other side");
    return *best;
}

// ------------------------------------------------------------------ views

HostView::HostView(std::shared_ptr<const Graph> g, VertexSet u, VertexSet r)
    : host(std::move(g)), U(std::move(u)), R(std::move(r)) {
    if (!host) throw InputError("host view needs a graph");
    if (U.universe() != host->n() || R.universe() != host->n()) throw InputError("view sides have the wrong universe");
    if (U.intersects(R)) throw InputError("view sides must be disjoint");
    U.for_each([&](Vertex v) { edges_ += host->neighbors(v).intersection_size(R); });
}

double HostView::q() const noexcept {
    const double mr = static_cast<double>(m()) * static_cast<double>(r());
    return mr > 0 ? static_cast<double>(edges_) / mr : 0.0;
}

std::size_t HostView::degree(Vertex v) const {
    if (U.contains(v)) return host->neighbors(v).intersection_size(R);
    if (R.contains(v)) return host->neighbors(v).intersection_size(U);
    return 0;
}

double HostView::avg_degree_U() const { return m() ? static_cast<double>(edges_) / static_cast<double>(m()) : 0.0; }

HostView random_host_view(std::shared_ptr<const Graph> g, Seed seed) {
    const std::size_t n = g->n();
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), Vertex{0});
    Rng rng(seed);
    rng.shuffle(std::span<Vertex>(perm));
    VertexSet U(n), R(n);
    for (std::size_t i = 0; i < n; ++i) (i < n / 2 ? U : R).insert(perm[i]);
    return HostView(std::move(g), std::move(U), std::move(R));
}

// -------------------------------------------------------------- reduction

double choose_delta(double kappa) {
    if (!(kappa > 1.0)) throw InputError("choose_delta: kappa must exceed 1");
    constexpr double step = 0x1.0p-20;
    const double expo = 1.0 - 1.0 / kappa;
    // The feasible set is an interval starting at 0, so scan down from 1/4.
    for (std::uint64_t i = (1u << 18) - 1; i >= 1; --i) {
        const double d = static_cast<double>(i) * step;
        if (1.0 - 2.0 * d > std::pow(d, expo)) return d;
    }
    return step;
}

HostView delta_reduce(const HostView& view, double delta, const std::vector<double>& exponents,
                      ReductionReport* report) {
    if (!(delta > 0.0 && delta < 0.25)) throw InputError("delta_reduce: delta must lie in (0, 1/4)");
    if (view.edges() == 0) throw InputError("delta_reduce: the view has no edges");
    std::vector<std::pair<Vertex, std::size_t>> cur;
    view.U.for_each([&](Vertex u) { cur.emplace_back(u, view.degree(u)); });

    std::size_t iterations = 0;
    double D = 0;
    for (;;) {
        std::uint64_t e = 0;
        for (auto [u, d] : cur) e += d;
        D = static_cast<double>(e) / static_cast<double>(cur.size());
        double low = 0;
        for (auto [u, d] : cur)
            if (static_cast<double>(d) <= D / delta) low += static_cast<double>(d);
        if (!(low < 2.0 * delta * static_cast<double>(e))) break;
        std::vector<std::pair<Vertex, std::size_t>> next;
        for (auto [u, d] : cur)
            if (static_cast<double>(d) >= D / delta) next.emplace_back(u, d);
        if (next.empty()) throw InternalError("delta_reduce: the high-degree set became empty");
        cur = std::move(next);
        ++iterations;
    }
    VertexSet kept(view.host->n());
    for (auto [u, d] : cur)
        if (static_cast<double>(d) >= delta * D && static_cast<double>(d) <= D / delta) kept.insert(u);
    if (kept.empty()) throw InternalError("delta_reduce: empty result");

    HostView out(view.host, kept, view.R);
    const double avg0 = view.avg_degree_U(), avg1 = out.avg_degree_U();
    const double m0 = static_cast<double>(view.m()), m1 = static_cast<double>(out.m());
    constexpr double tol = 1e-9;
    out.U.for_each([&](Vertex u) {
        const double d = static_cast<double>(out.degree(u));
        if (d < delta * delta * avg1 * (1 - tol) || d > avg1 / (delta * delta) * (1 + tol))
            throw InternalError("delta_reduce: output is not delta^2-reduced");
    });
    if (avg1 < delta * avg0 * (1 - tol)) throw InternalError("delta_reduce: average degree dropped below delta times");
    for (double x : exponents) {
        const double lhs = std::log(m1) + x * std::log(avg1);
        const double rhs = x * std::log(delta) + std::log(m0) + x * std::log(avg0);
        if (lhs < rhs - tol) throw InternalError("delta_reduce: mass inequality failed at x=" + std::to_string(x));
    }
    if (report) *report = {iterations, avg0, avg1, view.m(), out.m()};
    return out;
}

// ------------------------------------------------------- richness/goodness

bool is_rich_k(const HostView& view, const Graph& gamma, const VertexSet& S, const VertexSet& T, double eps,
               std::size_t exponent) {
    if (S.empty()) throw InputError("is_rich: S must be non-empty");
    if (gamma.n() != view.host->n()) throw InputError("is_rich: Gamma and G differ in order");
    VertexSet unique = common_neighborhood(*view.host, S) & view.U;
    unique -= union_neighborhood(gamma, T);
    const double need = eps * static_cast<double>(view.m()) * std::pow(view.q(), static_cast<double>(exponent));
    return static_cast<double>(unique.size()) >= need;
}

bool is_rich(const HostView& view, const Graph& gamma, const VertexSet& S, const VertexSet& T, double eps) {
    return is_rich_k(view, gamma, S, T, eps, S.size());
}

std::string to_string(Goodness g) {
    switch (g) {
        case Goodness::Good: return "good";
        case Goodness::Bad: return "bad";
        case Goodness::Uncertain: return "uncertain";
    }
    return "?";
}

GoodnessResult goodness_estimate(const HostView& view, const Graph& gamma, Vertex u, double beta, double eps,
                                 std::size_t k, std::uint64_t samples, Seed seed, std::uint64_t exhaustive_budget) {
    if (k < 1) throw InputError("goodness_estimate: k must be at least 1");
    const std::size_t n = gamma.n();
    const auto nbrs = (view.host->neighbors(u) & view.R).members();
    if (nbrs.empty()) throw InputError("goodness_estimate: u has no neighbours in R");
    GoodnessResult res;
    if (beta >= 1.0) {
        res.verdict = Goodness::Good;
        res.exhaustive = true;
        return res;
    }
    const VertexSet T = VertexSet::of(n, {u});
    auto rich = [&](const std::vector<std::size_t>& idx) {
        VertexSet S(n);
        for (auto i : idx) S.insert(nbrs[i]);
        return is_rich_k(view, gamma, S, T, eps, k);
    };

    const double total = std::pow(static_cast<double>(nbrs.size()), static_cast<double>(k));
    std::vector<std::size_t> idx(k, 0);
    if (total <= static_cast<double>(exhaustive_budget)) {
        std::uint64_t bad = 0, count = 0;
        for (;;) {
            ++count;
            if (!rich(idx)) ++bad;
            std::size_t i = 0;
            while (i < k && ++idx[i] == nbrs.size()) idx[i++] = 0;
            if (i == k) break;
        }
        res.exhaustive = true;
        res.tuples = count;
        res.bad_fraction = static_cast<double>(bad) / static_cast<double>(count);
        res.verdict = res.bad_fraction <= beta ? Goodness::Good : Goodness::Bad;
        return res;
    }
    if (samples == 0) throw InputError("goodness_estimate: Monte-Carlo needs samples > 0");
    Rng rng(seed);
    std::uint64_t bad = 0;
    for (std::uint64_t s = 0; s < samples; ++s) {
        for (auto& i : idx) i = rng.below(nbrs.size());
        if (!rich(idx)) ++bad;
    }
    res.tuples = samples;
    res.bad_fraction = static_cast<double>(bad) / static_cast<double>(samples);
    res.half_width = std::sqrt(std::log(2000.0) / (2.0 * static_cast<double>(samples)));
    if (res.bad_fraction + res.half_width <= beta) res.verdict = Goodness::Good;
    else if (res.bad_fraction - res.half_width > beta) res.verdict = Goodness::Bad;
    else res.verdict = Goodness::Uncertain;
    return res;
}

// --------------------------------------------------------------- schedule

std::string to_string(Reject r) {
    switch (r) {
        case Reject::None: return "none";
        case Reject::XNotIndependent: return "X-not-independent";
        case Reject::TupleNotRich: return "tuple-not-rich";
        case Reject::A1PickCollision: return "A1-pick-collision";
        case Reject::A1PickAdjacent: return "A1-pick-adjacent";
        case Reject::ApexNotGood: return "apex-not-good";
        case Reject::EmptySubview: return "empty-subview";
        case Reject::BudgetExhausted: return "budget-exhausted";
    }
    return "?";
}

Schedule default_schedule(const BipartitePattern& h, double c, double t) {
    if (!(c > 0.0 && c < 1.0)) throw InputError("schedule: c must lie in (0,1)");
    if (!(t >= 1.0)) throw InputError("schedule: t must be at least 1");
    Schedule s;
    s.c = c;
    s.t = t;
    s.d = h.d();
    const auto a = static_cast<double>(h.a()), b = static_cast<double>(h.b()), e = static_cast<double>(h.e());
    s.kappa = kappa_for(h);
    s.delta = choose_delta(s.kappa);
    s.eps = std::pow(c, b + 1) / 4.0;
    const std::size_t dd = std::min(h.d(), h.b());
    double choose = 1.0;
    for (std::size_t i = 0; i < dd; ++i) choose = choose * static_cast<double>(h.b() - i) / static_cast<double>(i + 1);
    s.beta = std::pow(c, b * b) / (8.0 * choose);
    s.gamma = std::pow(c, b * b + a * a + a * b) * std::pow(s.delta, b) * std::pow(s.eps, a) / 2.0;
    s.C.assign(h.l() + 1, 0.0);
    s.Cp.assign(h.l() + 1, 0.0);
    s.gamma_l.assign(h.l() + 1, 0.0);
    for (std::size_t l = 1; l <= h.l(); ++l) {
        const double L = static_cast<double>(l);
        s.C[l] = 1.0 / std::pow(2.0 * (1.0 - s.beta) * s.eps * s.delta, L);
        s.Cp[l] = std::pow(s.delta, -2.0 * L);
        s.gamma_l[l] = s.gamma * std::pow(s.delta, e) / 2.0 *
                       std::pow(std::pow(1.0 - s.beta, e) * std::pow(s.eps, e) * std::pow(s.delta, 2.0 * b) / 2.0, L - 1.0);
    }
    return s;
}

void EmbedStats::merge(const EmbedStats& o) {
    reductions += o.reductions;
    apexes_tried += o.apexes_tried;
    tuple_attempts += o.tuple_attempts;
    for (const auto& [k, v] : o.rejects) rejects[k] += v;
    guards.insert(guards.end(), o.guards.begin(), o.guards.end());
}

// --------------------------------------------------------------- samplers

EmbedOutcome sample_apex_copy(const Graph& gamma, const HostView& view, const BipartitePattern& h, Vertex u,
                              const DrcConfig& cfg, Rng& rng) {
    if (h.l() != 1) throw InputError("sample_apex_copy: pattern must have l = 1");
    if (!view.U.contains(u)) throw InputError("sample_apex_copy: apex must lie in U");
    if (h.b() > 24) throw InputError("sample_apex_copy: at most 24 B vertices supported");
    const Graph& G = *view.host;
    const std::size_t n = G.n();
    EmbedOutcome out;
    auto reject = [&](Reject r) {
        out.reason = r;
        out.stats.rejects[to_string(r)]++;
        return out;
    };

    const auto nbrs = (G.neighbors(u) & view.R).members();
    if (nbrs.empty()) throw InputError("sample_apex_copy: apex has no neighbours in R");
    const std::size_t b = h.b();
    std::vector<Vertex> X(b);
    for (auto& x : X) x = nbrs[rng.below(nbrs.size())];

    // (1) distinct and independent in Gamma.
    for (std::size_t i = 0; i < b; ++i)
        for (std::size_t j = i + 1; j < b; ++j)
            if (X[i] == X[j] || gamma.adjacent(X[i], X[j])) return reject(Reject::XNotIndependent);

    // (2) every Y ⊆ X with |Y| <= d is (c^(b-|Y|) eps, {u} ∪ X\Y)-rich.
    const auto& sch = cfg.schedule;
    const std::size_t dmax = std::min(sch.d, b);
    for (std::uint32_t mask = 1; mask < (1u << b); ++mask) {
        const auto size = static_cast<std::size_t>(std::popcount(mask));
        if (size > dmax) continue;
        VertexSet Y(n), T(n);
        T.insert(u);
        for (std::size_t i = 0; i < b; ++i) (mask >> i & 1u ? Y : T).insert(X[i]);
        const double eps = std::pow(sch.c, static_cast<double>(b - size)) * sch.eps;
        if (!is_rich(view, gamma, Y, T, eps)) return reject(Reject::TupleNotRich);
    }

    // A1 picks from the unique neighbourhoods.
    std::vector<Vertex> picks;
    for (const auto& nb : h.a1()) {
        VertexSet Bw(n), T(n);
        T.insert(u);
        std::vector<char> in(b, 0);
        for (auto j : nb) in[j] = 1;
        for (std::size_t j = 0; j < b; ++j) (in[j] ? Bw : T).insert(X[j]);
        VertexSet Vw = common_neighborhood(G, Bw) & view.U;
        Vw -= union_neighborhood(gamma, T);
        if (Vw.empty()) return reject(Reject::TupleNotRich);
        picks.push_back(Vw.nth(rng.below(Vw.size())));
    }
    for (std::size_t i = 0; i < picks.size(); ++i) {
        if (picks[i] == u) return reject(Reject::A1PickCollision);
        for (std::size_t j = i + 1; j < picks.size(); ++j)
            if (picks[i] == picks[j]) return reject(Reject::A1PickCollision);
    }
    for (std::size_t i = 0; i < picks.size(); ++i)
        for (std::size_t j = i + 1; j < picks.size(); ++j)
            if (gamma.adjacent(picks[i], picks[j])) return reject(Reject::A1PickAdjacent);

    Embedding phi;
    phi.source = h.describe();
    phi.assignment.push_back(u);
    phi.assignment.insert(phi.assignment.end(), picks.begin(), picks.end());
    phi.assignment.insert(phi.assignment.end(), X.begin(), X.end());
    if (!is_copy_induced_in(G, gamma, h.graph(), phi))
        throw InternalError("sample_apex_copy produced a copy that is not induced in Gamma");
    out.embedding = std::move(phi);
    return out;
}

namespace {

std::vector<double> reduction_exponents(const Schedule& s) {
    std::vector<double> xs{s.kappa};
    if (static_cast<double>(s.d) >= s.kappa) xs.push_back(static_cast<double>(s.d));
    return xs;
}

EmbedOutcome recurse(const Graph& gamma, const HostView& view, const BipartitePattern& h, const DrcConfig& cfg,
                     Seed seed) {
    const auto& s = cfg.schedule;
    const std::size_t level = h.l();
    EmbedOutcome out;
    auto& st = out.stats;

    GuardEvaluation g;
    g.level = level;
    g.q = view.q();
    g.r = static_cast<double>(view.r());
    const double m = static_cast<double>(view.m()), d = static_cast<double>(s.d);
    if (level < s.C.size() && m > 0) {
        g.q_required = s.C[level] * std::pow(m, -1.0 / d) * std::pow(s.t, 1.0 / d);
        g.r_required = s.Cp[level] * s.t * std::pow(m / s.t, static_cast<double>(level) / d);
    }
    g.passed = g.q >= g.q_required && g.r >= g.r_required;
    st.guards.push_back(g);
    if (cfg.enforce_guards && !g.passed) {
        std::ostringstream os;
        os << "level " << level << " guard failed: ";
        if (g.q < g.q_required) os << "q=" << g.q << " < C_l m^(-1/d) t^(1/d)=" << g.q_required;
        else os << "r=" << g.r << " < C'_l t (m/t)^(l/d)=" << g.r_required;
        throw PreconditionError(os.str());
    }
    if (view.edges() == 0) {
        out.reason = Reject::EmptySubview;
        st.rejects[to_string(Reject::EmptySubview)]++;
        return out;
    }

    const HostView reduced = delta_reduce(view, s.delta, reduction_exponents(s));
    ++st.reductions;
    const auto apexes = reduced.U.members();
    const Graph& G = *view.host;

    for (std::size_t i = 0; i < cfg.apex_budget; ++i) {
        Rng rng(derive_seed(seed, {i, 0}));
        const Vertex u = apexes[rng.below(apexes.size())];
        ++st.apexes_tried;
        if (cfg.check_goodness) {
            bool bad = false;
            for (std::size_t k = 1; k <= s.d && !bad; ++k)
                bad = goodness_estimate(reduced, gamma, u, s.beta, s.eps, k, cfg.goodness_samples,
                                        derive_seed(seed, {i, 2, k}))
                          .verdict == Goodness::Bad;
            if (bad) {
                st.rejects[to_string(Reject::ApexNotGood)]++;
                continue;
            }
        }
        if (level == 1) {
            for (std::size_t j = 0; j < cfg.tuple_budget; ++j) {
                Rng trng(derive_seed(seed, {i, 1, j}));
                ++st.tuple_attempts;
                auto res = sample_apex_copy(gamma, reduced, h, u, cfg, trng);
                st.merge(res.stats);
                if (res.success()) {
                    out.embedding = std::move(res.embedding);
                    return out;
                }
            }
            continue;
        }
        VertexSet Rpp = G.neighbors(u) & reduced.R;
        VertexSet Upp = reduced.U - gamma.neighbors(u);
        Upp.erase(u);
        if (Rpp.empty() || Upp.empty()) {
            st.rejects[to_string(Reject::EmptySubview)]++;
            continue;
        }
        const HostView sub(view.host, std::move(Upp), std::move(Rpp));
        if (sub.edges() == 0) {
            st.rejects[to_string(Reject::EmptySubview)]++;
            continue;
        }
        auto inner = recurse(gamma, sub, h.without_apex(), cfg, derive_seed(seed, {i, 3}));
        st.merge(inner.stats);
        if (inner.success()) {
            Embedding phi;
            phi.source = h.describe();
            phi.assignment.push_back(u);
            phi.assignment.insert(phi.assignment.end(), inner.embedding->assignment.begin(),
                                  inner.embedding->assignment.end());
            if (!is_copy_induced_in(G, gamma, h.graph(), phi))
                throw InternalError("embed_recursive produced a copy that is not induced in Gamma");
            out.embedding = std::move(phi);
            return out;
        }
    }
    out.reason = Reject::BudgetExhausted;
    st.rejects[to_string(Reject::BudgetExhausted)]++;
    return out;
}

}  // namespace

EmbedOutcome embed_recursive(const Graph& gamma, const HostView& view, const BipartitePattern& h,
                             const DrcConfig& cfg) {
    if (gamma.n() != view.host->n()) throw InputError("embed_recursive: Gamma and G differ in order");
    if (cfg.schedule.C.size() < h.l() + 1) throw InputError("embed_recursive: schedule does not cover level l");
    return recurse(gamma, view, h, cfg, cfg.seed);
}

std::vector<EmbedOutcome> embed_batch(const Graph& gamma, const HostView& view, const BipartitePattern& h,
                                      const DrcConfig& cfg, std::size_t runs, unsigned workers) {
    std::vector<EmbedOutcome> results(runs);
    workers = std::max(1u, workers ? workers : default_workers());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto body = [&] {
        for (;;) {
            const auto i = next++;
            if (i >= runs || failed) return;
            try {
                DrcConfig c = cfg;
                c.seed = derive_seed(cfg.seed, {i});
                results[i] = embed_recursive(gamma, view, h, c);
            } catch (...) {
                if (!failed.exchange(true)) failure = std::current_exception();
                return;
            }
        }
    };
    if (workers == 1) {
        body();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);
    return results;
}

SurvivorSample sample_nonneighbor_survivors(const Graph& gamma, const VertexSet& V, const VertexSet& W,
                                            std::size_t r, Rng& rng) {
    if (r > 0 && V.empty()) throw InputError("sample_nonneighbor_survivors: V is empty");
    SurvivorSample out;
    VertexSet tuple_set(gamma.n());
    const auto size = V.size();
    for (std::size_t i = 0; i < r; ++i) {
        const Vertex v = V.nth(rng.below(size));
        out.tuple.push_back(v);
        tuple_set.insert(v);
    }
    out.surviving = W - union_neighborhood(gamma, tuple_set);
    return out;
}

std::optional<std::vector<Vertex>> sample_independent_tuple(const Graph& gamma, const std::vector<VertexSet>& sets,
                                                            Rng& rng) {
    std::vector<Vertex> picks;
    picks.reserve(sets.size());
    for (const auto& s : sets) {
        if (s.empty()) throw InputError("sample_independent_tuple: empty set");
        picks.push_back(s.nth(rng.below(s.size())));
    }
    for (std::size_t i = 0; i < picks.size(); ++i)
        for (std::size_t j = i + 1; j < picks.size(); ++j)
            if (picks[i] == picks[j] || gamma.adjacent(picks[i], picks[j])) return std::nullopt;
    return picks;
}

}  // namespace indturan
