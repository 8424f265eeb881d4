#include "brute.hpp"

#include "indturan/drc.hpp"
#include "indturan/errors.hpp"
#include "indturan/generators.hpp"
#include "indturan/oracle.hpp"

#include <doctest.h>

#include <cmath>

using namespace indturan;

namespace {

Graph thin(const Graph& g, double keep, Seed seed) {
    Rng rng(seed);
    std::vector<Edge> edges;
    for (const auto& e : g.edges())
        if (rng.bernoulli(keep)) edges.push_back(e);
    return Graph(g.n(), edges);
}

// One vertex u0 joined to all of R (|R| = r) plus 99 vertices with a single R-neighbour each.
HostView star_plus_leaves(std::size_t r) {
    const std::size_t n = 100 + r;
    std::vector<Edge> edges;
    VertexSet U(n), R(n);
    for (Vertex i = 0; i < 100; ++i) U.insert(i);
    for (Vertex j = 100; j < n; ++j) {
        R.insert(j);
        edges.push_back({0, j});
    }
    for (Vertex i = 1; i < 100; ++i) edges.push_back({i, static_cast<Vertex>(100 + i % r)});
    return HostView(std::make_shared<const Graph>(n, edges), U, R);
}

DrcConfig soft_config(const BipartitePattern& h, Seed seed, double c = 0.5, double t = 1) {
    DrcConfig cfg;
    cfg.schedule = default_schedule(h, c, t);
    cfg.seed = seed;
    return cfg;
}

}  // namespace

TEST_SUITE("drc") {

TEST_CASE("pattern grammar") {
    const auto k12 = BipartitePattern::parse("bip l=1 B=2");
    CHECK(k12.l() == 1);
    CHECK(k12.b() == 2);
    CHECK(k12.a() == 0);
    CHECK(k12.d() == 1);
    CHECK(k12.e() == 2);

    const auto p = BipartitePattern::parse("bip l=2 B=3 A1=1,2");
    CHECK(p.a1()[0] == std::vector<std::size_t>{0});
    CHECK(p.a1()[1] == std::vector<std::size_t>{1, 2});
    CHECK(p.d() == 2);
    CHECK(p.e() == 9);
    CHECK(p.v() == 7);
    CHECK(is_bipartite(p.graph()));

    CHECK_THROWS_AS(BipartitePattern::parse("bip l=0 B=2"), InputError);
    CHECK_THROWS_AS(BipartitePattern::parse("bip l=1 B=2 A1=2"), InputError);
    CHECK_THROWS_AS(BipartitePattern::parse("bip l=1"), InputError);
    CHECK_THROWS_AS(BipartitePattern::parse("pat l=1 B=2"), InputError);
    CHECK_THROWS_AS(BipartitePattern::parse("bip l=1 B=x"), InputError);

    const auto from = BipartitePattern::from_graph(complete_bipartite(2, 2));
    CHECK(from.l() == 2);
    CHECK(from.d() == 2);
    const auto pend = BipartitePattern::from_graph(path_graph(4));
    CHECK(pend.v() == 4);
    CHECK(pend.e() == 3);
    CHECK_THROWS_AS(BipartitePattern::from_graph(cycle_graph(5)), InputError);
    CHECK_THROWS_AS(BipartitePattern::from_graph(cycle_graph(6)), InputError);
}

TEST_CASE("choose_delta") {
    // kappa = 2: 1 - 2 delta > sqrt(delta); 0.1 is feasible so the maximum is at least that.
    CHECK(1 - 2 * 0.1 > std::sqrt(0.1));
    const double d2 = choose_delta(2.0);
    CHECK(d2 >= 0.1);
    CHECK(d2 < 0.25);
    CHECK(1 - 2 * d2 > std::sqrt(d2));
    CHECK_FALSE(1 - 2 * (d2 + 0x1.0p-20) > std::sqrt(d2 + 0x1.0p-20));
    // Larger kappa loosens the constraint, so delta can only grow.
    double prev = 0;
    for (double k : {1.05, 1.1, 1.2}) {
        const double d = choose_delta(k);
        CHECK(d < 0.25);
        CHECK(d >= prev);
        prev = d;
    }
    CHECK(std::ldexp(choose_delta(1.25), 20) == std::floor(std::ldexp(choose_delta(1.25), 20)));
    CHECK_THROWS_AS(choose_delta(1.0), InputError);
}

TEST_CASE("delta_reduce on a biregular view keeps U") {
    const auto g = std::make_shared<const Graph>(complete_bipartite(6, 9));
    VertexSet U(15), R(15);
    for (Vertex v = 0; v < 6; ++v) U.insert(v);
    for (Vertex v = 6; v < 15; ++v) R.insert(v);
    ReductionReport rep;
    const auto out = delta_reduce(HostView(g, U, R), 0.1, {1.2, 2.0}, &rep);
    CHECK(out.U == U);
    CHECK(rep.iterations == 0);
}

TEST_CASE("delta_reduce hand trace") {
    // e = r + 99 and D = e/100. The leaves carry 99 of the mass; the loop drops
    // them iff 99 < 2 delta e, i.e. r > 396 at delta = 0.1.
    ReductionReport rep;
    const auto keep_leaves = delta_reduce(star_plus_leaves(100), 0.1, {1.25}, &rep);
    CHECK(keep_leaves.m() == 99);
    CHECK_FALSE(keep_leaves.U.contains(0));
    CHECK(rep.iterations == 0);
    CHECK(rep.avg_after == doctest::Approx(1.0));

    CHECK(delta_reduce(star_plus_leaves(396), 0.1, {1.25}).m() == 99);

    const auto lone = delta_reduce(star_plus_leaves(397), 0.1, {1.25}, &rep);
    CHECK(lone.U == VertexSet::of(lone.host->n(), {0}));
    CHECK(rep.iterations == 1);
    CHECK(rep.avg_after == doctest::Approx(397.0));

    const auto big = delta_reduce(star_plus_leaves(1000), 0.1, {1.25, 2.0});
    CHECK(big.m() == 1);
}

TEST_CASE("delta_reduce postconditions on random views") {
    std::mt19937_64 gen(404);
    for (int it = 0; it < 100; ++it) {
        const std::size_t n = 20 + it % 60;
        const auto g = std::make_shared<const Graph>(brute::random_graph(n, 0.05 + 0.01 * (it % 40), gen));
        const auto view = random_host_view(g, it);
        if (view.edges() == 0) continue;
        const double delta = 0.05 + 0.02 * (it % 10);
        const auto out = delta_reduce(view, delta, {1.2, 2.0});
        const double avg0 = view.avg_degree_U(), avg1 = out.avg_degree_U();
        out.U.for_each([&](Vertex u) {
            const double d = static_cast<double>(out.degree(u));
            CHECK(d >= delta * delta * avg1 - 1e-9);
            CHECK(d <= avg1 / (delta * delta) + 1e-9);
        });
        CHECK(avg1 >= delta * avg0 - 1e-9);
        for (double x : {1.2, 2.0})
            CHECK(out.m() * std::pow(avg1, x) >= std::pow(delta, x) * view.m() * std::pow(avg0, x) * (1 - 1e-9));
        CHECK(out.U.is_subset_of(view.U));
        CHECK(out.R == view.R);
    }
}

TEST_CASE("is_rich") {
    const auto c6 = cycle_graph(6);
    const auto host = std::make_shared<const Graph>(c6);
    const HostView view(host, VertexSet::of(6, {0, 2, 4}), VertexSet::of(6, {1, 3, 5}));
    const auto S = VertexSet::of(6, {1});
    CHECK(is_rich(view, c6, S, VertexSet(6), 0.5));  // deg 2 >= 0.5 * 3 * (2/3)
    CHECK(is_rich(view, c6, S, VertexSet::of(6, {0, 2}), 0.25));
    CHECK(is_rich(view, c6, S, VertexSet::of(6, {3, 4, 5}), 0.0));

    // Extra Gamma edges 0-4 and 2-4 make N_Gamma(4) swallow N_G(1) ∩ U.
    const Graph gamma(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}, {0, 4}, {2, 4}});
    CHECK_FALSE(is_rich(view, gamma, S, VertexSet::of(6, {4}), 1e-6));
    CHECK(is_rich(view, gamma, S, VertexSet::of(6, {4}), 0.0));
    CHECK_THROWS_AS(is_rich(view, c6, VertexSet(6), VertexSet(6), 0.1), InputError);
}

TEST_CASE("goodness_estimate") {
    const auto gamma = gnp(60, 0.5, 3);
    const auto host = std::make_shared<const Graph>(thin(gamma, 0.7, 4));
    const auto view = random_host_view(host, 5);
    const Vertex u = view.U.first();
    CHECK(goodness_estimate(view, gamma, u, 1.0, 0.9, 2, 100, 1).verdict == Goodness::Good);
    const auto strict = goodness_estimate(view, gamma, u, 0.0, 10.0, 1, 100, 1);
    CHECK(strict.verdict == Goodness::Bad);
    CHECK(strict.exhaustive);
    CHECK(strict.bad_fraction == 1.0);
}

TEST_CASE("goodness: exhaustive and Monte-Carlo agree") {
    std::mt19937_64 gen(55);
    int checked = 0;
    for (int it = 0; checked < 50; ++it) {
        const auto gamma = brute::random_graph(30, 0.5, gen);
        const auto host = std::make_shared<const Graph>(thin(gamma, 0.5, it));
        const auto view = random_host_view(host, it);
        Vertex u = 0;
        bool found = false;
        view.U.for_each([&](Vertex x) {
            const auto d = view.degree(x);
            if (!found && d >= 1 && d <= 8) u = x, found = true;
        });
        if (!found || view.q() == 0) continue;
        ++checked;
        const std::size_t k = 1 + it % 2;
        const double eps = 0.2, beta = 0.3;
        const auto exact = goodness_estimate(view, gamma, u, beta, eps, k, 0, 1);
        const auto mc = goodness_estimate(view, gamma, u, beta, eps, k, 20000, it + 1, 0);
        REQUIRE(exact.exhaustive);
        REQUIRE_FALSE(mc.exhaustive);
        CHECK(std::abs(mc.bad_fraction - exact.bad_fraction) <= mc.half_width);
        if (mc.verdict != Goodness::Uncertain) CHECK(mc.verdict == exact.verdict);
    }
}

TEST_CASE("default schedule values") {
    const auto h = BipartitePattern::parse("bip l=2 B=2");
    const auto s = default_schedule(h, 0.5, 8);
    CHECK(s.eps == doctest::Approx(std::pow(0.5, 3) / 4));
    CHECK(s.beta == doctest::Approx(std::pow(0.5, 4) / 8));  // C(2,2) = 1
    CHECK(s.kappa == doctest::Approx(1.25));
    CHECK(s.delta == choose_delta(1.25));
    for (std::size_t l = 1; l <= 2; ++l) {
        CHECK(s.C[l] == doctest::Approx(std::pow(2 * (1 - s.beta) * s.eps * s.delta, -double(l))));
        CHECK(s.Cp[l] == doctest::Approx(std::pow(s.delta, -2.0 * l)));
    }
    // the union bound the defaults are built for
    for (const char* spec : {"bip l=1 B=2", "bip l=2 B=3 A1=1,2", "bip l=1 B=4 A1=1"}) {
        const auto p = BipartitePattern::parse(spec);
        const auto sc = default_schedule(p, 0.5, 4);
        const double b = static_cast<double>(p.b());
        const double cb2 = std::pow(0.5, b * b);
        CHECK(1 - cb2 + brute::binom(p.b(), std::min(p.d(), p.b())) * 2 * sc.beta < 1 - cb2 / 2);
    }
    CHECK_THROWS_AS(default_schedule(h, 1.0, 8), InputError);
    CHECK_THROWS_AS(default_schedule(h, 0.5, 0.5), InputError);
}

TEST_CASE("sample_apex_copy") {
    const auto gamma = gnp(300, 0.6, 11);
    const auto host = std::make_shared<const Graph>(thin(gamma, 0.7, 12));
    const auto view = random_host_view(host, 13);

    const auto k11 = BipartitePattern::parse("bip l=1 B=1");
    const auto cfg11 = soft_config(k11, 1);
    Rng rng(3);
    const Vertex u = view.U.first();
    const auto one = sample_apex_copy(gamma, view, k11, u, cfg11, rng);
    REQUIRE(one.success());
    CHECK(host->adjacent(one.embedding->assignment[0], one.embedding->assignment[1]));

    const auto h = BipartitePattern::parse("bip l=1 B=2 A1=1");
    const auto cfg = soft_config(h, 1);
    std::size_t ok = 0, tries = 0;
    view.U.for_each([&](Vertex x) {
        if (ok || view.degree(x) == 0) return;
        for (int i = 0; i < 10000 && !ok; ++i, ++tries) {
            const auto res = sample_apex_copy(gamma, view, h, x, cfg, rng);
            if (res.success()) {
                ++ok;
                CHECK(is_copy_induced_in(*host, gamma, h.graph(), *res.embedding));
            } else {
                CHECK(res.reason != Reject::None);
            }
        }
    });
    CHECK(ok == 1);

    CHECK_THROWS_AS(sample_apex_copy(gamma, view, BipartitePattern::parse("bip l=2 B=2"), u, cfg, rng), InputError);
    CHECK_THROWS_AS(sample_apex_copy(gamma, view, h, view.R.first(), cfg, rng), InputError);
}

TEST_CASE("embed_recursive K22 and window cross-check") {
    const auto gamma = gnp(400, 0.6, 21);
    const auto host = std::make_shared<const Graph>(thin(gamma, 0.7, 22));
    const auto view = random_host_view(host, 23);
    const auto h = BipartitePattern::parse("bip l=2 B=2");
    std::mt19937_64 gen(9);
    std::size_t ok = 0;
    for (Seed s = 0; s < 40; ++s) {
        const auto res = embed_recursive(gamma, view, h, soft_config(h, s));
        if (!res.success()) continue;
        ++ok;
        const auto& phi = *res.embedding;
        CHECK(is_copy_induced_in(*host, gamma, h.graph(), phi));
        // 14-vertex window containing the image
        std::vector<Vertex> window = phi.assignment;
        while (window.size() < 14) {
            const Vertex v = static_cast<Vertex>(gen() % 400);
            if (std::find(window.begin(), window.end(), v) == window.end()) window.push_back(v);
        }
        CHECK(oracle::count_induced_in(compact_induced(gamma, window), compact_induced(*host, window), h.graph()) >= 1);
        CHECK(res.stats.reductions >= 2);
    }
    CHECK(ok >= 30);
}

TEST_CASE("strict guards and budget monotonicity") {
    const auto gamma = gnp(120, 0.5, 31);
    const auto host = std::make_shared<const Graph>(thin(gamma, 0.8, 32));
    const auto view = random_host_view(host, 33);
    const auto h = BipartitePattern::parse("bip l=2 B=2");
    auto cfg = soft_config(h, 1, 0.5, 4);
    cfg.enforce_guards = true;
    CHECK_THROWS_AS(embed_recursive(gamma, view, h, cfg), PreconditionError);

    for (Seed s = 0; s < 30; ++s) {
        auto small = soft_config(h, s, 0.5, 4);
        small.apex_budget = 2;
        small.tuple_budget = 2;
        auto large = small;
        large.apex_budget = 8;
        large.tuple_budget = 8;
        const auto a = embed_recursive(gamma, view, h, small);
        const auto b = embed_recursive(gamma, view, h, large);
        if (a.success()) CHECK(b.success());
    }
}

TEST_CASE("empty subview and batch determinism") {
    const auto g = std::make_shared<const Graph>(empty_graph(10));
    const auto view = random_host_view(g, 1);
    const auto h = BipartitePattern::parse("bip l=1 B=1");
    const auto res = embed_recursive(*g, view, h, soft_config(h, 1));
    CHECK(res.reason == Reject::EmptySubview);

    const auto gamma = gnp(100, 0.5, 2);
    const auto host = std::make_shared<const Graph>(gamma);
    const auto v2 = random_host_view(host, 3);
    const auto p = BipartitePattern::parse("bip l=1 B=2");
    const auto one = embed_batch(gamma, v2, p, soft_config(p, 4), 12, 1);
    const auto three = embed_batch(gamma, v2, p, soft_config(p, 4), 12, 3);
    for (std::size_t i = 0; i < 12; ++i) {
        CHECK(one[i].success() == three[i].success());
        if (one[i].success()) CHECK(one[i].embedding->assignment == three[i].embedding->assignment);
    }
}

TEST_CASE("sample_nonneighbor_survivors") {
    const auto g = gnp(50, 0.3, 1);
    Rng rng(2);
    const auto all = g.vertices();
    const auto W = VertexSet::of(50, {1, 2, 3, 40});
    CHECK(sample_nonneighbor_survivors(g, all, W, 0, rng).surviving == W);
    for (int i = 0; i < 20; ++i) {
        const auto res = sample_nonneighbor_survivors(empty_graph(50), all, W, 3, rng);
        CHECK(res.surviving == W);
        CHECK(res.tuple.size() == 3);
    }
    for (int i = 0; i < 20; ++i) {
        const auto res = sample_nonneighbor_survivors(g, all, all, 2, rng);
        auto expect = all;
        for (auto x : res.tuple) expect -= g.neighbors(x);
        CHECK(res.surviving == expect);
    }
}

TEST_CASE("sample_independent_tuple") {
    Rng rng(1);
    const auto k5 = complete_graph(5);
    const auto all = k5.vertices();
    for (int i = 0; i < 50; ++i) {
        CHECK(sample_independent_tuple(k5, {all}, rng).has_value());
        CHECK_FALSE(sample_independent_tuple(k5, {all, all}, rng).has_value());
    }
    CHECK_THROWS_AS(sample_independent_tuple(k5, {VertexSet(5)}, rng), InputError);
}

}  // TEST_SUITE
