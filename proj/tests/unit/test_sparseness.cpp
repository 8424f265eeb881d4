#include "brute.hpp"

#include "indturan/errors.hpp"
#include "indturan/generators.hpp"
#include "indturan/sparseness.hpp"

#include <doctest.h>

#include <chrono>

using namespace indturan;

TEST_SUITE("sparseness") {

TEST_CASE("check_exact on the named instances") {
    const auto k4 = check_exact(complete_graph(4), 0.6, 2);
    CHECK(k4.verdict == Verdict::Violated);
    REQUIRE(k4.witness);
    CHECK(witness_is_valid(complete_graph(4), k4));
    // an edge as A = B already gives 2 > 0.4 * 4
    const auto edge = VertexSet::of(4, {0, 1});
    CHECK(pair_count(complete_graph(4), edge, edge) == 2);
    CHECK(exceeds_density(2, 0.6, 2, 2));

    CHECK(check_exact(clique_union(4, 2), 0.5, 8).verdict == Verdict::SparseCertified);
    for (std::size_t t = 1; t <= 6; ++t)
        CHECK(check_exact(empty_graph(6), 0.9, t).verdict == Verdict::SparseCertified);
}

TEST_CASE("check_exact agrees with the all-sizes search") {
    std::mt19937_64 gen(1234);
    for (int it = 0; it < 40; ++it) {
        const std::size_t n = 5 + it % 5;
        const auto g = brute::random_graph(n, 0.3 + 0.1 * (it % 5), gen);
        for (std::size_t t : {2u, 3u}) {
            for (auto [num, den] : {std::pair<int, int>{1, 4}, {1, 2}}) {
                const double c = static_cast<double>(num) / den;
                const auto rep = check_exact(g, c, t);
                REQUIRE(rep.verdict != Verdict::Inconclusive);
                CHECK((rep.verdict == Verdict::Violated) == brute::violates_any_size(g, t, num, den));
                if (rep.witness) CHECK(witness_is_valid(g, rep));
            }
        }
    }
}

TEST_CASE("check_exact is monotone in c and closed under subgraphs") {
    std::mt19937_64 gen(77);
    for (int it = 0; it < 20; ++it) {
        const auto g = brute::random_graph(10, 0.35, gen);
        const std::size_t t = 3;
        for (double c : {0.2, 0.3, 0.4, 0.5}) {
            if (check_exact(g, c, t).verdict != Verdict::SparseCertified) continue;
            for (double c2 : {0.05, 0.1, c})
                if (c2 <= c) CHECK(check_exact(g, c2, t).verdict == Verdict::SparseCertified);
            std::vector<Edge> keep;
            std::bernoulli_distribution coin(0.6);
            for (const auto& e : g.edges())
                if (coin(gen)) keep.push_back(e);
            CHECK(check_exact(Graph(10, keep), c, t).verdict == Verdict::SparseCertified);
        }
    }
}

TEST_CASE("certified sparseness forces t >= omega when c > 1/omega") {
    std::mt19937_64 gen(99);
    for (int it = 0; it < 30; ++it) {
        const auto g = brute::random_graph(9, 0.5, gen);
        const auto w = brute::clique_number(g);
        for (std::size_t t = 1; t <= 9; ++t)
            for (double c : {0.3, 0.45, 0.6}) {
                if (c <= 1.0 / static_cast<double>(w)) continue;
                if (check_exact(g, c, t).verdict == Verdict::SparseCertified) CHECK(t >= w);
            }
    }
}

TEST_CASE("check_exact gives up past its budget") {
    const auto rep = check_exact(gnp(40, 0.5, 1), 0.5, 10, {1000, 1});
    CHECK(rep.verdict == Verdict::Inconclusive);
    CHECK_FALSE(rep.witness);
}

TEST_CASE("check_exact is independent of the worker count") {
    const auto g = gnp(16, 0.4, 3);
    const auto one = check_exact(g, 0.35, 4, {4'000'000'000ULL, 1});
    const auto many = check_exact(g, 0.35, 4, {4'000'000'000ULL, 3});
    CHECK(one.verdict == many.verdict);
}

TEST_CASE("refute_random") {
    for (std::size_t t = 2; t <= 5; ++t) {
        const auto rep = refute_random(complete_graph(8), 1.0 / t + 0.05, t, 20, 1);
        CHECK(rep.verdict == Verdict::Violated);
        CHECK(witness_is_valid(complete_graph(8), rep));
    }
    // K_{4,4} planted on 0..7 inside a sparse host
    std::vector<Edge> edges;
    for (Vertex a = 0; a < 4; ++a)
        for (Vertex b = 4; b < 8; ++b) edges.push_back({a, b});
    edges.push_back({10, 11});
    const Graph host(20, edges);
    const auto rep = refute_random(host, 0.5, 4, 2000, 5);
    CHECK(rep.verdict == Verdict::Violated);
    CHECK(witness_is_valid(host, rep));

    const auto never = refute_random(empty_graph(10), 0.5, 3, 50, 1);
    CHECK(never.verdict == Verdict::Inconclusive);
}

TEST_CASE("refute_random stays inconclusive on a dense random graph with large t") {
    const auto g = gnp(200, 0.5, 17);
    const auto rep = refute_random(g, 0.25, 60, 10000, 3);
    CHECK(rep.verdict == Verdict::Inconclusive);
}

TEST_CASE("clique_number") {
    CHECK(clique_number(complete_graph(5)) == 5);
    CHECK(clique_number(cycle_graph(5)) == 2);
    CHECK(clique_number(paley(25)) == 5);
    CHECK(clique_number(empty_graph(4)) == 1);
    std::mt19937_64 gen(4);
    for (int it = 0; it < 20; ++it) {
        const auto g = brute::random_graph(14, 0.5, gen);
        const auto mc = maximum_clique(g);
        CHECK(mc.size() == brute::clique_number(g));
        CHECK(is_clique(g, VertexSet::from(g.n(), mc)));
    }
    try {
        clique_number(gnp(300, 0.9, 1), 50);
        FAIL("budget ignored");
    } catch (const ResourceError& e) {
        REQUIRE(e.best_found());
        CHECK(*e.best_found() >= 1);
    }
}

TEST_CASE("clique_cover") {
    std::vector<Edge> matching;
    for (Vertex i = 0; i < 6; ++i) matching.push_back({2 * i, 2 * i + 1});
    const Graph m(12, matching);
    CHECK(clique_cover(m).size() == 6);
    CHECK(clique_cover(complete_graph(7)).size() == 1);
    const auto c5 = clique_cover(cycle_graph(5), CoverMode::ExactSmall);
    CHECK(c5.size() == 3);
    CHECK(is_valid_cover(cycle_graph(5), c5));
    std::mt19937_64 gen(6);
    for (int it = 0; it < 20; ++it) {
        const auto g = brute::random_graph(12, 0.5, gen);
        const auto greedy = clique_cover(g);
        const auto exact = clique_cover(g, CoverMode::ExactSmall);
        CHECK(is_valid_cover(g, greedy));
        CHECK(is_valid_cover(g, exact));
        CHECK(exact.size() <= greedy.size());
        CHECK(exact.size() * brute::clique_number(g) >= g.n());
    }
    CHECK_THROWS_AS(clique_cover(empty_graph(21), CoverMode::ExactSmall), InputError);
}

TEST_CASE("subfield cliques") {
    const auto p9 = paley(9);
    for (const auto& s : subfield_cliques(9, 20, 3)) {
        CHECK(s.size() == 3);
        CHECK(is_clique(p9, s));
    }
    for (std::uint32_t p : {3u, 5u}) {
        const auto g = paley(p * p);
        VertexSet base(p * p);
        for (Vertex x = 0; x < p; ++x) base.insert(x);
        CHECK(is_clique(g, base));
    }
    CHECK(subfield_cliques(25, 0, 1).empty());
    CHECK_THROWS_AS(subfield_cliques(13, 1, 1), InputError);
}

}  // TEST_SUITE
