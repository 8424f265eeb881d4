// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "brute.hpp"
#include "trees.hpp"

#include "indturan/drc.hpp"
#include "indturan/errors.hpp"
#include "indturan/experiments.hpp"
#include "indturan/generators.hpp"
#include "indturan/lower_bounds.hpp"
#include "indturan/oracle.hpp"
#include "indturan/sparseness.hpp"
#include "indturan/tree.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

using namespace indturan;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

Graph thin(const Graph& g, double keep, Seed seed) {
    Rng rng(seed);
    std::vector<Edge> edges;
    for (const auto& e : g.edges())
        if (rng.bernoulli(keep)) edges.push_back(e);
    return Graph(g.n(), edges);
}

bool brute_c_unique(const Graph& gamma, const Graph& g, const std::vector<Vertex>& image, double c) {
    const auto A = brute::matrix(gamma);
    for (std::size_t i = 0; i < image.size(); ++i) {
        std::size_t deg = 0, kept = 0;
        g.neighbors(image[i]).for_each([&](Vertex y) {
            ++deg;
            bool blocked = false;
            for (std::size_t j = 0; j < image.size(); ++j)
                if (j != i && A[image[j]][y]) blocked = true;
            kept += !blocked;
        });
        if (double(kept) + 1e-9 < std::pow(c, double(image.size()) - 1) * double(deg)) return false;
    }
    return true;
}

bool brute_induced(const Graph& gamma, const Graph& g, const Graph& pattern, const std::vector<Vertex>& image) {
    for (std::size_t i = 0; i < image.size(); ++i)
        for (std::size_t j = i + 1; j < image.size(); ++j) {
            if (image[i] == image[j]) return false;
            if (pattern.adjacent(Vertex(i), Vertex(j)) ? !g.adjacent(image[i], image[j])
                                                       : gamma.adjacent(image[i], image[j]))
                return false;
        }
    return true;
}

// 1. Exhaustive all-sizes search against the size-t checker.
Outcome sparseness_agreement() {
    std::mt19937_64 gen(1001);
    std::size_t agree = 0, violated = 0;
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = 6 + i % 7;
        const double p = 0.05 + 0.5 * double(gen() % 1000) / 1000.0;
        const auto g = brute::random_graph(n, p, gen);
        const std::size_t t = 2 + i % 3;
        const bool quarter = (i / 3) % 2 == 0;
        const double c = quarter ? 0.25 : 0.5;
        const bool all_sizes = brute::violates_any_size(g, t, 1, quarter ? 4 : 2);
        const auto rep = check_exact(g, c, t);
        if (rep.verdict == Verdict::Inconclusive) continue;
        const bool size_t_only = rep.verdict == Verdict::Violated;
        if (size_t_only && !witness_is_valid(g, rep)) continue;
        agree += all_sizes == size_t_only;
        violated += size_t_only;
    }
    std::ostringstream os;
    os << agree << "/200 agree (" << violated << " violated)";
    return {agree == 200, os.str()};
}

// 2. Fixed small instances.
Outcome example_regression() {
    const auto cu = check_exact(clique_union(4, 2), 0.5, 8);
    const auto k4 = check_exact(complete_graph(4), 0.6, 2);
    const std::size_t w9 = brute::clique_number(paley(9));
    const std::size_t w25 = brute::clique_number(paley(25));
    const std::size_t w49 = brute::clique_number(paley(49));
    std::ostringstream os;
    os << "clique_union(4,2) " << to_string(cu.verdict) << ", K4 " << to_string(k4.verdict) << ", omega(P9,P25,P49) = "
       << w9 << "," << w25 << "," << w49;
    const bool ok = cu.verdict == Verdict::SparseCertified && k4.verdict == Verdict::Violated &&
                    witness_is_valid(complete_graph(4), k4) && w9 == 3 && w25 == 5 && w49 == 7;
    return {ok, os.str()};
}

// 3. Random quotient construction with a K_{2,3}-free auxiliary.
Outcome construction_k23() {
    const auto k23 = complete_bipartite(2, 3);
    std::size_t clean = 0, hits = 0;
    double edges = 0, bound = 0;
    bool f_ok = true;
    for (Seed s = 0; s < 100; ++s) {
        const auto gamma = gnp(30, 0.5, 3000 + s);
        const auto cover = clique_cover(gamma);
        const auto F = incidence_auxiliary(cover.size());
        f_ok &= is_bipartite(F) && !brute::has_ksr(F, 2, 3);
        const auto res = build_random_quotient_subgraph(gamma, cover, F, s, KsrTarget{2, 3});
        edges += double(res.subgraph.edge_count());
        bound += double(gamma.edge_count()) * double(F.edge_count()) / brute::binom(cover.size(), 2);
        Rng rng(derive_seed(77, {s}));
        std::size_t local = 0;
        for (int w = 0; w < 50; ++w) {
            std::vector<Vertex> all(30);
            std::iota(all.begin(), all.end(), 0);
            rng.shuffle(std::span<Vertex>(all));
            all.resize(14);
            const auto window = compact_induced(res.subgraph, all);
            local += oracle::count_induced_in(window, window, k23) > 0;
        }
        hits += local;
        clean += local == 0;
    }
    std::ostringstream os;
    os << clean << "/100 clean, " << hits << " window hits, mean edges " << edges / 100 << " vs 0.9*bound "
       << 0.9 * bound / 100;
    return {f_ok && clean == 100 && edges >= 0.9 * bound, os.str()};
}

// 4. Every success of the recursive sampler is induced in Gamma.
Outcome drc_soundness() {
    const std::vector<std::string> patterns{"bip l=1 B=2", "bip l=2 B=2", "bip l=1 B=2 A1=1"};
    const std::size_t per = 3334;
    std::size_t ok = 0, bad = 0, runs = 0;
    std::map<std::string, std::size_t> got;
    for (std::size_t pi = 0; pi < patterns.size(); ++pi) {
        const auto h = BipartitePattern::parse(patterns[pi]);
        for (Seed host = 0; got[patterns[pi]] < per && host < 200; ++host) {
            const auto gamma = gnp(120, 0.3, derive_seed(4000, {pi, host}));
            const auto G = std::make_shared<const Graph>(thin(gamma, 0.8, derive_seed(4001, {pi, host})));
            const auto view = random_host_view(G, derive_seed(4002, {pi, host}));
            DrcConfig cfg;
            cfg.schedule = default_schedule(h, 0.5, 1);
            cfg.seed = derive_seed(4003, {pi, host});
            const auto outs = embed_batch(gamma, view, h, cfg, 400, 1);
            runs += outs.size();
            for (const auto& o : outs) {
                if (!o.success()) continue;
                const bool lib = is_copy_induced_in(*G, gamma, h.graph(), *o.embedding);
                const bool mine = brute_induced(gamma, *G, h.graph(), o.embedding->assignment);
                if (lib && mine) ++ok;
                else ++bad;
                ++got[patterns[pi]];
            }
        }
    }
    std::ostringstream os;
    os << ok << " sound successes, " << bad << " violations over " << runs << " runs (";
    for (const auto& p : patterns) os << got[p] << (p == patterns.back() ? ")" : ", ");
    return {bad == 0 && ok >= 10000, os.str()};
}

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

// 5. Reduction conclusions on random views plus the pinned irregular trace.
Outcome reduction_postconditions() {
    std::mt19937_64 gen(5005);
    std::size_t checked = 0, failed = 0;
    for (int it = 0; it < 500; ++it) {
        const std::size_t n = 20 + it % 120;
        const auto g = std::make_shared<const Graph>(brute::random_graph(n, 0.03 + 0.005 * (it % 80), gen));
        const auto view = random_host_view(g, Seed(it));
        if (view.edges() == 0) continue;
        const double delta = 0.05 + 0.02 * (it % 10);
        const std::vector<double> ex{1.0 + 1.0 / double(3 + it % 5), 2.0};
        const auto out = delta_reduce(view, delta, ex);
        const double a0 = view.avg_degree_U(), a1 = out.avg_degree_U();
        bool ok = a1 >= delta * a0 - 1e-9 && out.U.is_subset_of(view.U) && out.m() > 0;
        out.U.for_each([&](Vertex u) {
            const double d = double(out.degree(u));
            ok &= d >= delta * delta * a1 - 1e-9 && d <= a1 / (delta * delta) + 1e-9;
        });
        for (double x : ex) ok &= out.m() * std::pow(a1, x) >= std::pow(delta, x) * view.m() * std::pow(a0, x) * (1 - 1e-9);
        ++checked;
        failed += !ok;
    }
    ReductionReport rep;
    const bool t1 = delta_reduce(star_plus_leaves(396), 0.1, {1.25}).m() == 99;
    const auto lone = delta_reduce(star_plus_leaves(397), 0.1, {1.25}, &rep);
    const bool t2 = lone.m() == 1 && lone.U.contains(0) && rep.iterations == 1;
    std::ostringstream os;
    os << checked << " views, " << failed << " failures, hand trace " << (t1 && t2 ? "ok" : "broken");
    return {failed == 0 && checked >= 450 && t1 && t2, os.str()};
}

// 6. Survivor and independent-tuple frequencies on 1024 disjoint edges.
Outcome probability_bounds() {
    const auto gamma = clique_union(1024, 2);
    const std::size_t n = gamma.n();
    const double c = 0.5, t = 8;
    const auto V = gamma.vertices();
    const std::size_t N = 100000;

    // Closed forms: the two picks remove at most 2 vertices of W = V, and a pair
    // fails independence iff equal or clique-mates.
    const double fail_closed = 0.0;
    const double indep_closed = double(n - 2) / double(n);
    // Exhaustive over all ordered pairs, independent of the closed forms.
    std::uint64_t fail_pairs = 0, indep_pairs = 0;
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = 0; b < n; ++b) {
            const auto removed = (gamma.neighbors(a) | gamma.neighbors(b)).size();
            fail_pairs += double(n - removed) < c * c * double(n);
            indep_pairs += a != b && !gamma.adjacent(a, b);
        }
    const double fail_exact = double(fail_pairs) / double(n * n);
    const double indep_exact = double(indep_pairs) / double(n * n);

    Rng rng(derive_seed(6006, {}));
    std::size_t fails = 0, succ = 0;
    for (std::size_t i = 0; i < N; ++i) {
        const auto s = sample_nonneighbor_survivors(gamma, V, V, 2, rng);
        fails += double(s.surviving.size()) < c * c * double(n);
        succ += sample_independent_tuple(gamma, {V, V}, rng).has_value();
    }
    const double f = double(fails) / N, q = double(succ) / N;
    const double fail_bound = 2 * t / double(n), indep_bound = std::pow(c, 4);
    const double sd_f = std::sqrt(fail_bound * (1 - fail_bound) / N);
    const double sd_q = std::sqrt(indep_bound * (1 - indep_bound) / N);
    const double sd_exact = std::sqrt(indep_exact * (1 - indep_exact) / N);
    const bool ok = f <= fail_bound + 3 * sd_f && q >= indep_bound - 3 * sd_q &&
                    std::abs(fail_exact - fail_closed) <= 1e-6 && std::abs(indep_exact - indep_closed) <= 1e-6 &&
                    std::abs(q - indep_exact) <= 3 * sd_exact + 1e-12 && f == fail_exact;
    std::ostringstream os;
    os.precision(6);
    os << "fail freq " << f << " <= " << fail_bound << ", indep freq " << q << " >= " << indep_bound
       << ", exact " << indep_exact << " vs closed " << indep_closed;
    return {ok, os.str()};
}

// 7. Tree sampler mass, soundness and peeling.
Outcome tree_sampler() {
    bool ok = true;
    std::ostringstream os;

    const auto tri = std::make_shared<const Graph>(clique_union(2, 3));
    double worst = 0;
    for (const auto& shape : {Graph(2, {{0, 1}}), path_graph(3), path_graph(4), star_graph(3)}) {
        TreeConfig cfg;
        cfg.c = 0.25;
        TreeSampler s(tri, *tri, LabeledTree(shape), cfg);
        for (const auto& [k, tab] : s.exact_tables()) worst = std::max(worst, std::abs(tab.total() - 1.0));
    }
    ok &= worst <= 1e-12;
    os << "mass error " << worst;

    const auto gamma = gnp(200, 0.12, 7007);
    const auto G = thin(gamma, 0.85, 7008);
    const auto gp = std::make_shared<const Graph>(gamma);
    std::size_t draws = 0, copies = 0, bad = 0;
    for (const auto& shape : {Graph(2, {{0, 1}}), path_graph(3), path_graph(4), star_graph(3)}) {
        TreeConfig cfg;
        cfg.c = 0.3;
        cfg.seed = 7009;
        cfg.psucc_samples = 200;
        TreeSampler s(gp, G, LabeledTree(shape), cfg);
        Rng rng(derive_seed(7010, {shape.n(), shape.max_degree()}));
        for (int i = 0; i < 2500; ++i) {
            const auto d = s.draw(s.tree().full(), rng);
            ++draws;
            if (!d.success()) continue;
            ++copies;
            std::vector<Vertex> img(d.phi->begin(), d.phi->begin() + shape.n());
            if (!brute_induced(gamma, s.host(), shape, img) || !brute_c_unique(gamma, s.host(), img, 0.3)) ++bad;
        }
    }
    ok &= bad == 0 && draws == 10000 && copies > 0;
    os << ", " << copies << "/" << draws << " copies, " << bad << " unsound";

    std::size_t trees = 0, broken = 0;
    for (std::size_t k = 1; k <= 8; ++k)
        brute::for_each_labelled_tree(k, [&](const Graph& g) {
            const LabeledTree t(g);
            ++trees;
            broken += !satisfies_peeling(t, build_peeling(t));
        });
    ok &= broken == 0 && trees == 1 + 1 + 3 + 16 + 125 + 1296 + 16807 + 262144;
    os << ", peeling ok on " << trees - broken << "/" << trees << " trees";
    return {ok, os.str()};
}

// 8. Oracle checks.
Outcome oracle_consistency() {
    std::mt19937_64 gen(8008);
    std::size_t sum_ok = 0;
    for (int i = 0; i < 100; ++i) {
        const std::size_t n = 5 + i % 15;
        const auto gamma = brute::random_graph(n, 0.5, gen);
        std::vector<Edge> kept;
        for (const auto& e : gamma.edges())
            if (gen() % 3) kept.push_back(e);
        const Graph g(n, kept);
        sum_ok += oracle::count_induced_in(gamma, g, complete_graph(2)) == 2 * g.edge_count();
    }
    const auto c4 = oracle::max_subgraph_avoiding(cycle_graph(4), cycle_graph(4));
    const bool witness_clean = oracle::count_induced_in(cycle_graph(4), c4.witness, cycle_graph(4)) == 0;
    const auto ex = oracle::turan_number(5, complete_graph(3));
    std::ostringstream os;
    os << sum_ok << "/100 sum rule, ex(C4,C4) = " << c4.edges << ", ex(5,K3) = " << ex;
    return {sum_ok == 100 && c4.edges == 3 && witness_clean && ex == 6, os.str()};
}

// 9. Construction exponent on G(n, 1/2).
Outcome scaling_trend() {
    const auto spec = parse_runspec(R"(
id = "construction-gnp"
experiment = "construction-scaling"
seed = 9009
seeds = 5
[graph]
family = "gnp"
n = [128, 256, 512, 1024]
p = 0.5
[pattern]
s = 2
r = 2
)");
    const auto res = run_scan(spec, 0);
    std::ostringstream os;
    if (!res.fit || res.errors) {
        os << "no fit (" << res.errors << " cell errors)";
        return {false, os.str()};
    }
    os.precision(4);
    os << "slope " << res.fit->slope << " +- " << res.fit->stderr_slope << " over " << res.fit->points
       << " points, target [1.35, 1.65]";
    return {std::abs(res.fit->slope - 1.5) <= 0.15, os.str()};
}

}  // namespace

int main() {
    using Clock = std::chrono::steady_clock;
    std::map<int, bool> results;
    auto run = [&](int id, const char* name, double limit_s, const std::function<Outcome()>& f) {
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = f();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        const bool in_time = limit_s <= 0 || secs <= limit_s;
        const bool pass = o.pass && in_time;
        results[id] = pass;
        std::printf("criterion %2d %-28s %s  %.1fs%s  %s\n", id, name, pass ? "PASS" : "FAIL", secs,
                    in_time ? "" : " (over time limit)", o.detail.c_str());
        std::fflush(stdout);
    };
    run(1, "sparseness-dual-check", 120, sparseness_agreement);
    run(2, "example-regression", 60, example_regression);
    run(3, "construction-k23", 300, construction_k23);
    run(4, "drc-soundness", 600, drc_soundness);
    run(5, "reduction-postconditions", 0, reduction_postconditions);
    run(6, "probability-bounds", 0, probability_bounds);
    run(7, "tree-sampler", 0, tree_sampler);
    run(8, "oracle-consistency", 0, oracle_consistency);
    run(9, "scaling-trend", 900, scaling_trend);
    // Asymptotic statements are out of reach numerically; they stand on the property criteria above.
    const bool covered = results[4] && results[5] && results[6] && results[7] && results[8];
    std::printf("criterion 10 %-28s %s  asymptotic claims not reproduced; covered by criteria 4-8\n",
                "asymptotics-by-properties", covered ? "PASS" : "FAIL");
    results[10] = covered;
    int failed = 0;
    for (const auto& [id, ok] : results) failed += !ok;
    std::printf("%d/10 criteria passed\n", 10 - failed);
    return failed ? 1 : 0;
}
