#include "indturan/drc.hpp"
#include "indturan/errors.hpp"
#include "indturan/experiments.hpp"
#include "indturan/generators.hpp"
#include "indturan/graph.hpp"
#include "indturan/lower_bounds.hpp"
#include "indturan/oracle.hpp"
#include "indturan/sparseness.hpp"
#include "indturan/tree.hpp"
#include "indturan/version.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <regex>
#include <sstream>

using namespace indturan;

namespace {

enum Exit { kOk = 0, kInput = 3, kResource = 4, kPrecondition = 5, kInternal = 6 };

// Named small graphs, or an edge-list file.
Graph load_graph(const std::string& arg) {
    std::smatch m;
    if (std::regex_match(arg, m, std::regex(R"(K(\d+))"))) return complete_graph(std::stoul(m[1]));
    if (std::regex_match(arg, m, std::regex(R"(K(\d+),(\d+))"))) return complete_bipartite(std::stoul(m[1]), std::stoul(m[2]));
    if (std::regex_match(arg, m, std::regex(R"(C(\d+))"))) return cycle_graph(std::stoul(m[1]));
    if (std::regex_match(arg, m, std::regex(R"(P(\d+))"))) return path_graph(std::stoul(m[1]));
    if (std::regex_match(arg, m, std::regex(R"(S(\d+))"))) return star_graph(std::stoul(m[1]));
    if (arg == "petersen") return petersen_graph();
    return read_edge_list_file(arg);
}

std::string join(const std::vector<Vertex>& vs, const char* sep = " ") {
    std::ostringstream os;
    for (std::size_t i = 0; i < vs.size(); ++i) os << (i ? sep : "") << vs[i];
    return os.str();
}

void emit_graph(const Graph& g, const std::string& path, const std::string& comment) {
    if (path.empty() || path == "-") write_edge_list(std::cout, g, comment);
    else write_edge_list_file(path, g, comment);
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
    std::string family, out;
    std::size_t n = 0, k = 0, s = 2, r = 2, a = 0, b = 0, girth = 5;
    double p = 0.5;
    std::uint32_t q = 0;
    Seed seed = 1;
};

int cmd_generate(const GenerateArgs& a) {
    Graph g;
    std::ostringstream what;
    const auto& f = a.family;
    if (f == "gnp") g = gnp(a.n, a.p, a.seed), what << "gnp n=" << a.n << " p=" << a.p << " seed=" << a.seed;
    else if (f == "paley") g = paley(a.q), what << "paley q=" << a.q;
    else if (f == "clique-union") g = clique_union(a.k, a.s), what << "clique-union k=" << a.k << " s=" << a.s;
    else if (f == "incidence") g = projective_incidence(a.q), what << "projective incidence p=" << a.q;
    else if (f == "incidence-aux") g = incidence_auxiliary(a.k), what << "incidence auxiliary k=" << a.k;
    else if (f == "ksr-free")
        g = random_ksr_free(a.k, a.s, a.r, a.seed), what << "K_{s,r}-free k=" << a.k << " s=" << a.s << " r=" << a.r;
    else if (f == "high-girth")
        g = random_high_girth_bipartite(a.k, a.girth, a.seed), what << "bipartite k=" << a.k << " girth>=" << a.girth;
    else if (f == "complete") g = complete_graph(a.n), what << "K_" << a.n;
    else if (f == "empty") g = empty_graph(a.n), what << "empty n=" << a.n;
    else if (f == "cycle") g = cycle_graph(a.n), what << "C_" << a.n;
    else if (f == "path") g = path_graph(a.n), what << "P_" << a.n;
    else if (f == "star") g = star_graph(a.n), what << "star leaves=" << a.n;
    else if (f == "kbip") g = complete_bipartite(a.a, a.b), what << "K_{" << a.a << "," << a.b << "}";
    else if (f == "petersen") g = petersen_graph(), what << "petersen";
    else throw InputError("unknown family '" + f + "'");
    emit_graph(g, a.out, what.str());
    return kOk;
}

// ------------------------------------------------------------ check-sparse

struct SparseArgs {
    std::string graph, mode = "exact";
    double c = 0.5;
    std::size_t t = 2;
    std::uint64_t trials = 10000, budget = 4'000'000'000ULL;
    Seed seed = 1;
    unsigned workers = 0;
};

int cmd_check_sparse(const SparseArgs& a) {
    const Graph g = load_graph(a.graph);
    SparsenessReport rep;
    if (a.mode == "exact") rep = check_exact(g, a.c, a.t, {a.budget, a.workers});
    else if (a.mode == "random") rep = refute_random(g, a.c, a.t, a.trials, a.seed, a.workers);
    else throw InputError("mode must be exact or random");
    std::cout << to_string(rep.verdict) << " c=" << rep.c << " t=" << rep.t << " method=" << to_string(rep.method)
              << " work=" << rep.work;
    if (!rep.note.empty()) std::cout << " note=\"" << rep.note << '"';
    std::cout << '\n';
    if (rep.witness) {
        std::cout << "A: " << join(rep.witness->first.members()) << '\n';
        std::cout << "B: " << join(rep.witness->second.members()) << '\n';
    }
    switch (rep.verdict) {
        case Verdict::SparseCertified: return 0;
        case Verdict::Violated: return 1;
        default: return 2;
    }
}

// --------------------------------------------------------- construct-lower

struct LowerArgs {
    std::string graph, aux = "auto", cover = "greedy", out;
    std::size_t s = 2, r = 3, seeds = 1, oracle_cap = 14;
    Seed seed = 1;
};

int cmd_construct_lower(const LowerArgs& a) {
    const Graph gamma = load_graph(a.graph);
    CoverMode mode;
    if (a.cover == "greedy") mode = CoverMode::Greedy;
    else if (a.cover == "exact-small") mode = CoverMode::ExactSmall;
    else throw InputError("cover must be greedy or exact-small");
    const auto cover = clique_cover(gamma, mode);
    const auto pattern = complete_bipartite(a.s, a.r);
    std::cout << "seed,k,e_F,e_subgraph,guaranteed_bound,guarantee,oracle_verdict\n";
    for (std::size_t i = 0; i < a.seeds; ++i) {
        const Seed seed = derive_seed(a.seed, {i});
        Graph F;
        if (a.aux == "auto") F = a.s == 2 ? incidence_auxiliary(cover.size())
                                          : random_ksr_free(cover.size(), a.s, a.r, derive_seed(seed, {1}));
        else F = load_graph(a.aux);
        const auto res = build_random_quotient_subgraph(gamma, cover, F, derive_seed(seed, {2}), KsrTarget{a.s, a.r});
        std::string verdict = "skipped";
        if (gamma.n() <= a.oracle_cap)
            verdict = oracle::count_induced_in(res.subgraph, res.subgraph, pattern) == 0 ? "free" : "contains";
        std::cout << i << ',' << res.cover_size << ',' << F.edge_count() << ',' << res.subgraph.edge_count() << ','
                  << res.guaranteed_bound << ',' << to_string(res.guarantee) << ',' << verdict << '\n';
        if (i == 0 && !a.out.empty())
            write_edge_list_file(a.out, res.subgraph, "construct-lower seed index 0");
    }
    return kOk;
}

// ------------------------------------------------------------------- embed

struct EmbedArgs {
    std::string gamma, g, pattern, mode = "soft";
    double c = 0.5, t = 1;
    std::size_t budget = 32, tuple_budget = 64, runs = 1;
    Seed seed = 1;
    bool json = false, goodness = false;
};

BipartitePattern load_pattern(const std::string& spec) {
    if (spec.rfind("bip", 0) == 0) return BipartitePattern::parse(spec);
    return BipartitePattern::from_graph(load_graph(spec));
}

int cmd_embed(const EmbedArgs& a) {
    const Graph gamma = load_graph(a.gamma);
    const auto G = std::make_shared<const Graph>(load_graph(a.g));
    const auto H = load_pattern(a.pattern);
    if (a.mode != "strict" && a.mode != "soft") throw InputError("mode must be strict or soft");
    DrcConfig cfg;
    cfg.schedule = default_schedule(H, a.c, a.t);
    cfg.enforce_guards = a.mode == "strict";
    cfg.apex_budget = a.budget;
    cfg.tuple_budget = a.tuple_budget;
    cfg.check_goodness = a.goodness;
    cfg.seed = a.seed;
    const auto view = random_host_view(G, derive_seed(a.seed, {0x71E3ULL}));
    const auto outs = embed_batch(gamma, view, H, cfg, a.runs);
    EmbedStats total;
    std::size_t ok = 0;
    for (const auto& o : outs) {
        total.merge(o.stats);
        ok += o.success();
    }
    const EmbedOutcome* first = nullptr;
    for (const auto& o : outs)
        if (o.success()) {
            first = &o;
            break;
        }
    if (a.json) {
        nlohmann::json j;
        j["pattern"] = H.describe();
        j["runs"] = a.runs;
        j["successes"] = ok;
        j["embedding"] = first ? nlohmann::json(first->embedding->assignment) : nlohmann::json(nullptr);
        j["rejects"] = nlohmann::json::object();
        for (const auto& [k, v] : total.rejects) j["rejects"][k] = v;
        j["guards"] = nlohmann::json::array();
        for (const auto& g : outs.front().stats.guards)
            j["guards"].push_back({{"level", g.level},
                                   {"q", g.q},
                                   {"q_required", g.q_required},
                                   {"r", g.r},
                                   {"r_required", g.r_required},
                                   {"passed", g.passed}});
        std::cout << j.dump() << '\n';
    } else {
        std::cout << "pattern " << H.describe() << "\nsuccesses " << ok << '/' << a.runs << '\n';
        if (first) std::cout << "embedding " << join(first->embedding->assignment) << '\n';
        for (const auto& [k, v] : total.rejects) std::cout << "reject " << k << ' ' << v << '\n';
        for (const auto& g : outs.front().stats.guards)
            std::cout << "guard level=" << g.level << " q=" << g.q << " need=" << g.q_required << " r=" << g.r
                      << " need=" << g.r_required << (g.passed ? " ok" : " FAIL") << '\n';
    }
    return ok ? kOk : 1;
}

// -------------------------------------------------------------- embed-tree

struct TreeArgs {
    std::string gamma, g, tree, mode = "diagnostic", out;
    double c = 0.5, t = 1, C = 1;
    std::size_t budget = 1000, psucc = 2000;
    long long floor = -1;
    Seed seed = 1;
    bool exact = false;
};

LabeledTree load_tree(const std::string& arg) {
    if (std::filesystem::exists(arg)) return LabeledTree(read_edge_list_file(arg));
    // Inline "0-1,1-2,..."; a lone "0" is the single-vertex tree.
    std::vector<Edge> edges;
    std::size_t k = 1;
    std::stringstream ss(arg);
    std::string part;
    std::smatch m;
    while (std::getline(ss, part, ',')) {
        if (part.empty()) continue;
        if (std::regex_match(part, m, std::regex(R"((\d+)-(\d+))"))) {
            const auto u = static_cast<Vertex>(std::stoul(m[1])), v = static_cast<Vertex>(std::stoul(m[2]));
            edges.push_back({std::min(u, v), std::max(u, v)});
            k = std::max<std::size_t>(k, std::max(u, v) + 1);
        } else if (!std::regex_match(part, std::regex(R"(\d+)"))) {
            throw InputError("tree must be an edge-list file or 'u-v,u-v,...'");
        }
    }
    return LabeledTree::from_edges(k, edges);
}

std::string assignment(const std::vector<Vertex>& phi) {
    std::ostringstream os;
    bool sep = false;
    for (std::size_t v = 0; v < phi.size(); ++v)
        if (phi[v] != kUnset) os << (sep ? " " : "") << v << ':' << phi[v], sep = true;
    return os.str();
}

int cmd_embed_tree(const TreeArgs& a) {
    auto gamma = std::make_shared<const Graph>(load_graph(a.gamma));
    const Graph g = load_graph(a.g);
    TreeConfig cfg;
    cfg.c = a.c;
    cfg.t = a.t;
    cfg.C = a.C;
    cfg.seed = a.seed;
    cfg.psucc_samples = a.exact ? 0 : a.psucc;
    if (a.floor >= 0) cfg.degree_floor = static_cast<std::size_t>(a.floor);
    if (a.mode == "strict") cfg.mode = TreeMode::Strict;
    else if (a.mode != "diagnostic") throw InputError("mode must be diagnostic or strict");
    TreeSampler sampler(gamma, g, load_tree(a.tree), cfg);
    for (const auto& w : sampler.warnings()) std::cerr << "warning: " << w << '\n';

    if (a.exact) {
        const auto tables = sampler.exact_tables();
        std::ofstream file;
        if (!a.out.empty()) {
            file.open(a.out);
            if (!file) throw InputError("cannot write " + a.out);
        }
        std::ostream& os = a.out.empty() ? std::cout : file;
        os << "subtree,embedding,probability,lambda,flags\n";
        for (const auto& [key, tab] : tables) {
            for (const auto& [phi, p] : tab.copies)
                os << '"' << key_string(key) << "\"," << assignment(phi) << ',' << p << ',' << tab.lambda(phi)
                   << ",copy\n";
            for (const auto& [reason, p] : tab.rejects)
                os << '"' << key_string(key) << "\",," << p << ",," << reason << '\n';
        }
        for (const auto& [key, tab] : tables)
            std::cerr << "subtree " << key_string(key) << " p_succ=" << tab.p_succ << " total=" << tab.total() << '\n';
        return kOk;
    }

    const auto full = sampler.tree().full();
    std::cout << "chain";
    for (auto s : sampler.chain()) std::cout << ' ' << key_string(s);
    std::cout << '\n';
    for (auto s : sampler.chain())
        std::cout << "p_succ " << key_string(s) << ' ' << sampler.p_succ(s) << (sampler.p_exact(s) ? " exact" : " mc")
                  << '\n';
    Rng rng(derive_seed(a.seed, {0xD4A3ULL}));
    std::map<std::string, std::size_t> rejects;
    std::size_t ok = 0;
    std::optional<std::vector<Vertex>> first;
    for (std::size_t i = 0; i < a.budget; ++i) {
        auto d = sampler.draw(full, rng);
        if (d.success()) {
            ++ok;
            if (!first) first = d.phi;
        } else {
            rejects[d.reject]++;
        }
    }
    std::cout << "successes " << ok << '/' << a.budget << '\n';
    if (first) std::cout << "copy " << assignment(*first) << '\n';
    for (const auto& [k, v] : rejects) std::cout << "reject " << k << ' ' << v << '\n';
    return ok ? kOk : 1;
}

// ------------------------------------------------------------------ oracle

struct OracleArgs {
    std::string gamma, g, h;
    std::size_t n = 0;
    std::uint64_t max_nodes = 2'000'000'000ULL;
    double seconds = 0;
    bool witness = false;
};

int cmd_oracle(const std::string& which, const OracleArgs& a) {
    oracle::Budget budget{a.max_nodes, a.seconds};
    const Graph h = load_graph(a.h);
    if (which == "count") {
        const Graph gamma = load_graph(a.gamma);
        const Graph g = a.g.empty() ? gamma : load_graph(a.g);
        std::cout << oracle::count_induced_in(gamma, g, h, budget) << '\n';
    } else if (which == "max-avoid") {
        const auto res = oracle::max_subgraph_avoiding(load_graph(a.gamma), h, budget);
        std::cout << res.edges << '\n';
        if (a.witness) write_edge_list(std::cout, res.witness);
    } else {
        std::cout << oracle::turan_number(a.n, h, budget) << '\n';
    }
    return kOk;
}

// -------------------------------------------------------------------- scan

int cmd_scan(const std::string& spec_path, const std::string& out, unsigned workers) {
    const auto spec = load_runspec(spec_path);
    const auto res = run_scan(spec, workers);
    const auto path = write_scan(res, out);
    std::cout << "wrote " << path << " (" << res.table.rows.size() << " rows, " << res.errors << " errors)\n";
    if (res.fit) std::cout << "slope " << res.fit->slope << " +- " << res.fit->stderr_slope << '\n';
    return res.errors ? 1 : kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Induced Turan workbench"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* c_gen = app.add_subcommand("generate", "Write a graph as an edge list");
    c_gen->add_option("--family", gen.family,
                      "gnp|paley|clique-union|incidence|incidence-aux|ksr-free|high-girth|complete|empty|cycle|path|"
                      "star|kbip|petersen")
        ->required();
    c_gen->add_option("--n", gen.n);
    c_gen->add_option("--p", gen.p);
    c_gen->add_option("--q", gen.q, "field size (paley) or prime (incidence)");
    c_gen->add_option("--k", gen.k);
    c_gen->add_option("--s", gen.s);
    c_gen->add_option("--r", gen.r);
    c_gen->add_option("--a", gen.a);
    c_gen->add_option("--b", gen.b);
    c_gen->add_option("--girth", gen.girth);
    c_gen->add_option("--seed", gen.seed);
    c_gen->add_option("--out", gen.out, "output file (default stdout)");

    SparseArgs sp;
    auto* c_sp = app.add_subcommand("check-sparse", "Certify or refute (c,t)-sparseness");
    c_sp->add_option("--graph", sp.graph)->required();
    c_sp->add_option("--c", sp.c)->required();
    c_sp->add_option("--t", sp.t)->required();
    c_sp->add_option("--mode", sp.mode, "exact|random");
    c_sp->add_option("--trials", sp.trials);
    c_sp->add_option("--seed", sp.seed);
    c_sp->add_option("--budget", sp.budget);
    c_sp->add_option("--workers", sp.workers);

    LowerArgs lo;
    auto* c_lo = app.add_subcommand("construct-lower", "Random quotient construction of an induced-K_{s,r}-free subgraph");
    c_lo->add_option("--graph", lo.graph)->required();
    c_lo->add_option("--aux", lo.aux, "edge-list file or auto");
    c_lo->add_option("--s", lo.s);
    c_lo->add_option("--r", lo.r);
    c_lo->add_option("--seeds", lo.seeds);
    c_lo->add_option("--seed", lo.seed);
    c_lo->add_option("--cover", lo.cover, "greedy|exact-small");
    c_lo->add_option("--oracle-cap", lo.oracle_cap);
    c_lo->add_option("--out", lo.out, "write the first subgraph here");

    EmbedArgs em;
    auto* c_em = app.add_subcommand("embed", "Embed a d-bounded bipartite pattern");
    c_em->add_option("--gamma", em.gamma)->required();
    c_em->add_option("--g", em.g)->required();
    c_em->add_option("--pattern", em.pattern, "'bip l=.. B=.. A1=..' or an edge-list file")->required();
    c_em->add_option("--mode", em.mode, "strict|soft");
    c_em->add_option("--budget", em.budget, "apex attempts per level");
    c_em->add_option("--tuple-budget", em.tuple_budget);
    c_em->add_option("--runs", em.runs);
    c_em->add_option("--c", em.c);
    c_em->add_option("--t", em.t);
    c_em->add_option("--seed", em.seed);
    c_em->add_flag("--goodness", em.goodness);
    c_em->add_flag("--json", em.json);

    TreeArgs tr;
    auto* c_tr = app.add_subcommand("embed-tree", "Sample induced copies of a tree");
    c_tr->add_option("--gamma", tr.gamma)->required();
    c_tr->add_option("--g", tr.g)->required();
    c_tr->add_option("--tree", tr.tree, "edge-list file or 'u-v,u-v,...'")->required();
    c_tr->add_option("--c", tr.c)->required();
    c_tr->add_option("--mode", tr.mode, "diagnostic|strict");
    c_tr->add_option("--budget", tr.budget, "number of draws");
    c_tr->add_option("--seed", tr.seed);
    c_tr->add_option("--t", tr.t);
    c_tr->add_option("--C", tr.C);
    c_tr->add_option("--floor", tr.floor, "degree floor for the pre-peeling");
    c_tr->add_option("--psucc-samples", tr.psucc);
    c_tr->add_flag("--exact", tr.exact, "emit exact tables as CSV");
    c_tr->add_option("--out", tr.out, "CSV path for --exact");

    OracleArgs orc;
    auto* c_or = app.add_subcommand("oracle", "Brute-force ground truth");
    c_or->require_subcommand(1);
    auto* c_or_count = c_or->add_subcommand("count", "labelled copies of H in G induced in Gamma");
    c_or_count->add_option("--gamma", orc.gamma)->required();
    c_or_count->add_option("--g", orc.g, "defaults to Gamma");
    c_or_count->add_option("--h", orc.h)->required();
    auto* c_or_max = c_or->add_subcommand("max-avoid", "largest subgraph of Gamma with no induced H");
    c_or_max->add_option("--gamma", orc.gamma)->required();
    c_or_max->add_option("--h", orc.h)->required();
    c_or_max->add_flag("--witness", orc.witness);
    auto* c_or_tu = c_or->add_subcommand("turan", "ex(n, H)");
    c_or_tu->add_option("--n", orc.n)->required();
    c_or_tu->add_option("--h", orc.h)->required();
    for (auto* c : {c_or_count, c_or_max, c_or_tu}) {
        c->add_option("--max-nodes", orc.max_nodes);
        c->add_option("--seconds", orc.seconds);
    }

    std::string spec_path, out_dir;
    unsigned workers = 0;
    auto* c_scan = app.add_subcommand("scan", "Run a TOML scan spec");
    c_scan->add_option("--spec", spec_path)->required();
    c_scan->add_option("--out", out_dir)->required();
    c_scan->add_option("--workers", workers, "overrides INDTURAN_WORKERS");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*c_gen) return cmd_generate(gen);
        if (*c_sp) return cmd_check_sparse(sp);
        if (*c_lo) return cmd_construct_lower(lo);
        if (*c_em) return cmd_embed(em);
        if (*c_tr) return cmd_embed_tree(tr);
        if (*c_or) return cmd_oracle(*c_or_count ? "count" : *c_or_max ? "max-avoid" : "turan", orc);
        if (*c_scan) return cmd_scan(spec_path, out_dir, workers);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kInput;
    } catch (const ResourceError& e) {
        std::cerr << "resource error: " << e.what();
        if (e.best_found()) std::cerr << " (best found " << *e.best_found() << ')';
        std::cerr << '\n';
        return kResource;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition failed: " << e.what() << '\n';
        return kPrecondition;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternal;
    }
    return kOk;
}
