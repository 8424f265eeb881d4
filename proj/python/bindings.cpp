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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace indturan;

namespace {

using EdgePairs = std::vector<std::pair<Vertex, Vertex>>;

Graph make_graph(std::size_t n, const EdgePairs& pairs) {
    std::vector<Edge> edges;
    edges.reserve(pairs.size());
    for (auto [u, v] : pairs) edges.push_back({u, v});
    return Graph(n, edges);
}

EdgePairs edge_pairs(const Graph& g) {
    EdgePairs out;
    for (const auto& e : g.edges()) out.emplace_back(e.u, e.v);
    return out;
}

VertexSet as_set(const Graph& g, const std::vector<Vertex>& vs) { return VertexSet::from(g.n(), vs); }

py::dict report_dict(const SparsenessReport& r) {
    py::dict d;
    d["verdict"] = to_string(r.verdict);
    d["c"] = r.c;
    d["t"] = r.t;
    d["method"] = to_string(r.method);
    d["work"] = r.work;
    d["note"] = r.note;
    if (r.witness) d["witness"] = py::make_tuple(r.witness->first.members(), r.witness->second.members());
    else d["witness"] = py::none();
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.attr("__version__") = kVersion;

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<InternalError>(m, "InternalError", PyExc_AssertionError);

    py::class_<Graph>(m, "Graph")
        .def(py::init(&make_graph), py::arg("n"), py::arg("edges") = EdgePairs{})
        .def_property_readonly("n", &Graph::n)
        .def("edge_count", &Graph::edge_count)
        .def("degree", &Graph::degree)
        .def("adjacent", &Graph::adjacent)
        .def("neighbors", [](const Graph& g, Vertex v) { return g.neighbors(v).members(); })
        .def("edges", &edge_pairs)
        .def("induced", [](const Graph& g, const std::vector<Vertex>& vs) { return compact_induced(g, vs); })
        .def("complement", &Graph::complement)
        .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
        .def("__repr__", [](const Graph& g) {
            return "<Graph n=" + std::to_string(g.n()) + " m=" + std::to_string(g.edge_count()) + ">";
        });

    m.def("read_edge_list", &read_edge_list_file, py::arg("path"));
    m.def("write_edge_list", &write_edge_list_file, py::arg("path"), py::arg("graph"), py::arg("comment") = "");
    m.def("pair_count", [](const Graph& g, const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
        return pair_count(g, as_set(g, a), as_set(g, b));
    });
    m.def("girth", &girth);
    m.def("is_bipartite", &is_bipartite);

    m.def("gnp", &gnp, py::arg("n"), py::arg("p"), py::arg("seed"));
    m.def("paley", &paley, py::arg("q"));
    m.def("clique_union", &clique_union, py::arg("k"), py::arg("s"));
    m.def("projective_incidence", &projective_incidence, py::arg("p"));
    m.def("random_ksr_free", &random_ksr_free, py::arg("k"), py::arg("s"), py::arg("r"), py::arg("seed"));
    m.def("complete_graph", &complete_graph);
    m.def("empty_graph", &empty_graph);
    m.def("cycle_graph", &cycle_graph);
    m.def("path_graph", &path_graph);
    m.def("star_graph", &star_graph, py::arg("leaves"));
    m.def("complete_bipartite", &complete_bipartite);
    m.def("petersen_graph", &petersen_graph);
    m.def("contains_ksr", &contains_ksr);
    m.def("incidence_auxiliary", &incidence_auxiliary, py::arg("k"));

    m.def(
        "check_sparse",
        [](const Graph& g, double c, std::size_t t, std::uint64_t budget) {
            SparsenessReport rep;
            {
                py::gil_scoped_release unlocked;
                rep = check_exact(g, c, t, {budget, 1});
            }
            return report_dict(rep);
        },
        py::arg("g"), py::arg("c"), py::arg("t"), py::arg("budget") = 4'000'000'000ULL);
    m.def(
        "refute_sparse",
        [](const Graph& g, double c, std::size_t t, std::uint64_t trials, Seed seed) {
            return report_dict(refute_random(g, c, t, trials, seed, 1));
        },
        py::arg("g"), py::arg("c"), py::arg("t"), py::arg("trials") = 10000, py::arg("seed") = 1);
    m.def("clique_number", [](const Graph& g) { return clique_number(g); });
    m.def(
        "clique_cover",
        [](const Graph& g, bool exact) {
            std::vector<std::vector<Vertex>> out;
            for (const auto& p : clique_cover(g, exact ? CoverMode::ExactSmall : CoverMode::Greedy).parts)
                out.push_back(p.members());
            return out;
        },
        py::arg("g"), py::arg("exact") = false);

    m.def(
        "construct_lower",
        [](const Graph& gamma, const Graph& F, std::size_t s, std::size_t r, Seed seed) {
            const auto res = build_random_quotient_subgraph(gamma, clique_cover(gamma), F, seed, KsrTarget{s, r});
            py::dict d;
            d["subgraph"] = res.subgraph;
            d["k"] = res.cover_size;
            d["bijection"] = res.bijection;
            d["guaranteed_bound"] = res.guaranteed_bound;
            d["guarantee"] = to_string(res.guarantee);
            return d;
        },
        py::arg("gamma"), py::arg("aux"), py::arg("s"), py::arg("r"), py::arg("seed"));

    m.def(
        "embed",
        [](const Graph& gamma, const Graph& g, const std::string& pattern, double c, double t, Seed seed,
           std::size_t apex_budget, std::size_t tuple_budget, bool strict) -> py::object {
            const auto host = std::make_shared<const Graph>(g);
            const auto h = BipartitePattern::parse(pattern);
            DrcConfig cfg;
            cfg.schedule = default_schedule(h, c, t);
            cfg.enforce_guards = strict;
            cfg.seed = seed;
            cfg.apex_budget = apex_budget;
            cfg.tuple_budget = tuple_budget;
            const auto out = embed_recursive(gamma, random_host_view(host, derive_seed(seed, {0x71E3ULL})), h, cfg);
            py::dict d;
            d["success"] = out.success();
            d["embedding"] = out.success() ? py::cast(out.embedding->assignment) : py::none();
            d["reason"] = to_string(out.reason);
            d["rejects"] = out.stats.rejects;
            return std::move(d);
        },
        py::arg("gamma"), py::arg("g"), py::arg("pattern"), py::arg("c") = 0.5, py::arg("t") = 1.0,
        py::arg("seed") = 1, py::arg("apex_budget") = 32, py::arg("tuple_budget") = 64, py::arg("strict") = false);

    m.def(
        "embed_tree",
        [](const Graph& gamma, const Graph& g, const EdgePairs& tree_edges, double c, std::size_t draws, Seed seed,
           double C) {
            std::size_t k = 1;
            for (auto [u, v] : tree_edges) k = std::max<std::size_t>(k, std::max(u, v) + 1);
            TreeConfig cfg;
            cfg.c = c;
            cfg.C = C;
            cfg.seed = seed;
            TreeSampler sampler(std::make_shared<const Graph>(gamma), g, LabeledTree(make_graph(k, tree_edges)), cfg);
            Rng rng(derive_seed(seed, {0xD4A3ULL}));
            std::vector<std::vector<Vertex>> copies;
            std::map<std::string, std::size_t> rejects;
            for (std::size_t i = 0; i < draws; ++i) {
                auto d = sampler.draw(sampler.tree().full(), rng);
                if (d.success()) copies.push_back(*d.phi);
                else rejects[d.reject]++;
            }
            return py::make_tuple(copies, rejects);
        },
        py::arg("gamma"), py::arg("g"), py::arg("tree"), py::arg("c"), py::arg("draws") = 100, py::arg("seed") = 1,
        py::arg("C") = 1.0);

    m.def(
        "count_induced",
        [](const Graph& gamma, const Graph& g, const Graph& h) { return oracle::count_induced_in(gamma, g, h); },
        py::call_guard<py::gil_scoped_release>());
    m.def(
        "max_avoid",
        [](const Graph& gamma, const Graph& h) {
            const auto r = oracle::max_subgraph_avoiding(gamma, h);
            return py::make_tuple(r.edges, r.witness);
        });
    m.def(
        "turan_number", [](std::size_t n, const Graph& h) { return oracle::turan_number(n, h); },
        py::call_guard<py::gil_scoped_release>());

    m.def(
        "run_scan",
        [](const std::string& spec_path, const std::string& out_dir) {
            const auto res = run_scan(load_runspec(spec_path), 1);
            return py::make_tuple(write_scan(res, out_dir), res.errors);
        },
        py::arg("spec"), py::arg("out"));
}
