#include "indturan/experiments.hpp"

#include "indturan/drc.hpp"
#include "indturan/errors.hpp"
#include "indturan/generators.hpp"
#include "indturan/lower_bounds.hpp"
#include "indturan/oracle.hpp"
#include "indturan/sparseness.hpp"

#include <toml.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

namespace indturan {

namespace {

constexpr const char* kSchema = "schema=indturan-scan/1";

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

template <class T>
std::string str(T x) {
    return std::to_string(x);
}

// ------------------------------------------------------------------ toml

using KeySet = std::set<std::string>;

void check_keys(const toml::table& t, const KeySet& allowed, const std::string& where) {
    for (const auto& [k, v] : t)
        if (!allowed.count(std::string(k.str())))
            throw InputError("unknown key '" + std::string(k.str()) + "' in " + where);
}

template <class T>
void read(const toml::table& t, const char* key, T& out) {
    const auto* node = t.get(key);
    if (!node) return;
    if constexpr (std::is_same_v<T, std::string>) {
        const auto v = node->value<std::string>();
        if (!v) throw InputError(std::string("'") + key + "' must be a string");
        out = *v;
    } else if constexpr (std::is_same_v<T, double>) {
        const auto v = node->value<double>();
        if (!v) throw InputError(std::string("'") + key + "' must be a number");
        out = *v;
    } else {
        const auto v = node->value<std::int64_t>();
        if (!v || *v < 0) throw InputError(std::string("'") + key + "' must be a non-negative integer");
        out = static_cast<T>(*v);
    }
}

template <class T>
void read_array(const toml::table& t, const char* key, std::vector<T>& out) {
    const auto* node = t.get(key);
    if (!node) return;
    const auto* arr = node->as_array();
    if (!arr) throw InputError(std::string("'") + key + "' must be an array");
    out.clear();
    for (const auto& el : *arr) {
        if constexpr (std::is_same_v<T, double>) {
            const auto v = el.value<double>();
            if (!v) throw InputError(std::string("'") + key + "' must hold numbers");
            out.push_back(*v);
        } else {
            const auto v = el.value<std::int64_t>();
            if (!v || *v < 0) throw InputError(std::string("'") + key + "' must hold non-negative integers");
            out.push_back(static_cast<T>(*v));
        }
    }
}

const toml::table* sub(const toml::table& t, const char* key) {
    const auto* node = t.get(key);
    if (!node) return nullptr;
    const auto* tab = node->as_table();
    if (!tab) throw InputError(std::string("'") + key + "' must be a table");
    return tab;
}

// ----------------------------------------------------------------- cells

struct CellPos {
    std::size_t grid = 0, seed = 0;
    bool oracle = false;
};

CellPos locate(const RunSpec& spec, std::size_t cell) {
    CellPos pos;
    const std::size_t first = (spec.experiment == "embed-threshold" ? spec.densities.size() : spec.n.size()) * spec.seeds;
    if (cell >= first) {
        pos.oracle = true;
        cell -= first;
    }
    pos.grid = cell / spec.seeds;
    pos.seed = cell % spec.seeds;
    return pos;
}

Graph make_gamma(const RunSpec& spec, std::size_t n, Seed seed) {
    if (spec.family == "gnp") return gnp(n, spec.p, seed);
    if (spec.family == "paley") return paley(static_cast<std::uint32_t>(n));
    if (spec.family == "clique-union") {
        if (spec.clique == 0 || n % spec.clique) throw InputError("clique-union needs n divisible by the clique size");
        return clique_union(n / spec.clique, spec.clique);
    }
    throw InputError("unknown graph family '" + spec.family + "'");
}

Graph auxiliary_for(const RunSpec& spec, std::size_t k, Seed seed) {
    if (spec.s == 2) return incidence_auxiliary(k);
    return random_ksr_free(k, spec.s, spec.r, seed);
}

Graph thin(const Graph& g, double q, Seed seed) {
    Rng rng(seed);
    std::vector<Edge> kept;
    for (const auto& e : g.edges())
        if (rng.uniform01() < q) kept.push_back(e);
    return Graph(g.n(), kept);
}

std::vector<std::string> construction_cell(const RunSpec& spec, std::size_t cell) {
    const auto pos = locate(spec, cell);
    const std::size_t n = spec.n.at(pos.grid);
    const Seed seed = derive_seed(spec.seed, {pos.grid, pos.seed});
    std::vector<std::string> row{"cell", str(cell), spec.family, str(n), fmt(spec.p), str(pos.seed)};
    const Graph gamma = make_gamma(spec, n, derive_seed(seed, {1}));
    const auto cover = clique_cover(gamma, CoverMode::Greedy);
    const Graph F = auxiliary_for(spec, cover.size(), derive_seed(seed, {2}));
    const auto res = build_random_quotient_subgraph(gamma, cover, F, derive_seed(seed, {3}), KsrTarget{spec.s, spec.r});
    const double dn = static_cast<double>(n), ds = static_cast<double>(spec.s);
    const double reference = std::pow(dn, 2.0 - 1.0 / ds) * std::pow(std::log(dn), 1.0 / ds);
    row.insert(row.end(), {str(cover.size()), str(gamma.edge_count()), str(F.edge_count()),
                           str(res.subgraph.edge_count()), fmt(res.guaranteed_bound), to_string(res.guarantee),
                           fmt(reference), "", "", "ok", ""});
    return row;
}

std::vector<std::string> embed_cell(const RunSpec& spec, std::size_t cell) {
    const auto pos = locate(spec, cell);
    const std::size_t n = spec.n.at(0);
    const double q = spec.densities.at(pos.grid);
    std::vector<std::string> row{"cell", str(cell), str(n), fmt(spec.p), fmt(q), str(pos.seed), spec.pattern};
    const Graph gamma = gnp(n, spec.p, derive_seed(spec.seed, {0xC0FFEEULL}));
    const auto G = std::make_shared<const Graph>(thin(gamma, q, derive_seed(spec.seed, {pos.grid, pos.seed, 1})));
    const auto H = BipartitePattern::parse(spec.pattern);
    const auto view = random_host_view(G, derive_seed(spec.seed, {pos.grid, pos.seed, 2}));
    DrcConfig cfg;
    cfg.schedule = default_schedule(H, spec.c, spec.t);
    cfg.apex_budget = spec.apex_budget;
    cfg.tuple_budget = spec.tuple_budget;
    cfg.seed = derive_seed(spec.seed, {pos.grid, pos.seed, 3});
    const auto out = embed_recursive(gamma, view, H, cfg);
    const double d = static_cast<double>(H.d());
    const double reference = spec.C * std::pow(spec.t, 1.0 / d) * std::pow(static_cast<double>(n), -1.0 / d);
    row.insert(row.end(), {out.success() ? "1" : "0", str(G->edge_count()), to_string(out.reason),
                           str(out.stats.apexes_tried), str(out.stats.tuple_attempts), fmt(reference), "", "ok", ""});
    return row;
}

std::vector<std::string> even_cycle_cell(const RunSpec& spec, std::size_t cell) {
    const auto pos = locate(spec, cell);
    const std::size_t n = pos.oracle ? spec.oracle_n.at(pos.grid) : spec.n.at(pos.grid);
    const Seed seed = derive_seed(spec.seed, {pos.oracle ? 1u : 0u, pos.grid, pos.seed});
    const double L = static_cast<double>(spec.ell), dn = static_cast<double>(n);
    const double envelope = spec.envelope_C * std::pow(spec.t, 1.0 - 1.0 / L) * std::pow(dn, 1.0 + 1.0 / L);
    std::vector<std::string> row{"cell", str(cell), pos.oracle ? "oracle" : "construction", str(n), fmt(spec.p),
                                 str(spec.ell), str(pos.seed)};
    const Graph gamma = gnp(n, spec.p, derive_seed(seed, {1}));
    if (pos.oracle) {
        oracle::Budget budget;
        budget.max_seconds = spec.oracle_seconds;
        const auto res = oracle::max_subgraph_avoiding(gamma, cycle_graph(2 * spec.ell), budget);
        row.insert(row.end(), {"", "", "", str(res.edges), fmt(envelope), "ok", ""});
    } else {
        const auto cover = clique_cover(gamma, CoverMode::Greedy);
        const Graph F = random_high_girth_bipartite(cover.size(), 2 * spec.ell + 1, derive_seed(seed, {2}));
        const auto res = build_random_quotient_subgraph(gamma, cover, F, derive_seed(seed, {3}));
        const auto g = girth(F);
        row.insert(row.end(), {str(cover.size()), str(F.edge_count()), g ? str(g) : "inf",
                               str(res.subgraph.edge_count()), fmt(envelope), "ok", ""});
    }
    return row;
}

std::string one_line(std::string s) {
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

struct Collected {
    std::vector<std::vector<std::string>> rows;
    std::vector<double> seconds;
    std::size_t errors = 0;
};

Collected run_all(const RunSpec& spec, unsigned workers) {
    const std::size_t cells = cell_count(spec);
    Collected out;
    out.rows.resize(cells);
    out.seconds.resize(cells);
    workers = std::max(1u, workers ? workers : default_workers());
    std::atomic<std::size_t> next{0};
    auto body = [&] {
        for (;;) {
            const auto i = next++;
            if (i >= cells) return;
            const auto start = std::chrono::steady_clock::now();
            out.rows[i] = run_cell(spec, i);
            out.seconds[i] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        }
    };
    if (workers == 1 || cells <= 1) {
        body();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < std::min<std::size_t>(workers, cells); ++w) pool.emplace_back(body);
        for (auto& th : pool) th.join();
    }
    const auto header = scan_header(spec);
    const auto status_col = header.size() - 2;
    for (const auto& r : out.rows)
        if (r.at(status_col) != "ok") ++out.errors;
    return out;
}

ScanResult assemble(const RunSpec& spec, Collected&& c) {
    ScanResult res;
    res.id = spec.id;
    res.comment = std::string(kSchema) + " experiment=" + spec.experiment + " id=" + spec.id;
    res.table.header = scan_header(spec);
    res.table.rows = std::move(c.rows);
    res.errors = c.errors;
    res.timing.header = {"cell", "seconds"};
    for (std::size_t i = 0; i < c.seconds.size(); ++i) res.timing.rows.push_back({str(i), fmt(c.seconds[i])});
    return res;
}

std::size_t column(const std::vector<std::string>& header, const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw InternalError("missing column " + name);
    return static_cast<std::size_t>(it - header.begin());
}

void require(const RunSpec& spec, const std::string& experiment) {
    if (spec.experiment != experiment)
        throw InputError("run spec is for '" + spec.experiment + "', not '" + experiment + "'");
}

}  // namespace

RunSpec parse_runspec(const std::string& toml_text) {
    toml::table root;
    try {
        root = toml::parse(toml_text);
    } catch (const toml::parse_error& e) {
        std::ostringstream os;
        os << "run spec: " << e.description() << " at line " << e.source().begin.line;
        throw InputError(os.str());
    }
    RunSpec s;
    check_keys(root, {"id", "experiment", "seed", "seeds", "graph", "pattern", "constants", "embed", "probe"},
               "top level");
    read(root, "id", s.id);
    read(root, "experiment", s.experiment);
    read(root, "seed", s.seed);
    read(root, "seeds", s.seeds);
    if (const auto* g = sub(root, "graph")) {
        check_keys(*g, {"family", "n", "p", "clique"}, "[graph]");
        read(*g, "family", s.family);
        read_array(*g, "n", s.n);
        read(*g, "p", s.p);
        read(*g, "clique", s.clique);
    }
    if (const auto* p = sub(root, "pattern")) {
        check_keys(*p, {"s", "r", "spec"}, "[pattern]");
        read(*p, "s", s.s);
        read(*p, "r", s.r);
        read(*p, "spec", s.pattern);
    }
    if (const auto* c = sub(root, "constants")) {
        check_keys(*c, {"c", "t", "C"}, "[constants]");
        read(*c, "c", s.c);
        read(*c, "t", s.t);
        read(*c, "C", s.C);
    }
    if (const auto* e = sub(root, "embed")) {
        check_keys(*e, {"densities", "apex_budget", "tuple_budget"}, "[embed]");
        read_array(*e, "densities", s.densities);
        read(*e, "apex_budget", s.apex_budget);
        read(*e, "tuple_budget", s.tuple_budget);
    }
    if (const auto* p = sub(root, "probe")) {
        check_keys(*p, {"ell", "oracle_n", "envelope_C", "oracle_seconds"}, "[probe]");
        read(*p, "ell", s.ell);
        read_array(*p, "oracle_n", s.oracle_n);
        read(*p, "envelope_C", s.envelope_C);
        read(*p, "oracle_seconds", s.oracle_seconds);
    }

    static const std::set<std::string> experiments{"construction-scaling", "embed-threshold", "even-cycle"};
    if (!experiments.count(s.experiment)) throw InputError("unknown experiment '" + s.experiment + "'");
    if (s.id.empty() || s.id.find_first_of("/\\") != std::string::npos) throw InputError("id must be a plain name");
    if (s.seeds == 0) throw InputError("seeds must be at least 1");
    if (!(s.p >= 0.0 && s.p <= 1.0)) throw InputError("p must lie in [0,1]");
    if (!(s.c > 0.0 && s.c < 1.0)) throw InputError("c must lie in (0,1)");
    if (!(s.t >= 1.0)) throw InputError("t must be at least 1");
    for (double q : s.densities)
        if (!(q >= 0.0 && q <= 1.0)) throw InputError("densities must lie in [0,1]");
    if (s.experiment == "construction-scaling" && (s.s < 2 || s.s > s.r)) throw InputError("pattern needs 2 <= s <= r");
    if (s.experiment == "embed-threshold") {
        if (s.n.size() != 1) throw InputError("embed-threshold takes exactly one n");
        BipartitePattern::parse(s.pattern);
    }
    if (s.experiment == "even-cycle") {
        if (s.ell == 1) throw InputError("ell = 1 does not give a simple cycle");
        if (s.ell != 2 && s.ell != 3) throw InputError("ell must be 2 or 3");
    }
    return s;
}

RunSpec load_runspec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open run spec " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_runspec(ss.str());
}

std::optional<SlopeFit> fit_loglog(const std::vector<std::pair<double, double>>& xy) {
    std::vector<std::pair<double, double>> pts;
    for (auto [x, y] : xy)
        if (x > 0 && y > 0) pts.emplace_back(std::log(x), std::log(y));
    if (pts.size() < 2) return std::nullopt;
    const double m = static_cast<double>(pts.size());
    double sx = 0, sy = 0;
    for (auto [x, y] : pts) sx += x, sy += y;
    const double mx = sx / m, my = sy / m;
    double sxx = 0, sxy = 0;
    for (auto [x, y] : pts) sxx += (x - mx) * (x - mx), sxy += (x - mx) * (y - my);
    if (sxx <= 0) return std::nullopt;
    SlopeFit f;
    f.points = pts.size();
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    if (pts.size() > 2) {
        double rss = 0;
        for (auto [x, y] : pts) {
            const double r = y - f.intercept - f.slope * x;
            rss += r * r;
        }
        f.stderr_slope = std::sqrt(rss / (m - 2) / sxx);
    }
    return f;
}

std::size_t cell_count(const RunSpec& spec) {
    if (spec.experiment == "embed-threshold") return spec.densities.size() * spec.seeds;
    if (spec.experiment == "even-cycle") return (spec.n.size() + spec.oracle_n.size()) * spec.seeds;
    return spec.n.size() * spec.seeds;
}

std::vector<std::string> scan_header(const RunSpec& spec) {
    if (spec.experiment == "embed-threshold")
        return {"kind", "cell", "n", "p", "q", "seed_index", "pattern", "success", "edges_G", "reason", "apexes",
                "tuple_attempts", "reference_q", "threshold_q", "status", "error"};
    if (spec.experiment == "even-cycle")
        return {"kind", "cell", "side", "n", "p", "ell", "seed_index", "k", "e_F", "girth_F", "edges", "envelope",
                "status", "error"};
    return {"kind", "cell", "family", "n", "p", "seed_index", "k", "e_gamma", "e_F", "edges", "guaranteed_bound",
            "guarantee", "reference", "slope", "slope_stderr", "status", "error"};
}

std::vector<std::string> run_cell(const RunSpec& spec, std::size_t cell) {
    if (cell >= cell_count(spec)) throw InputError("cell index out of range");
    try {
        if (spec.experiment == "embed-threshold") return embed_cell(spec, cell);
        if (spec.experiment == "even-cycle") return even_cycle_cell(spec, cell);
        return construction_cell(spec, cell);
    } catch (const std::exception& e) {
        const auto header = scan_header(spec);
        std::vector<std::string> row(header.size());
        row[0] = "cell";
        row[1] = str(cell);
        const char* code = dynamic_cast<const ResourceError*>(&e)       ? "resource"
                           : dynamic_cast<const InputError*>(&e)        ? "input"
                           : dynamic_cast<const PreconditionError*>(&e) ? "precondition"
                                                                        : "internal";
        row[header.size() - 2] = code;
        row[header.size() - 1] = one_line(e.what());
        return row;
    }
}

ScanResult scan_construction_scaling(const RunSpec& spec, unsigned workers) {
    require(spec, "construction-scaling");
    auto res = assemble(spec, run_all(spec, workers));
    const auto& h = res.table.header;
    const auto cn = column(h, "n"), ce = column(h, "edges"), cs = column(h, "status");
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : res.table.rows)
        if (r[cs] == "ok") pts.emplace_back(std::stod(r[cn]), std::stod(r[ce]));
    res.fit = fit_loglog(pts);
    if (res.fit) {
        std::vector<std::string> row(h.size());
        row[0] = "summary";
        row[column(h, "family")] = spec.family;
        row[column(h, "slope")] = fmt(res.fit->slope);
        row[column(h, "slope_stderr")] = fmt(res.fit->stderr_slope);
        row[cs] = "ok";
        res.table.rows.push_back(std::move(row));
    }
    return res;
}

ScanResult scan_embed_threshold(const RunSpec& spec, unsigned workers) {
    require(spec, "embed-threshold");
    auto res = assemble(spec, run_all(spec, workers));
    const auto& h = res.table.header;
    const auto cs = column(h, "status"), csucc = column(h, "success");
    std::optional<double> threshold;
    std::string reference;
    for (std::size_t g = 0; g < spec.densities.size(); ++g) {
        std::size_t ok = 0, total = 0;
        for (std::size_t i = 0; i < spec.seeds; ++i) {
            const auto& r = res.table.rows[g * spec.seeds + i];
            if (r[cs] != "ok") continue;
            ++total;
            ok += r[csucc] == "1";
            reference = r[column(h, "reference_q")];
        }
        const double rate = total ? static_cast<double>(ok) / static_cast<double>(total) : 0.0;
        std::vector<std::string> row(h.size());
        row[0] = "rate";
        row[column(h, "n")] = str(spec.n.at(0));
        row[column(h, "q")] = fmt(spec.densities[g]);
        row[csucc] = fmt(rate);
        row[cs] = "ok";
        res.table.rows.push_back(std::move(row));
        if (total && rate >= 0.5 && (!threshold || spec.densities[g] < *threshold)) threshold = spec.densities[g];
    }
    if (!spec.densities.empty()) {
        std::vector<std::string> row(h.size());
        row[0] = "summary";
        row[column(h, "n")] = str(spec.n.at(0));
        row[column(h, "threshold_q")] = threshold ? fmt(*threshold) : "none";
        row[column(h, "reference_q")] = reference;
        row[cs] = "ok";
        res.table.rows.push_back(std::move(row));
    }
    return res;
}

ScanResult probe_even_cycle(const RunSpec& spec, unsigned workers) {
    require(spec, "even-cycle");
    return assemble(spec, run_all(spec, workers));
}

ScanResult run_scan(const RunSpec& spec, unsigned workers) {
    if (spec.experiment == "embed-threshold") return scan_embed_threshold(spec, workers);
    if (spec.experiment == "even-cycle") return probe_even_cycle(spec, workers);
    return scan_construction_scaling(spec, workers);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + '"';
}

void write_csv(std::ostream& out, const Table& table, const std::string& comment) {
    if (!comment.empty()) out << "# " << comment << '\n';
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << csv_field(cells[i]);
        out << '\n';
    };
    line(table.header);
    for (const auto& r : table.rows) line(r);
}

std::string write_scan(const ScanResult& result, const std::string& dir) {
    std::filesystem::create_directories(dir);
    const auto main = (std::filesystem::path(dir) / (result.id + ".csv")).string();
    const auto timing = (std::filesystem::path(dir) / (result.id + ".timing.csv")).string();
    std::ofstream a(main), b(timing);
    if (!a || !b) throw InputError("cannot write into " + dir);
    write_csv(a, result.table, result.comment);
    write_csv(b, result.timing, result.comment);
    return main;
}

}  // namespace indturan
