#include "indturan/tree.hpp"

#include "indturan/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>

namespace indturan {

namespace {

constexpr SubtreeKey bit(Vertex v) { return SubtreeKey{1} << v; }
std::size_t popcount(SubtreeKey s) { return static_cast<std::size_t>(std::popcount(s)); }

}  // namespace

// ------------------------------------------------------------------- trees

LabeledTree::LabeledTree(Graph g) : g_(std::move(g)) {
    if (g_.n() < 1 || g_.n() > 64) throw InputError("tree must have between 1 and 64 vertices");
    if (g_.edge_count() + 1 != g_.n() || !is_connected(g_)) throw InputError("graph is not a tree");
}

LabeledTree LabeledTree::from_edges(std::size_t k, const std::vector<Edge>& edges) {
    return LabeledTree(Graph(k, edges));
}

SubtreeKey LabeledTree::full() const noexcept {
    return size() == 64 ? ~SubtreeKey{0} : (SubtreeKey{1} << size()) - 1;
}

bool LabeledTree::is_subtree(SubtreeKey s) const {
    if (s == 0 || (s & ~full())) return false;
    const auto first = static_cast<Vertex>(std::countr_zero(s));
    SubtreeKey seen = bit(first), frontier = seen;
    while (frontier) {
        const auto v = static_cast<Vertex>(std::countr_zero(frontier));
        frontier &= frontier - 1;
        g_.neighbors(v).for_each([&](Vertex u) {
            if ((s & bit(u)) && !(seen & bit(u))) {
                seen |= bit(u);
                frontier |= bit(u);
            }
        });
    }
    return seen == s;
}

std::vector<Vertex> LabeledTree::leaves(SubtreeKey s) const {
    std::vector<Vertex> out;
    if (popcount(s) == 1) return {static_cast<Vertex>(std::countr_zero(s))};
    for (auto v : key_vertices(s)) {
        std::size_t d = 0;
        g_.neighbors(v).for_each([&](Vertex u) { d += (s & bit(u)) != 0; });
        if (d == 1) out.push_back(v);
    }
    return out;
}

Vertex LabeledTree::attachment(SubtreeKey s, Vertex v) const {
    Vertex h = kUnset;
    std::size_t d = 0;
    g_.neighbors(v).for_each([&](Vertex u) {
        if (s & bit(u)) {
            h = u;
            ++d;
        }
    });
    if (d != 1) throw InputError("attachment: vertex is not a leaf of the subtree");
    return h;
}

Graph LabeledTree::subgraph(SubtreeKey s) const {
    const auto vs = key_vertices(s);
    return compact_induced(g_, vs);
}

std::vector<SubtreeKey> LabeledTree::all_subtrees() const {
    if (size() > 24) throw ResourceError("all_subtrees: tree too large to enumerate");
    std::vector<SubtreeKey> out;
    for (SubtreeKey s = 1; s <= full(); ++s)
        if (is_subtree(s)) out.push_back(s);
    return out;
}

std::vector<Vertex> key_vertices(SubtreeKey s) {
    std::vector<Vertex> out;
    while (s) {
        out.push_back(static_cast<Vertex>(std::countr_zero(s)));
        s &= s - 1;
    }
    return out;
}

std::string key_string(SubtreeKey s) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (auto v : key_vertices(s)) {
        os << (first ? "" : ",") << v;
        first = false;
    }
    os << '}';
    return os.str();
}

// ----------------------------------------------------------------- peeling

PeelingMap::PeelingMap(const LabeledTree& t) : tree_(&t) {
    SubtreeKey rest = t.full();
    while (popcount(rest) > 1) {
        const auto lv = t.leaves(rest);
        order_.push_back(lv.front());
        rest &= ~bit(lv.front());
    }
    order_.push_back(static_cast<Vertex>(std::countr_zero(rest)));
}

std::vector<Vertex> PeelingMap::operator()(SubtreeKey s) const {
    if (!tree_->is_subtree(s)) throw InputError("peeling: key is not a subtree");
    if (auto it = memo_.find(s); it != memo_.end()) return it->second;
    std::vector<Vertex> out;
    if (popcount(s) <= 2) {
        out = key_vertices(s);
    } else {
        Vertex v = kUnset;
        for (auto x : order_)
            if (s & bit(x)) {
                v = x;
                break;
            }
        const auto inner = (*this)(s & ~bit(v));
        Vertex w = kUnset;
        for (auto x : inner)
            if (!tree_->graph().adjacent(v, x)) {
                w = x;
                break;
            }
        if (w == kUnset) throw InternalError("peeling: no partner leaf");
        out = {std::min(v, w), std::max(v, w)};
    }
    memo_.emplace(s, out);
    return out;
}

PeelingMap build_peeling(const LabeledTree& t) { return PeelingMap(t); }

bool satisfies_peeling(const LabeledTree& t, const PeelingMap& nu) {
    for (auto s : t.all_subtrees()) {
        const auto val = nu(s);
        if (popcount(s) == 1) {
            if (val != key_vertices(s)) return false;
            continue;
        }
        if (val.size() != 2) return false;
        const auto lv = t.leaves(s);
        const Vertex u = val[0], w = val[1];
        if (std::find(lv.begin(), lv.end(), u) == lv.end() || std::find(lv.begin(), lv.end(), w) == lv.end())
            return false;
        const auto a = nu(s & ~bit(w)), b = nu(s & ~bit(u));
        if (std::find(a.begin(), a.end(), u) == a.end() || std::find(b.begin(), b.end(), w) == b.end()) return false;
    }
    return true;
}

bool is_c_unique(const Graph& gamma, const Graph& g, const std::vector<Vertex>& image, double c) {
    const std::size_t n = g.n();
    const double need_factor = std::pow(c, static_cast<double>(image.size()) - 1.0);
    for (std::size_t i = 0; i < image.size(); ++i) {
        VertexSet others(n);
        for (std::size_t j = 0; j < image.size(); ++j)
            if (j != i) others.insert(image[j]);
        const auto blocked = union_neighborhood(gamma, others);
        const auto kept = g.degree(image[i]) - g.neighbors(image[i]).intersection_size(blocked);
        if (static_cast<double>(kept) < need_factor * static_cast<double>(g.degree(image[i])) - 1e-9) return false;
    }
    return true;
}

ConstantSchedule make_schedule(std::size_t tree_size, double c, double C) {
    if (!(c > 0.0 && c < 1.0)) throw InputError("schedule: c must lie in (0,1)");
    ConstantSchedule s;
    s.c = c;
    s.C = C;
    s.size = tree_size;
    const std::size_t top = std::max<std::size_t>(tree_size, 2);
    s.K.assign(top + 1, 0.0);
    s.eps.assign(top + 1, 0.0);
    s.kappa.assign(top + 1, 0.0);
    s.K[2] = 2.0;
    s.eps[2] = 1.0 / 3.0;
    for (std::size_t i = 3; i <= top; ++i) {
        s.eps[i] = c / (2.0 * s.K[i - 1]);
        s.K[i] = 2.0 * s.K[i - 1] / (s.eps[i - 1] * s.eps[i - 1] * c);
    }
    s.kappa[top] = 0.5;
    for (std::size_t i = top - 1; i >= 2; --i) s.kappa[i] = s.kappa[i + 1] / (2.0 * s.K[i]);
    return s;
}

double ExactTable::total() const {
    double t = 0;
    for (const auto& [k, v] : copies) t += v;
    for (const auto& [k, v] : rejects) t += v;
    return t;
}

double ExactTable::lambda(const std::vector<Vertex>& phi) const {
    if (p_succ <= 0) return 0;
    const auto it = copies.find(phi);
    return it == copies.end() ? 0.0 : it->second / p_succ;
}

Graph degeneracy_peel(const Graph& g, std::size_t floor) {
    const std::size_t n = g.n();
    std::vector<std::size_t> deg(n);
    std::vector<char> gone(n, 0);
    std::vector<Vertex> queue;
    for (Vertex v = 0; v < n; ++v) {
        deg[v] = g.degree(v);
        if (deg[v] < floor) {
            gone[v] = 1;
            queue.push_back(v);
        }
    }
    while (!queue.empty()) {
        const Vertex v = queue.back();
        queue.pop_back();
        g.neighbors(v).for_each([&](Vertex u) {
            if (gone[u]) return;
            if (--deg[u] < floor) {
                gone[u] = 1;
                queue.push_back(u);
            }
        });
    }
    VertexSet keep(n);
    for (Vertex v = 0; v < n; ++v)
        if (!gone[v]) keep.insert(v);
    return g.restricted_to(keep);
}

// ----------------------------------------------------------------- sampler

std::size_t TreeSampler::VecHash::operator()(const std::vector<Vertex>& v) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (auto x : v) h = mix64(h ^ x);
    return static_cast<std::size_t>(h);
}

TreeSampler::TreeSampler(std::shared_ptr<const Graph> gamma, const Graph& g, LabeledTree tree, TreeConfig cfg)
    : gamma_(std::move(gamma)), tree_(std::move(tree)), cfg_(cfg), nu_(tree_),
      schedule_(make_schedule(tree_.size(), cfg.c, cfg.C)) {
    if (!gamma_) throw InputError("tree sampler needs Gamma");
    if (gamma_->n() != g.n()) throw InputError("Gamma and G differ in order");
    if (!is_subgraph_of(g, *gamma_)) throw InputError("G must be a subgraph of Gamma");
    if (!(cfg_.t >= 1.0) || !(cfg_.C > 0.0)) throw InputError("tree sampler: need t >= 1 and C > 0");
    const double cneed = std::pow(cfg_.c, -static_cast<double>(tree_.size()));
    if (!(cfg_.C > cneed)) {
        std::ostringstream os;
        os << "C=" << cfg_.C << " does not exceed c^-|T|=" << cneed;
        if (cfg_.mode == TreeMode::Strict) throw PreconditionError(os.str());
        warnings_.push_back(os.str());
    }
    const std::size_t floor =
        cfg_.degree_floor.value_or(std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(cfg_.C * cfg_.t))));
    g_ = degeneracy_peel(g, floor);
    if (g_.edge_count() == 0) throw InputError("graph too sparse for schedule");
    for (const auto& e : g_.edges()) {
        endpoints_.push_back(e.u);
        endpoints_.push_back(e.v);
    }

    std::vector<SubtreeKey> stack{tree_.full()};
    std::vector<SubtreeKey> seen;
    while (!stack.empty()) {
        const auto s = stack.back();
        stack.pop_back();
        if (std::find(seen.begin(), seen.end(), s) != seen.end()) continue;
        seen.push_back(s);
        if (popcount(s) == 2) {
            for (auto v : key_vertices(s)) stack.push_back(bit(v));
        } else if (popcount(s) >= 3) {
            const auto& sp = split(s);
            stack.push_back(sp.R);
            stack.push_back(sp.Ru);
            stack.push_back(sp.Rw);
        }
    }
    std::sort(seen.begin(), seen.end(), [](SubtreeKey a, SubtreeKey b) {
        return popcount(a) != popcount(b) ? popcount(a) < popcount(b) : a < b;
    });
    chain_ = std::move(seen);

    const double two_e = 2.0 * static_cast<double>(g_.edge_count());
    for (auto s : chain_) {
        if (popcount(s) == 1) {
            p_[s] = 1.0;
            exact_[s] = 1;
        } else if (popcount(s) == 2) {
            double p = 0;
            for (const auto& e : g_.edges()) p += 2.0 * edge_accept(e.u, e.v);
            p_[s] = p / two_e;
            exact_[s] = 1;
        } else {
            estimate_p(s);
        }
    }
}

const TreeSampler::Split& TreeSampler::split(SubtreeKey s) {
    if (auto it = splits_.find(s); it != splits_.end()) return it->second;
    const auto pair = nu_(s);
    Split sp;
    sp.u = pair[0];
    sp.w = pair[1];
    sp.hu = tree_.attachment(s, sp.u);
    sp.hw = tree_.attachment(s, sp.w);
    sp.R = s & ~bit(sp.u) & ~bit(sp.w);
    sp.Ru = s & ~bit(sp.w);
    sp.Rw = s & ~bit(sp.u);
    return splits_.emplace(s, sp).first->second;
}

double TreeSampler::edge_accept(Vertex xu, Vertex xw) const {
    const auto& G = g_;
    const auto& Gm = *gamma_;
    const double c = cfg_.c;
    const auto du = G.degree(xu), dw = G.degree(xw);
    const auto ku = du - G.neighbors(xu).intersection_size(Gm.neighbors(xw));
    const auto kw = dw - G.neighbors(xw).intersection_size(Gm.neighbors(xu));
    return static_cast<double>(ku) >= c * static_cast<double>(du) && static_cast<double>(kw) >= c * static_cast<double>(dw)
               ? 1.0
               : 0.0;
}

std::string TreeSampler::check_pair(const std::vector<Vertex>& phi, Vertex xu, Vertex xw) const {
    if (xu == xw) return "x-collision";
    std::vector<Vertex> image;
    for (auto x : phi)
        if (x != kUnset) image.push_back(x);
    if (!is_c_unique(*gamma_, g_, image, cfg_.c)) return "not-c-unique";
    if (gamma_->adjacent(xu, xw)) return "gamma-adjacent";
    return {};
}

void TreeSampler::validate(SubtreeKey s, const std::vector<Vertex>& phi) const {
    const auto vs = key_vertices(s);
    Embedding e;
    for (auto v : vs) e.assignment.push_back(phi[v]);
    if (!e.injective()) throw InternalError("tree sampler produced a non-injective copy of " + key_string(s));
    if (!is_copy_induced_in(g_, *gamma_, tree_.subgraph(s), e))
        throw InternalError("tree sampler produced a copy of " + key_string(s) + " that is not induced in Gamma");
    if (!is_c_unique(*gamma_, g_, e.assignment, cfg_.c))
        throw InternalError("tree sampler produced a copy of " + key_string(s) + " that is not c-unique");
}

namespace {

std::vector<Vertex> restrict_to(const std::vector<Vertex>& phi, SubtreeKey s) {
    std::vector<Vertex> out(phi.size(), kUnset);
    for (auto v : key_vertices(s)) out[v] = phi[v];
    return out;
}

std::vector<Vertex> key_of(const std::vector<Vertex>& phi, SubtreeKey s) {
    std::vector<Vertex> out;
    for (auto v : key_vertices(s)) out.push_back(phi[v]);
    return out;
}

}  // namespace

double TreeSampler::weight(SubtreeKey s, const std::vector<Vertex>& phi) {
    auto& cache = wcache_[s];
    auto key = key_of(phi, s);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    const double two_e = 2.0 * static_cast<double>(g_.edge_count());
    double w = 0;
    const auto vs = key_vertices(s);
    if (vs.size() == 1) {
        w = static_cast<double>(g_.degree(phi[vs[0]])) / two_e;
    } else if (vs.size() == 2) {
        const Vertex a = phi[vs[0]], b = phi[vs[1]];
        if (g_.adjacent(a, b)) w = edge_accept(a, b) / two_e;
    } else {
        const Split sp = split(s);
        auto rho = restrict_to(phi, sp.R);
        const double pR = p_.at(sp.R);
        const double wR = pR > 0 ? weight(sp.R, rho) : 0.0;
        if (wR > 0 && step_one(s, rho) && check_pair(phi, phi[sp.u], phi[sp.w]).empty()) {
            auto ru = rho;
            ru[sp.u] = phi[sp.u];
            auto rw = rho;
            rw[sp.w] = phi[sp.w];
            const double wu = weight(sp.Ru, ru), ww = weight(sp.Rw, rw);
            if (wu > 0 && ww > 0)
                w = (wR / pR) * (wu / mass(sp.Ru, rho, sp.u, sp.hu)) * (ww / mass(sp.Rw, rho, sp.w, sp.hw));
        }
    }
    cache.emplace(std::move(key), w);
    return w;
}

double TreeSampler::mass(SubtreeKey ru, const std::vector<Vertex>& rho, Vertex u, Vertex hu) {
    auto& cache = mcache_[ru];
    auto key = key_of(rho, ru);  // slot of u is kUnset
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    double m = 0;
    auto ext = rho;
    g_.neighbors(rho[hu]).for_each([&](Vertex x) {
        ext[u] = x;
        m += weight(ru, ext);
    });
    cache.emplace(std::move(key), m);
    return m;
}

bool TreeSampler::step_one(SubtreeKey s, const std::vector<Vertex>& rho) {
    const Split sp = split(s);
    const double pR = p_.at(sp.R), pu = p_.at(sp.Ru), pw = p_.at(sp.Rw);
    if (pR <= 0 || pu <= 0 || pw <= 0) return false;
    const double lamR = weight(sp.R, rho) / pR;
    const double eps = schedule_.eps.at(popcount(s) - 1);
    const double need = eps * lamR * (1.0 - 1e-12);
    return mass(sp.Ru, rho, sp.u, sp.hu) / pu >= need && mass(sp.Rw, rho, sp.w, sp.hw) / pw >= need;
}

TreeDraw TreeSampler::draw(SubtreeKey s, Rng& rng) {
    if (std::find(chain_.begin(), chain_.end(), s) == chain_.end())
        throw InputError("draw: subtree " + key_string(s) + " is not on the peeling chain");
    TreeDraw out;
    std::vector<Vertex> phi(tree_.size(), kUnset);
    const auto vs = key_vertices(s);
    if (vs.size() == 1) {
        phi[vs[0]] = endpoints_[rng.below(endpoints_.size())];
        out.phi = std::move(phi);
        return out;
    }
    if (vs.size() == 2) {
        const Vertex xu = endpoints_[rng.below(endpoints_.size())];
        const Vertex xw = g_.neighbors(xu).nth(rng.below(g_.degree(xu)));
        if (edge_accept(xu, xw) == 0.0) {
            out.reject = "not-c-unique";
            return out;
        }
        phi[vs[0]] = xu;
        phi[vs[1]] = xw;
        validate(s, phi);
        out.phi = std::move(phi);
        return out;
    }
    const Split sp = split(s);
    auto rho = sample_success(sp.R, rng);
    if (!step_one(s, rho)) {
        out.reject = "step-I-extension-gap";
        return out;
    }
    auto pick = [&](SubtreeKey ru, Vertex u, Vertex hu) {
        const double total = mass(ru, rho, u, hu);
        double target = rng.uniform01() * total;
        auto ext = rho;
        Vertex chosen = kUnset, last = kUnset;
        g_.neighbors(rho[hu]).for_each([&](Vertex x) {
            if (chosen != kUnset) return;
            ext[u] = x;
            const double w = weight(ru, ext);
            if (w <= 0) return;
            last = x;
            target -= w;
            if (target < 0) chosen = x;
        });
        return chosen != kUnset ? chosen : last;
    };
    const Vertex xu = pick(sp.Ru, sp.u, sp.hu);
    const Vertex xw = pick(sp.Rw, sp.w, sp.hw);
    phi = rho;
    phi[sp.u] = xu;
    phi[sp.w] = xw;
    if (auto reason = check_pair(phi, xu, xw); !reason.empty()) {
        out.reject = std::move(reason);
        return out;
    }
    validate(s, phi);
    out.phi = std::move(phi);
    return out;
}

std::vector<Vertex> TreeSampler::sample_success(SubtreeKey s, Rng& rng) {
    for (std::size_t i = 0; i < cfg_.max_inner_attempts; ++i) {
        auto d = draw(s, rng);
        if (d.success()) return std::move(*d.phi);
    }
    throw ResourceError("no successful draw of " + key_string(s) + " within the inner attempt cap");
}

void TreeSampler::estimate_p(SubtreeKey s) {
    if (cfg_.psucc_samples == 0) {
        p_[s] = 0;
        return;
    }
    Rng rng(derive_seed(cfg_.seed, {0x7073ULL, s}));
    std::size_t ok = 0;
    for (std::size_t i = 0; i < cfg_.psucc_samples; ++i) ok += draw(s, rng).success();
    p_[s] = static_cast<double>(ok) / static_cast<double>(cfg_.psucc_samples);
}

std::map<SubtreeKey, ExactTable> TreeSampler::exact_tables(std::uint64_t budget) {
    std::map<SubtreeKey, ExactTable> tables;
    std::uint64_t work = 0;
    auto tick = [&] {
        if (++work > budget) throw ResourceError("exact_tables: choice tree exceeds budget");
    };
    wcache_.clear();
    mcache_.clear();
    const double two_e = 2.0 * static_cast<double>(g_.edge_count());
    const std::size_t k = tree_.size();
    for (auto s : chain_) {
        ExactTable tab;
        tab.key = s;
        const auto vs = key_vertices(s);
        if (vs.size() == 1) {
            for (Vertex x = 0; x < g_.n(); ++x) {
                tick();
                if (g_.degree(x) == 0) continue;
                std::vector<Vertex> phi(k, kUnset);
                phi[vs[0]] = x;
                tab.copies[phi] = static_cast<double>(g_.degree(x)) / two_e;
            }
        } else if (vs.size() == 2) {
            for (const auto& e : g_.edges())
                for (int flip = 0; flip < 2; ++flip) {
                    tick();
                    std::vector<Vertex> phi(k, kUnset);
                    phi[vs[0]] = flip ? e.v : e.u;
                    phi[vs[1]] = flip ? e.u : e.v;
                    if (edge_accept(e.u, e.v) > 0) tab.copies[phi] += 1.0 / two_e;
                    else tab.rejects["not-c-unique"] += 1.0 / two_e;
                }
        } else {
            const Split sp = split(s);
            const auto& low = tables.at(sp.R);
            for (const auto& [rho, mass_rho] : low.copies) {
                tick();
                const double lam = mass_rho / low.p_succ;
                if (!step_one(s, rho)) {
                    tab.rejects["step-I-extension-gap"] += lam;
                    continue;
                }
                auto options = [&](SubtreeKey ru, Vertex u, Vertex hu) {
                    std::vector<std::pair<Vertex, double>> out;
                    const double total = mass(ru, rho, u, hu);
                    auto ext = rho;
                    g_.neighbors(rho[hu]).for_each([&](Vertex x) {
                        ext[u] = x;
                        const double w = weight(ru, ext);
                        if (w > 0) out.emplace_back(x, w / total);
                    });
                    return out;
                };
                const auto ou = options(sp.Ru, sp.u, sp.hu);
                const auto ow = options(sp.Rw, sp.w, sp.hw);
                for (auto [xu, pu] : ou)
                    for (auto [xw, pw] : ow) {
                        tick();
                        auto phi = rho;
                        phi[sp.u] = xu;
                        phi[sp.w] = xw;
                        const double pr = lam * pu * pw;
                        if (auto reason = check_pair(phi, xu, xw); !reason.empty()) tab.rejects[reason] += pr;
                        else tab.copies[phi] += pr;
                    }
            }
        }
        for (const auto& [phi, p] : tab.copies) tab.p_succ += p;
        p_[s] = tab.p_succ;
        exact_[s] = 1;
        wcache_.clear();
        mcache_.clear();
        tables.emplace(s, std::move(tab));
    }
    return tables;
}

// --------------------------------------------------------------- extension

ExtensionReport check_extension(const Graph& g, const LabeledTree& tree, const ExactTable& table_t,
                                const ExactTable& table_minus, Vertex v, double K, double eps, double kappa) {
    if (table_minus.key != (table_t.key & ~bit(v)) || !(table_t.key & bit(v)))
        throw InputError("check_extension: tables are not for T and T - v");
    const Vertex h = tree.attachment(table_t.key, v);
    ExtensionReport rep;
    rep.K_nominal = K;
    rep.eps_nominal = eps;
    rep.kappa_nominal = kappa;
    if (table_t.p_succ <= 0 || table_minus.p_succ <= 0) {
        rep.empty = true;
        rep.upper_holds = true;
        rep.marginal_bound_holds = true;
        return rep;
    }
    std::map<std::vector<Vertex>, double> marginal;
    double kmax = 0;
    for (const auto& [phi, w] : table_t.copies) {
        const double lt = w / table_t.p_succ;
        auto minus = phi;
        minus[v] = kUnset;
        marginal[minus] += lt;
        const double lm = table_minus.lambda(minus);
        kmax = std::max(kmax, lm > 0 ? lt * static_cast<double>(g.degree(phi[h])) / lm
                                     : std::numeric_limits<double>::infinity());
    }
    rep.K_measured = kmax;
    rep.upper_holds = kmax <= K * (1 + 1e-12);

    std::vector<std::pair<double, double>> ratios;  // (ratio, lambda_{T-v} mass)
    double below = 0;
    bool bound_ok = true;
    for (const auto& [phi, w] : table_minus.copies) {
        const double lm = w / table_minus.p_succ;
        const auto it = marginal.find(phi);
        const double lt = it == marginal.end() ? 0.0 : it->second;
        const double r = lt / lm;
        ratios.emplace_back(r, lm);
        if (r < eps * (1 - 1e-12)) below += lm;
        if (lt > kmax * lm * (1 + 1e-9) + 1e-15) bound_ok = false;
    }
    for (const auto& [phi, lt] : marginal)
        if (table_minus.lambda(phi) <= 0 && lt > 0) bound_ok = false;
    std::sort(ratios.begin(), ratios.end(), [](auto a, auto b) { return a.first > b.first; });
    double acc = 0;
    rep.eps_measured = ratios.empty() ? 0.0 : ratios.back().first;
    for (auto [r, m] : ratios) {
        acc += m;
        if (acc >= 1.0 - kappa - 1e-12) {
            rep.eps_measured = r;
            break;
        }
    }
    rep.kappa_measured = below;
    rep.lower_holds = below <= kappa + 1e-12;
    rep.marginal_bound_holds = bound_ok;
    return rep;
}

// --------------------------------------------------------------- good sets

namespace {

void require_distribution(const std::vector<double>& pi, std::size_t n) {
    if (pi.size() != n) throw InputError("distribution has the wrong length");
    double sum = 0;
    for (double p : pi) {
        if (!(p >= 0.0)) throw InputError("distribution has a negative or NaN entry");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw InputError("distribution is not normalised");
}

}  // namespace

VertexSet good_set(const Graph& gamma, const std::vector<double>& pi2, double c) {
    const std::size_t n = gamma.n();
    require_distribution(pi2, n);
    VertexSet out(n);
    for (Vertex x = 0; x < n; ++x) {
        double non = 0;
        for (Vertex y = 0; y < n; ++y)
            if (!gamma.adjacent(x, y)) non += pi2[y];
        if (non >= c - 1e-12) out.insert(x);
    }
    return out;
}

VertexSet good_set_family(const Graph& gamma, const std::vector<double>& pi2, const std::vector<VertexSet>& family,
                          double c, double gamma_param, std::size_t t) {
    const std::size_t n = gamma.n();
    require_distribution(pi2, n);
    if (family.size() != n) throw InputError("good_set_family: one set per vertex expected");
    for (Vertex y = 0; y < n; ++y)
        if (pi2[y] > 0 && (family[y].universe() != n || family[y].size() < t || family[y].empty()))
            throw InputError("good_set_family: S_y smaller than t on the support of pi2");
    const double cut = std::sqrt(gamma_param);
    VertexSet out(n);
    for (Vertex x = 0; x < n; ++x) {
        double bad = 0;
        for (Vertex y = 0; y < n; ++y) {
            if (pi2[y] <= 0) continue;
            const auto& S = family[y];
            const auto kept = S.size() - S.intersection_size(gamma.neighbors(x));
            if (static_cast<double>(kept) < c * static_cast<double>(S.size())) bad += pi2[y];
        }
        if (bad < cut) out.insert(x);
    }
    return out;
}

}  // namespace indturan
