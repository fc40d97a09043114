#include "latbraid/model.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>

namespace latbraid {

using nlohmann::json;

namespace {

std::vector<int> inverse_perm(const std::vector<int>& p) {
    std::vector<int> q(p.size());
    for (size_t i = 0; i < p.size(); ++i) q[p[i]] = static_cast<int>(i);
    return q;
}

}  // namespace

// Random multicurve-valid integer vector: a nonzero non-negative combination of
// the committed starting curves (the valid cone is convex), made generic by a
// few random generator applications (homeomorphisms preserve validity).
Vec<ExactInt> LatticeModel::random_valid_vector(std::mt19937& rng) const {
    const int n = tri_.num_edges();
    std::uniform_int_distribution<int> coef(0, 5);
    Vec<ExactInt> c = Vec<ExactInt>::Zero(n);
    bool nonzero = false;
    while (!nonzero) {
        const int r0 = coef(rng);
        for (int i = 0; i < n; ++i) c[i] = r0 * initial_[i];
        for (const auto& alt : alt_initial_) {
            const int r = coef(rng);
            for (int i = 0; i < n; ++i) c[i] += r * alt[i];
        }
        for (int i = 0; i < n; ++i) nonzero |= (c[i] != 0);
    }
    std::uniform_int_distribution<int> nops(0, 3);
    std::uniform_int_distribution<size_t> pick(0, graph_edges_.size() - 1);
    std::uniform_int_distribution<int> sgn(0, 1);
    const int k = nops(rng);
    for (int i = 0; i < k; ++i)
        c = generator(graph_edges_[pick(rng)], sgn(rng) ? +1 : -1).apply(std::move(c));
    return c;
}

const CoordChain& LatticeModel::generator(int edge, int sign) const {
    auto it = generators_.find({edge, sign});
    if (it == generators_.end())
        throw std::invalid_argument("unknown generator edge " + std::to_string(edge + 1));
    return it->second;
}

CoordChain LatticeModel::compose_word(const BraidWord& w) const {
    CoordChain chain = CoordChain::identity(tri_.num_edges());
    for (const Operation& op : w.ops)
        for (const auto& [e, s] : op.gens) chain = chain.then(generator(e, s));
    return chain;
}

void LatticeModel::derive_generators() {
    generators_.clear();
    std::vector<int> pending;
    std::set<int> covered;
    for (const GeneratorRule& rule : examples_) {
        std::vector<DeltaStep> steps;
        const Triangulation final_tri = compile_flip_sequence(tri_, rule.flip_sequence, steps);

        // closure: the flipped triangulation must match the reference through the
        // stored relabeling, with only the generator's two endpoints swapped
        const auto [u, v] = tri_.edge_ends(rule.edge);
        if (u == v) throw std::invalid_argument("example generator edge is a loop");
        std::vector<int> vmap(tri_.num_vertices());
        std::iota(vmap.begin(), vmap.end(), 0);
        std::swap(vmap[u], vmap[v]);
        const auto isos = isomorphisms(final_tri, tri_, &vmap);
        const std::vector<int> expected = inverse_perm(rule.relabel);
        bool found = false;
        for (const auto& p : isos) found |= (p == expected);
        if (!found)
            throw std::invalid_argument(name_ +
                                        ": flip sequence does not restore the triangulation "
                                        "under the stored relabeling");

        CoordChain chain(steps, rule.relabel);
        if (rule.chirality < 0) chain = chain.inverse();
        generators_[{rule.edge, +1}] = chain;
        generators_[{rule.edge, -1}] = chain.inverse();
        covered.insert(rule.edge);
        pending.push_back(rule.edge);
    }

    // reach every other graph edge by symmetry conjugation
    while (!pending.empty()) {
        const int src = pending.back();
        pending.pop_back();
        for (const SymmetryAction& s : symmetries_) {
            const int dst = s.edge_perm[src];
            if (!graph_flag_[dst] || covered.count(dst)) continue;
            CoordChain conj = s.chain.inverse().then(generators_[{src, +1}]).then(s.chain);
            if (s.orientation > 0) {
                generators_[{dst, +1}] = conj;
                generators_[{dst, -1}] = conj.inverse();
            } else {
                generators_[{dst, -1}] = conj;
                generators_[{dst, +1}] = conj.inverse();
            }
            covered.insert(dst);
            pending.push_back(dst);
        }
    }
    if ((int)covered.size() != (int)graph_edges_.size())
        throw std::invalid_argument(name_ + ": symmetries do not reach every graph edge");
}

const std::vector<Operation>& LatticeModel::operations() const {
    if (!alphabet_done_) enumerate_alphabet();
    return operations_;
}

const std::vector<std::vector<int>>& LatticeModel::matchings() const {
    if (!alphabet_done_) enumerate_alphabet();
    return matchings_;
}

void LatticeModel::enumerate_alphabet() const {
    alphabet_done_ = true;
    matchings_.clear();
    std::set<int> verts;
    for (int e : graph_edges_) {
        auto [a, b] = tri_.edge_ends(e);
        verts.insert(a);
        verts.insert(b);
    }
    const std::vector<int> vlist(verts.begin(), verts.end());
    std::set<std::vector<int>> found;
    std::vector<int> cur;
    std::set<int> used;
    size_t max_size = 0;

    std::function<void(size_t)> grow = [&](size_t vi) {
        while (vi < vlist.size() && used.count(vlist[vi])) ++vi;
        if (vi == vlist.size()) {
            std::vector<int> m = cur;
            std::sort(m.begin(), m.end());
            max_size = std::max(max_size, m.size());
            found.insert(std::move(m));
            return;
        }
        const int v = vlist[vi];
        for (int e : graph_edges_) {
            auto [a, b] = tri_.edge_ends(e);
            if (a == b) continue;
            int other = -1;
            if (a == v && !used.count(b)) other = b;
            else if (b == v && !used.count(a)) other = a;
            if (other < 0) continue;
            used.insert(v);
            used.insert(other);
            cur.push_back(e);
            grow(vi + 1);
            cur.pop_back();
            used.erase(v);
            used.erase(other);
        }
        used.insert(v);   // leave v unmatched
        grow(vi + 1);
        used.erase(v);
    };
    grow(0);

    for (const auto& m : found)
        if (m.size() == max_size) matchings_.push_back(m);

    operations_.clear();
    for (const auto& m : matchings_) {
        const size_t k = m.size();
        for (unsigned mask = 0; mask < (1u << k); ++mask) {
            Operation op;
            for (size_t i = 0; i < k; ++i)
                op.gens.push_back({m[i], (mask >> i) & 1u ? -1 : +1});
            std::sort(op.gens.begin(), op.gens.end());
            operations_.push_back(std::move(op));
        }
    }
    std::sort(operations_.begin(), operations_.end());
}

void LatticeModel::validate() const {
    // surface invariants: |E| = 3(n + 2g - 2) with g = 1, Euler characteristic 0
    if (tri_.euler_characteristic() != 0)
        throw std::invalid_argument(name_ + ": Euler characteristic is not 0 (torus expected)");
    if (tri_.num_edges() != 3 * num_points_)
        throw std::invalid_argument(name_ + ": edge count != 3(n + 2g - 2) for g = 1");
    if (tri_.num_vertices() != num_points_)
        throw std::invalid_argument(name_ + ": vertex count mismatch");

    // symmetries must map the triangulation to itself and graph edges to graph edges
    for (const SymmetryAction& s : symmetries_) {
        Triangulation t = tri_;
        for (int e : s.aux_flips) t.flip(e);
        std::vector<Triangle> mapped;
        for (const Triangle& tr : t.triangles()) {
            Triangle m;
            for (int k = 0; k < 3; ++k) m[k] = Slot{s.edge_perm[tr[k].edge], -1, -1};
            mapped.push_back(m);
        }
        // compare edge structure only (vertex labels may permute)
        auto strip = [](const Triangulation& x) {
            std::vector<std::array<int, 3>> key;
            for (const Triangle& tr : x.triangles()) {
                std::array<int, 3> e{tr[0].edge, tr[1].edge, tr[2].edge};
                std::array<int, 3> best = e;
                for (int r = 1; r < 3; ++r) {
                    std::array<int, 3> rot{e[r % 3], e[(r + 1) % 3], e[(r + 2) % 3]};
                    best = std::min(best, rot);
                }
                key.push_back(best);
            }
            std::sort(key.begin(), key.end());
            return key;
        };
        std::vector<std::array<int, 3>> mkey;
        for (const Triangle& tr : mapped) {
            std::array<int, 3> e{tr[0].edge, tr[1].edge, tr[2].edge};
            std::array<int, 3> best = e;
            for (int r = 1; r < 3; ++r) {
                std::array<int, 3> rot{e[r % 3], e[(r + 1) % 3], e[(r + 2) % 3]};
                best = std::min(best, rot);
            }
            mkey.push_back(best);
        }
        std::sort(mkey.begin(), mkey.end());
        if (mkey != strip(tri_))
            throw std::invalid_argument(name_ + ": symmetry " + s.name +
                                        " does not preserve the triangulation");
        for (int e : graph_edges_)
            if (!graph_flag_[s.edge_perm[e]])
                throw std::invalid_argument(name_ + ": symmetry " + s.name +
                                            " maps a graph edge off the graph");
    }

    // generator relations on random valid vectors: sigma sigma^-1 = 1, and
    // vertex-disjoint generators commute
    std::mt19937 rng(0xACE1u);
    for (int rep = 0; rep < 8; ++rep) {
        const Vec<ExactInt> c = random_valid_vector(rng);
        for (int e : graph_edges_) {
            const Vec<ExactInt> back = generator(e, -1).apply(generator(e, +1).apply(c));
            if (back != c)
                throw std::invalid_argument(name_ + ": sigma sigma^-1 != id on edge " +
                                            std::to_string(e + 1));
        }
    }
    for (int e1 : graph_edges_) {
        for (int e2 : graph_edges_) {
            if (e1 >= e2) continue;
            auto [a1, b1] = tri_.edge_ends(e1);
            auto [a2, b2] = tri_.edge_ends(e2);
            if (a1 == a2 || a1 == b2 || b1 == a2 || b1 == b2) continue;
            const Vec<ExactInt> c = random_valid_vector(rng);
            const Vec<ExactInt> x = generator(e2, +1).apply(generator(e1, +1).apply(c));
            const Vec<ExactInt> y = generator(e1, +1).apply(generator(e2, +1).apply(c));
            if (x != y)
                throw std::invalid_argument(name_ + ": disjoint generators do not commute");
        }
    }

    // initial vector sanity
    if ((int)initial_.size() != tri_.num_edges())
        throw std::invalid_argument(name_ + ": initial coordinate dimension mismatch");
}

LatticeModel build_model(std::string name, std::string lattice, int num_points,
                         Triangulation tri, std::vector<int> graph_edges,
                         std::vector<GeneratorRule> examples, std::vector<SymmetryAction> syms,
                         std::vector<long long> initial,
                         std::vector<std::vector<long long>> alt_initial) {
    LatticeModel m;
    m.name_ = std::move(name);
    m.lattice_ = std::move(lattice);
    m.num_points_ = num_points;
    m.tri_ = std::move(tri);
    m.graph_edges_ = std::move(graph_edges);
    m.graph_flag_.assign(m.tri_.num_edges(), false);
    for (int e : m.graph_edges_) m.graph_flag_[e] = true;
    m.examples_ = std::move(examples);
    m.symmetries_ = std::move(syms);
    m.initial_ = std::move(initial);
    m.alt_initial_ = std::move(alt_initial);

    // compile symmetry chains: flips first, then the coordinate permutation
    for (SymmetryAction& s : m.symmetries_) {
        std::vector<FlipToken> seq;
        for (int e : s.aux_flips) seq.push_back(FlipToken{e, 0});
        std::vector<DeltaStep> steps;
        compile_flip_sequence(m.tri_, seq, steps);
        s.chain = CoordChain(steps, inverse_perm(s.edge_perm));
    }
    m.derive_generators();
    m.validate();
    return m;
}

LatticeModel LatticeModel::from_json(const json& j) {
    const int n_edges = static_cast<int>(j.at("edges").size());
    std::vector<int> graph_edges;
    for (int e = 0; e < n_edges; ++e)
        if (j.at("edges")[e].at("graph").get<bool>()) graph_edges.push_back(e);

    std::vector<Triangle> tris;
    int max_vertex = -1;
    for (const auto& jt : j.at("triangles")) {
        Triangle t;
        for (int s = 0; s < 3; ++s) {
            t[s] = Slot{jt[s][0].get<int>(), jt[s][1].get<int>(), jt[s][2].get<int>()};
            max_vertex = std::max({max_vertex, t[s].tail, t[s].head});
        }
        tris.push_back(t);
    }
    Triangulation tri(tris, n_edges, max_vertex + 1);

    auto read_rule = [](const json& jg) {
        GeneratorRule gen;
        gen.edge = jg.at("edge").get<int>();
        gen.flip_sequence = parse_flip_sequence(jg.at("flip_sequence").get<std::string>());
        gen.relabel = jg.at("relabel").get<std::vector<int>>();
        gen.chirality = jg.value("chirality", +1);
        return gen;
    };
    std::vector<GeneratorRule> rules{read_rule(j.at("example_generator"))};
    if (j.contains("extra_generators"))
        for (const auto& je : j.at("extra_generators")) rules.push_back(read_rule(je));

    std::vector<SymmetryAction> syms;
    for (const auto& js : j.at("symmetries")) {
        SymmetryAction s;
        s.name = js.at("name").get<std::string>();
        s.edge_perm = js.at("edge_perm").get<std::vector<int>>();
        s.aux_flips = js.value("aux_flips", std::vector<int>{});
        s.orientation = js.at("orientation").get<int>();
        syms.push_back(std::move(s));
    }

    std::vector<std::vector<long long>> alts;
    if (j.contains("alt_initial_coords"))
        alts = j.at("alt_initial_coords").get<std::vector<std::vector<long long>>>();

    return build_model(j.at("name").get<std::string>(), j.at("lattice").get<std::string>(),
                       j.at("num_points").get<int>(), std::move(tri), std::move(graph_edges),
                       std::move(rules), std::move(syms),
                       j.at("initial_coords").get<std::vector<long long>>(), std::move(alts));
}

json LatticeModel::to_json() const {
    json j;
    j["name"] = name_;
    j["lattice"] = lattice_;
    j["num_points"] = num_points_;
    json edges = json::array();
    for (int e = 0; e < tri_.num_edges(); ++e) {
        auto [a, b] = tri_.edge_ends(e);
        edges.push_back({{"graph", (bool)graph_flag_[e]}, {"ends", {a, b}}});
    }
    j["edges"] = std::move(edges);
    json tris = json::array();
    for (const Triangle& t : tri_.triangles()) {
        json jt = json::array();
        for (int s = 0; s < 3; ++s) jt.push_back({t[s].edge, t[s].tail, t[s].head});
        tris.push_back(std::move(jt));
    }
    j["triangles"] = std::move(tris);
    j["example_generator"] = {{"edge", examples_.front().edge},
                              {"flip_sequence", format_flip_sequence(examples_.front().flip_sequence)},
                              {"relabel", examples_.front().relabel},
                              {"chirality", examples_.front().chirality}};
    if (examples_.size() > 1) {
        nlohmann::json extra = nlohmann::json::array();
        for (size_t i = 1; i < examples_.size(); ++i)
            extra.push_back({{"edge", examples_[i].edge},
                             {"flip_sequence", format_flip_sequence(examples_[i].flip_sequence)},
                             {"relabel", examples_[i].relabel},
                             {"chirality", examples_[i].chirality}});
        j["extra_generators"] = std::move(extra);
    }
    json syms = json::array();
    for (const SymmetryAction& s : symmetries_)
        syms.push_back({{"name", s.name},
                        {"edge_perm", s.edge_perm},
                        {"aux_flips", s.aux_flips},
                        {"orientation", s.orientation}});
    j["symmetries"] = std::move(syms);
    j["initial_coords"] = initial_;
    j["alt_initial_coords"] = alt_initial_;
    return j;
}

LatticeModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open model file: " + path);
    json j;
    in >> j;
    return LatticeModel::from_json(j);
}

void save_model(const LatticeModel& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write model file: " + path);
    out << m.to_json().dump(1) << "\n";
}

BraidWord parse_word(const LatticeModel& model, const std::string& text) {
    BraidWord w;
    std::stringstream ss(text);
    std::string tok;
    const int n_gen = static_cast<int>(model.graph_edges().size());
    (void)n_gen;
    while (ss >> tok) {
        Operation op;
        std::stringstream os(tok);
        std::string g;
        while (std::getline(os, g, ',')) {
            if (g.empty()) throw std::invalid_argument("parse_word: empty generator token");
            const int idx = std::stoi(g);
            if (idx == 0) throw std::invalid_argument("parse_word: generator indices are 1-based");
            const int edge = std::abs(idx) - 1;
            if (edge >= model.triangulation().num_edges() || !model.is_graph_edge(edge))
                throw std::invalid_argument("parse_word: generator index out of range: " + g);
            op.gens.push_back({edge, idx > 0 ? +1 : -1});
        }
        // vertex-disjointness within the operation
        for (size_t i = 0; i < op.gens.size(); ++i) {
            for (size_t k = i + 1; k < op.gens.size(); ++k) {
                auto [a1, b1] = model.edge_ends(op.gens[i].first);
                auto [a2, b2] = model.edge_ends(op.gens[k].first);
                if (a1 == a2 || a1 == b2 || b1 == a2 || b1 == b2)
                    throw std::invalid_argument("parse_word: non-disjoint operation: " + tok);
            }
        }
        std::sort(op.gens.begin(), op.gens.end());
        w.ops.push_back(std::move(op));
    }
    return w;
}

std::string format_word(const BraidWord& word) {
    std::string out;
    for (size_t i = 0; i < word.ops.size(); ++i) {
        if (i) out += " ";
        for (size_t k = 0; k < word.ops[i].gens.size(); ++k) {
            if (k) out += ",";
            const auto& [e, s] = word.ops[i].gens[k];
            out += std::to_string(s * (e + 1));
        }
    }
    return out;
}

}  // namespace latbraid
