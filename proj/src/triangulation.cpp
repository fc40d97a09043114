#include "latbraid/triangulation.hpp"
#include "latbraid/chain.hpp"

#include <deque>
#include <sstream>

namespace latbraid {

namespace {

struct SeedMatch {
    int tri, rot;
};

}  // namespace

std::vector<std::vector<int>> isomorphisms(const Triangulation& F, const Triangulation& T,
                                           const std::vector<int>* vertex_map) {
    std::vector<std::vector<int>> out;
    if (F.num_edges() != T.num_edges() || F.num_triangles() != T.num_triangles()) return out;
    const int n = F.num_edges();
    const auto t_key = T.canonical_key();

    for (int ti = 0; ti < T.num_triangles(); ++ti) {
        for (int rot = 0; rot < 3; ++rot) {
            std::vector<int> ep(n, -1);
            std::vector<int> vp(F.num_vertices(), -1);
            std::vector<SeedMatch> tri_match(F.num_triangles(), SeedMatch{-1, 0});
            std::deque<int> queue;
            bool ok = true;

            tri_match[0] = SeedMatch{ti, rot};
            queue.push_back(0);
            std::vector<bool> visited(F.num_triangles(), false);
            visited[0] = true;

            while (!queue.empty() && ok) {
                const int fi = queue.front();
                queue.pop_front();
                const SeedMatch sm = tri_match[fi];
                const Triangle& Ft = F.triangle(fi);
                const Triangle& Gt = T.triangle(sm.tri);
                for (int k = 0; k < 3 && ok; ++k) {
                    const Slot& fs = Ft[k];
                    const Slot& gs = Gt[(k + sm.rot) % 3];
                    if (ep[fs.edge] >= 0 && ep[fs.edge] != gs.edge) { ok = false; break; }
                    ep[fs.edge] = gs.edge;
                    for (auto [x, y] : {std::pair{fs.tail, gs.tail}, std::pair{fs.head, gs.head}}) {
                        if (vp[x] >= 0 && vp[x] != y) { ok = false; break; }
                        vp[x] = y;
                    }
                    if (!ok) break;
                    // cross to neighbors
                    const EdgeSlots& fes = F.slots(fs.edge);
                    const int nfi = (fes.t0 == fi && fes.s0 == k) ? fes.t1 : fes.t0;
                    const int nfs = (fes.t0 == fi && fes.s0 == k) ? fes.s1 : fes.s0;
                    const EdgeSlots& ges = T.slots(gs.edge);
                    const int gsi = (k + sm.rot) % 3;
                    const int ngi = (ges.t0 == sm.tri && ges.s0 == gsi) ? ges.t1 : ges.t0;
                    const int ngs = (ges.t0 == sm.tri && ges.s0 == gsi) ? ges.s1 : ges.s0;
                    const int nrot = ((ngs - nfs) % 3 + 3) % 3;
                    if (!visited[nfi]) {
                        visited[nfi] = true;
                        tri_match[nfi] = SeedMatch{ngi, nrot};
                        queue.push_back(nfi);
                    }
                }
            }
            if (!ok) continue;
            bool complete = true;
            for (int e = 0; e < n; ++e) complete &= (ep[e] >= 0);
            if (!complete) continue;

            // full verification: relabel F through (ep, vp) and compare keys
            std::vector<Triangle> mapped;
            mapped.reserve(F.num_triangles());
            for (const Triangle& t : F.triangles()) {
                Triangle m;
                for (int s = 0; s < 3; ++s)
                    m[s] = Slot{ep[t[s].edge], vp[t[s].tail], vp[t[s].head]};
                mapped.push_back(m);
            }
            try {
                Triangulation mt(mapped, n, T.num_vertices());
                if (mt.canonical_key() != t_key) continue;
            } catch (const std::exception&) {
                continue;
            }
            if (vertex_map) {
                bool vok = true;
                for (int v = 0; v < F.num_vertices(); ++v)
                    if (vp[v] >= 0 && vp[v] != (*vertex_map)[v]) vok = false;
                if (!vok) continue;
            }
            if (std::find(out.begin(), out.end(), ep) == out.end()) out.push_back(ep);
        }
    }
    return out;
}

Triangulation compile_flip_sequence(const Triangulation& tri, const std::vector<FlipToken>& seq,
                                    std::vector<DeltaStep>& steps_out) {
    Triangulation T = tri;
    steps_out.clear();
    std::vector<int> flipped(tri.num_edges(), 0);
    for (const FlipToken& tok : seq) {
        if (tok.edge < 0 || tok.edge >= tri.num_edges())
            throw std::invalid_argument("flip sequence: edge label out of range");
        if (flipped[tok.edge] != tok.primes)
            throw std::invalid_argument("flip sequence: prime count mismatch at edge " +
                                        std::to_string(tok.edge + 1));
        const Quad q = T.flip(tok.edge);
        steps_out.push_back(DeltaStep{tok.edge, q.a, q.b, q.c, q.d});
        ++flipped[tok.edge];
    }
    return T;
}

std::vector<FlipToken> parse_flip_sequence(const std::string& text) {
    std::vector<FlipToken> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        size_t a = tok.find_first_not_of(" \t");
        size_t b = tok.find_last_not_of(" \t");
        if (a == std::string::npos) continue;
        tok = tok.substr(a, b - a + 1);
        int primes = 0;
        while (!tok.empty() && tok.back() == '\'') {
            ++primes;
            tok.pop_back();
        }
        if (tok.empty()) throw std::invalid_argument("flip sequence: empty token");
        out.push_back(FlipToken{std::stoi(tok) - 1, primes});
    }
    return out;
}

std::string format_flip_sequence(const std::vector<FlipToken>& seq) {
    std::string out;
    for (size_t i = 0; i < seq.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(seq[i].edge + 1);
        out.append(seq[i].primes, '\'');
    }
    return out;
}

}  // namespace latbraid
