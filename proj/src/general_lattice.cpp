#include "latbraid/general_lattice.hpp"

#include <functional>
#include <set>

namespace latbraid {

namespace {

// Cells are scanned x-major: cell (i, j) owns its bottom edge, its "/"
// diagonal and its left edge, in that order.
int cell(const LatticeSpec& sp, int i, int j) {
    const int W = sp.cols, H = sp.rows;
    return ((j % H + H) % H) * W + ((i % W + W) % W);
}

}  // namespace

int horizontal_edge_id(const LatticeSpec& sp, int i, int j) { return 3 * cell(sp, i, j); }
int diagonal_edge_id(const LatticeSpec& sp, int i, int j) { return 3 * cell(sp, i, j) + 1; }
int vertical_edge_id(const LatticeSpec& sp, int i, int j) { return 3 * cell(sp, i, j) + 2; }

LatticeModel build_square_lattice_model(const LatticeSpec& sp) {
    const int W = sp.cols, H = sp.rows;
    if (W < 3 || H < 3)
        throw std::invalid_argument("build_square_lattice_model: rows and cols must be >= 3");
    const int n_pts = W * H;
    auto vid = [&](int i, int j) { return cell(sp, i, j); };

    std::vector<Triangle> tris;
    for (int j = 0; j < H; ++j) {
        for (int i = 0; i < W; ++i) {
            const int p = vid(i, j), px = vid(i + 1, j), py = vid(i, j + 1), pxy = vid(i + 1, j + 1);
            const int h = horizontal_edge_id(sp, i, j);
            const int d = diagonal_edge_id(sp, i, j);
            const int v = vertical_edge_id(sp, i, j);
            const int vr = vertical_edge_id(sp, i + 1, j);
            const int ht = horizontal_edge_id(sp, i, j + 1);
            tris.push_back(Triangle{Slot{h, p, px}, Slot{d, px, py}, Slot{v, py, p}});
            tris.push_back(Triangle{Slot{vr, px, pxy}, Slot{ht, pxy, py}, Slot{d, py, px}});
        }
    }
    Triangulation tri(tris, 3 * n_pts, n_pts);

    std::vector<int> graph;
    for (int j = 0; j < H; ++j)
        for (int i = 0; i < W; ++i) {
            graph.push_back(horizontal_edge_id(sp, i, j));
            graph.push_back(vertical_edge_id(sp, i, j));
        }
    std::sort(graph.begin(), graph.end());

    // star of a point in CCW order from +x:
    //   [h+, v+, d(i-1,j), h-, v-, d(i,j-1)]
    auto star = [&](int i, int j) {
        return std::array<int, 6>{horizontal_edge_id(sp, i, j), vertical_edge_id(sp, i, j),
                                  diagonal_edge_id(sp, i - 1, j), horizontal_edge_id(sp, i - 1, j),
                                  vertical_edge_id(sp, i, j - 1), diagonal_edge_id(sp, i, j - 1)};
    };

    // fan recipe: flip the first four non-generator star edges CCW around each
    // point, then relabel by rotating the combined star one notch
    std::vector<GeneratorRule> rules;
    const int N_E = 3 * n_pts;
    auto make_rule = [&](int i, int j, bool horizontal) {
        const std::array<int, 6> sA = star(i, j);
        const std::array<int, 6> sB = horizontal ? star(i + 1, j) : star(i, j + 1);
        const int angA = horizontal ? 0 : 1;   // index of the generator in star(A)
        const int angB = horizontal ? 3 : 4;   // and seen from B (opposite direction)
        std::array<int, 5> fanA{}, fanB{};
        for (int k = 0; k < 5; ++k) {
            fanA[k] = sA[(angA + 1 + k) % 6];
            fanB[k] = sB[(angB + 1 + k) % 6];
        }
        GeneratorRule rule;
        rule.edge = horizontal ? horizontal_edge_id(sp, i, j) : vertical_edge_id(sp, i, j);
        for (int k = 0; k < 4; ++k) rule.flip_sequence.push_back(FlipToken{fanA[k], 0});
        for (int k = 0; k < 4; ++k) rule.flip_sequence.push_back(FlipToken{fanB[k], 0});
        // star rotation a1->a2->...->a5->b1->...->b5->a1, as an edge map
        std::vector<int> fwd(N_E);
        std::iota(fwd.begin(), fwd.end(), 0);
        for (int k = 0; k < 4; ++k) fwd[fanA[k]] = fanA[k + 1];
        fwd[fanA[4]] = fanB[0];
        for (int k = 0; k < 4; ++k) fwd[fanB[k]] = fanB[k + 1];
        fwd[fanB[4]] = fanA[0];
        // coordinate relabel is the inverse of the forward edge map
        rule.relabel.resize(N_E);
        for (int e = 0; e < N_E; ++e) rule.relabel[fwd[e]] = e;
        rule.chirality = +1;
        return rule;
    };
    for (int j = 0; j < H; ++j)
        for (int i = 0; i < W; ++i) {
            rules.push_back(make_rule(i, j, true));
            rules.push_back(make_rule(i, j, false));
        }

    // symmetries: the two unit translations (pure relabelings, since the "/"
    // diagonal pattern is translation invariant)
    std::vector<SymmetryAction> syms;
    auto translation = [&](int di, int dj, const std::string& nm) {
        SymmetryAction s;
        s.name = nm;
        s.orientation = +1;
        s.edge_perm.resize(N_E);
        for (int j = 0; j < H; ++j)
            for (int i = 0; i < W; ++i) {
                s.edge_perm[horizontal_edge_id(sp, i, j)] = horizontal_edge_id(sp, i + di, j + dj);
                s.edge_perm[diagonal_edge_id(sp, i, j)] = diagonal_edge_id(sp, i + di, j + dj);
                s.edge_perm[vertical_edge_id(sp, i, j)] = vertical_edge_id(sp, i + di, j + dj);
            }
        return s;
    };
    syms.push_back(translation(1, 0, "tx"));
    syms.push_back(translation(0, 1, "ty"));

    std::vector<long long> init(N_E, 1);
    for (int j = 0; j < H; ++j)
        for (int i = 0; i < W; ++i) init[diagonal_edge_id(sp, i, j)] = 2;
    std::vector<long long> alt_h(N_E, 0), alt_v(N_E, 0);
    for (int j = 0; j < H; ++j)
        for (int i = 0; i < W; ++i) {
            alt_h[vertical_edge_id(sp, i, j)] = 1;    // horizontal curve family
            alt_h[diagonal_edge_id(sp, i, j)] = 1;
            alt_v[horizontal_edge_id(sp, i, j)] = 1;  // vertical curve family
            alt_v[diagonal_edge_id(sp, i, j)] = 1;
        }

    return build_model("sq" + std::to_string(H) + "x" + std::to_string(W), "square", n_pts,
                       std::move(tri), std::move(graph), std::move(rules), std::move(syms),
                       std::move(init), {alt_h, alt_v});
}

std::vector<MatchingTemplate> enumerate_matchings(const LatticeSpec& sp) {
    const int W = sp.cols, H = sp.rows;
    if ((W * H) % 2 != 0)
        throw std::invalid_argument("enumerate_matchings: odd vertex count has no perfect matching");
    const LatticeModel model = build_square_lattice_model(sp);
    const int n_pts = W * H;

    std::vector<MatchingTemplate> out;
    std::vector<int> cur;
    std::vector<bool> used(n_pts, false);
    // incident graph edges per vertex
    std::vector<std::vector<std::pair<int, int>>> inc(n_pts);   // (edge, other vertex)
    for (int e : model.graph_edges()) {
        auto [a, b] = model.edge_ends(e);
        inc[a].push_back({e, b});
        inc[b].push_back({e, a});
    }
    std::function<void(int)> grow = [&](int v) {
        while (v < n_pts && used[v]) ++v;
        if (v == n_pts) {
            MatchingTemplate t;
            t.edges = cur;
            std::sort(t.edges.begin(), t.edges.end());
            t.flux = matching_flux(sp, model, t.edges);
            out.push_back(std::move(t));
            return;
        }
        for (const auto& [e, w] : inc[v]) {
            if (used[w] || w == v) continue;
            used[v] = used[w] = true;
            cur.push_back(e);
            grow(v + 1);
            cur.pop_back();
            used[v] = used[w] = false;
        }
    };
    grow(0);
    std::sort(out.begin(), out.end(),
              [](const MatchingTemplate& a, const MatchingTemplate& b) { return a.edges < b.edges; });
    return out;
}

std::pair<int, int> matching_flux(const LatticeSpec& sp, const LatticeModel&,
                                  const std::vector<int>& edges) {
    const int W = sp.cols, H = sp.rows;
    int fh = 0, fv = 0;
    for (int e : edges) {
        const int c = e / 3, kind = e % 3;
        const int i = c % W, j = c / W;
        if (kind == 0 && i == W - 1) {
            // horizontal wrap edge in point-row j; rows are counted from the top
            const int row_from_top = H - j;
            fh += (row_from_top % 2 == 1) ? 1 : -1;
        } else if (kind == 2 && j == H - 1) {
            const int col_from_left = i + 1;
            fv += (col_from_left % 2 == 1) ? 1 : -1;
        }
    }
    return {fh, fv};
}

std::vector<Operation> operations_from_flux(const LatticeSpec& sp, const LatticeModel& model,
                                            const std::vector<std::pair<int, int>>& flux_set) {
    std::vector<Operation> out;
    const std::set<std::pair<int, int>> wanted(flux_set.begin(), flux_set.end());
    for (const MatchingTemplate& t : enumerate_matchings(sp)) {
        if (!wanted.count(t.flux)) continue;
        const size_t k = t.edges.size();
        for (unsigned mask = 0; mask < (1u << k); ++mask) {
            Operation op;
            for (size_t x = 0; x < k; ++x)
                op.gens.push_back({t.edges[x], (mask >> x) & 1u ? -1 : +1});
            std::sort(op.gens.begin(), op.gens.end());
            out.push_back(std::move(op));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace latbraid
