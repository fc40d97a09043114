#pragma once

#include <array>
#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace latbraid {

// One directed edge slot inside a triangle: edge id plus (tail, head) vertices.
struct Slot {
    int edge = -1;
    int tail = -1;
    int head = -1;
    bool operator==(const Slot& o) const { return edge == o.edge && tail == o.tail && head == o.head; }
    bool operator<(const Slot& o) const {
        return std::tie(edge, tail, head) < std::tie(o.edge, o.tail, o.head);
    }
};

using Triangle = std::array<Slot, 3>;

// Where an edge sits: (triangle index, slot index) pair for each of its two sides.
struct EdgeSlots {
    int t0 = -1, s0 = -1, t1 = -1, s1 = -1;
};

// Cyclic quadrilateral around a flippable edge. Boundary edges (a,b,c,d) are in
// cyclic order; delta pairs are {a,c} and {b,d}:  E' = max(A+C, B+D) - E.
struct Quad {
    int a, b, c, d;
};

// Combinatorial triangulation of a closed oriented surface. Triangles are
// CCW-ordered; every edge occupies exactly two slots, once per direction.
// Multi-edges and loops are allowed (the small torus models need both).
class Triangulation {
public:
    Triangulation() = default;
    Triangulation(std::vector<Triangle> tris, int num_edges, int num_vertices)
        : tris_(std::move(tris)), num_edges_(num_edges), num_vertices_(num_vertices) {
        rebuild_index();
        validate();
    }

    int num_edges() const { return num_edges_; }
    int num_vertices() const { return num_vertices_; }
    int num_triangles() const { return static_cast<int>(tris_.size()); }
    const std::vector<Triangle>& triangles() const { return tris_; }
    const Triangle& triangle(int t) const { return tris_[t]; }
    const EdgeSlots& slots(int e) const { return slots_[e]; }

    std::pair<int, int> edge_ends(int e) const {
        const Slot& s = tris_[slots_[e].t0][slots_[e].s0];
        return {std::min(s.tail, s.head), std::max(s.tail, s.head)};
    }

    // Euler characteristic V - E + F.
    int euler_characteristic() const {
        return num_vertices_ - num_edges_ + num_triangles();
    }

    bool self_adjacent(int e) const { return slots_[e].t0 == slots_[e].t1; }

    // The cyclic quadrilateral around edge e; nullopt when the two sides of e
    // lie in the same triangle (the flip is undefined there).
    std::optional<Quad> quad_of(int e) const {
        const EdgeSlots& es = slots_[e];
        if (es.t0 == es.t1) return std::nullopt;
        const Triangle& T1 = tris_[es.t0];
        const Triangle& T2 = tris_[es.t1];
        return Quad{T1[(es.s0 + 1) % 3].edge, T1[(es.s0 + 2) % 3].edge,
                    T2[(es.s1 + 1) % 3].edge, T2[(es.s1 + 2) % 3].edge};
    }

    // Flip (Whitehead move) of edge e in place; returns the quad used.
    Quad flip(int e) {
        const EdgeSlots es = slots_[e];
        if (es.t0 == es.t1)
            throw std::invalid_argument("flip: edge " + std::to_string(e) + " is self-adjacent");
        Triangle& T1 = tris_[es.t0];
        Triangle& T2 = tris_[es.t1];
        const Slot b = T1[(es.s0 + 1) % 3], c = T1[(es.s0 + 2) % 3];
        const Slot f = T2[(es.s1 + 1) % 3], g = T2[(es.s1 + 2) % 3];
        const int w = b.head, x = f.head;
        T1 = Triangle{Slot{e, x, w}, c, f};
        T2 = Triangle{Slot{e, w, x}, g, b};
        rebuild_index();
        return Quad{b.edge, c.edge, f.edge, g.edge};
    }

    // Canonical key: each triangle rotated to its least representation, sorted.
    std::vector<Triangle> canonical_key() const {
        std::vector<Triangle> out;
        out.reserve(tris_.size());
        for (const Triangle& t : tris_) {
            Triangle best = t;
            for (int r = 1; r < 3; ++r) {
                Triangle rot{t[r % 3], t[(r + 1) % 3], t[(r + 2) % 3]};
                if (std::lexicographical_compare(rot.begin(), rot.end(), best.begin(), best.end()))
                    best = rot;
            }
            out.push_back(best);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    bool operator==(const Triangulation& o) const {
        return num_edges_ == o.num_edges_ && num_vertices_ == o.num_vertices_ &&
               canonical_key() == o.canonical_key();
    }

private:
    void rebuild_index() {
        slots_.assign(num_edges_, EdgeSlots{});
        for (int t = 0; t < (int)tris_.size(); ++t) {
            for (int s = 0; s < 3; ++s) {
                EdgeSlots& es = slots_[tris_[t][s].edge];
                if (es.t0 < 0) { es.t0 = t; es.s0 = s; }
                else { es.t1 = t; es.s1 = s; }
            }
        }
    }

    void validate() const {
        std::vector<int> count(num_edges_, 0);
        std::map<int, std::pair<int, int>> dir;  // edge -> (fwd seen, bwd seen)
        for (const Triangle& t : tris_) {
            for (int s = 0; s < 3; ++s) {
                const Slot& sl = t[s];
                if (sl.edge < 0 || sl.edge >= num_edges_)
                    throw std::invalid_argument("triangulation: edge id out of range");
                if (sl.head != t[(s + 1) % 3].tail)
                    throw std::invalid_argument("triangulation: triangle boundary not a closed walk");
                ++count[sl.edge];
            }
        }
        for (int e = 0; e < num_edges_; ++e)
            if (count[e] != 2)
                throw std::invalid_argument("triangulation: edge " + std::to_string(e) +
                                            " occupies " + std::to_string(count[e]) + " slots");
        // opposite orientations on the two sides
        std::map<int, std::vector<std::pair<int, int>>> ends;
        for (const Triangle& t : tris_)
            for (const Slot& sl : t) ends[sl.edge].push_back({sl.tail, sl.head});
        for (auto& [e, v] : ends)
            if (v[0].first != v[1].second || v[0].second != v[1].first)
                throw std::invalid_argument("triangulation: edge " + std::to_string(e) +
                                            " not traversed once in each direction");
    }

    std::vector<Triangle> tris_;
    std::vector<EdgeSlots> slots_;
    int num_edges_ = 0;
    int num_vertices_ = 0;
};

// Orientation-preserving isomorphisms F -> T as edge relabelings, optionally
// constrained to a given vertex map. Returned permutations map F-labels to
// T-labels. Propagation from a seeded triangle match; small instances only.
std::vector<std::vector<int>> isomorphisms(const Triangulation& F, const Triangulation& T,
                                           const std::vector<int>* vertex_map = nullptr);

}  // namespace latbraid
