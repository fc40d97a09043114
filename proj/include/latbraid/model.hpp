#pragma once

#include "latbraid/chain.hpp"
#include "latbraid/coords.hpp"
#include "latbraid/numeric.hpp"
#include "latbraid/triangulation.hpp"
#include "latbraid/word.hpp"

#include <nlohmann/json_fwd.hpp>

#include <map>
#include <random>
#include <string>
#include <vector>

namespace latbraid {

// A symmetry of the model: a relabeling of the triangulation, possibly after
// flipping auxiliary edges whose image would not be a triangulation edge.
struct SymmetryAction {
    std::string name;
    std::vector<int> edge_perm;   // forward map: edge e -> image s(e)
    std::vector<int> aux_flips;   // flips applied before the relabeling
    int orientation = +1;         // -1 for mirror symmetries
    CoordChain chain;             // compiled coordinate action
};

// The paper's per-model generator data: one example flip sequence; every other
// generator is obtained by conjugating with the model symmetries.
struct GeneratorRule {
    int edge = 0;
    std::vector<FlipToken> flip_sequence;
    std::vector<int> relabel;   // coordinate permutation after the flips
    int chirality = +1;         // -1: the sequence realizes the CW generator
};

// A torus lattice model: triangulation, graph-edge subset, generators,
// symmetries, and the braid operation alphabet.
class LatticeModel {
public:
    static LatticeModel from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;

    const std::string& name() const { return name_; }
    const std::string& lattice_kind() const { return lattice_; }
    int num_points() const { return num_points_; }
    const Triangulation& triangulation() const { return tri_; }
    const std::vector<int>& graph_edges() const { return graph_edges_; }
    bool is_graph_edge(int e) const { return graph_flag_[e]; }
    std::pair<int, int> edge_ends(int e) const { return tri_.edge_ends(e); }
    const std::vector<GeneratorRule>& example_generators() const { return examples_; }
    const GeneratorRule& example_generator() const { return examples_.front(); }
    const std::vector<SymmetryAction>& symmetries() const { return symmetries_; }
    const std::vector<long long>& initial_coords_raw() const { return initial_; }
    const std::vector<std::vector<long long>>& alt_initial_coords_raw() const { return alt_initial_; }

    int num_generators() const { return 2 * static_cast<int>(graph_edges_.size()); }

    const CoordChain& generator(int edge, int sign) const;

    // One chain for a whole word (used by the spectral linearization).
    CoordChain compose_word(const BraidWord& w) const;

    // All maximal matchings of the graph crossed with sign choices, sorted.
    // Computed on first use; call once before sharing across threads.
    const std::vector<Operation>& operations() const;
    const std::vector<std::vector<int>>& matchings() const;

    template <class Scalar>
    Vec<Scalar> apply_generator(Vec<Scalar> c, int edge, int sign) const {
        return generator(edge, sign).apply(std::move(c));
    }

    template <class Scalar>
    Vec<Scalar> apply_operation(Vec<Scalar> c, const Operation& op, Vec<Scalar>& scratch) const {
        for (const auto& [e, s] : op.gens) generator(e, s).apply_in_place(c, scratch);
        return c;
    }

    template <class Scalar>
    Vec<Scalar> apply_word(Vec<Scalar> c, const BraidWord& w) const {
        Vec<Scalar> scratch;
        for (const Operation& op : w.ops) c = apply_operation(std::move(c), op, scratch);
        return c;
    }

    template <class Scalar>
    Vec<Scalar> apply_symmetry(Vec<Scalar> c, const std::string& sym_name) const {
        for (const SymmetryAction& s : symmetries_)
            if (s.name == sym_name) return s.chain.apply(std::move(c));
        throw std::invalid_argument("unknown symmetry: " + sym_name);
    }

    template <class Scalar>
    Vec<Scalar> initial_coords() const {
        return to_vec<Scalar>(initial_);
    }

    // Load-time validation: Euler characteristic, edge-count formula, flip
    // sequence closure, generator relations, operation counts.
    void validate() const;

    // A random vector in the valid cone (see validate()).
    Vec<ExactInt> random_valid_vector(std::mt19937& rng) const;

private:
    friend LatticeModel build_model(std::string name, std::string lattice, int num_points,
                                    Triangulation tri, std::vector<int> graph_edges,
                                    std::vector<GeneratorRule> examples,
                                    std::vector<SymmetryAction> syms,
                                    std::vector<long long> initial,
                                    std::vector<std::vector<long long>> alt_initial);

    void derive_generators();
    void enumerate_alphabet() const;

    std::string name_;
    std::string lattice_;
    int num_points_ = 0;
    Triangulation tri_;
    std::vector<int> graph_edges_;
    std::vector<bool> graph_flag_;
    std::vector<GeneratorRule> examples_;
    std::vector<SymmetryAction> symmetries_;
    std::vector<long long> initial_;
    std::vector<std::vector<long long>> alt_initial_;
    std::map<std::pair<int, int>, CoordChain> generators_;
    mutable std::vector<std::vector<int>> matchings_;
    mutable std::vector<Operation> operations_;
    mutable bool alphabet_done_ = false;
};

LatticeModel build_model(std::string name, std::string lattice, int num_points,
                         Triangulation tri, std::vector<int> graph_edges,
                         std::vector<GeneratorRule> examples, std::vector<SymmetryAction> syms,
                         std::vector<long long> initial,
                         std::vector<std::vector<long long>> alt_initial);

// The six built-in torus models: sq2, sq4, tri3, tri4, hex2, hex6.
const std::vector<std::string>& builtin_model_names();
const LatticeModel& builtin_model(const std::string& name);

// Model-definition JSON files (same schema as to_json/from_json).
LatticeModel load_model(const std::string& path);
void save_model(const LatticeModel& m, const std::string& path);

// FNV-1a checksum of the embedded fixture text, revalidated at load.
unsigned long long builtin_fixture_checksum();

}  // namespace latbraid
