#pragma once

#include "latbraid/model.hpp"

#include <utility>
#include <vector>

namespace latbraid {

// M x N square-lattice torus (M rows, N columns, both >= 3). The triangulation
// adds one "/" diagonal per square face, which keeps the translation symmetry.
struct LatticeSpec {
    int rows = 4;
    int cols = 4;
};

struct MatchingTemplate {
    std::vector<int> edges;         // graph edges forming a perfect matching
    std::pair<int, int> flux;       // (horizontal, vertical) signed wrap counts
};

// Auto-generated model: every generator gets its fan flip sequence and the
// point-swap relabeling from the planning recipe, validated at build time.
LatticeModel build_square_lattice_model(const LatticeSpec& spec);

// All perfect matchings, deterministic order. Throws on odd vertex count.
std::vector<MatchingTemplate> enumerate_matchings(const LatticeSpec& spec);

std::pair<int, int> matching_flux(const LatticeSpec& spec, const LatticeModel& model,
                                  const std::vector<int>& edges);

// Filter by flux-group membership and expand sign combinations.
std::vector<Operation> operations_from_flux(const LatticeSpec& spec, const LatticeModel& model,
                                            const std::vector<std::pair<int, int>>& flux_set);

// Indexing helpers shared with the tests: edges are created in a fixed scan
// order (per cell: bottom, "/" diagonal, left).
int horizontal_edge_id(const LatticeSpec& spec, int i, int j);
int vertical_edge_id(const LatticeSpec& spec, int i, int j);
int diagonal_edge_id(const LatticeSpec& spec, int i, int j);

}  // namespace latbraid
