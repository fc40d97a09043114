#pragma once

#include "latbraid/entropy.hpp"
#include "latbraid/model.hpp"

#include <string>
#include <vector>

namespace latbraid {

enum class SearchMode { A, B };

struct SearchConfig {
    std::string model;
    int length = 2;
    SearchMode mode = SearchMode::A;
    double tol = 1e-10;
    int max_iter = 200;
    int shards = 1;                    // worker threads
    std::string checkpoint_dir;       // empty: no checkpointing
    bool restrict_first = true;       // canonical first operation
    bool two_pass = true;             // coarse pre-pass + exact refinement
    double coarse_tol = 1e-4;
    int coarse_max_iter = 30;
    double coarse_margin = 5e-3;      // candidates within this of the running max survive
};

struct SearchResult {
    double max_tepo = -1.0;
    std::vector<BraidWord> maximizers;     // every word within tie_tol of the max
    unsigned long long words_evaluated = 0;
    double wall_seconds = 0.0;
    double tie_tol = 1e-9;
    int first_op_classes = 0;              // canonical first operations used
};

// Reject when the two operations share a graph edge. Excludes adjacent
// inverse pairs and repeated generators as a side effect.
bool mode_b_accept(const Operation& prev, const Operation& next);

// One representative per orbit of the operation alphabet under the model's
// symmetry group (closed under composition); lexicographically least.
std::vector<int> canonical_first_ops(const LatticeModel& model);

SearchResult search_max_tepo(const SearchConfig& config);
SearchResult search_max_tepo(const LatticeModel& model, const SearchConfig& config);

}  // namespace latbraid
