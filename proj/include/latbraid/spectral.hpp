#pragma once

#include "latbraid/model.hpp"
#include "latbraid/numeric.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace latbraid {

using MatI = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

struct InvariantTrack {
    Vec<BigFloat> coords;      // max-normalized projective invariant coordinates
    BigFloat dilation = 0;     // lambda = coordinate growth per word application
    double residual = 0.0;     // ||word(E) - lambda E||_inf / ||E||_inf
    int iterations = 0;
    bool converged = false;
};

// Power iteration with per-step max normalization (>= 50 decimal digits).
InvariantTrack invariant_coords(const LatticeModel& model, const BraidWord& word,
                                double tol = 1e-40, int max_iter = 4000);

BraidWord inverse_word(const BraidWord& w);

// Replace each max() in the word's flip chain by its strict branch at the
// invariant coordinates; the product of the per-flip linear maps and the
// relabeling permutations. Throws when any argmax is tied.
MatI linearize(const LatticeModel& model, const BraidWord& word, const Vec<BigFloat>& invariant);

double leading_eigenvalue(const MatI& m);

struct SplitStep {
    int edge = -1;
    Quad quad{};
    int branch = 0;      // 0: E' = A + C - E, 1: E' = B + D - E
    bool tie = false;    // this flip's edge tied with another maximum
};

struct SplittingSequence {
    std::vector<Triangulation> states;
    std::vector<Vec<BigFloat>> coords;
    std::vector<SplitStep> steps;              // steps[i] maps states[i] -> states[i+1]
    int preperiod = -1;
    int period = -1;
    std::vector<int> closure_perm;             // state[preperiod+period] -> state[preperiod]
    BigFloat closure_scale = 0;
    std::vector<int> tie_steps;                // indices of steps that broke a tie
    bool periodic() const { return period > 0; }
};

// Repeatedly flip the maximal-coordinate edge (a split of the carried track).
// Exactly tied maxima are taken in index order and reported in tie_steps; the
// recurrence check matches (triangulation isomorphism, proportional coords).
SplittingSequence splitting_sequence(const Triangulation& tri, const Vec<BigFloat>& coords,
                                     int max_steps = 200, double match_tol = 1e-30);

// Two-coloring of the periodic segment: at each flip the four quad edges
// alternate colors cyclically and the black pair forms a "Z" with the old
// diagonal. Colors are per state, constant on edges a flip does not touch,
// and closed up through the period's relabeling.
struct VeeringColoring {
    std::vector<std::vector<int>> colors;   // colors[j][e] in {0 black, 1 blue}, j over period states
    int chirality = 0;                      // which Z-convention was satisfiable
    int solutions = 0;                      // distinct solutions (global swap counts as 2)
};

std::optional<VeeringColoring> veering_coloring(const SplittingSequence& seq);

// The hand-built modified triangulation for beta* (two extra vertices in the
// three-cusp regions). Coordinates are linear in the minimal set (w,x,y,z):
//   w = (E2+E5-E3)/2, x = E4, y = (E2+E3-E5)/2, z = (E3+E5-E2)/2
// on the sq2 invariant coordinates E.
struct BetaStarTrack {
    Triangulation tri;
    MatI span;                       // 12x4: coords = span * (w,x,y,z)
    std::array<int, 4> minimal_edges;
    Vec<BigFloat> coords;            // at the invariant measure
    std::array<BigFloat, 4> wxyz;
};

BetaStarTrack beta_star_modified_track();

struct MinimalTransition {
    Eigen::Matrix<long long, 4, 4> matrix;
    std::array<long long, 5> char_poly;   // c0 + c1 x + ... + c4 x^4
    BigFloat largest_root = 0;
    bool palindromic = false;
};

// Replays the splitting/folding analysis for beta* and returns the minimal
// 4x4 transition matrix; throws if the derivation no longer reproduces it.
MinimalTransition minimal_transition_matrix_beta_star();

// Full 12x12 transition matrix over one period of a splitting sequence,
// pulled back through the closure relabeling (integer, exact).
MatI period_transition_matrix(const SplittingSequence& seq);

std::array<long long, 5> char_poly_4x4(const Eigen::Matrix<long long, 4, 4>& m);
BigFloat largest_real_root(const std::array<long long, 5>& poly);

struct SpectralReport {
    InvariantTrack track;
    MatI transition;            // full-coordinate linearized word matrix
    double leading = 0.0;
    int splitting_preperiod = -1;
    int splitting_period = -1;
    bool veering_ok = false;
};

SpectralReport spectral_report(const LatticeModel& model, const BraidWord& word);

}  // namespace latbraid
