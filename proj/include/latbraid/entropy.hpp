#pragma once

#include "latbraid/model.hpp"
#include "latbraid/numeric.hpp"

#include <optional>
#include <vector>

namespace latbraid {

struct TepoOptions {
    double tol = 1e-10;
    int max_iter = 200;       // word applications
    Backend backend = Backend::Float;
    // The raw successive-ratio stopping rule can fire on transient exact-ratio
    // coincidences of small integer vectors; require it to hold this many
    // consecutive times.
    int streak = 3;
};

struct TepoReport {
    double tepo = 0.0;            // log units per operation
    double dilation = 1.0;        // exp(N * tepo)
    int iterations = 0;
    bool converged = false;
    int word_length = 0;
    Backend backend = Backend::Float;
    std::vector<double> normalized_coords;   // final coordinates / max
    std::vector<double> log_weight_history;  // log W_k, for growth classification
};

// Iterate c_k = word(c_{k-1}); W_k = sum of coordinates;
// h_k = log(W_k / W_{k-1}) / N; stop when successive estimates agree to tol.
TepoReport tepo(const LatticeModel& model, const BraidWord& word, const Vec<double>& initial,
                const TepoOptions& opt = {});
TepoReport tepo_exact(const LatticeModel& model, const BraidWord& word,
                      const Vec<ExactInt>& initial, const TepoOptions& opt = {});
TepoReport tepo(const LatticeModel& model, const BraidWord& word, const TepoOptions& opt = {});

// The committed per-model starting multicurve (for sq2 the published vector).
Vec<double> default_initial_coords(const LatticeModel& model);

enum class GrowthClass { PseudoAnosovLike, EntropyZero };

struct Classification {
    GrowthClass growth = GrowthClass::EntropyZero;
    bool warning_nonconverged = false;
    double fitted_rate = 0.0;     // slope of log W over the tail window
};

// Entropy-zero iff the converged estimate is below threshold or W_k growth is
// sub-exponential over the last-10-iteration window (linear fit on log W_k).
Classification classify(const TepoReport& report, double threshold = 1e-6);

}  // namespace latbraid
