#include "latbraid/entropy.hpp"

#include <cmath>

namespace latbraid {

namespace {

template <class Scalar>
TepoReport tepo_impl(const LatticeModel& model, const BraidWord& word, Vec<Scalar> c,
                     const TepoOptions& opt) {
    if (word.ops.empty()) throw std::invalid_argument("tepo: empty braid word");
    if (c.size() != model.triangulation().num_edges())
        throw std::invalid_argument("tepo: coordinate dimension mismatch");
    bool any = false;
    for (int i = 0; i < c.size(); ++i) any |= (c[i] != 0);
    if (!any) throw std::invalid_argument("tepo: zero initial vector");

    const int N = word.length();
    TepoReport rep;
    rep.word_length = N;
    rep.backend = std::is_same_v<Scalar, ExactInt> ? Backend::Exact : Backend::Float;

    Scalar W_prev = c.sum();
    double log_scale = 0.0;            // accumulated renormalization (float path)
    double log_prev = log_value(W_prev);
    rep.log_weight_history.push_back(log_prev);
    double h_prev = 0.0;
    bool have_prev = false;
    int hits = 0;
    Vec<Scalar> scratch;

    for (int k = 1; k <= opt.max_iter; ++k) {
        for (const Operation& op : word.ops) c = model.apply_operation(std::move(c), op, scratch);
        Scalar mx = c[0];
        for (int i = 1; i < c.size(); ++i)
            if (c[i] > mx) mx = c[i];
        if (mx == 0) {
            rep.tepo = 0.0;
            rep.dilation = 1.0;
            rep.converged = true;
            rep.iterations = k;
            return rep;
        }
        const Scalar W = c.sum();
        const double logW = log_value(W) + log_scale;
        const double h = (logW - log_prev) / N;
        rep.log_weight_history.push_back(logW);
        rep.iterations = k;
        if (have_prev && std::abs(h - h_prev) < opt.tol) {
            if (++hits >= opt.streak) {
                rep.tepo = h;
                rep.dilation = std::exp(N * h);
                rep.converged = true;
                rep.normalized_coords.resize(c.size());
                for (int i = 0; i < c.size(); ++i) {
                    if constexpr (std::is_same_v<Scalar, ExactInt>)
                        rep.normalized_coords[i] = static_cast<double>(BigFloat(c[i]) / BigFloat(mx));
                    else
                        rep.normalized_coords[i] = static_cast<double>(c[i] / mx);
                }
                return rep;
            }
        } else {
            hits = 0;
        }
        h_prev = h;
        have_prev = true;
        log_prev = logW;
        if constexpr (std::is_same_v<Scalar, double>) {
            if (mx > 1e100) {
                c /= mx;
                log_scale += std::log(mx);
            }
        }
    }
    rep.tepo = have_prev ? h_prev : 0.0;
    rep.dilation = std::exp(N * rep.tepo);
    rep.converged = false;
    return rep;
}

}  // namespace

TepoReport tepo(const LatticeModel& model, const BraidWord& word, const Vec<double>& initial,
                const TepoOptions& opt) {
    if (opt.backend == Backend::Exact) {
        Vec<ExactInt> c(initial.size());
        for (int i = 0; i < initial.size(); ++i) c[i] = ExactInt(std::llround(initial[i]));
        return tepo_impl<ExactInt>(model, word, std::move(c), opt);
    }
    return tepo_impl<double>(model, word, initial, opt);
}

TepoReport tepo_exact(const LatticeModel& model, const BraidWord& word,
                      const Vec<ExactInt>& initial, const TepoOptions& opt) {
    return tepo_impl<ExactInt>(model, word, initial, opt);
}

TepoReport tepo(const LatticeModel& model, const BraidWord& word, const TepoOptions& opt) {
    return tepo(model, word, default_initial_coords(model), opt);
}

Vec<double> default_initial_coords(const LatticeModel& model) {
    return to_vec<double>(model.initial_coords_raw());
}

Classification classify(const TepoReport& report, double threshold) {
    Classification out;
    out.warning_nonconverged = !report.converged;
    const auto& lw = report.log_weight_history;
    const int window = std::min<int>(10, static_cast<int>(lw.size()));
    if (window >= 2) {
        // least-squares slope of log W over the tail window
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (int i = 0; i < window; ++i) {
            const double x = i;
            const double y = lw[lw.size() - window + i];
            sx += x; sy += y; sxx += x * x; sxy += x * y;
        }
        const double denom = window * sxx - sx * sx;
        out.fitted_rate = denom != 0 ? (window * sxy - sx * sy) / denom : 0.0;
    }
    const bool sub_exponential = out.fitted_rate < threshold / 2;
    if (report.converged)
        out.growth = report.tepo < threshold ? GrowthClass::EntropyZero
                                             : GrowthClass::PseudoAnosovLike;
    else
        out.growth = sub_exponential ? GrowthClass::EntropyZero : GrowthClass::PseudoAnosovLike;
    return out;
}

}  // namespace latbraid
