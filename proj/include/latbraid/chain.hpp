#pragma once

#include "latbraid/numeric.hpp"
#include "latbraid/triangulation.hpp"

#include <numeric>
#include <vector>

namespace latbraid {

// One compiled flip: slot e takes max(c[a]+c[c2], c[b]+c[d]) - c[e].
struct DeltaStep {
    int e, a, b, c, d;
};

// A braid generator or symmetry compiled against the reference triangulation:
// a fixed list of delta updates followed by a relabeling permutation
// (out[i] = cur[perm[i]]). Composition and inversion stay in this form, so a
// whole word collapses to one chain.
class CoordChain {
public:
    CoordChain() = default;
    CoordChain(std::vector<DeltaStep> steps, std::vector<int> perm)
        : steps_(std::move(steps)), perm_(std::move(perm)) {}

    static CoordChain identity(int n) {
        std::vector<int> p(n);
        std::iota(p.begin(), p.end(), 0);
        return CoordChain({}, std::move(p));
    }

    static CoordChain permutation(std::vector<int> coord_perm) {
        return CoordChain({}, std::move(coord_perm));
    }

    const std::vector<DeltaStep>& steps() const { return steps_; }
    const std::vector<int>& perm() const { return perm_; }
    int size() const { return static_cast<int>(perm_.size()); }

    template <class Scalar>
    void apply_in_place(Vec<Scalar>& c, Vec<Scalar>& scratch) const {
        for (const DeltaStep& s : steps_) {
            const Scalar lhs = c[s.a] + c[s.c];
            const Scalar rhs = c[s.b] + c[s.d];
            c[s.e] = (lhs > rhs ? lhs : rhs) - c[s.e];
        }
        scratch.resize(c.size());
        for (int i = 0; i < (int)perm_.size(); ++i) scratch[i] = c[perm_[i]];
        c.swap(scratch);
    }

    template <class Scalar>
    Vec<Scalar> apply(Vec<Scalar> c) const {
        Vec<Scalar> scratch;
        apply_in_place(c, scratch);
        return c;
    }

    // this followed by other.
    CoordChain then(const CoordChain& other) const {
        std::vector<DeltaStep> steps = steps_;
        steps.reserve(steps_.size() + other.steps_.size());
        for (const DeltaStep& s : other.steps_)
            steps.push_back(DeltaStep{perm_[s.e], perm_[s.a], perm_[s.b], perm_[s.c], perm_[s.d]});
        std::vector<int> p(perm_.size());
        for (size_t i = 0; i < p.size(); ++i) p[i] = perm_[other.perm_[i]];
        return CoordChain(std::move(steps), std::move(p));
    }

    // Functional inverse: un-permute, then replay the deltas in reverse order
    // (each delta step is an involution on the coordinates it reads).
    CoordChain inverse() const {
        const int n = size();
        std::vector<int> ip(n);
        for (int i = 0; i < n; ++i) ip[perm_[i]] = i;
        CoordChain out = CoordChain::permutation(ip);
        std::vector<DeltaStep> rev(steps_.rbegin(), steps_.rend());
        std::vector<int> idp(n);
        std::iota(idp.begin(), idp.end(), 0);
        return out.then(CoordChain(std::move(rev), std::move(idp)));
    }

private:
    std::vector<DeltaStep> steps_;
    std::vector<int> perm_;
};

// Flip-sequence token: edge label plus prime count ("6''" = third flip at
// slot 6). Primes only record the convention; execution always flips the
// current occupant of the slot.
struct FlipToken {
    int edge = 0;
    int primes = 0;
};

// Run a flip sequence on a copy of `tri`, recording the delta chain.
// Returns the final triangulation; throws if a token's prime count does not
// match the number of times its slot has been flipped.
Triangulation compile_flip_sequence(const Triangulation& tri, const std::vector<FlipToken>& seq,
                                    std::vector<DeltaStep>& steps_out);

std::vector<FlipToken> parse_flip_sequence(const std::string& text);
std::string format_flip_sequence(const std::vector<FlipToken>& seq);

}  // namespace latbraid
