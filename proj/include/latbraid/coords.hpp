#pragma once

#include "latbraid/numeric.hpp"
#include "latbraid/triangulation.hpp"

#include <array>
#include <vector>

namespace latbraid {

// Result of checking all 3*|triangles| triangle inequalities.
struct CoordValidity {
    bool valid = true;
    std::vector<int> violated_triangles;
};

// A coordinate vector is a valid multicurve chart iff every triangle obeys all
// three triangle inequalities E_a <= E_b + E_c.
template <class Scalar>
CoordValidity validate_coords(const Triangulation& tri, const Vec<Scalar>& c) {
    if (c.size() != tri.num_edges())
        throw std::invalid_argument("validate_coords: coordinate dimension mismatch");
    CoordValidity out;
    for (int t = 0; t < tri.num_triangles(); ++t) {
        const Triangle& T = tri.triangle(t);
        const Scalar& a = c[T[0].edge];
        const Scalar& b = c[T[1].edge];
        const Scalar& d = c[T[2].edge];
        if (a > b + d || b > a + d || d > a + b) {
            out.valid = false;
            out.violated_triangles.push_back(t);
        }
    }
    return out;
}

// Connector weights of the canonical train track inside one triangle:
// mu(c_k) = (E_{k+1} + E_{k+2} - E_k) / 2, indexed opposite each corner slot.
// Integer mode demands an even coordinate sum; negative weights mean the
// triangle inequalities fail.
template <class Scalar>
std::array<Scalar, 3> interior_weights(const Triangulation& tri, int t, const Vec<Scalar>& c) {
    const Triangle& T = tri.triangle(t);
    const Scalar e0 = c[T[0].edge], e1 = c[T[1].edge], e2 = c[T[2].edge];
    std::array<Scalar, 3> mu{(e1 + e2 - e0) / 2, (e0 + e2 - e1) / 2, (e0 + e1 - e2) / 2};
    for (const Scalar& m : mu)
        if (m < 0) throw std::domain_error("interior_weights: triangle inequality violated");
    return mu;
}

inline std::array<ExactInt, 3> interior_weights_exact(const Triangulation& tri, int t,
                                                      const Vec<ExactInt>& c) {
    const Triangle& T = tri.triangle(t);
    const ExactInt sum = c[T[0].edge] + c[T[1].edge] + c[T[2].edge];
    if (sum % 2 != 0)
        throw std::domain_error("interior_weights: odd coordinate sum (parity violation)");
    return interior_weights<ExactInt>(tri, t, c);
}

template <class Scalar>
Vec<Scalar> to_vec(const std::vector<long long>& v) {
    Vec<Scalar> out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[(Eigen::Index)i] = Scalar(v[i]);
    return out;
}

}  // namespace latbraid
