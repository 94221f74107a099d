#pragma once

#include "carnot/liealg.hpp"

#include <array>
#include <map>
#include <vector>

// Graded Chevalley-Eilenberg complex in arities 1-3 with trivial
// coefficients. Signs are pinned by the anchor d(a^2) = a^1 ^ b^1 on m0:
//   (d1 phi)(x,y)   = phi([x,y])
//   (d2 om)(x,y,z)  = om([x,y],z) + om([y,z],x) + om([z,x],y)
// so Z^2 = ker d2 and B^2 = im d1 directly.

namespace carnot {

struct OneCochain {
    std::size_t grading = 0;
    std::map<std::size_t, Scalar> terms;  // basis index -> coeff
};

struct ThreeCochain {
    std::size_t grading = 0;
    std::map<std::array<std::size_t, 3>, Scalar> terms;  // strictly increasing
};

TwoCochain d1(const GradedLieAlgebra& g, const OneCochain& phi);
ThreeCochain d2(const GradedLieAlgebra& g, const TwoCochain& om);

// All strictly increasing pairs (i, j) with deg i + deg j = k, in order.
std::vector<std::pair<std::size_t, std::size_t>> pair_basis_of_grading(
    const GradedLieAlgebra& g, std::size_t k);

// Coordinates of a grading-k 2-cochain over pair_basis_of_grading(g, k).
std::vector<Scalar> cochain_coordinates(
    const GradedLieAlgebra& g, const TwoCochain& om,
    const std::vector<std::pair<std::size_t, std::size_t>>& pairs);

TwoCochain cochain_from_coordinates(
    const GradedLieAlgebra& g, std::size_t grading,
    const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
    const std::vector<Scalar>& coords);

struct CohomologySpace {
    std::size_t grading = 0;
    std::vector<std::pair<std::size_t, std::size_t>> pair_basis;
    Subspace cocycle_basis;      // Z^2_(k) in pair coordinates
    Subspace coboundary_basis;   // B^2_(k) in pair coordinates
    std::size_t h_dim = 0;
    std::vector<TwoCochain> representatives;  // complement of B in Z
};

// Exact kernel/image computation restricted to grading k (2 <= k <= length+1).
CohomologySpace h2_graded(const GradedLieAlgebra& g, std::size_t k);

// (k, dim H^2_(k)) for k = 2 .. length+1.
std::vector<std::pair<std::size_t, std::size_t>> h2_profile(const GradedLieAlgebra& g);

}  // namespace carnot
