#pragma once

#include "carnot/liealg.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace carnot {

// Degree-1 data of a graded map: square matrix A with A[r][c] = coefficient
// of target basis vector r in the image of source deg-1 vector c.
struct Deg1Map {
    Matrix a;
};

// Degree-preserving linear map between algebras of equal dimension vectors,
// one block per degree (target coords x source coords).
struct GradedMap {
    const GradedLieAlgebra* source = nullptr;
    const GradedLieAlgebra* target = nullptr;
    std::vector<Matrix> blocks;  // blocks[d-1]: basis_of_degree(d) sized

    SparseVec apply(const SparseVec& v) const;
    GradedMap compose(const GradedMap& inner) const;  // this ∘ inner
    std::optional<GradedMap> inverse() const;
};

// true iff every block is invertible and the map intertwines all brackets
bool verify_graded_iso(const GradedMap& f);

enum class TreePolicy { ForwardPairs, ReversePairs };

// Per-degree expression of each basis vector of g as a combination of
// brackets [deg-1, deg-(d-1)]; exists iff g is Carnot.
struct SpanningTree {
    struct Level {
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        std::vector<std::vector<Scalar>> expr;  // expr[t][p]: e_t = sum_p x [pair p]
        std::vector<std::size_t> coords;
    };
    std::vector<Level> levels;  // index d-2 for degree d
};

std::optional<SpanningTree> spanning_tree(const GradedLieAlgebra& g,
                                          TreePolicy policy = TreePolicy::ForwardPairs);

// Unique candidate extension of the degree-1 map, verified on every
// structure constant; nullopt when no graded homomorphism extends A.
std::optional<GradedMap> extend_deg1(const GradedLieAlgebra& g,
                                     const GradedLieAlgebra& h, const Deg1Map& A,
                                     const SpanningTree* tree = nullptr);

struct IsoCertificate {
    enum class Kind { Witness, Refutation } kind = Kind::Refutation;
    std::optional<Matrix> witness_deg1;  // deg-1 matrix over F_p; re-extend to get blocks
    std::int64_t prime = 0;
    std::size_t search_space = 0;  // |GL(dim g1, F_p)| candidates examined
    bool exhausted = false;
};

// Exhaustive decision over F_p; requires dim g1 <= 2. Algebras may be given
// over Q (reduced mod p internally) or over F_p already.
IsoCertificate iso_search_fp(const GradedLieAlgebra& g, const GradedLieAlgebra& h,
                             std::int64_t p);

struct AutGroupFp {
    std::int64_t prime = 0;
    std::vector<Matrix> elements;  // deg-1 matrices over F_p that extend
};

AutGroupFp aut_group_fp(const GradedLieAlgebra& g, std::int64_t p);

// Closed-form automorphism families quoted per catalog family, instantiated
// at exact rational parameters and checked via verify_graded_iso.
struct AutFormulaParams {
    Scalar alpha, beta, mu;              // m0^S / torus families
    Scalar c, cos_or_cosh, sin_or_sinh;  // n1 families (rational conic point)
    int component_sign = +1;             // the +- branch in the n1 formulas
};

bool verify_paper_aut_formula(const GradedLieAlgebra& g, const std::string& family,
                              const AutFormulaParams& params);

// Deterministic rational witness search used for equivalence-of-extension
// checks: tries a small fixed grid of deg-1 matrices over Q.
std::optional<GradedMap> find_iso_q_grid(const GradedLieAlgebra& g,
                                         const GradedLieAlgebra& h);

}  // namespace carnot
