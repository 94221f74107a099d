#pragma once

#include "carnot/liealg.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace carnot {

enum class Family {
    m0, m0_S, m1, m1_S, m02_S, m03_S,
    n1, n11, n2, n2_3, n2s, n2s_3,
    Wplus, m2, fial_ones, L23,
};

std::string family_id(Family f);
std::optional<Family> family_from_id(const std::string& id);

struct FamilySpec {
    Family family = Family::m0;
    std::size_t n = 2;             // length
    int sign = +1;                 // +-1 for the n1 families
    std::vector<std::size_t> S;    // strictly increasing odd set
    int s = 1;                     // 1|2|3 for n_{2,s}
    FieldMode mode = FieldMode::rational();

    std::string display_name() const;  // e.g. "m0^{3,5}(7)", "n1-(6)", "n2,3(13)"
};

// Throws std::invalid_argument naming the violated parameter bound.
void validate(const FamilySpec& spec);

// Constructors follow the structure-constant tables; every build passes the
// grading/antisymmetry/Jacobi checks (asserted in tests, not here).
GradedLieAlgebra build(const FamilySpec& spec);

// Structure constants d_{q,l} of n2 depending on q, l mod 8, as validated
// against the 3x3 loop-matrix commutators.
extern const std::array<std::array<int, 8>, 8> kN2Table;

// Natural degree of the basis vector f_idx of n2 (idx >= 1).
std::size_t n2_degree(std::size_t idx);

// Canonical bigrading (p, q) of f_{idx}; p + q = natural degree.
std::pair<std::size_t, std::size_t> bigrading_n2(std::size_t idx);

// 2x2 / 3x3 polynomial matrices; entries[(r,c)] = (coeff, t-degree).
struct LoopMatrix {
    std::size_t size = 2;
    std::map<std::pair<std::size_t, std::size_t>, std::pair<long, std::size_t>> entries;

    static LoopMatrix commutator(const LoopMatrix& a, const LoopMatrix& b);
    bool operator==(const LoopMatrix&) const = default;
};

enum class Realization { n1, n1pm, n2 };

// Brackets computed from actual matrix commutators, truncated at degree n.
// n1: sl2 loops in the natural a/b/c basis (the Kac-Moody generator basis);
// n1pm: so(3)/so(2,1) loops in the u/v/w basis; n2: 3x3 loops, f basis.
GradedLieAlgebra build_matrix_realization(Realization which, std::size_t n,
                                          int sign = +1,
                                          const FieldMode& mode = FieldMode::rational());

// Serre relations for the two Kac-Moody families:
//   n1: ad^3 e1(e2) = ad^3 e2(e1) = 0 (generators a1, b1 of the sl2 basis)
//   n2: ad^2 e2(e1) = 0, ad^5 e1(e2) = 0, and ad^4 e1(e2) != 0 (sharp)
bool check_serre(Realization which, std::size_t n);

// The defining cocycles of a family over its base algebra; returns the base
// and the cochains. central_extension(base, cocycles) is isomorphic to
// build(spec) (witnessed in tests).
struct DefiningCocycles {
    GradedLieAlgebra base;
    std::vector<TwoCochain> cocycles;
};
DefiningCocycles defining_cocycles(const FamilySpec& spec);

// One registry row per family for `catalog --list`.
struct FamilyInfo {
    std::string id;
    std::string parameters;
    std::string validity;
    std::string dimension;
    std::string notes;
};
std::vector<FamilyInfo> family_registry();

}  // namespace carnot
