#include <doctest.h>

#include "carnot/catalog.hpp"
#include "carnot/cohomology.hpp"
#include "carnot/liealg.hpp"

#include <random>

using namespace carnot;

namespace {

FamilySpec sp(Family f, std::size_t n, int sign = +1, std::vector<std::size_t> S = {},
              int s = 1) {
    FamilySpec out;
    out.family = f;
    out.n = n;
    out.sign = sign;
    out.S = std::move(S);
    out.s = s;
    return out;
}

SparseVec unit(const GradedLieAlgebra& g, const std::string& lab) {
    return {{g.label_index(lab), Scalar::one(g.mode())}};
}

}  // namespace

TEST_CASE("bracket on n2: Table-1 entries and antisymmetry") {
    GradedLieAlgebra g = build(sp(Family::n2, 8));
    auto one = Scalar::one(g.mode());
    // [f1, f4] = -3 f5
    SparseVec v = g.bracket(unit(g, "f1"), unit(g, "f4"));
    REQUIRE(v.size() == 1);
    CHECK(v.at(g.label_index("f5")) == Scalar::from_int(-3, g.mode()));
    // [f3, f4] = 3 f7
    v = g.bracket(unit(g, "f3"), unit(g, "f4"));
    REQUIRE(v.size() == 1);
    CHECK(v.at(g.label_index("f7")) == Scalar::from_int(3, g.mode()));
    // [x, x] = 0 on a random combination
    SparseVec x{{0, one}, {3, Scalar::from_int(2, g.mode())}};
    CHECK(g.bracket(x, x).empty());
}

TEST_CASE("check_jacobi passes on catalog algebras and catches corruption") {
    CHECK(check_jacobi(build(sp(Family::m0, 4))).empty());
    CHECK(check_jacobi(build(sp(Family::n2, 12))).empty());

    GradedLieAlgebra bad = build(sp(Family::m0, 4));
    // grading check catches [a1, a2] -> a2 (degree 1 + 2 != 2) first
    bad.add_constant(bad.label_index("a1"), bad.label_index("a2"),
                     bad.label_index("a2"), Scalar::one(bad.mode()));
    CHECK(!check_grading(bad).empty());
}

TEST_CASE("lower central series dims") {
    // oracle: hand bracket of the 5 basis vectors of m0(4)
    auto lcs = lower_central_series(build(sp(Family::m0, 4)));
    std::vector<std::size_t> dims;
    for (const auto& t : lcs) dims.push_back(t.dim());
    CHECK(dims == std::vector<std::size_t>{5, 3, 2, 1});

    // abelian K^2 in degree 1
    GradedLieAlgebra ab("ab", FieldMode::rational(), {2}, {"x", "y"});
    CHECK(lower_central_series(ab).size() == 1);

    // n1(5) natural dims pattern 2,1,2,1,2
    CHECK(natural_grading_dims(build(sp(Family::n1, 5))) ==
          std::vector<std::size_t>{2, 1, 2, 1, 2});
}

TEST_CASE("natural grading dims of the width-one algebras") {
    CHECK(natural_grading_dims(build(sp(Family::Wplus, 7))) ==
          std::vector<std::size_t>{2, 1, 1, 1, 1, 1, 1});

    // the filiform chain presented with the width-one grading e_i at degree i
    GradedLieAlgebra chain("chain", FieldMode::rational(), {1, 1, 1, 1, 1, 1},
                           {"e1", "e2", "e3", "e4", "e5", "e6"});
    for (std::size_t i = 2; i <= 5; ++i)
        chain.add_constant("e1", "e" + std::to_string(i), "e" + std::to_string(i + 1),
                           1);
    CHECK(natural_grading_dims(chain) == std::vector<std::size_t>{2, 1, 1, 1, 1});
    GradedLieAlgebra gr = associated_graded(chain);
    CHECK(gr.degree_dims() == build(sp(Family::m0, 5)).degree_dims());
    // any already-Carnot algebra: natural dims equal the degree dims
    for (auto s : {sp(Family::m0, 6), sp(Family::n2, 9), sp(Family::n1, 6, -1)}) {
        GradedLieAlgebra g = build(s);
        CHECK(natural_grading_dims(g) == g.degree_dims());
    }
}

TEST_CASE("associated graded of an already-Carnot algebra is isomorphic to it") {
    GradedLieAlgebra g = build(sp(Family::m0_S, 5, +1, {3}));
    GradedLieAlgebra gr = associated_graded(g);
    CHECK(gr.degree_dims() == g.degree_dims());
    CHECK(check_jacobi(gr).empty());
    CHECK(is_carnot(gr));
}

TEST_CASE("is_carnot and width") {
    CHECK(is_carnot(build(sp(Family::m0, 7))));
    CHECK(!is_carnot(build(sp(Family::Wplus, 6))));
    CHECK(!is_carnot(build(sp(Family::m2, 6))));
    CHECK(!is_carnot(build(sp(Family::fial_ones, 8))));
    CHECK(width_ok_3_2(build(sp(Family::n1, 7))));
    CHECK(width_ok_3_2(build(sp(Family::n2, 13))));
    GradedLieAlgebra wide("wide", FieldMode::rational(), {2, 2}, {"a", "b", "c", "d"});
    CHECK(!width_ok_3_2(wide));
    GradedLieAlgebra ab("ab", FieldMode::rational(), {2}, {"x", "y"});
    CHECK(is_carnot(ab));
}

TEST_CASE("growth profiles") {
    // F_{m0}(k) = k + 1
    GrowthProfile p = growth(build(sp(Family::m0, 9)));
    for (std::size_t k = 1; k <= 9; ++k) CHECK(p.values[k - 1] == k + 1);
    // n1: 3n/2 <= F(n) <= (3n+1)/2. For n2 the component dims force
    // (4n-1)/3 <= F(n) <= (4n+2)/3: at n = 6m+4 the value is exactly
    // (4n-1)/3, one third below the rounder displayed constant
    GrowthProfile p1 = growth(build(sp(Family::n1, 20)));
    for (std::size_t n = 1; n <= 20; ++n) {
        CHECK(3 * n <= 2 * p1.values[n - 1]);
        CHECK(2 * p1.values[n - 1] <= 3 * n + 1);
    }
    GrowthProfile p2 = growth(build(sp(Family::n2, 20)));
    for (std::size_t n = 1; n <= 20; ++n) {
        CHECK(4 * n - 1 <= 3 * p2.values[n - 1]);
        CHECK(3 * p2.values[n - 1] <= 4 * n + 2);
    }
    CHECK(p1.width == 2);
}

TEST_CASE("quotient: truncation, full, and the diagonal n2 ideal") {
    GradedLieAlgebra g = build(sp(Family::n1, 7));
    GradedLieAlgebra t = quotient(g, top_component_ideal(g));
    CHECK(t.degree_dims() == build(sp(Family::n1, 6)).degree_dims());
    CHECK(t.constants() == build(sp(Family::n1, 6)).constants());

    CHECK(quotient(g, full_ideal(g)).dim() == 0);

    // non-ideal input is rejected: a random degree-2 line is not an ideal
    GradedIdeal bad;
    for (std::size_t d = 1; d <= g.length(); ++d) {
        std::size_t nd = g.basis_of_degree(d).size();
        bad.by_degree.push_back(d == 2 ? Subspace::full(nd, g.mode())
                                       : Subspace::zero(nd, g.mode()));
    }
    CHECK_THROWS_AS((void)quotient(g, bad), std::invalid_argument);
}

TEST_CASE("n2 truncation by the top ideal gives the n_{2,s} dimensions") {
    GradedLieAlgebra q = build(sp(Family::n2s, 7, +1, {}, 1));
    CHECK(q.dim() == 9);  // 8m+1 at m=1
    CHECK(check_jacobi(q).empty());
    CHECK(is_carnot(q));
    GradedLieAlgebra q3 = build(sp(Family::n2s, 7, +1, {}, 3));
    CHECK(q3.dim() == 9);
    CHECK(check_jacobi(q3).empty());
    CHECK(is_carnot(q3));
}

TEST_CASE("central extension: m0(2) -> m0(3), zero cochain, n2 -> n2^3") {
    GradedLieAlgebra h3 = build(sp(Family::m0, 2));
    TwoCochain om;
    om.grading = 3;
    om.add(h3.label_index("a1"), h3.label_index("a2"), Scalar::one(h3.mode()));
    auto ext = central_extension(h3, {om}, {"a3"});
    CHECK(ext.independent_in_h2);
    CHECK(ext.algebra.constants() == build(sp(Family::m0, 3)).constants());

    // zero cochain: abelian summand, flagged dependent
    TwoCochain zero;
    zero.grading = 3;
    auto ext0 = central_extension(h3, {zero});
    CHECK(!ext0.independent_in_h2);
    CHECK(ext0.algebra.dim() == h3.dim() + 1);
    CHECK(check_jacobi(ext0.algebra).empty());

    // n2 extended by b^1 ^ a^2 (= f^2 ^ f^3): [f2, f3] = z
    GradedLieAlgebra n2a = build(sp(Family::n2, 8));
    TwoCochain f23;
    f23.grading = 3;
    f23.add(n2a.label_index("f2"), n2a.label_index("f3"), Scalar::one(n2a.mode()));
    auto ext3 = central_extension(n2a, {f23}, {"z"});
    CHECK(ext3.independent_in_h2);
    CHECK(ext3.algebra.constants() == build(sp(Family::n2_3, 8)).constants());

    // a non-closed cochain is rejected
    TwoCochain badc;
    badc.grading = 4;
    badc.add(h3.label_index("b1"), h3.label_index("a2"),
             Scalar::one(h3.mode()));  // b^1 ^ a^2 is not closed on m0(3)
    GradedLieAlgebra m03 = build(sp(Family::m0, 3));
    TwoCochain bad4;
    bad4.grading = 4;
    bad4.add(m03.label_index("b1"), m03.label_index("a3"), Scalar::one(m03.mode()));
    CHECK_THROWS_AS((void)central_extension(m03, {bad4}), std::invalid_argument);
}

TEST_CASE("extension followed by quotient-by-new-center returns the base") {
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<int> pick(0, 3);
    for (int t = 0; t < 20; ++t) {
        FamilySpec bases[] = {sp(Family::m0, 4 + t % 5), sp(Family::n2, 7 + t % 6),
                              sp(Family::n1, 4 + t % 6, t % 2 ? 1 : -1),
                              sp(Family::m0_S, 5 + 2 * (t % 3), +1, {3})};
        GradedLieAlgebra g = build(bases[pick(rng)]);
        // random cocycle at the top grading
        auto space = h2_graded(g, g.length() + 1);
        if (space.h_dim == 0) continue;
        std::uniform_int_distribution<long> co(-3, 3);
        TwoCochain om;
        om.grading = g.length() + 1;
        bool nonzero = false;
        for (const auto& rep : space.representatives) {
            long c = co(rng);
            if (c == 0) continue;
            nonzero = true;
            for (const auto& [ij, v] : rep.terms)
                om.add(ij.first, ij.second, v * Scalar::from_int(c, g.mode()));
        }
        if (!nonzero) continue;
        auto ext = central_extension(g, {om});
        GradedLieAlgebra back = quotient(ext.algebra, top_component_ideal(ext.algebra));
        CHECK(back.constants() == g.constants());
    }
}

TEST_CASE("lower central series of Carnot algebras is the degree filtration") {
    for (auto s : {sp(Family::m0_S, 7, +1, {3, 5}), sp(Family::n2, 10),
                   sp(Family::n1, 8, -1)}) {
        GradedLieAlgebra g = build(s);
        auto lcs = lower_central_series(g);
        REQUIRE(lcs.size() == g.length());
        for (std::size_t k = 1; k <= lcs.size(); ++k) {
            std::size_t expect = 0;
            for (std::size_t d = k; d <= g.length(); ++d)
                expect += g.basis_of_degree(d).size();
            CHECK(lcs[k - 1].dim() == expect);
        }
    }
}
