#include "carnot/cohomology.hpp"

#include <algorithm>

namespace carnot {

TwoCochain d1(const GradedLieAlgebra& g, const OneCochain& phi) {
    TwoCochain out;
    out.grading = phi.grading;
    for (std::size_t i = 0; i < g.dim(); ++i)
        for (std::size_t j = i + 1; j < g.dim(); ++j) {
            Scalar v = Scalar::zero(g.mode());
            for (const auto& [k, c] : g.bracket_basis(i, j)) {
                auto it = phi.terms.find(k);
                if (it != phi.terms.end()) v = v + c * it->second;
            }
            out.add(i, j, v);
        }
    return out;
}

ThreeCochain d2(const GradedLieAlgebra& g, const TwoCochain& om) {
    ThreeCochain out;
    out.grading = om.grading;
    std::size_t n = g.dim();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x + 1; y < n; ++y)
            for (std::size_t z = y + 1; z < n; ++z) {
                if (om.grading &&
                    g.degree(x) + g.degree(y) + g.degree(z) != om.grading)
                    continue;
                Scalar v = Scalar::zero(g.mode());
                auto term = [&](std::size_t a, std::size_t b, std::size_t c) {
                    for (const auto& [m, co] : g.bracket_basis(a, b))
                        v = v + co * om.value(m, c, g.mode());
                };
                term(x, y, z);
                term(y, z, x);
                term(z, x, y);
                if (!v.is_zero()) out.terms.emplace(std::array{x, y, z}, v);
            }
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> pair_basis_of_grading(
    const GradedLieAlgebra& g, std::size_t k) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < g.dim(); ++i)
        for (std::size_t j = i + 1; j < g.dim(); ++j)
            if (g.degree(i) + g.degree(j) == k) out.emplace_back(i, j);
    return out;
}

std::vector<Scalar> cochain_coordinates(
    const GradedLieAlgebra& g, const TwoCochain& om,
    const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    std::vector<Scalar> out;
    out.reserve(pairs.size());
    for (auto [i, j] : pairs) out.push_back(om.value(i, j, g.mode()));
    return out;
}

TwoCochain cochain_from_coordinates(
    const GradedLieAlgebra& g, std::size_t grading,
    const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
    const std::vector<Scalar>& coords) {
    TwoCochain om;
    om.grading = grading;
    for (std::size_t t = 0; t < pairs.size(); ++t)
        om.add(pairs[t].first, pairs[t].second, coords[t]);
    (void)g;
    return om;
}

CohomologySpace h2_graded(const GradedLieAlgebra& g, std::size_t k) {
    if (k < 2 || k > g.length() + 1)
        throw std::invalid_argument("h2_graded: grading out of range");
    CohomologySpace out;
    out.grading = k;
    out.pair_basis = pair_basis_of_grading(g, k);
    std::size_t np = out.pair_basis.size();

    // kernel of d2 on grading-k пair coordinates
    std::vector<std::array<std::size_t, 3>> triples;
    for (std::size_t x = 0; x < g.dim(); ++x)
        for (std::size_t y = x + 1; y < g.dim(); ++y)
            for (std::size_t z = y + 1; z < g.dim(); ++z)
                if (g.degree(x) + g.degree(y) + g.degree(z) == k)
                    triples.push_back({x, y, z});
    Matrix dmat(triples.size(), np, g.mode());
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> pidx;
    for (std::size_t t = 0; t < np; ++t) pidx[out.pair_basis[t]] = t;
    for (std::size_t r = 0; r < triples.size(); ++r) {
        auto [x, y, z] = triples[r];
        auto add = [&](std::size_t a, std::size_t b, std::size_t c) {
            for (const auto& [m, co] : g.bracket_basis(a, b)) {
                if (m == c) continue;
                auto key = m < c ? std::make_pair(m, c) : std::make_pair(c, m);
                auto it = pidx.find(key);
                if (it == pidx.end()) continue;
                Scalar v = m < c ? co : -co;
                dmat.set(r, it->second, dmat.at(r, it->second) + v);
            }
        };
        add(x, y, z);
        add(y, z, x);
        add(z, x, y);
    }
    out.cocycle_basis = np == 0 ? Subspace::zero(0, g.mode()) : kernel(dmat);

    // image of d1 from grading-k duals
    std::vector<std::vector<Scalar>> brows;
    for (std::size_t m = 0; m < g.dim(); ++m) {
        if (g.degree(m) != k) continue;
        OneCochain phi;
        phi.grading = k;
        phi.terms.emplace(m, Scalar::one(g.mode()));
        brows.push_back(cochain_coordinates(g, d1(g, phi), out.pair_basis));
    }
    out.coboundary_basis = brows.empty()
                               ? Subspace::zero(np, g.mode())
                               : Subspace::span(Matrix::from_rows(brows, g.mode()));
    out.h_dim = out.cocycle_basis.dim() - out.coboundary_basis.dim();

    // representatives: canonical Z-basis rows independent modulo B, greedily
    Subspace seen = out.coboundary_basis;
    for (std::size_t r = 0; r < out.cocycle_basis.basis().rows(); ++r) {
        auto row = out.cocycle_basis.basis().row(r);
        if (seen.contains(row)) continue;
        seen = seen.sum(Subspace::span(Matrix::from_rows({row}, g.mode())));
        out.representatives.push_back(
            cochain_from_coordinates(g, k, out.pair_basis, row));
    }
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> h2_profile(const GradedLieAlgebra& g) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t k = 2; k <= g.length() + 1; ++k)
        out.emplace_back(k, h2_graded(g, k).h_dim);
    return out;
}

}  // namespace carnot
