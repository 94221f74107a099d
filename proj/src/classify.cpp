#include "carnot/classify.hpp"

#include <algorithm>
#include <sstream>

namespace carnot {

std::string mode_id(OrbitMode m) { return m == OrbitMode::RealLike ? "real" : "complex"; }

std::int64_t ClassifyConfig::effective_probe_prime() const {
    if (probe_prime) return probe_prime;
    return mode == OrbitMode::RealLike ? 7 : 13;
}

std::vector<std::int64_t> ClassifyConfig::effective_refutation_primes() const {
    if (!refutation_primes.empty()) return refutation_primes;
    return mode == OrbitMode::RealLike ? std::vector<std::int64_t>{7}
                                       : std::vector<std::int64_t>{13};
}

namespace {

TwoCochain chain_cocycle(const GradedLieAlgebra& base, std::size_t n) {
    // a^1 ^ a^n : re-extends the filiform chain
    TwoCochain om;
    om.grading = n + 1;
    om.add(base.label_index("a1"), base.label_index("a" + std::to_string(n)),
           Scalar::one(base.mode()));
    return om;
}

TwoCochain omega_tail(const GradedLieAlgebra& base, std::size_t r) {
    // -b^1 ^ a^{r-1} + sum_{l=2}^{(r-1)/2} (-1)^l a^l ^ a^{r-l}
    TwoCochain om;
    om.grading = r;
    const FieldMode& m = base.mode();
    om.add(base.label_index("b1"), base.label_index("a" + std::to_string(r - 1)),
           -Scalar::one(m));
    for (std::size_t l = 2; l <= (r - 1) / 2; ++l)
        om.add(base.label_index("a" + std::to_string(l)),
               base.label_index("a" + std::to_string(r - l)),
               Scalar::from_int(l % 2 == 0 ? 1 : -1, m));
    return om;
}

TwoCochain omega_m02(const GradedLieAlgebra& base, std::size_t n2m) {
    std::size_t m = n2m / 2;
    TwoCochain om;
    om.grading = n2m;
    const FieldMode& fm = base.mode();
    om.add(base.label_index("a1"), base.label_index("b" + std::to_string(2 * m - 1)),
           Scalar::one(fm));
    om.add(base.label_index("b1"), base.label_index("a" + std::to_string(2 * m - 1)),
           Scalar::from_int(-(long)(m - 1), fm));
    for (std::size_t l = 2; l <= m - 1; ++l)
        om.add(base.label_index("a" + std::to_string(l)),
               base.label_index("a" + std::to_string(2 * m - l)),
               Scalar::from_int((l % 2 == 0 ? 1 : -1) * (long)(m - l), fm));
    return om;
}

TwoCochain omega_m03(const GradedLieAlgebra& base, std::size_t n) {
    // a^1 ^ a^{2m} + sum_{p=2}^{m} (-1)^{p+1} (p-1)(2m-p)/2  a^p ^ a^{2m+1-p}
    std::size_t m = (n - 1) / 2;  // n = 2m + 1
    TwoCochain om;
    om.grading = n;
    const FieldMode& fm = base.mode();
    om.add(base.label_index("a1"), base.label_index("a" + std::to_string(2 * m)),
           Scalar::one(fm));
    for (std::size_t p = 2; p <= m; ++p) {
        long num = (long)(p - 1) * (long)(2 * m - p);
        om.add(base.label_index("a" + std::to_string(p)),
               base.label_index("a" + std::to_string(2 * m + 1 - p)),
               Scalar::rational((p % 2 == 0 ? -1 : 1) * num, 2).convert(fm));
    }
    return om;
}

TwoCochain omega_n1(const GradedLieAlgebra& base, char which, std::size_t grading,
                    int sign) {
    // which = 'u': eps * sum v^b ^ w^c (re-adds u); 'v': sum w^c ^ u^a;
    // 'w': sum u^a ^ v^b (re-adds w at even grading)
    TwoCochain om;
    om.grading = grading;
    const FieldMode& m = base.mode();
    auto idx = [&](char k, std::size_t d) {
        return base.label_index(std::string(1, k) + std::to_string(d));
    };
    if (which == 'w') {
        for (std::size_t a = 1; a < grading; a += 2)
            om.add(idx('u', a), idx('v', grading - a), Scalar::one(m));
        return om;
    }
    if (which == 'u') {
        for (std::size_t b = 1; b < grading; b += 2)
            om.add(idx('v', b), idx('w', grading - b), Scalar::from_int(sign, m));
        return om;
    }
    for (std::size_t c = 2; c < grading; c += 2)
        om.add(idx('w', c), idx('u', grading - c), Scalar::one(m));
    return om;
}

TwoCochain omega_n2_dual(const GradedLieAlgebra& base, std::size_t target_f) {
    // the df-dual: sum_{q<l, q+l=target} d_{q,l} f^q ^ f^l
    TwoCochain om;
    om.grading = n2_degree(target_f);
    const FieldMode& m = base.mode();
    for (std::size_t q = 1; 2 * q < target_f; ++q) {
        std::size_t l = target_f - q;
        if (n2_degree(q) + n2_degree(l) != om.grading) continue;
        int c = kN2Table[q % 8][l % 8];
        if (!c) continue;
        om.add(base.label_index("f" + std::to_string(q)),
               base.label_index("f" + std::to_string(l)), Scalar::from_int(c, m));
    }
    return om;
}

struct ChildPlan {
    FamilySpec spec;
    std::vector<TwoCochain> cocycles;
    std::vector<std::string> labels;
};

FamilySpec fspec(Family f, std::size_t n, int sign = +1,
                 std::vector<std::size_t> S = {}, int s = 1) {
    FamilySpec sp;
    sp.family = f;
    sp.n = n;
    sp.sign = sign;
    sp.S = std::move(S);
    sp.s = s;
    return sp;
}

}  // namespace

// Canonical renames: m0,2(6) and m0,2^3(6) are the n2-family entry points.
FamilySpec canonical_spec(FamilySpec sp) {
    if (sp.family == Family::m0_S && sp.S.empty()) sp.family = Family::m0;
    if (sp.family == Family::m1_S && sp.S.empty()) sp.family = Family::m1;
    if (sp.family == Family::m02_S && sp.n == 6) {
        if (sp.S.empty()) return fspec(Family::n2, 6);
        if (sp.S == std::vector<std::size_t>{3}) return fspec(Family::n2_3, 6);
    }
    return sp;
}

namespace {

// The classification playbook: expected extension representatives per
// family, with their defining cocycles over the node's algebra.
std::optional<std::vector<ChildPlan>> playbook(const ExtensionNode& node,
                                               OrbitMode mode) {
    const FamilySpec& sp = node.spec;
    const GradedLieAlgebra& g = node.algebra;
    std::size_t n = sp.n;
    std::vector<ChildPlan> out;
    auto aL = [&](std::size_t d) { return "a" + std::to_string(d); };

    switch (sp.family) {
        case Family::m0:
        case Family::m0_S: {
            if (sp.family == Family::m0 && n == 2) {
                out.push_back({fspec(Family::m0, 3), {chain_cocycle(g, 2)}, {aL(3)}});
                out.push_back({fspec(Family::m0_S, 3, +1, {3}),
                               {chain_cocycle(g, 2), omega_tail(g, 3)},
                               {aL(3), "b3"}});
                return out;
            }
            bool top_slot = !sp.S.empty() && sp.S.back() == n;
            if (sp.family == Family::m0_S && sp.S == std::vector<std::size_t>{3} &&
                n == 3) {
                // the free 3-step algebra: three (two over C) one-dim extensions
                out.push_back({fspec(Family::m0_S, 4, +1, {3}),
                               {chain_cocycle(g, 3)},
                               {aL(4)}});
                TwoCochain plus = chain_cocycle(g, 3), minus = chain_cocycle(g, 3);
                TwoCochain bb;
                bb.grading = 4;
                bb.add(g.label_index("b1"), g.label_index("b3"), Scalar::one(g.mode()));
                for (const auto& [ij, c] : bb.terms) {
                    plus.add(ij.first, ij.second, -c);
                    minus.add(ij.first, ij.second, c);
                }
                out.push_back({fspec(Family::n1, 4, +1), {plus}, {"z"}});
                if (mode == OrbitMode::RealLike)
                    out.push_back({fspec(Family::n1, 4, -1), {minus}, {"z"}});
                return out;
            }
            if (n % 2 == 0) {
                out.push_back({fspec(sp.S.empty() ? Family::m0 : Family::m0_S, n + 1,
                                     +1, sp.S),
                               {chain_cocycle(g, n)},
                               {aL(n + 1)}});
                out.push_back({canonical_spec(fspec(Family::m1_S, n + 1, +1, sp.S)),
                               {omega_tail(g, n + 1)},
                               {aL(n + 1)}});
                auto S2 = sp.S;
                S2.push_back(n + 1);
                out.push_back({fspec(Family::m0_S, n + 1, +1, S2),
                               {chain_cocycle(g, n), omega_tail(g, n + 1)},
                               {aL(n + 1), "b" + std::to_string(n + 1)}});
                return out;
            }
            out.push_back({fspec(sp.S.empty() ? Family::m0 : Family::m0_S, n + 1, +1,
                                 sp.S),
                           {chain_cocycle(g, n)},
                           {aL(n + 1)}});
            if (top_slot) {
                auto S2 = sp.S;
                S2.pop_back();
                out.push_back({canonical_spec(fspec(Family::m02_S, n + 1, +1, S2)),
                               {omega_m02(g, n + 1)},
                               {aL(n + 1)}});
            }
            return out;
        }
        case Family::m1:
        case Family::m1_S:
        case Family::m03_S:
        case Family::n11:
        case Family::n2s:
        case Family::n2s_3:
            return out;  // terminal families
        case Family::m02_S: {
            out.push_back({fspec(Family::m03_S, n + 1, +1, sp.S),
                           {omega_m03(g, n + 1)},
                           {aL(n + 1)}});
            return out;
        }
        case Family::n1: {
            if (n % 2 == 0) {
                out.push_back({fspec(Family::n11, n + 1, sp.sign),
                               {omega_n1(g, 'v', n + 1, sp.sign)},
                               {"v" + std::to_string(n + 1)}});
                out.push_back({fspec(Family::n1, n + 1, sp.sign),
                               {omega_n1(g, 'u', n + 1, sp.sign),
                                omega_n1(g, 'v', n + 1, sp.sign)},
                               {"u" + std::to_string(n + 1), "v" + std::to_string(n + 1)}});
            } else {
                out.push_back({fspec(Family::n1, n + 1, sp.sign),
                               {omega_n1(g, 'w', n + 1, sp.sign)},
                               {"w" + std::to_string(n + 1)}});
            }
            return out;
        }
        case Family::n2:
        case Family::n2_3: {
            bool branch = (n % 6 == 0 || n % 6 == 4);
            std::size_t fa = 0;
            {
                std::size_t fmax = 0;
                while (n2_degree(fmax + 1) <= n) ++fmax;
                fa = fmax + 1;  // first index of degree n+1
            }
            auto fl = [&](std::size_t t) { return "f" + std::to_string(t); };
            if (!branch) {
                out.push_back({fspec(sp.family, n + 1),
                               {omega_n2_dual(g, fa)},
                               {fl(fa)}});
                return out;
            }
            Family qf = sp.family == Family::n2 ? Family::n2s : Family::n2s_3;
            out.push_back({fspec(qf, n + 1, +1, {}, 1), {omega_n2_dual(g, fa)}, {fl(fa)}});
            out.push_back(
                {fspec(qf, n + 1, +1, {}, 2), {omega_n2_dual(g, fa + 1)}, {fl(fa + 1)}});
            TwoCochain diag = omega_n2_dual(g, fa);
            for (const auto& [ij, c] : omega_n2_dual(g, fa + 1).terms)
                diag.add(ij.first, ij.second, c);
            out.push_back({fspec(qf, n + 1, +1, {}, 3), {diag}, {fl(fa)}});
            out.push_back({fspec(sp.family, n + 1),
                           {omega_n2_dual(g, fa), omega_n2_dual(g, fa + 1)},
                           {fl(fa), fl(fa + 1)}});
            return out;
        }
        default:
            return std::nullopt;  // no playbook entry (W+, m2, ...): frontier
    }
}

// H^2 coordinates of a cocycle: solve over [representatives; B-basis].
std::optional<std::vector<Scalar>> h2_coords(const GradedLieAlgebra& g,
                                             const CohomologySpace& space,
                                             const TwoCochain& om) {
    std::size_t h = space.representatives.size();
    std::vector<std::vector<Scalar>> rows;
    for (const auto& rep : space.representatives)
        rows.push_back(cochain_coordinates(g, rep, space.pair_basis));
    for (std::size_t r = 0; r < space.coboundary_basis.basis().rows(); ++r)
        rows.push_back(space.coboundary_basis.basis().row(r));
    auto rhs = cochain_coordinates(g, om, space.pair_basis);
    auto x = solve_in_span(Matrix::from_rows(rows, g.mode()), rhs);
    if (!x) return std::nullopt;
    return std::vector<Scalar>(x->begin(), x->begin() + h);
}

std::string matrix_str(const Matrix& m) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i) os << "; ";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) os << ",";
            os << m.at(i, j).str();
        }
    }
    os << "]";
    return os.str();
}

}  // namespace

ExtensionNode root_node(const FieldMode& mode) {
    ExtensionNode root;
    root.spec = fspec(Family::m0, 2);
    root.spec.mode = mode;
    root.name = root.spec.display_name();
    root.algebra = build(root.spec);
    root.terminal = false;
    root.catalog_witnessed = true;
    return root;
}

ExtensionStep carnot_extensions(const ExtensionNode& input, const ClassifyConfig& cfg) {
    // operate on the playbook-canonical presentation of the class
    ExtensionNode node = input;
    node.spec = canonical_spec(input.spec);
    if (!(node.spec.family == input.spec.family && node.spec.S == input.spec.S)) {
        node.name = node.spec.display_name();
        node.algebra = build(node.spec);
    }
    ExtensionStep step;
    const GradedLieAlgebra& g = node.algebra;
    std::size_t n = g.length();
    auto space_q = h2_graded(g, n + 1);

    auto plans = playbook(node, cfg.mode);
    if (!plans) {
        if (space_q.h_dim > 0)
            step.frontier.push_back(
                {node.name, "nonzero H^2 of grading " + std::to_string(n + 1) +
                                " (dim " + std::to_string(space_q.h_dim) +
                                ") with no playbook entry"});
        return step;
    }
    // width budget: admissible extension dimensions
    std::size_t top_dim = g.basis_of_degree(n).size();
    std::vector<ChildPlan> admissible;
    for (auto& p : *plans)
        if (top_dim + p.cocycles.size() <= 3 &&
            p.cocycles.size() <= space_q.h_dim)
            admissible.push_back(std::move(p));

    // build and certify children; every node carries the canonical catalog
    // algebra so later playbook steps can address its labels
    for (const auto& plan : admissible) {
        ExtensionNode child;
        child.spec = plan.spec;
        child.spec.mode = node.spec.mode;
        child.name = child.spec.display_name();
        auto ext = central_extension(g, plan.cocycles, plan.labels);
        if (!ext.independent_in_h2)
            throw std::logic_error(node.name + " -> " + child.name +
                                   ": dependent extension cocycles");
        GradedLieAlgebra raw = std::move(ext.algebra);
        child.parent = node.name;
        child.ext_dim = plan.cocycles.size();
        child.cocycles = plan.cocycles;
        if (!check_grading(raw).empty() || !check_jacobi(raw).empty())
            throw std::logic_error(child.name + ": extension fails structural laws");
        if (!is_carnot(raw) || !width_ok_3_2(raw))
            throw std::logic_error(child.name + ": extension not narrow Carnot");
        // exact parent-quotient check on the raw extension
        if (!(quotient(raw, top_component_ideal(raw)).constants() == g.constants()))
            throw std::logic_error(child.name + ": quotient by top differs from parent");
        GradedLieAlgebra built = build(child.spec);
        bool exact = raw.degree_dims() == built.degree_dims() &&
                     raw.labels() == built.labels() &&
                     raw.constants() == built.constants();
        if (exact)
            child.catalog_witnessed = true;
        else if (cfg.certificates)
            child.catalog_witnessed = rationally_isomorphic(raw, built);
        else
            child.catalog_witnessed = exact;
        if (!exact && cfg.certificates && !child.catalog_witnessed)
            throw std::logic_error(child.name +
                                   ": extension has no witness against the catalog");
        child.algebra = std::move(built);
        child.terminal = h2_graded(child.algebra, child.algebra.length() + 1).h_dim == 0;
        step.children.push_back(std::move(child));
    }

    OrbitCertificate& cert = step.certificate;
    for (const auto& c : step.children) cert.representatives.push_back(c.name);
    if (!cfg.certificates) return step;

    // pairwise refutations at the mode primes
    for (std::size_t i = 0; i < step.children.size(); ++i)
        for (std::size_t j = i + 1; j < step.children.size(); ++j) {
            const auto& A = step.children[i];
            const auto& B = step.children[j];
            PairCheck pc{A.name, B.name, {}};
            if (A.algebra.degree_dims() != B.algebra.degree_dims()) {
                pc.cert.kind = IsoCertificate::Kind::Refutation;
                pc.cert.exhausted = true;
                pc.cert.search_space = 0;  // distinct dimension vectors
            } else {
                for (std::int64_t p : cfg.effective_refutation_primes()) {
                    pc.cert = iso_search_fp(A.algebra, B.algebra, p);
                    if (pc.cert.kind == IsoCertificate::Kind::Witness) break;
                }
                if (pc.cert.kind == IsoCertificate::Kind::Witness)
                    cert.refutations_complete = false;  // merge missed: surfaced
            }
            cert.pairwise.push_back(std::move(pc));
        }

    // probe coverage over F_p
    std::int64_t p = cfg.effective_probe_prime();
    CoverageReport& cov = cert.coverage;
    cov.prime = p;
    cov.policy = "exhaustive lines" +
                 std::string(top_dim + 2 <= 3 ? " + admissible planes" : "") +
                 " (seed " + std::to_string(cfg.seed) + ", unused: no sampling)";
    if (space_q.h_dim == 0 || step.children.empty()) return step;

    FieldMode fp = FieldMode::prime(p);
    GradedLieAlgebra gp = g.convert(fp);
    auto space_p = h2_graded(gp, n + 1);
    std::size_t h = space_p.representatives.size();
    if (h != space_q.h_dim)
        throw std::logic_error(node.name + ": H^2 dimension degenerates mod " +
                               std::to_string(p) + " (bad probe prime)");

    // child cocycle spans in H^2(F_p) coordinates
    std::vector<Subspace> child_spans;
    for (const auto& c : step.children) {
        std::vector<std::vector<Scalar>> rows;
        for (const auto& om : c.cocycles) {
            TwoCochain omp;
            omp.grading = om.grading;
            for (const auto& [ij, co] : om.terms)
                omp.add(ij.first, ij.second, co.convert(fp));
            auto x = h2_coords(gp, space_p, omp);
            if (!x)
                throw std::logic_error(c.name + ": cocycle not in Z^2 mod p");
            rows.push_back(*x);
        }
        child_spans.push_back(Subspace::span(Matrix::from_rows(rows, fp)));
    }

    // pullback action of Aut_gr(g x F_p) on H^2 coordinates
    auto aut = aut_group_fp(gp, p);
    auto tree = spanning_tree(gp);
    std::vector<Matrix> actions;
    std::vector<std::size_t> action_src;
    for (std::size_t t = 0; t < aut.elements.size(); ++t) {
        auto f = extend_deg1(gp, gp, Deg1Map{aut.elements[t]}, &*tree);
        if (!f) continue;
        Matrix P(h, h, fp);
        bool ok = true;
        for (std::size_t c = 0; c < h; ++c) {
            // phi* rep_c (x, y) = rep_c(phi x, phi y)
            TwoCochain pulled;
            pulled.grading = n + 1;
            for (auto [i, j] : space_p.pair_basis) {
                SparseVec fi = f->apply({{i, Scalar::one(fp)}});
                SparseVec fj = f->apply({{j, Scalar::one(fp)}});
                Scalar v = Scalar::zero(fp);
                for (const auto& [a, ca] : fi)
                    for (const auto& [b, cb] : fj)
                        v = v + ca * cb *
                                    space_p.representatives[c].value(a, b, fp);
                pulled.add(i, j, v);
            }
            auto x = h2_coords(gp, space_p, pulled);
            if (!x) {
                ok = false;
                break;
            }
            for (std::size_t r = 0; r < h; ++r) P.set(r, c, (*x)[r]);
        }
        if (ok) {
            actions.push_back(std::move(P));
            action_src.push_back(t);
        }
    }

    // enumerate probe subspaces: all lines, plus the admissible planes
    std::vector<Matrix> probes;
    std::vector<std::size_t> probe_dim;
    {
        // normalized line representatives of P^{h-1}(F_p)
        std::vector<std::vector<Scalar>> pts;
        std::vector<Scalar> v(h, Scalar::zero(fp));
        // enumerate vectors with first nonzero coordinate = 1
        std::vector<std::int64_t> idx(h, 0);
        while (true) {
            // next tuple
            bool nonzero = false;
            for (std::size_t t = 0; t < h; ++t)
                if (idx[t]) nonzero = true;
            if (nonzero) {
                std::size_t lead = 0;
                while (!idx[lead]) ++lead;
                if (idx[lead] == 1) {
                    std::vector<Scalar> w(h, Scalar::zero(fp));
                    for (std::size_t t = 0; t < h; ++t)
                        w[t] = Scalar::residue(idx[t], p);
                    pts.push_back(std::move(w));
                }
            }
            std::size_t t = 0;
            while (t < h && ++idx[t] == p) idx[t++] = 0;
            if (t == h) break;
        }
        for (auto& w : pts) {
            probes.push_back(Matrix::from_rows({w}, fp));
            probe_dim.push_back(1);
        }
        if (h >= 2 && top_dim + 2 <= 3) {
            if (h == 2) {
                probes.push_back(Matrix::identity(2, fp));
                probe_dim.push_back(2);
            } else {
                // enumerate planes as kernels of the line duals
                for (std::size_t t = 0; t < pts.size(); ++t) {
                    probes.push_back(kernel(Matrix::from_rows({pts[t]}, fp)).basis());
                    probe_dim.push_back(2);
                }
            }
        }
    }

    cov.probes = probes.size();
    int evidence_budget = 2;  // full refutation evidence for the first misses
    for (std::size_t t = 0; t < probes.size(); ++t) {
        Subspace W = Subspace::span(probes[t]);
        bool covered = false;
        std::string by, wit;
        for (std::size_t a = 0; a < actions.size() && !covered; ++a) {
            Subspace img = Subspace::span(probes[t] * actions[a].transpose());
            for (std::size_t c = 0; c < step.children.size(); ++c) {
                if (step.children[c].ext_dim != probe_dim[t]) continue;
                if (img == child_spans[c]) {
                    covered = true;
                    by = step.children[c].name;
                    wit = matrix_str(aut.elements[action_src[a]]);
                    break;
                }
            }
        }
        if (covered) {
            ++cov.covered;
        } else {
            ProbeRecord rec;
            rec.subspace_dim = probe_dim[t];
            for (std::size_t r = 0; r < probes[t].rows(); ++r) {
                std::string row;
                for (std::size_t cc = 0; cc < probes[t].cols(); ++cc)
                    row += (cc ? "," : "") + probes[t].at(r, cc).str();
                rec.coords.push_back(row);
            }
            if (evidence_budget > 0) {
                --evidence_budget;
                // the probe's own extension, refuted against every
                // same-dimension representative by exhaustive search
                std::vector<TwoCochain> oms;
                for (std::size_t r = 0; r < probes[t].rows(); ++r) {
                    TwoCochain om;
                    om.grading = n + 1;
                    for (std::size_t c = 0; c < h; ++c) {
                        const Scalar& x = probes[t].at(r, c);
                        if (x.is_zero()) continue;
                        for (const auto& [ij, v] : space_p.representatives[c].terms)
                            om.add(ij.first, ij.second, v * x);
                    }
                    oms.push_back(std::move(om));
                }
                GradedLieAlgebra ew = central_extension(gp, oms).algebra;
                for (std::size_t c = 0; c < step.children.size(); ++c) {
                    if (step.children[c].ext_dim != probe_dim[t]) continue;
                    rec.refutations.emplace_back(
                        step.children[c].name,
                        iso_search_fp(ew, step.children[c].algebra, p));
                }
            }
            cov.uncovered.push_back(std::move(rec));
        }
    }
    if (!cov.complete())
        step.frontier.push_back(
            {node.name,
             std::to_string(cov.probes - cov.covered) + " of " +
                 std::to_string(cov.probes) + " probe subspaces over F_" +
                 std::to_string(p) +
                 " are not in any representative orbit (certified gap or proxy "
                 "artifact; see certificate)"});
    return step;
}

std::vector<const ExtensionNode*> Tree::level(std::size_t n) const {
    std::vector<const ExtensionNode*> out;
    for (const auto& node : nodes)
        if (node.algebra.length() == n) out.push_back(&node);
    return out;
}

bool Tree::all_certificates_complete() const {
    for (const auto& [name, cert] : certificates)
        if (!cert.complete()) return false;
    return true;
}

Tree build_tree(std::size_t max_len, const ClassifyConfig& cfg) {
    if (max_len < 2) throw std::invalid_argument("build_tree: max_len >= 2");
    Tree tree;
    tree.config = cfg;
    tree.nodes.push_back(root_node());
    std::size_t head = 0;
    while (head < tree.nodes.size()) {
        // breadth-first; nodes vector only grows
        ExtensionNode node = tree.nodes[head];
        ++head;
        if (node.algebra.length() >= max_len) continue;
        if (node.terminal) continue;
        ExtensionStep step = carnot_extensions(node, cfg);
        tree.certificates[node.name] = step.certificate;
        for (auto& f : step.frontier) tree.frontier.push_back(std::move(f));
        std::stable_sort(step.children.begin(), step.children.end(),
                         [](const ExtensionNode& a, const ExtensionNode& b) {
                             return a.name < b.name;
                         });
        for (auto& c : step.children) tree.nodes.push_back(std::move(c));
    }
    return tree;
}

InfiniteFamiliesReport infinite_families(const Tree& tree) {
    InfiniteFamiliesReport rep;
    std::size_t maxlen = 0;
    for (const auto& n : tree.nodes) maxlen = std::max(maxlen, n.algebra.length());
    rep.level = maxlen;
    for (const auto* n : tree.level(maxlen)) {
        (n->terminal ? rep.terminal : rep.extendable).push_back(n->name);
    }
    rep.spectra = {"n1+", "n1-", "n2", "n2^3", "m0^S (S a set of odd numbers >= 3)"};
    rep.continuum_note =
        "every finite S-branch verified extendable at this level; the full "
        "m0^S family ranges over arbitrary (even infinite) odd sets and is "
        "not machine-enumerable";
    return rep;
}

bool rationally_isomorphic(const GradedLieAlgebra& g, const GradedLieAlgebra& h) {
    if (g.degree_dims() != h.degree_dims()) return false;
    if (g.constants() == h.constants() && g.labels() == h.labels()) return true;
    if (g.basis_of_degree(1).size() <= 2) {
        // prefilter: a rational witness reduces mod every prime not dividing
        // its denominators; witnesses here carry only small denominators
        bool any_witness = false, any_decided = false;
        for (std::int64_t p : {7, 11, 13}) {
            try {
                auto cert = iso_search_fp(g, h, p);
                any_decided = true;
                if (cert.kind == IsoCertificate::Kind::Witness) {
                    any_witness = true;
                    break;
                }
            } catch (const std::exception&) {
                continue;  // constants degenerate mod p: try the next prime
            }
        }
        if (any_decided && !any_witness) return false;
    }
    return find_iso_q_grid(g, h).has_value();
}

std::vector<CatalogMatch> match_to_catalog(const GradedLieAlgebra& g) {
    std::vector<CatalogMatch> out;
    const auto dims = g.degree_dims();
    std::size_t n = dims.size();
    std::vector<FamilySpec> candidates;
    auto slots = [&]() {
        std::vector<std::size_t> S;
        for (std::size_t d = 2; d <= n; ++d)
            if (dims[d - 1] == 2) S.push_back(d);
        return S;
    }();
    // dimension vectors determine the S-set for the filiform-type families
    if (!dims.empty() && dims[0] == 2) {
        bool odd_slots = std::all_of(slots.begin(), slots.end(),
                                     [](std::size_t d) { return d % 2 == 1; });
        if (odd_slots) {
            if (slots.empty())
                candidates.push_back(fspec(Family::m0, n));
            else
                candidates.push_back(fspec(Family::m0_S, n, +1, slots));
            if (n % 2 == 1 && n >= 5) {
                auto S = slots;
                candidates.push_back(fspec(Family::m1_S, n, +1, S));
            }
            if (n % 2 == 0 && n >= 6 && !slots.empty() && slots.back() == n - 1) {
                auto S = slots;
                S.pop_back();
                candidates.push_back(fspec(Family::m02_S, n, +1, S));
            }
            if (n % 2 == 1 && n >= 7 && !slots.empty() && slots.back() == n - 2) {
                auto S = slots;
                S.pop_back();
                candidates.push_back(fspec(Family::m03_S, n, +1, S));
            }
        }
        for (int sign : {+1, -1}) {
            candidates.push_back(fspec(Family::n1, n, sign));
            if (n % 2 == 1 && n >= 5) candidates.push_back(fspec(Family::n11, n, sign));
        }
        if (n >= 6) {
            candidates.push_back(fspec(Family::n2, n));
            candidates.push_back(fspec(Family::n2_3, n));
        }
        if (n >= 7 && (n % 6 == 1 || n % 6 == 5))
            for (int s = 1; s <= 3; ++s) {
                candidates.push_back(fspec(Family::n2s, n, +1, {}, s));
                candidates.push_back(fspec(Family::n2s_3, n, +1, {}, s));
            }
    }
    for (const auto& sp : candidates) {
        GradedLieAlgebra built;
        try {
            validate(sp);
            built = build(sp);
        } catch (const std::invalid_argument&) {
            continue;
        }
        if (built.degree_dims() != dims) continue;
        if (rationally_isomorphic(g, built)) out.push_back({sp, sp.display_name()});
    }
    return out;
}

}  // namespace carnot
