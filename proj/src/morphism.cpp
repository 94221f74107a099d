#include "carnot/morphism.hpp"

#include <algorithm>

namespace carnot {

SparseVec GradedMap::apply(const SparseVec& v) const {
    SparseVec out;
    for (const auto& [i, c] : v) {
        std::size_t d = source->degree(i);
        auto scoords = source->basis_of_degree(d);
        auto tcoords = target->basis_of_degree(d);
        std::size_t col =
            std::find(scoords.begin(), scoords.end(), i) - scoords.begin();
        const Matrix& B = blocks[d - 1];
        for (std::size_t r = 0; r < B.rows(); ++r) {
            if (B.at(r, col).is_zero()) continue;
            Scalar add = c * B.at(r, col);
            auto it = out.find(tcoords[r]);
            if (it == out.end())
                out.emplace(tcoords[r], add);
            else {
                it->second = it->second + add;
                if (it->second.is_zero()) out.erase(it);
            }
        }
    }
    return out;
}

GradedMap GradedMap::compose(const GradedMap& inner) const {
    GradedMap out;
    out.source = inner.source;
    out.target = target;
    for (std::size_t d = 0; d < blocks.size(); ++d)
        out.blocks.push_back(blocks[d] * inner.blocks[d]);
    return out;
}

std::optional<GradedMap> GradedMap::inverse() const {
    GradedMap out;
    out.source = target;
    out.target = source;
    for (const Matrix& B : blocks) {
        std::size_t n = B.rows();
        Matrix aug(n, 2 * n, B.mode());
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) aug.set(i, j, B.at(i, j));
            aug.set(i, n + i, Scalar::one(B.mode()));
        }
        Matrix r = rref(aug);
        for (std::size_t i = 0; i < n; ++i)
            if (!(r.at(i, i).is_one())) return std::nullopt;
        Matrix inv(n, n, B.mode());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) inv.set(i, j, r.at(i, n + j));
        out.blocks.push_back(std::move(inv));
    }
    return out;
}

bool verify_graded_iso(const GradedMap& f) {
    const GradedLieAlgebra& g = *f.source;
    const GradedLieAlgebra& h = *f.target;
    if (g.degree_dims() != h.degree_dims()) return false;
    for (std::size_t d = 1; d <= g.length(); ++d) {
        const Matrix& B = f.blocks[d - 1];
        if (B.rows() != B.cols() || B.rows() != g.basis_of_degree(d).size()) return false;
        if (rank(B) != B.rows()) return false;
    }
    for (std::size_t i = 0; i < g.dim(); ++i)
        for (std::size_t j = i + 1; j < g.dim(); ++j) {
            SparseVec lhs = h.bracket(f.apply({{i, Scalar::one(g.mode())}}),
                                      f.apply({{j, Scalar::one(g.mode())}}));
            SparseVec rhs = f.apply(g.bracket_basis(i, j));
            if (lhs != rhs) return false;
        }
    return true;
}

std::optional<SpanningTree> spanning_tree(const GradedLieAlgebra& g, TreePolicy policy) {
    SpanningTree tree;
    auto deg1 = g.basis_of_degree(1);
    for (std::size_t d = 2; d <= g.length(); ++d) {
        SpanningTree::Level lvl;
        lvl.coords = g.basis_of_degree(d);
        auto prev = g.basis_of_degree(d - 1);
        for (auto a : deg1)
            for (auto b : prev) lvl.pairs.emplace_back(a, b);
        if (policy == TreePolicy::ReversePairs)
            std::reverse(lvl.pairs.begin(), lvl.pairs.end());
        std::vector<std::vector<Scalar>> rows;
        for (auto [a, b] : lvl.pairs) {
            auto w = g.bracket_basis(a, b);
            std::vector<Scalar> r(lvl.coords.size(), Scalar::zero(g.mode()));
            for (std::size_t t = 0; t < lvl.coords.size(); ++t) {
                auto it = w.find(lvl.coords[t]);
                if (it != w.end()) r[t] = it->second;
            }
            rows.push_back(std::move(r));
        }
        Matrix span = Matrix::from_rows(rows, g.mode());
        for (std::size_t t = 0; t < lvl.coords.size(); ++t) {
            std::vector<Scalar> rhs(lvl.coords.size(), Scalar::zero(g.mode()));
            rhs[t] = Scalar::one(g.mode());
            auto x = solve_in_span(span, rhs);
            if (!x) return std::nullopt;  // g_1 does not generate: not Carnot
            lvl.expr.push_back(std::move(*x));
        }
        tree.levels.push_back(std::move(lvl));
    }
    return tree;
}

std::optional<GradedMap> extend_deg1(const GradedLieAlgebra& g,
                                     const GradedLieAlgebra& h, const Deg1Map& A,
                                     const SpanningTree* tree) {
    if (g.degree_dims() != h.degree_dims()) return std::nullopt;
    std::optional<SpanningTree> own;
    if (!tree) {
        own = spanning_tree(g);
        if (!own) throw std::invalid_argument("extend_deg1: source is not Carnot");
        tree = &*own;
    }
    GradedMap f;
    f.source = &g;
    f.target = &h;
    f.blocks.assign(g.length(), Matrix());
    f.blocks[0] = A.a;
    if (rank(A.a) != A.a.rows()) return std::nullopt;

    // image vectors per source basis index
    std::vector<SparseVec> img(g.dim());
    {
        auto scoords = g.basis_of_degree(1);
        auto tcoords = h.basis_of_degree(1);
        for (std::size_t c = 0; c < scoords.size(); ++c)
            for (std::size_t r = 0; r < tcoords.size(); ++r)
                if (!A.a.at(r, c).is_zero()) img[scoords[c]].emplace(tcoords[r], A.a.at(r, c));
    }
    for (std::size_t d = 2; d <= g.length(); ++d) {
        const auto& lvl = tree->levels[d - 2];
        std::vector<SparseVec> pair_imgs;
        pair_imgs.reserve(lvl.pairs.size());
        for (auto [a, b] : lvl.pairs) pair_imgs.push_back(h.bracket(img[a], img[b]));
        auto tcoords = h.basis_of_degree(d);
        Matrix block(tcoords.size(), lvl.coords.size(), g.mode());
        for (std::size_t t = 0; t < lvl.coords.size(); ++t) {
            SparseVec acc;
            for (std::size_t p = 0; p < lvl.pairs.size(); ++p) {
                const Scalar& x = lvl.expr[t][p];
                if (x.is_zero()) continue;
                for (const auto& [k, c] : pair_imgs[p]) {
                    auto it = acc.find(k);
                    if (it == acc.end())
                        acc.emplace(k, x * c);
                    else {
                        it->second = it->second + x * c;
                        if (it->second.is_zero()) acc.erase(it);
                    }
                }
            }
            img[lvl.coords[t]] = acc;
            for (std::size_t r = 0; r < tcoords.size(); ++r) {
                auto it = acc.find(tcoords[r]);
                if (it != acc.end()) block.set(r, t, it->second);
            }
        }
        if (rank(block) != block.rows()) return std::nullopt;
        f.blocks[d - 1] = std::move(block);
    }
    // verify every structure constant
    for (std::size_t i = 0; i < g.dim(); ++i)
        for (std::size_t j = i + 1; j < g.dim(); ++j) {
            SparseVec lhs = h.bracket(img[i], img[j]);
            SparseVec rhs;
            for (const auto& [k, c] : g.bracket_basis(i, j))
                for (const auto& [kk, cc] : img[k]) {
                    auto it = rhs.find(kk);
                    if (it == rhs.end())
                        rhs.emplace(kk, c * cc);
                    else {
                        it->second = it->second + c * cc;
                        if (it->second.is_zero()) rhs.erase(it);
                    }
                }
            if (lhs != rhs) return std::nullopt;
        }
    return f;
}

namespace {

// fixed lexicographic enumeration of GL(q, F_p), q <= 2
template <typename F>
void for_each_gl(std::size_t q, std::int64_t p, const FieldMode& m, F&& fn) {
    if (q == 0) {
        Matrix a(0, 0, m);
        fn(a);
        return;
    }
    if (q == 1) {
        for (std::int64_t v = 1; v < p; ++v) {
            Matrix a(1, 1, m);
            a.set(0, 0, Scalar::residue(v, p));
            if (!fn(a)) return;
        }
        return;
    }
    if (q != 2) throw std::invalid_argument("exhaustive search supports dim g1 <= 2");
    for (std::int64_t a00 = 0; a00 < p; ++a00)
        for (std::int64_t a01 = 0; a01 < p; ++a01)
            for (std::int64_t a10 = 0; a10 < p; ++a10)
                for (std::int64_t a11 = 0; a11 < p; ++a11) {
                    if (((a00 * a11 - a01 * a10) % p + p) % p == 0) continue;
                    Matrix a(2, 2, m);
                    a.set(0, 0, Scalar::residue(a00, p));
                    a.set(0, 1, Scalar::residue(a01, p));
                    a.set(1, 0, Scalar::residue(a10, p));
                    a.set(1, 1, Scalar::residue(a11, p));
                    if (!fn(a)) return;
                }
}

std::size_t gl_order(std::size_t q, std::int64_t p) {
    if (q == 0) return 1;
    if (q == 1) return p - 1;
    return (std::size_t)((p * p - 1) * (p * p - p));
}

}  // namespace

IsoCertificate iso_search_fp(const GradedLieAlgebra& gq, const GradedLieAlgebra& hq,
                             std::int64_t p) {
    FieldMode fp = FieldMode::prime(p);
    GradedLieAlgebra g = gq.mode() == fp ? gq : gq.convert(fp);
    GradedLieAlgebra h = hq.mode() == fp ? hq : hq.convert(fp);
    IsoCertificate cert;
    cert.prime = p;
    std::size_t q = g.basis_of_degree(1).size();
    if (q > 2) throw std::invalid_argument("iso_search_fp: dim g1 > 2 unsupported");
    cert.search_space = gl_order(q, p);
    if (g.degree_dims() != h.degree_dims()) {
        cert.exhausted = true;
        return cert;
    }
    auto tree = spanning_tree(g);
    if (!tree) throw std::invalid_argument("iso_search_fp: source not Carnot");
    std::optional<Matrix> found;
    for_each_gl(q, p, fp, [&](const Matrix& a) {
        if (extend_deg1(g, h, Deg1Map{a}, &*tree)) {
            found = a;
            return false;
        }
        return true;
    });
    if (found) {
        cert.kind = IsoCertificate::Kind::Witness;
        cert.witness_deg1 = std::move(found);
    } else {
        cert.exhausted = true;
    }
    return cert;
}

AutGroupFp aut_group_fp(const GradedLieAlgebra& gq, std::int64_t p) {
    FieldMode fp = FieldMode::prime(p);
    GradedLieAlgebra g = gq.mode() == fp ? gq : gq.convert(fp);
    AutGroupFp out;
    out.prime = p;
    std::size_t q = g.basis_of_degree(1).size();
    if (q > 2) throw std::invalid_argument("aut_group_fp: dim g1 > 2 unsupported");
    auto tree = spanning_tree(g);
    if (!tree) throw std::invalid_argument("aut_group_fp: not Carnot");
    for_each_gl(q, p, fp, [&](const Matrix& a) {
        if (extend_deg1(g, g, Deg1Map{a}, &*tree)) out.elements.push_back(a);
        return true;
    });
    return out;
}

namespace {

std::optional<GradedMap> try_grid(const GradedLieAlgebra& g, const GradedLieAlgebra& h,
                                  const std::vector<Scalar>& grid) {
    auto tree = spanning_tree(g);
    if (!tree) return std::nullopt;
    std::size_t q = g.basis_of_degree(1).size();
    if (q == 1) {
        for (const Scalar& a : grid) {
            if (a.is_zero()) continue;
            Matrix m(1, 1, g.mode());
            m.set(0, 0, a);
            auto f = extend_deg1(g, h, Deg1Map{m}, &*tree);
            if (f) return f;
        }
        return std::nullopt;
    }
    for (const Scalar& a : grid)
        for (const Scalar& b : grid)
            for (const Scalar& c : grid)
                for (const Scalar& d : grid) {
                    if ((a * d - b * c).is_zero()) continue;
                    Matrix m(2, 2, g.mode());
                    m.set(0, 0, a);
                    m.set(0, 1, b);
                    m.set(1, 0, c);
                    m.set(1, 1, d);
                    auto f = extend_deg1(g, h, Deg1Map{m}, &*tree);
                    if (f) return f;
                }
    return std::nullopt;
}

}  // namespace

std::optional<GradedMap> find_iso_q_grid(const GradedLieAlgebra& g,
                                         const GradedLieAlgebra& h) {
    if (g.degree_dims() != h.degree_dims()) return std::nullopt;
    std::vector<long> nums = {0, 1, -1, 2, -2, 3, -3};
    std::vector<Scalar> small, wide;
    for (long n : nums) small.push_back(Scalar::rational(n, 1).convert(g.mode()));
    wide = small;
    for (long n : {1, -1, 3, -3}) wide.push_back(Scalar::rational(n, 2).convert(g.mode()));
    for (long n : {1, -1, 2, -2}) wide.push_back(Scalar::rational(n, 3).convert(g.mode()));
    wide.push_back(Scalar::rational(6, 1).convert(g.mode()));
    wide.push_back(Scalar::rational(1, 6).convert(g.mode()));
    if (auto f = try_grid(g, h, small)) return f;
    return try_grid(g, h, wide);
}

bool verify_paper_aut_formula(const GradedLieAlgebra& g, const std::string& family,
                              const AutFormulaParams& prm) {
    GradedMap f;
    f.source = &g;
    f.target = &g;
    f.blocks.assign(g.length(), Matrix());
    const FieldMode& m = g.mode();
    auto pw = [&](const Scalar& s, std::size_t e) {
        Scalar r = Scalar::one(m);
        for (std::size_t i = 0; i < e; ++i) r = r * s;
        return r;
    };
    auto block_zero = [&](std::size_t d) {
        auto coords = g.basis_of_degree(d);
        return Matrix(coords.size(), coords.size(), m);
    };
    auto setc = [&](Matrix& B, std::size_t d, const std::string& to,
                    const std::string& from, const Scalar& c) {
        auto coords = g.basis_of_degree(d);
        auto pos = [&](const std::string& lab) {
            std::size_t k = g.label_index(lab);
            return std::find(coords.begin(), coords.end(), k) - coords.begin();
        };
        B.set(pos(to), pos(from), c);
    };

    if (family == "m0_S" || family == "m0") {
        // phi(a1) = alpha a1 + beta b1, phi(b1) = mu b1,
        // phi(a_m) = alpha^{m-1} mu a_m off S-slots,
        // phi(a_r) = alpha^{r-2} mu (alpha a_r - beta b_r), phi(b_r) = alpha^{r-2} mu^2 b_r
        // (the b-component sign follows the [b1, a_{r-1}] = -b_r convention)
        for (std::size_t d = 1; d <= g.length(); ++d) {
            Matrix B = block_zero(d);
            if (d == 1) {
                setc(B, 1, "a1", "a1", prm.alpha);
                setc(B, 1, "b1", "a1", prm.beta);
                setc(B, 1, "b1", "b1", prm.mu);
            } else {
                bool has_b = false;
                for (auto i : g.basis_of_degree(d))
                    if (g.labels()[i][0] == 'b') has_b = true;
                std::string a = "a" + std::to_string(d), b = "b" + std::to_string(d);
                if (!has_b) {
                    setc(B, d, a, a, pw(prm.alpha, d - 1) * prm.mu);
                } else {
                    Scalar base = pw(prm.alpha, d - 2) * prm.mu;
                    setc(B, d, a, a, base * prm.alpha);
                    setc(B, d, b, a, -(base * prm.beta));
                    setc(B, d, b, b, base * prm.mu);
                }
            }
            f.blocks[d - 1] = std::move(B);
        }
        return verify_graded_iso(f);
    }
    if (family == "n1") {
        // phi(u_{2k+1}) = c^{2k+1}(ct u + st v), phi(v_{2k+1}) = s c^{2k+1}(±st u + ct v),
        // phi(w_{2q}) = s c^{2q} w; hyperbolic: (ct, st) on x^2 - y^2 = 1 and
        // v-row (st u + ct v); circular: x^2 + y^2 = 1 and v-row (-st u + ct v).
        bool hyperbolic = (prm.cos_or_cosh * prm.cos_or_cosh -
                           prm.sin_or_sinh * prm.sin_or_sinh)
                              .is_one();
        Scalar sgn = Scalar::from_int(prm.component_sign, m);
        for (std::size_t d = 1; d <= g.length(); ++d) {
            Matrix B = block_zero(d);
            Scalar cd = pw(prm.c, d);
            if (d % 2 == 1) {
                std::string u = "u" + std::to_string(d), v = "v" + std::to_string(d);
                setc(B, d, u, u, cd * prm.cos_or_cosh);
                setc(B, d, v, u, cd * prm.sin_or_sinh);
                Scalar ust = hyperbolic ? cd * prm.sin_or_sinh : -(cd * prm.sin_or_sinh);
                setc(B, d, u, v, sgn * ust);
                setc(B, d, v, v, sgn * cd * prm.cos_or_cosh);
            } else {
                std::string w = "w" + std::to_string(d);
                setc(B, d, w, w, sgn * cd);
            }
            f.blocks[d - 1] = std::move(B);
        }
        return verify_graded_iso(f);
    }
    if (family == "n2" || family == "n2_3") {
        // torus weights from the canonical bigrading: phi(f_i) = alpha^p mu^q f_i,
        // phi(z) = alpha mu^2 z (bigrading of [f2, f3]).
        for (std::size_t d = 1; d <= g.length(); ++d) {
            Matrix B = block_zero(d);
            for (auto i : g.basis_of_degree(d)) {
                const std::string& lab = g.labels()[i];
                Scalar wgt = Scalar::one(m);
                if (lab == "z") {
                    wgt = prm.alpha * prm.mu * prm.mu;
                } else {
                    long fi = std::stol(lab.substr(1));
                    long k = (fi - 1) / 8, s = (fi - 1) % 8 + 1;
                    long pp, qq;
                    if (s <= 1) {
                        pp = 4 * k + s;
                        qq = 2 * k;
                    } else if (s <= 6) {
                        pp = 4 * k + s - 2;
                        qq = 2 * k + 1;
                    } else {  // s = 7, 8: f_{8k+7} = f_{8(k+1)-1}, f_{8k+8} = f_{8(k+1)}
                        pp = 4 * (k + 1) + (s - 8);
                        qq = 2 * (k + 1);
                    }
                    wgt = pw(prm.alpha, (std::size_t)pp) * pw(prm.mu, (std::size_t)qq);
                }
                auto coords = g.basis_of_degree(d);
                std::size_t pos =
                    std::find(coords.begin(), coords.end(), i) - coords.begin();
                B.set(pos, pos, wgt);
            }
            f.blocks[d - 1] = std::move(B);
        }
        return verify_graded_iso(f);
    }
    throw std::invalid_argument("verify_paper_aut_formula: unknown family " + family);
}

}  // namespace carnot
