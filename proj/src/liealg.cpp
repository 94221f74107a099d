#include "carnot/liealg.hpp"
#include "carnot/cohomology.hpp"

#include <algorithm>
#include <numeric>

namespace carnot {

Scalar TwoCochain::value(std::size_t i, std::size_t j, const FieldMode& m) const {
    if (i == j) return Scalar::zero(m);
    if (i < j) {
        auto it = terms.find({i, j});
        return it == terms.end() ? Scalar::zero(m) : it->second;
    }
    auto it = terms.find({j, i});
    return it == terms.end() ? Scalar::zero(m) : -it->second;
}

void TwoCochain::add(std::size_t i, std::size_t j, const Scalar& c) {
    if (i == j || c.is_zero()) return;
    auto key = i < j ? std::make_pair(i, j) : std::make_pair(j, i);
    Scalar v = i < j ? c : -c;
    auto it = terms.find(key);
    if (it == terms.end()) {
        terms.emplace(key, v);
        return;
    }
    it->second = it->second + v;
    if (it->second.is_zero()) terms.erase(it);
}

bool TwoCochain::is_zero() const { return terms.empty(); }

GradedLieAlgebra::GradedLieAlgebra(std::string name, FieldMode mode,
                                   std::vector<std::size_t> degree_dims,
                                   std::vector<std::string> labels)
    : name_(std::move(name)),
      mode_(mode),
      degree_dims_(std::move(degree_dims)),
      labels_(std::move(labels)) {
    std::size_t total = std::accumulate(degree_dims_.begin(), degree_dims_.end(), 0u);
    if (total != labels_.size())
        throw std::invalid_argument("labels/degree_dims size mismatch");
    for (std::size_t d = 0; d < degree_dims_.size(); ++d)
        for (std::size_t s = 0; s < degree_dims_[d]; ++s) degree_of_.push_back(d + 1);
}

std::size_t GradedLieAlgebra::label_index(const std::string& lab) const {
    auto it = std::find(labels_.begin(), labels_.end(), lab);
    if (it == labels_.end()) throw std::invalid_argument(name_ + ": no label " + lab);
    return it - labels_.begin();
}

std::vector<std::size_t> GradedLieAlgebra::basis_of_degree(std::size_t d) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < dim(); ++i)
        if (degree_of_[i] == d) out.push_back(i);
    return out;
}

void GradedLieAlgebra::add_constant(std::size_t i, std::size_t j, std::size_t k,
                                    const Scalar& c) {
    if (i == j) throw std::invalid_argument("diagonal bracket constants are zero");
    if (c.mode() != mode_) throw ModeMismatch("constant mode mismatch");
    if (c.is_zero()) return;
    std::size_t a = i, b = j;
    Scalar v = c;
    if (a > b) {
        std::swap(a, b);
        v = -v;
    }
    auto& vec = constants_[{a, b}];
    auto it = vec.find(k);
    if (it == vec.end())
        vec.emplace(k, v);
    else {
        it->second = it->second + v;
        if (it->second.is_zero()) vec.erase(it);
    }
    if (vec.empty()) constants_.erase({a, b});
}

void GradedLieAlgebra::add_constant(const std::string& li, const std::string& lj,
                                    const std::string& lk, long num, long den) {
    add_constant(label_index(li), label_index(lj), label_index(lk),
                 Scalar::rational(num, den).convert(mode_));
}

SparseVec GradedLieAlgebra::bracket_basis(std::size_t i, std::size_t j) const {
    SparseVec out;
    if (i == j) return out;
    bool flip = i > j;
    auto it = constants_.find(flip ? std::make_pair(j, i) : std::make_pair(i, j));
    if (it == constants_.end()) return out;
    for (const auto& [k, c] : it->second) out.emplace(k, flip ? -c : c);
    return out;
}

SparseVec GradedLieAlgebra::bracket(const SparseVec& x, const SparseVec& y) const {
    SparseVec out;
    for (const auto& [i, xi] : x)
        for (const auto& [j, yj] : y) {
            if (i >= dim() || j >= dim()) throw std::invalid_argument("index out of range");
            for (const auto& [k, c] : bracket_basis(i, j)) {
                Scalar add = xi * yj * c;
                auto it = out.find(k);
                if (it == out.end())
                    out.emplace(k, add);
                else {
                    it->second = it->second + add;
                    if (it->second.is_zero()) out.erase(it);
                }
            }
        }
    std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
}

GradedLieAlgebra GradedLieAlgebra::convert(const FieldMode& to) const {
    GradedLieAlgebra g(name_, to, degree_dims_, labels_);
    for (const auto& [ij, vec] : constants_)
        for (const auto& [k, c] : vec) g.add_constant(ij.first, ij.second, k, c.convert(to));
    return g;
}

std::vector<LawViolation> check_grading(const GradedLieAlgebra& g) {
    std::vector<LawViolation> out;
    for (const auto& [ij, vec] : g.constants())
        for (const auto& [k, c] : vec)
            if (g.degree(k) != g.degree(ij.first) + g.degree(ij.second))
                out.push_back({"grading", {ij.first, ij.second, k},
                               "deg(" + g.labels()[k] + ") != deg(" + g.labels()[ij.first] +
                                   ") + deg(" + g.labels()[ij.second] + ")"});
    return out;
}

std::vector<LawViolation> check_jacobi(const GradedLieAlgebra& g) {
    std::vector<LawViolation> out;
    std::size_t n = g.dim();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x + 1; y < n; ++y)
            for (std::size_t z = y + 1; z < n; ++z) {
                SparseVec acc;
                auto addin = [&](const SparseVec& v) {
                    for (const auto& [k, c] : v) {
                        auto it = acc.find(k);
                        if (it == acc.end())
                            acc.emplace(k, c);
                        else {
                            it->second = it->second + c;
                            if (it->second.is_zero()) acc.erase(it);
                        }
                    }
                };
                addin(g.bracket(g.bracket_basis(x, y), SparseVec{{z, Scalar::one(g.mode())}}));
                addin(g.bracket(g.bracket_basis(y, z), SparseVec{{x, Scalar::one(g.mode())}}));
                addin(g.bracket(g.bracket_basis(z, x), SparseVec{{y, Scalar::one(g.mode())}}));
                if (!acc.empty())
                    out.push_back({"jacobi", {x, y, z},
                                   g.labels()[x] + "," + g.labels()[y] + "," + g.labels()[z]});
            }
    return out;
}

std::size_t GradedIdeal::dim() const {
    std::size_t d = 0;
    for (const auto& s : by_degree) d += s.dim();
    return d;
}

namespace {

std::vector<Scalar> dense(const GradedLieAlgebra& g, const SparseVec& v,
                          const std::vector<std::size_t>& coords) {
    std::vector<Scalar> out(coords.size(), Scalar::zero(g.mode()));
    for (std::size_t t = 0; t < coords.size(); ++t) {
        auto it = v.find(coords[t]);
        if (it != v.end()) out[t] = it->second;
    }
    return out;
}

}  // namespace

bool GradedIdeal::is_ideal(const GradedLieAlgebra& g) const {
    for (std::size_t d = 1; d <= by_degree.size(); ++d) {
        const Subspace& comp = by_degree[d - 1];
        auto coords = g.basis_of_degree(d);
        for (std::size_t r = 0; r < comp.basis().rows(); ++r) {
            SparseVec v;
            for (std::size_t t = 0; t < coords.size(); ++t)
                if (!comp.basis().at(r, t).is_zero()) v.emplace(coords[t], comp.basis().at(r, t));
            for (std::size_t b = 0; b < g.dim(); ++b) {
                SparseVec w = g.bracket(v, SparseVec{{b, Scalar::one(g.mode())}});
                if (w.empty()) continue;
                std::size_t dd = d + g.degree(b);
                if (dd > g.length()) continue;
                auto target = g.basis_of_degree(dd);
                if (dd > by_degree.size()) return false;
                if (!by_degree[dd - 1].contains(dense(g, w, target))) return false;
            }
        }
    }
    return true;
}

GradedIdeal full_ideal(const GradedLieAlgebra& g) {
    GradedIdeal I;
    for (std::size_t d = 1; d <= g.length(); ++d)
        I.by_degree.push_back(Subspace::full(g.basis_of_degree(d).size(), g.mode()));
    return I;
}

GradedIdeal top_component_ideal(const GradedLieAlgebra& g) {
    GradedIdeal I;
    for (std::size_t d = 1; d <= g.length(); ++d) {
        std::size_t nd = g.basis_of_degree(d).size();
        I.by_degree.push_back(d == g.length() ? Subspace::full(nd, g.mode())
                                              : Subspace::zero(nd, g.mode()));
    }
    return I;
}

std::vector<GradedIdeal> lower_central_series(const GradedLieAlgebra& g) {
    std::vector<GradedIdeal> out;
    out.push_back(full_ideal(g));
    while (out.back().dim() > 0) {
        const GradedIdeal& prev = out.back();
        GradedIdeal next;
        std::vector<std::vector<std::vector<Scalar>>> rows(g.length());
        for (std::size_t d = 1; d <= g.length(); ++d) {
            const Subspace& comp = prev.by_degree[d - 1];
            auto coords = g.basis_of_degree(d);
            for (std::size_t r = 0; r < comp.basis().rows(); ++r) {
                SparseVec v;
                for (std::size_t t = 0; t < coords.size(); ++t)
                    if (!comp.basis().at(r, t).is_zero())
                        v.emplace(coords[t], comp.basis().at(r, t));
                for (std::size_t b = 0; b < g.dim(); ++b) {
                    SparseVec w = g.bracket(SparseVec{{b, Scalar::one(g.mode())}}, v);
                    if (w.empty()) continue;
                    std::size_t dd = g.degree(b) + d;
                    if (dd > g.length()) continue;
                    rows[dd - 1].push_back(dense(g, w, g.basis_of_degree(dd)));
                }
            }
        }
        for (std::size_t d = 1; d <= g.length(); ++d) {
            std::size_t nd = g.basis_of_degree(d).size();
            if (rows[d - 1].empty())
                next.by_degree.push_back(Subspace::zero(nd, g.mode()));
            else
                next.by_degree.push_back(
                    Subspace::span(Matrix::from_rows(rows[d - 1], g.mode())));
        }
        if (next.dim() == prev.dim())
            throw std::logic_error("lower central series does not descend");
        out.push_back(std::move(next));
        if (out.back().dim() == 0) break;
    }
    if (out.back().dim() == 0) out.pop_back();
    return out;
}

std::vector<std::size_t> natural_grading_dims(const GradedLieAlgebra& g) {
    auto lcs = lower_central_series(g);
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < lcs.size(); ++k) {
        std::size_t next = k + 1 < lcs.size() ? lcs[k + 1].dim() : 0;
        out.push_back(lcs[k].dim() - next);
    }
    return out;
}

namespace {

// Section vectors of g^k / g^{k+1}: rows of lcs[k] per degree that are
// independent modulo lcs[k+1], chosen greedily in stored basis order.
struct Section {
    std::size_t level;                   // filtration level k (new degree)
    SparseVec vec;                       // representative in g
};

std::vector<Section> graded_sections(const GradedLieAlgebra& g,
                                     const std::vector<GradedIdeal>& lcs) {
    std::vector<Section> out;
    for (std::size_t k = 0; k < lcs.size(); ++k) {
        for (std::size_t d = 1; d <= g.length(); ++d) {
            auto coords = g.basis_of_degree(d);
            const Subspace& cur = lcs[k].by_degree[d - 1];
            Subspace seen = k + 1 < lcs.size() ? lcs[k + 1].by_degree[d - 1]
                                               : Subspace::zero(coords.size(), g.mode());
            for (std::size_t r = 0; r < cur.basis().rows(); ++r) {
                auto row = cur.basis().row(r);
                if (seen.contains(row)) continue;
                seen = seen.sum(Subspace::span(Matrix::from_rows({row}, g.mode())));
                SparseVec v;
                for (std::size_t t = 0; t < coords.size(); ++t)
                    if (!row[t].is_zero()) v.emplace(coords[t], row[t]);
                out.push_back({k + 1, std::move(v)});
            }
        }
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const Section& a, const Section& b) { return a.level < b.level; });
    return out;
}

}  // namespace

GradedLieAlgebra associated_graded(const GradedLieAlgebra& g) {
    auto lcs = lower_central_series(g);
    auto secs = graded_sections(g, lcs);
    std::size_t n = lcs.size();
    std::vector<std::size_t> dims(n, 0);
    for (const auto& s : secs) ++dims[s.level - 1];
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < secs.size(); ++i) labels.push_back("g" + std::to_string(i + 1));
    GradedLieAlgebra out("gr(" + g.name() + ")", g.mode(), dims, labels);

    // express [s_i, s_j] modulo the next filtration level in section coords
    for (std::size_t i = 0; i < secs.size(); ++i) {
        for (std::size_t j = i + 1; j < secs.size(); ++j) {
            SparseVec w = g.bracket(secs[i].vec, secs[j].vec);
            if (w.empty()) continue;
            std::size_t lvl = secs[i].level + secs[j].level;
            if (lvl > n) continue;
            // spanning rows: sections of level lvl, then a basis of g^{lvl+1}
            std::vector<std::vector<Scalar>> rows;
            std::vector<std::size_t> sec_ids;
            for (std::size_t t = 0; t < secs.size(); ++t)
                if (secs[t].level == lvl) {
                    std::vector<Scalar> densev(g.dim(), Scalar::zero(g.mode()));
                    for (const auto& [k, c] : secs[t].vec) densev[k] = c;
                    rows.push_back(std::move(densev));
                    sec_ids.push_back(t);
                }
            std::size_t nsec = rows.size();
            if (lvl < n) {
                const GradedIdeal& deeper = lcs[lvl];  // g^{lvl+1}
                for (std::size_t d = 1; d <= g.length(); ++d) {
                    auto coords = g.basis_of_degree(d);
                    const Matrix& b = deeper.by_degree[d - 1].basis();
                    for (std::size_t r = 0; r < b.rows(); ++r) {
                        std::vector<Scalar> densev(g.dim(), Scalar::zero(g.mode()));
                        for (std::size_t t = 0; t < coords.size(); ++t)
                            densev[coords[t]] = b.at(r, t);
                        rows.push_back(std::move(densev));
                    }
                }
            }
            std::vector<Scalar> rhs(g.dim(), Scalar::zero(g.mode()));
            for (const auto& [k, c] : w) rhs[k] = c;
            auto x = solve_in_span(Matrix::from_rows(rows, g.mode()), rhs);
            if (!x) throw std::logic_error("associated_graded: bracket not expressible");
            for (std::size_t t = 0; t < nsec; ++t)
                if (!(*x)[t].is_zero()) out.add_constant(i, j, sec_ids[t], (*x)[t]);
        }
    }
    return out;
}

bool is_carnot(const GradedLieAlgebra& g) {
    for (std::size_t d = 1; d + 1 <= g.length(); ++d) {
        auto deg1 = g.basis_of_degree(1);
        auto degd = g.basis_of_degree(d);
        auto target = g.basis_of_degree(d + 1);
        std::vector<std::vector<Scalar>> rows;
        for (auto a : deg1)
            for (auto b : degd) rows.push_back(dense(g, g.bracket_basis(a, b), target));
        if (rows.empty()) return target.empty();
        if (rank(Matrix::from_rows(rows, g.mode())) != target.size()) return false;
    }
    return true;
}

bool width_ok_3_2(const GradedLieAlgebra& g) {
    const auto& d = g.degree_dims();
    for (std::size_t i = 0; i + 1 < d.size(); ++i)
        if (d[i] + d[i + 1] > 3) return false;
    return d.empty() ? true : d.back() <= 3;
}

GrowthProfile growth(const GradedLieAlgebra& g) {
    GrowthProfile p;
    std::size_t acc = 0;
    for (std::size_t d : g.degree_dims()) {
        acc += d;
        p.values.push_back(acc);
        p.width = std::max(p.width, d);
    }
    if (p.values.size() >= 2)
        p.slope = BigRat((long)(p.values.back() - p.values.front()),
                         (long)(p.values.size() - 1));
    return p;
}

GradedLieAlgebra quotient(const GradedLieAlgebra& g, const GradedIdeal& ideal) {
    if (ideal.by_degree.size() != g.length())
        throw std::invalid_argument("ideal/algebra length mismatch");
    if (!ideal.is_ideal(g)) throw std::invalid_argument("not an ideal");

    // kept coordinates: non-pivot slots per degree
    std::vector<long> keep_pos(g.dim(), -1);
    std::vector<std::size_t> kept;
    std::vector<std::size_t> dims;
    std::vector<std::string> labels;
    for (std::size_t d = 1; d <= g.length(); ++d) {
        auto coords = g.basis_of_degree(d);
        const Matrix& b = ideal.by_degree[d - 1].basis();
        std::vector<bool> is_pivot(coords.size(), false);
        for (std::size_t r = 0; r < b.rows(); ++r)
            for (std::size_t c = 0; c < b.cols(); ++c)
                if (!b.at(r, c).is_zero()) {
                    is_pivot[c] = true;
                    break;
                }
        std::size_t nd = 0;
        for (std::size_t t = 0; t < coords.size(); ++t)
            if (!is_pivot[t]) {
                keep_pos[coords[t]] = (long)kept.size();
                kept.push_back(coords[t]);
                labels.push_back(g.labels()[coords[t]]);
                ++nd;
            }
        dims.push_back(nd);
    }
    while (!dims.empty() && dims.back() == 0) dims.pop_back();

    GradedLieAlgebra q(g.name() + "/I", g.mode(), dims, labels);
    std::size_t qlen = dims.size();

    // project a vector of g to quotient coordinates
    auto project = [&](const SparseVec& v) {
        SparseVec out;
        // reduce per degree against the ideal's RREF basis
        std::map<std::size_t, std::vector<Scalar>> per_degree;
        for (const auto& [k, c] : v) {
            std::size_t d = g.degree(k);
            auto coords = g.basis_of_degree(d);
            auto& dv = per_degree
                           .try_emplace(d, std::vector<Scalar>(coords.size(),
                                                               Scalar::zero(g.mode())))
                           .first->second;
            for (std::size_t t = 0; t < coords.size(); ++t)
                if (coords[t] == k) dv[t] = c;
        }
        for (auto& [d, dv] : per_degree) {
            if (d > qlen) continue;
            auto coords = g.basis_of_degree(d);
            auto red = reduce_mod_rref(ideal.by_degree[d - 1].basis(), dv);
            for (std::size_t t = 0; t < coords.size(); ++t)
                if (!red[t].is_zero() && keep_pos[coords[t]] >= 0)
                    out.emplace((std::size_t)keep_pos[coords[t]], red[t]);
        }
        return out;
    };

    for (std::size_t a = 0; a < kept.size(); ++a)
        for (std::size_t b = a + 1; b < kept.size(); ++b) {
            SparseVec w = g.bracket_basis(kept[a], kept[b]);
            for (const auto& [k, c] : project(w)) q.add_constant(a, b, k, c);
        }
    return q;
}

ExtensionResult central_extension(const GradedLieAlgebra& g,
                                  const std::vector<TwoCochain>& cocycles,
                                  const std::vector<std::string>& new_labels) {
    ExtensionResult res;
    res.cocycles_closed = true;
    for (const auto& om : cocycles) {
        if (om.grading < 2 || om.grading > g.length() + 1)
            throw std::invalid_argument("cocycle grading out of range");
        for (const auto& [ij, c] : om.terms)
            if (g.degree(ij.first) + g.degree(ij.second) != om.grading)
                throw std::invalid_argument("cochain not homogeneous of its grading");
        auto d = d2(g, om);
        if (!d.terms.empty()) res.cocycles_closed = false;
    }
    if (!res.cocycles_closed)
        throw std::invalid_argument("central_extension: non-closed cochain");

    // joint independence modulo coboundaries, per grading
    res.independent_in_h2 = true;
    {
        std::map<std::size_t, std::vector<const TwoCochain*>> by_grading;
        for (const auto& om : cocycles) by_grading[om.grading].push_back(&om);
        for (const auto& [k, oms] : by_grading) {
            auto space = h2_graded(g, k);
            std::vector<std::vector<Scalar>> rows;
            for (std::size_t r = 0; r < space.coboundary_basis.basis().rows(); ++r)
                rows.push_back(space.coboundary_basis.basis().row(r));
            std::size_t base_rank = rows.empty()
                                        ? 0
                                        : rank(Matrix::from_rows(rows, g.mode()));
            for (const TwoCochain* om : oms)
                rows.push_back(cochain_coordinates(g, *om, space.pair_basis));
            if (rows.empty()) continue;
            std::size_t total = rank(Matrix::from_rows(rows, g.mode()));
            if (total != base_rank + oms.size()) res.independent_in_h2 = false;
        }
    }

    std::size_t n = std::max(g.length(), std::accumulate(cocycles.begin(), cocycles.end(),
                                                         std::size_t{0},
                                                         [](std::size_t m, const TwoCochain& c) {
                                                             return std::max(m, c.grading);
                                                         }));
    std::vector<std::size_t> dims(n, 0);
    for (std::size_t d = 1; d <= g.length(); ++d) dims[d - 1] = g.basis_of_degree(d).size();
    for (const auto& om : cocycles) ++dims[om.grading - 1];

    // index map: old basis keeps (degree, slot) order; new vectors appended
    // after the existing slots of their degree
    std::vector<std::size_t> offset_of_degree(n + 2, 0);
    {
        std::size_t acc = 0;
        for (std::size_t d = 1; d <= n; ++d) {
            offset_of_degree[d] = acc;
            acc += dims[d - 1];
        }
        offset_of_degree[n + 1] = acc;
    }
    std::vector<std::size_t> old2new(g.dim());
    std::vector<std::string> labels(std::accumulate(dims.begin(), dims.end(), 0u));
    std::vector<std::size_t> used(n + 1, 0);
    for (std::size_t d = 1; d <= g.length(); ++d)
        for (auto i : g.basis_of_degree(d)) {
            std::size_t ni = offset_of_degree[d] + used[d]++;
            old2new[i] = ni;
            labels[ni] = g.labels()[i];
        }
    std::vector<std::size_t> zpos;
    for (std::size_t t = 0; t < cocycles.size(); ++t) {
        std::size_t d = cocycles[t].grading;
        std::size_t ni = offset_of_degree[d] + used[d]++;
        zpos.push_back(ni);
        labels[ni] = t < new_labels.size() ? new_labels[t] : "z" + std::to_string(t + 1);
    }

    GradedLieAlgebra e(g.name() + "+z", g.mode(), dims, labels);
    for (const auto& [ij, vec] : g.constants())
        for (const auto& [k, c] : vec)
            e.add_constant(old2new[ij.first], old2new[ij.second], old2new[k], c);
    for (std::size_t t = 0; t < cocycles.size(); ++t)
        for (const auto& [ij, c] : cocycles[t].terms)
            e.add_constant(old2new[ij.first], old2new[ij.second], zpos[t], c);
    res.algebra = std::move(e);
    return res;
}

}  // namespace carnot
