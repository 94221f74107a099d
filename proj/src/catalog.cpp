#include "carnot/catalog.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace carnot {

namespace {

std::string set_str(const std::vector<std::size_t>& S) {
    std::string out;
    for (std::size_t i = 0; i < S.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(S[i]);
    }
    return out;
}

struct Builder {
    std::vector<std::pair<std::string, std::size_t>> basis;  // label, degree
    std::vector<std::tuple<std::string, std::string, std::string, BigRat>> rels;

    void vec(const std::string& lab, std::size_t deg) { basis.emplace_back(lab, deg); }
    void rel(const std::string& x, const std::string& y, const std::string& z,
             long num, long den = 1) {
        rels.emplace_back(x, y, z, BigRat(num, den));
    }
    GradedLieAlgebra make(const std::string& name, const FieldMode& mode) const {
        std::size_t maxd = 0;
        for (const auto& [lab, d] : basis) maxd = std::max(maxd, d);
        std::vector<std::size_t> dims(maxd, 0);
        for (const auto& [lab, d] : basis) ++dims[d - 1];
        // labels ordered by (degree, insertion order)
        std::vector<std::string> labels;
        for (std::size_t d = 1; d <= maxd; ++d)
            for (const auto& [lab, dd] : basis)
                if (dd == d) labels.push_back(lab);
        GradedLieAlgebra g(name, mode, dims, labels);
        for (const auto& [x, y, z, c] : rels)
            g.add_constant(g.label_index(x), g.label_index(y), g.label_index(z),
                           Scalar::rational(c).convert(mode));
        return g;
    }
};

void a_chain(Builder& b, std::size_t n) {
    b.vec("a1", 1);
    b.vec("b1", 1);
    for (std::size_t d = 2; d <= n; ++d) b.vec("a" + std::to_string(d), d);
    b.rel("a1", "b1", "a2", 1);
}

void b_slot_relations(Builder& b, std::size_t r) {
    b.vec("b" + std::to_string(r), r);
    b.rel("b1", "a" + std::to_string(r - 1), "b" + std::to_string(r), -1);
    for (std::size_t q = 2; q <= (r - 1) / 2; ++q)
        b.rel("a" + std::to_string(q), "a" + std::to_string(r - q),
              "b" + std::to_string(r), (q % 2 == 0) ? 1 : -1);
}

}  // namespace

std::string family_id(Family f) {
    switch (f) {
        case Family::m0: return "m0";
        case Family::m0_S: return "m0_S";
        case Family::m1: return "m1";
        case Family::m1_S: return "m1_S";
        case Family::m02_S: return "m02_S";
        case Family::m03_S: return "m03_S";
        case Family::n1: return "n1";
        case Family::n11: return "n11";
        case Family::n2: return "n2";
        case Family::n2_3: return "n2_3";
        case Family::n2s: return "n2s";
        case Family::n2s_3: return "n2s_3";
        case Family::Wplus: return "wplus";
        case Family::m2: return "m2";
        case Family::fial_ones: return "fial_ones";
        case Family::L23: return "l23";
    }
    return "?";
}

std::optional<Family> family_from_id(const std::string& id) {
    for (Family f : {Family::m0, Family::m0_S, Family::m1, Family::m1_S, Family::m02_S,
                     Family::m03_S, Family::n1, Family::n11, Family::n2, Family::n2_3,
                     Family::n2s, Family::n2s_3, Family::Wplus, Family::m2,
                     Family::fial_ones, Family::L23})
        if (family_id(f) == id) return f;
    return std::nullopt;
}

std::string FamilySpec::display_name() const {
    std::string sgn = sign > 0 ? "+" : "-";
    std::ostringstream os;
    switch (family) {
        case Family::m0: os << "m0(" << n << ")"; break;
        case Family::m0_S: os << "m0^{" << set_str(S) << "}(" << n << ")"; break;
        case Family::m1: os << "m1(" << n << ")"; break;
        case Family::m1_S: os << "m1^{" << set_str(S) << "}(" << n << ")"; break;
        case Family::m02_S:
            os << "m0,2" << (S.empty() ? "" : "^{" + set_str(S) + "}") << "(" << n << ")";
            break;
        case Family::m03_S:
            os << "m0,3" << (S.empty() ? "" : "^{" + set_str(S) + "}") << "(" << n << ")";
            break;
        case Family::n1: os << "n1" << sgn << "(" << n << ")"; break;
        case Family::n11: os << "n1,1" << sgn << "(" << n << ")"; break;
        case Family::n2: os << "n2(" << n << ")"; break;
        case Family::n2_3: os << "n2^3(" << n << ")"; break;
        case Family::n2s: os << "n2," << s << "(" << n << ")"; break;
        case Family::n2s_3: os << "n2," << s << "^3(" << n << ")"; break;
        case Family::Wplus: os << "W+(" << n << ")"; break;
        case Family::m2: os << "m2(" << n << ")"; break;
        case Family::fial_ones: os << "g(1,1,...)(" << n << ")"; break;
        case Family::L23: os << "L(2,3)"; break;
    }
    return os.str();
}

void validate(const FamilySpec& spec) {
    auto need = [&](bool ok, const std::string& bound) {
        if (!ok)
            throw std::invalid_argument(spec.display_name() + ": violated bound " + bound);
    };
    auto s_ok = [&](std::size_t hi) {
        for (std::size_t i = 0; i < spec.S.size(); ++i) {
            need(spec.S[i] % 2 == 1, "r_j odd");
            need(spec.S[i] >= 3, "3 <= r_1");
            need(spec.S[i] <= hi, "r_k <= " + std::to_string(hi));
            if (i) need(spec.S[i - 1] < spec.S[i], "r_1 < ... < r_k");
        }
    };
    switch (spec.family) {
        case Family::m0:
            need(spec.n >= 1, "n >= 1");
            break;
        case Family::m0_S:
            need(spec.n >= 2, "n >= 2");
            need(!spec.S.empty(), "k >= 1");
            s_ok(spec.n);
            break;
        case Family::m1:
            need(spec.n >= 5 && spec.n % 2 == 1, "n = 2m-1 >= 5");
            break;
        case Family::m1_S:
            need(spec.n >= 5 && spec.n % 2 == 1, "n = 2m-1 >= 5");
            s_ok(spec.n - 2);
            break;
        case Family::m02_S:
            need(spec.n >= 6 && spec.n % 2 == 0, "n = 2m >= 6");
            s_ok(spec.n - 3);
            break;
        case Family::m03_S:
            need(spec.n >= 7 && spec.n % 2 == 1, "n = 2m+1 >= 7");
            s_ok(spec.n - 4);
            break;
        case Family::n1:
            need(spec.n >= 2, "n >= 2");
            break;
        case Family::n11:
            need(spec.n >= 5 && spec.n % 2 == 1, "n = 2m+1 >= 5");
            break;
        case Family::n2:
        case Family::n2_3:
            need(spec.n >= 6, "n >= 6");
            break;
        case Family::n2s:
        case Family::n2s_3:
            need(spec.n >= 7 && (spec.n % 6 == 1 || spec.n % 6 == 5), "n = 6m+1 or 6m+5, m >= 1");
            need(spec.s >= 1 && spec.s <= 3, "s in {1,2,3}");
            break;
        case Family::Wplus:
        case Family::m2:
        case Family::fial_ones:
            need(spec.n >= 2, "n >= 2");
            break;
        case Family::L23:
            break;
    }
}

const std::array<std::array<int, 8>, 8> kN2Table = {{
    // row q%8, column l%8; [f_q, f_l] = d f_{q+l}
    {{0, 1, -2, -1, 0, 1, 2, -1}},
    {{-1, 0, 1, 1, -3, -2, 0, 1}},
    {{2, -1, 0, 0, 0, 1, -1, 0}},
    {{1, -1, 0, 0, 3, -1, 1, -2}},
    {{0, 3, 0, -3, 0, 3, 0, -3}},
    {{-1, 2, -1, 1, -3, 0, 0, 1}},   // (5,7) = +1 per the matrix oracle
    {{-2, 0, 1, -1, 0, 0, 0, 1}},
    {{1, -1, 0, 2, 3, -1, -1, 0}},   // (7,5) = -1 per the matrix oracle
}};

std::size_t n2_degree(std::size_t idx) {
    static const std::size_t ds[8] = {1, 1, 2, 3, 4, 5, 5, 6};
    std::size_t k = (idx - 1) / 8, s = (idx - 1) % 8;
    return 6 * k + ds[s];
}

std::pair<std::size_t, std::size_t> bigrading_n2(std::size_t idx) {
    std::size_t k = (idx - 1) / 8, s = (idx - 1) % 8 + 1;
    if (s <= 1) return {4 * k + s, 2 * k};
    if (s <= 6) return {4 * k + s - 2, 2 * k + 1};
    if (s == 7) return {4 * (k + 1) - 1, 2 * (k + 1)};
    return {4 * (k + 1), 2 * (k + 1)};
}

namespace {

GradedLieAlgebra build_m0S(const FamilySpec& spec) {
    Builder b;
    a_chain(b, spec.n);
    for (std::size_t i = 2; i < spec.n; ++i)
        b.rel("a1", "a" + std::to_string(i), "a" + std::to_string(i + 1), 1);
    for (std::size_t r : spec.S) b_slot_relations(b, r);
    std::string nm = spec.S.empty() ? "m0(" + std::to_string(spec.n) + ")"
                                    : spec.display_name();
    return b.make(nm, spec.mode);
}

GradedLieAlgebra build_m1S(const FamilySpec& spec) {
    std::size_t m = (spec.n + 1) / 2;  // n = 2m - 1
    Builder b;
    a_chain(b, spec.n);
    for (std::size_t i = 2; i + 1 <= 2 * m - 3 + 1 && i <= 2 * m - 3; ++i)
        b.rel("a1", "a" + std::to_string(i), "a" + std::to_string(i + 1), 1);
    b.rel("b1", "a" + std::to_string(2 * m - 2), "a" + std::to_string(2 * m - 1), -1);
    for (std::size_t q = 2; q <= m - 1; ++q)
        b.rel("a" + std::to_string(q), "a" + std::to_string(2 * m - 1 - q),
              "a" + std::to_string(2 * m - 1), (q % 2 == 0) ? 1 : -1);
    for (std::size_t r : spec.S) b_slot_relations(b, r);
    return b.make(spec.display_name(), spec.mode);
}

void m02_core(Builder& b, std::size_t m) {
    // chain up to a_{2m-1}; b_{2m-1}; a_{2m} relations
    for (std::size_t i = 2; i <= 2 * m - 2; ++i)
        b.rel("a1", "a" + std::to_string(i), "a" + std::to_string(i + 1), 1);
    b_slot_relations(b, 2 * m - 1);
    b.rel("a1", "b" + std::to_string(2 * m - 1), "a" + std::to_string(2 * m), 1);
    b.rel("b1", "a" + std::to_string(2 * m - 1), "a" + std::to_string(2 * m),
          -(long)(m - 1));
    for (std::size_t q = 2; q <= m - 1; ++q)
        b.rel("a" + std::to_string(q), "a" + std::to_string(2 * m - q),
              "a" + std::to_string(2 * m),
          (q % 2 == 0 ? 1 : -1) * (long)(m - q));
}

GradedLieAlgebra build_m02S(const FamilySpec& spec) {
    std::size_t m = spec.n / 2;
    Builder b;
    a_chain(b, spec.n);
    m02_core(b, m);
    for (std::size_t r : spec.S) b_slot_relations(b, r);
    return b.make(spec.display_name(), spec.mode);
}

GradedLieAlgebra build_m03S(const FamilySpec& spec) {
    std::size_t m = (spec.n - 1) / 2;
    Builder b;
    a_chain(b, spec.n);
    m02_core(b, m);
    b.rel("a1", "a" + std::to_string(2 * m), "a" + std::to_string(2 * m + 1), 1);
    for (std::size_t p = 2; p <= m; ++p) {
        // (-1)^{p+1} (p-1)(m - p/2) = (-1)^{p+1} (p-1)(2m-p)/2
        long num = (long)(p - 1) * (long)(2 * m - p);
        b.rel("a" + std::to_string(p), "a" + std::to_string(2 * m - p + 1),
              "a" + std::to_string(2 * m + 1), (p % 2 == 0 ? -1 : 1) * num, 2);
    }
    for (std::size_t r : spec.S) b_slot_relations(b, r);
    return b.make(spec.display_name(), spec.mode);
}

Builder n1_basis(std::size_t n) {
    Builder b;
    for (std::size_t d = 1; d <= n; ++d) {
        if (d % 2 == 1) {
            b.vec("u" + std::to_string(d), d);
            b.vec("v" + std::to_string(d), d);
        } else {
            b.vec("w" + std::to_string(d), d);
        }
    }
    return b;
}

void n1_relations(Builder& b, std::size_t n, int sign, bool drop_top_u) {
    auto have = [&](const std::string& lab) {
        return std::any_of(b.basis.begin(), b.basis.end(),
                           [&](const auto& kv) { return kv.first == lab; });
    };
    auto U = [](std::size_t d) { return "u" + std::to_string(d); };
    auto V = [](std::size_t d) { return "v" + std::to_string(d); };
    auto W = [](std::size_t d) { return "w" + std::to_string(d); };
    for (std::size_t a = 1; a <= n; a += 2) {
        for (std::size_t bb = 1; a + bb <= n; bb += 2)
            if (have(U(a)) && have(V(bb))) b.rel(U(a), V(bb), W(a + bb), 1);
        for (std::size_t c = 2; a + c <= n; c += 2) {
            if (have(V(a)) && have(U(a + c))) b.rel(V(a), W(c), U(a + c), sign);
            if (have(U(a)) && have(V(a + c))) b.rel(W(c), U(a), V(a + c), 1);
        }
    }
    (void)drop_top_u;
}

GradedLieAlgebra build_n1(const FamilySpec& spec) {
    Builder b = n1_basis(spec.n);
    n1_relations(b, spec.n, spec.sign, false);
    return b.make(spec.display_name(), spec.mode);
}

GradedLieAlgebra build_n11(const FamilySpec& spec) {
    Builder b = n1_basis(spec.n);
    std::erase_if(b.basis, [&](const auto& kv) {
        return kv.first == "u" + std::to_string(spec.n);
    });
    n1_relations(b, spec.n, spec.sign, true);
    return b.make(spec.display_name(), spec.mode);
}

GradedLieAlgebra build_n2(const FamilySpec& spec, bool z3) {
    std::size_t fmax = 0;
    while (n2_degree(fmax + 1) <= spec.n) ++fmax;
    Builder b;
    for (std::size_t f = 1; f <= fmax; ++f)
        b.vec("f" + std::to_string(f), n2_degree(f));
    if (z3) b.vec("z", 3);
    for (std::size_t q = 1; q <= fmax; ++q)
        for (std::size_t l = q + 1; l <= fmax; ++l) {
            if (q + l > fmax) continue;
            if (n2_degree(q) + n2_degree(l) != n2_degree(q + l)) continue;
            int c = kN2Table[q % 8][l % 8];
            if (c)
                b.rel("f" + std::to_string(q), "f" + std::to_string(l),
                      "f" + std::to_string(q + l), c);
        }
    if (z3) b.rel("f2", "f3", "z", 1);
    return b.make(spec.display_name(), spec.mode);
}

GradedLieAlgebra build_n2s(const FamilySpec& spec, bool z3) {
    std::size_t m = spec.n / 6, r = spec.n % 6;  // r in {1, 5}
    std::size_t fa = r == 1 ? 8 * m + 1 : 8 * m + 6;  // a-type top index
    std::size_t fb = fa + 1;                          // b-type top index
    FamilySpec full = spec;
    full.family = z3 ? Family::n2_3 : Family::n2;
    GradedLieAlgebra g = build_n2(full, z3);
    std::string la = "f" + std::to_string(fa), lb = "f" + std::to_string(fb);

    Builder b;
    for (std::size_t i = 0; i < g.dim(); ++i) {
        const std::string& lab = g.labels()[i];
        if (spec.s == 1 && lab == lb) continue;
        if (spec.s == 2 && lab == la) continue;
        if (spec.s == 3 && lab == lb) continue;  // identify: c := f_a = f_b
        b.vec(lab, g.degree(i));
    }
    GradedLieAlgebra q = b.make(spec.display_name(), spec.mode);
    auto map_label = [&](std::size_t k) -> std::string {
        const std::string& lab = g.labels()[k];
        if (spec.s == 3 && lab == lb) return la;
        return lab;
    };
    for (const auto& [ij, vec] : g.constants()) {
        const std::string& li = g.labels()[ij.first];
        const std::string& lj = g.labels()[ij.second];
        if (spec.s == 1 && (li == lb || lj == lb)) continue;
        if (spec.s == 2 && (li == la || lj == la)) continue;
        if (spec.s == 3 && (li == lb || lj == lb)) continue;  // top is central
        for (const auto& [k, c] : vec) {
            std::string lk = map_label(k);
            if (spec.s == 1 && g.labels()[k] == lb) continue;
            if (spec.s == 2 && g.labels()[k] == la) continue;
            q.add_constant(q.label_index(li), q.label_index(lj), q.label_index(lk),
                           c.convert(spec.mode));
        }
    }
    return q;
}

GradedLieAlgebra build_wplus(const FamilySpec& spec) {
    // basis e1..e_{n+1}; associated graded of the truncation is m0(n)
    Builder b;
    for (std::size_t i = 1; i <= spec.n + 1; ++i) b.vec("e" + std::to_string(i), i);
    for (std::size_t i = 1; i <= spec.n + 1; ++i)
        for (std::size_t j = i + 1; i + j <= spec.n + 1; ++j)
            b.rel("e" + std::to_string(i), "e" + std::to_string(j),
                  "e" + std::to_string(i + j), (long)j - (long)i);
    return b.make(spec.display_name(), spec.mode);
}

GradedLieAlgebra build_m2(const FamilySpec& spec) {
    Builder b;
    for (std::size_t i = 1; i <= spec.n + 1; ++i) b.vec("e" + std::to_string(i), i);
    for (std::size_t i = 2; i + 1 <= spec.n + 1; ++i)
        b.rel("e1", "e" + std::to_string(i), "e" + std::to_string(i + 1), 1);
    for (std::size_t j = 3; j + 2 <= spec.n + 1; ++j)
        b.rel("e2", "e" + std::to_string(j), "e" + std::to_string(j + 2), 1);
    return b.make(spec.display_name(), spec.mode);
}

GradedLieAlgebra build_fial_ones(const FamilySpec& spec) {
    std::size_t N = spec.n + 1;
    Builder b;
    for (std::size_t i = 1; i <= N; ++i) b.vec("e" + std::to_string(i), i);
    auto E = [](std::size_t i) { return "e" + std::to_string(i); };
    if (N >= 3) b.rel(E(1), E(2), E(3), 1);
    if (N >= 4) b.rel(E(1), E(3), E(4), 1);
    for (std::size_t k = 2; 2 * k + 2 <= N; ++k) {
        b.rel(E(1), E(2 * k + 1), E(2 * k + 2), 1);
        b.rel(E(2), E(2 * k), E(2 * k + 2), 1);
    }
    for (std::size_t k = 2; 2 * k + 1 <= N; ++k)
        b.rel(E(2), E(2 * k - 1), E(2 * k + 1), 1);
    return b.make(spec.display_name(), spec.mode);
}

}  // namespace

GradedLieAlgebra build(const FamilySpec& spec) {
    validate(spec);
    switch (spec.family) {
        case Family::m0:
        case Family::m0_S: return build_m0S(spec);
        case Family::m1:
        case Family::m1_S: return build_m1S(spec);
        case Family::m02_S: return build_m02S(spec);
        case Family::m03_S: return build_m03S(spec);
        case Family::n1: return build_n1(spec);
        case Family::n11: return build_n11(spec);
        case Family::n2: return build_n2(spec, false);
        case Family::n2_3: return build_n2(spec, true);
        case Family::n2s: return build_n2s(spec, false);
        case Family::n2s_3: return build_n2s(spec, true);
        case Family::Wplus: return build_wplus(spec);
        case Family::m2: return build_m2(spec);
        case Family::fial_ones: return build_fial_ones(spec);
        case Family::L23: {
            FamilySpec l = spec;
            l.family = Family::m0_S;
            l.n = 3;
            l.S = {3};
            auto g = build_m0S(l);
            g.set_name("L(2,3)");
            return g;
        }
    }
    throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------- loop matrices

LoopMatrix LoopMatrix::commutator(const LoopMatrix& A, const LoopMatrix& B) {
    LoopMatrix out;
    out.size = A.size;
    auto add = [&](std::size_t r, std::size_t c, long v, std::size_t t) {
        if (!v) return;
        auto key = std::make_pair(r, c);
        auto it = out.entries.find(key);
        long nv = v;
        std::size_t nt = t;
        if (it != out.entries.end()) {
            if (it->second.second != t && it->second.first + v != 0)
                throw std::logic_error("mixed t-degrees in one loop-matrix entry");
            nv = it->second.first + v;
            nt = it->second.second;
        }
        if (nv == 0)
            out.entries.erase(key);
        else
            out.entries[key] = {nv, nt};
    };
    for (const auto& [rc1, e1] : A.entries)
        for (const auto& [rc2, e2] : B.entries) {
            if (rc1.second == rc2.first)
                add(rc1.first, rc2.second, e1.first * e2.first, e1.second + e2.second);
            if (rc2.second == rc1.first)
                add(rc2.first, rc1.second, -e2.first * e1.first, e1.second + e2.second);
        }
    return out;
}

namespace {

// sl2 loop basis in the natural a/b/c ordering (a_d, b_d odd; c_d even);
// a_{2k+1} ~ (1/2) E12 t^k, b_{2k+1} ~ E21 t^{k+1}, c_{2k} ~ (1/2)(E11-E22) t^k.
// Halves are cleared by scaling: we use a ~ E12 t^k, b ~ E21 t^{k+1},
// c ~ (E11 - E22) t^k, which rescales basis vectors only.
LoopMatrix n1_e_matrix(const std::string& lab) {
    LoopMatrix m;
    m.size = 2;
    char kind = lab[0];
    std::size_t d = std::stoul(lab.substr(1));
    if (kind == 'a') {
        m.entries[{0, 1}] = {1, (d - 1) / 2};
    } else if (kind == 'b') {
        m.entries[{1, 0}] = {1, (d - 1) / 2 + 1};
    } else {
        m.entries[{0, 0}] = {1, d / 2};
        m.entries[{1, 1}] = {-1, d / 2};
    }
    return m;
}

LoopMatrix n1pm_matrix(const std::string& lab, int sign) {
    LoopMatrix m;
    m.size = 3;
    char kind = lab[0];
    std::size_t d = std::stoul(lab.substr(1));
    long mp = sign > 0 ? -1 : 1;  // the -/+ entry: minus for so(3), plus for so(2,1)
    if (kind == 'u') {
        m.entries[{0, 1}] = {1, d};
        m.entries[{1, 0}] = {-1, d};
    } else if (kind == 'v') {
        m.entries[{1, 2}] = {1, d};
        m.entries[{2, 1}] = {mp, d};
    } else {
        m.entries[{0, 2}] = {1, d};
        m.entries[{2, 0}] = {mp, d};
    }
    return m;
}

LoopMatrix n2_matrix(std::size_t idx) {
    LoopMatrix m;
    m.size = 3;
    std::size_t k = (idx - 1) / 8, s = (idx - 1) % 8 + 1;
    std::size_t t0 = 2 * k, t1 = 2 * k + 1, t2 = 2 * k + 2;
    switch (s) {
        case 1: m.entries[{0, 1}] = {1, t0}; m.entries[{1, 2}] = {1, t0}; break;
        case 2: m.entries[{2, 0}] = {1, t1}; break;
        case 3: m.entries[{1, 0}] = {1, t1}; m.entries[{2, 1}] = {-1, t1}; break;
        case 4:
            m.entries[{0, 0}] = {1, t1};
            m.entries[{1, 1}] = {-2, t1};
            m.entries[{2, 2}] = {1, t1};
            break;
        case 5: m.entries[{0, 1}] = {1, t1}; m.entries[{1, 2}] = {-1, t1}; break;
        case 6: m.entries[{0, 2}] = {1, t1}; break;
        case 7: m.entries[{1, 0}] = {1, t2}; m.entries[{2, 1}] = {1, t2}; break;
        case 8: m.entries[{0, 0}] = {1, t2}; m.entries[{2, 2}] = {-1, t2}; break;
    }
    return m;
}

// express a commutator as coeff * target basis matrix
long proportionality(const LoopMatrix& com, const LoopMatrix& target) {
    if (com.entries.empty()) return 0;
    long coeff = 0;
    if (com.entries.size() != target.entries.size())
        throw std::logic_error("commutator not proportional to target");
    for (const auto& [rc, e] : com.entries) {
        auto it = target.entries.find(rc);
        if (it == target.entries.end() || it->second.second != e.second)
            throw std::logic_error("commutator not proportional to target");
        if (e.first % it->second.first != 0)
            throw std::logic_error("non-integer proportionality");
        long c = e.first / it->second.first;
        if (coeff && c != coeff) throw std::logic_error("inconsistent proportionality");
        coeff = c;
    }
    return coeff;
}

}  // namespace

GradedLieAlgebra build_matrix_realization(Realization which, std::size_t n, int sign,
                                          const FieldMode& mode) {
    Builder b;
    std::vector<LoopMatrix> mats;
    if (which == Realization::n2) {
        std::size_t fmax = 0;
        while (n2_degree(fmax + 1) <= n) ++fmax;
        for (std::size_t f = 1; f <= fmax; ++f) {
            b.vec("f" + std::to_string(f), n2_degree(f));
        }
    } else {
        for (std::size_t d = 1; d <= n; ++d) {
            if (which == Realization::n1) {
                if (d % 2 == 1) {
                    b.vec("a" + std::to_string(d), d);
                    b.vec("b" + std::to_string(d), d);
                } else {
                    b.vec("c" + std::to_string(d), d);
                }
            } else {
                if (d % 2 == 1) {
                    b.vec("u" + std::to_string(d), d);
                    b.vec("v" + std::to_string(d), d);
                } else {
                    b.vec("w" + std::to_string(d), d);
                }
            }
        }
    }
    std::string name = which == Realization::n2
                           ? "n2[mat](" + std::to_string(n) + ")"
                       : which == Realization::n1
                           ? "n1[mat](" + std::to_string(n) + ")"
                           : "n1" + std::string(sign > 0 ? "+" : "-") + "[mat](" +
                                 std::to_string(n) + ")";
    GradedLieAlgebra g = b.make(name, mode);
    std::map<std::size_t, LoopMatrix> basis_mats;
    std::map<std::string, std::size_t> by_label;
    for (std::size_t i = 0; i < g.dim(); ++i) {
        const std::string& lab = g.labels()[i];
        by_label[lab] = i;
        if (which == Realization::n2)
            basis_mats[i] = n2_matrix(std::stoul(lab.substr(1)));
        else if (which == Realization::n1)
            basis_mats[i] = n1_e_matrix(lab);
        else
            basis_mats[i] = n1pm_matrix(lab, sign);
    }
    for (std::size_t i = 0; i < g.dim(); ++i)
        for (std::size_t j = i + 1; j < g.dim(); ++j) {
            std::size_t dd = g.degree(i) + g.degree(j);
            if (dd > n) continue;
            LoopMatrix com = LoopMatrix::commutator(basis_mats[i], basis_mats[j]);
            if (com.entries.empty()) continue;
            // the target is the unique basis matrix proportional to com
            bool found = false;
            for (auto t : g.basis_of_degree(dd)) {
                try {
                    long c = proportionality(com, basis_mats[t]);
                    if (c) {
                        g.add_constant(i, j, t, Scalar::from_int(c, mode));
                        found = true;
                    }
                    break;
                } catch (const std::logic_error&) {
                    continue;
                }
            }
            if (!found && !com.entries.empty()) {
                // commutators landing above the truncation were skipped by dd > n
                throw std::logic_error(name + ": commutator escapes the span at (" +
                                       g.labels()[i] + "," + g.labels()[j] + ")");
            }
        }
    return g;
}

bool check_serre(Realization which, std::size_t n) {
    if (which == Realization::n1) {
        GradedLieAlgebra g = build_matrix_realization(Realization::n1, n);
        auto one = Scalar::one(g.mode());
        SparseVec e1{{g.label_index("a1"), one}}, e2{{g.label_index("b1"), one}};
        auto ad = [&](const SparseVec& x, SparseVec y, std::size_t times) {
            for (std::size_t t = 0; t < times; ++t) y = g.bracket(x, y);
            return y;
        };
        return ad(e1, e2, 3).empty() && ad(e2, e1, 3).empty();
    }
    if (which == Realization::n2) {
        FamilySpec spec;
        spec.family = Family::n2;
        spec.n = n;
        GradedLieAlgebra g = build(spec);
        auto one = Scalar::one(g.mode());
        SparseVec e1{{g.label_index("f1"), one}}, e2{{g.label_index("f2"), one}};
        auto ad = [&](const SparseVec& x, SparseVec y, std::size_t times) {
            for (std::size_t t = 0; t < times; ++t) y = g.bracket(x, y);
            return y;
        };
        return ad(e2, e1, 2).empty() && !ad(e1, e2, 4).empty() && ad(e1, e2, 5).empty();
    }
    throw std::invalid_argument("check_serre: n1 or n2 only");
}

// ---------------------------------------------------------------- cocycles

namespace {

TwoCochain omega_m0(const GradedLieAlgebra& base, std::size_t r) {
    // -b^1 ^ a^{r-1} + sum_{l=1}^{(r-1)/2} (-1)^l a^l ^ a^{r-l}
    TwoCochain om;
    om.grading = r;
    const FieldMode& m = base.mode();
    om.add(base.label_index("b1"), base.label_index("a" + std::to_string(r - 1)),
           -Scalar::one(m));
    for (std::size_t l = 1; l <= (r - 1) / 2; ++l)
        om.add(base.label_index("a" + std::to_string(l)),
               base.label_index("a" + std::to_string(r - l)),
               Scalar::from_int(l % 2 == 0 ? 1 : -1, m));
    return om;
}

TwoCochain omega_m02_top(const GradedLieAlgebra& base, std::size_t m2m) {
    // a^1 ^ b^{2m-1} - (m-1) b^1 ^ a^{2m-1} + sum_{l=2}^{m-1} (-1)^l (m-l) a^l ^ a^{2m-l}
    std::size_t m = m2m / 2;
    TwoCochain om;
    om.grading = m2m;
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

}  // namespace

DefiningCocycles defining_cocycles(const FamilySpec& spec) {
    validate(spec);
    DefiningCocycles out;
    switch (spec.family) {
        case Family::m0_S: {
            FamilySpec base = spec;
            base.family = Family::m0;
            base.S.clear();
            out.base = build(base);
            for (std::size_t r : spec.S) out.cocycles.push_back(omega_m0(out.base, r));
            return out;
        }
        case Family::m1_S:
        case Family::m1: {
            // (k+1)-dim extension of m0(2m-2) by gradings 2m-1, r_1..r_k
            FamilySpec base;
            base.family = Family::m0;
            base.n = spec.n - 1;
            base.mode = spec.mode;
            out.base = build(base);
            out.cocycles.push_back(omega_m0(out.base, spec.n));
            for (std::size_t r : spec.S) out.cocycles.push_back(omega_m0(out.base, r));
            return out;
        }
        case Family::m02_S: {
            // (k+1)-dim extension of m0^{2m-1}(2m-1) by gradings 2m, r_1..r_k
            FamilySpec base;
            base.family = Family::m0_S;
            base.n = spec.n - 1;
            base.S = {spec.n - 1};
            base.mode = spec.mode;
            out.base = build(base);
            out.cocycles.push_back(omega_m02_top(out.base, spec.n));
            for (std::size_t r : spec.S) out.cocycles.push_back(omega_m0(out.base, r));
            return out;
        }
        case Family::n2_3: {
            FamilySpec base = spec;
            base.family = Family::n2;
            out.base = build(base);
            TwoCochain om;
            om.grading = 3;
            om.add(out.base.label_index("f2"), out.base.label_index("f3"),
                   Scalar::one(out.base.mode()));
            out.cocycles.push_back(om);
            return out;
        }
        case Family::n1:
        case Family::n11: {
            // one step down the loop tower; the top grading is re-added by
            // the duals of the removed vectors
            FamilySpec base = spec;
            base.family = Family::n1;
            base.n = spec.n - 1;
            out.base = build(base);
            const FieldMode& m = out.base.mode();
            std::size_t k = spec.n;
            auto idx = [&](char kind, std::size_t d) {
                return out.base.label_index(std::string(1, kind) + std::to_string(d));
            };
            auto omega = [&](char which) {
                TwoCochain om;
                om.grading = k;
                if (which == 'w') {
                    for (std::size_t a = 1; a < k; a += 2)
                        om.add(idx('u', a), idx('v', k - a), Scalar::one(m));
                } else if (which == 'u') {
                    for (std::size_t b = 1; b < k; b += 2)
                        om.add(idx('v', b), idx('w', k - b),
                               Scalar::from_int(spec.sign, m));
                } else {
                    for (std::size_t c = 2; c < k; c += 2)
                        om.add(idx('w', c), idx('u', k - c), Scalar::one(m));
                }
                return om;
            };
            if (spec.family == Family::n11) {
                out.cocycles.push_back(omega('v'));
            } else if (spec.n % 2 == 0) {
                out.cocycles.push_back(omega('w'));
            } else {
                out.cocycles.push_back(omega('u'));
                out.cocycles.push_back(omega('v'));
            }
            return out;
        }
        case Family::L23: {
            FamilySpec base;
            base.family = Family::m0;
            base.n = 3;
            base.mode = spec.mode;
            out.base = build(base);
            out.cocycles.push_back(omega_m0(out.base, 3));
            return out;
        }
        default:
            throw std::invalid_argument("defining_cocycles: unsupported family " +
                                        family_id(spec.family));
    }
}

std::vector<FamilyInfo> family_registry() {
    return {
        {"m0", "n", "n >= 1", "n+1", "filiform chain"},
        {"m0_S", "n, S = {r_1<..<r_k} odd, 3<=r<=n", "n >= 2, k >= 1", "n+k+1",
         "central extensions of m0 at odd gradings"},
        {"m1", "n = 2m-1", "m >= 3", "2m", "second naturally graded filiform"},
        {"m1_S", "n = 2m-1, S odd <= 2m-3", "m >= 3", "2m+k", "m1 with extra b-slots"},
        {"m02_S", "n = 2m, S odd <= 2m-3", "m >= 3", "2m+k+2", "one step above m0^{2m-1}"},
        {"m03_S", "n = 2m+1, S odd <= 2m-3", "m >= 3", "2m+k+3", "terminal tower top"},
        {"n1", "n, sign", "n >= 2", "3m / 3m+2", "so(3)/so(2,1) loop truncations"},
        {"n11", "n = 2m+1, sign", "m >= 2", "3m+1", "one-dimensional quotient of n1"},
        {"n2", "n", "n >= 6", "8m+q+1 or 8m+q+2", "A_2^(2) loop truncations"},
        {"n2_3", "n", "n >= 6", "dim n2(n) + 1", "n2 with grading-3 center"},
        {"n2s", "n = 6m+1 | 6m+5, s in {1,2,3}", "m >= 1", "8m+1 / 8m+6", "top quotients"},
        {"n2s_3", "n = 6m+1 | 6m+5, s", "m >= 1", "8m+2 / 8m+7", "n2s with center"},
        {"wplus", "n", "n >= 2", "n+1", "Witt positive part (not Carnot)"},
        {"m2", "n", "n >= 2", "n+1", "not Carnot"},
        {"fial_ones", "n", "n >= 2", "n+1", "width-one family instance (not Carnot)"},
        {"l23", "-", "-", "5", "free 2-generator 3-step nilpotent"},
    };
}

}  // namespace carnot
