#include "carnot/json_io.hpp"

#include <sstream>

namespace carnot {

Json algebra_to_json(const GradedLieAlgebra& g) {
    Json j;
    j["name"] = g.name();
    j["field"] = g.mode().str();
    j["degrees"] = g.degree_dims();
    j["labels"] = g.labels();
    Json brackets = Json::array();
    for (const auto& [ij, vec] : g.constants()) {
        Json b;
        b["i"] = ij.first;
        b["j"] = ij.second;
        Json terms = Json::array();
        for (const auto& [k, c] : vec) {
            Json t;
            t["k"] = k;
            t["coeff"] = c.str();
            terms.push_back(std::move(t));
        }
        b["terms"] = std::move(terms);
        brackets.push_back(std::move(b));
    }
    j["brackets"] = std::move(brackets);
    return j;
}

GradedLieAlgebra algebra_from_json(const Json& j) {
    FieldMode mode = FieldMode::parse(j.at("field").get<std::string>());
    GradedLieAlgebra g(j.at("name").get<std::string>(), mode,
                       j.at("degrees").get<std::vector<std::size_t>>(),
                       j.at("labels").get<std::vector<std::string>>());
    for (const auto& b : j.at("brackets")) {
        std::size_t i = b.at("i").get<std::size_t>();
        std::size_t jj = b.at("j").get<std::size_t>();
        for (const auto& t : b.at("terms"))
            g.add_constant(i, jj, t.at("k").get<std::size_t>(),
                           Scalar::parse(t.at("coeff").get<std::string>(), mode));
    }
    return g;
}

Json cochain_to_json(const GradedLieAlgebra& g, const TwoCochain& om) {
    Json j;
    j["grading"] = om.grading;
    Json terms = Json::array();
    for (const auto& [ij, c] : om.terms) {
        Json t;
        t["labels"] = {g.labels()[ij.first], g.labels()[ij.second]};
        t["coeff"] = c.str();
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j;
}

TwoCochain cochain_from_json(const GradedLieAlgebra& g, const Json& j) {
    TwoCochain om;
    om.grading = j.at("grading").get<std::size_t>();
    for (const auto& t : j.at("terms")) {
        auto labs = t.at("labels").get<std::vector<std::string>>();
        om.add(g.label_index(labs.at(0)), g.label_index(labs.at(1)),
               Scalar::parse(t.at("coeff").get<std::string>(), g.mode()));
    }
    return om;
}

Json witness_to_json(const GradedMap& f) {
    Json j;
    j["kind"] = "witness";
    Json blocks = Json::array();
    for (const auto& B : f.blocks) {
        Json rows = Json::array();
        for (std::size_t r = 0; r < B.rows(); ++r) {
            Json row = Json::array();
            for (std::size_t c = 0; c < B.cols(); ++c) row.push_back(B.at(r, c).str());
            rows.push_back(std::move(row));
        }
        blocks.push_back(std::move(rows));
    }
    j["blocks"] = std::move(blocks);
    return j;
}

Json certificate_to_json(const IsoCertificate& c) {
    Json j;
    if (c.kind == IsoCertificate::Kind::Witness) {
        j["kind"] = "witness";
        j["prime"] = c.prime;
        Json rows = Json::array();
        const Matrix& B = *c.witness_deg1;
        for (std::size_t r = 0; r < B.rows(); ++r) {
            Json row = Json::array();
            for (std::size_t cc = 0; cc < B.cols(); ++cc) row.push_back(B.at(r, cc).str());
            rows.push_back(std::move(row));
        }
        j["deg1"] = std::move(rows);
    } else {
        j["kind"] = "refutation";
        j["prime"] = c.prime;
        j["group_order"] = c.search_space;
        j["exhausted"] = c.exhausted;
    }
    return j;
}

Json growth_to_json(const GradedLieAlgebra& g) {
    GrowthProfile p = growth(g);
    Json j;
    j["name"] = g.name();
    j["F"] = p.values;
    j["width"] = p.width;
    std::ostringstream os;
    os << p.slope;
    j["slope"] = os.str();
    return j;
}

Json coverage_to_json(const CoverageReport& c) {
    Json j;
    j["prime"] = c.prime;
    j["policy"] = c.policy;
    j["probes"] = c.probes;
    j["covered"] = c.covered;
    Json un = Json::array();
    for (const auto& u : c.uncovered) {
        Json e;
        e["subspace_dim"] = u.subspace_dim;
        e["rows"] = u.coords;
        if (!u.refutations.empty()) {
            Json ev = Json::array();
            for (const auto& [rep, cert] : u.refutations) {
                Json r;
                r["representative"] = rep;
                r["result"] = certificate_to_json(cert);
                ev.push_back(std::move(r));
            }
            e["evidence"] = std::move(ev);
        }
        un.push_back(std::move(e));
    }
    j["uncovered"] = std::move(un);
    j["complete"] = c.complete();
    return j;
}

Json orbit_certificate_to_json(const OrbitCertificate& c) {
    Json j;
    j["representatives"] = c.representatives;
    Json pw = Json::array();
    for (const auto& p : c.pairwise) {
        Json e;
        e["a"] = p.a;
        e["b"] = p.b;
        e["result"] = certificate_to_json(p.cert);
        pw.push_back(std::move(e));
    }
    j["pairwise"] = std::move(pw);
    j["coverage"] = coverage_to_json(c.coverage);
    j["complete"] = c.complete();
    return j;
}

Json tree_to_json(const Tree& t) {
    Json j;
    j["mode"] = mode_id(t.config.mode);
    j["probe_prime"] = t.config.effective_probe_prime();
    j["seed"] = t.config.seed;
    Json nodes = Json::array();
    for (const auto& n : t.nodes) {
        Json e;
        e["name"] = n.name;
        e["family"] = family_id(n.spec.family);
        e["length"] = n.algebra.length();
        e["dim"] = n.algebra.dim();
        e["degrees"] = n.algebra.degree_dims();
        e["parent"] = n.parent;
        e["extension_dim"] = n.ext_dim;
        e["terminal"] = n.terminal;
        e["catalog_witnessed"] = n.catalog_witnessed;
        auto it = t.certificates.find(n.name);
        if (it != t.certificates.end())
            e["certificate"] = orbit_certificate_to_json(it->second);
        nodes.push_back(std::move(e));
    }
    j["nodes"] = std::move(nodes);
    Json fr = Json::array();
    for (const auto& f : t.frontier) {
        Json e;
        e["node"] = f.node;
        e["detail"] = f.detail;
        fr.push_back(std::move(e));
    }
    j["frontier"] = std::move(fr);
    return j;
}

std::string tree_to_dot(const Tree& t) {
    std::ostringstream os;
    os << "digraph carnot_tree {\n";
    os << "  rankdir=TB;\n  node [shape=box, fontname=\"monospace\"];\n";
    for (const auto& n : t.nodes) {
        os << "  \"" << n.name << "\"";
        if (n.terminal) os << " [style=filled, fillcolor=lightgray]";
        os << ";\n";
    }
    for (const auto& n : t.nodes)
        if (!n.parent.empty())
            os << "  \"" << n.parent << "\" -> \"" << n.name << "\" [label=\""
               << n.ext_dim << "\"];\n";
    os << "}\n";
    return os.str();
}

std::string dumps(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace carnot
