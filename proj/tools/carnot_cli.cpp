// carnot: build, verify and classify narrow naturally graded Lie algebras.
//
// Exit codes: 0 success, 2 invariant failure, 3 refutation / non-isomorphic,
// 4 unclassified frontier (incomplete coverage or missing playbook entry).

#include "carnot/json_io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace carnot;

namespace {

constexpr int kExitInvariant = 2;
constexpr int kExitRefuted = 3;
constexpr int kExitFrontier = 4;

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    // write to a temp file, then atomically rename into place
    std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary);
        if (!os) throw std::runtime_error("cannot write " + tmp);
        os << text;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

GradedLieAlgebra read_algebra(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot read " + path);
    Json j = Json::parse(is);
    return algebra_from_json(j);
}

std::vector<std::int64_t> primes_from_env() {
    const char* env = std::getenv("CARNOT_PRIMES");
    std::vector<std::int64_t> out;
    if (!env) return out;
    std::stringstream ss(env);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoll(tok));
    return out;
}

FamilySpec parse_spec(const std::string& family, std::size_t n, const std::string& sign,
                      const std::string& set, int s, const std::string& field) {
    auto fam = family_from_id(family);
    if (!fam) throw CLI::ValidationError("build", "unknown family id: " + family);
    FamilySpec spec;
    spec.family = *fam;
    spec.n = n;
    spec.sign = sign == "-" ? -1 : +1;
    spec.s = s;
    spec.mode = FieldMode::parse(field);
    if (!set.empty()) {
        std::stringstream ss(set);
        std::string tok;
        while (std::getline(ss, tok, ',')) spec.S.push_back(std::stoul(tok));
    }
    return spec;
}

int run_verify(const GradedLieAlgebra& g, bool quiet = false) {
    auto report = [&](const char* what, const std::vector<LawViolation>& v) {
        if (v.empty()) {
            if (!quiet) std::cout << what << ": ok\n";
            return 0;
        }
        std::cerr << what << ": " << v.size() << " violation(s); first at (";
        for (std::size_t i = 0; i < v[0].where.size(); ++i)
            std::cerr << (i ? "," : "") << g.labels()[v[0].where[i]];
        std::cerr << ") " << v[0].detail << "\n";
        return kExitInvariant;
    };
    int rc = 0;
    rc = std::max(rc, report("grading", check_grading(g)));
    rc = std::max(rc, report("jacobi", check_jacobi(g)));
    bool carnot = is_carnot(g);
    bool width = width_ok_3_2(g);
    if (!quiet) {
        std::cout << "carnot: " << (carnot ? "yes" : "no") << "\n";
        std::cout << "width-3/2: " << (width ? "yes" : "no") << "\n";
    }
    if (!carnot || !width) {
        std::cerr << "verify: " << g.name() << " fails "
                  << (!carnot ? "the Carnot condition" : "the width bound") << "\n";
        rc = std::max(rc, kExitInvariant);
    }
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact engine for narrow naturally graded Lie algebras"};
    app.require_subcommand(1);

    std::string family, set, sign = "+", field = "Q", out, file_a, file_b, strategy;
    std::size_t nlen = 2, grading = 0, upto = 0, maxlen = 6;
    int s_param = 1;
    bool profile = false, list_families = false;
    std::string mode = "real", emit = "json";
    std::uint64_t seed = 0;

    auto* cb = app.add_subcommand("build", "construct a catalog algebra as JSON");
    cb->add_option("family", family, "family id (see `catalog --list`)")->required();
    cb->add_option("--n", nlen, "length")->required();
    cb->add_option("--set", set, "comma-separated odd set S");
    cb->add_option("--sign", sign, "+ or - for the n1 families");
    cb->add_option("--s", s_param, "quotient selector for n2s families");
    cb->add_option("--field", field, "Q | Qi | Fp:<p>");
    cb->add_option("-o,--out", out, "output path (default stdout)");

    auto* cv = app.add_subcommand("verify", "run the structural checks on a file");
    cv->add_option("file", file_a)->required();

    auto* cc = app.add_subcommand("cohomology", "graded H^2 of an algebra file");
    cc->add_option("file", file_a)->required();
    cc->add_option("--grading", grading, "single grading k");
    cc->add_flag("--profile", profile, "all gradings 2..length+1");
    cc->add_option("-o,--out", out);

    auto* ce = app.add_subcommand("extend", "Carnot extensions of an algebra file");
    ce->add_option("file", file_a)->required();
    ce->add_option("--mode", mode, "real | complex");
    ce->add_option("-o,--out", out);

    auto* ct = app.add_subcommand("tree", "the classification tree with certificates");
    ct->add_option("--max-len", maxlen)->required();
    ct->add_option("--mode", mode, "real | complex");
    ct->add_option("--emit", emit, "json | dot");
    ct->add_option("--seed", seed, "logged in outputs");
    ct->add_option("-o,--out", out);

    auto* ci = app.add_subcommand("iso", "decide isomorphism of two algebra files");
    ci->add_option("a", file_a)->required();
    ci->add_option("b", file_b)->required();
    ci->add_option("--strategy", strategy, "fp:<p> | witness:<file>")->required();

    auto* cg = app.add_subcommand("growth", "growth CSV: n, F(n), width-to-date");
    cg->add_option("file", file_a)->required();
    cg->add_option("--upto", upto, "cap on n (default: length)");
    cg->add_option("-o,--out", out);

    auto* cl = app.add_subcommand("catalog", "the family registry");
    cl->add_flag("--list", list_families, "list families");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cb->parsed()) {
            FamilySpec spec = parse_spec(family, nlen, sign, set, s_param, field);
            GradedLieAlgebra g = build(spec);
            write_output(out, dumps(algebra_to_json(g)));
            return 0;
        }
        if (cv->parsed()) return run_verify(read_algebra(file_a));
        if (cc->parsed()) {
            GradedLieAlgebra g = read_algebra(file_a);
            Json j;
            j["name"] = g.name();
            if (profile) {
                Json rows = Json::array();
                for (auto [k, h] : h2_profile(g)) {
                    Json e;
                    e["grading"] = k;
                    e["h_dim"] = h;
                    rows.push_back(std::move(e));
                }
                j["profile"] = std::move(rows);
            } else {
                if (grading == 0)
                    throw std::invalid_argument("need --grading or --profile");
                auto space = h2_graded(g, grading);
                j["grading"] = grading;
                j["z_dim"] = space.cocycle_basis.dim();
                j["b_dim"] = space.coboundary_basis.dim();
                j["h_dim"] = space.h_dim;
                Json reps = Json::array();
                for (const auto& r : space.representatives)
                    reps.push_back(cochain_to_json(g, r));
                j["representatives"] = std::move(reps);
            }
            write_output(out, dumps(j));
            return 0;
        }
        if (ce->parsed()) {
            GradedLieAlgebra g = read_algebra(file_a);
            int rc = run_verify(g, true);
            if (rc) return rc;
            ClassifyConfig cfg;
            cfg.mode = mode == "complex" ? OrbitMode::ComplexLike : OrbitMode::RealLike;
            auto env = primes_from_env();
            if (!env.empty()) {
                cfg.probe_prime = env.front();
                cfg.refutation_primes = env;
            }
            ExtensionNode node;
            auto matches = match_to_catalog(g);
            if (matches.empty()) {
                Json j;
                j["node"] = g.name();
                j["frontier"] = "no catalog match for this algebra";
                write_output(out, dumps(j));
                return kExitFrontier;
            }
            node.spec = canonical_spec(matches.front().spec);
            node.name = node.spec.display_name();
            node.algebra = build(node.spec);
            auto step = carnot_extensions(node, cfg);
            Json j;
            j["node"] = node.name;
            Json kids = Json::array();
            for (const auto& c : step.children) {
                Json e;
                e["name"] = c.name;
                e["extension_dim"] = c.ext_dim;
                e["terminal"] = c.terminal;
                kids.push_back(std::move(e));
            }
            j["extensions"] = std::move(kids);
            j["certificate"] = orbit_certificate_to_json(step.certificate);
            Json fr = Json::array();
            for (const auto& f : step.frontier) {
                Json e;
                e["node"] = f.node;
                e["detail"] = f.detail;
                fr.push_back(std::move(e));
            }
            j["frontier"] = std::move(fr);
            write_output(out, dumps(j));
            return step.frontier.empty() ? 0 : kExitFrontier;
        }
        if (ct->parsed()) {
            ClassifyConfig cfg;
            cfg.mode = mode == "complex" ? OrbitMode::ComplexLike : OrbitMode::RealLike;
            cfg.seed = seed;
            auto env = primes_from_env();
            if (!env.empty()) {
                cfg.probe_prime = env.front();
                cfg.refutation_primes = env;
            }
            Tree t = build_tree(maxlen, cfg);
            write_output(out, emit == "dot" ? tree_to_dot(t) : dumps(tree_to_json(t)));
            return t.frontier.empty() ? 0 : kExitFrontier;
        }
        if (ci->parsed()) {
            GradedLieAlgebra a = read_algebra(file_a);
            GradedLieAlgebra b = read_algebra(file_b);
            if (strategy.rfind("fp:", 0) == 0) {
                auto cert = iso_search_fp(a, b, std::stoll(strategy.substr(3)));
                std::cout << dumps(certificate_to_json(cert));
                return cert.kind == IsoCertificate::Kind::Witness ? 0 : kExitRefuted;
            }
            if (strategy.rfind("witness:", 0) == 0) {
                std::ifstream is(strategy.substr(8));
                if (!is) throw std::runtime_error("cannot read witness file");
                Json j = Json::parse(is);
                GradedMap f;
                f.source = &a;
                f.target = &b;
                for (std::size_t d = 1; d <= a.length(); ++d) {
                    auto rows = j.at("blocks").at(d - 1);
                    std::size_t nd = a.basis_of_degree(d).size();
                    Matrix B(nd, nd, a.mode());
                    for (std::size_t r = 0; r < B.rows(); ++r)
                        for (std::size_t c = 0; c < B.cols(); ++c)
                            B.set(r, c,
                                  Scalar::parse(rows.at(r).at(c).get<std::string>(),
                                                a.mode()));
                    f.blocks.push_back(std::move(B));
                }
                bool ok = verify_graded_iso(f);
                std::cout << (ok ? "witness verifies\n" : "witness rejected\n");
                return ok ? 0 : kExitRefuted;
            }
            throw std::invalid_argument("unknown strategy: " + strategy);
        }
        if (cg->parsed()) {
            GradedLieAlgebra g = read_algebra(file_a);
            GrowthProfile p = growth(g);
            std::ostringstream os;
            os << "n,F,width_to_date\n";
            std::size_t w = 0;
            std::size_t cap = upto ? std::min<std::size_t>(upto, p.values.size())
                                   : p.values.size();
            for (std::size_t n = 1; n <= cap; ++n) {
                w = std::max(w, g.basis_of_degree(n).size());
                os << n << "," << p.values[n - 1] << "," << w << "\n";
            }
            write_output(out, os.str());
            return 0;
        }
        if (cl->parsed()) {
            for (const auto& row : family_registry())
                std::cout << row.id << "\t" << row.parameters << "\t" << row.validity
                          << "\tdim=" << row.dimension << "\t" << row.notes << "\n";
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
