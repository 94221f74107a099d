#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "carnot/json_io.hpp"

#include <sstream>

namespace py = pybind11;
using namespace carnot;

namespace {

FamilySpec make_spec(const std::string& family, std::size_t n,
                     const std::vector<std::size_t>& S, const std::string& sign,
                     int s, const std::string& field) {
    auto fam = family_from_id(family);
    if (!fam) throw std::invalid_argument("unknown family id: " + family);
    FamilySpec spec;
    spec.family = *fam;
    spec.n = n;
    spec.S = S;
    spec.sign = sign == "-" ? -1 : +1;
    spec.s = s;
    spec.mode = FieldMode::parse(field);
    return spec;
}

py::dict bracket_dict(const GradedLieAlgebra& g, const SparseVec& v) {
    py::dict out;
    for (const auto& [k, c] : v) out[py::str(g.labels()[k])] = c.str();
    return out;
}

}  // namespace

PYBIND11_MODULE(_carnot, m) {
    m.doc() = "exact engine for narrow naturally graded Lie algebras";

    py::class_<GradedLieAlgebra>(m, "Algebra")
        .def_property_readonly("name", &GradedLieAlgebra::name)
        .def_property_readonly("dim", &GradedLieAlgebra::dim)
        .def_property_readonly("length", &GradedLieAlgebra::length)
        .def_property_readonly("degrees", &GradedLieAlgebra::degree_dims)
        .def_property_readonly("labels", &GradedLieAlgebra::labels)
        .def_property_readonly("field",
                               [](const GradedLieAlgebra& g) { return g.mode().str(); })
        .def("bracket",
             [](const GradedLieAlgebra& g, const std::string& x, const std::string& y) {
                 return bracket_dict(
                     g, g.bracket_basis(g.label_index(x), g.label_index(y)));
             },
             py::arg("x"), py::arg("y"),
             "bracket of two basis labels as a {label: coeff} dict")
        .def("check_jacobi",
             [](const GradedLieAlgebra& g) { return check_jacobi(g).empty(); })
        .def("check_grading",
             [](const GradedLieAlgebra& g) { return check_grading(g).empty(); })
        .def("is_carnot", [](const GradedLieAlgebra& g) { return is_carnot(g); })
        .def("width_ok", [](const GradedLieAlgebra& g) { return width_ok_3_2(g); })
        .def("growth", [](const GradedLieAlgebra& g) { return growth(g).values; })
        .def("natural_dims",
             [](const GradedLieAlgebra& g) { return natural_grading_dims(g); })
        .def("lcs_dims",
             [](const GradedLieAlgebra& g) {
                 std::vector<std::size_t> out;
                 for (const auto& t : lower_central_series(g)) out.push_back(t.dim());
                 return out;
             })
        .def("associated_graded",
             [](const GradedLieAlgebra& g) { return associated_graded(g); })
        .def("truncate",
             [](const GradedLieAlgebra& g) {
                 return quotient(g, top_component_ideal(g));
             },
             "quotient by the top homogeneous component")
        .def("to_json",
             [](const GradedLieAlgebra& g) { return dumps(algebra_to_json(g)); })
        .def("__repr__", [](const GradedLieAlgebra& g) {
            std::ostringstream os;
            os << "<Algebra " << g.name() << " dim=" << g.dim() << " over "
               << g.mode().str() << ">";
            return os.str();
        });

    m.def("build",
          [](const std::string& family, std::size_t n, const std::vector<std::size_t>& S,
             const std::string& sign, int s, const std::string& field) {
              return build(make_spec(family, n, S, sign, s, field));
          },
          py::arg("family"), py::arg("n") = 2, py::arg("S") = std::vector<std::size_t>{},
          py::arg("sign") = "+", py::arg("s") = 1, py::arg("field") = "Q");

    m.def("from_json", [](const std::string& text) {
        return algebra_from_json(Json::parse(text));
    });

    m.def("h2",
          [](const GradedLieAlgebra& g, std::size_t k) {
              auto space = h2_graded(g, k);
              py::dict out;
              out["grading"] = k;
              out["z_dim"] = space.cocycle_basis.dim();
              out["b_dim"] = space.coboundary_basis.dim();
              out["h_dim"] = space.h_dim;
              py::list reps;
              for (const auto& r : space.representatives) {
                  py::dict rep;
                  py::list terms;
                  for (const auto& [ij, c] : r.terms)
                      terms.append(py::make_tuple(g.labels()[ij.first],
                                                  g.labels()[ij.second], c.str()));
                  rep["grading"] = r.grading;
                  rep["terms"] = terms;
                  reps.append(rep);
              }
              out["representatives"] = reps;
              return out;
          },
          py::arg("algebra"), py::arg("grading"));

    m.def("h2_profile", [](const GradedLieAlgebra& g) { return h2_profile(g); });

    m.def("iso_search_fp",
          [](const GradedLieAlgebra& a, const GradedLieAlgebra& b, std::int64_t p) {
              auto cert = iso_search_fp(a, b, p);
              py::dict out;
              out["witness"] = cert.kind == IsoCertificate::Kind::Witness;
              out["prime"] = cert.prime;
              out["search_space"] = cert.search_space;
              out["exhausted"] = cert.exhausted;
              return out;
          },
          py::arg("a"), py::arg("b"), py::arg("p"));

    m.def("aut_group_order_fp",
          [](const GradedLieAlgebra& g, std::int64_t p) {
              return aut_group_fp(g, p).elements.size();
          },
          py::arg("algebra"), py::arg("p"));

    m.def("check_serre", [](const std::string& which, std::size_t n) {
        if (which == "n1") return check_serre(Realization::n1, n);
        if (which == "n2") return check_serre(Realization::n2, n);
        throw std::invalid_argument("which must be n1 or n2");
    });

    m.def("match_to_catalog", [](const GradedLieAlgebra& g) {
        std::vector<std::string> out;
        for (const auto& hit : match_to_catalog(g)) out.push_back(hit.name);
        return out;
    });

    m.def("central_extension",
          [](const GradedLieAlgebra& g,
             const std::vector<std::tuple<std::string, std::string, std::string>>& terms,
             std::size_t grading, const std::string& label) {
              TwoCochain om;
              om.grading = grading;
              for (const auto& [x, y, c] : terms)
                  om.add(g.label_index(x), g.label_index(y), Scalar::parse(c, g.mode()));
              auto ext = central_extension(
                  g, {om},
                  label.empty() ? std::vector<std::string>{}
                                : std::vector<std::string>{label});
              return py::make_tuple(ext.algebra, ext.independent_in_h2);
          },
          py::arg("algebra"), py::arg("terms"), py::arg("grading"), py::arg("label") = "");

    m.def("tree",
          [](std::size_t max_len, const std::string& mode, bool certificates) {
              ClassifyConfig cfg;
              cfg.mode =
                  mode == "complex" ? OrbitMode::ComplexLike : OrbitMode::RealLike;
              cfg.certificates = certificates;
              Tree t = build_tree(max_len, cfg);
              return py::module_::import("json").attr("loads")(dumps(tree_to_json(t)));
          },
          py::arg("max_len"), py::arg("mode") = "real", py::arg("certificates") = true);

    m.def("family_registry", []() {
        py::list out;
        for (const auto& row : family_registry()) {
            py::dict e;
            e["id"] = row.id;
            e["parameters"] = row.parameters;
            e["validity"] = row.validity;
            e["dimension"] = row.dimension;
            e["notes"] = row.notes;
            out.append(e);
        }
        return out;
    });
}
