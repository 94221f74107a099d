#pragma once

#include "carnot/classify.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace carnot {

using Json = nlohmann::ordered_json;

// Algebra interchange document:
// {name, field: "Q"|"Qi"|"Fp:<p>", degrees: [...], labels: [...],
//  brackets: [{i, j, terms: [{k, coeff}]}]} with Scalar string coefficients.
Json algebra_to_json(const GradedLieAlgebra& g);
GradedLieAlgebra algebra_from_json(const Json& j);

// Cochain document: {grading, terms: [{labels: [li, lj], coeff}]}.
Json cochain_to_json(const GradedLieAlgebra& g, const TwoCochain& om);
TwoCochain cochain_from_json(const GradedLieAlgebra& g, const Json& j);

// Witness: per-degree blocks; refutation: {prime, group_order, exhausted}.
Json witness_to_json(const GradedMap& f);
Json certificate_to_json(const IsoCertificate& c);

Json growth_to_json(const GradedLieAlgebra& g);

Json coverage_to_json(const CoverageReport& c);
Json orbit_certificate_to_json(const OrbitCertificate& c);
Json tree_to_json(const Tree& t);
std::string tree_to_dot(const Tree& t);

// Canonical serialization (stable key order, 2-space indent, newline).
std::string dumps(const Json& j);

}  // namespace carnot
