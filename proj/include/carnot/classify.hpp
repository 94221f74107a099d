#pragma once

#include "carnot/catalog.hpp"
#include "carnot/cohomology.hpp"
#include "carnot/morphism.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace carnot {

enum class OrbitMode { RealLike, ComplexLike };

std::string mode_id(OrbitMode m);

struct ClassifyConfig {
    OrbitMode mode = OrbitMode::RealLike;
    std::int64_t probe_prime = 0;          // 0 = mode default (7 real, 13 complex)
    std::vector<std::int64_t> refutation_primes;  // defaults per mode
    std::uint64_t seed = 0;                // logged; sampling never triggers at
                                           // desk scale (all probe sets exhaustive)
    bool certificates = true;              // pairwise refutations + probe coverage
    std::int64_t effective_probe_prime() const;
    std::vector<std::int64_t> effective_refutation_primes() const;
};

// A verified sibling relation: refutation (exhausted search) or witness.
struct PairCheck {
    std::string a, b;
    IsoCertificate cert;
};

struct ProbeRecord {
    std::vector<std::string> coords;  // probe subspace rows in H^2 coordinates (F_p)
    std::size_t subspace_dim = 1;
    bool covered = false;
    std::string covered_by;           // representative name
    std::string aut_witness;          // deg-1 matrix of the covering automorphism
    // for uncovered probes (evidence budget permitting): the probe's own
    // extension exhaustively refuted against each same-dimension representative
    std::vector<std::pair<std::string, IsoCertificate>> refutations;
};

struct CoverageReport {
    std::int64_t prime = 0;
    std::string policy;               // e.g. "exhaustive lines + admissible planes"
    std::size_t probes = 0;
    std::size_t covered = 0;
    std::vector<ProbeRecord> uncovered;
    bool complete() const { return covered == probes; }
};

struct OrbitCertificate {
    std::vector<std::string> representatives;
    std::vector<PairCheck> pairwise;   // all unordered representative pairs
    CoverageReport coverage;
    bool refutations_complete = true;  // every pair decided non-isomorphic
    bool complete() const { return refutations_complete && coverage.complete(); }
};

struct ExtensionNode {
    FamilySpec spec;            // canonical catalog identity
    std::string name;           // display name of spec
    GradedLieAlgebra algebra;   // exact extension of the parent (over Q)
    std::string parent;         // "" for the root
    std::size_t ext_dim = 0;    // extension dimension (0 for the root)
    std::vector<TwoCochain> cocycles;  // on the parent's basis
    bool terminal = false;      // H^2_{(n+1)} = 0
    bool catalog_witnessed = false;    // algebra == build(spec) up to a Q-witness
};

struct UnclassifiedFrontier {
    std::string node;
    std::string detail;
};

struct ExtensionStep {
    std::vector<ExtensionNode> children;
    OrbitCertificate certificate;
    std::vector<UnclassifiedFrontier> frontier;
};

// Enumerates the Carnot extensions of a node per the classification
// playbook, then certifies validity, pairwise distinctness and probe
// coverage. Throws UnknownFamilyError-like frontier entries instead of
// guessing when the playbook has no entry.
ExtensionStep carnot_extensions(const ExtensionNode& node, const ClassifyConfig& cfg);

struct Tree {
    ClassifyConfig config;
    std::vector<ExtensionNode> nodes;                 // BFS order
    std::map<std::string, OrbitCertificate> certificates;  // by node name
    std::vector<UnclassifiedFrontier> frontier;

    std::vector<const ExtensionNode*> level(std::size_t n) const;
    bool all_certificates_complete() const;
};

Tree build_tree(std::size_t max_len, const ClassifyConfig& cfg);

ExtensionNode root_node(const FieldMode& mode = FieldMode::rational());

struct InfiniteFamiliesReport {
    std::size_t level = 0;
    std::vector<std::string> extendable;   // prefixes of infinite spectra
    std::vector<std::string> terminal;
    std::vector<std::string> spectra;      // the four loop spectra + the m0^S family
    std::string continuum_note;            // not machine-checkable; documented
};

InfiniteFamiliesReport infinite_families(const Tree& tree);

struct CatalogMatch {
    FamilySpec spec;
    std::string name;
};

// All catalog specs with the same dimension vector that admit a rational
// witness against g (deterministic grid search; distinctness of remaining
// candidates cross-checked over good primes).
std::vector<CatalogMatch> match_to_catalog(const GradedLieAlgebra& g);

// Rational-witness decision with a finite-field prefilter: candidates
// refuted over every prefilter prime are rejected without a grid search.
bool rationally_isomorphic(const GradedLieAlgebra& g, const GradedLieAlgebra& h);

// The playbook-canonical name of a catalog class (m0^{} -> m0, the degree-6
// entry points of the loop family, ...).
FamilySpec canonical_spec(FamilySpec sp);

}  // namespace carnot
