#pragma once

#include "carnot/exactlin.hpp"

#include <map>
#include <string>
#include <vector>

namespace carnot {

// Sparse vector in the algebra basis: index -> coefficient (no zeros stored).
using SparseVec = std::map<std::size_t, Scalar>;

// Skew bilinear form stored on strictly increasing basis pairs.
// Homogeneous of one grading when used for central extensions.
struct TwoCochain {
    std::size_t grading = 0;
    std::map<std::pair<std::size_t, std::size_t>, Scalar> terms;  // i < j

    Scalar value(std::size_t i, std::size_t j, const FieldMode& m) const;
    void add(std::size_t i, std::size_t j, const Scalar& c);
    bool is_zero() const;
};

// Finite-dimensional positively graded Lie algebra with exact structure
// constants c_{ij}^k stored only for i < j.
class GradedLieAlgebra {
public:
    GradedLieAlgebra() = default;
    GradedLieAlgebra(std::string name, FieldMode mode,
                     std::vector<std::size_t> degree_dims,
                     std::vector<std::string> labels);

    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }
    const FieldMode& mode() const { return mode_; }
    const std::vector<std::size_t>& degree_dims() const { return degree_dims_; }
    const std::vector<std::string>& labels() const { return labels_; }
    std::size_t dim() const { return labels_.size(); }
    std::size_t length() const { return degree_dims_.size(); }
    std::size_t degree(std::size_t i) const { return degree_of_[i]; }
    std::size_t label_index(const std::string& lab) const;
    std::vector<std::size_t> basis_of_degree(std::size_t d) const;

    // define [e_i, e_j] (i < j) adding coeff onto e_k
    void add_constant(std::size_t i, std::size_t j, std::size_t k, const Scalar& c);
    void add_constant(const std::string& li, const std::string& lj,
                      const std::string& lk, long num, long den = 1);

    const std::map<std::pair<std::size_t, std::size_t>, SparseVec>& constants() const {
        return constants_;
    }

    // [e_i, e_j] for any i, j (antisymmetry synthesized)
    SparseVec bracket_basis(std::size_t i, std::size_t j) const;
    SparseVec bracket(const SparseVec& x, const SparseVec& y) const;

    GradedLieAlgebra convert(const FieldMode& to) const;

    bool operator==(const GradedLieAlgebra&) const = default;

private:
    std::string name_;
    FieldMode mode_ = FieldMode::rational();
    std::vector<std::size_t> degree_dims_;
    std::vector<std::string> labels_;
    std::vector<std::size_t> degree_of_;
    std::map<std::pair<std::size_t, std::size_t>, SparseVec> constants_;
};

// One violation of a structural law, for reports.
struct LawViolation {
    std::string law;       // "grading", "jacobi", "ideal", ...
    std::vector<std::size_t> where;
    std::string detail;
};

std::vector<LawViolation> check_grading(const GradedLieAlgebra& g);
std::vector<LawViolation> check_jacobi(const GradedLieAlgebra& g);

// Homogeneous per-degree subspaces of g closed under bracketing with g.
struct GradedIdeal {
    std::vector<Subspace> by_degree;  // index d-1 = component in degree d

    std::size_t dim() const;
    bool is_ideal(const GradedLieAlgebra& g) const;
};

GradedIdeal full_ideal(const GradedLieAlgebra& g);
GradedIdeal top_component_ideal(const GradedLieAlgebra& g);

// g^1 = g, g^{k+1} = [g, g^k]; returned until the zero term (exclusive).
std::vector<GradedIdeal> lower_central_series(const GradedLieAlgebra& g);
std::vector<std::size_t> natural_grading_dims(const GradedLieAlgebra& g);
GradedLieAlgebra associated_graded(const GradedLieAlgebra& g);

bool is_carnot(const GradedLieAlgebra& g);
bool width_ok_3_2(const GradedLieAlgebra& g);

struct GrowthProfile {
    std::vector<std::size_t> values;  // F(1), ..., F(N)
    std::size_t width = 0;
    BigRat slope;                     // (F(N) - F(1)) / (N - 1)
};

GrowthProfile growth(const GradedLieAlgebra& g);

// Quotient by a graded ideal. Kept coordinates are the non-pivot slots of
// the ideal's RREF bases; labels survive on kept slots.
GradedLieAlgebra quotient(const GradedLieAlgebra& g, const GradedIdeal& ideal);

struct ExtensionResult {
    GradedLieAlgebra algebra;
    bool cocycles_closed = false;         // every cochain is d2-closed
    bool independent_in_h2 = false;       // jointly independent mod coboundaries
};

// Central extension by homogeneous 2-cochains; appends one central basis
// vector per cochain at its grading. Throws if a cochain is not closed.
ExtensionResult central_extension(const GradedLieAlgebra& g,
                                  const std::vector<TwoCochain>& cocycles,
                                  const std::vector<std::string>& new_labels = {});

}  // namespace carnot
