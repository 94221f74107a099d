#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Exact linear algebra over three field modes: Q, Q(i), F_p.
// Everything here is immutable after construction and safe to share.

namespace carnot {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

enum class FieldKind { Rational, GaussianRational, PrimeField };

struct FieldMode {
    FieldKind kind = FieldKind::Rational;
    std::int64_t p = 0;  // prime, only for PrimeField

    static FieldMode rational() { return {FieldKind::Rational, 0}; }
    static FieldMode gaussian() { return {FieldKind::GaussianRational, 0}; }
    static FieldMode prime(std::int64_t p);

    bool operator==(const FieldMode&) const = default;
    std::string str() const;            // "Q", "Qi", "Fp:7"
    static FieldMode parse(const std::string& s);
};

struct ModeMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact field element. Rational and Gaussian values are kept in lowest
// terms by cpp_rational; prime-field residues live in [0, p).
class Scalar {
public:
    Scalar() = default;  // rational zero
    static Scalar zero(const FieldMode& m);
    static Scalar one(const FieldMode& m);
    static Scalar from_int(long v, const FieldMode& m);
    static Scalar rational(BigRat v);
    static Scalar rational(long num, long den);
    static Scalar gaussian(BigRat re, BigRat im);
    static Scalar residue(std::int64_t r, std::int64_t p);

    const FieldMode& mode() const { return mode_; }
    bool is_zero() const;
    bool is_one() const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;  // throws on zero divisor
    Scalar operator-() const;
    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    Scalar inv() const;

    // String form: "p/q", "a/b+c/d i", "r mod p".
    std::string str() const;
    static Scalar parse(const std::string& s, const FieldMode& m);

    // Change of mode: Q -> Q(i) embeds, Q -> F_p reduces (throws if a
    // denominator vanishes mod p). Identity when modes match.
    Scalar convert(const FieldMode& to) const;

    const BigRat& rat_re() const { return re_; }
    const BigRat& rat_im() const { return im_; }
    std::int64_t residue_value() const { return res_; }

private:
    FieldMode mode_ = FieldMode::rational();
    BigRat re_;               // Rational / Gaussian real part
    BigRat im_;               // Gaussian imaginary part
    std::int64_t res_ = 0;    // PrimeField residue
    void check_same(const Scalar& o) const;
};

// Dense row-major matrix with a single field mode throughout.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const FieldMode& m);

    static Matrix identity(std::size_t n, const FieldMode& m);
    static Matrix from_rows(const std::vector<std::vector<Scalar>>& rows,
                            const FieldMode& mode_if_empty);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const FieldMode& mode() const { return mode_; }

    const Scalar& at(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, Scalar v);

    std::vector<Scalar> row(std::size_t r) const;
    Matrix transpose() const;
    Matrix vstack(const Matrix& below) const;
    Matrix operator*(const Matrix& o) const;
    bool operator==(const Matrix& o) const;

    Matrix convert(const FieldMode& to) const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    FieldMode mode_ = FieldMode::rational();
    std::vector<Scalar> a_;
};

// Reduced row echelon form; row space is preserved.
Matrix rref(const Matrix& m);
std::size_t rank(const Matrix& m);

// Subspace of K^n given by its unique RREF basis (full row rank, pivots 1,
// pivot columns otherwise zero). Equal as sets iff bases are equal.
class Subspace {
public:
    Subspace() = default;
    // span of the rows (canonicalized)
    static Subspace span(const Matrix& rows);
    static Subspace zero(std::size_t ambient, const FieldMode& m);
    static Subspace full(std::size_t ambient, const FieldMode& m);

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.rows(); }
    const Matrix& basis() const { return basis_; }
    const FieldMode& mode() const { return basis_.mode(); }

    bool contains(const std::vector<Scalar>& v) const;
    bool contains(const Subspace& other) const;
    Subspace sum(const Subspace& other) const;
    Subspace intersect(const Subspace& other) const;
    bool operator==(const Subspace& other) const;

private:
    std::size_t ambient_ = 0;
    Matrix basis_;  // RREF, full row rank
};

// {x : m x = 0} with canonical basis; dim = cols - rank.
Subspace kernel(const Matrix& m);

// Coefficients x with sum_i x_i rows_i = rhs, if any.
std::optional<std::vector<Scalar>> solve_in_span(const Matrix& rows,
                                                 const std::vector<Scalar>& rhs);

// Reduce v against an RREF basis: returns the residual after eliminating
// every pivot coordinate (zero iff v lies in the row space).
std::vector<Scalar> reduce_mod_rref(const Matrix& rrefBasis,
                                    std::vector<Scalar> v);

}  // namespace carnot
