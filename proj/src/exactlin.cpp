#include "carnot/exactlin.hpp"

#include <algorithm>
#include <sstream>

namespace carnot {

namespace {

bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

std::int64_t mod_pos(std::int64_t v, std::int64_t p) {
    std::int64_t r = v % p;
    return r < 0 ? r + p : r;
}

std::int64_t mod_pow(std::int64_t b, std::int64_t e, std::int64_t p) {
    std::int64_t r = 1;
    b = mod_pos(b, p);
    while (e > 0) {
        if (e & 1) r = (__int128)r * b % p;
        b = (__int128)b * b % p;
        e >>= 1;
    }
    return r;
}

std::int64_t mod_inv(std::int64_t v, std::int64_t p) {
    v = mod_pos(v, p);
    if (v == 0) throw std::domain_error("division by zero in F_p");
    return mod_pow(v, p - 2, p);
}

std::string rat_str(const BigRat& r) {
    std::ostringstream os;
    os << boost::multiprecision::numerator(r) << "/"
       << boost::multiprecision::denominator(r);
    return os.str();
}

BigRat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return BigRat(BigInt(s));
    BigInt num(s.substr(0, slash)), den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + s);
    return BigRat(num, den);
}

}  // namespace

FieldMode FieldMode::prime(std::int64_t p) {
    if (!is_prime(p) || p < 3)
        throw std::invalid_argument("PrimeField needs a prime p >= 3");
    return {FieldKind::PrimeField, p};
}

std::string FieldMode::str() const {
    switch (kind) {
        case FieldKind::Rational: return "Q";
        case FieldKind::GaussianRational: return "Qi";
        case FieldKind::PrimeField: return "Fp:" + std::to_string(p);
    }
    return "?";
}

FieldMode FieldMode::parse(const std::string& s) {
    if (s == "Q" || s == "q") return rational();
    if (s == "Qi" || s == "qi") return gaussian();
    if (s.rfind("Fp:", 0) == 0) return prime(std::stoll(s.substr(3)));
    if (s.rfind("fp:", 0) == 0) return prime(std::stoll(s.substr(3)));
    throw std::invalid_argument("unknown field mode: " + s);
}

Scalar Scalar::zero(const FieldMode& m) {
    Scalar s;
    s.mode_ = m;
    return s;
}

Scalar Scalar::one(const FieldMode& m) { return from_int(1, m); }

Scalar Scalar::from_int(long v, const FieldMode& m) {
    Scalar s;
    s.mode_ = m;
    if (m.kind == FieldKind::PrimeField)
        s.res_ = mod_pos(v, m.p);
    else
        s.re_ = v;
    return s;
}

Scalar Scalar::rational(BigRat v) {
    Scalar s;
    s.re_ = std::move(v);
    return s;
}

Scalar Scalar::rational(long num, long den) { return rational(BigRat(num, den)); }

Scalar Scalar::gaussian(BigRat re, BigRat im) {
    Scalar s;
    s.mode_ = FieldMode::gaussian();
    s.re_ = std::move(re);
    s.im_ = std::move(im);
    return s;
}

Scalar Scalar::residue(std::int64_t r, std::int64_t p) {
    Scalar s;
    s.mode_ = FieldMode::prime(p);
    s.res_ = mod_pos(r, p);
    return s;
}

bool Scalar::is_zero() const {
    switch (mode_.kind) {
        case FieldKind::Rational: return re_ == 0;
        case FieldKind::GaussianRational: return re_ == 0 && im_ == 0;
        case FieldKind::PrimeField: return res_ == 0;
    }
    return false;
}

bool Scalar::is_one() const {
    switch (mode_.kind) {
        case FieldKind::Rational: return re_ == 1;
        case FieldKind::GaussianRational: return re_ == 1 && im_ == 0;
        case FieldKind::PrimeField: return res_ == 1;
    }
    return false;
}

void Scalar::check_same(const Scalar& o) const {
    if (mode_ != o.mode_)
        throw ModeMismatch("scalar mode mismatch: " + mode_.str() + " vs " + o.mode_.str());
}

Scalar Scalar::operator+(const Scalar& o) const {
    check_same(o);
    Scalar r = *this;
    switch (mode_.kind) {
        case FieldKind::Rational: r.re_ += o.re_; break;
        case FieldKind::GaussianRational: r.re_ += o.re_; r.im_ += o.im_; break;
        case FieldKind::PrimeField: r.res_ = mod_pos(res_ + o.res_, mode_.p); break;
    }
    return r;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator-() const {
    Scalar r = *this;
    switch (mode_.kind) {
        case FieldKind::Rational: r.re_ = -re_; break;
        case FieldKind::GaussianRational: r.re_ = -re_; r.im_ = -im_; break;
        case FieldKind::PrimeField: r.res_ = mod_pos(-res_, mode_.p); break;
    }
    return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
    check_same(o);
    Scalar r = zero(mode_);
    switch (mode_.kind) {
        case FieldKind::Rational: r.re_ = re_ * o.re_; break;
        case FieldKind::GaussianRational:
            r.re_ = re_ * o.re_ - im_ * o.im_;
            r.im_ = re_ * o.im_ + im_ * o.re_;
            break;
        case FieldKind::PrimeField:
            r.res_ = (std::int64_t)((__int128)res_ * o.res_ % mode_.p);
            break;
    }
    return r;
}

Scalar Scalar::inv() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    Scalar r = zero(mode_);
    switch (mode_.kind) {
        case FieldKind::Rational: r.re_ = 1 / re_; break;
        case FieldKind::GaussianRational: {
            BigRat n = re_ * re_ + im_ * im_;  // nonzero over Q(i)
            r.re_ = re_ / n;
            r.im_ = -im_ / n;
            break;
        }
        case FieldKind::PrimeField: r.res_ = mod_inv(res_, mode_.p); break;
    }
    return r;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inv(); }

bool Scalar::operator==(const Scalar& o) const {
    if (mode_ != o.mode_) return false;
    switch (mode_.kind) {
        case FieldKind::Rational: return re_ == o.re_;
        case FieldKind::GaussianRational: return re_ == o.re_ && im_ == o.im_;
        case FieldKind::PrimeField: return res_ == o.res_;
    }
    return false;
}

std::string Scalar::str() const {
    switch (mode_.kind) {
        case FieldKind::Rational: return rat_str(re_);
        case FieldKind::GaussianRational: {
            std::string im = rat_str(im_);
            std::string sep = (!im.empty() && im[0] == '-') ? "" : "+";
            return rat_str(re_) + sep + im + " i";
        }
        case FieldKind::PrimeField:
            return std::to_string(res_) + " mod " + std::to_string(mode_.p);
    }
    return "?";
}

Scalar Scalar::parse(const std::string& s, const FieldMode& m) {
    switch (m.kind) {
        case FieldKind::Rational: return rational(parse_rat(s));
        case FieldKind::GaussianRational: {
            auto isp = s.rfind(" i");
            if (isp == std::string::npos || isp + 2 != s.size())
                return gaussian(parse_rat(s), BigRat(0));
            std::string body = s.substr(0, isp);
            // split at the sign that separates the two rationals
            std::size_t cut = std::string::npos;
            for (std::size_t i = 1; i < body.size(); ++i) {
                if ((body[i] == '+' || body[i] == '-') && body[i - 1] != '/' &&
                    body[i - 1] != '+' && body[i - 1] != '-') {
                    cut = i;  // keep scanning: the last such sign splits re / im
                }
            }
            if (cut == std::string::npos)
                return gaussian(BigRat(0), parse_rat(body));
            std::string ims = body.substr(cut);
            if (!ims.empty() && ims[0] == '+') ims = ims.substr(1);
            return gaussian(parse_rat(body.substr(0, cut)), parse_rat(ims));
        }
        case FieldKind::PrimeField: {
            auto sp = s.find(" mod ");
            std::string val = sp == std::string::npos ? s : s.substr(0, sp);
            return residue(std::stoll(val), m.p);
        }
    }
    throw std::invalid_argument("bad scalar: " + s);
}

Scalar Scalar::convert(const FieldMode& to) const {
    if (to == mode_) return *this;
    if (mode_.kind != FieldKind::Rational)
        throw ModeMismatch("only rational scalars convert to other modes");
    switch (to.kind) {
        case FieldKind::GaussianRational: return gaussian(re_, BigRat(0));
        case FieldKind::PrimeField: {
            BigInt num = boost::multiprecision::numerator(re_);
            BigInt den = boost::multiprecision::denominator(re_);
            BigInt p = to.p;
            if (den % p == 0)
                throw ModeMismatch("denominator vanishes mod " + std::to_string(to.p));
            auto n = (std::int64_t)(((num % p) + p) % p);
            auto d = (std::int64_t)(den % p);
            return residue((__int128)n * mod_inv(d, to.p) % to.p, to.p);
        }
        case FieldKind::Rational: return *this;
    }
    throw ModeMismatch("bad conversion");
}

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(std::size_t rows, std::size_t cols, const FieldMode& m)
    : rows_(rows), cols_(cols), mode_(m), a_(rows * cols, Scalar::zero(m)) {}

Matrix Matrix::identity(std::size_t n, const FieldMode& m) {
    Matrix r(n, n, m);
    for (std::size_t i = 0; i < n; ++i) r.set(i, i, Scalar::one(m));
    return r;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Scalar>>& rows,
                         const FieldMode& mode_if_empty) {
    if (rows.empty()) return Matrix(0, 0, mode_if_empty);
    Matrix r(rows.size(), rows[0].size(), rows[0].empty() ? mode_if_empty : rows[0][0].mode());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != r.cols_)
            throw std::invalid_argument("ragged rows");
        for (std::size_t j = 0; j < r.cols_; ++j) r.set(i, j, rows[i][j]);
    }
    return r;
}

const Scalar& Matrix::at(std::size_t r, std::size_t c) const {
    return a_.at(r * cols_ + c);
}

void Matrix::set(std::size_t r, std::size_t c, Scalar v) {
    if (v.mode() != mode_) throw ModeMismatch("matrix entry mode mismatch");
    a_.at(r * cols_ + c) = std::move(v);
}

std::vector<Scalar> Matrix::row(std::size_t r) const {
    return {a_.begin() + r * cols_, a_.begin() + (r + 1) * cols_};
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_, mode_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.set(j, i, at(i, j));
    return t;
}

Matrix Matrix::vstack(const Matrix& below) const {
    if (below.rows() == 0) return *this;
    if (rows_ == 0) return below;
    if (below.cols() != cols_ || below.mode() != mode_)
        throw ModeMismatch("vstack shape/mode mismatch");
    Matrix r(rows_ + below.rows_, cols_, mode_);
    r.a_ = a_;
    r.a_.insert(r.a_.end(), below.a_.begin(), below.a_.end());
    return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_ || mode_ != o.mode_)
        throw ModeMismatch("matmul shape/mode mismatch");
    Matrix r(rows_, o.cols_, mode_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            if (at(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                r.set(i, j, r.at(i, j) + at(i, k) * o.at(k, j));
        }
    return r;
}

bool Matrix::operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && mode_ == o.mode_ && a_ == o.a_;
}

Matrix Matrix::convert(const FieldMode& to) const {
    Matrix r(rows_, cols_, to);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.set(i, j, at(i, j).convert(to));
    return r;
}

Matrix rref(const Matrix& m) {
    Matrix a = m;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t pr = r;
        while (pr < a.rows() && a.at(pr, c).is_zero()) ++pr;
        if (pr == a.rows()) continue;
        if (pr != r)
            for (std::size_t j = 0; j < a.cols(); ++j) {
                Scalar tmp = a.at(r, j);
                a.set(r, j, a.at(pr, j));
                a.set(pr, j, tmp);
            }
        Scalar iv = a.at(r, c).inv();
        for (std::size_t j = c; j < a.cols(); ++j) a.set(r, j, a.at(r, j) * iv);
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || a.at(i, c).is_zero()) continue;
            Scalar f = a.at(i, c);
            for (std::size_t j = c; j < a.cols(); ++j)
                a.set(i, j, a.at(i, j) - f * a.at(r, j));
        }
        ++r;
    }
    return a;
}

std::size_t rank(const Matrix& m) {
    Matrix a = rref(m);
    std::size_t r = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        bool nz = false;
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!a.at(i, j).is_zero()) { nz = true; break; }
        if (nz) ++r;
    }
    return r;
}

Subspace Subspace::span(const Matrix& rows) {
    Subspace s;
    s.ambient_ = rows.cols();
    Matrix a = rref(rows);
    std::vector<std::vector<Scalar>> keep;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto row = a.row(i);
        if (std::any_of(row.begin(), row.end(), [](const Scalar& x) { return !x.is_zero(); }))
            keep.push_back(std::move(row));
    }
    s.basis_ = Matrix::from_rows(keep, rows.mode());
    if (keep.empty()) s.basis_ = Matrix(0, rows.cols(), rows.mode());
    return s;
}

Subspace Subspace::zero(std::size_t ambient, const FieldMode& m) {
    Subspace s;
    s.ambient_ = ambient;
    s.basis_ = Matrix(0, ambient, m);
    return s;
}

Subspace Subspace::full(std::size_t ambient, const FieldMode& m) {
    return span(Matrix::identity(ambient, m));
}

std::vector<Scalar> reduce_mod_rref(const Matrix& rrefBasis, std::vector<Scalar> v) {
    for (std::size_t i = 0; i < rrefBasis.rows(); ++i) {
        std::size_t piv = 0;
        while (piv < rrefBasis.cols() && rrefBasis.at(i, piv).is_zero()) ++piv;
        if (piv == rrefBasis.cols()) continue;
        if (v[piv].is_zero()) continue;
        Scalar f = v[piv];
        for (std::size_t j = piv; j < rrefBasis.cols(); ++j)
            v[j] = v[j] - f * rrefBasis.at(i, j);
    }
    return v;
}

bool Subspace::contains(const std::vector<Scalar>& v) const {
    if (v.size() != ambient_) throw std::invalid_argument("ambient mismatch");
    auto r = reduce_mod_rref(basis_, v);
    return std::all_of(r.begin(), r.end(), [](const Scalar& x) { return x.is_zero(); });
}

bool Subspace::contains(const Subspace& other) const {
    if (other.ambient_ != ambient_) throw std::invalid_argument("ambient mismatch");
    for (std::size_t i = 0; i < other.basis_.rows(); ++i)
        if (!contains(other.basis_.row(i))) return false;
    return true;
}

Subspace Subspace::sum(const Subspace& other) const {
    if (other.ambient_ != ambient_) throw std::invalid_argument("ambient mismatch");
    return span(basis_.vstack(other.basis_));
}

Subspace Subspace::intersect(const Subspace& other) const {
    if (other.ambient_ != ambient_) throw std::invalid_argument("ambient mismatch");
    // (U cap V) = (U^perp + V^perp)^perp, dualizing via kernels
    Subspace ud = kernel(basis_);
    Subspace vd = kernel(other.basis_);
    if (basis_.rows() == 0) return *this;
    if (other.basis_.rows() == 0) return other;
    return kernel(ud.basis().vstack(vd.basis()));
}

bool Subspace::operator==(const Subspace& other) const {
    return ambient_ == other.ambient_ && basis_ == other.basis_;
}

Subspace kernel(const Matrix& m) {
    Matrix a = rref(m);
    std::vector<std::size_t> pivots;
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (!a.at(i, j).is_zero()) {
                pivots.push_back(j);
                is_pivot[j] = true;
                break;
            }
        }
    }
    std::vector<std::vector<Scalar>> base;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<Scalar> v(m.cols(), Scalar::zero(m.mode()));
        v[f] = Scalar::one(m.mode());
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a.at(i, f);
        base.push_back(std::move(v));
    }
    if (base.empty()) return Subspace::zero(m.cols(), m.mode());
    return Subspace::span(Matrix::from_rows(base, m.mode()));
}

std::optional<std::vector<Scalar>> solve_in_span(const Matrix& rows,
                                                 const std::vector<Scalar>& rhs) {
    const FieldMode& m = rows.mode();
    if (rows.rows() == 0) {
        bool z = std::all_of(rhs.begin(), rhs.end(),
                             [](const Scalar& x) { return x.is_zero(); });
        if (z) return std::vector<Scalar>{};
        return std::nullopt;
    }
    // augmented system over the transpose: columns are the spanning rows
    Matrix aug(rows.cols(), rows.rows() + 1, m);
    for (std::size_t c = 0; c < rows.cols(); ++c) {
        for (std::size_t i = 0; i < rows.rows(); ++i) aug.set(c, i, rows.at(i, c));
        aug.set(c, rows.rows(), rhs.at(c));
    }
    Matrix a = rref(aug);
    std::vector<Scalar> x(rows.rows(), Scalar::zero(m));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        std::size_t piv = 0;
        while (piv < a.cols() && a.at(i, piv).is_zero()) ++piv;
        if (piv == a.cols()) continue;
        if (piv == rows.rows()) return std::nullopt;  // inconsistent
        x[piv] = a.at(i, rows.rows());
    }
    // confirm (free variables set to zero)
    for (std::size_t c = 0; c < rows.cols(); ++c) {
        Scalar s = Scalar::zero(m);
        for (std::size_t i = 0; i < rows.rows(); ++i) s = s + x[i] * rows.at(i, c);
        if (!(s == rhs[c])) return std::nullopt;
    }
    return x;
}

}  // namespace carnot
